use std::sync::Arc;

use maltcat_core::corpus;
use maltcat_core::internal::{
    check_double_groupoid, check_variety_presentation, double_functors, double_round_trip, is_two_groupoid,
    loday_encode_double_graph, DoubleGroupoid, Levelwise,
};
use maltcat_core::natmaltsev::{is_affine, unit_discrete_fibration_check, Verdict};
use maltcat_core::reflection::{
    coreflect, counit_bijection, factor_through_counit, factor_through_unit, reflect, reflect_morphism,
    regular_quotients, subobjects, unit_bijection, verify_birkhoff_closure,
};
use maltcat_core::{Corner, DoubleFunctor};

fn doubles() -> Vec<Arc<DoubleGroupoid>> {
    corpus::bundled()
        .doubles
        .iter()
        .filter_map(|g| check_double_groupoid(g).unwrap().map(Arc::new))
        .collect()
}

fn comparable(a: &DoubleGroupoid, b: &DoubleGroupoid) -> bool {
    a.corner(Corner::C11).same_signature(b.corner(Corner::C11))
}

fn small(dg: &DoubleGroupoid, bound: usize) -> bool {
    dg.graph().corner_sizes().iter().all(|&s| s <= bound)
}

#[test]
fn only_the_s3_fixture_lacks_groupoid_structure() {
    let bundled = corpus::bundled().doubles;
    let missing: Vec<&str> = bundled
        .iter()
        .filter(|g| check_double_groupoid(g).unwrap().is_none())
        .map(|g| g.name())
        .collect();
    assert_eq!(missing, ["vdisc_group_s3"]);
    let l = loday_encode_double_graph(bundled.last().unwrap()).unwrap();
    assert!(!check_variety_presentation(&l).unwrap().passed());
}

#[test]
fn reflections_are_two_groupoids_with_surjective_units() {
    for dg in doubles() {
        let r = reflect(&dg).unwrap();
        assert!(is_two_groupoid(&r.two_groupoid), "{}", dg.name());
        assert!(r.unit.is_regular_epi(), "{}", dg.name());
        if is_two_groupoid(&dg) {
            assert!(r.unit.is_levelwise_iso(), "{}", dg.name());
        }
        let again = reflect(&r.two_groupoid).unwrap();
        assert!(again.unit.is_levelwise_iso(), "{}", dg.name());
    }
}

#[test]
fn coreflections_are_two_groupoids_with_injective_counits() {
    for dg in doubles() {
        let c = coreflect(&dg).unwrap();
        assert!(is_two_groupoid(&c.two_groupoid), "{}", dg.name());
        assert!(c.counit.is_levelwise_mono(), "{}", dg.name());
        if is_two_groupoid(&dg) {
            assert!(c.counit.is_levelwise_iso(), "{}", dg.name());
        }
    }
}

#[test]
fn unit_factorizations_are_unique() {
    let all = doubles();
    let targets: Vec<_> = all
        .iter()
        .filter(|d| is_two_groupoid(d) && small(d, 4))
        .cloned()
        .collect();
    assert!(targets.len() >= 3);
    for dg in all.iter().filter(|d| small(d, 8)) {
        let r = reflect(dg).unwrap();
        for d in targets.iter().filter(|d| comparable(dg, d)) {
            for f in double_functors(dg, d).unwrap() {
                let g = factor_through_unit(&f, &r).unwrap();
                assert!(g.after(&r.unit).unwrap().same_maps(&f));
                let through: Vec<DoubleFunctor> = double_functors(&r.two_groupoid, d)
                    .unwrap()
                    .into_iter()
                    .filter(|h| h.after(&r.unit).unwrap().same_maps(&f))
                    .collect();
                assert_eq!(through.len(), 1, "{} -> {}", dg.name(), d.name());
            }
        }
    }
}

#[test]
fn adjunction_hom_sets_match() {
    let all: Vec<_> = doubles().into_iter().filter(|d| small(d, 4)).collect();
    let two: Vec<_> = all.iter().filter(|d| is_two_groupoid(d)).cloned().collect();
    for c in &all {
        let r = reflect(c).unwrap();
        let g = coreflect(c).unwrap();
        for d in two.iter().filter(|d| comparable(c, d)) {
            let report = unit_bijection(&r, d).unwrap();
            assert!(report.bijective, "{} / {}", c.name(), d.name());
            assert_eq!(report.through_universal, report.direct);
            let report = counit_bijection(&g, d).unwrap();
            assert!(report.bijective, "{} / {}", d.name(), c.name());
            assert_eq!(report.through_universal, report.direct);
            for f in double_functors(d, c).unwrap() {
                let h = factor_through_counit(&f, &g).unwrap();
                assert!(g.counit.after(&h).unwrap().same_maps(&f));
            }
        }
    }
}

#[test]
fn reflection_is_functorial() {
    let all: Vec<_> = doubles().into_iter().filter(|d| small(d, 4)).collect();
    for c in &all {
        for d in all.iter().filter(|d| comparable(c, d)) {
            let (rc, rd) = (reflect(c).unwrap(), reflect(d).unwrap());
            for f in double_functors(c, d).unwrap() {
                let ff = reflect_morphism(&f, &rc, &rd).unwrap();
                assert!(ff.after(&rc.unit).unwrap().same_maps(&rd.unit.after(&f).unwrap()));
            }
        }
    }
}

#[test]
fn birkhoff_closure() {
    for dg in doubles().into_iter().filter(|d| is_two_groupoid(d) && small(d, 6)) {
        for (q, f) in regular_quotients(&dg).unwrap() {
            assert!(
                verify_birkhoff_closure(&f).unwrap(),
                "quotient {} of {}",
                q.name(),
                dg.name()
            );
        }
        for (s, f) in subobjects(&dg).unwrap() {
            assert!(
                verify_birkhoff_closure(&f).unwrap(),
                "subobject {} of {}",
                s.name(),
                dg.name()
            );
        }
    }
}

#[test]
fn presentation_round_trips() {
    for dg in doubles() {
        let (_, phi) = double_round_trip(&dg).unwrap();
        assert!(phi.is_levelwise_iso(), "{}", dg.name());
    }
}

#[test]
fn units_are_discrete_fibrations_over_affine_bases() {
    let mut checked = 0;
    for dg in doubles() {
        let report = unit_discrete_fibration_check(&reflect(&dg).unwrap()).unwrap();
        let affine = Corner::ALL.iter().all(|&c| is_affine(dg.corner(c)).is_some());
        if affine {
            assert_eq!(report.verdict, Verdict::Pass, "{}", dg.name());
            checked += 1;
        } else {
            assert_eq!(report.verdict, Verdict::NotApplicable, "{}", dg.name());
        }
    }
    assert!(checked >= 6);
}
