//! The acceptance criteria, each run over the workspace fixtures.

use std::collections::BTreeSet;
use std::sync::Arc;

use maltcat_core::algebra::{homomorphisms, product, Homomorphism};
use maltcat_core::congruence::{all_congruences, quotient, tc_commutator};
use maltcat_core::internal::{
    all_groupoid_structures, check_double_groupoid, check_two_groupoid_identities, check_variety_presentation,
    double_functors, double_round_trip, graph_morphisms, groupoid_structure, is_internal_functor, is_two_groupoid,
    loday_encode_double_graph, Levelwise,
};
use maltcat_core::natmaltsev::{
    check_square_pullback, commutator_cross_check, is_affine, unit_discrete_fibration_check,
};
use maltcat_core::reflection::{
    coreflect, counit_bijection, factor_through_unit, reflect, regular_quotients, subobjects, unit_bijection,
    verify_birkhoff_closure,
};
use maltcat_core::{Algebra, Corner, DoubleFunctor, DoubleGroupoid, Result};

use super::oracle::group_commutator_blocks;
use crate::{Level, Workspace};

/// Size bounds for one suite level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Corners of the double groupoids that are reflected.
    pub fixture_corner: usize,
    /// Corners of the 2-groupoids used as test codomains and domains.
    pub target_corner: usize,
    /// Squares of the 2-groupoids whose quotients and subobjects are enumerated.
    pub birkhoff_squares: usize,
    /// Carriers of the affine algebras in the pullback-square check.
    pub affine_carrier: usize,
    /// Carriers of the algebras in the commutator checks.
    pub commutator_carrier: usize,
    /// Arrows of the graphs searched for groupoid structures.
    pub graph_arrows: usize,
}

impl Bounds {
    pub fn for_level(level: Level) -> Self {
        match level {
            Level::Smoke => Bounds {
                fixture_corner: 8,
                target_corner: 2,
                birkhoff_squares: 4,
                affine_carrier: 4,
                commutator_carrier: 6,
                graph_arrows: 8,
            },
            Level::Full => Bounds {
                fixture_corner: 8,
                target_corner: 4,
                birkhoff_squares: 6,
                affine_carrier: 8,
                commutator_carrier: 8,
                graph_arrows: 8,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Counts instances and keeps the first violation.
#[derive(Default)]
struct Tally {
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self, id: usize, title: &'static str, unit: &str) -> CriterionResult {
        let passed = self.failure.is_none();
        let detail = self.failure.unwrap_or_else(|| format!("{} {unit}", self.checked));
        CriterionResult {
            id,
            title,
            passed,
            detail,
        }
    }
}

pub const TITLES: [&str; 8] = [
    "reflection yields 2-groupoids through unique factorizations",
    "worked collapse example",
    "2-groupoids are closed under quotients and subobjects",
    "presentation by operations and identities",
    "groupoid structures are unique and morphisms are functors",
    "commutator agrees with group theory",
    "naturally Mal'tsev checks",
    "adjunction hom-set bijections",
];

pub fn run(id: usize, ws: &Workspace, bounds: Bounds) -> CriterionResult {
    let title = TITLES[id - 1];
    let outcome = match id {
        1 => reflector(ws, bounds),
        2 => worked_example(ws),
        3 => birkhoff(ws, bounds),
        4 => presentation(ws),
        5 => uniqueness(ws, bounds),
        6 => commutators(ws, bounds),
        7 => natural_maltsev(ws, bounds),
        8 => adjunction(ws, bounds),
        _ => unreachable!("criteria are numbered 1..=8"),
    };
    match outcome {
        Ok(t) => t.finish(id, title, unit(id)),
        Err(e) => CriterionResult {
            id,
            title,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn unit(id: usize) -> &'static str {
    match id {
        1 => "factorizations",
        2 => "comparisons",
        3 => "quotients and subobjects",
        4 => "double graphs",
        5 => "graphs and morphisms",
        6 => "congruence pairs",
        7 => "instances",
        _ => "hom-set comparisons",
    }
}

fn small(dg: &DoubleGroupoid, bound: usize) -> bool {
    dg.graph().corner_sizes().iter().all(|&s| s <= bound)
}

fn comparable(a: &DoubleGroupoid, b: &DoubleGroupoid) -> bool {
    a.corner(Corner::C11).same_signature(b.corner(Corner::C11))
}

fn double_groupoids(ws: &Workspace) -> Result<Vec<Arc<DoubleGroupoid>>> {
    let mut out = Vec::new();
    for g in ws.doubles.values() {
        if let Some(d) = check_double_groupoid(g)? {
            out.push(Arc::new(d));
        }
    }
    Ok(out)
}

fn two_groupoids(all: &[Arc<DoubleGroupoid>], bound: usize) -> Vec<Arc<DoubleGroupoid>> {
    all.iter()
        .filter(|d| is_two_groupoid(d) && small(d, bound))
        .cloned()
        .collect()
}

fn reflector(ws: &Workspace, b: Bounds) -> Result<Tally> {
    let all = double_groupoids(ws)?;
    let targets = two_groupoids(&all, b.target_corner);
    let mut t = Tally::default();
    let fixtures: Vec<_> = all.iter().filter(|d| small(d, b.fixture_corner)).collect();
    t.require(fixtures.len() >= 6, || {
        format!("only {} double groupoid fixtures", fixtures.len())
    });
    for dg in fixtures {
        let r = reflect(dg)?;
        t.require(is_two_groupoid(&r.two_groupoid), || {
            format!("reflection of {} is not a 2-groupoid", dg.name())
        });
        t.require(r.unit.is_regular_epi(), || {
            format!("unit of {} is not surjective", dg.name())
        });
        for d in targets.iter().filter(|d| comparable(dg, d)) {
            let through: Vec<DoubleFunctor> = double_functors(&r.two_groupoid, d)?
                .iter()
                .map(|h| h.after(&r.unit))
                .collect::<Result<_>>()?;
            for f in double_functors(dg, d)? {
                let g = factor_through_unit(&f, &r)?;
                let count = through.iter().filter(|h| h.same_maps(&f)).count();
                t.record(g.after(&r.unit)?.same_maps(&f) && count == 1, || {
                    format!("{} -> {}: {count} factorizations", dg.name(), d.name())
                });
            }
        }
    }
    Ok(t)
}

fn worked_example(ws: &Workspace) -> Result<Tally> {
    let name = "vdisc_hom_z2_z2";
    let g = ws
        .doubles
        .get(name)
        .ok_or_else(|| maltcat_core::Error::Unresolved(name.to_string()))?;
    let dg = Arc::new(
        check_double_groupoid(g)?
            .ok_or_else(|| maltcat_core::Error::Precondition(format!("{name} is not a double groupoid")))?,
    );
    let mut t = Tally::default();
    let f = reflect(&dg)?.two_groupoid.graph().corner_sizes();
    t.record(f == [1; 4], || format!("reflection corners {f:?}, expected all 1"));
    let c = coreflect(&dg)?;
    let sizes = c.two_groupoid.graph().corner_sizes();
    t.record(sizes == [2; 4], || {
        format!("coreflection corners {sizes:?}, expected all 2")
    });
    let discrete = c.two_groupoid.graph().maps().iter().all(Homomorphism::is_bijective);
    t.record(discrete, || "coreflection is not discrete".into());
    Ok(t)
}

fn birkhoff(ws: &Workspace, b: Bounds) -> Result<Tally> {
    let all = double_groupoids(ws)?;
    let mut t = Tally::default();
    for dg in all
        .iter()
        .filter(|d| is_two_groupoid(d) && d.corner(Corner::C11).size() <= b.birkhoff_squares)
    {
        for (q, f) in regular_quotients(dg)? {
            t.record(verify_birkhoff_closure(&f)?, || {
                format!("quotient {} of {}", q.name(), dg.name())
            });
        }
        for (s, f) in subobjects(dg)? {
            t.record(verify_birkhoff_closure(&f)?, || {
                format!("subobject {} of {}", s.name(), dg.name())
            });
        }
    }
    Ok(t)
}

fn presentation(ws: &Workspace) -> Result<Tally> {
    let mut t = Tally::default();
    let (mut not_double, mut not_two) = (0, 0);
    for g in ws.doubles.values() {
        let l = loday_encode_double_graph(g)?;
        let passes = check_variety_presentation(&l)?.passed();
        let Some(dg) = check_double_groupoid(g)? else {
            not_double += 1;
            t.record(!passes, || {
                format!("{} satisfies the presentation without groupoid structure", g.name())
            });
            continue;
        };
        let dg = Arc::new(dg);
        let two = is_two_groupoid(&dg);
        not_two += usize::from(!two);
        let (_, phi) = double_round_trip(&dg)?;
        t.record(passes && phi.is_levelwise_iso(), || {
            format!("{} does not round trip", g.name())
        });
        t.require(check_two_groupoid_identities(&l)? == two, || {
            format!("2-groupoid identities disagree with the bottom row on {}", g.name())
        });
    }
    t.require(not_double > 0, || "no fixture without groupoid structure".into());
    t.require(not_two > 0, || "no double groupoid that is not a 2-groupoid".into());
    Ok(t)
}

fn uniqueness(ws: &Workspace, b: Bounds) -> Result<Tally> {
    let mut t = Tally::default();
    let mut groupoids = Vec::new();
    for (name, g) in ws.graphs.iter().filter(|(_, g)| g.arrows().size() <= b.graph_arrows) {
        let all = all_groupoid_structures(g)?;
        let found = groupoid_structure(g)?;
        t.record(all.len() <= 1 && all.len() == usize::from(found.is_some()), || {
            format!("{name} has {} groupoid structures", all.len())
        });
        if let Some(gpd) = found {
            groupoids.push((name, gpd));
        }
    }
    for (from_name, from) in &groupoids {
        for (to_name, to) in &groupoids {
            if !from.graph().arrows().same_signature(to.graph().arrows()) {
                continue;
            }
            for phi in graph_morphisms(from.graph(), to.graph())? {
                t.record(is_internal_functor(&phi, from, to)?, || {
                    format!("a morphism {from_name} -> {to_name} does not preserve composition")
                });
            }
        }
    }
    Ok(t)
}

fn as_sets(blocks: Vec<Vec<usize>>) -> BTreeSet<BTreeSet<usize>> {
    blocks.into_iter().map(|b| b.into_iter().collect()).collect()
}

fn commutators(ws: &Workspace, b: Bounds) -> Result<Tally> {
    let mut t = Tally::default();
    let mut groups = 0;
    for (name, a) in ws.algebras.iter().filter(|(_, a)| a.size() <= b.commutator_carrier) {
        if group_commutator_blocks(
            a,
            &maltcat_core::Congruence::identity(a),
            &maltcat_core::Congruence::identity(a),
        )
        .is_err()
        {
            continue;
        }
        groups += 1;
        let congruences = all_congruences(a)?;
        if name == "S3" {
            t.require(congruences.len() == 3, || {
                format!("S3 has {} congruences", congruences.len())
            });
        }
        for r in &congruences {
            for s in &congruences {
                let expected = as_sets(group_commutator_blocks(a, r, s)?);
                let actual = as_sets(tc_commutator(a, r, s)?.blocks());
                t.record(expected == actual, || {
                    format!("{name}: [R,S] differs from the normal-subgroup commutator")
                });
            }
        }
    }
    t.require(groups >= 4, || format!("only {groups} group fixtures"));
    Ok(t)
}

/// Affine algebras of `x`'s signature that can serve as the middle object
/// of a split mono out of `x`.
fn split_targets(ws: &Workspace, x: &Arc<Algebra>, quotient: &Arc<Algebra>, bound: usize) -> Result<Vec<Arc<Algebra>>> {
    let mut out: Vec<Arc<Algebra>> = ws
        .algebras
        .values()
        .filter(|s| s.size() <= bound && s.same_signature(x) && is_affine(s).is_some())
        .cloned()
        .collect();
    if x.size() * quotient.size() <= bound {
        out.push(product(x, quotient)?.algebra.clone());
    }
    Ok(out)
}

fn natural_maltsev(ws: &Workspace, b: Bounds) -> Result<Tally> {
    let mut t = Tally::default();
    let affine: Vec<_> = ws
        .algebras
        .values()
        .filter(|x| x.size() <= b.affine_carrier && is_affine(x).is_some())
        .collect();
    for x in &affine {
        for theta in all_congruences(x)? {
            let (xq, q) = quotient(&theta)?;
            for s in split_targets(ws, x, &xq, b.affine_carrier)? {
                let back = homomorphisms(&s, x)?;
                for delta in homomorphisms(x, &s)?.into_iter().filter(Homomorphism::is_injective) {
                    for f in &back {
                        if !f.after(&delta)?.is_identity() {
                            continue;
                        }
                        t.record(check_square_pullback(&q, &delta, f)?, || {
                            format!(
                                "square over {} / {} through {} is not a pullback",
                                x.name(),
                                xq.name(),
                                s.name()
                            )
                        });
                    }
                }
            }
        }
    }
    let mut fibrations = 0;
    for dg in double_groupoids(ws)? {
        if !Corner::ALL.iter().all(|&c| is_affine(dg.corner(c)).is_some()) {
            continue;
        }
        fibrations += 1;
        let report = unit_discrete_fibration_check(&reflect(&dg)?)?;
        t.record(report.verdict == maltcat_core::Verdict::Pass, || {
            format!("unit of {} is not a discrete fibration", dg.name())
        });
    }
    t.require(fibrations > 0, || "no affine double groupoid fixture".into());
    for (name, x) in ws.algebras.iter().filter(|(_, a)| a.size() <= b.commutator_carrier) {
        let congruences = all_congruences(x)?;
        for r in &congruences {
            for s in &congruences {
                let cross = commutator_cross_check(x, r, s)?;
                t.record(cross.consistent(), || {
                    format!("{name}: centralizing relation with a nontrivial commutator")
                });
            }
        }
    }
    Ok(t)
}

fn adjunction(ws: &Workspace, b: Bounds) -> Result<Tally> {
    let all = double_groupoids(ws)?;
    let two = two_groupoids(&all, b.target_corner);
    let mut t = Tally::default();
    for c in all.iter().filter(|d| small(d, b.target_corner)) {
        let (r, g) = (reflect(c)?, coreflect(c)?);
        for d in two.iter().filter(|d| comparable(c, d)) {
            let u = unit_bijection(&r, d)?;
            t.record(u.bijective && u.through_universal == u.direct, || {
                format!(
                    "maps {} -> {}: {} through the unit, {} direct",
                    c.name(),
                    d.name(),
                    u.through_universal,
                    u.direct
                )
            });
            let v = counit_bijection(&g, d)?;
            t.record(v.bijective && v.through_universal == v.direct, || {
                format!(
                    "maps {} -> {}: {} through the counit, {} direct",
                    d.name(),
                    c.name(),
                    v.through_universal,
                    v.direct
                )
            });
        }
    }
    Ok(t)
}
