//! Values checked against independent brute-force computations.

use std::collections::BTreeSet;
use std::sync::Arc;

use maltcat_core::algebra::{homomorphisms, product, pullback, Algebra, Homomorphism};
use maltcat_core::congruence::{
    all_congruences, coequalizer, delta_matrix_algebra, pushout_along_regular_epi, split_pushout_retraction,
    tc_commutator, verify_pushout_universal,
};
use maltcat_core::corpus;
use maltcat_core::internal::{check_double_groupoid, groupoid_structure, DoubleReflexiveGraph};
use maltcat_core::reflection::{coreflect, reflect};
use maltcat_core::Congruence;

fn mul(g: &Algebra, a: usize, b: usize) -> usize {
    g.apply_named("mul", &[a, b]).unwrap()
}

fn inv(g: &Algebra, a: usize) -> usize {
    g.apply_named("inv", &[a]).unwrap()
}

/// The subgroup generated by `gens`, by closing under products.
fn subgroup(g: &Algebra, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = gens.clone();
    out.insert(0);
    loop {
        let next: BTreeSet<usize> = out
            .iter()
            .flat_map(|&a| out.iter().map(move |&b| (a, b)))
            .map(|(a, b)| mul(g, a, b))
            .chain(out.iter().copied())
            .collect();
        if next == out {
            return out;
        }
        out = next;
    }
}

/// `[M, N]` for normal subgroups, as the cosets it induces.
fn group_commutator(g: &Algebra, m: &BTreeSet<usize>, n: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let commutators = m
        .iter()
        .flat_map(|&a| n.iter().map(move |&b| (a, b)))
        .map(|(a, b)| mul(g, mul(g, inv(g, a), inv(g, b)), mul(g, a, b)))
        .collect();
    let k = subgroup(g, &commutators);
    let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
    for x in g.elements() {
        let coset: BTreeSet<usize> = k.iter().map(|&y| mul(g, x, y)).collect();
        if !cosets.contains(&coset) {
            cosets.push(coset);
        }
    }
    cosets.sort();
    cosets
}

fn normal_subgroup(theta: &Congruence) -> BTreeSet<usize> {
    theta.algebra().elements().filter(|&x| theta.related(0, x)).collect()
}

fn blocks(theta: &Congruence) -> Vec<BTreeSet<usize>> {
    let mut b: Vec<BTreeSet<usize>> = theta.blocks().into_iter().map(|b| b.into_iter().collect()).collect();
    b.sort();
    b
}

#[test]
fn commutator_matches_group_theory() {
    let groups = [
        corpus::cyclic_group(2),
        corpus::cyclic_group(4),
        corpus::klein_group(),
        corpus::symmetric_group_3(),
    ];
    for g in &groups {
        let congs = all_congruences(g).unwrap();
        for r in &congs {
            for s in &congs {
                let expected = group_commutator(g, &normal_subgroup(r), &normal_subgroup(s));
                assert_eq!(blocks(&tc_commutator(g, r, s).unwrap()), expected, "{}", g.name());
            }
        }
    }
}

#[test]
fn congruence_counts() {
    // normal subgroups: Z2: 2, Z4: 3, Klein: 5, S3: 3
    let expected = [
        (corpus::cyclic_group(2), 2),
        (corpus::cyclic_group(4), 3),
        (corpus::klein_group(), 5),
        (corpus::symmetric_group_3(), 3),
    ];
    for (g, n) in expected {
        assert_eq!(all_congruences(&g).unwrap().len(), n, "{}", g.name());
    }
}

#[test]
fn delta_matrices_of_z4() {
    let z4 = corpus::cyclic_group(4);
    let mid = Congruence::from_blocks(&z4, &[vec![0, 2], vec![1, 3]]).unwrap();
    let matrices = delta_matrix_algebra(&z4, &mid, &mid).unwrap();
    // brute force: quadruples (a, b, c, d) with a R b, a S c, and d = b - a + c
    let brute = (0..4)
        .flat_map(|a| (0..4).flat_map(move |b| (0..4).map(move |c| (a, b, c))))
        .filter(|&(a, b, c)| (a + b) % 2 == 0 && (a + c) % 2 == 0)
        .count();
    assert_eq!(matrices.len(), brute);
    assert_eq!(brute, 16);
}

#[test]
fn coequalizer_identifies_images() {
    let z4 = corpus::cyclic_group(4);
    let z2 = corpus::cyclic_group(2);
    let zero = Homomorphism::new(z2.clone(), z4.clone(), vec![0, 0]).unwrap();
    let twice = Homomorphism::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
    let q = coequalizer(&zero, &twice).unwrap();
    assert_eq!(q.quotient.size(), 2);
    assert_eq!(q.projection.map(), &[0, 1, 0, 1]);
}

#[test]
fn pushouts_are_universal() {
    let z4 = corpus::cyclic_group(4);
    let z2 = corpus::cyclic_group(2);
    let prod = product(&z4, &z2).unwrap();
    let q = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
    let delta = prod.pair(&Homomorphism::identity(&z4), &q).unwrap();
    let p = pushout_along_regular_epi(&q, &delta).unwrap();
    let retraction = split_pushout_retraction(&p, &prod.first).unwrap();
    assert!(retraction.after(&p.from_codomain).unwrap().is_identity());
    assert!(verify_pushout_universal(&p, &[z2.clone(), z4.clone(), corpus::klein_group()]).unwrap());
}

#[test]
fn pullback_counts() {
    let z4 = corpus::cyclic_group(4);
    let z2 = corpus::cyclic_group(2);
    let q = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
    let p = pullback(&q, &q).unwrap();
    assert_eq!(p.algebra.size(), 8);
    // cones from Z2 into the cospan are pairs of maps agreeing after q
    let cones = homomorphisms(&z2, &z4)
        .unwrap()
        .iter()
        .flat_map(|f| {
            homomorphisms(&z2, &z4)
                .unwrap()
                .into_iter()
                .map(move |g| (f.clone(), g))
        })
        .filter(|(f, g)| q.after(f).unwrap() == q.after(g).unwrap())
        .count();
    assert_eq!(homomorphisms(&z2, &p.algebra).unwrap().len(), cones);
}

#[test]
fn groupoid_composition_is_the_group_formula() {
    let g = corpus::groupoid_from_hom(2, 4, 2).unwrap();
    let gpd = groupoid_structure(&g).unwrap().unwrap();
    let c1 = g.arrows();
    for (f, h) in gpd.composable().pairs() {
        // f then h in the group of arrows: f * e(c f)^-1 * h
        let pivot = g.identity().at(g.target().at(f));
        let expected = mul(c1, mul(c1, f, inv(c1, pivot)), h);
        assert_eq!(gpd.compose(f, h), Some(expected));
    }
}

fn double(g: DoubleReflexiveGraph) -> Arc<maltcat_core::DoubleGroupoid> {
    Arc::new(check_double_groupoid(&g).unwrap().unwrap())
}

#[test]
fn worked_collapse_example() {
    let g = corpus::groupoid_from_hom(2, 2, 1).unwrap();
    assert_eq!(g.arrows().size(), 4);
    let v = double(DoubleReflexiveGraph::vertically_discrete(&g));
    let f = reflect(&v).unwrap();
    assert_eq!(f.two_groupoid.graph().corner_sizes(), [1, 1, 1, 1]);
    let c = coreflect(&v).unwrap();
    assert_eq!(c.two_groupoid.graph().corner_sizes(), [2, 2, 2, 2]);
}
