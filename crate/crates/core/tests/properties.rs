use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use maltcat_core::algebra::{homomorphisms, product, pullback, subalgebra_generated, Algebra, ProductSpace};
use maltcat_core::congruence::{all_congruences, congruence_generated, tc_commutator};
use maltcat_core::corpus;
use maltcat_core::internal::{check_double_groupoid, is_two_groupoid, DoubleReflexiveGraph, Levelwise};
use maltcat_core::natmaltsev::{commutator_cross_check, pedicchio_delta};
use maltcat_core::reflection::{coreflect, reflect};
use maltcat_core::Congruence;

fn pool() -> Vec<Arc<Algebra>> {
    let z2 = corpus::cyclic_group(2);
    let z3 = corpus::cyclic_group(3);
    vec![
        z2.clone(),
        z3.clone(),
        corpus::cyclic_group(4),
        corpus::cyclic_group(5),
        corpus::cyclic_group(6),
        corpus::klein_group(),
        corpus::symmetric_group_3(),
        corpus::cyclic_affine(3),
        corpus::cyclic_affine(4),
        product(&z2, &z3).unwrap().algebra,
        product(&corpus::symmetric_group_3(), &z2).unwrap().algebra,
    ]
}

prop_compose! {
    fn algebra_and_seed(max: usize)(index in 0..11usize, raw in prop::collection::vec(0..1000usize, 0..max))
        -> (Arc<Algebra>, Vec<usize>) {
        let a = pool()[index].clone();
        let n = a.size();
        (a, raw.into_iter().map(|x| x % n).collect())
    }
}

prop_compose! {
    fn algebra_and_pairs(max: usize)(index in 0..11usize, raw in prop::collection::vec((0..1000usize, 0..1000usize), 0..max))
        -> (Arc<Algebra>, Vec<(usize, usize)>) {
        let a = pool()[index].clone();
        let n = a.size();
        (a, raw.into_iter().map(|(x, y)| (x % n, y % n)).collect())
    }
}

/// Every partition of `0..n` as a label vector, by restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=max + 1 {
            prefix.push(label);
            go(prefix, max.max(label), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(&mut vec![0], 0, n, &mut out);
    out
}

fn compatible(a: &Algebra, labels: &[usize]) -> bool {
    let n = a.size();
    a.signature().ops().iter().enumerate().all(|(index, op)| {
        (0..op.arity).all(|slot| {
            (0..n).all(|x| {
                (0..n).filter(|&y| labels[x] == labels[y]).all(|y| {
                    // vary one argument, the others range over all tuples
                    let mut ok = true;
                    let others = n.pow(op.arity.saturating_sub(1) as u32);
                    for code in 0..others {
                        let mut args = Vec::with_capacity(op.arity);
                        let mut c = code;
                        for k in 0..op.arity {
                            if k == slot {
                                args.push(x);
                            } else {
                                args.push(c % n);
                                c /= n;
                            }
                        }
                        let lhs = a.apply(index, &args);
                        args[slot] = y;
                        ok &= labels[lhs] == labels[a.apply(index, &args)];
                    }
                    ok
                })
            })
        })
    })
}

fn contains(theta: &Congruence, other: &Congruence) -> bool {
    other.le(theta)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_subalgebras_are_closures((a, seed) in algebra_and_seed(4), extra in 0..1000usize) {
        let s = subalgebra_generated(&a, &seed).unwrap();
        prop_assert_eq!(&subalgebra_generated(&a, &s).unwrap(), &s);
        for &x in &seed {
            prop_assert!(s.contains(&x));
        }
        let mut bigger = seed.clone();
        bigger.push(extra % a.size());
        let t = subalgebra_generated(&a, &bigger).unwrap();
        prop_assert!(s.iter().all(|x| t.contains(x)));
        if !s.is_empty() {
            ProductSpace::new(vec![a.clone()]).unwrap().subalgebra("sub", &s).unwrap();
        }
    }

    #[test]
    fn generated_congruences_are_least((a, pairs) in algebra_and_pairs(3)) {
        prop_assume!(a.size() <= 6);
        let theta = congruence_generated(&a, &pairs).unwrap();
        for &(x, y) in &pairs {
            prop_assert!(theta.related(x, y));
        }
        let mut least: Option<Vec<usize>> = None;
        let mut count = 0;
        for labels in partitions(a.size()) {
            if !compatible(&a, &labels) || !pairs.iter().all(|&(x, y)| labels[x] == labels[y]) {
                continue;
            }
            count += 1;
            let finer = least.as_ref().is_none_or(|l| {
                (0..a.size()).all(|x| (0..a.size()).all(|y| labels[x] != labels[y] || l[x] == l[y]))
            });
            if finer {
                least = Some(labels);
            }
        }
        prop_assert!(count > 0);
        let least = least.unwrap();
        for x in a.elements() {
            for y in a.elements() {
                prop_assert_eq!(theta.related(x, y), least[x] == least[y]);
            }
        }
    }

    #[test]
    fn commutator_laws(index in 0..11usize, i in 0..100usize, j in 0..100usize, k in 0..100usize) {
        let a = pool()[index].clone();
        let congs = all_congruences(&a).unwrap();
        let (r, s, t) = (&congs[i % congs.len()], &congs[j % congs.len()], &congs[k % congs.len()]);
        let rs = tc_commutator(&a, r, s).unwrap();
        prop_assert_eq!(rs.blocks(), tc_commutator(&a, s, r).unwrap().blocks());
        prop_assert!(rs.le(&r.meet(s).unwrap()));
        if r.le(t) {
            prop_assert!(contains(&tc_commutator(&a, t, s).unwrap(), &rs));
        }
        let check = commutator_cross_check(&a, r, s).unwrap();
        prop_assert!(check.consistent());
    }

    #[test]
    fn pedicchio_relations_are_equivalences(index in 0..9usize, i in 0..100usize, j in 0..100usize) {
        let a = pool()[index].clone();
        let congs = all_congruences(&a).unwrap();
        let (r, s) = (&congs[i % congs.len()], &congs[j % congs.len()]);
        let d = pedicchio_delta(&a, r, s).unwrap();
        let size = d.delta.algebra.size();
        let pairs: BTreeSet<(usize, usize)> = (0..size).map(|k| d.delta.pair_at(k)).collect();
        for u in 0..d.s_rel.algebra.size() {
            prop_assert!(pairs.contains(&(u, u)));
        }
        for &(u, v) in &pairs {
            prop_assert!(pairs.contains(&(v, u)));
            for &(v2, w) in pairs.range((v, 0)..(v + 1, 0)) {
                prop_assert_eq!(v2, v);
                prop_assert!(pairs.contains(&(u, w)));
            }
        }
        prop_assert!(d.p1.after(&d.delta_p).unwrap().is_identity());
    }

    #[test]
    fn reflexive_relations_are_equivalences((a, pairs) in algebra_and_pairs(3)) {
        let space = ProductSpace::new(vec![a.clone(), a.clone()]).unwrap();
        let seed = a
            .elements()
            .map(|x| space.encode(&[x, x]))
            .chain(pairs.iter().map(|&(x, y)| space.encode(&[x, y])));
        let rel: BTreeSet<(usize, usize)> = space
            .generate(seed)
            .unwrap()
            .into_iter()
            .map(|e| (space.coord(e, 0), space.coord(e, 1)))
            .collect();
        for &(x, y) in &rel {
            prop_assert!(rel.contains(&(y, x)));
            for &(_, z) in rel.range((y, 0)..(y + 1, 0)) {
                prop_assert!(rel.contains(&(x, z)));
            }
        }
    }

    #[test]
    fn pullbacks_classify_cones(i in 0..5usize, j in 0..5usize, k in 0..100usize, l in 0..100usize) {
        let small = [
            corpus::cyclic_group(2),
            corpus::cyclic_group(4),
            corpus::klein_group(),
            corpus::cyclic_group(3),
            corpus::symmetric_group_3(),
        ];
        let (a, b) = (&small[i], &small[j]);
        let c = corpus::cyclic_group(2);
        let fs = homomorphisms(a, &c).unwrap();
        let gs = homomorphisms(b, &c).unwrap();
        let (f, g) = (&fs[k % fs.len()], &gs[l % gs.len()]);
        let p = pullback(f, g).unwrap();
        let test = corpus::cyclic_group(2);
        let cones = homomorphisms(&test, a)
            .unwrap()
            .into_iter()
            .flat_map(|x| homomorphisms(&test, b).unwrap().into_iter().map(move |y| (x.clone(), y)))
            .filter(|(x, y)| f.after(x).unwrap() == g.after(y).unwrap())
            .count();
        prop_assert_eq!(homomorphisms(&test, &p.algebra).unwrap().len(), cones);
    }
}

prop_compose! {
    fn hom_groupoid()(g in 1..4usize, h in 1..5usize, k in 0..4usize) -> Option<maltcat_core::ReflexiveGraph> {
        corpus::groupoid_from_hom(g, h, k % h).ok()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reflection_and_coreflection_are_idempotent(rows in hom_groupoid(), columns in hom_groupoid(), kind in 0..3usize) {
        let (Some(rows), Some(columns)) = (rows, columns) else { return Ok(()) };
        let graph = match kind {
            0 => DoubleReflexiveGraph::vertically_discrete(&rows),
            1 => DoubleReflexiveGraph::horizontally_discrete(&rows),
            _ => DoubleReflexiveGraph::product(&rows, &columns).unwrap(),
        };
        prop_assume!(graph.corner_sizes()[0] <= 32);
        let dg = Arc::new(check_double_groupoid(&graph).unwrap().unwrap());
        let r = reflect(&dg).unwrap();
        prop_assert!(is_two_groupoid(&r.two_groupoid));
        prop_assert!(r.unit.is_regular_epi());
        prop_assert!(reflect(&r.two_groupoid).unwrap().unit.is_levelwise_iso());
        let c = coreflect(&dg).unwrap();
        prop_assert!(c.counit.is_levelwise_mono());
        prop_assert!(coreflect(&c.two_groupoid).unwrap().counit.is_levelwise_iso());
    }
}
