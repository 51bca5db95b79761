//! Backtracking search for homomorphisms and subuniverses.
//!
//! A partial assignment is always kept closed under the operations of the
//! domain: after choosing the image of a new element, every operation is
//! applied to tuples touching it and the forced values are propagated. A
//! complete assignment is therefore a homomorphism without a final check.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use super::product::ProductSpace;
use super::tuples::for_each_new_tuple;
use super::{Algebra, Homomorphism};
use crate::error::{Error, Result};

/// Enumerates homomorphisms `dom -> cod`, optionally with some values fixed
/// in advance and/or restricted to injective maps.
#[derive(Clone, Debug)]
pub struct HomSearch {
    dom: Arc<Algebra>,
    cod: Arc<Algebra>,
    fixed: Vec<Option<usize>>,
    injective: bool,
}

#[derive(Clone)]
struct State {
    map: Vec<Option<usize>>,
    known: Vec<usize>,
    used: Vec<bool>,
}

impl HomSearch {
    pub fn new(dom: &Arc<Algebra>, cod: &Arc<Algebra>) -> Result<Self> {
        dom.require_same_signature(cod)?;
        Ok(HomSearch {
            dom: dom.clone(),
            cod: cod.clone(),
            fixed: vec![None; dom.size()],
            injective: false,
        })
    }

    /// Requires `x -> y`.
    pub fn fix(mut self, x: usize, y: usize) -> Result<Self> {
        self.dom.check_index(x)?;
        self.cod.check_index(y)?;
        match self.fixed[x] {
            Some(old) if old != y => {
                return Err(Error::Precondition(format!("conflicting values fixed for element {x}")))
            }
            _ => self.fixed[x] = Some(y),
        }
        Ok(self)
    }

    pub fn fix_all(mut self, partial: &[Option<usize>]) -> Result<Self> {
        if partial.len() != self.dom.size() {
            return Err(Error::Malformed(format!(
                "partial map has length {}, domain has size {}",
                partial.len(),
                self.dom.size()
            )));
        }
        for (x, y) in partial.iter().enumerate() {
            if let Some(y) = *y {
                self = self.fix(x, y)?;
            }
        }
        Ok(self)
    }

    pub fn injective(mut self, injective: bool) -> Self {
        self.injective = injective;
        self
    }

    /// Visits every solution in lexicographic order of the map. Stops when
    /// `visit` returns `false`; the return value says whether the search ran
    /// to completion.
    pub fn for_each(&self, mut visit: impl FnMut(Homomorphism) -> bool) -> bool {
        if self.injective && self.dom.size() > self.cod.size() {
            return true;
        }
        let mut state = State {
            map: vec![None; self.dom.size()],
            known: Vec::new(),
            used: vec![false; self.cod.size()],
        };
        for (index, op) in self.dom.signature().ops().iter().enumerate() {
            if op.arity == 0 {
                let (x, y) = (self.dom.apply(index, &[]), self.cod.apply(index, &[]));
                if !self.assign(&mut state, x, y) {
                    return true;
                }
            }
        }
        if !self.propagate(&mut state, 0) {
            return true;
        }
        self.branch(state, &mut visit)
    }

    pub fn collect(&self) -> Vec<Homomorphism> {
        let mut out = Vec::new();
        self.for_each(|h| {
            out.push(h);
            true
        });
        out
    }

    pub fn first(&self) -> Option<Homomorphism> {
        let mut out = None;
        self.for_each(|h| {
            out = Some(h);
            false
        });
        out
    }

    fn assign(&self, state: &mut State, x: usize, y: usize) -> bool {
        match state.map[x] {
            Some(old) => old == y,
            None => {
                if self.fixed[x].is_some_and(|f| f != y) || (self.injective && state.used[y]) {
                    return false;
                }
                state.map[x] = Some(y);
                state.used[y] = true;
                state.known.push(x);
                true
            }
        }
    }

    fn propagate(&self, state: &mut State, mut old: usize) -> bool {
        let ops = self.dom.signature().ops();
        while old < state.known.len() {
            let len = state.known.len();
            for (index, op) in ops.iter().enumerate() {
                if op.arity == 0 {
                    continue;
                }
                let mut xs = vec![0; op.arity];
                let mut ys = vec![0; op.arity];
                let ok = for_each_new_tuple(op.arity, old, len, |t| {
                    for (i, &k) in t.iter().enumerate() {
                        xs[i] = state.known[k];
                        ys[i] = state.map[xs[i]].unwrap();
                    }
                    let x = self.dom.apply(index, &xs);
                    let y = self.cod.apply(index, &ys);
                    self.assign(state, x, y)
                });
                if !ok {
                    return false;
                }
            }
            old = len;
        }
        true
    }

    fn branch(&self, state: State, visit: &mut impl FnMut(Homomorphism) -> bool) -> bool {
        let Some(x) = state.map.iter().position(Option::is_none) else {
            let map = state.map.into_iter().map(Option::unwrap).collect();
            return visit(Homomorphism::new_unchecked(self.dom.clone(), self.cod.clone(), map));
        };
        let candidates = match self.fixed[x] {
            Some(y) => y..y + 1,
            None => 0..self.cod.size(),
        };
        for y in candidates {
            let mut next = state.clone();
            let start = next.known.len();
            if self.assign(&mut next, x, y) && self.propagate(&mut next, start) && !self.branch(next, visit) {
                return false;
            }
        }
        true
    }
}

/// All homomorphisms `a -> b`, in lexicographic order of their maps.
pub fn homomorphisms(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Vec<Homomorphism>> {
    Ok(HomSearch::new(a, b)?.collect())
}

/// All homomorphisms `a -> b` agreeing with `partial` where it is defined.
pub fn homomorphisms_extending(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    partial: &[Option<usize>],
) -> Result<Vec<Homomorphism>> {
    Ok(HomSearch::new(a, b)?.fix_all(partial)?.collect())
}

/// Some isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Option<Homomorphism>> {
    if a.size() != b.size() || !a.same_signature(b) {
        return Ok(None);
    }
    Ok(HomSearch::new(a, b)?.injective(true).first())
}

/// All nonempty subuniverses of `a`, each sorted, listed in increasing size
/// and then lexicographically.
pub fn all_subuniverses(a: &Arc<Algebra>) -> Result<Vec<Vec<usize>>> {
    let space = ProductSpace::new(vec![a.clone()])?;
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for x in a.elements() {
        let s = space.generate([x])?;
        if found.insert((s.len(), s.clone())) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for x in a.elements() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let t = space.generate(s.iter().copied().chain([x]))?;
            if found.insert((t.len(), t.clone())) {
                queue.push_back(t);
            }
        }
    }
    Ok(found.into_iter().map(|(_, s)| s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_homomorphism, product, tuples::for_each_tuple};
    use crate::corpus;

    fn brute_force_homs(a: &Algebra, b: &Algebra) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_tuple(a.size(), b.size(), |m| {
            if is_homomorphism(m, a, b).unwrap() {
                out.push(m.to_vec());
            }
            true
        });
        out
    }

    #[test]
    fn search_matches_brute_force() {
        let z2 = corpus::cyclic_group(2);
        let z4 = corpus::cyclic_group(4);
        let s3 = corpus::symmetric_group_3();
        let v = product(&z2, &z2).unwrap().algebra;
        let a4 = corpus::cyclic_affine(4);
        let a2 = corpus::cyclic_affine(2);
        let pairs = [
            (&z4, &z2),
            (&z2, &z4),
            (&z4, &z4),
            (&v, &z4),
            (&z4, &v),
            (&s3, &z2),
            (&z2, &s3),
            (&s3, &s3),
            (&a4, &a2),
            (&a2, &a4),
        ];
        for (a, b) in pairs {
            let found: Vec<Vec<usize>> = homomorphisms(a, b).unwrap().iter().map(|h| h.map().to_vec()).collect();
            assert_eq!(found, brute_force_homs(a, b), "{} -> {}", a.name(), b.name());
        }
    }

    #[test]
    fn hom_counts() {
        let z2 = corpus::cyclic_group(2);
        let s3 = corpus::symmetric_group_3();
        // sign map and the trivial map
        assert_eq!(homomorphisms(&s3, &z2).unwrap().len(), 2);
        // trivial map and three involutions
        assert_eq!(homomorphisms(&z2, &s3).unwrap().len(), 4);
        // automorphisms of S3
        let autos = HomSearch::new(&s3, &s3).unwrap().injective(true).collect();
        assert_eq!(autos.len(), 6);
    }

    #[test]
    fn fixed_values_are_respected() {
        let z4 = corpus::cyclic_group(4);
        let homs = HomSearch::new(&z4, &z4).unwrap().fix(1, 3).unwrap().collect();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].map(), &[0, 3, 2, 1]);
        let none = HomSearch::new(&z4, &z4).unwrap().fix(0, 1).unwrap().collect();
        assert!(none.is_empty());
    }

    #[test]
    fn isomorphism_search() {
        let z2 = corpus::cyclic_group(2);
        let z4 = corpus::cyclic_group(4);
        let v = product(&z2, &z2).unwrap().algebra;
        assert!(find_isomorphism(&z4, &v).unwrap().is_none());
        let iso = find_isomorphism(&v, &v.renamed("w")).unwrap().unwrap();
        assert!(iso.is_bijective());
    }

    #[test]
    fn subuniverse_counts() {
        let z4 = corpus::cyclic_group(4);
        assert_eq!(
            all_subuniverses(&z4).unwrap(),
            vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]
        );
        // S3 has six subgroups
        assert_eq!(all_subuniverses(&corpus::symmetric_group_3()).unwrap().len(), 6);
        // in the affine signature every singleton is a subuniverse
        let a2 = corpus::cyclic_affine(2);
        assert_eq!(all_subuniverses(&a2).unwrap(), vec![vec![0], vec![1], vec![0, 1]]);
    }
}
