//! Congruences, quotients, coequalizers, pushouts along surjections, and the
//! term-condition commutator.

mod commutator;
mod pushout;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

pub use commutator::{delta_matrix_algebra, tc_commutator};
pub use pushout::{
    pushout_along_regular_epi, pushout_named, split_pushout_retraction, verify_pushout_universal, PushoutResult,
};

use crate::algebra::tuples::for_each_tuple;
use crate::algebra::{Algebra, Homomorphism};
use crate::error::{Error, Result};

/// A congruence, stored as the least element of each element's block.
#[derive(Clone)]
pub struct Congruence {
    algebra: Arc<Algebra>,
    rep: Vec<usize>,
}

impl Congruence {
    pub fn identity(a: &Arc<Algebra>) -> Self {
        Congruence {
            algebra: a.clone(),
            rep: a.elements().collect(),
        }
    }

    pub fn full(a: &Arc<Algebra>) -> Self {
        Congruence {
            algebra: a.clone(),
            rep: vec![0; a.size()],
        }
    }

    /// Validates that `blocks` partition the carrier and are compatible
    /// with every operation.
    pub fn from_blocks(a: &Arc<Algebra>, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut rep: Vec<Option<usize>> = vec![None; a.size()];
        for block in blocks {
            let Some(&min) = block.iter().min() else {
                return Err(Error::Malformed("empty block".into()));
            };
            for &x in block {
                a.check_index(x)?;
                if rep[x].replace(min).is_some() {
                    return Err(Error::Malformed(format!("element {x} appears in two blocks")));
                }
            }
        }
        let rep = rep
            .into_iter()
            .enumerate()
            .map(|(x, r)| r.ok_or_else(|| Error::Malformed(format!("element {x} is in no block"))))
            .collect::<Result<Vec<_>>>()?;
        let theta = Congruence {
            algebra: a.clone(),
            rep,
        };
        theta.check_compatible()?;
        Ok(theta)
    }

    /// The equivalence "same label", without a compatibility check.
    pub(crate) fn from_labels_unchecked(a: &Arc<Algebra>, labels: &[usize]) -> Self {
        let mut first = std::collections::HashMap::new();
        let rep = labels
            .iter()
            .enumerate()
            .map(|(x, l)| *first.entry(l).or_insert(x))
            .collect();
        Congruence {
            algebra: a.clone(),
            rep,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// Least element of the block of `x`.
    pub fn rep(&self, x: usize) -> usize {
        self.rep[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rep[x] == self.rep[y]
    }

    /// Blocks, each sorted, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.rep.len()];
        for (x, &r) in self.rep.iter().enumerate() {
            if r == x {
                slot[x] = blocks.len();
                blocks.push(vec![x]);
            } else {
                blocks[slot[r]].push(x);
            }
        }
        blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(x, &r)| x == r).count()
    }

    pub fn is_identity(&self) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_full(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// Inclusion of relations.
    pub fn le(&self, other: &Congruence) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| other.related(x, r))
    }

    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        self.require_same_algebra(other)?;
        let labels: Vec<usize> = (0..self.rep.len())
            .map(|x| self.rep[x] * self.rep.len() + other.rep[x])
            .collect();
        Ok(Congruence::from_labels_unchecked(&self.algebra, &labels))
    }

    /// The join, i.e. the transitive closure of the union.
    pub fn join(&self, other: &Congruence) -> Result<Congruence> {
        self.require_same_algebra(other)?;
        let mut uf = UnionFind::new(self.rep.len());
        for x in 0..self.rep.len() {
            uf.union(x, self.rep[x]);
            uf.union(x, other.rep[x]);
        }
        Ok(Congruence::from_union_find(&self.algebra, &uf))
    }

    /// Pairs `(x, y)` with `x < y` in the same block.
    pub fn nontrivial_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for (i, &x) in block.iter().enumerate() {
                for &y in &block[i + 1..] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub(crate) fn require_same_algebra(&self, other: &Congruence) -> Result<()> {
        self.require_on(&other.algebra)
    }

    pub(crate) fn require_on(&self, a: &Algebra) -> Result<()> {
        if *self.algebra == *a {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "congruence on `{}` used with `{}`",
                self.algebra.name(),
                a.name()
            )))
        }
    }

    fn check_compatible(&self) -> Result<()> {
        let a = &self.algebra;
        for (index, op) in a.signature().ops().iter().enumerate() {
            let mut moved = vec![0; op.arity];
            let ok = for_each_tuple(op.arity, a.size(), |args| {
                let base = self.rep[a.apply(index, args)];
                (0..op.arity).all(|i| {
                    moved.copy_from_slice(args);
                    moved[i] = self.rep[args[i]];
                    self.rep[a.apply(index, &moved)] == base
                })
            });
            if !ok {
                return Err(Error::NotCompatible { op: op.name.clone() });
            }
        }
        Ok(())
    }

    fn from_union_find(a: &Arc<Algebra>, uf: &UnionFind<usize>) -> Self {
        let labels = uf.clone().into_labeling();
        Congruence::from_labels_unchecked(a, &labels)
    }

    /// The least congruence containing `self` and `pairs`.
    pub fn extend(&self, pairs: &[(usize, usize)]) -> Result<Congruence> {
        let a = &self.algebra;
        for &(x, y) in pairs {
            a.check_index(x)?;
            a.check_index(y)?;
        }
        let mut uf = UnionFind::new(a.size());
        for x in a.elements() {
            uf.union(x, self.rep[x]);
        }
        let mut pending: Vec<(usize, usize)> = pairs.to_vec();
        let ops = a.signature().ops();
        while let Some((x, y)) = pending.pop() {
            if !uf.union(x, y) {
                continue;
            }
            // every basic translation of a new edge must become related
            for (index, op) in ops.iter().enumerate() {
                if op.arity == 0 {
                    continue;
                }
                let mut args = vec![0; op.arity];
                for i in 0..op.arity {
                    for_each_tuple(op.arity - 1, a.size(), |rest| {
                        args[..i].copy_from_slice(&rest[..i]);
                        args[i + 1..].copy_from_slice(&rest[i..]);
                        args[i] = x;
                        let u = a.apply(index, &args);
                        args[i] = y;
                        let v = a.apply(index, &args);
                        if u != v && !uf.equiv(u, v) {
                            pending.push((u, v));
                        }
                        true
                    });
                }
            }
        }
        Ok(Congruence::from_union_find(a, &uf))
    }
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && *self.algebra == *other.algebra
    }
}

impl Eq for Congruence {}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence({}, {:?})", self.algebra.name(), self.blocks())
    }
}

/// The least congruence of `a` containing every pair.
pub fn congruence_generated(a: &Arc<Algebra>, pairs: &[(usize, usize)]) -> Result<Congruence> {
    Congruence::identity(a).extend(pairs)
}

/// `a / theta` with carrier the block minima in increasing order.
pub fn quotient(theta: &Congruence) -> Result<(Arc<Algebra>, Homomorphism)> {
    let a = &theta.algebra;
    quotient_named(theta, &format!("{}_q", a.name()))
}

pub fn quotient_named(theta: &Congruence, name: &str) -> Result<(Arc<Algebra>, Homomorphism)> {
    theta.check_compatible()?;
    let a = &theta.algebra;
    let reps: Vec<usize> = a.elements().filter(|&x| theta.rep[x] == x).collect();
    let mut label = vec![0; a.size()];
    for (i, &r) in reps.iter().enumerate() {
        label[r] = i;
    }
    let proj: Vec<usize> = a.elements().map(|x| label[theta.rep[x]]).collect();
    let mut tables = Vec::with_capacity(a.signature().len());
    for (index, op) in a.signature().ops().iter().enumerate() {
        let mut table = Vec::new();
        let mut args = vec![0; op.arity];
        for_each_tuple(op.arity, reps.len(), |t| {
            for (slot, &i) in args.iter_mut().zip(t) {
                *slot = reps[i];
            }
            table.push(proj[a.apply(index, &args)]);
            true
        });
        tables.push(table);
    }
    let q = Algebra::derived(
        name,
        reps.len(),
        a.signature().clone(),
        tables,
        a.maltsev_term().clone(),
    )?;
    let projection = Homomorphism::new_unchecked(a.clone(), q.clone(), proj);
    Ok((q, projection))
}

/// The fibers of `f`.
pub fn kernel_pair(f: &Homomorphism) -> Congruence {
    Congruence::from_labels_unchecked(f.dom(), f.map())
}

/// A quotient together with its projection.
#[derive(Clone, Debug)]
pub struct CoequalizerResult {
    pub quotient: Arc<Algebra>,
    pub projection: Homomorphism,
}

/// The coequalizer of a parallel pair `f, g : A -> B`.
pub fn coequalizer(f: &Homomorphism, g: &Homomorphism) -> Result<CoequalizerResult> {
    if *f.dom() != *g.dom() || *f.cod() != *g.cod() {
        return Err(Error::Mismatch("coequalizer of maps that are not parallel".into()));
    }
    let pairs: Vec<(usize, usize)> = f.dom().elements().map(|x| (f.at(x), g.at(x))).collect();
    let theta = congruence_generated(f.cod(), &pairs)?;
    let (quotient, projection) = quotient(&theta)?;
    Ok(CoequalizerResult { quotient, projection })
}

/// Every congruence of `a`, as joins of principal congruences. Sorted by
/// number of blocks (descending) and then by representative vector.
pub fn all_congruences(a: &Arc<Algebra>) -> Result<Vec<Congruence>> {
    let mut principal = Vec::new();
    for x in a.elements() {
        for y in x + 1..a.size() {
            principal.push(congruence_generated(a, &[(x, y)])?.rep);
        }
    }
    principal.sort();
    principal.dedup();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(a.elements().collect());
    let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
    while let Some(rep) = frontier.pop() {
        let theta = Congruence {
            algebra: a.clone(),
            rep,
        };
        for p in &principal {
            let other = Congruence {
                algebra: a.clone(),
                rep: p.clone(),
            };
            let joined = theta.join(&other)?.rep;
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Congruence> = found
        .into_iter()
        .map(|rep| Congruence {
            algebra: a.clone(),
            rep,
        })
        .collect();
    out.sort_by(|x, y| y.num_blocks().cmp(&x.num_blocks()).then_with(|| x.rep.cmp(&y.rep)));
    Ok(out)
}
