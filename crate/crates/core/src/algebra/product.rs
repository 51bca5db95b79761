use std::collections::HashSet;
use std::sync::Arc;

use super::tuples::{for_each_new_tuple, for_each_tuple};
use super::{Algebra, Homomorphism};
use crate::error::{Error, Result};
use crate::limits;

/// The carrier of a finite product `A_0 × … × A_{k-1}`, encoded row-major
/// (the first coordinate is most significant). Operations act
/// componentwise. No tables are materialized, so generated subsets of large
/// powers stay cheap.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    factors: Vec<Arc<Algebra>>,
    strides: Vec<usize>,
    total: usize,
}

impl ProductSpace {
    pub fn new(factors: Vec<Arc<Algebra>>) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::Precondition("product of no factors".into()))?;
        for f in &factors[1..] {
            first.require_same_signature(f)?;
        }
        let mut strides = vec![1; factors.len()];
        let mut total: usize = 1;
        for i in (0..factors.len()).rev() {
            strides[i] = total;
            total = total.checked_mul(factors[i].size()).ok_or(Error::SizeLimit {
                requested: usize::MAX,
                limit: limits::max_size(),
            })?;
        }
        Ok(ProductSpace {
            factors,
            strides,
            total,
        })
    }

    pub fn power(a: &Arc<Algebra>, k: usize) -> Result<Self> {
        ProductSpace::new(vec![a.clone(); k])
    }

    pub fn factors(&self) -> &[Arc<Algebra>] {
        &self.factors
    }

    /// Number of elements of the full product.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coord(&self, element: usize, i: usize) -> usize {
        (element / self.strides[i]) % self.factors[i].size()
    }

    pub fn decode(&self, element: usize) -> Vec<usize> {
        (0..self.factors.len()).map(|i| self.coord(element, i)).collect()
    }

    /// Componentwise application of operation number `op`.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let mut coord_args = vec![0; args.len()];
        let mut out = 0;
        for (i, factor) in self.factors.iter().enumerate() {
            for (slot, &a) in coord_args.iter_mut().zip(args) {
                *slot = self.coord(a, i);
            }
            out += factor.apply(op, &coord_args) * self.strides[i];
        }
        out
    }

    /// Sorted closure of `seed` under all operations (constants included).
    /// Fails if the closure grows past the size limit.
    pub fn generate(&self, seed: impl IntoIterator<Item = usize>) -> Result<Vec<usize>> {
        let sig = self.factors[0].signature().clone();
        let mut members: HashSet<usize> = HashSet::new();
        let mut elems: Vec<usize> = Vec::new();
        let push = |x: usize, members: &mut HashSet<usize>, elems: &mut Vec<usize>| {
            if members.insert(x) {
                elems.push(x);
            }
        };
        for x in seed {
            if x >= self.total {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    size: self.total,
                });
            }
            push(x, &mut members, &mut elems);
        }
        for (index, op) in sig.ops().iter().enumerate() {
            if op.arity == 0 {
                push(self.apply(index, &[]), &mut members, &mut elems);
            }
        }
        let limit = limits::max_size();
        let mut old = 0;
        while old < elems.len() {
            let len = elems.len();
            let mut fresh = Vec::new();
            for (index, op) in sig.ops().iter().enumerate() {
                if op.arity == 0 {
                    continue;
                }
                let mut args = vec![0; op.arity];
                for_each_new_tuple(op.arity, old, len, |t| {
                    for (slot, &i) in args.iter_mut().zip(t) {
                        *slot = elems[i];
                    }
                    let r = self.apply(index, &args);
                    if members.insert(r) {
                        fresh.push(r);
                    }
                    members.len() <= limit
                });
                if members.len() > limit {
                    return Err(Error::SizeLimit {
                        requested: members.len(),
                        limit,
                    });
                }
            }
            old = len;
            elems.extend(fresh);
        }
        elems.sort_unstable();
        Ok(elems)
    }

    /// Materializes the subalgebra on the sorted subset `elems` together with
    /// the coordinate projections. Fails if `elems` is not closed.
    pub fn subalgebra(&self, name: &str, elems: &[usize]) -> Result<(Arc<Algebra>, Vec<Homomorphism>)> {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]), "elements must be sorted");
        limits::check_size(elems.len())?;
        let first = &self.factors[0];
        let sig = first.signature().clone();
        let mut tables = Vec::with_capacity(sig.len());
        for (index, op) in sig.ops().iter().enumerate() {
            let mut table = Vec::with_capacity(limits::table_len(elems.len(), op.arity)?);
            let mut args = vec![0; op.arity];
            let mut missing = None;
            for_each_tuple(op.arity, elems.len(), |t| {
                for (slot, &i) in args.iter_mut().zip(t) {
                    *slot = elems[i];
                }
                let r = self.apply(index, &args);
                match elems.binary_search(&r) {
                    Ok(pos) => {
                        table.push(pos);
                        true
                    }
                    Err(_) => {
                        missing = Some(r);
                        false
                    }
                }
            });
            if missing.is_some() {
                return Err(Error::Precondition(format!(
                    "subset of `{name}` is not closed under `{}`",
                    op.name
                )));
            }
            tables.push(table);
        }
        let algebra = Algebra::derived(name, elems.len(), sig, tables, first.maltsev_term().clone())?;
        let projections = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, factor)| {
                let map = elems.iter().map(|&e| self.coord(e, i)).collect();
                Homomorphism::new_unchecked(algebra.clone(), factor.clone(), map)
            })
            .collect();
        Ok((algebra, projections))
    }
}

/// The smallest subuniverse of `a` containing `seed` and all constants.
pub fn subalgebra_generated(a: &Arc<Algebra>, seed: &[usize]) -> Result<Vec<usize>> {
    for &x in seed {
        a.check_index(x)?;
    }
    ProductSpace::new(vec![a.clone()])?.generate(seed.iter().copied())
}

/// A binary product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub algebra: Arc<Algebra>,
    pub first: Homomorphism,
    pub second: Homomorphism,
    space: ProductSpace,
}

impl Product {
    pub fn encode(&self, a: usize, b: usize) -> usize {
        self.space.encode(&[a, b])
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        (self.space.coord(x, 0), self.space.coord(x, 1))
    }

    /// `⟨f, g⟩ : T -> A × B`.
    pub fn pair(&self, f: &Homomorphism, g: &Homomorphism) -> Result<Homomorphism> {
        if *f.dom() != *g.dom() || *f.cod() != *self.first.cod() || *g.cod() != *self.second.cod() {
            return Err(Error::Mismatch("pairing maps do not match the product".into()));
        }
        let map = f.dom().elements().map(|x| self.encode(f.at(x), g.at(x))).collect();
        Ok(Homomorphism::new_unchecked(f.dom().clone(), self.algebra.clone(), map))
    }

    /// `f × g : A × B -> target`.
    pub fn cross(&self, f: &Homomorphism, g: &Homomorphism, target: &Product) -> Result<Homomorphism> {
        let f = f.after(&self.first)?;
        let g = g.after(&self.second)?;
        target.pair(&f, &g)
    }
}

pub fn product(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Product> {
    let space = ProductSpace::new(vec![a.clone(), b.clone()])?;
    limits::check_size(space.total())?;
    let all: Vec<usize> = (0..space.total()).collect();
    let (algebra, proj) = space.subalgebra(&format!("{}x{}", a.name(), b.name()), &all)?;
    let mut proj = proj.into_iter();
    Ok(Product {
        algebra,
        first: proj.next().unwrap(),
        second: proj.next().unwrap(),
        space,
    })
}

/// The pullback `{(a, b) : f(a) = g(b)}` of a cospan `A -> C <- B`, as a
/// subalgebra of `A × B` with elements in row-major order.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub algebra: Arc<Algebra>,
    pub first: Homomorphism,
    pub second: Homomorphism,
    space: ProductSpace,
    elems: Vec<usize>,
}

impl Pullback {
    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.first.cod().size() || b >= self.second.cod().size() {
            return None;
        }
        self.elems.binary_search(&self.space.encode(&[a, b])).ok()
    }

    pub fn pair_at(&self, index: usize) -> (usize, usize) {
        (self.first.at(index), self.second.at(index))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.algebra.elements().map(|i| self.pair_at(i))
    }

    /// The map `T -> P` induced by `h1 : T -> A`, `h2 : T -> B`. Fails if some
    /// pair `(h1 t, h2 t)` is not in the pullback.
    pub fn induce(&self, h1: &Homomorphism, h2: &Homomorphism) -> Result<Homomorphism> {
        if *h1.dom() != *h2.dom() || *h1.cod() != *self.first.cod() || *h2.cod() != *self.second.cod() {
            return Err(Error::Mismatch("cone does not match the pullback".into()));
        }
        let map = h1
            .dom()
            .elements()
            .map(|t| {
                self.index_of(h1.at(t), h2.at(t)).ok_or_else(|| {
                    Error::Construction(format!(
                        "cone from `{}` escapes the pullback `{}`",
                        h1.dom().name(),
                        self.algebra.name()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism::new_unchecked(h1.dom().clone(), self.algebra.clone(), map))
    }
}

pub fn pullback(f: &Homomorphism, g: &Homomorphism) -> Result<Pullback> {
    if *f.cod() != *g.cod() {
        return Err(Error::Mismatch(format!(
            "pullback of maps into `{}` and `{}`",
            f.cod().name(),
            g.cod().name()
        )));
    }
    let space = ProductSpace::new(vec![f.dom().clone(), g.dom().clone()])?;
    let mut elems = Vec::new();
    for a in f.dom().elements() {
        for b in g.dom().elements() {
            if f.at(a) == g.at(b) {
                elems.push(space.encode(&[a, b]));
            }
        }
    }
    let name = format!("{}x_{}{}", f.dom().name(), f.cod().name(), g.dom().name());
    let (algebra, proj) = space.subalgebra(&name, &elems)?;
    let mut proj = proj.into_iter();
    Ok(Pullback {
        algebra,
        first: proj.next().unwrap(),
        second: proj.next().unwrap(),
        space,
        elems,
    })
}

/// Whether the commutative square
///
/// ```text
///   P --top--> A
///   |          |
/// left       right
///   v          v
///   B -bottom-> C
/// ```
///
/// commutes and is a pullback, by comparing `P` with the fibered product.
pub fn is_pullback_square(
    top: &Homomorphism,
    left: &Homomorphism,
    right: &Homomorphism,
    bottom: &Homomorphism,
) -> Result<bool> {
    if right.after(top)? != bottom.after(left)? {
        return Ok(false);
    }
    let a = right.dom().size();
    let b = bottom.dom().size();
    let mut hit = vec![false; a * b];
    for p in top.dom().elements() {
        let cell = &mut hit[top.at(p) * b + left.at(p)];
        if std::mem::replace(cell, true) {
            return Ok(false);
        }
    }
    let fibered = (0..a)
        .flat_map(|x| (0..b).map(move |y| (x, y)))
        .filter(|&(x, y)| right.at(x) == bottom.at(y))
        .count();
    Ok(fibered == top.dom().size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn product_examples() {
        let z2 = corpus::cyclic_group(2);
        let z3 = corpus::cyclic_group(3);
        let v = product(&z2, &z2).unwrap();
        assert_eq!(v.algebra.size(), 4);
        for i in 0..4 {
            let (a, b) = v.decode(i);
            assert_eq!(i, 2 * a + b);
            assert_eq!(v.encode(a, b), i);
        }
        let p = product(&z2, &z3).unwrap();
        assert_eq!(p.algebra.size(), 6);
        assert!(is_homomorphism_map(&p.first));
        assert!(is_homomorphism_map(&p.second));
    }

    fn is_homomorphism_map(h: &Homomorphism) -> bool {
        crate::algebra::is_homomorphism(h.map(), h.dom(), h.cod()).unwrap()
    }

    #[test]
    fn product_respects_size_guard() {
        let z4 = corpus::cyclic_group(4);
        let err = limits::with_max_size(8, || product(&z4, &z4));
        assert!(matches!(err, Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn subalgebra_generated_examples() {
        let z4 = corpus::cyclic_group(4);
        assert_eq!(subalgebra_generated(&z4, &[1]).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(subalgebra_generated(&z4, &[2]).unwrap(), vec![0, 2]);
        assert_eq!(subalgebra_generated(&z4, &[0, 1, 2, 3]).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(subalgebra_generated(&z4, &[]).unwrap(), vec![0]);
        assert!(subalgebra_generated(&z4, &[4]).is_err());
    }

    #[test]
    fn pullback_examples() {
        let z2 = corpus::cyclic_group(2);
        let id = Homomorphism::identity(&z2);
        let diag = pullback(&id, &id).unwrap();
        assert_eq!(diag.algebra.size(), 2);
        assert_eq!(diag.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);

        // composable pairs of Z2xZ2 => Z2 with d(h,g)=h, c(h,g)=h+g
        let graph = corpus::groupoid_from_hom(2, 2, 1).unwrap();
        let composable = pullback(graph.target(), graph.source()).unwrap();
        assert_eq!(composable.algebra.size(), 8);

        let z4 = corpus::cyclic_group(4);
        let trivial = corpus::trivial_group();
        let mod2 = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let zero = Homomorphism::new(trivial.clone(), z2.clone(), vec![0]).unwrap();
        let fiber = pullback(&mod2, &zero).unwrap();
        assert_eq!(fiber.pairs().collect::<Vec<_>>(), vec![(0, 0), (2, 0)]);
    }

    #[test]
    fn pullback_of_mismatched_maps_fails() {
        let z2 = corpus::cyclic_group(2);
        let z4 = corpus::cyclic_group(4);
        assert!(pullback(&Homomorphism::identity(&z2), &Homomorphism::identity(&z4)).is_err());
    }

    #[test]
    fn pullback_square_detection() {
        let z4 = corpus::cyclic_group(4);
        let z2 = corpus::cyclic_group(2);
        let mod2 = Homomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let pb = pullback(&mod2, &mod2).unwrap();
        assert!(is_pullback_square(&pb.first, &pb.second, &mod2, &mod2).unwrap());
        let id = Homomorphism::identity(&z4);
        // Z4 with (id, id) is the diagonal, strictly smaller than the kernel pair
        assert!(!is_pullback_square(&id, &id, &mod2, &mod2).unwrap());
    }
}
