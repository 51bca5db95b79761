use std::fmt;
use std::sync::Arc;

use super::tuples::for_each_tuple;
use super::{product::ProductSpace, Algebra};
use crate::error::{Error, Result};

/// A total map between carriers that commutes with every operation.
#[derive(Clone)]
pub struct Homomorphism {
    dom: Arc<Algebra>,
    cod: Arc<Algebra>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(dom: Arc<Algebra>, cod: Arc<Algebra>, map: Vec<usize>) -> Result<Self> {
        if let Some(violation) = first_violation(&map, &dom, &cod)? {
            return Err(Error::NotHomomorphism(violation));
        }
        Ok(Homomorphism { dom, cod, map })
    }

    /// For maps known to be homomorphisms by construction.
    pub(crate) fn new_unchecked(dom: Arc<Algebra>, cod: Arc<Algebra>, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), dom.size());
        debug_assert!(
            matches!(first_violation(&map, &dom, &cod), Ok(None)),
            "{} -> {} is not a homomorphism",
            dom.name(),
            cod.name()
        );
        Homomorphism { dom, cod, map }
    }

    pub fn identity(a: &Arc<Algebra>) -> Self {
        Homomorphism {
            dom: a.clone(),
            cod: a.clone(),
            map: a.elements().collect(),
        }
    }

    /// The map to a one-element algebra.
    pub fn terminal(a: &Arc<Algebra>, point: &Arc<Algebra>) -> Result<Self> {
        if point.size() != 1 {
            return Err(Error::Precondition(format!(
                "`{}` is not a one-element algebra",
                point.name()
            )));
        }
        a.require_same_signature(point)?;
        Ok(Homomorphism::new_unchecked(a.clone(), point.clone(), vec![0; a.size()]))
    }

    pub fn dom(&self) -> &Arc<Algebra> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Algebra> {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn at(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if *inner.cod != *self.dom {
            return Err(Error::Mismatch(format!(
                "cannot compose `{}` -> `{}` after `{}` -> `{}`",
                self.dom.name(),
                self.cod.name(),
                inner.dom.name(),
                inner.cod.name()
            )));
        }
        let map = inner.map.iter().map(|&x| self.map[x]).collect();
        Ok(Homomorphism::new_unchecked(inner.dom.clone(), self.cod.clone(), map))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        next.after(self)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        let mut count = 0;
        for &y in &self.map {
            if !std::mem::replace(&mut seen[y], true) {
                count += 1;
            }
        }
        count == self.cod.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn is_identity(&self) -> bool {
        *self.dom == *self.cod && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn inverse(&self) -> Result<Homomorphism> {
        if !self.is_bijective() {
            return Err(Error::Precondition(format!(
                "`{}` -> `{}` is not bijective",
                self.dom.name(),
                self.cod.name()
            )));
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(Homomorphism::new_unchecked(self.cod.clone(), self.dom.clone(), inv))
    }

    /// The sorted set of values.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.cod.size()];
        for &y in &self.map {
            seen[y] = true;
        }
        (0..self.cod.size()).filter(|&y| seen[y]).collect()
    }

    /// Same map with the domain and codomain replaced by structurally equal
    /// algebras (e.g. a renamed copy).
    pub fn retarget(&self, dom: &Arc<Algebra>, cod: &Arc<Algebra>) -> Result<Homomorphism> {
        if **dom != *self.dom || **cod != *self.cod {
            return Err(Error::Mismatch("retarget needs structurally equal algebras".into()));
        }
        Ok(Homomorphism::new_unchecked(dom.clone(), cod.clone(), self.map.clone()))
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.dom == *other.dom && *self.cod == *other.cod
    }
}

impl Eq for Homomorphism {}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.dom.name(), self.cod.name(), self.map)
    }
}

/// Describes the first operation/tuple at which `map` fails to commute.
/// Errors when the inputs do not even describe a map `a -> b`.
pub(crate) fn first_violation(map: &[usize], a: &Algebra, b: &Algebra) -> Result<Option<String>> {
    a.require_same_signature(b)?;
    if map.len() != a.size() {
        return Err(Error::Malformed(format!(
            "map has length {}, domain `{}` has size {}",
            map.len(),
            a.name(),
            a.size()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= b.size()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: b.size(),
        });
    }
    let mut violation = None;
    for (index, op) in a.signature().ops().iter().enumerate() {
        let mut image = vec![0; op.arity];
        for_each_tuple(op.arity, a.size(), |args| {
            for (slot, &x) in image.iter_mut().zip(args) {
                *slot = map[x];
            }
            if map[a.apply(index, args)] != b.apply(index, &image) {
                violation = Some(format!("f({}{:?}) != {}(f{:?})", op.name, args, op.name, args));
                false
            } else {
                true
            }
        });
        if violation.is_some() {
            break;
        }
    }
    Ok(violation)
}

/// Whether `map` commutes with every operation of `a` and `b`.
pub fn is_homomorphism(map: &[usize], a: &Algebra, b: &Algebra) -> Result<bool> {
    Ok(first_violation(map, a, b)?.is_none())
}

/// The unique `u` with `u ∘ epi = h`, for surjective `epi`. Fails when `h`
/// is not constant on the fibers of `epi`.
pub fn descend(epi: &Homomorphism, h: &Homomorphism) -> Result<Homomorphism> {
    if *epi.dom != *h.dom {
        return Err(Error::Mismatch(format!(
            "`{}` and `{}` have different domains",
            epi.cod.name(),
            h.cod.name()
        )));
    }
    let mut out: Vec<Option<usize>> = vec![None; epi.cod.size()];
    for x in epi.dom.elements() {
        let slot = &mut out[epi.map[x]];
        match *slot {
            None => *slot = Some(h.map[x]),
            Some(v) if v != h.map[x] => {
                return Err(Error::Construction(format!(
                    "map into `{}` is not constant on a fiber of `{}` -> `{}`",
                    h.cod.name(),
                    epi.dom.name(),
                    epi.cod.name()
                )))
            }
            Some(_) => {}
        }
    }
    let map = out
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotSurjective(format!("`{}` -> `{}`", epi.dom.name(), epi.cod.name())))?;
    Homomorphism::new(epi.cod.clone(), h.cod.clone(), map)
        .map_err(|e| Error::Construction(format!("descended map: {e}")))
}

/// Factors `f` as a surjection onto its image followed by the inclusion.
pub fn image_factorization(f: &Homomorphism) -> Result<(Homomorphism, Homomorphism)> {
    let image = f.image();
    let space = ProductSpace::new(vec![f.cod.clone()])?;
    let name = format!("im({})", f.dom.name());
    let (sub, proj) = space.subalgebra(&name, &image)?;
    let inclusion = proj.into_iter().next().expect("one factor");
    let map = f
        .map
        .iter()
        .map(|y| image.binary_search(y).expect("value in image"))
        .collect();
    let epi = Homomorphism::new_unchecked(f.dom.clone(), sub, map);
    Ok((epi, inclusion))
}
