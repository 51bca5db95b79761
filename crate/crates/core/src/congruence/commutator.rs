use std::sync::Arc;

use super::Congruence;
use crate::algebra::{Algebra, ProductSpace};
use crate::error::Result;

/// The subalgebra of `A^4` generated by the quadruples `(a, b, a, b)` with
/// `a R b` and `(u, u, v, v)` with `u S v`, as sorted coordinate quadruples.
pub fn delta_matrix_algebra(a: &Arc<Algebra>, r: &Congruence, s: &Congruence) -> Result<Vec<[usize; 4]>> {
    r.require_on(a)?;
    s.require_on(a)?;
    let space = ProductSpace::power(a, 4)?;
    let mut seed = Vec::new();
    for x in a.elements() {
        for y in a.elements() {
            if r.related(x, y) {
                seed.push(space.encode(&[x, y, x, y]));
            }
            if s.related(x, y) {
                seed.push(space.encode(&[x, x, y, y]));
            }
        }
    }
    let elems = space.generate(seed)?;
    Ok(elems
        .into_iter()
        .map(|e| {
            let c = space.decode(e);
            [c[0], c[1], c[2], c[3]]
        })
        .collect())
}

/// The term-condition commutator `[R, S]`: the least congruence `d` such
/// that every generated quadruple `(x, y, z, w)` with `x d y` has `z d w`.
pub fn tc_commutator(a: &Arc<Algebra>, r: &Congruence, s: &Congruence) -> Result<Congruence> {
    let matrices = delta_matrix_algebra(a, r, s)?;
    let mut delta = Congruence::identity(a);
    loop {
        let forced: Vec<(usize, usize)> = matrices
            .iter()
            .filter(|m| delta.related(m[0], m[1]) && !delta.related(m[2], m[3]))
            .map(|m| (m[2], m[3]))
            .collect();
        if forced.is_empty() {
            return Ok(delta);
        }
        delta = delta.extend(&forced)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn abelian_affine_commutators_vanish() {
        let a4 = corpus::cyclic_affine(4);
        let mid = crate::congruence::congruence_generated(&a4, &[(0, 2)]).unwrap();
        for r in [Congruence::identity(&a4), mid.clone(), Congruence::full(&a4)] {
            for s in [Congruence::identity(&a4), mid.clone(), Congruence::full(&a4)] {
                assert!(tc_commutator(&a4, &r, &s).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn symmetric_group_derived_congruence() {
        let s3 = corpus::symmetric_group_3();
        let full = Congruence::full(&s3);
        let c = tc_commutator(&s3, &full, &full).unwrap();
        assert_eq!(c.blocks(), vec![vec![0, 3, 4], vec![1, 2, 5]]);
        let id = Congruence::identity(&s3);
        assert!(tc_commutator(&s3, &full, &id).unwrap().is_identity());
        assert!(tc_commutator(&s3, &id, &full).unwrap().is_identity());
    }

    #[test]
    fn delta_matrix_sizes() {
        let z4 = corpus::cyclic_group(4);
        let id = Congruence::identity(&z4);
        let diag = delta_matrix_algebra(&z4, &id, &id).unwrap();
        assert_eq!(diag.len(), 4);
        assert!(diag.iter().all(|m| m.iter().all(|&x| x == m[0])));

        let mid = crate::congruence::congruence_generated(&z4, &[(0, 2)]).unwrap();
        assert_eq!(delta_matrix_algebra(&z4, &mid, &mid).unwrap().len(), 16);

        let z2 = corpus::cyclic_group(2);
        let m = delta_matrix_algebra(&z2, &Congruence::full(&z2), &Congruence::identity(&z2)).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|q| q[0] == q[2] && q[1] == q[3]));
    }
}
