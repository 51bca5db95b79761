//! Group-theoretic reference values, computed without congruence machinery.

use std::collections::BTreeSet;

use maltcat_core::{Algebra, Congruence, Result};

/// Multiplication, inversion and identity read off a group in the
/// `{mul, inv, one}` signature.
pub struct GroupTables<'a> {
    group: &'a Algebra,
    one: usize,
}

impl<'a> GroupTables<'a> {
    pub fn new(group: &'a Algebra) -> Result<Self> {
        let one = group.apply_named("one", &[])?;
        group.apply_named("mul", &[one, one])?;
        group.apply_named("inv", &[one])?;
        Ok(GroupTables { group, one })
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.group.apply_named("mul", &[a, b]).expect("checked in new")
    }

    fn inv(&self, a: usize) -> usize {
        self.group.apply_named("inv", &[a]).expect("checked in new")
    }

    /// The class of the identity.
    pub fn normal_subgroup(&self, theta: &Congruence) -> BTreeSet<usize> {
        self.group.elements().filter(|&x| theta.related(self.one, x)).collect()
    }

    pub fn generated_subgroup(&self, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = gens.clone();
        out.insert(self.one);
        let mut frontier: Vec<usize> = out.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let products: Vec<usize> = out.iter().flat_map(|&b| [self.mul(a, b), self.mul(b, a)]).collect();
            for p in products {
                if out.insert(p) {
                    frontier.push(p);
                }
            }
        }
        out
    }

    /// `[M, N]`, generated by the commutators `m⁻¹ n⁻¹ m n`.
    pub fn commutator_subgroup(&self, m: &BTreeSet<usize>, n: &BTreeSet<usize>) -> BTreeSet<usize> {
        let gens = m
            .iter()
            .flat_map(|&a| n.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)))
            .collect();
        self.generated_subgroup(&gens)
    }

    /// The left cosets of `k`, sorted.
    pub fn cosets(&self, k: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in self.group.elements() {
            let mut coset: Vec<usize> = k.iter().map(|&y| self.mul(x, y)).collect();
            coset.sort_unstable();
            if !out.contains(&coset) {
                out.push(coset);
            }
        }
        out.sort();
        out
    }
}

/// The blocks of `[R, S]` for congruences of a group.
pub fn group_commutator_blocks(group: &Algebra, r: &Congruence, s: &Congruence) -> Result<Vec<Vec<usize>>> {
    let t = GroupTables::new(group)?;
    let k = t.commutator_subgroup(&t.normal_subgroup(r), &t.normal_subgroup(s));
    Ok(t.cosets(&k))
}
