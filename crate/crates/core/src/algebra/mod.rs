//! Finite algebras over a finitary signature.
//!
//! A carrier is the index range `0..size`. Each operation of arity `n` is a
//! flat table of length `size^n`, indexed row-major with the first argument
//! most significant. Every algebra carries a designated Mal'tsev term that
//! has been checked against its tables.

mod hom;
mod product;
mod search;
mod term;
pub(crate) mod tuples;

use std::fmt;
use std::sync::Arc;

pub use hom::{descend, image_factorization, is_homomorphism, Homomorphism};
pub use product::{is_pullback_square, product, pullback, subalgebra_generated, Product, ProductSpace, Pullback};
pub use search::{all_subuniverses, find_isomorphism, homomorphisms, homomorphisms_extending, HomSearch};
pub use term::{check_maltsev_term, eval_term, CompiledTerm, Term};

use crate::error::{Error, Result};
use crate::limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols with pairwise distinct names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    ops: Vec<Operation>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out = Signature::default();
        for (name, arity) in ops {
            out.push(name.into(), arity)?;
        }
        Ok(out)
    }

    fn push(&mut self, name: String, arity: usize) -> Result<()> {
        if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == '(' || c == ')') {
            return Err(Error::Malformed(format!("invalid operation name `{name}`")));
        }
        if self.index_of(&name).is_some() {
            return Err(Error::Malformed(format!("duplicate operation `{name}`")));
        }
        self.ops.push(Operation { name, arity });
        Ok(())
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    /// This signature followed by `extra`.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out = self.clone();
        for (name, arity) in extra {
            out.push(name.into(), arity)?;
        }
        Ok(out)
    }

    /// This signature without the named operations.
    pub fn without(&self, names: &[&str]) -> Self {
        Signature {
            ops: self
                .ops
                .iter()
                .filter(|o| !names.contains(&o.name.as_str()))
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ops.iter().map(|o| format!("{}/{}", o.name, o.arity)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A finite algebra with a designated Mal'tsev term.
pub struct Algebra {
    name: String,
    size: usize,
    signature: Arc<Signature>,
    tables: Vec<Vec<usize>>,
    maltsev_term: Term,
    maltsev: CompiledTerm,
}

impl Algebra {
    /// Builds and validates an algebra: table shapes, entry ranges, and both
    /// Mal'tsev identities for `maltsev_term`.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        signature: Arc<Signature>,
        tables: Vec<Vec<usize>>,
        maltsev_term: Term,
    ) -> Result<Arc<Self>> {
        let alg = Self::build(name.into(), size, signature, tables, maltsev_term)?;
        if let Some((identity, x, y)) = term::maltsev_violation(&alg, &alg.maltsev) {
            return Err(Error::NotMaltsev { identity, x, y });
        }
        Ok(Arc::new(alg))
    }

    /// Like [`Algebra::new`] but without the Mal'tsev identity check. Used for
    /// products, quotients, and subalgebras, which inherit the identities.
    pub(crate) fn derived(
        name: impl Into<String>,
        size: usize,
        signature: Arc<Signature>,
        tables: Vec<Vec<usize>>,
        maltsev_term: Term,
    ) -> Result<Arc<Self>> {
        let alg = Self::build(name.into(), size, signature, tables, maltsev_term)?;
        debug_assert!(term::maltsev_violation(&alg, &alg.maltsev).is_none());
        Ok(Arc::new(alg))
    }

    fn build(
        name: String,
        size: usize,
        signature: Arc<Signature>,
        tables: Vec<Vec<usize>>,
        maltsev_term: Term,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Malformed(format!("algebra `{name}` has an empty carrier")));
        }
        limits::check_size(size)?;
        if tables.len() != signature.len() {
            return Err(Error::Malformed(format!(
                "algebra `{name}` has {} tables for {} operations",
                tables.len(),
                signature.len()
            )));
        }
        for (op, table) in signature.ops().iter().zip(&tables) {
            let expected = limits::table_len(size, op.arity)?;
            if table.len() != expected {
                return Err(Error::Malformed(format!(
                    "table of `{}` in `{name}` has {} entries, expected {expected}",
                    op.name,
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::IndexOutOfRange { index: bad, size });
            }
        }
        let maltsev = maltsev_term.compile(&signature, &term::MALTSEV_VARS)?;
        Ok(Algebra {
            name,
            size,
            signature,
            tables,
            maltsev_term,
            maltsev,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn maltsev_term(&self) -> &Term {
        &self.maltsev_term
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Value of operation number `op` at `args`.
    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.tables[op][idx]
    }

    pub fn apply_named(&self, op: &str, args: &[usize]) -> Result<usize> {
        let index = self
            .signature
            .index_of(op)
            .ok_or_else(|| Error::UnknownOperation(op.to_string()))?;
        let arity = self.signature.ops()[index].arity;
        if arity != args.len() {
            return Err(Error::ArityMismatch {
                op: op.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: self.size,
            });
        }
        Ok(self.apply(index, args))
    }

    /// The designated Mal'tsev operation `p(x, y, z)`.
    #[inline]
    pub fn maltsev(&self, x: usize, y: usize, z: usize) -> usize {
        self.maltsev.eval(self, &[x, y, z])
    }

    /// Same tables under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Arc<Algebra> {
        Arc::new(Algebra {
            name: name.into(),
            size: self.size,
            signature: self.signature.clone(),
            tables: self.tables.clone(),
            maltsev_term: self.maltsev_term.clone(),
            maltsev: self.maltsev.clone(),
        })
    }

    /// Same carrier and Mal'tsev term over a modified signature.
    pub(crate) fn with_operations(
        &self,
        name: impl Into<String>,
        signature: Signature,
        tables: Vec<Vec<usize>>,
    ) -> Result<Arc<Algebra>> {
        Algebra::derived(name, self.size, Arc::new(signature), tables, self.maltsev_term.clone())
    }

    /// The reduct keeping only operations not listed in `drop`.
    pub fn reduct(&self, name: impl Into<String>, drop: &[&str]) -> Result<Arc<Algebra>> {
        let sig = self.signature.without(drop);
        let tables = sig
            .ops()
            .iter()
            .map(|o| self.tables[self.signature.index_of(&o.name).unwrap()].clone())
            .collect();
        Algebra::derived(name, self.size, Arc::new(sig), tables, self.maltsev_term.clone())
    }

    pub fn same_signature(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature
    }

    pub(crate) fn require_same_signature(&self, other: &Algebra) -> Result<()> {
        if self.same_signature(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "`{}` has {} but `{}` has {}",
                self.name, self.signature, other.name, other.signature
            )))
        }
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size })
        }
    }
}

/// Structural equality: same carrier size, signature and tables. Names and
/// designated terms are ignored.
impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.size == other.size && self.same_signature(other) && self.tables == other.tables)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("size", &self.size)
            .field("signature", &self.signature.to_string())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::corpus;

    #[test]
    fn eval_term_examples() {
        let z4 = corpus::cyclic_affine(4);
        let t: Term = "(p x y z)".parse().unwrap();
        let env: HashMap<String, usize> = [("x", 1), ("y", 2), ("z", 3)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        // 1 - 2 + 3 = 2 (mod 4)
        assert_eq!(eval_term(&z4, &t, &env).unwrap(), 2);

        let x: Term = "x".parse().unwrap();
        for k in 0..4 {
            let env = HashMap::from([("x".to_string(), k)]);
            assert_eq!(eval_term(&z4, &x, &env).unwrap(), k);
        }

        let z2 = corpus::cyclic_group(2);
        let sq: Term = "(mul x x)".parse().unwrap();
        let env = HashMap::from([("x".to_string(), 1)]);
        assert_eq!(eval_term(&z2, &sq, &env).unwrap(), 0);
    }

    #[test]
    fn eval_term_errors() {
        let z2 = corpus::cyclic_group(2);
        let env = HashMap::from([("x".to_string(), 1)]);
        let unknown: Term = "(frob x)".parse().unwrap();
        assert!(matches!(
            eval_term(&z2, &unknown, &env),
            Err(Error::UnknownOperation(_))
        ));
        let unbound: Term = "(mul x y)".parse().unwrap();
        assert!(matches!(eval_term(&z2, &unbound, &env), Err(Error::UnboundVariable(_))));
    }

    #[test]
    fn maltsev_term_examples() {
        let z4 = corpus::cyclic_group(4);
        let affine: Term = "(mul (mul x (inv y)) z)".parse().unwrap();
        assert!(check_maltsev_term(&z4, &affine).unwrap());
        // p(0,1,1) = 2 != 0
        let sum: Term = "(mul (mul x y) z)".parse().unwrap();
        assert!(!check_maltsev_term(&z4, &sum).unwrap());
        let s3 = corpus::symmetric_group_3();
        assert!(check_maltsev_term(&s3, &affine).unwrap());
        let bad_arity: Term = "(mul x y z)".parse().unwrap();
        assert!(matches!(
            check_maltsev_term(&z4, &bad_arity),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn new_rejects_bad_tables_and_terms() {
        let sig = Arc::new(Signature::new([("mul", 2)]).unwrap());
        let term: Term = "(mul x (mul y z))".parse().unwrap();
        let short = Algebra::new("a", 2, sig.clone(), vec![vec![0, 1, 1]], term.clone());
        assert!(matches!(short, Err(Error::Malformed(_))));
        let range = Algebra::new("a", 2, sig.clone(), vec![vec![0, 1, 1, 2]], term.clone());
        assert!(matches!(range, Err(Error::IndexOutOfRange { .. })));
        // conjunction: p(1,0,0) = 0
        let and = Algebra::new("a", 2, sig, vec![vec![0, 0, 0, 1]], term);
        assert!(matches!(and, Err(Error::NotMaltsev { .. })));
    }

    #[test]
    fn signature_rules() {
        assert!(Signature::new([("a", 1), ("a", 2)]).is_err());
        assert!(Signature::new([("a b", 1)]).is_err());
        let sig = Signature::new([("mul", 2), ("inv", 1)]).unwrap();
        let ext = sig.extended([("s", 1)]).unwrap();
        assert_eq!(ext.len(), 3);
        assert_eq!(ext.without(&["s"]), sig);
    }
}
