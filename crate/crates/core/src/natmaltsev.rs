//! Checks that only make sense when the Mal'tsev term is itself a
//! homomorphism: pullback squares of pushouts along surjections, the
//! discrete-fibration property of the reflection unit, and the double
//! equivalence relation generated by two congruences.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::tuples::for_each_tuple;
use crate::algebra::{is_pullback_square, Algebra, Homomorphism, ProductSpace};
use crate::congruence::{
    coequalizer, kernel_pair, pushout_along_regular_epi, quotient_named, split_pushout_retraction, tc_commutator,
    Congruence,
};
use crate::error::{Error, Result};
use crate::internal::Corner;
use crate::reflection::ReflectionResult;

/// Evidence that the Mal'tsev term of `algebra` commutes with every basic
/// operation.
#[derive(Clone, Debug)]
pub struct AffineWitness {
    pub algebra: Arc<Algebra>,
    /// Number of (operation, argument matrix) instances checked.
    pub instances: usize,
}

/// The first instance at which the Mal'tsev term fails to commute with an
/// operation, described for a report.
pub fn affine_violation(a: &Algebra) -> Option<String> {
    let n = a.size();
    for (index, op) in a.signature().ops().iter().enumerate() {
        let mut found = None;
        let mut rows = [vec![0; op.arity], vec![0; op.arity], vec![0; op.arity]];
        for_each_tuple(3 * op.arity, n, |t| {
            for (k, row) in rows.iter_mut().enumerate() {
                row.copy_from_slice(&t[k * op.arity..(k + 1) * op.arity]);
            }
            let outer = a.maltsev(
                a.apply(index, &rows[0]),
                a.apply(index, &rows[1]),
                a.apply(index, &rows[2]),
            );
            let columns: Vec<usize> = (0..op.arity)
                .map(|i| a.maltsev(rows[0][i], rows[1][i], rows[2][i]))
                .collect();
            if outer != a.apply(index, &columns) {
                found = Some(format!("`{}` on {:?}", op.name, rows));
                return false;
            }
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn is_affine(a: &Arc<Algebra>) -> Option<AffineWitness> {
    if affine_violation(a).is_some() {
        return None;
    }
    let n = a.size();
    let instances = a
        .signature()
        .ops()
        .iter()
        .map(|op| n.saturating_pow(3 * op.arity as u32))
        .sum();
    Some(AffineWitness {
        algebra: a.clone(),
        instances,
    })
}

/// Whether the square
///
/// ```text
///   S ---f---> X
///   |          |
///   c          q
///   v          v
///   C --f_bar-> Y
/// ```
///
/// obtained from the pushout of `q` along the split mono `delta` is a
/// pullback.
pub fn check_square_pullback(q: &Homomorphism, delta: &Homomorphism, f: &Homomorphism) -> Result<bool> {
    if !q.is_surjective() {
        return Err(Error::NotSurjective(q.cod().name().to_string()));
    }
    let p = pushout_along_regular_epi(q, delta)?;
    let f_bar = split_pushout_retraction(&p, f)?;
    is_pullback_square(f, &p.from_target, q, &f_bar)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "N-A",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One verdict per named square, and an overall verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    pub squares: Vec<(String, Verdict)>,
    pub verdict: Verdict,
}

impl SquareReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, v) in &self.squares {
            out.push_str(&format!("{v} {name}\n"));
        }
        out.push_str(&format!("{} overall\n", self.verdict));
        out
    }
}

/// Whether the unit's squares over the vertical source and target maps are
/// pullbacks. Refuses (N-A) unless every corner of the input is affine.
pub fn unit_discrete_fibration_check(r: &ReflectionResult) -> Result<SquareReport> {
    let dom = r.unit.dom();
    let refused = Corner::ALL.iter().find(|&&c| is_affine(dom.corner(c)).is_none());
    if let Some(c) = refused {
        return Ok(SquareReport {
            squares: vec![(format!("corner {c} is not affine"), Verdict::NotApplicable)],
            verdict: Verdict::NotApplicable,
        });
    }
    let (g, f) = (dom.graph(), r.two_groupoid.graph());
    let eta = |c| r.unit.component(c);
    let squares = [
        ("dv0", g.dv0(), f.dv0(), Corner::C10, Corner::C00),
        ("cv0", g.cv0(), f.cv0(), Corner::C10, Corner::C00),
        ("dv1", g.dv1(), f.dv1(), Corner::C11, Corner::C01),
        ("cv1", g.cv1(), f.cv1(), Corner::C11, Corner::C01),
    ];
    let mut out = Vec::new();
    for (name, top, bottom, upper, lower) in squares {
        let ok = is_pullback_square(top, eta(upper), eta(lower), bottom)?;
        out.push((
            format!("unit over {name}"),
            if ok { Verdict::Pass } else { Verdict::Fail },
        ));
    }
    let verdict = if out.iter().all(|(_, v)| *v == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(SquareReport { squares: out, verdict })
}

/// A congruence as a subalgebra of `X × X`, with its projections and the
/// diagonal.
#[derive(Clone, Debug)]
pub struct RelationAlgebra {
    pub algebra: Arc<Algebra>,
    pub first: Homomorphism,
    pub second: Homomorphism,
    pub diagonal: Homomorphism,
    pairs: Vec<(usize, usize)>,
}

impl RelationAlgebra {
    pub fn new(theta: &Congruence, name: &str) -> Result<Self> {
        let x = theta.algebra();
        let space = ProductSpace::new(vec![x.clone(), x.clone()])?;
        let pairs: Vec<(usize, usize)> = x
            .elements()
            .flat_map(|a| x.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| theta.related(a, b))
            .collect();
        let codes: Vec<usize> = pairs.iter().map(|&(a, b)| space.encode(&[a, b])).collect();
        let (algebra, mut proj) = space.subalgebra(name, &codes)?;
        let second = proj.pop().expect("two projections");
        let first = proj.pop().expect("two projections");
        let mut rel = RelationAlgebra {
            diagonal: Homomorphism::identity(x),
            algebra,
            first,
            second,
            pairs,
        };
        let diag = x.elements().map(|a| rel.index_of(a, a).expect("reflexive")).collect();
        rel.diagonal = Homomorphism::new(x.clone(), rel.algebra.clone(), diag)?;
        Ok(rel)
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, b)).ok()
    }

    pub fn pair_at(&self, index: usize) -> (usize, usize) {
        self.pairs[index]
    }
}

/// The double equivalence relation generated by congruences `R`, `S` on `X`:
/// the kernel pair of the quotient of the relation algebra of `S` by the
/// identification of `R`-related diagonal elements.
#[derive(Clone, Debug)]
pub struct PedicchioDiagram {
    pub base: Arc<Algebra>,
    pub r: Congruence,
    pub s: Congruence,
    /// `X -> X/R`.
    pub q: Homomorphism,
    pub r_rel: RelationAlgebra,
    pub s_rel: RelationAlgebra,
    /// `S★ -> S/R`.
    pub c: Homomorphism,
    /// The kernel pair of `c`, with its projections `π1`, `π2` to `S★`.
    pub delta: RelationAlgebra,
    /// `Δ -> R★` on the first and second coordinates of the `S`-pairs.
    pub p1: Homomorphism,
    pub p2: Homomorphism,
    /// `R★ -> Δ`.
    pub delta_p: Homomorphism,
}

pub fn pedicchio_delta(x: &Arc<Algebra>, r: &Congruence, s: &Congruence) -> Result<PedicchioDiagram> {
    r.require_on(x)?;
    s.require_on(x)?;
    let (_, q) = quotient_named(r, &format!("{}/R", x.name()))?;
    let r_rel = RelationAlgebra::new(r, &format!("{}_R", x.name()))?;
    let s_rel = RelationAlgebra::new(s, &format!("{}_S", x.name()))?;
    let c = coequalizer(
        &s_rel.diagonal.after(&r_rel.first)?,
        &s_rel.diagonal.after(&r_rel.second)?,
    )?
    .projection;
    let delta = RelationAlgebra::new(&kernel_pair(&c), &format!("{}_Delta", x.name()))?;
    let coords = |k: usize| {
        let (u, v) = delta.pair_at(k);
        (s_rel.pair_at(u), s_rel.pair_at(v))
    };
    let mut p1 = Vec::with_capacity(delta.algebra.size());
    let mut p2 = Vec::with_capacity(delta.algebra.size());
    for k in delta.algebra.elements() {
        let ((a, b), (a2, b2)) = coords(k);
        let lift = |u, v| {
            r_rel
                .index_of(u, v)
                .ok_or_else(|| Error::Construction("kernel pair leaves R".into()))
        };
        p1.push(lift(a, a2)?);
        p2.push(lift(b, b2)?);
    }
    let p1 = Homomorphism::new(delta.algebra.clone(), r_rel.algebra.clone(), p1)?;
    let p2 = Homomorphism::new(delta.algebra.clone(), r_rel.algebra.clone(), p2)?;
    let mut delta_p = Vec::with_capacity(r_rel.algebra.size());
    for k in r_rel.algebra.elements() {
        let (a, a2) = r_rel.pair_at(k);
        let (u, v) = (s_rel.diagonal.at(a), s_rel.diagonal.at(a2));
        delta_p.push(
            delta
                .index_of(u, v)
                .ok_or_else(|| Error::Construction("R is not inside the kernel pair".into()))?,
        );
    }
    let delta_p = Homomorphism::new(r_rel.algebra.clone(), delta.algebra.clone(), delta_p)?;
    Ok(PedicchioDiagram {
        base: x.clone(),
        r: r.clone(),
        s: s.clone(),
        q,
        r_rel,
        s_rel,
        c,
        delta,
        p1,
        p2,
        delta_p,
    })
}

/// Whether the four squares `s_i ∘ π_j = r_j ∘ p_i` are pullbacks.
pub fn is_double_centralizing(d: &PedicchioDiagram) -> Result<bool> {
    let pi = [&d.delta.first, &d.delta.second];
    let p = [&d.p1, &d.p2];
    let s = [&d.s_rel.first, &d.s_rel.second];
    let r = [&d.r_rel.first, &d.r_rel.second];
    for i in 0..2 {
        for j in 0..2 {
            if !is_pullback_square(pi[j], p[i], s[i], r[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub centralizing: bool,
    pub commutator_trivial: bool,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.centralizing == self.commutator_trivial
    }

    /// The implication that is asserted: centralizing forces a trivial
    /// commutator.
    pub fn consistent(&self) -> bool {
        !self.centralizing || self.commutator_trivial
    }
}

pub fn commutator_cross_check(x: &Arc<Algebra>, r: &Congruence, s: &Congruence) -> Result<CrossCheck> {
    let centralizing = is_double_centralizing(&pedicchio_delta(x, r, s)?)?;
    let commutator_trivial = tc_commutator(x, r, s)?.is_identity();
    Ok(CrossCheck {
        centralizing,
        commutator_trivial,
    })
}
