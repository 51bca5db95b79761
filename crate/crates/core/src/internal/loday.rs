//! One-sorted presentations: a groupoid as its algebra of arrows with the
//! unary operations `s = e d` and `t = e c`; a double groupoid as its
//! algebra of squares with `s, t` (horizontal) and `u, v` (vertical).

use std::sync::Arc;

use super::double::{check_double_groupoid, DoubleFunctor, DoubleGroupoid, DoubleReflexiveGraph};
use super::graph::{groupoid_structure, GraphMorphism, Groupoid, ReflexiveGraph};
use crate::algebra::{image_factorization, is_homomorphism, Algebra, Homomorphism};
use crate::congruence::{kernel_pair, tc_commutator, Congruence};
use crate::error::{Error, Result};

pub const HORIZONTAL_OPS: [&str; 2] = ["s", "t"];
pub const DOUBLE_OPS: [&str; 4] = ["s", "t", "u", "v"];

/// An algebra over a base signature extended by reserved unary operations.
#[derive(Clone, Debug)]
pub struct LodayAlgebra {
    algebra: Arc<Algebra>,
}

impl LodayAlgebra {
    pub fn new(algebra: Arc<Algebra>) -> Result<Self> {
        for op in HORIZONTAL_OPS {
            unary_index(&algebra, op)?;
        }
        Ok(LodayAlgebra { algebra })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn is_double(&self) -> bool {
        ["u", "v"].iter().all(|op| unary_index(&self.algebra, op).is_ok())
    }

    /// The algebra without the reserved operations.
    pub fn base(&self) -> Result<Arc<Algebra>> {
        self.algebra.reduct(self.algebra.name(), &DOUBLE_OPS)
    }

    /// Values of a reserved operation as a plain map.
    pub fn op(&self, name: &str) -> Result<Vec<usize>> {
        let index = unary_index(&self.algebra, name)?;
        Ok(self.algebra.table(index).to_vec())
    }
}

fn unary_index(a: &Algebra, name: &str) -> Result<usize> {
    let index = a
        .signature()
        .index_of(name)
        .ok_or_else(|| Error::MissingOperation(name.to_string()))?;
    if a.signature().ops()[index].arity != 1 {
        return Err(Error::Malformed(format!("operation `{name}` must be unary")));
    }
    Ok(index)
}

fn adjoin(base: &Arc<Algebra>, name: &str, ops: &[(&str, &Homomorphism)]) -> Result<Arc<Algebra>> {
    let sig = base.signature().extended(ops.iter().map(|(n, _)| (*n, 1)))?;
    let mut tables = base.tables().to_vec();
    tables.extend(ops.iter().map(|(_, h)| h.map().to_vec()));
    base.with_operations(name, sig, tables)
}

/// Arrows with `s = e d` and `t = e c` adjoined.
pub fn loday_encode(g: &Groupoid) -> Result<LodayAlgebra> {
    let graph = g.graph();
    let s = graph.source_loop();
    let t = graph.target_loop();
    let algebra = adjoin(graph.arrows(), graph.arrows().name(), &[("s", &s), ("t", &t)])?;
    Ok(LodayAlgebra { algebra })
}

fn endo(base: &Arc<Algebra>, map: Vec<usize>, name: &str) -> Result<Homomorphism> {
    Homomorphism::new(base.clone(), base.clone(), map)
        .map_err(|_| Error::IdentityViolation(format!("{name} is not an endomorphism")))
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// `h` with its codomain cut down to the subalgebra behind `inclusion`.
fn corestrict(h: &Homomorphism, inclusion: &Homomorphism) -> Result<Homomorphism> {
    let mut position = vec![usize::MAX; inclusion.cod().size()];
    for (i, &y) in inclusion.map().iter().enumerate() {
        position[y] = i;
    }
    let map = h
        .map()
        .iter()
        .map(|&y| {
            let p = position[y];
            if p == usize::MAX {
                Err(Error::Construction("value outside the image subalgebra".into()))
            } else {
                Ok(p)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Homomorphism::new(h.dom().clone(), inclusion.dom().clone(), map)
}

fn require_identity(lhs: &[usize], rhs: &[usize], name: &str) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::IdentityViolation(name.into()))
    }
}

fn require_trivial_commutator(base: &Arc<Algebra>, s: &Homomorphism, t: &Homomorphism, name: &str) -> Result<()> {
    if tc_commutator(base, &kernel_pair(s), &kernel_pair(t))?.is_identity() {
        Ok(())
    } else {
        Err(Error::NontrivialCommutator(name.into()))
    }
}

/// Objects as the image of `s`, with `d`, `c` the corestrictions of `s`, `t`.
pub fn loday_decode(l: &LodayAlgebra) -> Result<Groupoid> {
    let base = l.base()?;
    let s = endo(&base, l.op("s")?, "s")?;
    let t = endo(&base, l.op("t")?, "t")?;
    require_identity(&compose(s.map(), t.map()), t.map(), "st = t")?;
    require_identity(&compose(t.map(), s.map()), s.map(), "ts = s")?;
    require_trivial_commutator(&base, &s, &t, "[Eq(s), Eq(t)]")?;
    let graph = graph_from_loops(&base, &s, &t, &format!("{}_0", base.name()))?;
    groupoid_structure(&graph)?.ok_or_else(|| Error::NoGroupoidStructure(base.name().to_string()))
}

fn graph_from_loops(base: &Arc<Algebra>, s: &Homomorphism, t: &Homomorphism, name: &str) -> Result<ReflexiveGraph> {
    let (_, inclusion) = image_factorization(s)?;
    let objects = inclusion.dom().renamed(name);
    let inclusion = inclusion.retarget(&objects, base)?;
    let d = corestrict(s, &inclusion)?;
    let c = corestrict(t, &inclusion)?;
    ReflexiveGraph::new(d, c, inclusion)
}

/// Squares with `s, t` from the top row and `u, v` from the left column.
pub fn loday_encode_double(dg: &DoubleGroupoid) -> Result<LodayAlgebra> {
    loday_encode_double_graph(dg.graph())
}

/// Same as [`loday_encode_double`] for a double reflexive graph that need
/// not carry any groupoid structure.
pub fn loday_encode_double_graph(g: &DoubleReflexiveGraph) -> Result<LodayAlgebra> {
    let top = g.top_row();
    let left = g.left_column();
    let (s, t) = (top.source_loop(), top.target_loop());
    let (u, v) = (left.source_loop(), left.target_loop());
    let c11 = g.corner(super::Corner::C11);
    let algebra = adjoin(c11, c11.name(), &[("s", &s), ("t", &t), ("u", &u), ("v", &v)])?;
    Ok(LodayAlgebra { algebra })
}

/// Outcome of each check of the double presentation, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub checks: Vec<(String, bool)>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !*ok)
            .map(|(name, _)| name.as_str())
            .collect()
    }
}

/// Checks that `s, t, u, v` are endomorphisms, the eight identities
/// relating them, and triviality of `[Eq(s), Eq(t)]` and `[Eq(u), Eq(v)]`.
pub fn check_variety_presentation(l: &LodayAlgebra) -> Result<PresentationReport> {
    let base = l.base()?;
    let mut ops = Vec::with_capacity(4);
    for name in DOUBLE_OPS {
        ops.push(l.op(name)?);
    }
    let mut checks = Vec::new();
    for (name, map) in DOUBLE_OPS.iter().zip(&ops) {
        checks.push((
            format!("{name} is an endomorphism"),
            is_homomorphism(map, &base, &base)?,
        ));
    }
    let [s, t, u, v] = [&ops[0], &ops[1], &ops[2], &ops[3]];
    let identities = [
        ("st = t", compose(s, t), t.clone()),
        ("ts = s", compose(t, s), s.clone()),
        ("uv = v", compose(u, v), v.clone()),
        ("vu = u", compose(v, u), u.clone()),
        ("su = us", compose(s, u), compose(u, s)),
        ("sv = vs", compose(s, v), compose(v, s)),
        ("tu = ut", compose(t, u), compose(u, t)),
        ("tv = vt", compose(t, v), compose(v, t)),
    ];
    for (name, lhs, rhs) in identities {
        checks.push((name.to_string(), lhs == rhs));
    }
    for (name, a, b) in [("[Eq(s), Eq(t)] = 0", s, t), ("[Eq(u), Eq(v)] = 0", u, v)] {
        let trivial = tc_commutator(
            &base,
            &Congruence::from_labels_unchecked(&base, a),
            &Congruence::from_labels_unchecked(&base, b),
        )?
        .is_identity();
        checks.push((name.to_string(), trivial));
    }
    Ok(PresentationReport { checks })
}

/// `u = us = ut` and `v = vs = vt`, pointwise.
pub fn check_two_groupoid_identities(l: &LodayAlgebra) -> Result<bool> {
    let (s, t, u, v) = (l.op("s")?, l.op("t")?, l.op("u")?, l.op("v")?);
    Ok(compose(&u, &s) == u && compose(&u, &t) == u && compose(&v, &s) == v && compose(&v, &t) == v)
}

/// Rebuilds the double groupoid: `C10 = im s`, `C01 = im u`, `C00 = im su`.
pub fn loday_decode_double(l: &LodayAlgebra) -> Result<DoubleGroupoid> {
    let report = check_variety_presentation(l)?;
    if let Some(first) = report.failures().first() {
        return Err(if first.starts_with('[') {
            Error::NontrivialCommutator(first.to_string())
        } else {
            Error::IdentityViolation(first.to_string())
        });
    }
    let base = l.base()?;
    let s = endo(&base, l.op("s")?, "s")?;
    let t = endo(&base, l.op("t")?, "t")?;
    let u = endo(&base, l.op("u")?, "u")?;
    let v = endo(&base, l.op("v")?, "v")?;
    let name = base.name().to_string();
    let top = graph_from_loops(&base, &s, &t, &format!("{name}_10"))?;
    let left = graph_from_loops(&base, &u, &v, &format!("{name}_01"))?;
    let su = s.after(&u)?;
    let (_, inc00) = image_factorization(&su)?;
    let c00 = inc00.dom().renamed(format!("{name}_00"));
    let inc00 = inc00.retarget(&c00, &base)?;
    let (c10, c01) = (top.objects(), left.objects());
    // restrictions of s, t, u, v to the subalgebras through their inclusions
    let restrict = |h: &Homomorphism, from: &Homomorphism, onto: &Homomorphism| -> Result<Homomorphism> {
        corestrict(&h.after(from)?, onto)
    };
    let inc10 = top.identity();
    let inc01 = left.identity();
    let into10 = Homomorphism::new(c00.clone(), c10.clone(), restrict_inclusion(&inc00, inc10)?)?;
    let into01 = Homomorphism::new(c00.clone(), c01.clone(), restrict_inclusion(&inc00, inc01)?)?;
    let maps = [
        top.source().clone(),
        top.target().clone(),
        top.identity().clone(),
        restrict(&s, inc01, &inc00)?,
        restrict(&t, inc01, &inc00)?,
        into01,
        left.source().clone(),
        left.target().clone(),
        left.identity().clone(),
        restrict(&u, inc10, &inc00)?,
        restrict(&v, inc10, &inc00)?,
        into10,
    ];
    let graph = DoubleReflexiveGraph::new(name.clone(), maps)?;
    check_double_groupoid(&graph)?.ok_or(Error::NoGroupoidStructure(name))
}

/// The map `A -> B` with `inc_b ∘ result = inc_a`, for nested subalgebras.
fn restrict_inclusion(inc_a: &Homomorphism, inc_b: &Homomorphism) -> Result<Vec<usize>> {
    inc_a
        .map()
        .iter()
        .map(|y| {
            inc_b
                .map()
                .iter()
                .position(|z| z == y)
                .ok_or_else(|| Error::Construction("subalgebras are not nested".into()))
        })
        .collect()
}

/// The comparison `G -> decode(encode(G))`: identity on arrows, `e` on
/// objects.
pub fn groupoid_round_trip(g: &Groupoid) -> Result<(Groupoid, GraphMorphism)> {
    let back = loday_decode(&loday_encode(g)?)?;
    let arrows = Homomorphism::new(
        g.graph().arrows().clone(),
        back.graph().arrows().clone(),
        g.graph().arrows().elements().collect(),
    )?;
    let objects = Homomorphism::new(
        g.graph().objects().clone(),
        back.graph().objects().clone(),
        restrict_inclusion(g.graph().identity(), back.graph().identity())?,
    )?;
    let phi = GraphMorphism::new(g.graph(), back.graph(), arrows, objects)?;
    Ok((back, phi))
}

/// The comparison `D -> decode(encode(D))`: identity on squares and the
/// identity-square inclusions on the other corners.
pub fn double_round_trip(dg: &Arc<DoubleGroupoid>) -> Result<(Arc<DoubleGroupoid>, DoubleFunctor)> {
    let back = Arc::new(loday_decode_double(&loday_encode_double(dg)?)?);
    let (g, h) = (dg.graph(), back.graph());
    let ev1_eh0 = g.ev1().after(g.eh0())?;
    let h_ev1_eh0 = h.ev1().after(h.eh0())?;
    let comps = [
        Homomorphism::new(
            g.corner(super::Corner::C11).clone(),
            h.corner(super::Corner::C11).clone(),
            g.corner(super::Corner::C11).elements().collect(),
        )?,
        Homomorphism::new(
            g.corner(super::Corner::C10).clone(),
            h.corner(super::Corner::C10).clone(),
            restrict_inclusion(g.eh1(), h.eh1())?,
        )?,
        Homomorphism::new(
            g.corner(super::Corner::C01).clone(),
            h.corner(super::Corner::C01).clone(),
            restrict_inclusion(g.ev1(), h.ev1())?,
        )?,
        Homomorphism::new(
            g.corner(super::Corner::C00).clone(),
            h.corner(super::Corner::C00).clone(),
            restrict_inclusion(&ev1_eh0, &h_ev1_eh0)?,
        )?,
    ];
    let phi = DoubleFunctor::new(dg, &back, comps)?;
    Ok((back, phi))
}
