//! The reflection of double groupoids onto 2-groupoids and the coreflection
//! onto the same subcategory.
//!
//! The reflection collapses the bottom row by a coequalizer and then pushes
//! the two columns forward along the collapse. The coreflection keeps the
//! right column and cuts the squares down to those whose vertical edges are
//! identities of the bottom row.

use std::sync::Arc;

use crate::algebra::{descend, product, pullback, Homomorphism, ProductSpace};
use crate::congruence::{all_congruences, coequalizer, pushout_named, quotient_named, split_pushout_retraction};
use crate::error::{Error, Result};
use crate::internal::{
    check_double_groupoid, double_functors, is_two_groupoid, loday_decode_double, loday_encode_double, Corner,
    DoubleFunctor, DoubleGroupoid, DoubleReflexiveGraph, Levelwise, LodayAlgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Re-validate every induced map and the assembled result.
    pub paranoid: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { paranoid: true }
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub two_groupoid: Arc<DoubleGroupoid>,
    /// Surjective at every corner.
    pub unit: DoubleFunctor,
}

fn construction(what: &str) -> Error {
    Error::Construction(what.to_string())
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(construction(what))
    }
}

pub fn reflect(dg: &Arc<DoubleGroupoid>) -> Result<ReflectionResult> {
    reflect_with(dg, Options::default())
}

pub fn reflect_with(dg: &Arc<DoubleGroupoid>, options: Options) -> Result<ReflectionResult> {
    let g = dg.graph();
    let name = dg.name();

    let coeq = coequalizer(g.dh0(), g.ch0())?;
    let f00 = coeq.quotient.renamed(format!("{name}_F00"));
    let eta00 = coeq.projection.retarget(g.corner(Corner::C00), &f00)?;
    let eta01 = eta00.after(g.dh0())?;
    check(eta01 == eta00.after(g.ch0())?, "unit at C01 is not well defined")?;

    let right = pushout_named(&eta00, g.ev0(), &format!("{name}_F10"))?;
    let (eta10, eps0) = (right.from_target.clone(), right.from_codomain.clone());
    let delta0 = split_pushout_retraction(&right, g.dv0())?;
    let gamma0 = split_pushout_retraction(&right, g.cv0())?;

    let left = pushout_named(&eta01, g.ev1(), &format!("{name}_F11"))?;
    let (eta11, eps1) = (left.from_target.clone(), left.from_codomain.clone());

    let delta_top = descend(&eta11, &eta10.after(g.dh1())?)?;
    let gamma_top = descend(&eta11, &eta10.after(g.ch1())?)?;
    let eps_top = descend(&eta10, &eta11.after(g.eh1())?)?;
    check(
        delta_top.after(&eps1)? == eps0,
        "top source does not restrict to identities",
    )?;
    check(
        gamma_top.after(&eps1)? == eps0,
        "top target does not restrict to identities",
    )?;
    check(
        eps_top.after(&eps0)? == eps1,
        "top identity does not restrict to identities",
    )?;

    let delta1 = delta0.after(&delta_top)?;
    let gamma1 = gamma0.after(&gamma_top)?;
    if options.paranoid {
        check(
            delta1 == split_pushout_retraction(&left, &g.dv1().clone())?,
            "left source disagrees with its retraction",
        )?;
        check(
            gamma1 == split_pushout_retraction(&left, &g.cv1().clone())?,
            "left target disagrees with its retraction",
        )?;
    }

    let id00 = Homomorphism::identity(&f00);
    let maps = [
        delta_top,
        gamma_top,
        eps_top,
        id00.clone(),
        id00.clone(),
        id00,
        delta1,
        gamma1,
        eps1,
        delta0,
        gamma0,
        eps0,
    ];
    let graph = DoubleReflexiveGraph::new(format!("F_{name}"), maps)?;
    let reflected =
        check_double_groupoid(&graph)?.ok_or_else(|| construction("reflection is not a double groupoid"))?;
    check(is_two_groupoid(&reflected), "reflection is not a 2-groupoid")?;
    let reflected = Arc::new(reflected);
    let unit = DoubleFunctor::new(dg, &reflected, [eta11, eta10, eta01, eta00])?;
    if options.paranoid {
        check(unit.is_regular_epi(), "unit is not surjective")?;
    }
    Ok(ReflectionResult {
        two_groupoid: reflected,
        unit,
    })
}

/// The double functor `g` with `g ∘ epi = h`, computed corner by corner.
fn descend_functor(epi: &DoubleFunctor, h: &DoubleFunctor) -> Result<DoubleFunctor> {
    let mut comps = Vec::with_capacity(4);
    for c in Corner::ALL {
        comps.push(descend(epi.component(c), h.component(c))?);
    }
    DoubleFunctor::new(epi.cod(), h.cod(), comps.try_into().expect("four corners"))
}

/// `F(f) : F(C) -> F(D)` with `F(f) ∘ unit_C = unit_D ∘ f`.
pub fn reflect_morphism(f: &DoubleFunctor, from: &ReflectionResult, to: &ReflectionResult) -> Result<DoubleFunctor> {
    descend_functor(&from.unit, &to.unit.after(f)?)
}

/// The unique `g : F(C) -> D` with `g ∘ unit = f`, for a 2-groupoid `D`.
pub fn factor_through_unit(f: &DoubleFunctor, r: &ReflectionResult) -> Result<DoubleFunctor> {
    if !is_two_groupoid(f.cod()) {
        return Err(Error::Precondition(format!("`{}` is not a 2-groupoid", f.cod().name())));
    }
    descend_functor(&r.unit, f)
}

/// For a levelwise surjective or levelwise injective `f` out of a
/// 2-groupoid, whether its codomain (resp. domain) is again a 2-groupoid.
pub fn verify_birkhoff_closure(f: &DoubleFunctor) -> Result<bool> {
    if f.is_regular_epi() {
        if !is_two_groupoid(f.dom()) {
            return Err(Error::Precondition(format!("`{}` is not a 2-groupoid", f.dom().name())));
        }
        Ok(is_two_groupoid(f.cod()))
    } else if f.is_levelwise_mono() {
        if !is_two_groupoid(f.cod()) {
            return Err(Error::Precondition(format!("`{}` is not a 2-groupoid", f.cod().name())));
        }
        Ok(is_two_groupoid(f.dom()))
    } else {
        Err(Error::Precondition(
            "neither levelwise surjective nor levelwise injective".into(),
        ))
    }
}

/// Inclusions of the corners into the squares of `dg`.
fn corner_inclusions(dg: &DoubleReflexiveGraph) -> Result<[Homomorphism; 4]> {
    Ok([
        Homomorphism::identity(dg.corner(Corner::C11)),
        dg.eh1().clone(),
        dg.ev1().clone(),
        dg.ev1().after(dg.eh0())?,
    ])
}

/// The double functor `dom -> cod` whose square component is `squares`,
/// with the other corners obtained by restriction.
fn functor_from_squares(
    dom: &Arc<DoubleGroupoid>,
    cod: &Arc<DoubleGroupoid>,
    squares: &Homomorphism,
) -> Result<DoubleFunctor> {
    let from = corner_inclusions(dom.graph())?;
    let to = corner_inclusions(cod.graph())?;
    let mut comps = Vec::with_capacity(4);
    for (i, c) in Corner::ALL.into_iter().enumerate() {
        let through = squares.after(&from[i])?;
        let map = through
            .map()
            .iter()
            .map(|y| {
                to[i]
                    .map()
                    .iter()
                    .position(|z| z == y)
                    .ok_or_else(|| construction("square map does not preserve a corner"))
            })
            .collect::<Result<Vec<_>>>()?;
        comps.push(Homomorphism::new(dom.corner(c).clone(), cod.corner(c).clone(), map)?);
    }
    DoubleFunctor::new(dom, cod, comps.try_into().expect("four corners"))
}

/// Every quotient of `dg` by a congruence of its algebra of squares, with
/// the quotient functor.
pub fn regular_quotients(dg: &Arc<DoubleGroupoid>) -> Result<Vec<(Arc<DoubleGroupoid>, DoubleFunctor)>> {
    let l = loday_encode_double(dg)?;
    let mut out = Vec::new();
    for (k, theta) in all_congruences(l.algebra())?.iter().enumerate() {
        let (q, proj) = quotient_named(theta, &format!("{}_q{k}", dg.name()))?;
        let decoded = Arc::new(loday_decode_double(&LodayAlgebra::new(q)?)?);
        let base = decoded.corner(Corner::C11).clone();
        let squares = Homomorphism::new(dg.corner(Corner::C11).clone(), base, proj.map().to_vec())?;
        out.push((decoded.clone(), functor_from_squares(dg, &decoded, &squares)?));
    }
    Ok(out)
}

/// Every sub-double-groupoid of `dg`, with its inclusion.
pub fn subobjects(dg: &Arc<DoubleGroupoid>) -> Result<Vec<(Arc<DoubleGroupoid>, DoubleFunctor)>> {
    let l = loday_encode_double(dg)?;
    let space = ProductSpace::new(vec![l.algebra().clone()])?;
    let mut out = Vec::new();
    for (k, sub) in crate::algebra::all_subuniverses(l.algebra())?.iter().enumerate() {
        let (alg, proj) = space.subalgebra(&format!("{}_s{k}", dg.name()), sub)?;
        let decoded = Arc::new(loday_decode_double(&LodayAlgebra::new(alg)?)?);
        let base = decoded.corner(Corner::C11).clone();
        let inclusion = Homomorphism::new(base, dg.corner(Corner::C11).clone(), proj[0].map().to_vec())?;
        out.push((decoded.clone(), functor_from_squares(&decoded, dg, &inclusion)?));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CoreflectionResult {
    pub two_groupoid: Arc<DoubleGroupoid>,
    /// Injective at every corner.
    pub counit: DoubleFunctor,
}

pub fn coreflect(dg: &Arc<DoubleGroupoid>) -> Result<CoreflectionResult> {
    coreflect_with(dg, Options::default())
}

pub fn coreflect_with(dg: &Arc<DoubleGroupoid>, options: Options) -> Result<CoreflectionResult> {
    let g = dg.graph();
    let name = dg.name();
    let (c11, c10, c01, c00) = (
        g.corner(Corner::C11),
        g.corner(Corner::C10),
        g.corner(Corner::C01),
        g.corner(Corner::C00),
    );
    let edges = product(c01, c01)?;
    let ends = product(c00, c00)?;
    let boundary = edges.pair(g.dv1(), g.cv1())?;
    let lifted = ends.cross(g.eh0(), g.eh0(), &edges)?;
    let joint = pullback(&boundary, &lifted)?;
    let g11 = joint.algebra.renamed(format!("{name}_G11"));
    let eps11 = joint.first.retarget(&g11, c11)?;
    let ends_of = joint.second.retarget(&g11, &ends.algebra)?;

    let delta1 = ends.first.after(&ends_of)?;
    let gamma1 = ends.second.after(&ends_of)?;
    let id00 = Homomorphism::identity(c00);
    let diagonal = ends.pair(&id00, &id00)?;
    let eps1 = joint.induce(&g.ev1().after(g.eh0())?, &diagonal)?.retarget(c00, &g11)?;
    let eps_top = joint
        .induce(g.eh1(), &ends.pair(g.dv0(), g.cv0())?)?
        .retarget(c10, &g11)?;
    let delta_top = g.dh1().after(&eps11)?;
    let gamma_top = g.ch1().after(&eps11)?;

    let maps = [
        delta_top,
        gamma_top,
        eps_top,
        id00.clone(),
        id00.clone(),
        id00.clone(),
        delta1,
        gamma1,
        eps1,
        g.dv0().clone(),
        g.cv0().clone(),
        g.ev0().clone(),
    ];
    let graph = DoubleReflexiveGraph::new(format!("G_{name}"), maps)?;
    let core = check_double_groupoid(&graph)?.ok_or_else(|| construction("coreflection is not a double groupoid"))?;
    check(is_two_groupoid(&core), "coreflection is not a 2-groupoid")?;
    let core = Arc::new(core);
    let counit = DoubleFunctor::new(&core, dg, [eps11, Homomorphism::identity(c10), g.eh0().clone(), id00])?;
    if options.paranoid {
        check(counit.is_levelwise_mono(), "counit is not injective")?;
        check(c01.size() >= c00.size(), "bottom identities are not injective")?;
    }
    Ok(CoreflectionResult {
        two_groupoid: core,
        counit,
    })
}

/// The unique `g : X -> G(C)` with `counit ∘ g = f`, for a 2-groupoid `X`.
pub fn factor_through_counit(f: &DoubleFunctor, r: &CoreflectionResult) -> Result<DoubleFunctor> {
    let x = f.dom();
    if !is_two_groupoid(x) {
        return Err(Error::Precondition(format!("`{}` is not a 2-groupoid", x.name())));
    }
    let core = &r.two_groupoid;
    let counit = &r.counit;
    let mut comps = Vec::with_capacity(4);
    for c in Corner::ALL {
        comps.push(invert_on_image(counit.component(c), f.component(c))?);
    }
    let g = DoubleFunctor::new(x, core, comps.try_into().expect("four corners"))?;
    check(counit.after(&g)?.same_maps(f), "factorization does not compose back")?;
    Ok(g)
}

/// The map `u` with `mono ∘ u = h`; fails if `h` leaves the image of `mono`.
fn invert_on_image(mono: &Homomorphism, h: &Homomorphism) -> Result<Homomorphism> {
    let mut preimage = vec![usize::MAX; mono.cod().size()];
    for (x, &y) in mono.map().iter().enumerate() {
        preimage[y] = x;
    }
    let map = h
        .map()
        .iter()
        .map(|&y| match preimage[y] {
            usize::MAX => Err(construction("map escapes the joint pullback")),
            x => Ok(x),
        })
        .collect::<Result<Vec<_>>>()?;
    Homomorphism::new(h.dom().clone(), mono.dom().clone(), map)
}

/// Sizes of the two hom-sets compared by an adjunction and whether the
/// comparison map between them is a bijection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub through_universal: usize,
    pub direct: usize,
    pub bijective: bool,
}

/// Compares double functors `F(C) -> D` with double functors `C -> D` via
/// precomposition with the unit.
pub fn unit_bijection(r: &ReflectionResult, d: &Arc<DoubleGroupoid>) -> Result<BijectionReport> {
    let through = double_functors(&r.two_groupoid, d)?;
    let direct = double_functors(r.unit.dom(), d)?;
    let mut images: Vec<DoubleFunctor> = Vec::new();
    for g in &through {
        images.push(g.after(&r.unit)?);
    }
    Ok(BijectionReport {
        through_universal: through.len(),
        direct: direct.len(),
        bijective: matches_exactly(&images, &direct),
    })
}

/// Compares double functors `X -> G(C)` with double functors `X -> C` via
/// postcomposition with the counit.
pub fn counit_bijection(r: &CoreflectionResult, x: &Arc<DoubleGroupoid>) -> Result<BijectionReport> {
    let through = double_functors(x, &r.two_groupoid)?;
    let direct = double_functors(x, r.counit.cod())?;
    let mut images: Vec<DoubleFunctor> = Vec::new();
    for g in &through {
        images.push(r.counit.after(g)?);
    }
    Ok(BijectionReport {
        through_universal: through.len(),
        direct: direct.len(),
        bijective: matches_exactly(&images, &direct),
    })
}

/// `images` has no repeats and is the same set as `all`.
fn matches_exactly(images: &[DoubleFunctor], all: &[DoubleFunctor]) -> bool {
    let distinct = images
        .iter()
        .enumerate()
        .all(|(i, a)| images[..i].iter().all(|b| !a.same_maps(b)));
    distinct && images.len() == all.len() && all.iter().all(|f| images.iter().any(|g| g.same_maps(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn double(g: DoubleReflexiveGraph) -> Arc<DoubleGroupoid> {
        Arc::new(check_double_groupoid(&g).unwrap().unwrap())
    }

    #[test]
    fn worked_example_collapses() {
        let g = corpus::groupoid_from_hom(2, 2, 1).unwrap();
        let v = double(DoubleReflexiveGraph::vertically_discrete(&g));
        let r = reflect(&v).unwrap();
        assert_eq!(r.two_groupoid.graph().corner_sizes(), [1, 1, 1, 1]);
        let c = coreflect(&v).unwrap();
        assert_eq!(c.two_groupoid.graph().corner_sizes(), [2, 2, 2, 2]);
        assert!(c.two_groupoid.top().graph().is_discrete());
        assert!(c.two_groupoid.left().graph().is_discrete());
    }

    #[test]
    fn two_groupoids_are_fixed() {
        let g = corpus::groupoid_from_hom(2, 4, 2).unwrap();
        let h = double(DoubleReflexiveGraph::horizontally_discrete(&g));
        let r = reflect(&h).unwrap();
        assert!(r.unit.is_levelwise_iso());
        let c = coreflect(&h).unwrap();
        assert!(c.counit.is_levelwise_iso());
        let f = factor_through_unit(&DoubleFunctor::identity(&h), &r).unwrap();
        assert!(f.after(&r.unit).unwrap().same_maps(&DoubleFunctor::identity(&h)));
    }

    #[test]
    fn discrete_rows_reflect_to_themselves() {
        let z4 = corpus::cyclic_group(4);
        let v = double(DoubleReflexiveGraph::vertically_discrete(
            &crate::internal::ReflexiveGraph::discrete(&z4),
        ));
        assert!(reflect(&v).unwrap().unit.is_levelwise_iso());
    }

    #[test]
    fn unit_factorizations() {
        let g = corpus::groupoid_from_hom(2, 2, 1).unwrap();
        let v = double(DoubleReflexiveGraph::vertically_discrete(&g));
        let r = reflect(&v).unwrap();
        let g = factor_through_unit(&r.unit, &r).unwrap();
        assert!(g.same_maps(&DoubleFunctor::identity(&r.two_groupoid)));
        let point = double(DoubleReflexiveGraph::discrete(&corpus::trivial_group()));
        let report = unit_bijection(&r, &point).unwrap();
        assert_eq!((report.through_universal, report.direct), (1, 1));
        assert!(report.bijective);
    }

    #[test]
    fn birkhoff_closure_on_a_small_two_groupoid() {
        let h = double(DoubleReflexiveGraph::horizontally_discrete(
            &corpus::groupoid_from_hom(2, 2, 1).unwrap(),
        ));
        let quotients = regular_quotients(&h).unwrap();
        assert!(quotients.len() >= 2);
        for (_, q) in &quotients {
            assert!(verify_birkhoff_closure(q).unwrap());
        }
        for (_, s) in &subobjects(&h).unwrap() {
            assert!(verify_birkhoff_closure(s).unwrap());
        }
    }
}
