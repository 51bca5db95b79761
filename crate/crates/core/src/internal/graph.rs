use std::sync::Arc;

use crate::algebra::{is_homomorphism, pullback, Algebra, HomSearch, Homomorphism, Pullback};
use crate::congruence::{kernel_pair, tc_commutator};
use crate::error::{Error, Result};

/// A parallel pair `source, target : arrows -> objects` with a common
/// section `identity`.
#[derive(Clone, Debug)]
pub struct ReflexiveGraph {
    source: Homomorphism,
    target: Homomorphism,
    identity: Homomorphism,
}

impl ReflexiveGraph {
    pub fn new(source: Homomorphism, target: Homomorphism, identity: Homomorphism) -> Result<Self> {
        check_endpoints(&source, &target, &identity)?;
        if !source.after(&identity)?.is_identity() {
            return Err(Error::NotReflexiveGraph("d e = 1".into()));
        }
        if !target.after(&identity)?.is_identity() {
            return Err(Error::NotReflexiveGraph("c e = 1".into()));
        }
        Ok(ReflexiveGraph {
            source,
            target,
            identity,
        })
    }

    pub(crate) fn from_parts(source: Homomorphism, target: Homomorphism, identity: Homomorphism) -> Self {
        debug_assert!(source.after(&identity).is_ok_and(|h| h.is_identity()));
        ReflexiveGraph {
            source,
            target,
            identity,
        }
    }

    /// All three maps are the identity of `a`.
    pub fn discrete(a: &Arc<Algebra>) -> Self {
        let id = Homomorphism::identity(a);
        ReflexiveGraph {
            source: id.clone(),
            target: id.clone(),
            identity: id,
        }
    }

    pub fn arrows(&self) -> &Arc<Algebra> {
        self.source.dom()
    }

    pub fn objects(&self) -> &Arc<Algebra> {
        self.source.cod()
    }

    pub fn source(&self) -> &Homomorphism {
        &self.source
    }

    pub fn target(&self) -> &Homomorphism {
        &self.target
    }

    pub fn identity(&self) -> &Homomorphism {
        &self.identity
    }

    /// `e d` and `e c` as endomorphisms of the arrows.
    pub fn source_loop(&self) -> Homomorphism {
        self.identity.after(&self.source).expect("endpoints checked")
    }

    pub fn target_loop(&self) -> Homomorphism {
        self.identity.after(&self.target).expect("endpoints checked")
    }

    pub fn is_discrete(&self) -> bool {
        self.identity.is_bijective()
    }

    /// Pairs `(f, g)` with `c f = d g`.
    pub fn composable(&self) -> Result<Pullback> {
        pullback(&self.target, &self.source)
    }
}

fn check_endpoints(d: &Homomorphism, c: &Homomorphism, e: &Homomorphism) -> Result<()> {
    if *d.dom() != *c.dom() || *d.cod() != *c.cod() || *e.dom() != *d.cod() || *e.cod() != *d.dom() {
        return Err(Error::Mismatch("reflexive graph maps do not share endpoints".into()));
    }
    Ok(())
}

/// Whether raw maps `d, c : arrows -> objects`, `e : objects -> arrows` are
/// homomorphisms with `d e = c e = 1`.
pub fn check_reflexive_graph(
    arrows: &Algebra,
    objects: &Algebra,
    d: &[usize],
    c: &[usize],
    e: &[usize],
) -> Result<bool> {
    if d.len() != arrows.size() || c.len() != arrows.size() || e.len() != objects.size() {
        return Err(Error::Mismatch("reflexive graph maps have the wrong lengths".into()));
    }
    if !is_homomorphism(d, arrows, objects)? || !is_homomorphism(c, arrows, objects)? {
        return Ok(false);
    }
    if !is_homomorphism(e, objects, arrows)? {
        return Ok(false);
    }
    Ok(objects.elements().all(|x| d[e[x]] == x && c[e[x]] == x))
}

/// A reflexive graph with a composition and inverse satisfying the
/// groupoid axioms. `compose(f, g)` is defined when `c f = d g`.
#[derive(Clone, Debug)]
pub struct Groupoid {
    graph: ReflexiveGraph,
    composable: Pullback,
    compose: Homomorphism,
    inverse: Homomorphism,
}

impl Groupoid {
    pub fn graph(&self) -> &ReflexiveGraph {
        &self.graph
    }

    pub fn composable(&self) -> &Pullback {
        &self.composable
    }

    pub fn composition(&self) -> &Homomorphism {
        &self.compose
    }

    pub fn inverse(&self) -> &Homomorphism {
        &self.inverse
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.composable.index_of(f, g).map(|k| self.compose.at(k))
    }
}

/// First groupoid axiom violated by `m` and `i`, if any.
fn groupoid_violation(g: &ReflexiveGraph, pb: &Pullback, m: &[usize], i: &[usize]) -> Option<String> {
    let (d, c, e) = (g.source(), g.target(), g.identity());
    let compose = |f: usize, h: usize| pb.index_of(f, h).map(|k| m[k]);
    for f in g.arrows().elements() {
        if compose(e.at(d.at(f)), f) != Some(f) {
            return Some(format!("m(e d f, f) = f fails at f = {f}"));
        }
        if compose(f, e.at(c.at(f))) != Some(f) {
            return Some(format!("m(f, e c f) = f fails at f = {f}"));
        }
        if compose(f, i[f]) != Some(e.at(d.at(f))) {
            return Some(format!("m(f, i f) = e d f fails at f = {f}"));
        }
        if compose(i[f], f) != Some(e.at(c.at(f))) {
            return Some(format!("m(i f, f) = e c f fails at f = {f}"));
        }
    }
    for (k, (f, h)) in pb.pairs().enumerate() {
        if d.at(m[k]) != d.at(f) || c.at(m[k]) != c.at(h) {
            return Some(format!("composite of ({f}, {h}) has the wrong endpoints"));
        }
    }
    for (f, h) in pb.pairs() {
        let fh = compose(f, h).expect("composable");
        for l in g.arrows().elements() {
            if c.at(h) != d.at(l) {
                continue;
            }
            let hl = compose(h, l).expect("composable");
            if compose(fh, l) != compose(f, hl) {
                return Some(format!("associativity fails at ({f}, {h}, {l})"));
            }
        }
    }
    None
}

fn assemble(g: &ReflexiveGraph, pb: &Pullback, m: Homomorphism, i: Vec<usize>) -> Result<Option<Groupoid>> {
    if !is_homomorphism(&i, g.arrows(), g.arrows())? {
        return Ok(None);
    }
    if groupoid_violation(g, pb, m.map(), &i).is_some() {
        return Ok(None);
    }
    Ok(Some(Groupoid {
        graph: g.clone(),
        composable: pb.clone(),
        compose: m,
        inverse: Homomorphism::new(g.arrows().clone(), g.arrows().clone(), i)?,
    }))
}

/// The groupoid structure on `g`, if there is one.
///
/// Returns `None` when `[Eq(e d), Eq(e c)]` is nontrivial. Otherwise tries
/// `m(f, g) = p(f, e c f, g)` and `i(f) = p(e d f, f, e c f)`, and if those
/// fail the axioms searches all compositions.
pub fn groupoid_structure(g: &ReflexiveGraph) -> Result<Option<Groupoid>> {
    let arrows = g.arrows();
    let commutator = tc_commutator(arrows, &kernel_pair(g.source()), &kernel_pair(g.target()))?;
    if !commutator.is_identity() {
        return Ok(None);
    }
    let pb = g.composable()?;
    let (c, e, d) = (g.target(), g.identity(), g.source());
    let m: Vec<usize> = pb.pairs().map(|(f, h)| arrows.maltsev(f, e.at(c.at(f)), h)).collect();
    let i: Vec<usize> = arrows
        .elements()
        .map(|f| arrows.maltsev(e.at(d.at(f)), f, e.at(c.at(f))))
        .collect();
    if let Ok(m) = Homomorphism::new(pb.algebra.clone(), arrows.clone(), m) {
        if let Some(found) = assemble(g, &pb, m, i)? {
            return Ok(Some(found));
        }
    }
    let mut all = all_groupoid_structures(g)?;
    if all.is_empty() {
        return Err(Error::NoGroupoidStructure(format!(
            "trivial commutator on `{}` but no composition satisfies the axioms",
            arrows.name()
        )));
    }
    Ok(Some(all.swap_remove(0)))
}

/// Every groupoid structure on `g`, by exhaustive search over
/// homomorphisms from the composable pairs.
pub fn all_groupoid_structures(g: &ReflexiveGraph) -> Result<Vec<Groupoid>> {
    let pb = g.composable()?;
    let (d, c, e) = (g.source(), g.target(), g.identity());
    let arrows = g.arrows();
    let mut search = HomSearch::new(&pb.algebra, arrows)?;
    for f in arrows.elements() {
        let left = pb.index_of(e.at(d.at(f)), f).expect("composable");
        let right = pb.index_of(f, e.at(c.at(f))).expect("composable");
        search = match search.fix(left, f).and_then(|s| s.fix(right, f)) {
            Ok(s) => s,
            Err(Error::Precondition(_)) => return Ok(Vec::new()),
            Err(err) => return Err(err),
        };
    }
    let mut out = Vec::new();
    for m in search.collect() {
        let mut i = Vec::with_capacity(arrows.size());
        for f in arrows.elements() {
            let unit = e.at(d.at(f));
            let inv = arrows
                .elements()
                .find(|&h| pb.index_of(f, h).is_some_and(|k| m.at(k) == unit));
            match inv {
                Some(h) => i.push(h),
                None => break,
            }
        }
        if i.len() != arrows.size() {
            continue;
        }
        if let Some(found) = assemble(g, &pb, m, i)? {
            out.push(found);
        }
    }
    Ok(out)
}

/// A pair `(arrows, objects)` of maps commuting with source, target and
/// identity.
#[derive(Clone, Debug)]
pub struct GraphMorphism {
    dom: ReflexiveGraph,
    cod: ReflexiveGraph,
    arrows: Homomorphism,
    objects: Homomorphism,
}

impl GraphMorphism {
    pub fn new(
        dom: &ReflexiveGraph,
        cod: &ReflexiveGraph,
        arrows: Homomorphism,
        objects: Homomorphism,
    ) -> Result<Self> {
        if **arrows.dom() != **dom.arrows()
            || **arrows.cod() != **cod.arrows()
            || **objects.dom() != **dom.objects()
            || **objects.cod() != **cod.objects()
        {
            return Err(Error::Mismatch(
                "graph morphism components do not match the graphs".into(),
            ));
        }
        let checks = [
            (
                objects.after(dom.source())?,
                cod.source().after(&arrows)?,
                "f0 d = d f1",
            ),
            (
                objects.after(dom.target())?,
                cod.target().after(&arrows)?,
                "f0 c = c f1",
            ),
            (
                arrows.after(dom.identity())?,
                cod.identity().after(&objects)?,
                "f1 e = e f0",
            ),
        ];
        for (lhs, rhs, name) in checks {
            if lhs != rhs {
                return Err(Error::IdentityViolation(name.into()));
            }
        }
        Ok(GraphMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            arrows,
            objects,
        })
    }

    pub fn identity(g: &ReflexiveGraph) -> Self {
        GraphMorphism {
            dom: g.clone(),
            cod: g.clone(),
            arrows: Homomorphism::identity(g.arrows()),
            objects: Homomorphism::identity(g.objects()),
        }
    }

    pub fn dom(&self) -> &ReflexiveGraph {
        &self.dom
    }

    pub fn cod(&self) -> &ReflexiveGraph {
        &self.cod
    }

    pub fn arrows(&self) -> &Homomorphism {
        &self.arrows
    }

    pub fn objects(&self) -> &Homomorphism {
        &self.objects
    }
}

/// Whether `phi` also preserves composition between the groupoids.
pub fn is_internal_functor(phi: &GraphMorphism, from: &Groupoid, to: &Groupoid) -> Result<bool> {
    if **phi.arrows.dom() != **from.graph.arrows() || **phi.arrows.cod() != **to.graph.arrows() {
        return Err(Error::Mismatch("functor endpoints do not match the groupoids".into()));
    }
    for (k, (f, g)) in from.composable.pairs().enumerate() {
        let image = to.compose(phi.arrows.at(f), phi.arrows.at(g));
        if image != Some(phi.arrows.at(from.compose.at(k))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Morphisms that are surjective at every level.
pub trait Levelwise {
    fn components(&self) -> Vec<&Homomorphism>;

    fn is_regular_epi(&self) -> bool {
        self.components().iter().all(|h| h.is_surjective())
    }

    fn is_levelwise_mono(&self) -> bool {
        self.components().iter().all(|h| h.is_injective())
    }

    fn is_levelwise_iso(&self) -> bool {
        self.components().iter().all(|h| h.is_bijective())
    }
}

impl Levelwise for GraphMorphism {
    fn components(&self) -> Vec<&Homomorphism> {
        vec![&self.arrows, &self.objects]
    }
}

/// Every graph morphism `from -> to`.
pub fn graph_morphisms(from: &ReflexiveGraph, to: &ReflexiveGraph) -> Result<Vec<GraphMorphism>> {
    let mut out = Vec::new();
    for f0 in HomSearch::new(from.objects(), to.objects())?.collect() {
        let mut search = HomSearch::new(from.arrows(), to.arrows())?;
        for x in from.objects().elements() {
            search = match search.fix(from.identity().at(x), to.identity().at(f0.at(x))) {
                Ok(s) => s,
                Err(Error::Precondition(_)) => unreachable!("identity is injective"),
                Err(err) => return Err(err),
            };
        }
        for f1 in search.collect() {
            if let Ok(phi) = GraphMorphism::new(from, to, f1, f0.clone()) {
                out.push(phi);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn reflexive_graph_checks() {
        let z2 = corpus::cyclic_group(2);
        let id = [0, 1];
        assert!(check_reflexive_graph(&z2, &z2, &id, &id, &id).unwrap());
        let g = corpus::groupoid_from_hom(2, 2, 1).unwrap();
        let (c1, c0) = (g.arrows(), g.objects());
        // C1 = Z2 x Z2 indexed 2h + g
        let d = [0, 0, 1, 1];
        let c = [0, 1, 1, 0];
        assert!(check_reflexive_graph(c1, c0, &d, &c, &[0, 2]).unwrap());
        assert!(!check_reflexive_graph(c1, c0, &d, &c, &[1, 3]).unwrap());
        assert_eq!(g.source().map(), &d);
        assert_eq!(g.target().map(), &c);
    }

    #[test]
    fn worked_groupoid_composition() {
        let g = corpus::groupoid_from_hom(2, 2, 1).unwrap();
        let gpd = groupoid_structure(&g).unwrap().unwrap();
        let enc = |h: usize, k: usize| 2 * h + k;
        for h in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let f = enc(h, a);
                    let next = enc((h + a) % 2, b);
                    assert_eq!(gpd.compose(f, next), Some(enc(h, (a + b) % 2)));
                }
            }
        }
        assert_eq!(all_groupoid_structures(&g).unwrap().len(), 1);
    }

    #[test]
    fn discrete_and_non_groupoid_graphs() {
        let z4 = corpus::cyclic_group(4);
        let gpd = groupoid_structure(&ReflexiveGraph::discrete(&z4)).unwrap().unwrap();
        assert!(gpd.inverse().is_identity());
        for x in 0..4 {
            assert_eq!(gpd.compose(x, x), Some(x));
        }
        assert!(
            groupoid_structure(&corpus::one_object_graph(&corpus::symmetric_group_3()))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn functor_examples() {
        let g = corpus::groupoid_from_hom(2, 2, 1).unwrap();
        let gpd = groupoid_structure(&g).unwrap().unwrap();
        let id = GraphMorphism::identity(&g);
        assert!(is_internal_functor(&id, &gpd, &gpd).unwrap());
        assert!(id.is_regular_epi());

        let point = ReflexiveGraph::discrete(&corpus::trivial_group());
        let point_gpd = groupoid_structure(&point).unwrap().unwrap();
        let to_point = graph_morphisms(&g, &point).unwrap();
        assert_eq!(to_point.len(), 1);
        assert!(is_internal_functor(&to_point[0], &gpd, &point_gpd).unwrap());
        assert!(to_point[0].is_regular_epi());

        let from_point = graph_morphisms(&point, &g).unwrap();
        assert_eq!(from_point.len(), 1);
        assert!(!from_point[0].is_regular_epi());
    }
}
