use std::fmt;
use std::sync::Arc;

use super::graph::{groupoid_structure, is_internal_functor, GraphMorphism, Groupoid, Levelwise, ReflexiveGraph};
use crate::algebra::{homomorphisms, product, Algebra, HomSearch, Homomorphism};
use crate::error::{Error, Result};

/// The four corners of a double reflexive graph. The first digit is the
/// vertical level, the second the horizontal one:
///
/// ```text
///   C11 ==dh1,ch1==> C10
///    ||               ||
///  dv1,cv1         dv0,cv0
///    vv               vv
///   C01 ==dh0,ch0==> C00
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    C11,
    C10,
    C01,
    C00,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::C11, Corner::C10, Corner::C01, Corner::C00];

    pub fn name(self) -> &'static str {
        match self {
            Corner::C11 => "C11",
            Corner::C10 => "C10",
            Corner::C01 => "C01",
            Corner::C00 => "C00",
        }
    }

    pub fn from_name(name: &str) -> Option<Corner> {
        Corner::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The twelve structure maps. `h`/`v` is the direction, the digit the row
/// (for horizontal maps) or column (for vertical maps).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureMap {
    Dh1,
    Ch1,
    Eh1,
    Dh0,
    Ch0,
    Eh0,
    Dv1,
    Cv1,
    Ev1,
    Dv0,
    Cv0,
    Ev0,
}

impl StructureMap {
    pub const ALL: [StructureMap; 12] = [
        StructureMap::Dh1,
        StructureMap::Ch1,
        StructureMap::Eh1,
        StructureMap::Dh0,
        StructureMap::Ch0,
        StructureMap::Eh0,
        StructureMap::Dv1,
        StructureMap::Cv1,
        StructureMap::Ev1,
        StructureMap::Dv0,
        StructureMap::Cv0,
        StructureMap::Ev0,
    ];

    pub fn name(self) -> &'static str {
        use StructureMap::*;
        match self {
            Dh1 => "dh1",
            Ch1 => "ch1",
            Eh1 => "eh1",
            Dh0 => "dh0",
            Ch0 => "ch0",
            Eh0 => "eh0",
            Dv1 => "dv1",
            Cv1 => "cv1",
            Ev1 => "ev1",
            Dv0 => "dv0",
            Cv0 => "cv0",
            Ev0 => "ev0",
        }
    }

    pub fn from_name(name: &str) -> Option<StructureMap> {
        StructureMap::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Source and target corners.
    pub fn endpoints(self) -> (Corner, Corner) {
        use Corner::*;
        use StructureMap::*;
        match self {
            Dh1 | Ch1 => (C11, C10),
            Eh1 => (C10, C11),
            Dh0 | Ch0 => (C01, C00),
            Eh0 => (C00, C01),
            Dv1 | Cv1 => (C11, C01),
            Ev1 => (C01, C11),
            Dv0 | Cv0 => (C10, C00),
            Ev0 => (C00, C10),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Four algebras and twelve maps whose rows and columns are reflexive
/// graphs and whose horizontal maps are graph morphisms between the columns.
#[derive(Clone)]
pub struct DoubleReflexiveGraph {
    name: String,
    maps: [Homomorphism; 12],
}

impl DoubleReflexiveGraph {
    /// `maps` in the order of [`StructureMap::ALL`].
    pub fn new(name: impl Into<String>, maps: [Homomorphism; 12]) -> Result<Self> {
        let corners = [
            maps[StructureMap::Dh1.index()].dom().clone(),
            maps[StructureMap::Dh1.index()].cod().clone(),
            maps[StructureMap::Dh0.index()].dom().clone(),
            maps[StructureMap::Dh0.index()].cod().clone(),
        ];
        for m in StructureMap::ALL {
            let (from, to) = m.endpoints();
            let h = &maps[m.index()];
            if **h.dom() != *corners[from.index()] || **h.cod() != *corners[to.index()] {
                return Err(Error::Mismatch(format!("`{}` is not a map {from} -> {to}", m.name())));
            }
        }
        let dg = DoubleReflexiveGraph {
            name: name.into(),
            maps,
        };
        let rows = [
            ("top row", StructureMap::Dh1),
            ("bottom row", StructureMap::Dh0),
            ("left column", StructureMap::Dv1),
            ("right column", StructureMap::Dv0),
        ];
        for (label, first) in rows {
            let i = first.index();
            ReflexiveGraph::new(dg.maps[i].clone(), dg.maps[i + 1].clone(), dg.maps[i + 2].clone())
                .map_err(|e| Error::NotDoubleGraph(format!("{label}: {e}")))?;
        }
        for (label, phi) in [
            ("dh1/dh0", dg.horizontal(StructureMap::Dh1)),
            ("ch1/ch0", dg.horizontal(StructureMap::Ch1)),
            ("eh1/eh0", dg.horizontal(StructureMap::Eh1)),
        ] {
            phi.map_err(|e| Error::NotDoubleGraph(format!("{label}: {e}")))?;
        }
        Ok(dg)
    }

    /// The horizontal map `upper` and the one below it as a graph morphism
    /// between the columns.
    fn horizontal(&self, upper: StructureMap) -> Result<GraphMorphism> {
        let (left, right) = (self.left_column(), self.right_column());
        let top = self.maps[upper.index()].clone();
        let bottom = self.maps[upper.index() + 3].clone();
        if upper == StructureMap::Eh1 {
            GraphMorphism::new(&right, &left, top, bottom)
        } else {
            GraphMorphism::new(&left, &right, top, bottom)
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        DoubleReflexiveGraph {
            name: name.into(),
            maps: self.maps.clone(),
        }
    }

    pub fn corner(&self, c: Corner) -> &Arc<Algebra> {
        match c {
            Corner::C11 => self.dh1().dom(),
            Corner::C10 => self.dh1().cod(),
            Corner::C01 => self.dh0().dom(),
            Corner::C00 => self.dh0().cod(),
        }
    }

    pub fn corner_sizes(&self) -> [usize; 4] {
        Corner::ALL.map(|c| self.corner(c).size())
    }

    pub fn map(&self, m: StructureMap) -> &Homomorphism {
        &self.maps[m.index()]
    }

    pub fn maps(&self) -> &[Homomorphism; 12] {
        &self.maps
    }

    pub fn dh1(&self) -> &Homomorphism {
        self.map(StructureMap::Dh1)
    }
    pub fn ch1(&self) -> &Homomorphism {
        self.map(StructureMap::Ch1)
    }
    pub fn eh1(&self) -> &Homomorphism {
        self.map(StructureMap::Eh1)
    }
    pub fn dh0(&self) -> &Homomorphism {
        self.map(StructureMap::Dh0)
    }
    pub fn ch0(&self) -> &Homomorphism {
        self.map(StructureMap::Ch0)
    }
    pub fn eh0(&self) -> &Homomorphism {
        self.map(StructureMap::Eh0)
    }
    pub fn dv1(&self) -> &Homomorphism {
        self.map(StructureMap::Dv1)
    }
    pub fn cv1(&self) -> &Homomorphism {
        self.map(StructureMap::Cv1)
    }
    pub fn ev1(&self) -> &Homomorphism {
        self.map(StructureMap::Ev1)
    }
    pub fn dv0(&self) -> &Homomorphism {
        self.map(StructureMap::Dv0)
    }
    pub fn cv0(&self) -> &Homomorphism {
        self.map(StructureMap::Cv0)
    }
    pub fn ev0(&self) -> &Homomorphism {
        self.map(StructureMap::Ev0)
    }

    fn graph_at(&self, first: StructureMap) -> ReflexiveGraph {
        let i = first.index();
        ReflexiveGraph::from_parts(self.maps[i].clone(), self.maps[i + 1].clone(), self.maps[i + 2].clone())
    }

    /// `C11 ⇉ C10`.
    pub fn top_row(&self) -> ReflexiveGraph {
        self.graph_at(StructureMap::Dh1)
    }

    /// `C01 ⇉ C00`.
    pub fn bottom_row(&self) -> ReflexiveGraph {
        self.graph_at(StructureMap::Dh0)
    }

    /// `C11 ⇉ C01`.
    pub fn left_column(&self) -> ReflexiveGraph {
        self.graph_at(StructureMap::Dv1)
    }

    /// `C10 ⇉ C00`.
    pub fn right_column(&self) -> ReflexiveGraph {
        self.graph_at(StructureMap::Dv0)
    }

    /// All corners equal to `a`, all maps identities.
    pub fn discrete(a: &Arc<Algebra>) -> Self {
        let id = Homomorphism::identity(a);
        DoubleReflexiveGraph {
            name: format!("disc_{}", a.name()),
            maps: std::array::from_fn(|_| id.clone()),
        }
    }

    /// Both rows equal to `g`, vertical maps identities.
    pub fn vertically_discrete(g: &ReflexiveGraph) -> Self {
        let (d, c, e) = (g.source().clone(), g.target().clone(), g.identity().clone());
        let id1 = Homomorphism::identity(g.arrows());
        let id0 = Homomorphism::identity(g.objects());
        DoubleReflexiveGraph {
            name: format!("vdisc_{}", g.arrows().name()),
            maps: [
                d.clone(),
                c.clone(),
                e.clone(),
                d,
                c,
                e,
                id1.clone(),
                id1.clone(),
                id1,
                id0.clone(),
                id0.clone(),
                id0,
            ],
        }
    }

    /// Both columns equal to `g`, horizontal maps identities.
    pub fn horizontally_discrete(g: &ReflexiveGraph) -> Self {
        let (d, c, e) = (g.source().clone(), g.target().clone(), g.identity().clone());
        let id1 = Homomorphism::identity(g.arrows());
        let id0 = Homomorphism::identity(g.objects());
        DoubleReflexiveGraph {
            name: format!("hdisc_{}", g.arrows().name()),
            maps: [
                id1.clone(),
                id1.clone(),
                id1,
                id0.clone(),
                id0.clone(),
                id0,
                d.clone(),
                c.clone(),
                e.clone(),
                d,
                c,
                e,
            ],
        }
    }

    /// Rows taken from `rows`, columns from `columns`; the corner `Cij` is
    /// the product of level `j` of `rows` with level `i` of `columns`.
    pub fn product(rows: &ReflexiveGraph, columns: &ReflexiveGraph) -> Result<Self> {
        let p11 = product(rows.arrows(), columns.arrows())?;
        let p10 = product(rows.objects(), columns.arrows())?;
        let p01 = product(rows.arrows(), columns.objects())?;
        let p00 = product(rows.objects(), columns.objects())?;
        let id_r1 = Homomorphism::identity(rows.arrows());
        let id_r0 = Homomorphism::identity(rows.objects());
        let id_c1 = Homomorphism::identity(columns.arrows());
        let id_c0 = Homomorphism::identity(columns.objects());
        let maps = [
            p11.cross(rows.source(), &id_c1, &p10)?,
            p11.cross(rows.target(), &id_c1, &p10)?,
            p10.cross(rows.identity(), &id_c1, &p11)?,
            p01.cross(rows.source(), &id_c0, &p00)?,
            p01.cross(rows.target(), &id_c0, &p00)?,
            p00.cross(rows.identity(), &id_c0, &p01)?,
            p11.cross(&id_r1, columns.source(), &p01)?,
            p11.cross(&id_r1, columns.target(), &p01)?,
            p01.cross(&id_r1, columns.identity(), &p11)?,
            p10.cross(&id_r0, columns.source(), &p00)?,
            p10.cross(&id_r0, columns.target(), &p00)?,
            p00.cross(&id_r0, columns.identity(), &p10)?,
        ];
        DoubleReflexiveGraph::new(format!("{}_x_{}", rows.arrows().name(), columns.arrows().name()), maps)
    }
}

impl fmt::Debug for DoubleReflexiveGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DoubleReflexiveGraph")
            .field("name", &self.name)
            .field("corners", &self.corner_sizes())
            .finish()
    }
}

/// A double reflexive graph whose rows and columns are groupoids and whose
/// structure maps are functors.
#[derive(Clone, Debug)]
pub struct DoubleGroupoid {
    graph: DoubleReflexiveGraph,
    top: Groupoid,
    bottom: Groupoid,
    left: Groupoid,
    right: Groupoid,
}

impl DoubleGroupoid {
    pub fn graph(&self) -> &DoubleReflexiveGraph {
        &self.graph
    }

    pub fn name(&self) -> &str {
        self.graph.name()
    }

    pub fn top(&self) -> &Groupoid {
        &self.top
    }

    pub fn bottom(&self) -> &Groupoid {
        &self.bottom
    }

    pub fn left(&self) -> &Groupoid {
        &self.left
    }

    pub fn right(&self) -> &Groupoid {
        &self.right
    }

    pub fn corner(&self, c: Corner) -> &Arc<Algebra> {
        self.graph.corner(c)
    }

    pub fn is_two_groupoid(&self) -> bool {
        is_two_groupoid(self)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        DoubleGroupoid {
            graph: self.graph.renamed(name),
            ..self.clone()
        }
    }
}

/// Groupoid structures on all rows and columns, checked for functoriality
/// of every structure map. `None` if any of them is missing.
pub fn check_double_groupoid(dg: &DoubleReflexiveGraph) -> Result<Option<DoubleGroupoid>> {
    let mut found = Vec::with_capacity(4);
    for g in [dg.top_row(), dg.bottom_row(), dg.left_column(), dg.right_column()] {
        match groupoid_structure(&g)? {
            Some(gpd) => found.push(gpd),
            None => return Ok(None),
        }
    }
    let right = found.pop().unwrap();
    let left = found.pop().unwrap();
    let bottom = found.pop().unwrap();
    let top = found.pop().unwrap();
    let functors = [
        (dg.dh1(), dg.dh0(), &left, &right),
        (dg.ch1(), dg.ch0(), &left, &right),
        (dg.eh1(), dg.eh0(), &right, &left),
        (dg.dv1(), dg.dv0(), &top, &bottom),
        (dg.cv1(), dg.cv0(), &top, &bottom),
        (dg.ev1(), dg.ev0(), &bottom, &top),
    ];
    for (upper, lower, from, to) in functors {
        let phi = GraphMorphism::new(from.graph(), to.graph(), upper.clone(), lower.clone())?;
        if !is_internal_functor(&phi, from, to)? {
            return Ok(None);
        }
    }
    Ok(Some(DoubleGroupoid {
        graph: dg.clone(),
        top,
        bottom,
        left,
        right,
    }))
}

/// `eh0` is bijective, and then `dh0 = ch0 = eh0⁻¹`.
pub fn is_two_groupoid(dg: &DoubleGroupoid) -> bool {
    let g = &dg.graph;
    if !g.eh0().is_bijective() {
        return false;
    }
    let inv = g.eh0().inverse().expect("bijective");
    *g.dh0() == inv && *g.ch0() == inv
}

/// A morphism of double groupoids: four corner maps commuting with all
/// twelve structure maps and preserving all four compositions.
#[derive(Clone)]
pub struct DoubleFunctor {
    dom: Arc<DoubleGroupoid>,
    cod: Arc<DoubleGroupoid>,
    components: [Homomorphism; 4],
}

impl DoubleFunctor {
    /// `components` in the order of [`Corner::ALL`].
    pub fn new(dom: &Arc<DoubleGroupoid>, cod: &Arc<DoubleGroupoid>, components: [Homomorphism; 4]) -> Result<Self> {
        for c in Corner::ALL {
            let h = &components[c.index()];
            if **h.dom() != **dom.corner(c) || **h.cod() != **cod.corner(c) {
                return Err(Error::Mismatch(format!("component at {c} has the wrong endpoints")));
            }
        }
        for m in StructureMap::ALL {
            let (from, to) = m.endpoints();
            let lhs = components[to.index()].after(dom.graph.map(m))?;
            let rhs = cod.graph.map(m).after(&components[from.index()])?;
            if lhs != rhs {
                return Err(Error::IdentityViolation(format!(
                    "double functor does not commute with {}",
                    m.name()
                )));
            }
        }
        let levels = [
            (Corner::C11, Corner::C10, dom.top(), cod.top(), "top row"),
            (Corner::C01, Corner::C00, dom.bottom(), cod.bottom(), "bottom row"),
            (Corner::C11, Corner::C01, dom.left(), cod.left(), "left column"),
            (Corner::C10, Corner::C00, dom.right(), cod.right(), "right column"),
        ];
        for (upper, lower, from, to, label) in levels {
            let phi = GraphMorphism::new(
                from.graph(),
                to.graph(),
                components[upper.index()].clone(),
                components[lower.index()].clone(),
            )?;
            if !is_internal_functor(&phi, from, to)? {
                return Err(Error::IdentityViolation(format!(
                    "composition of the {label} is not preserved"
                )));
            }
        }
        Ok(DoubleFunctor {
            dom: dom.clone(),
            cod: cod.clone(),
            components,
        })
    }

    pub fn identity(dg: &Arc<DoubleGroupoid>) -> Self {
        DoubleFunctor {
            dom: dg.clone(),
            cod: dg.clone(),
            components: Corner::ALL.map(|c| Homomorphism::identity(dg.corner(c))),
        }
    }

    pub fn dom(&self) -> &Arc<DoubleGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<DoubleGroupoid> {
        &self.cod
    }

    pub fn component(&self, c: Corner) -> &Homomorphism {
        &self.components[c.index()]
    }

    pub fn components_array(&self) -> &[Homomorphism; 4] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &DoubleFunctor) -> Result<DoubleFunctor> {
        let mut components = Vec::with_capacity(4);
        for c in Corner::ALL {
            components.push(self.component(c).after(inner.component(c))?);
        }
        Ok(DoubleFunctor {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            components: components.try_into().expect("four corners"),
        })
    }

    /// Whether the component maps agree, corner by corner.
    pub fn same_maps(&self, other: &DoubleFunctor) -> bool {
        self.components == other.components
    }
}

impl Levelwise for DoubleFunctor {
    fn components(&self) -> Vec<&Homomorphism> {
        self.components.iter().collect()
    }
}

impl fmt::Debug for DoubleFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DoubleFunctor")
            .field("dom", &self.dom.name())
            .field("cod", &self.cod.name())
            .field("components", &self.components)
            .finish()
    }
}

fn search_fixing(from: &Arc<Algebra>, to: &Arc<Algebra>, fixed: &[(usize, usize)]) -> Result<Option<HomSearch>> {
    let mut search = HomSearch::new(from, to)?;
    for &(x, y) in fixed {
        search = match search.fix(x, y) {
            Ok(s) => s,
            Err(Error::Precondition(_)) => return Ok(None),
            Err(err) => return Err(err),
        };
    }
    Ok(Some(search))
}

/// Every double functor `from -> to`, built corner by corner: `C00` first,
/// then `C10` and `C01` with their values on identities forced, then `C11`.
pub fn double_functors(from: &Arc<DoubleGroupoid>, to: &Arc<DoubleGroupoid>) -> Result<Vec<DoubleFunctor>> {
    let (c, d) = (from.graph(), to.graph());
    let mut out = Vec::new();
    for f00 in homomorphisms(c.corner(Corner::C00), d.corner(Corner::C00))? {
        let forced10: Vec<_> = c
            .corner(Corner::C00)
            .elements()
            .map(|x| (c.ev0().at(x), d.ev0().at(f00.at(x))))
            .collect();
        let forced01: Vec<_> = c
            .corner(Corner::C00)
            .elements()
            .map(|x| (c.eh0().at(x), d.eh0().at(f00.at(x))))
            .collect();
        let Some(s10) = search_fixing(c.corner(Corner::C10), d.corner(Corner::C10), &forced10)? else {
            continue;
        };
        let Some(s01) = search_fixing(c.corner(Corner::C01), d.corner(Corner::C01), &forced01)? else {
            continue;
        };
        let f10s: Vec<_> = s10
            .collect()
            .into_iter()
            .filter(|f10| {
                f00.after(c.dv0()).ok() == d.dv0().after(f10).ok() && f00.after(c.cv0()).ok() == d.cv0().after(f10).ok()
            })
            .collect();
        let f01s: Vec<_> = s01
            .collect()
            .into_iter()
            .filter(|f01| {
                f00.after(c.dh0()).ok() == d.dh0().after(f01).ok() && f00.after(c.ch0()).ok() == d.ch0().after(f01).ok()
            })
            .collect();
        for f10 in &f10s {
            for f01 in &f01s {
                let mut forced11: Vec<_> = c
                    .corner(Corner::C01)
                    .elements()
                    .map(|y| (c.ev1().at(y), d.ev1().at(f01.at(y))))
                    .collect();
                forced11.extend(
                    c.corner(Corner::C10)
                        .elements()
                        .map(|z| (c.eh1().at(z), d.eh1().at(f10.at(z)))),
                );
                let Some(s11) = search_fixing(c.corner(Corner::C11), d.corner(Corner::C11), &forced11)? else {
                    continue;
                };
                for f11 in s11.collect() {
                    let comps = [f11, f10.clone(), f01.clone(), f00.clone()];
                    if let Ok(phi) = DoubleFunctor::new(from, to, comps) {
                        out.push(phi);
                    }
                }
            }
        }
    }
    Ok(out)
}
