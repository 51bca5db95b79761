//! JSON documents for algebras, homomorphisms, congruences, reflexive graphs
//! and double reflexive graphs.
//!
//! Documents refer to algebras by name. A double-graph document may carry
//! its own `"algebras"` block so that it can be read without any other file.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, Homomorphism, Signature};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::internal::{Corner, DoubleFunctor, DoubleReflexiveGraph, ReflexiveGraph, StructureMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDecl {
    pub op: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub size: usize,
    pub signature: Vec<OpDecl>,
    /// Arity-0 operations are plain integers; otherwise nested arrays whose
    /// innermost length is `size`.
    pub tables: BTreeMap<String, Value>,
    pub maltsev_term: String,
}

fn nest(table: &[usize], arity: usize, size: usize) -> Value {
    match arity {
        0 => Value::from(table[0]),
        1 => Value::from(table.to_vec()),
        _ => {
            let stride = table.len() / size;
            Value::Array(
                (0..size)
                    .map(|i| nest(&table[i * stride..(i + 1) * stride], arity - 1, size))
                    .collect(),
            )
        }
    }
}

fn flatten(value: &Value, arity: usize, size: usize, op: &str, out: &mut Vec<usize>) -> Result<()> {
    let bad = || Error::Malformed(format!("table of `{op}` has the wrong shape"));
    if arity == 0 {
        let v = value.as_u64().ok_or_else(bad)?;
        out.push(usize::try_from(v).map_err(|_| bad())?);
        return Ok(());
    }
    let items = value.as_array().ok_or_else(bad)?;
    if items.len() != size {
        return Err(bad());
    }
    for item in items {
        flatten(item, arity - 1, size, op, out)?;
    }
    Ok(())
}

impl AlgebraDoc {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraDoc {
            name: a.name().to_string(),
            size: a.size(),
            signature: a
                .signature()
                .ops()
                .iter()
                .map(|o| OpDecl {
                    op: o.name.clone(),
                    arity: o.arity,
                })
                .collect(),
            tables: a
                .signature()
                .ops()
                .iter()
                .enumerate()
                .map(|(i, o)| (o.name.clone(), nest(a.table(i), o.arity, a.size())))
                .collect(),
            maltsev_term: a.maltsev_term().to_string(),
        }
    }

    pub fn to_algebra(&self) -> Result<Arc<Algebra>> {
        let sig = Signature::new(self.signature.iter().map(|d| (d.op.clone(), d.arity)))?;
        if let Some(extra) = self.tables.keys().find(|k| sig.index_of(k).is_none()) {
            return Err(Error::Malformed(format!("table for undeclared operation `{extra}`")));
        }
        let mut tables = Vec::with_capacity(sig.len());
        for op in sig.ops() {
            let value = self
                .tables
                .get(&op.name)
                .ok_or_else(|| Error::MissingOperation(op.name.clone()))?;
            let mut flat = Vec::new();
            flatten(value, op.arity, self.size, &op.name, &mut flat)?;
            tables.push(flat);
        }
        Algebra::new(
            self.name.clone(),
            self.size,
            Arc::new(sig),
            tables,
            self.maltsev_term.parse()?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub dom: String,
    pub cod: String,
    pub map: Vec<usize>,
}

impl HomDoc {
    pub fn from_hom(h: &Homomorphism) -> Self {
        HomDoc {
            dom: h.dom().name().to_string(),
            cod: h.cod().name().to_string(),
            map: h.map().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceDoc {
    pub algebra: String,
    pub blocks: Vec<Vec<usize>>,
}

impl CongruenceDoc {
    pub fn from_congruence(theta: &Congruence) -> Self {
        CongruenceDoc {
            algebra: theta.algebra().name().to_string(),
            blocks: theta.blocks(),
        }
    }

    pub fn to_congruence(&self, a: &Arc<Algebra>) -> Result<Congruence> {
        Congruence::from_blocks(a, &self.blocks)
    }
}

/// A reflexive graph `d, c : arrows -> objects`, `e : objects -> arrows`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub name: String,
    pub arrows: String,
    pub objects: String,
    pub d: Vec<usize>,
    pub c: Vec<usize>,
    pub e: Vec<usize>,
}

impl GraphDoc {
    pub fn from_graph(name: &str, g: &ReflexiveGraph) -> Self {
        GraphDoc {
            name: name.to_string(),
            arrows: g.arrows().name().to_string(),
            objects: g.objects().name().to_string(),
            d: g.source().map().to_vec(),
            c: g.target().map().to_vec(),
            e: g.identity().map().to_vec(),
        }
    }

    pub fn to_graph(&self, resolve: &dyn Fn(&str) -> Result<Arc<Algebra>>) -> Result<ReflexiveGraph> {
        let (arrows, objects) = (resolve(&self.arrows)?, resolve(&self.objects)?);
        ReflexiveGraph::new(
            Homomorphism::new(arrows.clone(), objects.clone(), self.d.clone())?,
            Homomorphism::new(arrows.clone(), objects.clone(), self.c.clone())?,
            Homomorphism::new(objects, arrows, self.e.clone())?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleDoc {
    pub name: String,
    /// Corner label (`C11`, ...) to algebra name.
    pub corners: BTreeMap<String, String>,
    /// Structure-map label (`dh1`, ...) to map.
    pub maps: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub algebras: Vec<AlgebraDoc>,
}

/// Names for the corners of `dg`, disambiguated when two structurally
/// different corners share a name.
fn corner_names(dg: &DoubleReflexiveGraph) -> [String; 4] {
    let mut seen: Vec<(String, Arc<Algebra>)> = Vec::new();
    Corner::ALL.map(|c| {
        let a = dg.corner(c);
        let mut name = a.name().to_string();
        if seen.iter().any(|(n, b)| *n == name && **b != **a) {
            name = format!("{name}@{c}");
        }
        if !seen.iter().any(|(n, _)| *n == name) {
            seen.push((name.clone(), a.clone()));
        }
        name
    })
}

fn components(f: &DoubleFunctor) -> BTreeMap<String, Vec<usize>> {
    Corner::ALL
        .iter()
        .map(|&c| (c.name().to_string(), f.component(c).map().to_vec()))
        .collect()
}

impl DoubleDoc {
    /// The graph with an embedded `"algebras"` block.
    pub fn from_double(dg: &DoubleReflexiveGraph) -> Self {
        let names = corner_names(dg);
        let mut algebras: Vec<AlgebraDoc> = Vec::new();
        for (c, name) in Corner::ALL.iter().zip(&names) {
            if !algebras.iter().any(|a| a.name == *name) {
                let mut doc = AlgebraDoc::from_algebra(dg.corner(*c));
                doc.name = name.clone();
                algebras.push(doc);
            }
        }
        DoubleDoc {
            name: dg.name().to_string(),
            corners: Corner::ALL
                .iter()
                .zip(names)
                .map(|(c, n)| (c.name().to_string(), n))
                .collect(),
            maps: StructureMap::ALL
                .iter()
                .map(|&m| (m.name().to_string(), dg.map(m).map().to_vec()))
                .collect(),
            unit: None,
            counit: None,
            algebras,
        }
    }

    pub fn with_unit(mut self, unit: &DoubleFunctor) -> Self {
        self.unit = Some(components(unit));
        self
    }

    pub fn with_counit(mut self, counit: &DoubleFunctor) -> Self {
        self.counit = Some(components(counit));
        self
    }

    /// Resolves corner names against the embedded algebras first, then
    /// against `resolve`.
    pub fn to_double(&self, resolve: &dyn Fn(&str) -> Result<Arc<Algebra>>) -> Result<DoubleReflexiveGraph> {
        let embedded = self
            .algebras
            .iter()
            .map(|d| Ok((d.name.clone(), d.to_algebra()?)))
            .collect::<Result<Vec<_>>>()?;
        let lookup = |name: &str| match embedded.iter().find(|(n, _)| n == name) {
            Some((_, a)) => Ok(a.clone()),
            None => resolve(name),
        };
        let mut corners = Vec::with_capacity(4);
        for c in Corner::ALL {
            let name = self
                .corners
                .get(c.name())
                .ok_or_else(|| Error::Malformed(format!("missing corner {c}")))?;
            corners.push(lookup(name)?);
        }
        if let Some(extra) = self.corners.keys().find(|k| Corner::from_name(k).is_none()) {
            return Err(Error::Malformed(format!("unknown corner `{extra}`")));
        }
        if let Some(extra) = self.maps.keys().find(|k| StructureMap::from_name(k).is_none()) {
            return Err(Error::Malformed(format!("unknown structure map `{extra}`")));
        }
        let mut maps = Vec::with_capacity(12);
        for m in StructureMap::ALL {
            let map = self
                .maps
                .get(m.name())
                .ok_or_else(|| Error::Malformed(format!("missing structure map {}", m.name())))?;
            let (from, to) = m.endpoints();
            maps.push(Homomorphism::new(
                corners[from.index()].clone(),
                corners[to.index()].clone(),
                map.clone(),
            )?);
        }
        DoubleReflexiveGraph::new(self.name.clone(), maps.try_into().expect("twelve maps"))
    }
}

/// Any single document; the kind is recognised by its fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Algebra(AlgebraDoc),
    Homomorphism(HomDoc),
    Congruence(CongruenceDoc),
    Graph(GraphDoc),
    Double(DoubleDoc),
}

/// Parses a file holding one document or an array of documents.
pub fn parse_documents(text: &str) -> Result<Vec<Document>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|v| serde_json::from_value(v).map_err(|e| Error::Malformed(format!("unrecognised document: {e}"))))
        .collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}
