//! Named objects loaded from the bundled corpus and from JSON files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use maltcat_core::corpus;
use maltcat_core::io::{parse_documents, Document};
use maltcat_core::{Algebra, Congruence, DoubleReflexiveGraph, Error, Homomorphism, ReflexiveGraph};

use crate::CliError;

/// A document that parsed but failed a mathematical validation on load.
#[derive(Clone, Debug)]
pub struct Rejected {
    pub kind: &'static str,
    pub error: Error,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub homomorphisms: BTreeMap<String, Homomorphism>,
    pub congruences: BTreeMap<String, Congruence>,
    pub graphs: BTreeMap<String, ReflexiveGraph>,
    pub doubles: BTreeMap<String, DoubleReflexiveGraph>,
    pub rejected: BTreeMap<String, Rejected>,
    /// Names that came from the corpus; a file may replace these.
    bundled: BTreeSet<String>,
}

/// Errors that mean "the input describes a structure that fails a law", as
/// opposed to "the input could not be read".
pub fn is_mathematical(e: &Error) -> bool {
    matches!(
        e,
        Error::NotMaltsev { .. }
            | Error::NotHomomorphism(_)
            | Error::NotCompatible { .. }
            | Error::NotReflexiveGraph(_)
            | Error::NotDoubleGraph(_)
            | Error::IdentityViolation(_)
            | Error::NontrivialCommutator(_)
            | Error::NoGroupoidStructure(_)
            | Error::NotTwoGroupoid(_)
            | Error::NotSurjective(_)
            | Error::NotSplitting(_)
            | Error::Construction(_)
    )
}

impl Workspace {
    pub fn empty() -> Self {
        Workspace::default()
    }

    /// The bundled fixtures.
    pub fn bundled() -> Self {
        let mut ws = Workspace::empty();
        let corpus = corpus::bundled();
        for a in corpus.algebras {
            ws.algebras.insert(a.name().to_string(), a);
        }
        for (name, g) in corpus.graphs {
            for a in [g.arrows(), g.objects()] {
                ws.algebras.entry(a.name().to_string()).or_insert_with(|| a.clone());
            }
            ws.graphs.insert(name, g);
        }
        for d in corpus.doubles {
            ws.doubles.insert(d.name().to_string(), d);
        }
        ws.bundled = ws
            .algebras
            .keys()
            .chain(ws.graphs.keys())
            .chain(ws.doubles.keys())
            .cloned()
            .collect();
        ws
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".into());
        self.load_str(&text, &stem)
    }

    /// Loads every document of `text`; unnamed documents are named after
    /// `stem`, with a `#i` suffix when the file holds several.
    pub fn load_str(&mut self, text: &str, stem: &str) -> Result<(), CliError> {
        let docs = parse_documents(text)?;
        let many = docs.len() > 1;
        // algebras first so that later documents can refer to them
        let (algebras, rest): (Vec<_>, Vec<_>) = docs
            .into_iter()
            .enumerate()
            .partition(|(_, d)| matches!(d, Document::Algebra(_)));
        for (i, doc) in algebras.into_iter().chain(rest) {
            let fallback = if many { format!("{stem}#{i}") } else { stem.to_string() };
            self.load_document(doc, &fallback)?;
        }
        Ok(())
    }

    fn reject(&mut self, name: String, kind: &'static str, error: Error) -> Result<(), CliError> {
        if is_mathematical(&error) {
            self.rejected.insert(name, Rejected { kind, error });
            Ok(())
        } else {
            Err(error.into())
        }
    }

    fn load_document(&mut self, doc: Document, fallback: &str) -> Result<(), CliError> {
        match doc {
            Document::Algebra(d) => match d.to_algebra() {
                Ok(a) => self.insert_algebra(a),
                Err(e) => self.reject(d.name.clone(), "algebra", e),
            },
            Document::Homomorphism(d) => {
                let (dom, cod) = (self.algebra(&d.dom)?, self.algebra(&d.cod)?);
                match Homomorphism::new(dom, cod, d.map) {
                    Ok(h) => insert_unique(
                        &mut self.homomorphisms,
                        &self.bundled,
                        fallback.to_string(),
                        h,
                        "homomorphism",
                    ),
                    Err(e) => self.reject(fallback.to_string(), "homomorphism", e),
                }
            }
            Document::Congruence(d) => {
                let a = self.algebra(&d.algebra)?;
                match d.to_congruence(&a) {
                    Ok(c) => insert_unique(
                        &mut self.congruences,
                        &self.bundled,
                        fallback.to_string(),
                        c,
                        "congruence",
                    ),
                    Err(e) => self.reject(fallback.to_string(), "congruence", e),
                }
            }
            Document::Graph(d) => {
                let resolve = |n: &str| self.algebra(n).map_err(|_| Error::Unresolved(n.to_string()));
                match d.to_graph(&resolve) {
                    Ok(g) => insert_unique(&mut self.graphs, &self.bundled, d.name.clone(), g, "graph"),
                    Err(e) => self.reject(d.name.clone(), "graph", e),
                }
            }
            Document::Double(d) => {
                for a in &d.algebras {
                    if let Ok(alg) = a.to_algebra() {
                        self.algebras.entry(alg.name().to_string()).or_insert(alg);
                    }
                }
                let resolve = |n: &str| self.algebra(n).map_err(|_| Error::Unresolved(n.to_string()));
                match d.to_double(&resolve) {
                    Ok(g) => insert_unique(&mut self.doubles, &self.bundled, d.name.clone(), g, "double graph"),
                    Err(e) => self.reject(d.name.clone(), "double graph", e),
                }
            }
        }
    }

    fn insert_algebra(&mut self, a: Arc<Algebra>) -> Result<(), CliError> {
        match self.algebras.get(a.name()) {
            Some(existing) if **existing != *a && !self.bundled.contains(a.name()) => {
                Err(CliError::Conflict(a.name().to_string()))
            }
            _ => {
                self.algebras.insert(a.name().to_string(), a);
                Ok(())
            }
        }
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<Algebra>, CliError> {
        self.algebras
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Unknown("algebra", name.to_string()))
    }

    pub fn double(&self, name: &str) -> Result<&DoubleReflexiveGraph, CliError> {
        self.doubles
            .get(name)
            .ok_or_else(|| CliError::Unknown("double graph", name.to_string()))
    }

    /// `identity` and `full` name the extreme congruences of `a`.
    pub fn congruence(&self, a: &Arc<Algebra>, name: &str) -> Result<Congruence, CliError> {
        match name {
            "identity" => Ok(Congruence::identity(a)),
            "full" => Ok(Congruence::full(a)),
            _ => {
                let c = self
                    .congruences
                    .get(name)
                    .ok_or_else(|| CliError::Unknown("congruence", name.to_string()))?;
                if **c.algebra() != **a {
                    return Err(CliError::Core(Error::Mismatch(format!(
                        "congruence `{name}` is not on `{}`",
                        a.name()
                    ))));
                }
                Ok(c.clone())
            }
        }
    }
}

fn insert_unique<T>(
    map: &mut BTreeMap<String, T>,
    bundled: &BTreeSet<String>,
    name: String,
    value: T,
    kind: &'static str,
) -> Result<(), CliError> {
    if map.contains_key(&name) && !bundled.contains(&name) {
        return Err(CliError::Duplicate(kind, name));
    }
    map.insert(name, value);
    Ok(())
}
