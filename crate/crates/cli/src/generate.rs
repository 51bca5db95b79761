//! Fixture generators.

use clap::ValueEnum;
use maltcat_core::corpus;
use maltcat_core::io::{to_json, AlgebraDoc, Document, DoubleDoc, GraphDoc};
use maltcat_core::{DoubleReflexiveGraph, ReflexiveGraph};

use crate::{CliError, GenerateKind, Outcome, RunReport};

/// Largest group order a generator accepts.
pub const MAX_ORDER: usize = 64;

fn param(name: &str, value: Option<usize>, min: usize) -> Result<usize, CliError> {
    let v = value.ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
    if v < min || v > MAX_ORDER {
        return Err(CliError::Usage(format!("--{name} must lie in {min}..={MAX_ORDER}")));
    }
    Ok(v)
}

fn hom_graph(g: Option<usize>, h: Option<usize>, k: Option<usize>) -> Result<(String, ReflexiveGraph), CliError> {
    let (g, h) = (param("g", g, 1)?, param("h", h, 1)?);
    let k = k.unwrap_or(1);
    if h > 1 && k >= h {
        return Err(CliError::Usage(format!("--k must be below {h}")));
    }
    Ok((format!("hom_z{g}_z{h}_k{k}"), corpus::groupoid_from_hom(g, h, k % h)?))
}

fn graph_documents(name: &str, graph: &ReflexiveGraph) -> Vec<Document> {
    let mut docs = vec![Document::Algebra(AlgebraDoc::from_algebra(graph.objects()))];
    if graph.arrows().name() != graph.objects().name() {
        docs.push(Document::Algebra(AlgebraDoc::from_algebra(graph.arrows())));
    }
    docs.push(Document::Graph(GraphDoc::from_graph(name, graph)));
    docs
}

/// The documents for `kind`, in file order.
pub fn generate(
    kind: GenerateKind,
    n: Option<usize>,
    g: Option<usize>,
    h: Option<usize>,
    k: Option<usize>,
) -> Result<Vec<Document>, CliError> {
    let docs = match kind {
        GenerateKind::CyclicGroup => vec![Document::Algebra(AlgebraDoc::from_algebra(&corpus::cyclic_group(
            param("n", n, 1)?,
        )))],
        GenerateKind::SymmetricGroup3 => vec![Document::Algebra(
            AlgebraDoc::from_algebra(&corpus::symmetric_group_3()),
        )],
        GenerateKind::GroupoidFromHom => {
            let (name, graph) = hom_graph(g, h, k)?;
            graph_documents(&name, &graph)
        }
        GenerateKind::DiscreteDouble => {
            let order = param("n", n, 1)?;
            let d = DoubleReflexiveGraph::discrete(&corpus::cyclic_group(order));
            vec![Document::Double(DoubleDoc::from_double(&d))]
        }
        GenerateKind::VerticallyDiscreteDouble | GenerateKind::HorizontallyDiscreteDouble => {
            let (name, graph) = hom_graph(g, h, k)?;
            let d = if kind == GenerateKind::VerticallyDiscreteDouble {
                DoubleReflexiveGraph::vertically_discrete(&graph).renamed(format!("vdisc_{name}"))
            } else {
                DoubleReflexiveGraph::horizontally_discrete(&graph).renamed(format!("hdisc_{name}"))
            };
            vec![Document::Double(DoubleDoc::from_double(&d))]
        }
    };
    Ok(docs)
}

pub fn render(docs: &[Document]) -> String {
    match docs {
        [single] => to_json(single),
        many => to_json(&many),
    }
}

pub fn cmd_generate(
    kind: GenerateKind,
    n: Option<usize>,
    g: Option<usize>,
    h: Option<usize>,
    k: Option<usize>,
) -> Result<Outcome, CliError> {
    let docs = generate(kind, n, g, h, k)?;
    let label = kind
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let mut report = RunReport::new(format!("generate {label}"));
    for doc in &docs {
        let name = match doc {
            Document::Algebra(a) => format!("algebra {}", a.name),
            Document::Graph(gr) => format!("graph {}", gr.name),
            Document::Double(d) => format!("double graph {}", d.name),
            Document::Homomorphism(_) | Document::Congruence(_) => continue,
        };
        report.fact("generated", name);
    }
    Ok(Outcome {
        report,
        document: Some(render(&docs)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use maltcat_core::io::parse_documents;

    #[test]
    fn generated_files_round_trip() {
        let kinds = [
            (GenerateKind::CyclicGroup, Some(4), None, None, None),
            (GenerateKind::SymmetricGroup3, None, None, None, None),
            (GenerateKind::GroupoidFromHom, None, Some(2), Some(2), Some(1)),
            (GenerateKind::DiscreteDouble, Some(4), None, None, None),
            (GenerateKind::VerticallyDiscreteDouble, None, Some(2), Some(2), Some(1)),
            (
                GenerateKind::HorizontallyDiscreteDouble,
                None,
                Some(2),
                Some(4),
                Some(2),
            ),
        ];
        for (kind, n, g, h, k) in kinds {
            let text = render(&generate(kind, n, g, h, k).unwrap());
            assert_eq!(render(&parse_documents(&text).unwrap()), text, "{kind:?}");
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(generate(GenerateKind::CyclicGroup, None, None, None, None).is_err());
        assert!(generate(GenerateKind::CyclicGroup, Some(0), None, None, None).is_err());
        assert!(generate(GenerateKind::GroupoidFromHom, None, Some(2), Some(4), Some(1)).is_err());
    }
}
