//! Reflexive graphs, groupoids, and double groupoids internal to a category
//! of finite algebras.

mod double;
mod graph;
mod loday;

pub use double::{
    check_double_groupoid, double_functors, is_two_groupoid, Corner, DoubleFunctor, DoubleGroupoid,
    DoubleReflexiveGraph, StructureMap,
};
pub use graph::{
    all_groupoid_structures, check_reflexive_graph, graph_morphisms, groupoid_structure, is_internal_functor,
    GraphMorphism, Groupoid, Levelwise, ReflexiveGraph,
};
pub use loday::{
    check_two_groupoid_identities, check_variety_presentation, double_round_trip, groupoid_round_trip, loday_decode,
    loday_decode_double, loday_encode, loday_encode_double, loday_encode_double_graph, LodayAlgebra,
    PresentationReport, DOUBLE_OPS, HORIZONTAL_OPS,
};
