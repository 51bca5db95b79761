//! Finite algebras with a Mal'tsev term, their congruences and commutators,
//! internal groupoids and double groupoids, and the reflection of double
//! groupoids onto 2-groupoids together with the dual coreflection.
//!
//! Every construction returns freshly validated values; induced maps are
//! computed from their defining equations and checked, so a failed check is
//! reported as [`Error::Construction`] rather than silently producing a
//! wrong answer.

pub mod algebra;
pub mod congruence;
pub mod corpus;
pub mod error;
pub mod internal;
pub mod io;
pub mod limits;
pub mod natmaltsev;
pub mod reflection;

pub use algebra::{Algebra, Homomorphism, Signature, Term};
pub use congruence::{CoequalizerResult, Congruence, PushoutResult};
pub use error::{Error, Result};
pub use internal::{
    Corner, DoubleFunctor, DoubleGroupoid, DoubleReflexiveGraph, GraphMorphism, Groupoid, LodayAlgebra, ReflexiveGraph,
    StructureMap,
};
pub use natmaltsev::{PedicchioDiagram, Verdict};
pub use reflection::{CoreflectionResult, Options, ReflectionResult};
