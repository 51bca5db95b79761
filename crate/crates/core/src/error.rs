use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("operation `{op}` expects {expected} arguments, found {found}")]
    ArityMismatch { op: String, expected: usize, found: usize },
    #[error("cannot parse term: {0}")]
    TermParse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("Mal'tsev identity {identity} fails at x={x}, y={y}")]
    NotMaltsev { identity: &'static str, x: usize, y: usize },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("construction needs {requested} elements, above the size limit {limit}")]
    SizeLimit { requested: usize, limit: usize },
    #[error("mismatched endpoints: {0}")]
    Mismatch(String),
    #[error("not surjective: {0}")]
    NotSurjective(String),
    #[error("not a splitting: {0}")]
    NotSplitting(String),
    #[error("partition is not compatible with operation `{op}`")]
    NotCompatible { op: String },
    #[error("reflexive graph equation fails: {0}")]
    NotReflexiveGraph(String),
    #[error("double reflexive graph equation fails: {0}")]
    NotDoubleGraph(String),
    #[error("identity fails: {0}")]
    IdentityViolation(String),
    #[error("commutator {0} is not trivial")]
    NontrivialCommutator(String),
    #[error("no groupoid structure: {0}")]
    NoGroupoidStructure(String),
    #[error("not a 2-groupoid: {0}")]
    NotTwoGroupoid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("missing operation `{0}`")]
    MissingOperation(String),
    /// An induced map failed its defining equations. This never happens for
    /// valid inputs and indicates a bug.
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("unknown name `{0}`")]
    Unresolved(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
