use thiserror::Error;

/// Errors raised by graph construction, parsing and the decision procedures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("order {order} exceeds the maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid matrix: {0}")]
    Matrix(String),
    #[error("square root of negative value {0}")]
    NegativeSqrt(String),
    #[error("edge string: {0}")]
    Parse(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("rooted graph has no roots")]
    NoRoots,
    #[error("malformed extension: {0}")]
    MalformedExtension(String),
    #[error("smallest eigenvalue lies between the rational bounds of lambda*")]
    Undecidable,
    #[error("square-root bound too loose to decide; retry with more iterations")]
    Inconclusive,
    #[error("no l0 in 0..=6 makes the extension leave G(2)")]
    Ell0NotFound,
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("graphs with more than one witness: {0}")]
    WitnessNotUnique(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
