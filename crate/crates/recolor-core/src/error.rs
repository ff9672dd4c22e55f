use thiserror::Error;

/// Errors shared across the library.
///
/// `Precondition` covers domain rejections (a caller violated a documented
/// hypothesis); the remaining variants name specific structural problems so
/// callers and the CLI can report them precisely.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("graph is disconnected: vertices {a} and {b} lie in different components")]
    Disconnected { a: usize, b: usize },

    #[error("vertex {w} is unreachable from {v}")]
    Unreachable { v: usize, w: usize },

    #[error("colour {colour} is not in the list of vertex {vertex}")]
    ColourNotInList { vertex: usize, colour: u32 },

    #[error("colour {colour} is already used on neighbour {neighbour} of vertex {vertex}")]
    ColourOnNeighbour {
        vertex: usize,
        colour: u32,
        neighbour: usize,
    },

    #[error("step recolours vertex {vertex} to its current colour (no-op steps are invalid)")]
    NoOpStep { vertex: usize },

    #[error("state-space budget exceeded: estimated {estimate} states > budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
