use thiserror::Error;

/// Errors raised by the crystal machinery.
///
/// Most variants signal a broken invariant rather than bad user input: the
/// identities checked here are theorems, so a conflict means a bug or a
/// corrupted table.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported Cartan type {family}{rank}; supported: {supported}")]
    UnsupportedType {
        family: String,
        rank: usize,
        supported: &'static str,
    },

    #[error("Cartan datum failed validation: {0}")]
    InvalidDatum(String),

    #[error("index {index} is not in {set}")]
    BadIndex { index: usize, set: &'static str },

    #[error("weight {0} is not of level zero")]
    NotLevelZero(String),

    #[error("weight {0} is not level-zero dominant")]
    NotDominant(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("time {0} lies outside [0, 1]")]
    TimeOutOfRange(String),

    #[error("orbit of {weight} exceeded the size cap {cap}")]
    OrbitTooLarge { weight: String, cap: usize },

    #[error("crystal exceeded the element cap {cap} ({elements} elements, frontier {frontier})")]
    CapExceeded {
        cap: usize,
        elements: usize,
        frontier: usize,
    },

    #[error("crystal graph is corrupt: {0}")]
    GraphCorrupt(String),

    #[error("crystals are not isomorphic: {0}")]
    NotIsomorphic(String),

    #[error("consistency conflict: {0}")]
    Conflict(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
