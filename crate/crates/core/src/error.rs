use thiserror::Error;

/// Errors produced by the library. Vertex references are rendered with their
/// external names so messages are meaningful without the index mapping.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),

    #[error("duplicate vertex identifier {0:?}")]
    DuplicateVertex(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("graph is disconnected: {0:?} and {1:?} lie in different components")]
    Disconnected(String, String),

    #[error("no path from {0:?} to {1:?}")]
    Unreachable(String, String),

    #[error("geodesic from {from:?} to {to:?} is not unique: {first:?} and {second:?}")]
    AmbiguousGeodesic {
        from: String,
        to: String,
        first: Vec<String>,
        second: Vec<String>,
    },

    #[error("graph is not geodetic: {from:?} and {to:?} are joined by {first:?} and {second:?}")]
    NotGeodetic {
        from: String,
        to: String,
        first: Vec<String>,
        second: Vec<String>,
    },

    #[error("not a geodesic: {0}")]
    NotGeodesic(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("horizon too short: {0}")]
    HorizonTooShort(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid group specification: {0}")]
    InvalidGroup(String),

    #[error("unknown generator token {0:?}")]
    UnknownToken(String),

    #[error("rule {lhs} -> {rhs} is not length-reducing")]
    NotLengthReducing { lhs: String, rhs: String },

    #[error("rewriting system is not certified confluent")]
    NotConfluent,

    #[error("parse error: {0}")]
    Parse(String),

    /// A check that cannot fail under the operation's preconditions did fail.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
