use homkoszul_core::Error as CoreError;
use thiserror::Error;

/// Where in a presentation document a problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub relation: usize,
    pub term: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "relation {}, term {}", self.relation + 1, self.term + 1)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported document version {0}")]
    UnsupportedVersion(u32),
    #[error("invalid field `{0}`: expected QQ or GF:p")]
    BadField(String),
    #[error("arrow {index} (`{name}`): {message}")]
    BadArrow { index: usize, name: String, message: String },
    #[error("arrow {index}: duplicate name `{name}`")]
    DuplicateArrow { index: usize, name: String },
    #[error("{at}: unknown arrow `{name}`")]
    UnknownArrow { at: Location, name: String },
    #[error("{at}: path has length {len}, expected s = {s}")]
    BadDegree { at: Location, len: usize, s: usize },
    #[error("{at}: {message}")]
    BadEndpoint { at: Location, message: String },
    #[error("{at}: `{literal}` is not an exact coefficient")]
    BadCoefficient { at: Location, literal: String },
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for an exceeded resource bound.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::ResourceBound { .. }) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
