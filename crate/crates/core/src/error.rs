use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("undefined abbreviation `{0}`")]
    UndefinedAbbreviation(String),
    #[error("generator index {index} out of range (group has {count} generators)")]
    GeneratorOutOfRange { index: i32, count: usize },
    #[error("presentation has no generators")]
    EmptyPresentation,
    #[error("coset enumeration exceeded the budget of {max_cosets} live cosets")]
    BudgetExceeded { max_cosets: usize },
    #[error("parameter out of range for {family}: {condition}")]
    ParameterRange { family: String, condition: String },
    #[error("no admissible j for type (15) at p = {p}")]
    NoAdmissibleJ { p: u64 },
    #[error("group of order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("invalid central product pairing: {0}")]
    InvalidPairing(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("no Rédei parameterization found for a minimal non-abelian group of order {0}")]
    NoRedeiParameterization(usize),
    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),
    #[error("time limit exceeded")]
    Timeout,
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
