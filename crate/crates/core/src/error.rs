use thiserror::Error;

/// Errors produced by the exact-arithmetic layer and the geometric builders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter space mismatch")]
    ParamSpaceMismatch,

    #[error("missing parameter `{0}` in assignment")]
    MissingParameter(String),

    #[error("invalid parameter name `{0}`")]
    InvalidParamName(String),

    #[error("duplicate parameter name `{0}`")]
    DuplicateParamName(String),

    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown identifier `{name}` at {line}:{col}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("dimension mismatch")]
    DimensionMismatch,

    #[error("degenerate metric")]
    DegenerateMetric,

    #[error("metric with symbolic determinant has no polynomial inverse")]
    NonConstantDeterminant,

    #[error("input tensor is not alternating")]
    NotAlternating,

    #[error("tensor does not satisfy the symmetries of its role `{0}`")]
    RoleViolation(&'static str),

    #[error("structure is not non-Abelian")]
    NotNonAbelian,

    #[error("phiKT-connection does not exist: structure is not in class F3+F7")]
    NoPhiKtConnection,

    #[error("input not in class {0}")]
    ClassGate(&'static str),

    #[error("naturality violation: {0} is not D-parallel")]
    NaturalityViolation(&'static str),

    #[error("spec file error at line {line}: {msg}")]
    SpecFile { line: usize, msg: String },

    #[error("structure validation failed: {0}")]
    InvalidStructure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
