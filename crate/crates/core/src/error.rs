use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Gamma function pole at s = {0}")]
    GammaPole(f64),

    #[error("contour radius {0} outside (0, 1/2)")]
    RadiusOutOfRange(f64),

    #[error("node count {0} must be a power of two >= 128")]
    BadNodeCount(usize),

    #[error("series truncation too short at |z| = {modulus}: tail estimate {tail:e}")]
    TailBound { modulus: f64, tail: f64 },

    #[error("arg z = {arg} outside the sector ({lo}, {hi}) required by {what}")]
    SectorViolation {
        what: &'static str,
        arg: f64,
        lo: f64,
        hi: f64,
    },

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("line at angle {0} contains a Stokes ray")]
    InadmissibleLine(f64),

    #[error("resonant entry ({row}, {col}) of Phi_{order} has nonzero right-hand side")]
    InconsistentResonance { order: usize, row: usize, col: usize },

    #[error("singular matrix in {0}")]
    Singular(&'static str),

    #[error("{what} not constant across base points: spread {spread:e} > {tol:e}")]
    NotConstant { what: &'static str, spread: f64, tol: f64 },

    #[error("entry ({row}, {col}) = {value} is not within {tol:e} of an integer")]
    SnapFailure {
        row: usize,
        col: usize,
        value: String,
        tol: f64,
    },

    #[error("Euler pairing chi({row}, {col}) = {value} is not an integer")]
    NonIntegralEuler { row: usize, col: usize, value: String },

    #[error("degenerate eigenvector for eigenvalue {0}")]
    DegenerateEigenvector(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
