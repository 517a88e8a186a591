use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("result overflows: {0}")]
    Overflow(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParameter(String),

    #[error("argument {re}{im:+}i lies on the branch cut [1, inf)")]
    BranchCut { re: f64, im: f64 },

    #[error("connection formula near-degenerate and continuation failed: {0}")]
    NearDegenerate(String),

    #[error("no convergent Thomae image for 3F2(1): {0}")]
    NoConvergentForm(String),

    #[error("tolerance not met: estimate {estimate:e} exceeds {required:e}")]
    ToleranceNotMet { estimate: f64, required: f64 },

    #[error("series did not converge within {0} terms")]
    SeriesDivergence(usize),

    #[error("sequence decays too slowly for truncation at {0}")]
    SlowDecay(i64),

    #[error("grids differ between operands")]
    GridMismatch,

    #[error("finite-difference step too large: levels disagree by {0:e}")]
    StepTooLarge(f64),

    #[error("index {index} out of range (count {count})")]
    Index { index: i64, count: usize },

    #[error("degenerate spectral parameter mu = {re}{im:+}i")]
    DegenerateMu { re: f64, im: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
