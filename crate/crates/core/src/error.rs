use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is singular at z = {re} + {im}i")]
    Singular { re: f64, im: f64 },
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("n = {n} is below the admissible threshold n0 = {n0}")]
    NTooSmall { n: usize, n0: usize },
    #[error("half-lines are parallel")]
    Parallel,
    #[error("half-lines do not meet at positive parameters")]
    NoPositiveSolution,
    #[error("zero input")]
    ZeroInput,
    #[error("operator is not Ritt_E: {0}")]
    NotRittE(String),
    #[error("no admissible angle theta below pi/2")]
    NoAdmissibleTheta,
    #[error("intermediate points failed to cover gap {gap}: {reason}")]
    CoverageFailure { gap: usize, reason: String },
    #[error("function does not vanish on E: {0}")]
    NotH0(String),
    #[error("no contour keeps the required clearance from the spectrum")]
    SpectralClearance,
    #[error("spectrum is not enclosed by the polygon: {0}")]
    SpectrumNotEnclosed(String),
    #[error("sample point lies on an integration path")]
    SampleOnPath,
    #[error("interpolation nodes are ill-conditioned (condition {0:e})")]
    IllConditionedNodes(f64),
    #[error("rational function has a pole in the closed sector")]
    PoleInSector,
    #[error("transfer identity residual {0:e} exceeds tolerance")]
    TransferViolation(f64),
    #[error("power sequences diverge: {0}")]
    DivergentSequences(String),
    #[error("exact Rademacher enumeration limited to 20 vectors, got {0}")]
    TooManyExact(usize),
    #[error("sectorial family floor check failed: inf |h| = {min_h:e} < {floor:e}")]
    FloorFailure { min_h: f64, floor: f64 },
    #[error("sectorial family is invalid: {0}")]
    FamilyInvalid(String),
    #[error("operator is not contractively regular (regular norm {0})")]
    NotContractive(f64),
    #[error("E is not a union of root-of-unity groups: {0}")]
    UnrealizableE(String),
    #[error("spectrum computation failed: {0}")]
    SpectrumFailed(String),
    #[error("nothing to render")]
    EmptyScene,
}

pub type Result<T> = std::result::Result<T, Error>;
