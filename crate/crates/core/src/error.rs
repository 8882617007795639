use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^H| = {0:e})")]
    NonHermitian(f64),
    #[error("trace {0} differs from 1")]
    NotUnitTrace(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("matrix entries do not form a {0}x{0} array")]
    BadShape(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("negative power {0} of a singular matrix")]
    SingularPower(f64),
    #[error("subsystem index {index} out of range for {count} subsystems")]
    BadSubsystem { index: usize, count: usize },
    #[error("invalid entropic order alpha = {0}")]
    InvalidAlpha(f64),
    #[error("invalid entropy kind: {0}")]
    InvalidKind(String),
    #[error("optimizer did not converge: {converged} of {starts} starts converged")]
    NoConvergence { converged: usize, starts: usize },
    #[error("no closed form is known for this kind: {0}")]
    UnsupportedKind(String),
    #[error("closed form is not valid in this parameter range: {0}")]
    OutOfClosedFormRange(String),
    #[error("chain length {0} must be even and at least 4")]
    BadSize(usize),
    #[error("exact diagonalization limited to 12 sites, got {0}")]
    TooLarge(usize),
    #[error("quadrature tolerance not met (estimated error {0:e})")]
    QuadratureFailure(f64),
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { got: usize, need: usize },
    #[error("curve has no interior maximum")]
    NoInteriorPeak,
    #[error("half height is not crossed on both sides of the peak")]
    HalfHeightNotBracketed,
    #[error("degenerate scaling fit (r^2 = {0})")]
    DegenerateFit(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("state file: {0}")]
    StateFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
