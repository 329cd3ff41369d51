use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("q = {0} outside the supported range [1e-6, 1 - 1e-6]")]
    InvalidBase(f64),
    #[error("series did not converge within {0} terms")]
    NonConvergent(usize),
    #[error("denominator parameter {param} hits a pole at index {index}")]
    DenominatorPole { param: String, index: usize },
    #[error("family {0} has no three-term recurrence")]
    NoRecurrence(String),
    #[error("family {0} has no generating function")]
    NoGeneratingFunction(String),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("|t| = {t} outside the convergence disc of radius {radius}")]
    OutsideDisc { t: f64, radius: f64 },
    #[error("normalizer (-t1 t2/q; q)_inf vanishes (t1 t2 = -q^(1-{0}))")]
    PoleInNormalizer(usize),
    #[error("integrand does not decay on the real line (last window R = {0:e})")]
    NonDecayingIntegrand(f64),
    #[error("discrete tail bound failed: {0}")]
    TailBoundFailure(String),
    #[error("adaptive quadrature exceeded {0} panels")]
    MaxPanelsExceeded(usize),
    #[error("circle rule exceeded {0} nodes")]
    MaxNodesExceeded(usize),
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
