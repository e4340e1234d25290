use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionFailure {
    None,
    Ambiguous(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generalized tangent has a pole at r = {r}")]
    Pole { r: f64 },
    #[error("r = {r} is outside the open radial domain")]
    Domain { r: f64 },
    #[error("arctan branch point at z = ±i")]
    BranchPoint,
    #[error("polynomial {what} exceeds degree {max}")]
    DegreeBound { what: &'static str, max: usize },
    #[error("no value of k makes sigma_3 a perfect square in the coefficient field")]
    NoBranch,
    #[error("discriminant condition is satisfied identically; k is not determined")]
    IndeterminateBranch,
    #[error("branch selection failed: {0:?}")]
    Selection(SelectionFailure),
    #[error("Rodrigues construction only supports sigma = 1 + z^2")]
    UnsupportedSigma,
    #[error("Pearson weight exponent is not a real rational")]
    UnsupportedWeight,
    #[error("curvature {0} is not finite")]
    Curvature(f64),
    #[error("nuclear charge {0} must be positive and finite")]
    Charge(f64),
    #[error("operation is undefined at zero curvature")]
    FlatCurvature,
    #[error("invalid quantum numbers n = {n}, l = {l}")]
    QuantumNumbers { n: u32, l: u32 },
    #[error("no bound state with n = {n} at this curvature")]
    NoBoundState { n: u32 },
    #[error("radial index {n_r} out of range for n = {n}")]
    Range { n: u32, n_r: u32 },
    #[error("lowering operator denominator vanishes for n = {n}, n_r = {n_r}")]
    LadderDegenerate { n: u32, n_r: u32 },
    #[error("imaginary residue {im:e} against real part {re:e} at r = {r}")]
    ImaginaryResidue { r: f64, re: f64, im: f64 },
    #[error("quadrature missed tolerance: estimate {estimate:e}, error {error:e}")]
    QuadratureFailure { estimate: f64, error: f64 },
    #[error("invalid grid: {0}")]
    Grid(&'static str),
    #[error("eigenvalue extrapolation did not settle: change {change:e}")]
    Convergence { change: f64 },
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::Domain { .. } => "domain",
            Error::BranchPoint => "branch_point",
            Error::DegreeBound { .. } => "degree_bound",
            Error::NoBranch => "no_branch",
            Error::IndeterminateBranch => "indeterminate_branch",
            Error::Selection(_) => "selection",
            Error::UnsupportedSigma => "unsupported_sigma",
            Error::UnsupportedWeight => "unsupported_weight",
            Error::Curvature(_) => "curvature",
            Error::Charge(_) => "charge",
            Error::FlatCurvature => "flat_curvature",
            Error::QuantumNumbers { .. } => "quantum_numbers",
            Error::NoBoundState { .. } => "no_bound_state",
            Error::Range { .. } => "range",
            Error::LadderDegenerate { .. } => "ladder_degenerate",
            Error::ImaginaryResidue { .. } => "imaginary_residue",
            Error::QuadratureFailure { .. } => "quadrature_failure",
            Error::Grid(_) => "grid",
            Error::Convergence { .. } => "convergence",
        }
    }
}
