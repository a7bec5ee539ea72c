use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("basis is rank deficient: smallest Gram eigenvalue {min_eigenvalue:e}")]
    DegenerateBasis { min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("search box holds {points} points, limit is {limit}")]
    SearchBoxTooLarge { points: u128, limit: u128 },
    #[error("{qubits} qubits exceeds the simulation limit of {limit}")]
    TooManyQubits { qubits: usize, limit: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("penalty Hamiltonian is only defined for the one-hot encoding")]
    PenaltyNotApplicable,
    #[error("state is not normalized: squared norm {norm_sqr}")]
    Unnormalized { norm_sqr: f64 },
    #[error("all amplitudes underflowed; shift the folded energies by their minimum")]
    Underflow,
    #[error("target subspace is empty")]
    EmptyTarget,
    #[error("folded ground space does not coincide with the target subspace")]
    FoldMismatch,
    #[error("fidelity threshold not reached by tau = {tau}: achieved {fidelity}")]
    NotConverged { tau: f64, fidelity: f64 },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("linear solve failed (condition estimate {condition:e})")]
    SingularSystem { condition: f64 },
    #[error("folded energy rose for {steps} consecutive steps at step {at}")]
    Diverged { at: usize, steps: usize },
    #[error("norm drift {drift:e} exceeds tolerance; reduce the time step")]
    StepSize { drift: f64 },
    #[error("no solver run in the round converged")]
    RoundFailed,
    #[error("bound update would leave an empty interval: alpha {alpha}, beta {beta}")]
    DegenerateInterval { alpha: f64, beta: f64 },
    #[error("no eigenvalue found inside the search interval")]
    NoEigenvalueFound,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
