use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A model parameter is outside its admissible domain.
    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    /// The requested operation only supports a restricted class of models.
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    /// The winding number is ill-defined because the spectrum closes on the
    /// sampled grid.
    #[error("gapless model: |E(k)| = {min_abs_e:.3e} at k = {k:.6} is below tol = {tol:.1e}")]
    GaplessModel { k: f64, min_abs_e: f64, tol: f64 },

    /// An exceptional point lies (numerically) on the h(k) curve, so the
    /// enclosure count is undefined.
    #[error("degenerate geometry: exceptional point within {0:.1e} of the h(k) curve")]
    DegenerateGeometry(f64),

    /// The return amplitude vanishes, so its phase is undefined.
    #[error("undefined phase: |G(k,t)| = {0:.3e} at an exact critical point")]
    UndefinedPhase(f64),

    /// Left and right eigenvectors coalesce at an exceptional point.
    #[error("eigenvector coalescence: |E| = {0:.3e} is below the degeneracy threshold")]
    EpDegeneracy(f64),

    /// The DTOP is undefined at a critical time.
    #[error("t = {t:.6} is within {tol:.1e} of the critical time {t_c:.6}")]
    CriticalTime { t: f64, t_c: f64, tol: f64 },

    /// Adjacent phase increments stayed above pi/2 after the allowed grid
    /// doublings.
    #[error("insufficient grid: phase increment {increment:.3} > pi/2 at n_k = {n_k}")]
    InsufficientGrid { n_k: usize, increment: f64 },

    /// M(t) - I lost positivity: the dilation window exceeds what the chosen
    /// metric scale can support.
    #[error("dilation window exceeded: m0 = {m0} too small, need m0 > {min_m0:.3}")]
    WindowExceeded { m0: f64, min_m0: f64 },

    /// U(k,t) is numerically non-invertible.
    #[error("singular evolution operator: |det U| = {0:.3e}")]
    SingularEvolution(f64),

    /// The dilated Hamiltonian failed its Hermiticity check.
    #[error("Hermiticity violation: residual {residual:.3e} > {tol:.1e}")]
    HermiticityViolation { residual: f64, tol: f64 },

    /// RK4 norm drift exceeded tolerance; the step size is too coarse.
    #[error("step size too coarse: norm drift {0:.3e} > 1e-6")]
    StepSize(f64),

    /// A trace is too short to analyze.
    #[error("degenerate trace: need at least {needed} samples, got {got}")]
    DegenerateTrace { needed: usize, got: usize },

    /// A precondition on a numeric argument failed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
