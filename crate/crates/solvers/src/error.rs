use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Spectral(#[from] mhdlab_spectral::SpectralError),
    #[error("CFL violation: dt = {dt}, suggested dt <= {suggested}")]
    CflViolation { dt: f64, suggested: f64 },
    #[error("Mach number must be positive, got {0}")]
    NonPositiveMach(f64),
    #[error("approach to vacuum: min density {min_density} below floor {floor}")]
    VacuumApproach { min_density: f64, floor: f64 },
    #[error("numerical blow-up at t = {t}")]
    NumericalBlowup { t: f64 },
    #[error("field is not solenoidal: divergence residual {residual}")]
    NonSolenoidal { residual: f64 },
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("boundary contamination: horizon {horizon} exceeds wraparound {wraparound}")]
    BoundaryContamination { horizon: f64, wraparound: f64 },
    #[error("mismatched trajectories: {0}")]
    MismatchedTrajectories(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
