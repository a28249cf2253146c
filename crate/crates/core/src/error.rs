//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while setting up or solving the model.
///
/// Parameter constructors reject invalid inputs up front, so numerical
/// routines only ever see well-formed data; the remaining variants report
/// genuine numerical failures (non-convergence, insufficient sampling).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("particle count must be at least 2, got {0}")]
    ParticleCount(usize),

    #[error("lambda must be finite and non-negative, got {0}")]
    Lambda(f64),

    #[error("spin s = N/2 must be finite and at least 1, got {0}")]
    Spin(f64),

    #[error("angular frequency must be positive and finite, got {0} rad/s")]
    Frequency(f64),

    #[error("amplitude vector has {len} entries but the operator dimension is {dim}")]
    DimensionMismatch { len: usize, dim: usize },

    #[error("amplitudes are not normalized: |sum A_n^2 - 1| = {defect:.3e}")]
    NotNormalized { defect: f64 },

    #[error("{what} is not finite")]
    NotFinite { what: &'static str },

    #[error("residual tolerance must be positive and finite, got {0}")]
    Tolerance(f64),

    #[error(
        "eigensolver did not converge within {steps} steps: \
         residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NoConvergence {
        steps: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("requested {k} eigenpairs but the valid range is 1..={max}")]
    EigenpairCount { k: usize, max: usize },

    #[error("dense oracle is limited to dimension {limit}, got {dim}")]
    OracleDimension { dim: usize, limit: usize },

    #[error("imbalance coordinate {0} lies outside [-1, 1]")]
    ImbalanceRange(f64),

    #[error("packet width must be positive and finite, got {0}")]
    Width(f64),

    #[error("effective mass is singular at |x| = 1")]
    MassSingular,

    #[error("operation requires the double-well regime lambda > 1, got lambda = {0}")]
    RequiresDoubleWell(f64),

    #[error("operation requires lambda >= 1, got lambda = {0}")]
    RequiresBarrier(f64),

    #[error("lambda = 1 is the degenerate transition point: harmonic envelope quantities are undefined there")]
    DegeneratePoint,

    #[error("envelope support is empty: no bin reaches 1e-3 of the envelope peak")]
    EmptySupport,

    #[error("temperature must be positive, got {0} K")]
    TemperatureNotPositive(f64),

    #[error("temperature must be non-negative, got {0} K")]
    TemperatureNegative(f64),

    #[error("damping rate must be finite and non-negative, got {0} rad/s")]
    Damping(f64),

    #[error(
        "rate formula is valid only above the crossover temperature: \
         T = {t:.3e} K is not above T_c = {t_c:.3e} K"
    )]
    BelowCrossover { t: f64, t_c: f64 },

    #[error(
        "sampled wavefunction does not decay within its range: \
         edge-to-peak amplitude ratio {0:.3e} exceeds 1e-4"
    )]
    TailMass(f64),

    #[error("sampled wavefunction needs at least {min} points, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("sample spacing must be positive and finite, got {0}")]
    SampleSpacing(f64),

    #[error("phase-space grid needs at least 16 points per axis, got {nx} x {np}")]
    GridTooCoarse { nx: usize, np: usize },

    #[error("mass must be positive and finite, got {0} kg")]
    Mass(f64),

    #[error("scattering length must be negative (attractive interaction), got {0} m")]
    ScatteringSign(f64),

    #[error("metastability threshold must be positive and finite, got {0}")]
    Threshold(f64),

    #[error("barrier height must be non-negative and finite, got {0}")]
    BarrierHeight(f64),

    #[error("damping factor alpha must lie in (0, 1], got {0}")]
    Alpha(f64),

    #[error("length must be positive and finite, got {0} m")]
    Length(f64),

    #[error("interaction strength must be non-negative and finite, got {0} J")]
    Interaction(f64),
}
