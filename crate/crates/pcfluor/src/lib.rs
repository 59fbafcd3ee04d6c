//! Emission spectra of a two-level atom coupled to a structured radiation
//! reservoir with memory.
//!
//! The library propagates Heisenberg-picture mean values and two-time
//! correlations of a (optionally laser-driven) two-level atom under a
//! weak-coupling closure, for reservoirs whose correlation function does not
//! decay instantaneously — the situation inside a photonic crystal, where the
//! photonic density of states has bands and gaps. From the correlations it
//! assembles emission spectra along three routes: a finite-observation-time
//! double convolution, a stationary factorized form, and the Markov formula.
//! Emission into gap frequencies is evanescent; the detector-distance filter
//! that suppresses it is modeled by an analytic frequency-domain kernel.
//!
//! Modules:
//! - [`algebra`]: dressed two-level operator algebra and free rotation
//! - [`kernel`]: reservoir memory kernels α(τ) and their transforms
//! - [`spatial`]: the distance-dependent detector kernel 𝒮(ω)
//! - [`grid`]: uniform time grids
//! - [`dynamics`]: one-time and two-time evolution equations
//! - [`spectrum`]: the three spectrum pipelines
//! - [`oracle`]: exact one-excitation benchmark solver
//! - [`config`], [`preset`], [`run`]: the user-facing experiment surface

pub mod algebra;
pub mod config;
pub mod dynamics;
pub mod grid;
pub mod kernel;
pub mod oracle;
pub mod preset;
pub mod run;
pub mod spatial;
pub mod special;
pub mod spectrum;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate dressing: rabi coupling and detuning are both zero (undriven atoms use the spontaneous-emission path)")]
    DegenerateDressing,

    #[error("negative Rabi coupling: {0}")]
    NegativeRabi(f64),

    #[error("operator is not hermitian (max asymmetry {0:.3e})")]
    NonHermitian(f64),

    #[error("unknown bare operator name: {0}")]
    UnknownOperator(String),

    #[error("time {t} is not a node of the grid (dt = {dt})")]
    OffGrid { t: f64, dt: f64 },

    #[error("the Markov kernel has no pointwise value; use the analytic Markov path (memory coefficient = gamma)")]
    MarkovPointwise,

    #[error("invalid kernel parameter: {0}")]
    KernelParameter(String),

    #[error("tabulated kernel: {0}")]
    TabulatedKernel(String),

    #[error("spectral density window {window} too short for frequency resolution {resolution}")]
    WindowTooShort { window: f64, resolution: f64 },

    #[error("detector distance must be positive, got {0}")]
    NonPositiveDistance(f64),

    #[error("empty symmetry-point list for Q")]
    EmptySymmetryPoints,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("initial state norm {0} is not 1")]
    UnnormalizedState(f64),

    #[error("numeric overflow/NaN in {context} at step {step}")]
    NumericBlowup { context: &'static str, step: usize },

    #[error("steady state not reached before 0.6 T = {limit}; increase the horizon T")]
    SteadyStateNotReached { limit: f64 },

    #[error("two-time origin index {t2} exceeds grid ({n})")]
    OriginPastHorizon { t2: usize, n: usize },

    #[error("spectrum imaginary residue {residue:.3e} exceeds {allowed:.3e}; hermitian completion is broken")]
    ImaginaryResidue { residue: f64, allowed: f64 },

    #[error("finite-T pipeline does not accept a Markov kernel; use the Markov pipeline")]
    MarkovFiniteT,

    #[error("bath discretization: {0}")]
    BathDiscretization(String),

    #[error("one-excitation norm drift {0:.3e} exceeds 1e-8")]
    NormDrift(f64),

    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error("config validation: {0}")]
    ConfigValidation(String),

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("sweep parameter '{0}' is not a recognized config path")]
    UnknownSweepParameter(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{module}: {source}")]
    Context {
        module: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the originating module name, for CLI reporting.
    pub fn in_module(self, module: &'static str) -> Error {
        Error::Context {
            module,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
