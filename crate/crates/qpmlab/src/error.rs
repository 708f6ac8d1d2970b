//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Which side of a sampled curve failed to close.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Wavelength query outside a dispersion model's validity range.
    #[error("wavelength {wavelength_um} um is outside the {axis} validity range [{min_um}, {max_um}] um")]
    WavelengthOutOfRange {
        axis: &'static str,
        wavelength_um: f64,
        min_um: f64,
        max_um: f64,
    },

    /// Malformed dispersion model or crystal data.
    #[error("invalid dispersion model: {0}")]
    InvalidModel(String),

    /// Poling orders must be odd: even harmonics of a 50% duty grating carry
    /// no nonlinearity.
    #[error("poling order {0} is even; a 50% duty grating has G_m = 0 for even m")]
    EvenPolingOrder(u32),

    /// The m = 0 Fourier term is the DC component, not a grating order.
    #[error("m = 0 is the DC term of the poling function, not a usable grating order")]
    FourierDcTerm,

    /// A bracketing precondition failed.
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),

    /// Bisection hit its iteration cap before reaching the requested tolerance.
    #[error(
        "bisection did not converge after {iterations} iterations; last interval [{lo}, {hi}]"
    )]
    Convergence { iterations: usize, lo: f64, hi: f64 },

    /// A solver that expects a root found none in its search interval.
    #[error("no root of {what} in [{lo}, {hi}]")]
    NoRoot { what: String, lo: f64, hi: f64 },

    /// A solver that expects a unique root found several; candidates listed
    /// rather than silently picking one.
    #[error("{what} has {} candidate roots in the search interval: {candidates:?}", candidates.len())]
    MultipleRoots { what: String, candidates: Vec<f64> },

    /// A sampled curve never drops below half maximum on one side.
    #[error("curve does not fall below half maximum on the {side} side; widen the window")]
    OpenSupport { side: Side },

    /// No positive poling period can compensate the material mismatch.
    #[error("no quasi-phase-matching with a positive poling period at pump {pump_um} um: k_p - k_s - k_i = {mismatch} rad/um <= 0")]
    InfeasiblePeriod { pump_um: f64, mismatch: f64 },

    /// A joint spectral grid evaluated to zero everywhere.
    #[error("joint spectral intensity is zero over the whole grid; the window misses the phase-matched region")]
    EmptySupport,

    /// Miscellaneous precondition violation.
    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}
