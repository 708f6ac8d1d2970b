//! Quasi-phase-matching engineering for periodically poled KTP.
//!
//! qpmlab computes which spontaneous parametric down-conversion (SPDC)
//! processes a periodically poled crystal supports under a given pump
//! wavelength, poling order and temperature, and turns the answers into
//! machine-readable data: degenerate cross points, poling-period curves,
//! temperature tuning curves, theoretical sinc² spectra with FWHM, and joint
//! spectral intensity grids.
//!
//! The crate is organized around five modules:
//!
//! * [`dispersion`] — Sellmeier index models with thermal corrections; the
//!   shipped `ktp.json` data describes a flux-grown KTP crystal.
//! * [`numerics`] — deterministic bracketing, bisection and FWHM extraction.
//! * [`qpm`] — phase mismatch, pump/period solvers, grating Fourier
//!   coefficients, effective nonlinearities.
//! * [`spdc`] — tuning curves, degeneracy temperatures, spectra and joint
//!   spectral intensities.
//! * [`cli`] — the `qpmlab` command-line front end writing reproducible
//!   CSV/JSON data files.
//!
//! Wavelengths are vacuum wavelengths in µm inside the library (the CLI
//! accepts nm); temperatures are °C.
//!
//! ```
//! use qpmlab::dispersion::CrystalSpec;
//! use qpmlab::qpm::{solve_degenerate_pump, ProcessType, QpmProcess};
//!
//! let crystal = CrystalSpec::ktp(); // 10 mm long, Λ = 10 µm
//! let process = QpmProcess::new(ProcessType::TypeII, 1).unwrap();
//! let pump = solve_degenerate_pump(&crystal, process, 25.0, (0.39, 0.42)).unwrap();
//! assert!((pump - 0.40463).abs() < 5e-4); // degenerate pair at 2·pump
//! ```

// `!(a < b)` style guards are load-bearing: they reject NaN, which the
// un-negated comparison would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dispersion;
pub mod error;
pub mod numerics;
pub mod qpm;
pub mod spdc;

pub use error::{Error, Result};
