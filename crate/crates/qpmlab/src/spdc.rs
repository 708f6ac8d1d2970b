//! Temperature-dependent SPDC observables: signal/idler tuning, degeneracy
//! temperatures, theoretical sinc² spectra with FWHM, and joint spectral
//! intensity grids.
//!
//! The collinear biphoton spectrum of a crystal of length L is
//! S(λ_s) ∝ sinc²(Δk·L/2); the joint spectrum over independent (λ_s, λ_i) is
//! |α(ω_s + ω_i)·sinc(Δk·L/2)|² with a Gaussian pump envelope α. Energy
//! conservation is exact inside the 1-D spectrum (the idler is eliminated)
//! and soft inside the joint spectrum (the envelope enforces it).

use crate::dispersion::CrystalSpec;
use crate::error::{Error, Result};
use crate::numerics;
use crate::qpm::{self, QpmProcess};

/// Speed of light in µm/s; wavelengths are vacuum wavelengths.
pub const SPEED_OF_LIGHT_UM_PER_S: f64 = 2.99792458e14;

/// Signal/idler pairs closer than this (µm) count as spectrally degenerate.
pub const DEGENERACY_SPLIT_TOL_UM: f64 = 1e-4;

/// Bisection tolerance for temperature solves, °C.
pub const TEMPERATURE_X_TOL_C: f64 = 1e-3;

/// FWHM → Gaussian σ divisor, 2√(2 ln 2).
pub const FWHM_TO_SIGMA: f64 = 2.354_820_045_030_949_3;

/// Angular frequency (rad/s) of a vacuum wavelength in µm.
pub fn angular_frequency(lambda_um: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_UM_PER_S / lambda_um
}

/// Inverse of [`angular_frequency`].
pub fn vacuum_wavelength(omega_rad_per_s: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT_UM_PER_S / omega_rad_per_s
}

/// FWHM bandwidth (nm) equivalent to a laser linewidth in MHz at a given
/// center wavelength: Δλ = λ²·Δν/c.
pub fn linewidth_mhz_to_nm(linewidth_mhz: f64, center_um: f64) -> f64 {
    center_um * center_um * (linewidth_mhz * 1e6) / SPEED_OF_LIGHT_UM_PER_S * 1e3
}

// ---------------------------------------------------------------------------
// tuning
// ---------------------------------------------------------------------------

/// Where the signal/idler pair sits at one (pump, temperature) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TuningPoint {
    /// Signal and idler coincide at 2λ_p (within [`DEGENERACY_SPLIT_TOL_UM`]).
    Degenerate { wavelength_um: f64 },
    /// Non-degenerate pair, signal = shorter arm by convention.
    Split { signal_um: f64, idler_um: f64 },
    /// No phase-matched pair at this temperature.
    OutOfRange,
}

impl TuningPoint {
    /// (signal, idler) when the process phase-matches, `None` otherwise.
    pub fn signal_idler(&self) -> Option<(f64, f64)> {
        match *self {
            TuningPoint::Degenerate { wavelength_um } => Some((wavelength_um, wavelength_um)),
            TuningPoint::Split {
                signal_um,
                idler_um,
            } => Some((signal_um, idler_um)),
            TuningPoint::OutOfRange => None,
        }
    }
}

/// Kinematically admissible window for the signal-slot wavelength: above the
/// pump, inside the signal axis validity, and with the idler inside its own.
fn signal_scan_window(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
) -> Result<(f64, f64)> {
    let (_, ax_s, ax_i) = proc.process.axes();
    let [s_lo, s_hi] = crystal.model(ax_s).valid_range_um;
    let [_, i_hi] = crystal.model(ax_i).valid_range_um;
    let mut lo = s_lo.max(lambda_p_um * (1.0 + 1e-6));
    // idler below its upper validity bound requires λs at or above this
    if 1.0 / lambda_p_um > 1.0 / i_hi {
        lo = lo.max(1.0 / (1.0 / lambda_p_um - 1.0 / i_hi));
    }
    let hi = s_hi;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "no admissible signal window for pump {lambda_p_um} um"
        )));
    }
    Ok((lo, hi))
}

/// Every phase-matched (signal, idler) pair at this pump and temperature,
/// each normalized to signal ≤ idler, ordered nearest-degenerate first.
/// Exchange-mirror duplicates (same-axis processes) are merged.
pub fn signal_idler_pairs(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    temperature_c: f64,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = signal_scan_window(crystal, proc, lambda_p_um)?;
    let deg = 2.0 * lambda_p_um;
    let f = |ls: f64| {
        qpm::phase_mismatch(crystal, proc, lambda_p_um, ls, temperature_c).unwrap_or(f64::NAN)
    };

    // coarse sweep of the whole window plus a fine sweep near degeneracy,
    // where same-axis processes produce closely spaced mirror roots
    let fine_lo = (deg - 0.05).max(lo);
    let fine_hi = (deg + 0.05).min(hi);
    let mut brackets = Vec::new();
    let mut segment = |a: f64, b: f64, n: usize| -> Result<()> {
        if a < b {
            brackets.extend(numerics::scan_brackets(f, (a, b), n)?.brackets);
        }
        Ok(())
    };
    if fine_lo < fine_hi {
        segment(lo, fine_lo, 3001)?;
        segment(fine_lo, fine_hi, 4001)?;
        segment(fine_hi, hi, 3001)?;
    } else {
        segment(lo, hi, 6001)?;
    }

    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for b in &brackets {
        let root = numerics::bisect(f, b, qpm::WAVELENGTH_X_TOL_UM)?;
        let partner = qpm::idler_wavelength(lambda_p_um, root);
        let pair = (root.min(partner), root.max(partner));
        if !pairs
            .iter()
            .any(|q| (q.0 - pair.0).abs() < 1e-5 && (q.1 - pair.1).abs() < 1e-4)
        {
            pairs.push(pair);
        }
    }
    pairs.sort_by(|a, b| {
        let da = (a.0 - deg).abs() + (a.1 - deg).abs();
        let db = (b.0 - deg).abs() + (b.1 - deg).abs();
        da.partial_cmp(&db).unwrap()
    });
    Ok(pairs)
}

/// The tuning-curve point at one temperature: the phase-matched pair nearest
/// degeneracy, collapsed to `Degenerate` when the split is below tolerance.
///
/// When the grid scan finds no pair, a tangency test at 2λ_p distinguishes an
/// unresolved (sub-tolerance) degenerate touch from a genuinely unmatched
/// temperature: with f(λ) ≈ f(2λ_p) + ½f″·(λ−2λ_p)², a root split below
/// tolerance requires |f(2λ_p)| ≤ |f″|·(tol/2)²/2.
pub fn tuning_point(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    temperature_c: f64,
) -> Result<TuningPoint> {
    let pairs = signal_idler_pairs(crystal, proc, lambda_p_um, temperature_c)?;
    let deg = 2.0 * lambda_p_um;
    if let Some(&(s, i)) = pairs.first() {
        if i - s <= DEGENERACY_SPLIT_TOL_UM {
            return Ok(TuningPoint::Degenerate { wavelength_um: deg });
        }
        return Ok(TuningPoint::Split {
            signal_um: s,
            idler_um: i,
        });
    }
    let g0 = match qpm::phase_mismatch(crystal, proc, lambda_p_um, deg, temperature_c) {
        Ok(v) => v,
        Err(_) => return Ok(TuningPoint::OutOfRange),
    };
    let h = 5e-4;
    let fp = qpm::phase_mismatch(crystal, proc, lambda_p_um, deg + h, temperature_c);
    let fm = qpm::phase_mismatch(crystal, proc, lambda_p_um, deg - h, temperature_c);
    if let (Ok(fp), Ok(fm)) = (fp, fm) {
        let curvature = (fp - 2.0 * g0 + fm) / (h * h);
        let threshold = curvature.abs() * (DEGENERACY_SPLIT_TOL_UM / 2.0).powi(2) / 2.0 + 1e-10;
        if g0.abs() <= threshold {
            return Ok(TuningPoint::Degenerate { wavelength_um: deg });
        }
    }
    Ok(TuningPoint::OutOfRange)
}

/// Temperature at which the degenerate process phase-matches, to
/// [`TEMPERATURE_X_TOL_C`]. No crossing is an infeasibility error; several
/// crossings are listed rather than picked from.
pub fn degenerate_temperature(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    t_range_c: (f64, f64),
) -> Result<f64> {
    let g = |t: f64| qpm::degenerate_mismatch(crystal, proc, lambda_p_um, t).unwrap_or(f64::NAN);
    numerics::refine_unique_root(
        g,
        t_range_c,
        721,
        TEMPERATURE_X_TOL_C,
        &format!("degenerate Δk for {proc} at pump {lambda_p_um} um vs temperature"),
    )
}

/// Signal/idler center wavelengths against crystal temperature at fixed pump.
#[derive(Debug, Clone)]
pub struct TuningCurve {
    pub process: QpmProcess,
    pub pump_um: f64,
    pub points: Vec<(f64, TuningPoint)>,
    /// Degeneracy temperature inside the sampled range, when one exists.
    pub degenerate_temperature_c: Option<f64>,
}

/// Samples [`tuning_point`] over `[t_lo, t_hi]` with the given step (°C).
pub fn tuning_curve(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    t_range_c: (f64, f64),
    step_c: f64,
) -> Result<TuningCurve> {
    let (t_lo, t_hi) = t_range_c;
    if !(t_lo < t_hi) || !(step_c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "temperature range [{t_lo}, {t_hi}] with step {step_c} is not scannable"
        )));
    }
    let mut points = Vec::new();
    let n = ((t_hi - t_lo) / step_c).round() as usize;
    for i in 0..=n {
        let t = (t_lo + i as f64 * step_c).min(t_hi);
        points.push((t, tuning_point(crystal, proc, lambda_p_um, t)?));
    }
    let degenerate = degenerate_temperature(crystal, proc, lambda_p_um, t_range_c).ok();
    Ok(TuningCurve {
        process: proc,
        pump_um: lambda_p_um,
        points,
        degenerate_temperature_c: degenerate,
    })
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        x.sin() / x
    }
}

/// One resolved lobe of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralArm {
    pub center_um: f64,
    pub fwhm_um: f64,
}

/// A normalized theoretical biphoton spectrum.
///
/// Both photons of each pair land on the wavelength axis: S(λ) sums
/// sinc²(Δk·L/2) for λ as the signal-slot arm and for λ as the partner arm.
/// For same-axis processes (type-0, type-I) the two branches coincide by
/// exchange symmetry; for type-II they place the H- and V-polarized lobes at
/// their own wavelengths, so a split pair shows both peaks.
#[derive(Debug, Clone)]
pub struct SpectrumCurve {
    pub process: QpmProcess,
    pub pump_um: f64,
    pub temperature_c: f64,
    /// (signal wavelength µm, normalized intensity), strictly increasing in λ.
    pub samples: Vec<(f64, f64)>,
    /// Width between the outermost half-maximum crossings. For a split pair
    /// with both lobes in the window this spans both arms.
    pub fwhm_um: f64,
    /// Interpolated location of the global maximum.
    pub peak_um: f64,
    /// Each above-half-maximum lobe separately (1 at degeneracy, 2 when a
    /// split pair falls inside the window).
    pub arms: Vec<SpectralArm>,
}

/// Quadratic peak refinement through three samples around an interior argmax.
fn parabolic_peak(samples: &[(f64, f64)], i: usize) -> f64 {
    if i == 0 || i + 1 >= samples.len() {
        return samples[i].0;
    }
    let (x0, y0) = samples[i - 1];
    let (x1, y1) = samples[i];
    let (x2, y2) = samples[i + 1];
    let denom = (y0 - 2.0 * y1 + y2) * 2.0;
    if denom.abs() < 1e-300 {
        return x1;
    }
    let h = (x2 - x0) / 2.0;
    x1 - h * (y2 - y0) / denom
}

/// Evaluates the sinc² spectrum over `window` (µm) with `n_samples` points.
pub fn spectrum(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    temperature_c: f64,
    window_um: (f64, f64),
    n_samples: usize,
) -> Result<SpectrumCurve> {
    let (lo, hi) = window_um;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "spectrum window [{lo}, {hi}] must be increasing"
        )));
    }
    if n_samples < 64 {
        return Err(Error::InvalidInput(format!(
            "spectrum needs at least 64 samples, got {n_samples}"
        )));
    }
    let half_arg = crystal.length_um() / 2.0;
    let step = (hi - lo) / (n_samples - 1) as f64;
    let mut samples = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let ls = if i + 1 == n_samples {
            hi
        } else {
            lo + step * i as f64
        };
        // λ as the signal-slot arm of the pair…
        let dk_signal = qpm::phase_mismatch(crystal, proc, lambda_p_um, ls, temperature_c)?;
        // …and λ as the partner (idler-slot) arm of the pair
        let partner = qpm::idler_wavelength(lambda_p_um, ls);
        let dk_idler = qpm::phase_mismatch(crystal, proc, lambda_p_um, partner, temperature_c)?;
        let intensity = sinc(dk_signal * half_arg).powi(2) + sinc(dk_idler * half_arg).powi(2);
        samples.push((ls, intensity));
    }
    let max = samples.iter().map(|&(_, y)| y).fold(0.0f64, f64::max);
    if !(max > 0.0) {
        return Err(Error::EmptySupport);
    }
    for s in &mut samples {
        s.1 /= max;
    }
    let argmax = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.partial_cmp(&b.1 .1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let peak_um = parabolic_peak(&samples, argmax);
    let fwhm_um = numerics::fwhm(&samples)?;

    // split the curve into contiguous above-half lobes; fwhm() succeeding
    // guarantees the lobes are interior
    let mut arms = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..samples.len() {
        let above = samples[i].1 >= 0.5;
        match (above, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                arms.push(lobe_summary(&samples, s, i - 1));
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = run_start {
        arms.push(lobe_summary(&samples, s, samples.len() - 1));
    }

    Ok(SpectrumCurve {
        process: proc,
        pump_um: lambda_p_um,
        temperature_c,
        samples,
        fwhm_um,
        peak_um,
        arms,
    })
}

fn lobe_summary(samples: &[(f64, f64)], start: usize, end: usize) -> SpectralArm {
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 + (0.5 - a.1) * (b.0 - a.0) / (b.1 - a.1);
    let left = if start > 0 {
        cross(samples[start - 1], samples[start])
    } else {
        samples[start].0
    };
    let right = if end + 1 < samples.len() {
        cross(samples[end], samples[end + 1])
    } else {
        samples[end].0
    };
    let local_max = (start..=end)
        .max_by(|&a, &b| samples[a].1.partial_cmp(&samples[b].1).unwrap())
        .unwrap();
    SpectralArm {
        center_um: parabolic_peak(samples, local_max),
        fwhm_um: right - left,
    }
}

/// Full width at half maximum of one lobe around `center_um`, found by
/// expanding a trial window until the lobe closes on both sides.
pub fn estimate_arm_fwhm(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    temperature_c: f64,
    center_um: f64,
) -> Result<f64> {
    let (lo_adm, hi_adm) = signal_scan_window(crystal, proc, lambda_p_um)?;
    for half in [1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 0.1, 0.2] {
        let window = (
            (center_um - half).max(lo_adm),
            (center_um + half).min(hi_adm),
        );
        if !(window.0 < window.1) {
            continue;
        }
        match spectrum(crystal, proc, lambda_p_um, temperature_c, window, 512) {
            Ok(curve) => {
                if let Some(arm) = curve.arms.iter().min_by(|a, b| {
                    (a.center_um - center_um)
                        .abs()
                        .partial_cmp(&(b.center_um - center_um).abs())
                        .unwrap()
                }) {
                    return Ok(arm.fwhm_um);
                }
            }
            Err(Error::OpenSupport { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidInput(format!(
        "no closed half-maximum lobe within ±0.2 um of {center_um} um"
    )))
}

/// Spectrum window derived from the tuning point: phase-matched centers
/// padded by max(5 × single-arm FWHM, 5 nm) on each side.
pub fn auto_window(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    temperature_c: f64,
) -> Result<(f64, f64)> {
    let (lo_adm, hi_adm) = signal_scan_window(crystal, proc, lambda_p_um)?;
    let clamp = |w: (f64, f64)| (w.0.max(lo_adm), w.1.min(hi_adm));
    match tuning_point(crystal, proc, lambda_p_um, temperature_c)? {
        TuningPoint::Degenerate { wavelength_um } => {
            let fw = estimate_arm_fwhm(crystal, proc, lambda_p_um, temperature_c, wavelength_um)?;
            let pad = (5.0 * fw).max(5e-3);
            Ok(clamp((wavelength_um - pad, wavelength_um + pad)))
        }
        TuningPoint::Split {
            signal_um,
            idler_um,
        } => {
            let fw = estimate_arm_fwhm(crystal, proc, lambda_p_um, temperature_c, signal_um)?;
            let pad = (5.0 * fw).max(5e-3);
            Ok(clamp((signal_um - pad, idler_um + pad)))
        }
        TuningPoint::OutOfRange => {
            // no phase-matched peak; frame the near-degenerate region anyway
            let deg = 2.0 * lambda_p_um;
            Ok(clamp((deg - 0.02, deg + 0.02)))
        }
    }
}

// ---------------------------------------------------------------------------
// joint spectral intensity
// ---------------------------------------------------------------------------

/// Gaussian pump envelope over total angular frequency:
/// α(ω) = exp(−(ω − ω₀)²/(2σ²)), σ = FWHM_ω/(2√(2 ln 2)).
///
/// The envelope depends on signal and idler only through ω_s + ω_i, so
/// α(ω_s + δ, ω_i − δ) = α(ω_s, ω_i) for any δ.
#[derive(Debug, Clone, Copy)]
pub struct PumpEnvelope {
    pub center_um: f64,
    pub bandwidth_fwhm_nm: f64,
    omega_center: f64,
    sigma_omega: f64,
}

impl PumpEnvelope {
    pub fn new(center_um: f64, bandwidth_fwhm_nm: f64) -> Result<Self> {
        if !(bandwidth_fwhm_nm > 0.0) {
            return Err(Error::InvalidInput(format!(
                "pump bandwidth {bandwidth_fwhm_nm} nm must be positive"
            )));
        }
        let half_um = bandwidth_fwhm_nm * 1e-3 / 2.0;
        if !(center_um > half_um) {
            return Err(Error::InvalidInput(format!(
                "pump bandwidth {bandwidth_fwhm_nm} nm is too wide for center {center_um} um"
            )));
        }
        // exact FWHM in angular frequency: edges of the wavelength FWHM
        let fwhm_omega =
            angular_frequency(center_um - half_um) - angular_frequency(center_um + half_um);
        Ok(Self {
            center_um,
            bandwidth_fwhm_nm,
            omega_center: angular_frequency(center_um),
            sigma_omega: fwhm_omega / FWHM_TO_SIGMA,
        })
    }

    pub fn omega_center(&self) -> f64 {
        self.omega_center
    }

    pub fn sigma_omega(&self) -> f64 {
        self.sigma_omega
    }

    /// Amplitude at a total angular frequency (rad/s); exactly 1 at center.
    pub fn amplitude(&self, omega_total: f64) -> f64 {
        let x = (omega_total - self.omega_center) / self.sigma_omega;
        (-0.5 * x * x).exp()
    }

    /// |α|² at a total angular frequency.
    pub fn intensity(&self, omega_total: f64) -> f64 {
        let x = (omega_total - self.omega_center) / self.sigma_omega;
        (-x * x).exp()
    }

    /// |α|² averaged over a box of `width` rad/s around `omega_total`:
    /// (√π·σ/(2w))·[erf((b−ω₀)/σ) − erf((a−ω₀)/σ)]. Used to keep joint
    /// spectra of sub-grid-resolution pumps representable; converges to the
    /// point value once σ dominates the cell.
    pub fn intensity_box_averaged(&self, omega_total: f64, width: f64) -> f64 {
        if width <= 0.0 || self.sigma_omega > 50.0 * width {
            return self.intensity(omega_total);
        }
        let s = self.sigma_omega;
        let a = (omega_total - width / 2.0 - self.omega_center) / s;
        let b = (omega_total + width / 2.0 - self.omega_center) / s;
        (std::f64::consts::PI.sqrt() * s / (2.0 * width)) * (libm::erf(b) - libm::erf(a))
    }
}

/// Grid request for [`jsi`]. Windows default to the degenerate wavelength
/// padded by max(5 × single-arm FWHM, 5 nm) on both axes.
#[derive(Debug, Clone, Copy)]
pub struct JsiGridSpec {
    pub signal_window_um: Option<(f64, f64)>,
    pub idler_window_um: Option<(f64, f64)>,
    pub samples: usize,
}

impl Default for JsiGridSpec {
    fn default() -> Self {
        Self {
            signal_window_um: None,
            idler_window_um: None,
            samples: 256,
        }
    }
}

/// Normalized joint spectral intensity over (signal × idler) wavelengths.
#[derive(Debug, Clone)]
pub struct JsiGrid {
    pub process: QpmProcess,
    pub pump_center_um: f64,
    pub pump_bandwidth_fwhm_nm: f64,
    pub temperature_c: f64,
    pub signal_um: Vec<f64>,
    pub idler_um: Vec<f64>,
    /// Row-major: `values[i][j]` is signal index i, idler index j; max = 1.
    pub values: Vec<Vec<f64>>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

/// Local spacing of a strictly monotone sequence (one-sided at the edges).
fn local_spacing(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            if i == 0 {
                (xs[1] - xs[0]).abs()
            } else if i + 1 == n {
                (xs[n - 1] - xs[n - 2]).abs()
            } else {
                (xs[i + 1] - xs[i - 1]).abs() / 2.0
            }
        })
        .collect()
}

/// F(λ_s, λ_i) = |α(ω_s+ω_i)·sinc(Δk·L/2)|² over the requested grid,
/// normalized to max 1. Δk is evaluated on independent (λ_s, λ_i); energy
/// conservation enters only through the pump envelope, whose intensity is
/// box-averaged over each cell's ω_s+ω_i footprint. Grid points outside the
/// dispersion validity contribute zero; an all-zero grid is an error.
pub fn jsi(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    pump: &PumpEnvelope,
    temperature_c: f64,
    grid: &JsiGridSpec,
) -> Result<JsiGrid> {
    if grid.samples < 16 {
        return Err(Error::InvalidInput(format!(
            "jsi grid needs at least 16 samples per axis, got {}",
            grid.samples
        )));
    }
    let default_window = || -> Result<(f64, f64)> {
        let deg = 2.0 * pump.center_um;
        let fw = estimate_arm_fwhm(crystal, proc, pump.center_um, temperature_c, deg)?;
        let pad = (5.0 * fw).max(5e-3);
        Ok((deg - pad, deg + pad))
    };
    let signal_window = match grid.signal_window_um {
        Some(w) => w,
        None => default_window()?,
    };
    let idler_window = match grid.idler_window_um {
        Some(w) => w,
        None => default_window()?,
    };
    for (lo, hi) in [signal_window, idler_window] {
        if !(lo < hi) {
            return Err(Error::InvalidInput(format!(
                "jsi window [{lo}, {hi}] must be increasing"
            )));
        }
    }

    let signal_um = linspace(signal_window.0, signal_window.1, grid.samples);
    let idler_um = linspace(idler_window.0, idler_window.1, grid.samples);
    let omega_s: Vec<f64> = signal_um.iter().map(|&l| angular_frequency(l)).collect();
    let omega_i: Vec<f64> = idler_um.iter().map(|&l| angular_frequency(l)).collect();
    let dw_s = local_spacing(&omega_s);
    let dw_i = local_spacing(&omega_i);

    let half_arg = crystal.length_um() / 2.0;
    let mut values = vec![vec![0.0; grid.samples]; grid.samples];
    let mut max = 0.0f64;
    for i in 0..grid.samples {
        for j in 0..grid.samples {
            let dk = match qpm::phase_mismatch_pair(
                crystal,
                proc,
                signal_um[i],
                idler_um[j],
                temperature_c,
            ) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let pmf = sinc(dk * half_arg).powi(2);
            let alpha2 = pump.intensity_box_averaged(omega_s[i] + omega_i[j], dw_s[i] + dw_i[j]);
            let v = alpha2 * pmf;
            values[i][j] = v;
            if v > max {
                max = v;
            }
        }
    }
    if !(max > 0.0) {
        return Err(Error::EmptySupport);
    }
    for row in &mut values {
        for v in row {
            *v /= max;
        }
    }
    Ok(JsiGrid {
        process: proc,
        pump_center_um: pump.center_um,
        pump_bandwidth_fwhm_nm: pump.bandwidth_fwhm_nm,
        temperature_c,
        signal_um,
        idler_um,
        values,
    })
}

/// Slope (dω_i/dω_s) of the intensity-weighted principal axis of a JSI grid
/// in angular-frequency coordinates. −1 means perfectly anti-diagonal.
pub fn principal_axis_slope(grid: &JsiGrid) -> f64 {
    let omega_s: Vec<f64> = grid
        .signal_um
        .iter()
        .map(|&l| angular_frequency(l))
        .collect();
    let omega_i: Vec<f64> = grid
        .idler_um
        .iter()
        .map(|&l| angular_frequency(l))
        .collect();
    let mut w_sum = 0.0;
    let mut mu_s = 0.0;
    let mut mu_i = 0.0;
    for (i, row) in grid.values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            w_sum += v;
            mu_s += v * omega_s[i];
            mu_i += v * omega_i[j];
        }
    }
    mu_s /= w_sum;
    mu_i /= w_sum;
    let (mut c_ss, mut c_ii, mut c_si) = (0.0, 0.0, 0.0);
    for (i, row) in grid.values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let ds = omega_s[i] - mu_s;
            let di = omega_i[j] - mu_i;
            c_ss += v * ds * ds;
            c_ii += v * di * di;
            c_si += v * ds * di;
        }
    }
    c_ss /= w_sum;
    c_ii /= w_sum;
    c_si /= w_sum;
    let half_trace = (c_ss + c_ii) / 2.0;
    let disc = ((c_ss - c_ii) / 2.0).powi(2) + c_si * c_si;
    let lambda_max = half_trace + disc.sqrt();
    if c_si.abs() < 1e-300 {
        return if c_ss >= c_ii { 0.0 } else { f64::INFINITY };
    }
    (lambda_max - c_ss) / c_si
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpm::{ProcessType, QpmProcess};

    fn ktp() -> CrystalSpec {
        CrystalSpec::ktp()
    }

    fn proc(p: ProcessType, m: u32) -> QpmProcess {
        QpmProcess::new(p, m).unwrap()
    }

    #[test]
    fn tuning_point_degenerate_at_solved_pump() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 60.0, (0.40, 0.41)).unwrap();
        match tuning_point(&c, q, lp, 60.0).unwrap() {
            TuningPoint::Degenerate { wavelength_um } => {
                assert!((wavelength_um - 2.0 * lp).abs() < 1e-9);
            }
            other => panic!("expected degenerate point, got {other:?}"),
        }
    }

    #[test]
    fn tuning_split_matches_dense_scan_oracle() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 60.0, (0.40, 0.41)).unwrap();
        let t = 70.0;
        let (s, i) = match tuning_point(&c, q, lp, t).unwrap() {
            TuningPoint::Split {
                signal_um,
                idler_um,
            } => (signal_um, idler_um),
            other => panic!("expected a split pair at +10 °C, got {other:?}"),
        };
        // independent brute force: dense sign scan near degeneracy with
        // linear interpolation at each crossing
        let deg = 2.0 * lp;
        let n = 1_000_000usize;
        let (lo, hi) = (deg - 0.03, deg + 0.03);
        let mut found = Vec::new();
        let mut prev: Option<(f64, f64)> = None;
        for k in 0..=n {
            let x = lo + (hi - lo) * k as f64 / n as f64;
            let y = qpm::phase_mismatch(&c, q, lp, x, t).unwrap();
            if let Some((xp, yp)) = prev {
                if yp.signum() != y.signum() {
                    found.push(xp + (0.0 - yp) * (x - xp) / (y - yp));
                }
            }
            prev = Some((x, y));
        }
        assert_eq!(found.len(), 1, "one signal-slot zero near degeneracy");
        let s_oracle = found[0].min(qpm::idler_wavelength(lp, found[0]));
        let i_oracle = found[0].max(qpm::idler_wavelength(lp, found[0]));
        assert!((s - s_oracle).abs() < 1e-5, "{s} vs oracle {s_oracle}");
        assert!((i - i_oracle).abs() < 1e-5, "{i} vs oracle {i_oracle}");
        assert!(i - s > DEGENERACY_SPLIT_TOL_UM);
    }

    #[test]
    fn tuning_out_of_range_when_unmatchable() {
        // type-0 m=3 at 408.8 nm pump cannot phase-match at 58.4 °C with
        // this dispersion data (the mismatch peaks below zero)
        let c = ktp();
        let q = proc(ProcessType::Type0, 3);
        assert_eq!(
            tuning_point(&c, q, 0.4088, 58.4).unwrap(),
            TuningPoint::OutOfRange
        );
    }

    #[test]
    fn eq1_consistency_on_tuning_points() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 40.0, (0.40, 0.41)).unwrap();
        let curve = tuning_curve(&c, q, lp, (25.0, 80.0), 5.0).unwrap();
        let mut seen_pair = false;
        for (_, pt) in &curve.points {
            if let Some((s, i)) = pt.signal_idler() {
                seen_pair = true;
                assert!(s <= i, "signal must be the shorter arm");
                let residual = (1.0 / s + 1.0 / i - 1.0 / lp).abs();
                assert!(residual < 1e-9, "energy conservation residual {residual}");
            }
        }
        assert!(seen_pair);
        let t_deg = curve.degenerate_temperature_c.expect("degeneracy in range");
        assert!((t_deg - 40.0).abs() < 0.01);
    }

    #[test]
    fn split_grows_monotonically_away_from_degeneracy() {
        // type-II m=1 pumped at its 25 °C degenerate wavelength: over the
        // next 30 °C, the signal/idler split must widen monotonically
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 25.0, (0.40, 0.41)).unwrap();
        let mut prev_split = 0.0;
        for step in 1..=6 {
            let t = 25.0 + 5.0 * step as f64;
            match tuning_point(&c, q, lp, t).unwrap() {
                TuningPoint::Split {
                    signal_um,
                    idler_um,
                } => {
                    let split = idler_um - signal_um;
                    assert!(
                        split > prev_split,
                        "split {split} at {t} °C did not grow past {prev_split}"
                    );
                    prev_split = split;
                }
                other => panic!("expected split at {t} °C, got {other:?}"),
            }
        }
    }

    #[test]
    fn degenerate_temperature_inverse_consistency() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let t0 = 60.0;
        let lp = qpm::solve_degenerate_pump(&c, q, t0, (0.40, 0.41)).unwrap();
        let t = degenerate_temperature(&c, q, lp, (20.0, 200.0)).unwrap();
        assert!((t - t0).abs() < 0.01, "recovered {t} °C");
    }

    #[test]
    fn degenerate_temperature_no_root_is_infeasible() {
        let c = ktp();
        let q = proc(ProcessType::TypeI, 5);
        let err = degenerate_temperature(&c, q, 0.4043, (20.0, 200.0)).unwrap_err();
        assert!(matches!(err, Error::NoRoot { .. }));
    }

    #[test]
    fn spectrum_peaks_at_tuning_center() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 35.0, (0.40, 0.41)).unwrap();
        let window = auto_window(&c, q, lp, 35.0).unwrap();
        let s = spectrum(&c, q, lp, 35.0, window, 4096).unwrap();
        assert!((s.samples.iter().map(|&(_, y)| y).fold(0.0f64, f64::max) - 1.0).abs() < 1e-12);
        assert!((s.peak_um - 2.0 * lp).abs() < 1e-4, "peak at {}", s.peak_um);
    }

    #[test]
    fn halving_length_doubles_fwhm() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 25.0, (0.40, 0.41)).unwrap();
        let window = auto_window(&c, q, lp, 25.0).unwrap();
        let full = spectrum(&c, q, lp, 25.0, window, 8192).unwrap();
        let mut half_crystal = c.clone();
        half_crystal.length_mm = 5.0;
        let half = spectrum(&half_crystal, q, lp, 25.0, window, 8192).unwrap();
        let ratio = half.fwhm_um / full.fwhm_um;
        assert!((ratio - 2.0).abs() < 0.04, "ratio {ratio}");
    }

    #[test]
    fn fwhm_matches_dense_grid_oracle() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 25.0, (0.40, 0.41)).unwrap();
        let window = auto_window(&c, q, lp, 25.0).unwrap();
        let s = spectrum(&c, q, lp, 25.0, window, 2048).unwrap();

        // brute-force oracle: 1e5-point resampling of the same analytic
        // curve, nearest-sample half-max crossings
        let n = 100_000usize;
        let half_arg = c.length_um() / 2.0;
        let ys: Vec<(f64, f64)> = (0..=n)
            .map(|k| {
                let x = window.0 + (window.1 - window.0) * k as f64 / n as f64;
                let dk = qpm::phase_mismatch(&c, q, lp, x, 25.0).unwrap();
                (x, sinc(dk * half_arg).powi(2))
            })
            .collect();
        let y_max = ys.iter().map(|&(_, y)| y).fold(0.0f64, f64::max);
        let half = y_max / 2.0;
        let first = ys.iter().position(|&(_, y)| y >= half).unwrap();
        let last = ys.iter().rposition(|&(_, y)| y >= half).unwrap();
        let oracle = ys[last].0 - ys[first].0;
        let grid_step = (window.1 - window.0) / n as f64;
        assert!(
            (s.fwhm_um - oracle).abs() < 2.0 * grid_step + 1e-6,
            "fwhm {} vs oracle {}",
            s.fwhm_um,
            oracle
        );
    }

    #[test]
    fn split_spectrum_reports_two_arms() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 40.0, (0.40, 0.41)).unwrap();
        let t = 75.0;
        let window = auto_window(&c, q, lp, t).unwrap();
        let s = spectrum(&c, q, lp, t, window, 8192).unwrap();
        assert_eq!(s.arms.len(), 2, "arms: {:?}", s.arms);
        let (sig, idl) = match tuning_point(&c, q, lp, t).unwrap() {
            TuningPoint::Split {
                signal_um,
                idler_um,
            } => (signal_um, idler_um),
            other => panic!("{other:?}"),
        };
        assert!((s.arms[0].center_um - sig).abs() < 1e-4);
        assert!((s.arms[1].center_um - idl).abs() < 1e-4);
        // outer span covers both arms
        assert!(s.fwhm_um > (idl - sig));
    }

    #[test]
    fn pump_envelope_basics() {
        let p = PumpEnvelope::new(0.4043, 2.0).unwrap();
        assert_eq!(p.amplitude(p.omega_center()), 1.0);
        // depends on the sum only
        let w1 = angular_frequency(0.80);
        let w2 = angular_frequency(0.82);
        let d = 3.0e11;
        assert!((p.amplitude(w1 + w2) - p.amplitude((w1 + d) + (w2 - d))).abs() < 1e-15);
        assert!(PumpEnvelope::new(0.4, -1.0).is_err());
    }

    #[test]
    fn pump_envelope_fwhm_matches_configuration() {
        // dense 1-D scan over total angular frequency
        let p = PumpEnvelope::new(0.4043, 2.0).unwrap();
        let expected = angular_frequency(0.4043 - 1e-3) - angular_frequency(0.4043 + 1e-3);
        let lo = p.omega_center() - 1.2 * expected;
        let hi = p.omega_center() + 1.2 * expected;
        let n = 2_000_000usize;
        let mut first = None;
        let mut last = None;
        for k in 0..=n {
            let w = lo + (hi - lo) * k as f64 / n as f64;
            if p.amplitude(w) >= 0.5 {
                if first.is_none() {
                    first = Some(w);
                }
                last = Some(w);
            }
        }
        let measured = last.unwrap() - first.unwrap();
        assert!(
            ((measured - expected) / expected).abs() < 1e-3,
            "measured {measured}, configured {expected}"
        );
    }

    #[test]
    fn box_average_converges_to_point_value() {
        let p = PumpEnvelope::new(0.4043, 2.0).unwrap();
        let w = p.omega_center() + 0.5 * p.sigma_omega();
        let avg = p.intensity_box_averaged(w, p.sigma_omega() * 1e-4);
        assert!((avg - p.intensity(w)).abs() < 1e-8);
    }

    #[test]
    fn jsi_normalized_and_bounded() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 25.0, (0.40, 0.41)).unwrap();
        let pump = PumpEnvelope::new(lp, 2.0).unwrap();
        let grid = jsi(
            &c,
            q,
            &pump,
            25.0,
            &JsiGridSpec {
                samples: 64,
                ..Default::default()
            },
        )
        .unwrap();
        let mut max = 0.0f64;
        for row in &grid.values {
            for &v in row {
                assert!((0.0..=1.0).contains(&v));
                max = max.max(v);
            }
        }
        assert_eq!(max, 1.0);
    }

    #[test]
    fn jsi_ridge_follows_phase_matching_zero_set() {
        // effectively flat pump: the ridge of F must trace Δk = 0
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 25.0, (0.40, 0.41)).unwrap();
        // bandwidth far wider than the window: |α|² ≈ 1 across the grid
        let pump = PumpEnvelope::new(lp, 300.0).unwrap();
        let spec = JsiGridSpec {
            samples: 128,
            ..Default::default()
        };
        let grid = jsi(&c, q, &pump, 25.0, &spec).unwrap();
        let mut checked = 0;
        for (i, &ls) in grid.signal_um.iter().enumerate() {
            // brute-force sign-change trace of Δk along this row
            let dks: Vec<f64> = grid
                .idler_um
                .iter()
                .map(|&li| qpm::phase_mismatch_pair(&c, q, ls, li, 25.0).unwrap())
                .collect();
            let crossing = dks.windows(2).position(|w| w[0].signum() != w[1].signum());
            if let Some(jc) = crossing {
                let argmax = grid.values[i]
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                    .map(|(j, _)| j)
                    .unwrap();
                assert!(
                    (argmax as i64 - jc as i64).abs() <= 2,
                    "row {i}: ridge at {argmax}, zero crossing at {jc}"
                );
                checked += 1;
            }
        }
        assert!(checked > 32, "only {checked} rows had a crossing");
    }

    #[test]
    fn jsi_empty_window_is_error() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let pump = PumpEnvelope::new(0.40463, 5.5e-6).unwrap();
        // window far away from both the pump band and the phase-matched ridge
        let spec = JsiGridSpec {
            signal_window_um: Some((1.50, 1.51)),
            idler_window_um: Some((1.50, 1.51)),
            samples: 32,
        };
        assert!(matches!(
            jsi(&c, q, &pump, 25.0, &spec),
            Err(Error::EmptySupport)
        ));
    }

    #[test]
    fn narrowband_jsi_marginal_concentrates_on_pump_frequency() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let lp = qpm::solve_degenerate_pump(&c, q, 25.0, (0.40, 0.41)).unwrap();
        // resolvable narrow pump: 0.1 nm against a ±2 nm window
        let pump = PumpEnvelope::new(lp, 0.1).unwrap();
        let deg = 2.0 * lp;
        let spec = JsiGridSpec {
            signal_window_um: Some((deg - 2e-3, deg + 2e-3)),
            idler_window_um: Some((deg - 2e-3, deg + 2e-3)),
            samples: 256,
        };
        let grid = jsi(&c, q, &pump, 25.0, &spec).unwrap();
        let fwhm_omega = pump.sigma_omega() * FWHM_TO_SIGMA;
        let mut inside = 0.0;
        let mut total = 0.0;
        for (i, row) in grid.values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let u = angular_frequency(grid.signal_um[i]) + angular_frequency(grid.idler_um[j]);
                total += v;
                if (u - pump.omega_center()).abs() <= 3.0 * fwhm_omega {
                    inside += v;
                }
            }
        }
        assert!(
            inside / total > 0.99,
            "only {:.4} of the mass within ±3 bandwidths",
            inside / total
        );
    }

    #[test]
    fn narrowband_slope_is_antidiagonal() {
        let c = ktp();
        let q = proc(ProcessType::TypeI, 5);
        let lp = qpm::solve_degenerate_pump(&c, q, 25.0, (0.40, 0.42)).unwrap();
        let bw = linewidth_mhz_to_nm(10.0, lp);
        let pump = PumpEnvelope::new(lp, bw).unwrap();
        let deg = 2.0 * lp;
        let spec = JsiGridSpec {
            signal_window_um: Some((deg - 0.015, deg + 0.015)),
            idler_window_um: Some((deg - 0.015, deg + 0.015)),
            samples: 128,
        };
        let grid = jsi(&c, q, &pump, 25.0, &spec).unwrap();
        let slope = principal_axis_slope(&grid);
        assert!((slope + 1.0).abs() < 0.05, "slope {slope}");
    }
}
