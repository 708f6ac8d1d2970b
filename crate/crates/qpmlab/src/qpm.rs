//! Quasi-phase-matching core: phase mismatch, poling-period and pump-wavelength
//! solvers, Fourier coefficients of the square-wave poling function, and the
//! effective nonlinearity of each process.
//!
//! Energy conservation fixes the idler from pump and signal (ω_p = ω_s + ω_i,
//! i.e. 1/λ_i = 1/λ_p − 1/λ_s in vacuum). Momentum conservation for a
//! periodically poled crystal reads
//!
//! ```text
//! Δk_m = k_p − k_s − k_i − m·2π/Λ
//! ```
//!
//! with odd poling order m. With normal dispersion the material mismatch
//! k_p − k_s − k_i is positive for every process handled here, so the grating
//! vector enters with the minus sign; the "+" branch can never vanish for a
//! positive period and is reported as infeasible by the solvers.

use crate::dispersion::{Axis, CrystalSpec};
use crate::error::{Error, Result};
use crate::numerics;

/// KTP nonlinear tensor elements (pm/V), Vanherzeele & Bierlein (1992).
pub const D24_PM_PER_V: f64 = 3.64;
pub const D32_PM_PER_V: f64 = 4.35;
pub const D33_PM_PER_V: f64 = 16.9;

/// Bisection tolerance for wavelength solves, in µm.
pub const WAVELENGTH_X_TOL_UM: f64 = 1e-7;

/// Polarization configuration of an SPDC process. The axis triple is the
/// crystal-frame (pump, signal, idler) assignment; in lab frame y ↔ H, z ↔ V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProcessType {
    /// V → VV (z → zz)
    Type0,
    /// V → HH (z → yy)
    TypeI,
    /// H → HV (y → yz)
    TypeII,
}

impl ProcessType {
    pub const ALL: [ProcessType; 3] = [ProcessType::Type0, ProcessType::TypeI, ProcessType::TypeII];

    /// (pump, signal, idler) polarization axes.
    pub fn axes(self) -> (Axis, Axis, Axis) {
        match self {
            ProcessType::Type0 => (Axis::Z, Axis::Z, Axis::Z),
            ProcessType::TypeI => (Axis::Z, Axis::Y, Axis::Y),
            ProcessType::TypeII => (Axis::Y, Axis::Y, Axis::Z),
        }
    }

    /// Crystal-frame polarization column, e.g. "Z → YY".
    pub fn polarization(self) -> &'static str {
        match self {
            ProcessType::Type0 => "Z → ZZ",
            ProcessType::TypeI => "Z → YY",
            ProcessType::TypeII => "Y → YZ",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ProcessType::Type0 => "type-0",
            ProcessType::TypeI => "type-I",
            ProcessType::TypeII => "type-II",
        }
    }

    /// Tensor element selected by the polarization triple: d₃₃ for z → zz,
    /// d₃₂ for z → yy, d₂₄ for y → yz.
    pub fn d_eff_pm_per_v(self) -> f64 {
        match self {
            ProcessType::Type0 => D33_PM_PER_V,
            ProcessType::TypeI => D32_PM_PER_V,
            ProcessType::TypeII => D24_PM_PER_V,
        }
    }

    /// True when signal and idler share a polarization axis (type-0, type-I).
    pub fn same_axis_arms(self) -> bool {
        let (_, s, i) = self.axes();
        s == i
    }
}

impl std::fmt::Display for ProcessType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ProcessType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "0" | "type0" | "type-0" => Ok(ProcessType::Type0),
            "i" | "1" | "typei" | "type-i" => Ok(ProcessType::TypeI),
            "ii" | "2" | "typeii" | "type-ii" => Ok(ProcessType::TypeII),
            other => Err(Error::InvalidInput(format!(
                "unknown process type {other:?}; expected 0, I or II"
            ))),
        }
    }
}

/// A phase-matching configuration: process type plus odd poling order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QpmProcess {
    pub process: ProcessType,
    order: u32,
}

impl QpmProcess {
    /// Rejects even (and zero) orders: they carry no grating nonlinearity.
    pub fn new(process: ProcessType, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::FourierDcTerm);
        }
        if order.is_multiple_of(2) {
            return Err(Error::EvenPolingOrder(order));
        }
        Ok(Self { process, order })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Signed Fourier coefficient G_m of this order.
    pub fn g_m(&self) -> f64 {
        fourier_coefficient(self.order as i64).expect("order validated at construction")
    }
}

impl std::fmt::Display for QpmProcess {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} m={}", self.process, self.order)
    }
}

/// Fourier coefficient of the 50%-duty square-wave poling function,
/// G_m = (2/(mπ))·sin(mπ/2): ±2/(mπ) for odd m, exactly 0 for even m.
pub fn fourier_coefficient(m: i64) -> Result<f64> {
    if m == 0 {
        return Err(Error::FourierDcTerm);
    }
    let a = m.unsigned_abs();
    // sin(mπ/2) cycles 1, 0, −1, 0; the two sign flips cancel for negative m
    Ok(match a % 4 {
        1 => 2.0 / (a as f64 * std::f64::consts::PI),
        3 => -2.0 / (a as f64 * std::f64::consts::PI),
        _ => 0.0,
    })
}

/// Grating vector k_m = 2πm/Λ in rad/µm.
pub fn grating_vector(order: u32, period_um: f64) -> f64 {
    2.0 * std::f64::consts::PI * order as f64 / period_um
}

/// Effective nonlinearity of a process/order combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nonlinearity {
    /// Tensor element d_eff in pm/V (d₃₃, d₃₂ or d₂₄).
    pub d_eff_pm_per_v: f64,
    /// Signed Fourier coefficient of the grating order.
    pub g_m: f64,
}

impl Nonlinearity {
    /// |d_eff · G_m| = 2·d_eff/(mπ), the magnitude quoted per process.
    pub fn d_z_magnitude_pm_per_v(&self) -> f64 {
        (self.d_eff_pm_per_v * self.g_m).abs()
    }
}

/// d_eff and G_m for a process; the d(z) magnitude follows as |d_eff·G_m|.
pub fn effective_nonlinearity(proc: QpmProcess) -> Nonlinearity {
    Nonlinearity {
        d_eff_pm_per_v: proc.process.d_eff_pm_per_v(),
        g_m: proc.g_m(),
    }
}

/// Idler wavelength from energy conservation: 1/λ_i = 1/λ_p − 1/λ_s.
pub fn idler_wavelength(lambda_p_um: f64, lambda_s_um: f64) -> f64 {
    1.0 / (1.0 / lambda_p_um - 1.0 / lambda_s_um)
}

/// Δk_m = k_p − k_s − k_i − m·2π/Λ in rad/µm, with each wave vector on the
/// axis assigned by the process and the idler fixed by energy conservation.
pub fn phase_mismatch(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    lambda_s_um: f64,
    temperature_c: f64,
) -> Result<f64> {
    if !(lambda_s_um > lambda_p_um) {
        return Err(Error::InvalidInput(format!(
            "signal wavelength {lambda_s_um} um must exceed the pump {lambda_p_um} um"
        )));
    }
    let lambda_i = idler_wavelength(lambda_p_um, lambda_s_um);
    let (ax_p, ax_s, ax_i) = proc.process.axes();
    let k_p = crystal.wave_vector(ax_p, lambda_p_um, temperature_c)?;
    let k_s = crystal.wave_vector(ax_s, lambda_s_um, temperature_c)?;
    let k_i = crystal.wave_vector(ax_i, lambda_i, temperature_c)?;
    Ok(k_p - k_s - k_i - grating_vector(proc.order, crystal.poling_period_um))
}

/// Δk_m over independent signal and idler wavelengths, with the pump wave
/// vector taken at the energy-conservation wavelength 1/λ_p = 1/λ_s + 1/λ_i.
/// This is the phase-matching function used for joint spectra, where the pump
/// envelope (not a hard constraint) ties λ_s and λ_i together.
pub fn phase_mismatch_pair(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_s_um: f64,
    lambda_i_um: f64,
    temperature_c: f64,
) -> Result<f64> {
    let lambda_p = 1.0 / (1.0 / lambda_s_um + 1.0 / lambda_i_um);
    let (ax_p, ax_s, ax_i) = proc.process.axes();
    let k_p = crystal.wave_vector(ax_p, lambda_p, temperature_c)?;
    let k_s = crystal.wave_vector(ax_s, lambda_s_um, temperature_c)?;
    let k_i = crystal.wave_vector(ax_i, lambda_i_um, temperature_c)?;
    Ok(k_p - k_s - k_i - grating_vector(proc.order, crystal.poling_period_um))
}

/// Δk_m at spectral degeneracy, λ_s = λ_i = 2λ_p (both arms evaluated at the
/// exact doubled wavelength).
pub fn degenerate_mismatch(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    temperature_c: f64,
) -> Result<f64> {
    let lambda_arm = 2.0 * lambda_p_um;
    let (ax_p, ax_s, ax_i) = proc.process.axes();
    let k_p = crystal.wave_vector(ax_p, lambda_p_um, temperature_c)?;
    let k_s = crystal.wave_vector(ax_s, lambda_arm, temperature_c)?;
    let k_i = crystal.wave_vector(ax_i, lambda_arm, temperature_c)?;
    Ok(k_p - k_s - k_i - grating_vector(proc.order, crystal.poling_period_um))
}

/// The unique pump wavelength in `search` (µm) where the degenerate process
/// phase-matches at the crystal's own poling period. Zero or several roots
/// fail loudly with the candidates listed.
pub fn solve_degenerate_pump(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    temperature_c: f64,
    search: (f64, f64),
) -> Result<f64> {
    let f = |lp: f64| degenerate_mismatch(crystal, proc, lp, temperature_c).unwrap_or(f64::NAN);
    numerics::refine_unique_root(
        f,
        search,
        512,
        WAVELENGTH_X_TOL_UM,
        &format!("degenerate Δk for {proc} at {temperature_c} °C"),
    )
}

/// Closed-form poling period that makes the degenerate process phase-match:
/// Λ = 2πm/(k_p − k_s − k_i) with λ_s = λ_i = 2λ_p on the process axes.
/// A non-positive material mismatch admits no positive period.
pub fn solve_poling_period(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    lambda_p_um: f64,
    temperature_c: f64,
) -> Result<f64> {
    let lambda_arm = 2.0 * lambda_p_um;
    let (ax_p, ax_s, ax_i) = proc.process.axes();
    let k_p = crystal.wave_vector(ax_p, lambda_p_um, temperature_c)?;
    let k_s = crystal.wave_vector(ax_s, lambda_arm, temperature_c)?;
    let k_i = crystal.wave_vector(ax_i, lambda_arm, temperature_c)?;
    let mismatch = k_p - k_s - k_i;
    if mismatch <= 0.0 {
        return Err(Error::InfeasiblePeriod {
            pump_um: lambda_p_um,
            mismatch,
        });
    }
    Ok(2.0 * std::f64::consts::PI * proc.order as f64 / mismatch)
}

/// One sample of a period-versus-pump curve. `period_um` is `None` where the
/// process is infeasible (or the wavelengths leave the dispersion validity),
/// so infeasible points are marked rather than dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodPoint {
    pub pump_um: f64,
    pub period_um: Option<f64>,
}

/// Samples [`solve_poling_period`] over a pump range.
pub fn period_curve(
    crystal: &CrystalSpec,
    proc: QpmProcess,
    pump_range_um: (f64, f64),
    temperature_c: f64,
    n_samples: usize,
) -> Result<Vec<PeriodPoint>> {
    let (lo, hi) = pump_range_um;
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "pump range [{lo}, {hi}] must be increasing"
        )));
    }
    if n_samples < 2 {
        return Err(Error::InvalidInput(format!(
            "period curve needs at least 2 samples, got {n_samples}"
        )));
    }
    let step = (hi - lo) / (n_samples - 1) as f64;
    Ok((0..n_samples)
        .map(|i| {
            let pump = if i + 1 == n_samples {
                hi
            } else {
                lo + step * i as f64
            };
            PeriodPoint {
                pump_um: pump,
                period_um: solve_poling_period(crystal, proc, pump, temperature_c).ok(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{SellmeierForm, SellmeierModel, ThermalCorrection};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn ktp() -> CrystalSpec {
        CrystalSpec::ktp()
    }

    fn proc(p: ProcessType, m: u32) -> QpmProcess {
        QpmProcess::new(p, m).unwrap()
    }

    fn constant_crystal(n_y: f64, n_z: f64, period_um: f64) -> CrystalSpec {
        let model = |n: f64| {
            SellmeierModel::new(
                SellmeierForm::SinglePole,
                vec![n * n, 0.0, 0.0, 0.0],
                ThermalCorrection {
                    n1: [0.0; 4],
                    n2: [0.0; 4],
                },
                25.0,
                [0.1, 10.0],
            )
            .unwrap()
        };
        CrystalSpec::new("stub", 10.0, period_um, model(n_y), model(n_z)).unwrap()
    }

    #[test]
    fn fourier_coefficients() {
        assert!((fourier_coefficient(1).unwrap() - 2.0 / PI).abs() < 1e-15);
        assert_eq!(fourier_coefficient(2).unwrap(), 0.0);
        assert!((fourier_coefficient(3).unwrap() + 2.0 / (3.0 * PI)).abs() < 1e-15);
        assert!((fourier_coefficient(5).unwrap() - 2.0 / (5.0 * PI)).abs() < 1e-15);
        assert_eq!(fourier_coefficient(4).unwrap(), 0.0);
        // even function of m
        assert_eq!(
            fourier_coefficient(-1).unwrap(),
            fourier_coefficient(1).unwrap()
        );
        assert_eq!(
            fourier_coefficient(-3).unwrap(),
            fourier_coefficient(3).unwrap()
        );
        assert!(matches!(fourier_coefficient(0), Err(Error::FourierDcTerm)));
    }

    #[test]
    fn even_orders_rejected_at_construction() {
        assert!(matches!(
            QpmProcess::new(ProcessType::Type0, 2),
            Err(Error::EvenPolingOrder(2))
        ));
        assert!(QpmProcess::new(ProcessType::Type0, 0).is_err());
        for m in [1, 3, 5, 7] {
            assert!(QpmProcess::new(ProcessType::TypeII, m).is_ok());
        }
    }

    #[test]
    fn nonlinearity_spec_values() {
        let nl = effective_nonlinearity(proc(ProcessType::Type0, 3));
        assert!((nl.d_z_magnitude_pm_per_v() - 3.59).abs() < 0.01);
        let nl = effective_nonlinearity(proc(ProcessType::TypeII, 1));
        assert!((nl.d_z_magnitude_pm_per_v() - 2.32).abs() < 0.01);
        let nl = effective_nonlinearity(proc(ProcessType::TypeI, 5));
        assert!((nl.d_z_magnitude_pm_per_v() - 0.55).abs() < 0.01);
        // sign convention: G_m negative for m = 3, magnitude still quoted
        assert!(effective_nonlinearity(proc(ProcessType::Type0, 3)).g_m < 0.0);
    }

    #[test]
    fn nonlinearity_magnitude_identity() {
        for p in ProcessType::ALL {
            for m in [1u32, 3, 5, 7, 9] {
                let nl = effective_nonlinearity(proc(p, m));
                let expected = 2.0 * p.d_eff_pm_per_v() / (m as f64 * PI);
                assert!((nl.d_z_magnitude_pm_per_v() - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_mismatch_vanishes_at_cross_points() {
        let c = ktp();
        let dk = phase_mismatch(&c, proc(ProcessType::TypeII, 1), 0.40463, 0.80927, 25.0).unwrap();
        assert!(dk.abs() < 1e-4, "type-II m=1 cross point: Δk = {dk}");
        let dk = phase_mismatch(&c, proc(ProcessType::Type0, 3), 0.40192, 0.80384, 25.0).unwrap();
        assert!(dk.abs() < 1e-4, "type-0 m=3 cross point: Δk = {dk}");
    }

    #[test]
    fn phase_mismatch_rejects_non_downconverted_signal() {
        let c = ktp();
        assert!(phase_mismatch(&c, proc(ProcessType::Type0, 1), 0.8, 0.5, 25.0).is_err());
    }

    #[test]
    fn phase_mismatch_idler_out_of_validity() {
        let c = ktp();
        // signal just above the pump puts the idler far beyond 4.5 um
        let err = phase_mismatch(&c, proc(ProcessType::Type0, 1), 0.55, 0.5501, 25.0).unwrap_err();
        assert!(matches!(err, Error::WavelengthOutOfRange { .. }));
    }

    #[test]
    fn degenerate_pump_solver_matches_cross_points() {
        let c = ktp();
        let lp =
            solve_degenerate_pump(&c, proc(ProcessType::TypeII, 1), 25.0, (0.39, 0.42)).unwrap();
        assert!((lp - 0.40463).abs() < 5e-4, "got {} um", lp);
        let lp =
            solve_degenerate_pump(&c, proc(ProcessType::TypeI, 5), 25.0, (0.40, 0.42)).unwrap();
        assert!((lp - 0.40737).abs() < 5e-4, "got {} um", lp);
        let lp =
            solve_degenerate_pump(&c, proc(ProcessType::Type0, 1), 25.0, (0.52, 0.58)).unwrap();
        assert!((lp - 0.55082).abs() < 5e-4, "got {} um", lp);
    }

    #[test]
    fn uv_window_scan_brackets_the_fifth_order_type_ii_cross() {
        // degenerate Δk₅ for type-II against pump wavelength over the UV
        // window: exactly one sign change, at the 311.4 nm cross point
        let c = ktp();
        let q = proc(ProcessType::TypeII, 5);
        let f = |lp: f64| degenerate_mismatch(&c, q, lp, 25.0).unwrap_or(f64::NAN);
        let scan = crate::numerics::scan_brackets(f, (0.30, 0.33), 301).unwrap();
        assert_eq!(scan.brackets.len(), 1);
        let root = crate::numerics::bisect(f, &scan.brackets[0], 1e-7).unwrap();
        assert!((root - 0.31143).abs() < 5e-4, "root at {} um", root);
    }

    #[test]
    fn degenerate_pump_solver_reports_no_root() {
        let c = ktp();
        let err = solve_degenerate_pump(&c, proc(ProcessType::TypeII, 1), 25.0, (0.45, 0.48))
            .unwrap_err();
        assert!(matches!(err, Error::NoRoot { .. }));
    }

    #[test]
    fn poling_period_solver_matches_crystal() {
        let c = ktp();
        let period = solve_poling_period(&c, proc(ProcessType::TypeII, 1), 0.40463, 25.0).unwrap();
        assert!((period - 10.0).abs() < 0.05, "got {period} um");
        let period = solve_poling_period(&c, proc(ProcessType::Type0, 1), 0.55082, 25.0).unwrap();
        assert!((period - 10.0).abs() < 0.05, "got {period} um");
    }

    #[test]
    fn pump_period_round_trip() {
        let c = ktp();
        for (p, m, lp0) in [
            (ProcessType::TypeII, 1, 0.40463),
            (ProcessType::TypeI, 3, 0.50521),
            (ProcessType::Type0, 5, 0.35497),
        ] {
            let q = proc(p, m);
            let period = solve_poling_period(&c, q, lp0, 25.0).unwrap();
            let mut c2 = c.clone();
            c2.poling_period_um = period;
            let lp = solve_degenerate_pump(&c2, q, 25.0, (lp0 - 0.01, lp0 + 0.01)).unwrap();
            assert!(
                (lp - lp0).abs() < 1e-6,
                "{q}: round trip {lp0} -> {period} -> {lp}"
            );
        }
    }

    #[test]
    fn constant_index_stub_closed_form() {
        // type-I on a stub crystal: pump z (n=1.8), arms y (n=1.7)
        // Λ = 2πm/(k_p − 2k_s) = m·λp/(n_p − n_s), independent of temperature
        let c = constant_crystal(1.7, 1.8, 10.0);
        let q = proc(ProcessType::TypeI, 3);
        for t in [25.0, 80.0, 150.0] {
            let lam = solve_poling_period(&c, q, 0.5, t).unwrap();
            assert!((lam - 3.0 * 0.5 / 0.1).abs() < 1e-9, "Λ = {lam} at {t} °C");
        }
        // flipped axes: negative mismatch is infeasible
        let c = constant_crystal(1.8, 1.7, 10.0);
        assert!(matches!(
            solve_poling_period(&c, proc(ProcessType::TypeI, 1), 0.5, 25.0),
            Err(Error::InfeasiblePeriod { .. })
        ));
    }

    #[test]
    fn period_curve_marks_infeasible_points() {
        let c = constant_crystal(1.8, 1.7, 10.0);
        // type-I here is infeasible at every pump; all points must be marked
        let curve = period_curve(&c, proc(ProcessType::TypeI, 1), (0.4, 0.6), 25.0, 11).unwrap();
        assert_eq!(curve.len(), 11);
        assert!(curve.iter().all(|p| p.period_um.is_none()));
    }

    #[test]
    fn period_curve_matches_pointwise_solver() {
        let c = ktp();
        let q = proc(ProcessType::TypeII, 1);
        let curve = period_curve(&c, q, (0.39, 0.42), 25.0, 31).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for pt in &curve {
            let direct = solve_poling_period(&c, q, pt.pump_um, 25.0).unwrap();
            let here = pt.period_um.expect("feasible in this window");
            assert!((here - direct).abs() < 1e-12);
            assert!(here > prev, "Λ(λp) should increase through this window");
            prev = here;
        }
    }

    #[test]
    fn all_nine_processes_recover_ten_micrometres() {
        let c = ktp();
        let rows: [(ProcessType, u32, f64); 9] = [
            (ProcessType::Type0, 1, 0.55082),
            (ProcessType::TypeI, 1, 1.07091),
            (ProcessType::TypeII, 1, 0.40463),
            (ProcessType::Type0, 3, 0.40192),
            (ProcessType::TypeI, 3, 0.50521),
            (ProcessType::TypeII, 3, 0.33873),
            (ProcessType::Type0, 5, 0.35497),
            (ProcessType::TypeI, 5, 0.40737),
            (ProcessType::TypeII, 5, 0.31143),
        ];
        for (p, m, lp) in rows {
            let period = solve_poling_period(&c, proc(p, m), lp, 25.0).unwrap();
            assert!(
                (period - 10.0).abs() < 0.05,
                "{p:?} m={m}: Λ({lp}) = {period}"
            );
        }
    }

    #[test]
    fn material_mismatch_positive_for_all_nine() {
        let c = ktp();
        for (p, m, lp) in [
            (ProcessType::Type0, 1, 0.55082),
            (ProcessType::TypeI, 1, 1.07091),
            (ProcessType::TypeII, 1, 0.40463),
            (ProcessType::Type0, 3, 0.40192),
            (ProcessType::TypeI, 3, 0.50521),
            (ProcessType::TypeII, 3, 0.33873),
            (ProcessType::Type0, 5, 0.35497),
            (ProcessType::TypeI, 5, 0.40737),
            (ProcessType::TypeII, 5, 0.31143),
        ] {
            let q = proc(p, m);
            let dk = degenerate_mismatch(&c, q, lp, 25.0).unwrap();
            let k_m = grating_vector(m, 10.0);
            assert!(
                dk + k_m > 0.0,
                "{q}: material mismatch {} must be positive",
                dk + k_m
            );
        }
    }

    proptest! {
        /// exchange symmetry for same-axis arms: Δk(λp, λs) = Δk(λp, λi(λs))
        #[test]
        fn exchange_symmetry_same_axis(
            lp in 0.42f64..0.52,
            frac in 0.05f64..0.95,
        ) {
            let c = ktp();
            // keep the idler inside validity: λs from just above the
            // idler-bound up to degeneracy
            let ls_min = 1.0 / (1.0 / lp - 1.0 / 4.4);
            let ls = ls_min + (2.0 * lp - ls_min) * frac;
            prop_assume!(ls > lp && ls < 2.0 * lp);
            for p in [ProcessType::Type0, ProcessType::TypeI] {
                let q = QpmProcess::new(p, 1).unwrap();
                let li = idler_wavelength(lp, ls);
                let a = phase_mismatch(&c, q, lp, ls, 25.0).unwrap();
                let b = phase_mismatch(&c, q, lp, li, 25.0).unwrap();
                prop_assert!((a - b).abs() < 1e-9, "{p:?}: {a} vs {b}");
            }
        }
    }
}
