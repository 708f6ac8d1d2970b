//! Temperature-dependent refractive indices for the KTP y and z axes.
//!
//! Light in a periodically poled KTP crystal propagates along x and is
//! polarized along y or z, so only n_y and n_z enter any phase-matching
//! calculation here. Each axis carries a rational Sellmeier form for the
//! room-temperature index plus the two-term thermal correction of
//! Emanueli & Arie, Appl. Opt. 42, 6661 (2003):
//!
//! ```text
//! n(λ, T) = n_room(λ) + n₁(λ)·(T − T_ref) + n₂(λ)·(T − T_ref)²
//! ```
//!
//! with n₁, n₂ cubic polynomials in 1/λ. Wavelengths are vacuum wavelengths
//! in µm throughout; temperatures in °C.
//!
//! Coefficients are data, not code: they ship in `data/ktp.json` (embedded as
//! the default crystal) and any crystal with the same functional forms can be
//! loaded from a JSON file of the same schema.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Crystallographic polarization axis. The lab-frame mapping is fixed:
/// y ↔ H (horizontal), z ↔ V (vertical).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Y,
    Z,
}

impl Axis {
    /// Lab-frame polarization label: Y ↔ H, Z ↔ V.
    pub fn polarization(self) -> char {
        match self {
            Axis::Y => 'H',
            Axis::Z => 'V',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape of the room-temperature Sellmeier expression (λ in µm):
///
/// * `SinglePole`:  n² = A + B/(1 − C/λ²) − D·λ²          (4 coefficients)
/// * `DoublePole`:  n² = A + B/(1 − C/λ²) + D/(1 − E/λ²) − F·λ²  (6 coefficients)
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SellmeierForm {
    SinglePole,
    DoublePole,
}

impl SellmeierForm {
    /// Number of coefficients the form consumes.
    pub fn arity(self) -> usize {
        match self {
            SellmeierForm::SinglePole => 4,
            SellmeierForm::DoublePole => 6,
        }
    }
}

/// Thermal correction Δn(λ, T) = n₁(λ)·ΔT + n₂(λ)·ΔT², with n₁ and n₂
/// cubic polynomials in 1/λ, coefficients ordered constant-first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalCorrection {
    pub n1: [f64; 4],
    pub n2: [f64; 4],
}

impl ThermalCorrection {
    fn inv_lambda_poly(c: &[f64; 4], wavelength_um: f64) -> f64 {
        let x = 1.0 / wavelength_um;
        c[0] + x * (c[1] + x * (c[2] + x * c[3]))
    }

    /// Index shift at `dt = T − T_ref` (°C).
    pub fn delta_n(&self, wavelength_um: f64, dt: f64) -> f64 {
        Self::inv_lambda_poly(&self.n1, wavelength_um) * dt
            + Self::inv_lambda_poly(&self.n2, wavelength_um) * dt * dt
    }
}

/// Refractive-index model for one polarization axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SellmeierModel {
    pub form: SellmeierForm,
    pub coefficients: Vec<f64>,
    pub thermal: ThermalCorrection,
    /// Temperature (°C) at which the room-temperature coefficients hold.
    pub t_ref_c: f64,
    /// Hard validity window [λ_min, λ_max] in µm.
    pub valid_range_um: [f64; 2],
}

impl SellmeierModel {
    /// Builds a model, rejecting coefficient-arity mismatches, empty validity
    /// windows and rational-form poles inside the validity window.
    pub fn new(
        form: SellmeierForm,
        coefficients: Vec<f64>,
        thermal: ThermalCorrection,
        t_ref_c: f64,
        valid_range_um: [f64; 2],
    ) -> Result<Self> {
        if coefficients.len() != form.arity() {
            return Err(Error::InvalidModel(format!(
                "{:?} form takes {} coefficients, got {}",
                form,
                form.arity(),
                coefficients.len()
            )));
        }
        let [lo, hi] = valid_range_um;
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::InvalidModel(format!(
                "valid_range_um [{lo}, {hi}] must satisfy 0 < min < max"
            )));
        }
        let pole_cs = match form {
            SellmeierForm::SinglePole => vec![coefficients[2]],
            SellmeierForm::DoublePole => vec![coefficients[2], coefficients[4]],
        };
        for c in pole_cs {
            if c > 0.0 {
                let pole = c.sqrt();
                if pole >= lo && pole <= hi {
                    return Err(Error::InvalidModel(format!(
                        "rational-form pole at {pole} um lies inside valid range [{lo}, {hi}] um"
                    )));
                }
            }
        }
        Ok(Self {
            form,
            coefficients,
            thermal,
            t_ref_c,
            valid_range_um,
        })
    }

    fn check_range(&self, wavelength_um: f64, axis: &'static str) -> Result<()> {
        let [lo, hi] = self.valid_range_um;
        if !wavelength_um.is_finite() || wavelength_um < lo || wavelength_um > hi {
            return Err(Error::WavelengthOutOfRange {
                axis,
                wavelength_um,
                min_um: lo,
                max_um: hi,
            });
        }
        Ok(())
    }

    /// n² of the room-temperature rational form, with no range check.
    pub fn n_squared_room(&self, wavelength_um: f64) -> f64 {
        let l2 = wavelength_um * wavelength_um;
        let c = &self.coefficients;
        match self.form {
            SellmeierForm::SinglePole => c[0] + c[1] / (1.0 - c[2] / l2) - c[3] * l2,
            SellmeierForm::DoublePole => {
                c[0] + c[1] / (1.0 - c[2] / l2) + c[3] / (1.0 - c[4] / l2) - c[5] * l2
            }
        }
    }

    /// Room-temperature index n_room(λ), no thermal term.
    pub fn index_room(&self, wavelength_um: f64) -> f64 {
        self.n_squared_room(wavelength_um).sqrt()
    }

    /// n(λ, T) = n_room(λ) + Δn(λ, T). The thermal term vanishes identically
    /// at `t_ref_c`.
    pub fn refractive_index(&self, wavelength_um: f64, temperature_c: f64) -> Result<f64> {
        self.refractive_index_for(wavelength_um, temperature_c, "model")
    }

    pub(crate) fn refractive_index_for(
        &self,
        wavelength_um: f64,
        temperature_c: f64,
        axis: &'static str,
    ) -> Result<f64> {
        self.check_range(wavelength_um, axis)?;
        Ok(self.index_room(wavelength_um)
            + self
                .thermal
                .delta_n(wavelength_um, temperature_c - self.t_ref_c))
    }

    /// Wave vector magnitude k = 2π·n(λ, T)/λ in rad/µm.
    pub fn wave_vector(&self, wavelength_um: f64, temperature_c: f64) -> Result<f64> {
        self.wave_vector_for(wavelength_um, temperature_c, "model")
    }

    pub(crate) fn wave_vector_for(
        &self,
        wavelength_um: f64,
        temperature_c: f64,
        axis: &'static str,
    ) -> Result<f64> {
        Ok(2.0
            * std::f64::consts::PI
            * self.refractive_index_for(wavelength_um, temperature_c, axis)?
            / wavelength_um)
    }
}

/// One axis entry of the crystal data file.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct AxisData {
    form: SellmeierForm,
    coefficients: Vec<f64>,
    thermal: ThermalCorrection,
    t_ref_c: f64,
    valid_range_um: [f64; 2],
}

/// On-disk crystal/dispersion data file (see `data/ktp.json`).
#[derive(Debug, Clone, Serialize, Deserialize)]
struct CrystalData {
    name: String,
    #[serde(default)]
    uv_caveat_below_um: Option<f64>,
    axes: CrystalAxes,
    #[serde(default)]
    source: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CrystalAxes {
    y: AxisData,
    z: AxisData,
}

/// A periodically poled crystal: geometry plus one dispersion model per axis.
#[derive(Debug, Clone)]
pub struct CrystalSpec {
    pub name: String,
    /// Crystal length along the propagation direction, in mm.
    pub length_mm: f64,
    /// Poling period Λ in µm.
    pub poling_period_um: f64,
    pub model_y: SellmeierModel,
    pub model_z: SellmeierModel,
    /// Wavelengths below this (µm) are valid but flagged: the Sellmeier and
    /// thermo-optic fits are extrapolated near the UV edge.
    pub uv_caveat_below_um: Option<f64>,
    /// Citation strings carried over from the data file.
    pub source: Vec<String>,
}

/// Shipped KTP dispersion data, embedded so the binary runs without files.
pub const KTP_JSON: &str = include_str!("../data/ktp.json");

impl CrystalSpec {
    /// Builds a crystal from already-validated models.
    pub fn new(
        name: impl Into<String>,
        length_mm: f64,
        poling_period_um: f64,
        model_y: SellmeierModel,
        model_z: SellmeierModel,
    ) -> Result<Self> {
        if !(length_mm > 0.0) {
            return Err(Error::InvalidInput(format!(
                "crystal length {length_mm} mm must be positive"
            )));
        }
        if !(poling_period_um > 0.0) {
            return Err(Error::InvalidInput(format!(
                "poling period {poling_period_um} um must be positive"
            )));
        }
        Ok(Self {
            name: name.into(),
            length_mm,
            poling_period_um,
            model_y,
            model_z,
            uv_caveat_below_um: None,
            source: Vec::new(),
        })
    }

    /// Parses a crystal data file (JSON) and attaches the run geometry.
    pub fn from_json_str(json: &str, length_mm: f64, poling_period_um: f64) -> Result<Self> {
        let data: CrystalData = serde_json::from_str(json)?;
        let build = |a: AxisData| {
            SellmeierModel::new(
                a.form,
                a.coefficients,
                a.thermal,
                a.t_ref_c,
                a.valid_range_um,
            )
        };
        let mut spec = Self::new(
            data.name,
            length_mm,
            poling_period_um,
            build(data.axes.y)?,
            build(data.axes.z)?,
        )?;
        spec.uv_caveat_below_um = data.uv_caveat_below_um;
        spec.source = data.source;
        Ok(spec)
    }

    /// The shipped PPKTP crystal: 10 mm long, Λ = 10 µm.
    pub fn ktp() -> Self {
        Self::from_json_str(KTP_JSON, 10.0, 10.0).expect("embedded ktp.json is valid")
    }

    /// Same dispersion data with different geometry.
    pub fn ktp_with(length_mm: f64, poling_period_um: f64) -> Result<Self> {
        Self::from_json_str(KTP_JSON, length_mm, poling_period_um)
    }

    pub fn model(&self, axis: Axis) -> &SellmeierModel {
        match axis {
            Axis::Y => &self.model_y,
            Axis::Z => &self.model_z,
        }
    }

    pub fn refractive_index(
        &self,
        axis: Axis,
        wavelength_um: f64,
        temperature_c: f64,
    ) -> Result<f64> {
        self.model(axis)
            .refractive_index_for(wavelength_um, temperature_c, axis.name())
    }

    pub fn wave_vector(&self, axis: Axis, wavelength_um: f64, temperature_c: f64) -> Result<f64> {
        self.model(axis)
            .wave_vector_for(wavelength_um, temperature_c, axis.name())
    }

    pub fn length_um(&self) -> f64 {
        self.length_mm * 1e3
    }

    /// True when a wavelength falls in the flagged UV-edge band.
    pub fn uv_caveat(&self, wavelength_um: f64) -> bool {
        match self.uv_caveat_below_um {
            Some(thr) => wavelength_um < thr,
            None => false,
        }
    }
}
