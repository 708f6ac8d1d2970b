//! Command-line front end: turns the solvers into reproducible CSV/JSON data
//! files.
//!
//! Every command writes its data file(s) plus a `*.manifest.json` sidecar
//! recording the command, full parameter set, crystal checksum, tool version,
//! timestamp and any caveat flags. Identical invocations produce byte-identical
//! data files; manifests differ only in the timestamp.
//!
//! Units on the command line: wavelengths in nm, periods in µm, temperatures
//! in °C. Exit codes: 0 success (including infeasible-marked rows), 1 solver
//! failure, 2 usage error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dispersion::{CrystalSpec, KTP_JSON};
use crate::error::{Error, Result};
use crate::numerics;
use crate::qpm::{self, ProcessType, QpmProcess};
use crate::spdc::{self, JsiGridSpec, PumpEnvelope, TuningPoint};

/// Environment variable naming a directory searched for crystal data files.
pub const CRYSTAL_DIR_ENV: &str = "QPMLAB_CRYSTAL_DIR";

/// Short-wavelength validity edge of the thermo-optic polynomials (µm);
/// temperature predictions below this are extrapolations.
pub const THERMO_OPTIC_FIT_MIN_UM: f64 = 0.53;

#[derive(Debug, Parser)]
#[command(
    name = "qpmlab",
    version,
    about = "Quasi-phase-matching engineering for periodically poled KTP",
    after_help = "Data files land in --out-dir together with *.manifest.json sidecars.\n\
                  Crystal data resolution: --crystal PATH, then $QPMLAB_CRYSTAL_DIR/ktp.json,\n\
                  then the embedded KTP data."
)]
pub struct Cli {
    /// Crystal dispersion data file (JSON).
    #[arg(long, global = true)]
    pub crystal: Option<PathBuf>,

    /// Output directory for data files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    /// Poling period Λ in µm.
    #[arg(long, global = true, default_value_t = 10.0)]
    pub period: f64,

    /// Crystal length in mm.
    #[arg(long, global = true, default_value_t = 10.0)]
    pub length: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ProcessArgs {
    /// Phase-matching type: 0, I or II.
    #[arg(long = "type", value_parser = parse_process)]
    pub process: ProcessType,

    /// Poling order m (odd).
    #[arg(long, value_parser = parse_odd_order)]
    pub order: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degenerate cross points for every type at the given orders: the pump,
    /// signal and idler wavelengths where each process phase-matches.
    Crossings {
        /// Comma-separated odd poling orders.
        #[arg(long, default_value = "1,3,5", value_parser = parse_orders)]
        orders: OrdersArg,
        /// Crystal temperature in °C.
        #[arg(long, default_value_t = 25.0)]
        temp: f64,
    },
    /// Poling period vs pump wavelength for one process (degenerate case).
    PeriodScan {
        #[command(flatten)]
        process: ProcessArgs,
        /// Pump scan range in nm, as "lo,hi".
        #[arg(long = "pump-range", value_parser = parse_pair)]
        pump_range: PairArg,
        #[arg(long, default_value_t = 25.0)]
        temp: f64,
        /// Number of samples across the range.
        #[arg(long, default_value_t = 501)]
        samples: usize,
    },
    /// Signal/idler center wavelengths vs temperature at fixed pump.
    TuningCurve {
        #[command(flatten)]
        process: ProcessArgs,
        /// Pump wavelength in nm.
        #[arg(long)]
        pump: f64,
        /// Temperature range in °C, as "lo,hi"; sampled in 1 °C steps.
        #[arg(long = "temp-range", default_value = "20,200", value_parser = parse_pair)]
        temp_range: PairArg,
    },
    /// Theoretical sinc² spectrum at one temperature; FWHM lands in the
    /// manifest.
    Spectrum {
        #[command(flatten)]
        process: ProcessArgs,
        /// Pump wavelength in nm.
        #[arg(long)]
        pump: f64,
        #[arg(long, default_value_t = 25.0)]
        temp: f64,
        /// Signal window in nm as "lo,hi"; derived from the tuning point when
        /// omitted.
        #[arg(long, value_parser = parse_pair)]
        window: Option<PairArg>,
        #[arg(long, default_value_t = 2048)]
        samples: usize,
    },
    /// Joint spectral intensity grid (CSV matrix + JSON axes sidecar).
    Jsi {
        #[command(flatten)]
        process: ProcessArgs,
        /// Pump center wavelength in nm.
        #[arg(long)]
        pump: f64,
        /// Pump bandwidth (FWHM) in nm. No default: narrowband lasers sit far
        /// below nm scale (10 MHz ≈ 5.5e-6 nm at 404 nm) while broadband
        /// pumps are nm scale, so the choice must be explicit.
        #[arg(long)]
        bandwidth: f64,
        #[arg(long, default_value_t = 25.0)]
        temp: f64,
        /// Samples per grid axis.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Window applied to both axes in nm as "lo,hi"; auto when omitted.
        #[arg(long, value_parser = parse_pair)]
        window: Option<PairArg>,
    },
    /// Effective nonlinearity of one process: d_eff, signed G_m, |d_eff·G_m|.
    Nonlinearity {
        #[command(flatten)]
        process: ProcessArgs,
    },
}

/// Comma-separated odd orders, validated at parse time.
#[derive(Debug, Clone)]
pub struct OrdersArg(pub Vec<u32>);

/// A "lo,hi" pair, validated at parse time.
#[derive(Debug, Clone, Copy)]
pub struct PairArg(pub f64, pub f64);

fn parse_process(s: &str) -> std::result::Result<ProcessType, String> {
    s.parse::<ProcessType>().map_err(|e| e.to_string())
}

fn parse_odd_order(s: &str) -> std::result::Result<u32, String> {
    let m: u32 = s
        .parse()
        .map_err(|_| format!("{s:?} is not a positive integer"))?;
    if m == 0 || m.is_multiple_of(2) {
        return Err(format!("poling order must be odd, got {m}"));
    }
    Ok(m)
}

fn parse_orders(s: &str) -> std::result::Result<OrdersArg, String> {
    let orders = s
        .split(',')
        .map(|p| parse_odd_order(p.trim()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if orders.is_empty() {
        return Err("no orders given".into());
    }
    Ok(OrdersArg(orders))
}

fn parse_pair(s: &str) -> std::result::Result<PairArg, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("{s:?} is not of the form \"lo,hi\""));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad number {:?}", parts[0]))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad number {:?}", parts[1]))?;
    if !(lo < hi) {
        return Err(format!("need lo < hi, got {lo} and {hi}"));
    }
    Ok(PairArg(lo, hi))
}

// ---------------------------------------------------------------------------
// manifest
// ---------------------------------------------------------------------------

/// Provenance sidecar written next to every data file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub timestamp_utc: String,
    pub crystal_name: String,
    pub crystal_source: String,
    pub crystal_sha256: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub caveats: Vec<String>,
    pub results: BTreeMap<String, serde_json::Value>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    fn new(command: &str, crystal: &LoadedCrystal) -> Self {
        Self {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_utc: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            crystal_name: crystal.spec.name.clone(),
            crystal_source: crystal.source.clone(),
            crystal_sha256: crystal.sha256.clone(),
            parameters: BTreeMap::new(),
            caveats: Vec::new(),
            results: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
    }

    fn result(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

pub struct LoadedCrystal {
    pub spec: CrystalSpec,
    pub source: String,
    pub sha256: String,
}

/// Resolves the crystal data: explicit `--crystal` path (also searched inside
/// `$QPMLAB_CRYSTAL_DIR`), then `$QPMLAB_CRYSTAL_DIR/ktp.json`, then the
/// embedded KTP data.
pub fn load_crystal(path: Option<&Path>, length_mm: f64, period_um: f64) -> Result<LoadedCrystal> {
    let from_file = |p: &Path| -> Result<LoadedCrystal> {
        let text = std::fs::read_to_string(p)?;
        Ok(LoadedCrystal {
            spec: CrystalSpec::from_json_str(&text, length_mm, period_um)?,
            source: p.display().to_string(),
            sha256: sha256_hex(text.as_bytes()),
        })
    };
    if let Some(p) = path {
        if p.exists() {
            return from_file(p);
        }
        if p.is_relative() {
            if let Ok(dir) = std::env::var(CRYSTAL_DIR_ENV) {
                let candidate = Path::new(&dir).join(p);
                if candidate.exists() {
                    return from_file(&candidate);
                }
            }
        }
        return Err(Error::InvalidInput(format!(
            "crystal file {} not found (also searched ${CRYSTAL_DIR_ENV})",
            p.display()
        )));
    }
    if let Ok(dir) = std::env::var(CRYSTAL_DIR_ENV) {
        let candidate = Path::new(&dir).join("ktp.json");
        if candidate.exists() {
            return from_file(&candidate);
        }
    }
    Ok(LoadedCrystal {
        spec: CrystalSpec::from_json_str(KTP_JSON, length_mm, period_um)?,
        source: "embedded:ktp.json".to_string(),
        sha256: sha256_hex(KTP_JSON.as_bytes()),
    })
}

/// Caveat flags for a set of wavelengths (µm) and temperatures (°C).
fn caveats(crystal: &CrystalSpec, wavelengths_um: &[f64], temperatures_c: &[f64]) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(thr) = crystal.uv_caveat_below_um {
        if wavelengths_um.iter().any(|&w| w < thr) {
            out.push(format!(
                "uv-edge: wavelengths below {:.0} nm rely on extrapolated Sellmeier fits; expect nm-scale offsets versus experiment",
                thr * 1e3
            ));
        }
    }
    let t_ref = crystal.model_y.t_ref_c;
    if temperatures_c.iter().any(|&t| (t - t_ref).abs() > 1e-9)
        && wavelengths_um.iter().any(|&w| w < THERMO_OPTIC_FIT_MIN_UM)
    {
        out.push(format!(
            "thermo-optic extrapolation: dn/dT polynomials are fitted for {:.0}-1570 nm; temperature predictions involving shorter wavelengths carry large uncertainty",
            THERMO_OPTIC_FIT_MIN_UM * 1e3
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// file output
// ---------------------------------------------------------------------------

fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text)?;
    Ok(())
}

fn write_manifest(dir: &Path, stem: &str, manifest: &RunManifest) -> Result<()> {
    let mut text = serde_json::to_string_pretty(manifest)?;
    text.push('\n');
    write_text(dir, &format!("{stem}.manifest.json"), &text)
}

fn csv_text(manifest_name: &str, columns: &str, rows: &[String]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# manifest: {manifest_name}\n"));
    out.push_str(&format!("# {columns}\n"));
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    out
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

/// Runs a parsed command line. I/O and solver failures map to exit code 1 in
/// the binary; usage errors never reach this point.
pub fn run(cli: &Cli) -> Result<()> {
    let crystal = load_crystal(cli.crystal.as_deref(), cli.length, cli.period)?;
    match &cli.command {
        Command::Crossings { orders, temp } => cmd_crossings(cli, &crystal, &orders.0, *temp),
        Command::PeriodScan {
            process,
            pump_range,
            temp,
            samples,
        } => cmd_period_scan(cli, &crystal, process, *pump_range, *temp, *samples),
        Command::TuningCurve {
            process,
            pump,
            temp_range,
        } => cmd_tuning_curve(cli, &crystal, process, *pump, *temp_range),
        Command::Spectrum {
            process,
            pump,
            temp,
            window,
            samples,
        } => cmd_spectrum(cli, &crystal, process, *pump, *temp, *window, *samples),
        Command::Jsi {
            process,
            pump,
            bandwidth,
            temp,
            grid,
            window,
        } => cmd_jsi(
            cli, &crystal, process, *pump, *bandwidth, *temp, *grid, *window,
        ),
        Command::Nonlinearity { process } => cmd_nonlinearity(cli, &crystal, process),
    }
}

fn qproc(args: &ProcessArgs) -> Result<QpmProcess> {
    QpmProcess::new(args.process, args.order)
}

/// Admissible degenerate-pump window: pump and both arms inside validity.
fn degenerate_pump_window(crystal: &CrystalSpec, proc: QpmProcess) -> (f64, f64) {
    let (ax_p, ax_s, ax_i) = proc.process.axes();
    let [p_lo, p_hi] = crystal.model(ax_p).valid_range_um;
    let [s_lo, s_hi] = crystal.model(ax_s).valid_range_um;
    let [i_lo, i_hi] = crystal.model(ax_i).valid_range_um;
    let lo = p_lo.max(s_lo / 2.0).max(i_lo / 2.0) * (1.0 + 1e-9);
    let hi = p_hi.min(s_hi / 2.0).min(i_hi / 2.0) * (1.0 - 1e-9);
    (lo, hi)
}

fn cmd_crossings(cli: &Cli, crystal: &LoadedCrystal, orders: &[u32], temp: f64) -> Result<()> {
    let spec = &crystal.spec;
    let mut rows = Vec::new();
    let mut wavelengths = Vec::new();
    for &order in orders {
        for ptype in ProcessType::ALL {
            let proc = QpmProcess::new(ptype, order)?;
            let nl = qpm::effective_nonlinearity(proc);
            let window = degenerate_pump_window(spec, proc);
            let g = |lp: f64| qpm::degenerate_mismatch(spec, proc, lp, temp).unwrap_or(f64::NAN);
            let scan = numerics::scan_brackets(g, window, 6000)?;
            let pump = match scan.brackets.as_slice() {
                [single] => Some(numerics::bisect(g, single, qpm::WAVELENGTH_X_TOL_UM)?),
                _ => None,
            };
            match pump {
                Some(lp) => {
                    let arm = 2.0 * lp;
                    wavelengths.extend([lp, arm]);
                    rows.push(format!(
                        "{},{},{},{},{},{},{},{},true",
                        order,
                        ptype.label(),
                        ptype.polarization().replace(" → ", "->"),
                        lp * 1e3,
                        arm * 1e3,
                        arm * 1e3,
                        nl.d_z_magnitude_pm_per_v(),
                        nl.g_m
                    ));
                }
                None => rows.push(format!(
                    "{},{},{},,,,{},{},false",
                    order,
                    ptype.label(),
                    ptype.polarization().replace(" → ", "->"),
                    nl.d_z_magnitude_pm_per_v(),
                    nl.g_m
                )),
            }
        }
    }

    let mut manifest = RunManifest::new("crossings", crystal);
    manifest.param("orders", orders);
    manifest.param("temp_c", temp);
    manifest.param("period_um", cli.period);
    manifest.param("length_mm", cli.length);
    manifest.caveats = caveats(spec, &wavelengths, &[temp]);
    manifest.outputs = vec!["crossings.csv".into()];
    write_text(
        &cli.out_dir,
        "crossings.csv",
        &csv_text(
            "crossings.manifest.json",
            "order,type,polarization,pump_nm,signal_nm,idler_nm,d_z_pm_per_V,g_m,feasible",
            &rows,
        ),
    )?;
    write_manifest(&cli.out_dir, "crossings", &manifest)
}

fn cmd_period_scan(
    cli: &Cli,
    crystal: &LoadedCrystal,
    process: &ProcessArgs,
    pump_range: PairArg,
    temp: f64,
    samples: usize,
) -> Result<()> {
    let proc = qproc(process)?;
    let range_um = (pump_range.0 * 1e-3, pump_range.1 * 1e-3);
    let curve = qpm::period_curve(&crystal.spec, proc, range_um, temp, samples)?;
    let rows: Vec<String> = curve
        .iter()
        .map(|p| {
            format!(
                "{},{},{}",
                p.pump_um * 1e3,
                fmt_opt(p.period_um),
                p.period_um.is_some()
            )
        })
        .collect();

    let mut manifest = RunManifest::new("period-scan", crystal);
    manifest.param("type", process.process.label());
    manifest.param("order", process.order);
    manifest.param("pump_range_nm", [pump_range.0, pump_range.1]);
    manifest.param("temp_c", temp);
    manifest.param("samples", samples);
    manifest.param("length_mm", cli.length);
    manifest.caveats = caveats(&crystal.spec, &[range_um.0, range_um.1], &[temp]);
    manifest.result(
        "feasible_points",
        curve.iter().filter(|p| p.period_um.is_some()).count(),
    );
    manifest.outputs = vec!["period_scan.csv".into()];
    write_text(
        &cli.out_dir,
        "period_scan.csv",
        &csv_text(
            "period_scan.manifest.json",
            "pump_nm,period_um,feasible",
            &rows,
        ),
    )?;
    write_manifest(&cli.out_dir, "period_scan", &manifest)
}

fn cmd_tuning_curve(
    cli: &Cli,
    crystal: &LoadedCrystal,
    process: &ProcessArgs,
    pump_nm: f64,
    temp_range: PairArg,
) -> Result<()> {
    let proc = qproc(process)?;
    let lp = pump_nm * 1e-3;
    let curve = spdc::tuning_curve(&crystal.spec, proc, lp, (temp_range.0, temp_range.1), 1.0)?;
    let rows: Vec<String> = curve
        .points
        .iter()
        .map(|(t, pt)| match pt {
            TuningPoint::Degenerate { wavelength_um } => {
                format!("{t},{0},{0},degenerate", wavelength_um * 1e3)
            }
            TuningPoint::Split {
                signal_um,
                idler_um,
            } => format!("{t},{},{},split", signal_um * 1e3, idler_um * 1e3),
            TuningPoint::OutOfRange => format!("{t},,,out_of_range"),
        })
        .collect();

    let mut manifest = RunManifest::new("tuning-curve", crystal);
    manifest.param("type", process.process.label());
    manifest.param("order", process.order);
    manifest.param("pump_nm", pump_nm);
    manifest.param("temp_range_c", [temp_range.0, temp_range.1]);
    manifest.param("period_um", cli.period);
    manifest.param("length_mm", cli.length);
    manifest.caveats = caveats(&crystal.spec, &[lp], &[temp_range.0, temp_range.1]);
    manifest.result("degenerate_temperature_c", curve.degenerate_temperature_c);
    manifest.result(
        "in_range_points",
        curve
            .points
            .iter()
            .filter(|(_, p)| !matches!(p, TuningPoint::OutOfRange))
            .count(),
    );
    manifest.outputs = vec!["tuning_curve.csv".into()];
    write_text(
        &cli.out_dir,
        "tuning_curve.csv",
        &csv_text(
            "tuning_curve.manifest.json",
            "temp_C,signal_nm,idler_nm,status",
            &rows,
        ),
    )?;
    write_manifest(&cli.out_dir, "tuning_curve", &manifest)
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    cli: &Cli,
    crystal: &LoadedCrystal,
    process: &ProcessArgs,
    pump_nm: f64,
    temp: f64,
    window: Option<PairArg>,
    samples: usize,
) -> Result<()> {
    let proc = qproc(process)?;
    let lp = pump_nm * 1e-3;
    let window_um = match window {
        Some(PairArg(lo, hi)) => (lo * 1e-3, hi * 1e-3),
        None => spdc::auto_window(&crystal.spec, proc, lp, temp)?,
    };
    let curve = spdc::spectrum(&crystal.spec, proc, lp, temp, window_um, samples)?;
    let rows: Vec<String> = curve
        .samples
        .iter()
        .map(|(l, y)| format!("{},{}", l * 1e3, y))
        .collect();

    let mut manifest = RunManifest::new("spectrum", crystal);
    manifest.param("type", process.process.label());
    manifest.param("order", process.order);
    manifest.param("pump_nm", pump_nm);
    manifest.param("temp_c", temp);
    manifest.param("window_nm", [window_um.0 * 1e3, window_um.1 * 1e3]);
    manifest.param("samples", samples);
    manifest.param("period_um", cli.period);
    manifest.param("length_mm", cli.length);
    manifest.caveats = caveats(&crystal.spec, &[lp, window_um.0, window_um.1], &[temp]);
    manifest.result("fwhm_nm", curve.fwhm_um * 1e3);
    manifest.result("peak_nm", curve.peak_um * 1e3);
    manifest.result(
        "arms",
        curve
            .arms
            .iter()
            .map(|a| {
                let mut m = BTreeMap::new();
                m.insert("center_nm".to_string(), a.center_um * 1e3);
                m.insert("fwhm_nm".to_string(), a.fwhm_um * 1e3);
                m
            })
            .collect::<Vec<_>>(),
    );
    manifest.outputs = vec!["spectrum.csv".into()];
    write_text(
        &cli.out_dir,
        "spectrum.csv",
        &csv_text(
            "spectrum.manifest.json",
            "signal_nm,normalized_intensity",
            &rows,
        ),
    )?;
    write_manifest(&cli.out_dir, "spectrum", &manifest)
}

#[derive(Serialize)]
struct JsiAxes {
    manifest: String,
    pump_center_nm: f64,
    pump_bandwidth_fwhm_nm: f64,
    temperature_c: f64,
    principal_axis_slope: f64,
    signal_nm: Vec<f64>,
    idler_nm: Vec<f64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_jsi(
    cli: &Cli,
    crystal: &LoadedCrystal,
    process: &ProcessArgs,
    pump_nm: f64,
    bandwidth_nm: f64,
    temp: f64,
    grid_samples: usize,
    window: Option<PairArg>,
) -> Result<()> {
    let proc = qproc(process)?;
    let lp = pump_nm * 1e-3;
    let pump = PumpEnvelope::new(lp, bandwidth_nm)?;
    let window_um = window.map(|PairArg(lo, hi)| (lo * 1e-3, hi * 1e-3));
    let grid_spec = JsiGridSpec {
        signal_window_um: window_um,
        idler_window_um: window_um,
        samples: grid_samples,
    };
    let grid = spdc::jsi(&crystal.spec, proc, &pump, temp, &grid_spec)?;
    let slope = spdc::principal_axis_slope(&grid);

    let rows: Vec<String> = grid
        .values
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();

    let mut manifest = RunManifest::new("jsi", crystal);
    manifest.param("type", process.process.label());
    manifest.param("order", process.order);
    manifest.param("pump_nm", pump_nm);
    manifest.param("bandwidth_fwhm_nm", bandwidth_nm);
    manifest.param("temp_c", temp);
    manifest.param("grid", grid_samples);
    manifest.param("window_nm", window.map(|PairArg(lo, hi)| [lo, hi]));
    manifest.param("period_um", cli.period);
    manifest.param("length_mm", cli.length);
    let mut lams = vec![lp];
    lams.extend([grid.signal_um[0], *grid.signal_um.last().unwrap()]);
    manifest.caveats = caveats(&crystal.spec, &lams, &[temp]);
    manifest.result("principal_axis_slope", slope);
    manifest.outputs = vec!["jsi.csv".into(), "jsi_axes.json".into()];

    write_text(
        &cli.out_dir,
        "jsi.csv",
        &csv_text(
            "jsi.manifest.json",
            "normalized intensity matrix: row i = signal_nm[i] (jsi_axes.json), column j = idler_nm[j]",
            &rows,
        ),
    )?;
    let axes = JsiAxes {
        manifest: "jsi.manifest.json".to_string(),
        pump_center_nm: pump_nm,
        pump_bandwidth_fwhm_nm: bandwidth_nm,
        temperature_c: temp,
        principal_axis_slope: slope,
        signal_nm: grid.signal_um.iter().map(|l| l * 1e3).collect(),
        idler_nm: grid.idler_um.iter().map(|l| l * 1e3).collect(),
    };
    let mut text = serde_json::to_string_pretty(&axes)?;
    text.push('\n');
    write_text(&cli.out_dir, "jsi_axes.json", &text)?;
    write_manifest(&cli.out_dir, "jsi", &manifest)
}

#[derive(Serialize)]
struct NonlinearityReport {
    manifest: String,
    process: String,
    polarization: String,
    order: u32,
    d_eff_pm_per_v: f64,
    g_m: f64,
    d_z_magnitude_pm_per_v: f64,
    period_um: f64,
    grating_vector_rad_per_um: f64,
}

fn cmd_nonlinearity(cli: &Cli, crystal: &LoadedCrystal, process: &ProcessArgs) -> Result<()> {
    let proc = qproc(process)?;
    let nl = qpm::effective_nonlinearity(proc);
    let report = NonlinearityReport {
        manifest: "nonlinearity.manifest.json".to_string(),
        process: process.process.label().to_string(),
        polarization: process.process.polarization().replace(" → ", "->"),
        order: process.order,
        d_eff_pm_per_v: nl.d_eff_pm_per_v,
        g_m: nl.g_m,
        d_z_magnitude_pm_per_v: nl.d_z_magnitude_pm_per_v(),
        period_um: cli.period,
        grating_vector_rad_per_um: qpm::grating_vector(process.order, cli.period),
    };
    let mut manifest = RunManifest::new("nonlinearity", crystal);
    manifest.param("type", process.process.label());
    manifest.param("order", process.order);
    manifest.param("period_um", cli.period);
    manifest.result("d_z_magnitude_pm_per_v", report.d_z_magnitude_pm_per_v);
    manifest.outputs = vec!["nonlinearity.json".into()];

    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    write_text(&cli.out_dir, "nonlinearity.json", &text)?;
    write_manifest(&cli.out_dir, "nonlinearity", &manifest)
}
