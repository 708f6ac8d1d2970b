//! Joint spectral intensities under narrowband and broadband pumping.
//!
//! With a 10 MHz violet laser the pump envelope pins ω_s + ω_i and the JSI
//! stretches along the anti-diagonal (principal-axis slope −1). With a
//! broadband UV pump the phase-matching function takes over and the ridge
//! rotates away from −1.
//!
//! Writes each grid to ./jsi_out/ as a CSV matrix plus an axes file.
//!
//! Run with: `cargo run --release --example jsi_grids`

use qpmlab::dispersion::CrystalSpec;
use qpmlab::qpm::{solve_degenerate_pump, ProcessType, QpmProcess};
use qpmlab::spdc::{jsi, linewidth_mhz_to_nm, principal_axis_slope, JsiGridSpec, PumpEnvelope};

fn main() -> qpmlab::Result<()> {
    let crystal = CrystalSpec::ktp();
    let out = std::path::Path::new("jsi_out");
    std::fs::create_dir_all(out)?;

    let cases: [(ProcessType, u32, f64, Option<f64>, &str); 4] = [
        // narrowband: bandwidth equivalent to a 10 MHz laser linewidth
        (ProcessType::TypeII, 1, 0.40463, None, "narrowband"),
        (ProcessType::TypeI, 5, 0.40737, None, "narrowband"),
        (ProcessType::Type0, 3, 0.40192, None, "narrowband"),
        // broadband UV pump, 2 nm FWHM
        (ProcessType::TypeII, 5, 0.31143, Some(2.0), "broadband"),
    ];

    println!("process        pump (nm)   bandwidth (nm)   principal-axis slope");
    println!("-------------  ----------  ---------------  --------------------");
    for (ptype, order, hint, bandwidth, kind) in cases {
        let proc = QpmProcess::new(ptype, order)?;
        let pump_center = solve_degenerate_pump(&crystal, proc, 25.0, (hint - 0.01, hint + 0.01))?;
        let bw_nm = bandwidth.unwrap_or_else(|| linewidth_mhz_to_nm(10.0, pump_center));
        let pump = PumpEnvelope::new(pump_center, bw_nm)?;
        let grid = jsi(
            &crystal,
            proc,
            &pump,
            25.0,
            &JsiGridSpec {
                samples: 128,
                ..Default::default()
            },
        )?;
        let slope = principal_axis_slope(&grid);

        let stem = format!("{}_m{}_{}", ptype.label().replace('-', ""), order, kind);
        let mut matrix = String::new();
        for row in &grid.values {
            matrix.push_str(
                &row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            matrix.push('\n');
        }
        std::fs::write(out.join(format!("{stem}.csv")), matrix)?;
        let mut axes = String::from("# signal_nm,idler_nm per index\n");
        for (s, i) in grid.signal_um.iter().zip(&grid.idler_um) {
            axes.push_str(&format!("{},{}\n", s * 1e3, i * 1e3));
        }
        std::fs::write(out.join(format!("{stem}_axes.csv")), axes)?;

        println!(
            "{:<7} m={}    {:>10.3}  {:>15.3e}  {:>20.4}",
            ptype.label(),
            order,
            pump_center * 1e3,
            bw_nm,
            slope
        );
    }
    Ok(())
}
