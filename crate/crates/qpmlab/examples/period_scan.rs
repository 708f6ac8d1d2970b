//! Poling period versus pump wavelength for every process/order, written as
//! CSV files (one per process) into ./period_scan_out/.
//!
//! Plotting period_scan_out/*.csv against the horizontal line Λ = 10 µm shows
//! where each process phase-matches; the crossings are the cross-point table.
//!
//! Run with: `cargo run --example period_scan`

use qpmlab::dispersion::CrystalSpec;
use qpmlab::qpm::{period_curve, ProcessType, QpmProcess};

fn main() -> qpmlab::Result<()> {
    let crystal = CrystalSpec::ktp();
    let out = std::path::Path::new("period_scan_out");
    std::fs::create_dir_all(out)?;

    for order in [1u32, 3, 5] {
        for ptype in ProcessType::ALL {
            let proc = QpmProcess::new(ptype, order)?;
            let curve = period_curve(&crystal, proc, (0.31, 1.2), 25.0, 891)?;
            let name = format!("{}_m{}.csv", ptype.label().replace('-', ""), order);
            let mut text = String::from("# pump_nm,period_um,feasible\n");
            for p in &curve {
                text.push_str(&format!(
                    "{},{},{}\n",
                    p.pump_um * 1e3,
                    p.period_um.map(|v| v.to_string()).unwrap_or_default(),
                    p.period_um.is_some()
                ));
            }
            std::fs::write(out.join(&name), text)?;

            // report where this curve crosses the crystal's own period
            let crossing = curve.windows(2).find_map(|w| {
                let (a, b) = (w[0].period_um?, w[1].period_um?);
                ((a - 10.0).signum() != (b - 10.0).signum())
                    .then(|| w[0].pump_um + (10.0 - a) * (w[1].pump_um - w[0].pump_um) / (b - a))
            });
            match crossing {
                Some(lp) => println!(
                    "{:<7} m={}: crosses Λ = 10 µm at pump ≈ {:.2} nm  -> {}",
                    ptype.label(),
                    order,
                    lp * 1e3,
                    name
                ),
                None => println!(
                    "{:<7} m={}: no Λ = 10 µm crossing in 310-1200 nm  -> {}",
                    ptype.label(),
                    order,
                    name
                ),
            }
        }
    }
    Ok(())
}
