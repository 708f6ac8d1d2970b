//! Temperature tuning curves: signal/idler center wavelengths against crystal
//! temperature at fixed pump, for the three processes reachable with one
//! violet laser.
//!
//! Each process is pumped at its own 25 °C degenerate wavelength, so the pair
//! starts degenerate and splits as the crystal heats. Note how differently
//! the three processes tune: the type-II split opens by a few nm over 50 °C
//! while the broadband type-0/type-I pairs fly apart by tens of nm.
//!
//! Run with: `cargo run --example tuning_curves`

use qpmlab::dispersion::CrystalSpec;
use qpmlab::qpm::{solve_degenerate_pump, ProcessType, QpmProcess};
use qpmlab::spdc::{tuning_curve, TuningPoint};

fn main() -> qpmlab::Result<()> {
    let crystal = CrystalSpec::ktp();

    for (ptype, order, hint) in [
        (ProcessType::TypeII, 1, 0.40463),
        (ProcessType::TypeI, 5, 0.40737),
        (ProcessType::Type0, 3, 0.40192),
    ] {
        let proc = QpmProcess::new(ptype, order)?;
        let pump = solve_degenerate_pump(&crystal, proc, 25.0, (hint - 0.01, hint + 0.01))?;
        let curve = tuning_curve(&crystal, proc, pump, (25.0, 85.0), 5.0)?;

        println!(
            "{} m={} pumped at {:.3} nm",
            ptype.label(),
            order,
            pump * 1e3
        );
        println!("  T (°C)   signal (nm)   idler (nm)   split (nm)");
        for (t, point) in &curve.points {
            match point {
                TuningPoint::Degenerate { wavelength_um } => println!(
                    "  {t:>6.1}   {0:>11.3}   {0:>10.3}   degenerate",
                    wavelength_um * 1e3
                ),
                TuningPoint::Split {
                    signal_um,
                    idler_um,
                } => println!(
                    "  {t:>6.1}   {:>11.3}   {:>10.3}   {:>10.3}",
                    signal_um * 1e3,
                    idler_um * 1e3,
                    (idler_um - signal_um) * 1e3
                ),
                TuningPoint::OutOfRange => println!("  {t:>6.1}   out of tuning range"),
            }
        }
        if let Some(t) = curve.degenerate_temperature_c {
            println!("  spectral degeneracy at {t:.2} °C");
        }
        println!();
    }
    Ok(())
}
