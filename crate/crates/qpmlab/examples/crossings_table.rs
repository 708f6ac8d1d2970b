//! Degenerate cross points of the 10 µm PPKTP grating at 25 °C: for each
//! poling order and phase-matching type, the pump wavelength where signal and
//! idler emerge degenerate at 2λp, plus the effective nonlinearity.
//!
//! Run with: `cargo run --example crossings_table`

use qpmlab::dispersion::CrystalSpec;
use qpmlab::qpm::{effective_nonlinearity, solve_degenerate_pump, ProcessType, QpmProcess};

fn main() {
    let crystal = CrystalSpec::ktp();
    println!(
        "crystal: {} (L = {} mm, Λ = {} µm, T = 25 °C)",
        crystal.name, crystal.length_mm, crystal.poling_period_um
    );
    println!();
    println!("order  type     polarization  pump (nm)  signal/idler (nm)  d(z) (pm/V)");
    println!("-----  -------  ------------  ---------  -----------------  -----------");

    for order in [1u32, 3, 5] {
        for ptype in ProcessType::ALL {
            let proc = QpmProcess::new(ptype, order).unwrap();
            // each curve crosses Λ = 10 µm once within the validity window
            let pump = solve_degenerate_pump(&crystal, proc, 25.0, (0.301, 2.2))
                .expect("one cross point per process");
            let nl = effective_nonlinearity(proc);
            println!(
                "{order:>5}  {:<7}  {:<12}  {:>9.2}  {:>17.2}  {:>11.2}",
                ptype.label(),
                ptype.polarization(),
                pump * 1e3,
                2.0 * pump * 1e3,
                nl.d_z_magnitude_pm_per_v(),
            );
        }
    }

    println!();
    println!("three of the nine processes sit within a 6 nm pump window around 405 nm,");
    println!("so one tunable violet laser can drive type-0, type-I and type-II SPDC");
    println!("in the same crystal.");
}
