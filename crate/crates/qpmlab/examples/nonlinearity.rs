//! Effective nonlinearity of each process/order: the tensor element d_eff
//! selected by the polarization triple, the signed Fourier coefficient G_m of
//! the 50%-duty square-wave grating, and the magnitude |d_eff·G_m| that sets
//! the pair rate.
//!
//! Run with: `cargo run --example nonlinearity`

use qpmlab::qpm::{effective_nonlinearity, fourier_coefficient, ProcessType, QpmProcess};

fn main() {
    println!("Fourier coefficients of the square-wave poling function:");
    for m in 1..=8i64 {
        println!("  G_{m} = {:+.6}", fourier_coefficient(m).unwrap());
    }
    println!("  (even orders vanish: a 50% duty cycle has no even harmonics)");
    println!();

    println!("order  type     d_eff (pm/V)   G_m        |d_eff·G_m| (pm/V)");
    println!("-----  -------  ------------   --------   ------------------");
    for order in [1u32, 3, 5, 7] {
        for ptype in ProcessType::ALL {
            let proc = QpmProcess::new(ptype, order).unwrap();
            let nl = effective_nonlinearity(proc);
            println!(
                "{order:>5}  {:<7}  {:>12.2}   {:>+8.4}   {:>18.2}",
                ptype.label(),
                nl.d_eff_pm_per_v,
                nl.g_m,
                nl.d_z_magnitude_pm_per_v()
            );
        }
    }
    println!();
    println!("even orders are rejected outright:");
    println!(
        "  {:?}",
        QpmProcess::new(ProcessType::Type0, 2)
            .unwrap_err()
            .to_string()
    );
}
