//! Working with the dispersion layer directly: refractive indices, thermal
//! shifts, wave vectors, and loading a crystal from a JSON data file.
//!
//! Run with: `cargo run --example dispersion_basics`

use qpmlab::dispersion::{Axis, CrystalSpec, KTP_JSON};

fn main() -> qpmlab::Result<()> {
    let crystal = CrystalSpec::ktp();
    println!("{}", crystal.name);
    for line in &crystal.source {
        println!("  {line}");
    }
    println!();

    println!("refractive indices at 25 °C:");
    println!("  λ (nm)     n_y        n_z        birefringence");
    for lam in [0.40463, 0.532, 0.80927, 1.064, 1.55] {
        let ny = crystal.refractive_index(Axis::Y, lam, 25.0)?;
        let nz = crystal.refractive_index(Axis::Z, lam, 25.0)?;
        println!("  {:>7.2}   {ny:.6}   {nz:.6}   {:.6}", lam * 1e3, nz - ny);
    }
    println!();

    println!("thermal response at 809.27 nm (Δn per axis):");
    for t in [25.0, 60.0, 100.0, 150.0] {
        let dy = crystal.refractive_index(Axis::Y, 0.80927, t)?
            - crystal.refractive_index(Axis::Y, 0.80927, 25.0)?;
        let dz = crystal.refractive_index(Axis::Z, 0.80927, t)?
            - crystal.refractive_index(Axis::Z, 0.80927, 25.0)?;
        println!("  {t:>5.0} °C   Δn_y = {dy:+.6e}   Δn_z = {dz:+.6e}");
    }
    println!();

    let k = crystal.wave_vector(Axis::Z, 0.80927, 25.0)?;
    println!("wave vector k_z(809.27 nm, 25 °C) = {k:.6} rad/µm");
    println!();

    // out-of-range queries fail with the offending value and range
    match crystal.refractive_index(Axis::Y, 0.25, 25.0) {
        Err(e) => println!("expected domain error: {e}"),
        Ok(_) => unreachable!(),
    }
    // UV-edge band is valid but flagged
    println!(
        "311.4 nm inside validity, flagged UV-edge: {}",
        crystal.uv_caveat(0.3114)
    );
    println!();

    // the same data file can be loaded with different run geometry
    let thin = CrystalSpec::from_json_str(KTP_JSON, 5.0, 9.5)?;
    println!(
        "custom geometry: {} with L = {} mm, Λ = {} µm",
        thin.name, thin.length_mm, thin.poling_period_um
    );
    Ok(())
}
