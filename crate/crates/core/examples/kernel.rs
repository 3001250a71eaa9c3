// Euclidean propagator on the cone: partial-wave sum with a certified
// truncation bound, and the radial kernel as closed form vs eigenfunction sum.
//
//     cargo run -p conical --example kernel

use conical::propagator::{
    full_kernel, full_kernel_spectral, radial_kernel_closed, radial_kernel_spectral, EuclideanTime,
    KernelQuery,
};
use conical::spectrum::OscillatorModel;

pub fn run_example() -> conical::Result<()> {
    let model = OscillatorModel::natural(0.5, 1.0)?;
    let beta = EuclideanTime::new(1.0)?;

    println!("radial kernel R_0(1, 1.5; 1):");
    let closed = radial_kernel_closed(&model, 0, 1.0, 1.5, beta)?;
    println!("  closed form      {closed:.15}");
    for n_max in [2, 5, 10, 20] {
        let s = radial_kernel_spectral(&model, 0, 1.0, 1.5, beta, n_max)?;
        println!(
            "  spectral n<={n_max:<3} {:.15}  (last term {:.1e})",
            s.value, s.last_term
        );
    }

    println!("full kernel K(1, 1.5, dtheta; 1):");
    for m_max in [0, 2, 4, 8, 16] {
        let q = KernelQuery::new(1.0, 1.5, 1.0, m_max, 0)?;
        let k = full_kernel(&model, &q, 0.8)?;
        println!(
            "  m_max={m_max:<3} K={:.15}  tail bound {:.2e}",
            k.value, k.tail_bound
        );
    }
    let q = KernelQuery::new(1.0, 1.5, 1.0, 16, 30)?;
    let s = full_kernel_spectral(&model, &q, 0.8)?;
    println!(
        "  spectral      K={:.15}  remainder {:.2e}",
        s.value,
        s.spectral_remainder.unwrap_or(0.0)
    );

    println!("angular profile at equal radii:");
    for dtheta in [0.0, 0.5, 1.0, 2.0, std::f64::consts::PI] {
        let k = full_kernel(&model, &KernelQuery::new(1.2, 1.2, 0.5, 30, 0)?, dtheta)?;
        println!("  dtheta={dtheta:.3}  K={:.10}", k.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
