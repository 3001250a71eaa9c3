// Eigenfunctions on the cone: samples, the r^nu behaviour at the apex, and
// normalization under r dr dtheta.
//
//     cargo run -p conical --example wavefunction

use conical::spectrum::{OscillatorModel, QuantumNumbers};

pub fn run_example() -> conical::Result<()> {
    let model = OscillatorModel::natural(0.5, 1.0)?;
    for qn in [
        QuantumNumbers::new(0, 0),
        QuantumNumbers::new(1, 1),
        QuantumNumbers::new(2, -2),
    ] {
        println!(
            "n={} m={:+}: N = {:.8}, <psi|psi> = {:.12}",
            qn.n,
            qn.m,
            model.normalization_constant(qn)?,
            model.overlap(qn, qn)
        );
        for r in [0.0, 0.25, 0.5, 1.0, 2.0, 3.0] {
            let psi = model.wavefunction(qn, r, 0.4)?;
            println!(
                "  r={r:<4}  Re={:+.6}  Im={:+.6}  |psi|={:.6}",
                psi.re,
                psi.im,
                psi.norm()
            );
        }
    }
    let a = QuantumNumbers::new(0, 1);
    let b = QuantumNumbers::new(3, 1);
    println!("<0,1|3,1> = {:.2e}", model.overlap(a, b));
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
