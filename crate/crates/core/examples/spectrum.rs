// Bound-state ladder of the conical oscillator, compared with the flat plane.
//
//     cargo run -p conical --example spectrum

use conical::spectrum::OscillatorModel;

pub fn run_example() -> conical::Result<()> {
    let cone = OscillatorModel::natural(0.5, 1.0)?;
    let flat = OscillatorModel::natural(1.0, 0.0)?;
    for (label, model) in [("cone sigma=0.5 kappa=1", cone), ("flat plane", flat)] {
        println!("{label}:");
        for s in model.enumerate_states(5.0, 2) {
            println!(
                "  n={} m={:+} nu={:.6} E={:.6}{}",
                s.n,
                s.m,
                s.nu,
                s.energy,
                if s.marginal { "  (marginal)" } else { "" }
            );
        }
    }
    // the m <-> -m degeneracy is exact; the cone splits |m| levels apart
    let gaps: Vec<String> = (0..4)
        .map(|m| format!("{:.4}", cone.nu(m + 1).get() - cone.nu(m).get()))
        .collect();
    println!("nu(m+1) - nu(m) on the cone: {}", gaps.join(", "));
    println!(
        "partition sum of m=0 at beta=1: {:.6}",
        cone.partition_sum(0, 1.0)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
