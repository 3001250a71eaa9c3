// Which Schrödinger equation does the path integral solve? A finite-difference
// eigensolver with and without the Jensen-Koppe term, against E = 2n + 1 + nu.
//
//     cargo run --release -p conical --example curvature_discrimination

use conical::oracles::{podolsky_energy, reference_grid, spectrum_match_report, CurvatureTermMode};
use conical::spectrum::{OscillatorModel, QuantumNumbers};

pub fn run_example() -> conical::Result<()> {
    let model = OscillatorModel::natural(0.5, 1.0)?;
    let grid = reference_grid(&model);
    for mode in [CurvatureTermMode::JensenKoppe, CurvatureTermMode::Podolsky] {
        println!("{mode}:");
        for m in 0..=1 {
            let report = spectrum_match_report(&model, m, mode, &grid, 3)?;
            for l in &report.levels {
                println!(
                    "  n={} m={m}: numeric {:.8}  path integral {:.8}  without curvature term {:.8}  err est {:.1e}  -> {}",
                    l.n,
                    l.numeric,
                    l.analytic,
                    podolsky_energy(&model, QuantumNumbers::new(l.n, m)),
                    l.error_estimate,
                    l.verdict
                );
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
