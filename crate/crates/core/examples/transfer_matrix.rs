// The time-sliced path integral for one angular channel, built by repeated
// quadrature of the short-time kernel and compared with the closed form.
//
//     cargo run --release -p conical --example transfer_matrix

use conical::grid::RadialGrid;
use conical::oracles::{max_interior_deviation, transfer_matrix_kernel};
use conical::propagator::{radial_kernel_closed, EuclideanTime};
use conical::spectrum::OscillatorModel;

pub fn run_example() -> conical::Result<()> {
    let grid = RadialGrid::new(0.01, 8.0, 400)?;
    let beta = EuclideanTime::new(1.0)?;
    for (label, model) in [
        ("flat, m=1", OscillatorModel::natural(1.0, 0.0)?),
        (
            "cone sigma=0.5 kappa=1, m=1",
            OscillatorModel::natural(0.5, 1.0)?,
        ),
    ] {
        println!("{label}:");
        for n in [4, 8, 16, 32] {
            let run = transfer_matrix_kernel(&model, 1, &grid, beta, n)?;
            let dev = max_interior_deviation(&model, 1, &run, 1e-2)?;
            // diagonal value near the peak of R_1(r, r; 1)
            let i = 65;
            let r = grid.node(i);
            let closed = radial_kernel_closed(&model, 1, r, r, beta)?;
            println!(
                "  N={n:<3} max interior rel dev {dev:.4}   R(r={r:.3}): sliced {:.6} closed {closed:.6}",
                run.kernel[[i, i]]
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
