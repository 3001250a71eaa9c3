// Composition law and trace of the radial kernel, and what a truncated grid
// does to them.
//
//     cargo run -p conical --example semigroup

use conical::grid::RadialGrid;
use conical::propagator::{radial_trace, semigroup_defect, EuclideanTime};
use conical::spectrum::OscillatorModel;

pub fn run_example() -> conical::Result<()> {
    let model = OscillatorModel::natural(0.5, 1.0)?;
    let half = EuclideanTime::new(0.5)?;
    let wide = RadialGrid::new(1e-4, 12.0, 2000)?;
    let short = RadialGrid::new(1e-4, 1.5, 400)?;
    for (label, grid) in [("[1e-4, 12]", wide), ("[1e-4, 1.5]", short)] {
        let rep = semigroup_defect(&model, 1, 0.8, 1.3, half, half, &grid)?;
        println!(
            "grid {label}: composed {:.12} direct {:.12} defect {:.2e} boundary mass {:.1e}",
            rep.composed, rep.direct, rep.defect, rep.boundary_mass
        );
        if let Some(w) = rep.warning {
            println!("  warning: {w}");
        }
    }
    for beta in [0.5, 1.0, 2.0] {
        let t = radial_trace(&model, 1, EuclideanTime::new(beta)?, &wide)?;
        println!(
            "trace m=1 beta={beta}: grid {t:.12}  ladder {:.12}",
            model.partition_sum(1, beta)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
