// The three ways of naming a cone, its embedding, and the curvature that
// survives as an effective potential.
//
//     cargo run -p conical --example cone_geometry

use conical::geometry::{ConeGeometry, PhysicalConstants};

pub fn run_example() -> conical::Result<()> {
    let consts = PhysicalConstants::default();
    for geom in [
        ConeGeometry::from_sigma(0.5)?,
        ConeGeometry::from_deficit_angle(std::f64::consts::FRAC_PI_2)?,
        ConeGeometry::from_string_density(0.05)?,
    ] {
        println!(
            "sigma {:.4}  deficit angle {:.4}  G*eta {:.4}",
            geom.sigma(),
            geom.deficit_angle(),
            geom.string_density()
        );
        let p = geom.embed(1.0, 0.3)?;
        println!(
            "  (r, theta) = (1, 0.3) sits at ({:.4}, {:.4}, {:.4})",
            p[0], p[1], p[2]
        );
        println!(
            "  H(1) = {:.4}, V_eff(1) = {:.4}, apex curvature 2pi(1-sigma)/sigma = {:.4}",
            geom.mean_curvature(1.0)?,
            geom.effective_potential(&consts, 1.0)?,
            geom.gaussian_curvature_strength()
        );
        for m in 1..=3 {
            print!("  mu({m}) = {:.4}", geom.effective_index_mu(m)?.get());
        }
        println!();
    }
    // s-waves need a repulsive core: mu(0) is imaginary on any proper cone
    let err = ConeGeometry::from_sigma(0.5)?
        .effective_index_mu(0)
        .unwrap_err();
    println!("mu(0): {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
