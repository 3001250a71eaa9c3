// The short-time Bessel factor of the sliced path integral against its
// recombined form exp(-V_eff eps) I_{m/sigma}: the ratio tends to one as the
// slice shrinks.
//
//     cargo run -p conical --example recombination

use conical::geometry::{ConeGeometry, PhysicalConstants};
use conical::oracles::{ln_short_time_bfi, recombination_ratio};
use conical::propagator::EuclideanTime;

pub fn run_example() -> conical::Result<()> {
    let geom = ConeGeometry::from_sigma(0.5)?;
    let consts = PhysicalConstants::default();
    let mut prev: Option<f64> = None;
    println!("sigma=0.5 m=1 r_hat=1");
    for k in 0..8 {
        let eps = 0.1 / 2f64.powi(k);
        let e = EuclideanTime::new(eps)?;
        let dev = (recombination_ratio(&geom, &consts, 1, 1.0, e)? - 1.0).abs();
        let rate = prev.map(|p| format!("{:.3}", p / dev)).unwrap_or_default();
        println!(
            "  eps={eps:<10.6} ln I^sigma={:<12.4} |rho-1|={dev:.4e}  halving ratio {rate}",
            ln_short_time_bfi(&geom, &consts, 1, 1.0, e)?
        );
        prev = Some(dev);
    }
    let flat = ConeGeometry::from_sigma(1.0)?;
    println!(
        "flat plane: rho = {}",
        recombination_ratio(&flat, &consts, 1, 1.0, EuclideanTime::new(0.1)?)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> conical::Result<()> {
    run_example()
}
