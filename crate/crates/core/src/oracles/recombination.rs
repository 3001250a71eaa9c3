//! The short-time radial factor of the time-sliced cone path integral and its
//! asymptotic recombination.
//!
//! Continued to imaginary time, the factor left after the angular integrals is
//!
//! ```text
//! I_m^sigma(r) = sigma * exp{(M/hbar eps)(1 - sigma^2) r^2} * I_m(M sigma^2 r^2 / hbar eps)
//! ```
//!
//! For large `z = M r^2 / hbar eps` the one-term asymptotics of both Bessel
//! functions turn it into `exp{-V_eff eps / hbar} I_{m/sigma}(z)`; the ratio of
//! the two sides measures how fast that happens.

use crate::error::{domain, Error, Result};
use crate::geometry::{ConeGeometry, PhysicalConstants};
use crate::propagator::EuclideanTime;
use crate::specfun::ln_bessel_i_scaled;

fn check_r_hat(r_hat: f64) -> Result<()> {
    if r_hat.is_finite() && r_hat > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("r_hat must be finite and > 0, got {r_hat}")))
    }
}

/// `ln I_m^sigma(r_hat)`.
pub fn ln_short_time_bfi(
    geom: &ConeGeometry,
    consts: &PhysicalConstants,
    m: i64,
    r_hat: f64,
    eps: EuclideanTime,
) -> Result<f64> {
    check_r_hat(r_hat)?;
    let s2 = geom.sigma().powi(2);
    let z = consts.mass() * r_hat * r_hat / (consts.hbar() * eps.get());
    // I_m(s2 z) = e^{s2 z} ive(m, s2 z); the exponentials combine to e^{z}
    Ok(geom.sigma().ln() + z + ln_bessel_i_scaled(m.unsigned_abs() as f64, s2 * z)?)
}

pub fn short_time_bfi(
    geom: &ConeGeometry,
    consts: &PhysicalConstants,
    m: i64,
    r_hat: f64,
    eps: EuclideanTime,
) -> Result<f64> {
    let log_value = ln_short_time_bfi(geom, consts, m, r_hat, eps)?;
    let value = log_value.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            what: "short-time Bessel factor",
            log_value,
        })
    }
}

/// `rho(eps) = I_m^sigma(r_hat) / [exp{-V_eff(r_hat) eps / hbar} I_{m/sigma}(z)]`.
///
/// Evaluated in logs with scaled Bessel functions, so it stays finite for any
/// `z` and is exactly 1 on the flat plane.
pub fn recombination_ratio(
    geom: &ConeGeometry,
    consts: &PhysicalConstants,
    m: i64,
    r_hat: f64,
    eps: EuclideanTime,
) -> Result<f64> {
    check_r_hat(r_hat)?;
    // the recombined order must be real, as for mu(m)
    geom.effective_index_mu(m)?;
    let s = geom.sigma();
    let z = consts.mass() * r_hat * r_hat / (consts.hbar() * eps.get());
    let am = m.unsigned_abs() as f64;
    let v_eff = geom.effective_potential(consts, r_hat)?;
    let log_ratio = s.ln() + ln_bessel_i_scaled(am, s * s * z)? + v_eff * eps.get() / consts.hbar()
        - ln_bessel_i_scaled(am / s, z)?;
    Ok(log_ratio.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_i;

    fn eps(e: f64) -> EuclideanTime {
        EuclideanTime::new(e).unwrap()
    }

    fn cone(s: f64) -> ConeGeometry {
        ConeGeometry::from_sigma(s).unwrap()
    }

    fn units() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn flat_factor_is_plain_bessel() {
        for m in 0..4 {
            for &(r, e) in &[(1.0, 0.1), (0.3, 0.5), (2.0, 0.05)] {
                let got = short_time_bfi(&cone(1.0), &units(), m, r, eps(e)).unwrap();
                let want = bessel_i(m as f64, r * r / e).unwrap();
                assert!(((got - want) / want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn worked_value() {
        // sigma = 0.5, m = 0, r = 1, eps = 0.1: 0.5 e^{7.5} I_0(2.5)
        let i0 = 3.2898391440501231; // series oracle
        let want = 0.5 * 7.5f64.exp() * i0;
        let got = short_time_bfi(&cone(0.5), &units(), 0, 1.0, eps(0.1)).unwrap();
        assert!(((got - want) / want).abs() < 1e-13, "{got} {want}");
    }

    #[test]
    fn large_arguments_stay_finite_in_logs() {
        let l = ln_short_time_bfi(&cone(0.5), &units(), 2, 10.0, eps(1e-6)).unwrap();
        assert!(l.is_finite() && l > 700.0);
        assert!(matches!(
            short_time_bfi(&cone(0.5), &units(), 2, 10.0, eps(1e-6)),
            Err(Error::Overflow { .. })
        ));
        assert!(
            recombination_ratio(&cone(0.5), &units(), 2, 10.0, eps(1e-6))
                .unwrap()
                .is_finite()
        );
    }

    #[test]
    fn ratio_on_flat_plane_is_one() {
        for m in 0..5 {
            for &e in &[1e-3, 0.1, 2.0, 50.0] {
                assert_eq!(
                    recombination_ratio(&cone(1.0), &units(), m, 0.7, eps(e)).unwrap(),
                    1.0
                );
            }
        }
    }

    #[test]
    fn imaginary_index_is_rejected() {
        assert!(matches!(
            recombination_ratio(&cone(0.5), &units(), 0, 1.0, eps(0.1)),
            Err(Error::ImaginaryIndex { .. })
        ));
        assert!(recombination_ratio(&cone(0.5), &units(), 0, 0.0, eps(0.1)).is_err());
    }

    #[test]
    fn ratio_tends_to_one() {
        let dev = |e: f64| {
            (recombination_ratio(&cone(0.5), &units(), 1, 1.0, eps(e)).unwrap() - 1.0).abs()
        };
        let devs: Vec<f64> = [0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125]
            .iter()
            .map(|&e| dev(e))
            .collect();
        assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
        // second order: successive ratios approach 4
        let last = devs[4] / devs[5];
        assert!((last - 4.0).abs() < 0.2, "{devs:?}");
    }

    #[test]
    fn deviation_depends_on_z_only() {
        // doubling r_hat at fixed eps quadruples z, so |rho - 1| drops ~16x
        let dev = |r: f64| {
            (recombination_ratio(&cone(0.5), &units(), 1, r, eps(0.01)).unwrap() - 1.0).abs()
        };
        let q = dev(1.0) / dev(2.0);
        assert!((q - 16.0).abs() < 1.0, "{q}");
        let a = recombination_ratio(&cone(0.5), &units(), 1, 1.0, eps(0.01)).unwrap();
        let b = recombination_ratio(&cone(0.5), &units(), 1, 2.0, eps(0.04)).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}
