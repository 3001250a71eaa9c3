//! Special functions for real arguments: log-gamma, the modified Bessel
//! function of the first kind `I_nu` for real order, terminating confluent
//! hypergeometric series via generalized Laguerre polynomials, and the
//! one-term large-argument Bessel approximant used by the asymptotic
//! recombination argument.
//!
//! `I_nu` is always computed in exponentially scaled form `e^{-x} I_nu(x)`.
//! Kernels on the cone multiply it by decaying Gaussians, so the scaled value
//! (or its logarithm) is the primitive everything else builds on.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Largest argument evaluated by the power series when `nu < SERIES_LIMIT`.
const SERIES_LIMIT: f64 = 12.0;
const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-200;
const MAX_ITER: usize = 400_000;

/// Order of a modified Bessel function: a finite, non-negative real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu >= 0.0 {
            Ok(Self(nu))
        } else {
            Err(domain(format!(
                "Bessel order must be finite and >= 0, got {nu}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<BesselOrder> for f64 {
    fn from(order: BesselOrder) -> f64 {
        order.0
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("ln_gamma requires finite x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

fn check_bessel_args(nu: f64, x: f64) -> Result<()> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(domain(format!(
            "Bessel order must be finite and >= 0, got {nu}"
        )));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(domain(format!(
            "Bessel argument must be finite and >= 0, got {x}"
        )));
    }
    Ok(())
}

/// `ln(e^{-x} I_nu(x))`. Returns `-inf` at `x = 0` for `nu > 0`.
pub fn ln_bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    check_bessel_args(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if x <= nu.max(SERIES_LIMIT) {
        Ok(ln_series_scaled(nu, x))
    } else {
        Ok(steed_temme_scaled(nu, x)?.ln())
    }
}

/// `e^{-x} I_nu(x)` for real `nu >= 0`, `x >= 0`.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    check_bessel_args(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x <= nu.max(SERIES_LIMIT) {
        Ok(ln_series_scaled(nu, x).exp())
    } else {
        steed_temme_scaled(nu, x)
    }
}

/// Unscaled `I_nu(x)`; fails with [`Error::Overflow`] when it exceeds `f64`.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    let ln_scaled = ln_bessel_i_scaled(nu, x)?;
    let log_value = ln_scaled + x;
    let value = log_value.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            what: "modified Bessel function I_nu",
            log_value,
        })
    }
}

/// Power series `sum_k (x/2)^{2k+nu} / (k! Γ(k+nu+1))`, scaled and in logs.
/// Every term is positive, so there is no cancellation.
fn ln_series_scaled(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        sum += term;
        if term < EPS * sum {
            break;
        }
    }
    let lead = nu * (0.5 * x).ln() - statrs::function::gamma::ln_gamma(nu + 1.0) - x;
    lead + sum.ln()
}

/// Continued fractions for `x > 2`: CF1 gives `I'_nu / I_nu`, downward
/// recurrence carries it to `mu = nu - round(nu)`, Steed's CF2 gives
/// `e^x K_mu` and `e^x K_{mu+1}`, and the Wronskian
/// `I_mu K'_mu - I'_mu K_mu = -1/x` fixes the normalization.
fn steed_temme_scaled(nu: f64, x: f64) -> Result<f64> {
    let steps = (nu + 0.5).floor() as usize;
    let mu = nu - steps as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "CF1 for I_{nu}({x}) did not converge"
        )));
    }

    let mut i_l = FPMIN;
    let mut ip_l = h * i_l;
    let i_top = i_l;
    let mut fact = nu * xi;
    for _ in 0..steps {
        let next = fact * i_l + ip_l;
        fact -= xi;
        ip_l = fact * next + i_l;
        i_l = next;
    }
    let f = ip_l / i_l;

    let a1 = 0.25 - mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "CF2 for K_{mu}({x}) did not converge"
        )));
    }
    h *= a1;

    let k_mu = (PI / (2.0 * x)).sqrt() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) * xi;
    let kp_mu = mu * xi * k_mu - k_mu1;
    let i_mu = xi / (f * k_mu - kp_mu);
    Ok(i_mu * i_top / i_l)
}

/// The one-term approximant `exp{z - (nu^2 - 1/4)/(2z)} / sqrt(2 pi z)`,
/// both as written (`value`, may be infinite) and times `e^{-z}` (`scaled`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneTermAsymptotic {
    pub value: f64,
    pub scaled: f64,
}

pub fn bessel_i_one_term_asymptotic(nu: f64, z: f64) -> Result<OneTermAsymptotic> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(domain(format!(
            "Bessel order must be finite and >= 0, got {nu}"
        )));
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(domain(format!(
            "one-term asymptotic requires z > 0, got {z}"
        )));
    }
    let correction = (nu * nu - 0.25) / (2.0 * z);
    let prefactor = 1.0 / (2.0 * PI * z).sqrt();
    Ok(OneTermAsymptotic {
        value: prefactor * (z - correction).exp(),
        scaled: prefactor * (-correction).exp(),
    })
}

/// Generalized Laguerre polynomial `L_n^alpha(x)` by the three-term recurrence.
pub fn generalized_laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `1F1(-n; b; x)` for integer `n >= 0`, through
/// `1F1(-n; alpha+1; x) = L_n^alpha(x) / binom(n+alpha, n)`.
pub fn hyp1f1_terminating(n: i64, b: f64, x: f64) -> Result<f64> {
    if n < 0 {
        return Err(domain(format!("terminating 1F1 needs n >= 0, got {n}")));
    }
    if !(b.is_finite() && b > 0.0) {
        return Err(domain(format!("1F1(-n; b; x) needs b > 0, got {b}")));
    }
    if !x.is_finite() {
        return Err(domain(format!("1F1 argument must be finite, got {x}")));
    }
    let n = n as u32;
    let alpha = b - 1.0;
    let inv_binom: f64 = (1..=n).map(|k| k as f64 / (k as f64 + alpha)).product();
    Ok(generalized_laguerre(n, alpha, x) * inv_binom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Direct power series for I_nu at modest x, in plain f64 with an
    /// explicit gamma product, independent of the production path.
    fn series_oracle(nu: f64, x: f64) -> f64 {
        let mut sum = 0.0;
        let mut k = 0u32;
        loop {
            let log_term = (2.0 * k as f64 + nu) * (0.5 * x).ln()
                - statrs::function::factorial::ln_factorial(k as u64)
                - statrs::function::gamma::ln_gamma(k as f64 + nu + 1.0);
            let term = log_term.exp();
            sum += term;
            if k > 5 && term < 1e-18 * sum {
                break;
            }
            k += 1;
        }
        sum
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ln_gamma_reference_values() {
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-15);
        assert_relative_eq!(ln_gamma(5.0).unwrap(), 24f64.ln(), max_relative = 1e-14);
        // ln sqrt(pi)
        assert_relative_eq!(ln_gamma(0.5).unwrap(), 0.5 * PI.ln(), max_relative = 1e-12);
        assert_relative_eq!(
            ln_gamma(200.0).unwrap(),
            857.93366982585744,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            ln_gamma(3.7).unwrap(),
            1.4280723266653879,
            max_relative = 1e-12
        );
    }

    #[test]
    fn ln_gamma_rejects_bad_input() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
        assert!(ln_gamma(f64::INFINITY).is_err());
    }

    #[test]
    fn ln_gamma_duplication_formula() {
        // Γ(x)Γ(x+1/2) = 2^{1-2x} sqrt(pi) Γ(2x)
        for &x in &[0.5, 0.75, 1.3, 4.2, 17.9, 63.25, 99.5] {
            let lhs = ln_gamma(x).unwrap() + ln_gamma(x + 0.5).unwrap();
            let rhs = (1.0 - 2.0 * x) * 2f64.ln() + 0.5 * PI.ln() + ln_gamma(2.0 * x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn bessel_at_zero() {
        assert_eq!(bessel_i_scaled(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i_scaled(0.7, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn bessel_reference_values() {
        // I_0(1) from its own series, I_{1/2}(1) from sinh.
        let i0 = series_oracle(0.0, 1.0);
        assert_relative_eq!(i0, 1.2660658777520082, max_relative = 1e-14);
        assert!(rel(bessel_i_scaled(0.0, 1.0).unwrap(), (-1f64).exp() * i0) < 1e-10);
        let ihalf = (2.0 / PI).sqrt() * 1f64.sinh();
        assert!(rel(bessel_i_scaled(0.5, 1.0).unwrap(), (-1f64).exp() * ihalf) < 1e-10);
        assert!(rel(bessel_i(0.5, 1.0).unwrap(), 0.9376748882454876) < 1e-10);
    }

    #[test]
    fn bessel_matches_high_precision_values() {
        // e^{-x} I_nu(x) at 40 significant digits, truncated to 17.
        let cases = [
            (0.0, 50.0, 0.056561626647454193),
            (2.0, 10.0, 0.1035808008865375),
            (200.0, 150.0, 2.5534213606724004e-54),
            (200.0, 500.0, 1.2157543623341462e-19),
            (200.0, 1e4, 0.00053989841809842858),
            (50.0, 10.0, 2.1596267894454476e-34),
            (0.3, 25.0, 0.080049535607446801),
            (7.25, 13.0, 0.01444166740815125),
            (13.5, 13.4, 0.00016019088584862591),
            (3.0, 2000.0, 0.0089011231842867633),
            (100.0, 100.5, 2.1195080363026833e-22),
            (1.8027756377319946, 30.0, 0.069225608446222595),
        ];
        for (nu, x, expected) in cases {
            let got = bessel_i_scaled(nu, x).unwrap();
            assert!(
                rel(got, expected) < 1e-10,
                "nu={nu} x={x}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn half_integer_closed_forms_across_range() {
        for &x in &[0.01, 0.3, 1.0, 5.0, 11.9, 12.1, 40.0, 333.0, 2500.0, 1e4] {
            let scaled_half = (2.0 / (PI * x)).sqrt() * 0.5 * (1.0 - (-2.0 * x).exp());
            assert!(
                rel(bessel_i_scaled(0.5, x).unwrap(), scaled_half) < 1e-10,
                "x={x}"
            );
            // I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)
            let e = (-2.0 * x).exp();
            let scaled_3half = (2.0 / (PI * x)).sqrt() * 0.5 * ((1.0 + e) - (1.0 - e) / x);
            if x > 0.3 {
                assert!(
                    rel(bessel_i_scaled(1.5, x).unwrap(), scaled_3half) < 1e-10,
                    "x={x}"
                );
            }
        }
    }

    #[test]
    fn series_oracle_agreement_on_moderate_arguments() {
        for &nu in &[0.0, 0.25, 1.0, 2.0615528128088303, 4.5, 9.0] {
            for &x in &[0.1f64, 1.0, 3.3, 8.0, 12.5, 20.0, 30.0] {
                let want = (-x).exp() * series_oracle(nu, x);
                let got = bessel_i_scaled(nu, x).unwrap();
                assert!(rel(got, want) < 1e-10, "nu={nu} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn hankel_expansion_at_large_argument() {
        // e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k
        for &nu in &[0.0, 1.0, 2.5, 5.0] {
            for &x in &[500.0, 3000.0, 1e4] {
                let mu = 4.0 * nu * nu;
                let mut term = 1.0;
                let mut sum = 1.0;
                for k in 1..12 {
                    let odd = (2 * k - 1) as f64;
                    term *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
                    sum += term;
                }
                let want = sum / (2.0 * PI * x).sqrt();
                assert!(
                    rel(bessel_i_scaled(nu, x).unwrap(), want) < 1e-12,
                    "nu={nu} x={x}"
                );
            }
        }
    }

    #[test]
    fn unscaled_overflow_is_reported() {
        match bessel_i(0.0, 800.0) {
            Err(Error::Overflow { log_value, .. }) => {
                assert!((log_value - (800.0 - 0.5 * (2.0 * PI * 800.0).ln())).abs() < 1e-3)
            }
            other => panic!("expected overflow, got {other:?}"),
        }
        assert!(bessel_i(0.0, 700.0).unwrap().is_finite());
    }

    #[test]
    fn bessel_domain_errors() {
        assert!(bessel_i_scaled(-0.1, 1.0).is_err());
        assert!(bessel_i_scaled(1.0, -1.0).is_err());
        assert!(bessel_i_scaled(f64::NAN, 1.0).is_err());
        assert!(BesselOrder::new(-1.0).is_err());
        assert_eq!(BesselOrder::new(2.5).unwrap().get(), 2.5);
    }

    #[test]
    fn log_form_survives_underflow() {
        // e^{-x} I_200(1e-3) underflows, its log does not.
        let ln = ln_bessel_i_scaled(200.0, 1e-3).unwrap();
        let want = 200.0 * (5e-4f64).ln() - ln_gamma(201.0).unwrap() - 1e-3;
        assert!((ln - want).abs() < 1e-9 * want.abs());
        assert_eq!(bessel_i_scaled(200.0, 1e-3).unwrap(), 0.0);
    }

    #[test]
    fn one_term_asymptotic_examples() {
        for &z in &[0.3, 2.0, 17.0] {
            let a = bessel_i_one_term_asymptotic(0.5, z).unwrap();
            assert_eq!(a.value, (1.0 / (2.0 * PI * z).sqrt()) * z.exp());
            assert_eq!(a.scaled, 1.0 / (2.0 * PI * z).sqrt());
        }
        let a = bessel_i_one_term_asymptotic(0.0, 50.0).unwrap();
        assert!(rel(a.scaled, bessel_i_scaled(0.0, 50.0).unwrap()) < 1e-3);
        let a = bessel_i_one_term_asymptotic(2.0, 10.0).unwrap();
        let want = (10.0f64 - 3.75 / 20.0).exp() / (20.0 * PI).sqrt();
        assert_relative_eq!(a.value, want, max_relative = 1e-15);
        assert!(bessel_i_one_term_asymptotic(1.0, 0.0).is_err());
        assert!(bessel_i_one_term_asymptotic(1.0, -2.0).is_err());
    }

    #[test]
    fn one_term_asymptotic_error_decreases_with_z() {
        for &nu in &[0.0f64, 1.0, 2.0, 3.0] {
            let start = (2.0 * nu * nu).max(10.0);
            let mut last = f64::INFINITY;
            for k in 0..40 {
                let z = start * 1.2f64.powi(k);
                let approx = bessel_i_one_term_asymptotic(nu, z).unwrap().scaled;
                let err = rel(approx, bessel_i_scaled(nu, z).unwrap());
                assert!(err < last, "nu={nu} z={z}: {err} !< {last}");
                last = err;
            }
        }
    }

    #[test]
    fn generating_function_identity() {
        // exp(z cos t) = sum_m e^{imt} I_m(z); compared after dividing by e^z,
        // the l1 norm of the series.
        for &z in &[0.5f64, 1.0, 4.0, 12.0, 12.5, 30.0] {
            let terms = z.ceil() as i64 + 40;
            let scaled: Vec<f64> = (0..=terms)
                .map(|m| bessel_i_scaled(m as f64, z).unwrap())
                .collect();
            for j in 0..16 {
                let t = 2.0 * PI * j as f64 / 16.0;
                let mut re = 0.0f64;
                let mut im = 0.0f64;
                for m in -terms..=terms {
                    // I_{-m} = I_m for integer m
                    let i_m = scaled[m.unsigned_abs() as usize];
                    re += (m as f64 * t).cos() * i_m;
                    im += (m as f64 * t).sin() * i_m;
                }
                let lhs = (z * (t.cos() - 1.0)).exp();
                assert!((lhs - re).abs() < 1e-10, "z={z} t={t}: {lhs} vs {re}");
                assert!(im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hyp1f1_examples() {
        assert_eq!(hyp1f1_terminating(0, 1.5, 7.3).unwrap(), 1.0);
        assert_eq!(hyp1f1_terminating(1, 2.0, 2.0).unwrap(), 0.0);
        assert_relative_eq!(
            hyp1f1_terminating(2, 2.0, 1.0).unwrap(),
            1.0 / 6.0,
            max_relative = 1e-15
        );
        assert!(hyp1f1_terminating(-1, 2.0, 1.0).is_err());
        assert!(hyp1f1_terminating(2, 0.0, 1.0).is_err());
        assert!(hyp1f1_terminating(2, -0.5, 1.0).is_err());
    }

    #[test]
    fn hyp1f1_matches_term_summation() {
        for n in 0..12i64 {
            for &b in &[0.5, 1.0, 1.5, 3.0615528128088303] {
                for &x in &[0.0, 0.4, 1.7, 5.0, 9.5] {
                    let mut term = 1.0;
                    let mut sum = 1.0;
                    for k in 0..n {
                        let k = k as f64;
                        term *= (k - n as f64) / (b + k) * x / (k + 1.0);
                        sum += term;
                    }
                    let got = hyp1f1_terminating(n, b, x).unwrap();
                    let scale: f64 = sum.abs().max(1.0);
                    assert!(
                        (got - sum).abs() < 1e-11 * scale,
                        "n={n} b={b} x={x}: {got} vs {sum}"
                    );
                }
            }
        }
    }

    #[test]
    fn laguerre_orthogonality() {
        for &alpha in &[0.0, 0.5, 2.0615528128088303] {
            for n in 0..=5u32 {
                for k in 0..=5u32 {
                    // x = t^2 removes the x^alpha endpoint behaviour
                    let f = |t: f64| {
                        let x = t * t;
                        2.0 * t
                            * x.powf(alpha)
                            * (-x).exp()
                            * generalized_laguerre(n, alpha, x)
                            * generalized_laguerre(k, alpha, x)
                    };
                    let got =
                        quadrature::double_exponential::integrate(f, 0.0, 13.0, 1e-13).integral;
                    let want = if n == k {
                        (ln_gamma(n as f64 + alpha + 1.0).unwrap()
                            - statrs::function::factorial::ln_factorial(n as u64))
                        .exp()
                    } else {
                        0.0
                    };
                    assert!(
                        (got - want).abs() < 1e-8 * want.max(1.0),
                        "alpha={alpha} n={n} k={k}: {got}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn recurrence_consistency(nu in 1.0f64..20.0, x in 1.0f64..100.0) {
            let lo = bessel_i_scaled(nu - 1.0, x).unwrap();
            let mid = bessel_i_scaled(nu, x).unwrap();
            let hi = bessel_i_scaled(nu + 1.0, x).unwrap();
            let lhs = lo - hi;
            let rhs = 2.0 * nu / x * mid;
            prop_assert!(((lhs - rhs) / rhs).abs() < 1e-9, "nu={} x={} lhs={} rhs={}", nu, x, lhs, rhs);
        }

        #[test]
        fn scaled_is_bounded_and_positive(nu in 0.0f64..200.0, x in 1e-3f64..1e4) {
            let v = bessel_i_scaled(nu, x).unwrap();
            prop_assert!(v >= 0.0 && v <= 1.0);
            let ln = ln_bessel_i_scaled(nu, x).unwrap();
            if v > 1e-300 {
                prop_assert!((ln - v.ln()).abs() < 1e-12 * ln.abs().max(1.0));
            }
        }
    }
}
