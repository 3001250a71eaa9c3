//! Euclidean (imaginary-time) kernels of the conical oscillator.
//!
//! Every kernel here is the real-time propagator continued to `tau = -i beta`,
//! which turns the oscillatory amplitudes into positive heat kernels. The radial
//! kernel for angular channel `m` is
//!
//! ```text
//! R_m(r1, r2; beta) = a / sinh(w) * exp{-a (r1^2 + r2^2) coth(w) / 2}
//!                     * I_nu(a r1 r2 / sinh(w)),      a = M omega / hbar, w = omega beta
//! ```
//!
//! with `nu = nu(m, sigma)`. The full kernel is the partial-wave sum
//! `K = (1/2pi) sum_m e^{i m dtheta} R_m`. Sums run in ascending order with
//! compensated accumulation so values do not depend on thread count.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::grid::RadialGrid;
use crate::specfun::{ln_bessel_i_scaled, ln_gamma};
use crate::spectrum::{OscillatorModel, QuantumNumbers};

/// Imaginary-time interval `beta > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct EuclideanTime(f64);

impl EuclideanTime {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta > 0.0 {
            Ok(Self(beta))
        } else {
            Err(domain(format!(
                "Euclidean time must be finite and > 0, got {beta}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Endpoints, interval and cutoffs of a kernel evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelQuery {
    pub r1: f64,
    pub r2: f64,
    pub beta: EuclideanTime,
    /// Partial-wave cutoff: channels `|m| <= m_max` are summed.
    pub m_max: u32,
    /// Spectral cutoff: radial levels `n <= n_max` in spectral sums.
    pub n_max: u32,
}

impl KernelQuery {
    pub fn new(r1: f64, r2: f64, beta: f64, m_max: u32, n_max: u32) -> Result<Self> {
        check_radius(r1)?;
        check_radius(r2)?;
        Ok(Self {
            r1,
            r2,
            beta: EuclideanTime::new(beta)?,
            m_max,
            n_max,
        })
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "kernel radii must be finite and > 0, got {r}"
        )))
    }
}

/// Compensated (Neumaier) accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    carry: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Pieces shared by the closed form and its bound: `ln(a / sinh w)`, the
/// Gaussian exponent, and the Bessel argument.
struct ClosedParts {
    ln_prefactor: f64,
    gaussian: f64,
    z: f64,
}

fn closed_parts(model: &OscillatorModel, r1: f64, r2: f64, beta: f64) -> ClosedParts {
    let a = model.inverse_length_sq();
    let w = model.omega() * beta;
    let sinh = w.sinh();
    let cosh = w.cosh();
    // cosh w - 1 without cancellation
    let cosh_m1 = 2.0 * (0.5 * w).sinh().powi(2);
    let d = r1 - r2;
    ClosedParts {
        ln_prefactor: (a / sinh).ln(),
        gaussian: -a / (2.0 * sinh) * (d * d * cosh + 2.0 * r1 * r2 * cosh_m1),
        z: a * r1 * r2 / sinh,
    }
}

/// `ln R_m(r1, r2; beta)` from the closed form.
pub fn ln_radial_kernel_closed(
    model: &OscillatorModel,
    m: i64,
    r1: f64,
    r2: f64,
    beta: EuclideanTime,
) -> Result<f64> {
    check_radius(r1)?;
    check_radius(r2)?;
    let nu = model.nu(m).get();
    let p = closed_parts(model, r1, r2, beta.get());
    Ok(p.ln_prefactor + p.gaussian + ln_bessel_i_scaled(nu, p.z)?)
}

/// Closed-form radial kernel `R_m(r1, r2; beta)`.
pub fn radial_kernel_closed(
    model: &OscillatorModel,
    m: i64,
    r1: f64,
    r2: f64,
    beta: EuclideanTime,
) -> Result<f64> {
    let log_value = ln_radial_kernel_closed(model, m, r1, r2, beta)?;
    let value = log_value.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            what: "radial kernel",
            log_value,
        })
    }
}

/// Partial sum of the spectral representation of `R_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralSum {
    pub value: f64,
    /// Magnitude of the `n = n_max` term.
    pub last_term: f64,
    pub n_max: u32,
}

/// `R_m = 2pi sum_{n <= n_max} e^{-beta E_nm / hbar} psi_nm(r1) psi_nm(r2)`.
pub fn radial_kernel_spectral(
    model: &OscillatorModel,
    m: i64,
    r1: f64,
    r2: f64,
    beta: EuclideanTime,
    n_max: u32,
) -> Result<SpectralSum> {
    check_radius(r1)?;
    check_radius(r2)?;
    let mut acc = Accumulator::default();
    let mut last_term = 0.0;
    for n in 0..=n_max {
        let qn = QuantumNumbers::new(n, m);
        let boltzmann = (-beta.get() * model.energy(qn) / model.hbar()).exp();
        let term = 2.0
            * PI
            * boltzmann
            * model.radial_wavefunction(qn, r1)?
            * model.radial_wavefunction(qn, r2)?;
        acc.add(term);
        last_term = term.abs();
    }
    Ok(SpectralSum {
        value: acc.total(),
        last_term,
        n_max,
    })
}

/// A full-kernel value with its certified partial-wave truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: f64,
    /// Upper bound on `|K - K_{m_max}|` from the discarded channels.
    pub tail_bound: f64,
    pub m_max: u32,
    /// Spectral cutoff, when the radial kernels came from spectral sums.
    pub n_max: Option<u32>,
    /// Estimated spectral remainder summed over channels (spectral method only).
    pub spectral_remainder: Option<f64>,
}

fn assemble(radials: &[f64], dtheta: f64) -> f64 {
    let mut acc = Accumulator::default();
    for (m, r) in radials.iter().enumerate() {
        let weight = if m == 0 {
            1.0
        } else {
            2.0 * (m as f64 * dtheta).cos()
        };
        acc.add(weight * r);
    }
    acc.total() / (2.0 * PI)
}

/// `K = (1/2pi) [R_0 + 2 sum_{m=1}^{m_max} cos(m dtheta) R_m]` with closed-form `R_m`.
pub fn full_kernel(model: &OscillatorModel, q: &KernelQuery, dtheta: f64) -> Result<KernelValue> {
    crate::error::ensure_finite("dtheta", dtheta)?;
    let radials = (0..=q.m_max as i64)
        .into_par_iter()
        .map(|m| radial_kernel_closed(model, m, q.r1, q.r2, q.beta))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelValue {
        value: assemble(&radials, dtheta),
        tail_bound: partial_wave_tail_bound(model, q.m_max, q.r1, q.r2, q.beta)?,
        m_max: q.m_max,
        n_max: None,
        spectral_remainder: None,
    })
}

/// As [`full_kernel`], with each `R_m` from its spectral sum truncated at `n_max`.
pub fn full_kernel_spectral(
    model: &OscillatorModel,
    q: &KernelQuery,
    dtheta: f64,
) -> Result<KernelValue> {
    crate::error::ensure_finite("dtheta", dtheta)?;
    let sums = (0..=q.m_max as i64)
        .into_par_iter()
        .map(|m| radial_kernel_spectral(model, m, q.r1, q.r2, q.beta, q.n_max))
        .collect::<Result<Vec<_>>>()?;
    let radials: Vec<f64> = sums.iter().map(|s| s.value).collect();
    // successive levels shrink by at least e^{-2 omega beta} in the Boltzmann factor
    let ratio = (-2.0 * model.omega() * q.beta.get()).exp();
    let remainder: f64 = sums
        .iter()
        .enumerate()
        .map(|(m, s)| {
            let w = if m == 0 { 1.0 } else { 2.0 };
            w * s.last_term * ratio / (1.0 - ratio)
        })
        .sum::<f64>()
        / (2.0 * PI);
    Ok(KernelValue {
        value: assemble(&radials, dtheta),
        tail_bound: partial_wave_tail_bound(model, q.m_max, q.r1, q.r2, q.beta)?,
        m_max: q.m_max,
        n_max: Some(q.n_max),
        spectral_remainder: Some(remainder),
    })
}

/// `ln` of the channel bound from `I_nu(z) <= (z/2)^nu e^z / Γ(nu+1)`.
fn ln_channel_bound(model: &OscillatorModel, m: i64, p: &ClosedParts) -> f64 {
    let nu = model.nu(m).get();
    let ln_gamma_nu = ln_gamma(nu + 1.0).expect("nu >= 0");
    p.ln_prefactor + p.gaussian + nu * (0.5 * p.z).ln() - ln_gamma_nu
}

/// Bound on the contribution of all channels `|m| > m_max` to the full kernel.
///
/// Channel bounds are summed explicitly until the order exceeds `z/2 + 1`
/// (where the ratio of consecutive bounds is below one and non-increasing)
/// and the terms are negligible; the rest is closed with a geometric series.
pub fn partial_wave_tail_bound(
    model: &OscillatorModel,
    m_max: u32,
    r1: f64,
    r2: f64,
    beta: EuclideanTime,
) -> Result<f64> {
    check_radius(r1)?;
    check_radius(r2)?;
    let p = closed_parts(model, r1, r2, beta.get());
    let mut acc = Accumulator::default();
    let mut m = m_max as i64 + 1;
    let mut prev = ln_channel_bound(model, m, &p).exp();
    acc.add(prev);
    loop {
        m += 1;
        let cur = ln_channel_bound(model, m, &p).exp();
        acc.add(cur);
        let nu = model.nu(m).get();
        if cur == 0.0 {
            break;
        }
        let ratio = cur / prev;
        if nu > 0.5 * p.z + 1.0 && ratio < 1.0 && cur <= 1e-17 * acc.total() {
            acc.add(cur * ratio / (1.0 - ratio));
            break;
        }
        if m > m_max as i64 + 10_000_000 {
            return Err(Error::NoConvergence("partial-wave tail bound".into()));
        }
        prev = cur;
    }
    // two channels (+m and -m) per |m|, each weighted 1/2pi
    Ok(acc.total() / PI)
}

/// Outcome of one semigroup check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemigroupReport {
    /// `|composed - direct|`.
    pub defect: f64,
    /// Quadrature of `R_m(r2, s; beta2) R_m(s, r1; beta1) s ds` on the grid.
    pub composed: f64,
    /// `R_m(r2, r1; beta1 + beta2)`.
    pub direct: f64,
    /// Estimated integrand mass outside the grid, relative to `composed`.
    pub boundary_mass: f64,
    /// Set when the grid visibly truncates the integrand.
    pub warning: Option<String>,
}

/// Relative boundary mass above which a grid is reported as truncating the kernel.
pub const BOUNDARY_MASS_TOLERANCE: f64 = 1e-10;

pub fn semigroup_defect(
    model: &OscillatorModel,
    m: i64,
    r1: f64,
    r2: f64,
    beta1: EuclideanTime,
    beta2: EuclideanTime,
    grid: &RadialGrid,
) -> Result<SemigroupReport> {
    check_radius(r1)?;
    check_radius(r2)?;
    let nodes = grid.nodes();
    let weights = grid.radial_weights();
    let integrand = nodes
        .iter()
        .map(|&s| {
            Ok(radial_kernel_closed(model, m, r2, s, beta2)?
                * radial_kernel_closed(model, m, s, r1, beta1)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut acc = Accumulator::default();
    for (f, w) in integrand.iter().zip(&weights) {
        acc.add(f * w);
    }
    let composed = acc.total();
    let direct = radial_kernel_closed(
        model,
        m,
        r2,
        r1,
        EuclideanTime::new(beta1.get() + beta2.get())?,
    )?;
    let boundary_mass = outside_mass(&nodes, &integrand) / composed.abs().max(f64::MIN_POSITIVE);
    let warning = (boundary_mass > BOUNDARY_MASS_TOLERANCE).then(|| {
        format!(
            "grid [{}, {}] truncates the integrand: boundary mass {boundary_mass:e} exceeds {BOUNDARY_MASS_TOLERANCE:e}",
            grid.r_min(),
            grid.r_max()
        )
    });
    Ok(SemigroupReport {
        defect: (composed - direct).abs(),
        composed,
        direct,
        boundary_mass,
        warning,
    })
}

/// Mass of `f(s) s ds` beyond the grid ends: a power law `f ~ s^p` (p >= 0)
/// below `r_min` and the local exponential decay above `r_max`.
fn outside_mass(nodes: &[f64], f: &[f64]) -> f64 {
    let n = nodes.len();
    let (a, b) = (nodes[0], nodes[n - 1]);
    let inner = f[0].abs() * a * a;
    let (fb, fp) = (f[n - 1].abs(), f[n - 2].abs());
    let outer = if fb == 0.0 {
        0.0
    } else {
        let rate = (fp / fb).ln() / (b - nodes[n - 2]);
        if rate > 0.0 {
            fb * b / rate
        } else {
            f64::INFINITY
        }
    };
    inner + outer
}

/// `integral R_m(r, r; beta) r dr` on the grid (trapezoid).
pub fn radial_trace(
    model: &OscillatorModel,
    m: i64,
    beta: EuclideanTime,
    grid: &RadialGrid,
) -> Result<f64> {
    let mut acc = Accumulator::default();
    for (r, w) in grid.nodes().into_iter().zip(grid.radial_weights()) {
        acc.add(w * radial_kernel_closed(model, m, r, r, beta)?);
    }
    Ok(acc.total())
}
