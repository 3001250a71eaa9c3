//! Bound states of the oscillator with a repulsive inverse-square core on the
//! cone, `V(r) = M omega^2 r^2 / 2 + kappa hbar^2 / (8 sigma^2 M r^2)`.
//!
//! Inner products use the measure `r dr dtheta`; with it the normalization
//! constants below give unit norm.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, ensure_finite, Error, Result};
use crate::geometry::{ConeGeometry, PhysicalConstants};
use crate::specfun::{ln_gamma, BesselOrder};

/// Radial and angular quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: i64,
}

impl QuantumNumbers {
    pub fn new(n: u32, m: i64) -> Self {
        Self { n, m }
    }
}

/// One row of an enumerated spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateRecord {
    pub n: u32,
    pub m: i64,
    pub nu: f64,
    pub energy: f64,
    /// `nu = 0`: the core sits exactly at the reality bound `kappa = 1 - sigma^2`.
    pub marginal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorModel {
    geom: ConeGeometry,
    consts: PhysicalConstants,
    omega: f64,
    kappa: f64,
}

impl OscillatorModel {
    pub fn new(
        geom: ConeGeometry,
        consts: PhysicalConstants,
        omega: f64,
        kappa: f64,
    ) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(domain(format!("omega must be finite and > 0, got {omega}")));
        }
        ensure_finite("kappa", kappa)?;
        let floor = geom.kappa_floor();
        if kappa < floor {
            return Err(domain(format!(
                "kappa must be >= 1 - sigma^2 = {floor}, got {kappa}"
            )));
        }
        Ok(Self {
            geom,
            consts,
            omega,
            kappa,
        })
    }

    /// Natural units `M = hbar = omega = 1`.
    pub fn natural(sigma: f64, kappa: f64) -> Result<Self> {
        Self::new(
            ConeGeometry::from_sigma(sigma)?,
            PhysicalConstants::default(),
            1.0,
            kappa,
        )
    }

    pub fn geometry(&self) -> &ConeGeometry {
        &self.geom
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.consts
    }

    pub fn sigma(&self) -> f64 {
        self.geom.sigma()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mass(&self) -> f64 {
        self.consts.mass()
    }

    pub fn hbar(&self) -> f64 {
        self.consts.hbar()
    }

    /// Inverse squared oscillator length `M omega / hbar`.
    pub fn inverse_length_sq(&self) -> f64 {
        self.mass() * self.omega / self.hbar()
    }

    /// Oscillator length `sqrt(hbar / (M omega))`.
    pub fn length(&self) -> f64 {
        self.inverse_length_sq().recip().sqrt()
    }

    pub fn nu(&self, m: i64) -> BesselOrder {
        self.geom
            .coupled_index_nu(self.kappa, m)
            .expect("model invariants guarantee a real index")
    }

    /// Coefficient `c` of the inverse-square core, `V_core = c / r^2`.
    pub fn core_strength(&self) -> f64 {
        let s = self.sigma();
        self.kappa * self.hbar().powi(2) / (8.0 * s * s * self.mass())
    }

    pub fn potential(&self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r > 0.0) {
            return Err(domain(format!("radius must be finite and > 0, got {r}")));
        }
        Ok(0.5 * self.mass() * self.omega.powi(2) * r * r + self.core_strength() / (r * r))
    }

    /// `E_nm = hbar omega (2n + 1 + nu(m, sigma))`.
    pub fn energy(&self, qn: QuantumNumbers) -> f64 {
        self.hbar() * self.omega * (2.0 * qn.n as f64 + 1.0 + self.nu(qn.m).get())
    }

    /// `ln N_nm`, finite whenever the model is valid.
    pub fn ln_normalization_constant(&self, qn: QuantumNumbers) -> f64 {
        let nu = self.nu(qn.m).get();
        let n = qn.n as f64;
        let lg = |x: f64| ln_gamma(x).expect("positive gamma argument");
        -lg(nu + 1.0)
            + 0.5 * (lg(n + nu + 1.0) - PI.ln() - lg(n + 1.0))
            + 0.5 * (nu + 1.0) * self.inverse_length_sq().ln()
    }

    /// `N_nm = sqrt(Γ(n+nu+1) / (pi n!)) (M omega/hbar)^{(nu+1)/2} / Γ(nu+1)`.
    pub fn normalization_constant(&self, qn: QuantumNumbers) -> Result<f64> {
        let log_value = self.ln_normalization_constant(qn);
        let value = log_value.exp();
        if value.is_finite() && value > 0.0 {
            Ok(value)
        } else {
            Err(Error::Overflow {
                what: "normalization constant",
                log_value,
            })
        }
    }

    /// Real radial factor `N r^nu e^{-x/2} 1F1(-n; nu+1; x)`, `x = M omega r^2 / hbar`.
    pub fn radial_wavefunction(&self, qn: QuantumNumbers, r: f64) -> Result<f64> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(domain(format!("radius must be finite and >= 0, got {r}")));
        }
        let nu = self.nu(qn.m).get();
        if r == 0.0 {
            return Ok(if nu == 0.0 {
                self.normalization_constant(qn)?
            } else {
                0.0
            });
        }
        let x = self.inverse_length_sq() * r * r;
        let poly = crate::specfun::hyp1f1_terminating(qn.n as i64, nu + 1.0, x)?;
        let log_envelope = self.ln_normalization_constant(qn) + nu * r.ln() - 0.5 * x;
        Ok(log_envelope.exp() * poly)
    }

    /// `Psi_nm(r, theta) = e^{i m theta} * radial factor`.
    pub fn wavefunction(&self, qn: QuantumNumbers, r: f64, theta: f64) -> Result<Complex64> {
        ensure_finite("theta", theta)?;
        let radial = self.radial_wavefunction(qn, r)?;
        Ok(Complex64::from_polar(1.0, qn.m as f64 * theta) * radial)
    }

    /// All states with `|m| <= m_max` and `E <= e_max`, ascending in energy;
    /// ties are broken by `|m|`, then negative `m` first, then `n`.
    pub fn enumerate_states(&self, e_max: f64, m_max: u32) -> Vec<StateRecord> {
        let mut states = Vec::new();
        let m_max = m_max as i64;
        for m in -m_max..=m_max {
            let nu = self.nu(m).get();
            for n in 0u32.. {
                let energy = self.energy(QuantumNumbers::new(n, m));
                if energy > e_max {
                    break;
                }
                states.push(StateRecord {
                    n,
                    m,
                    nu,
                    energy,
                    marginal: nu == 0.0,
                });
            }
        }
        states.sort_by(|a, b| {
            a.energy
                .partial_cmp(&b.energy)
                .unwrap_or(Ordering::Equal)
                .then(a.m.unsigned_abs().cmp(&b.m.unsigned_abs()))
                .then(a.m.signum().cmp(&b.m.signum()))
                .then(a.n.cmp(&b.n))
        });
        states
    }

    /// `sum_n exp(-beta E_nm / hbar) = e^{-beta omega (1 + nu)} / (1 - e^{-2 beta omega})`.
    pub fn partition_sum(&self, m: i64, beta: f64) -> f64 {
        let w = beta * self.omega;
        (-w * (1.0 + self.nu(m).get())).exp() / -(-2.0 * w).exp_m1()
    }

    /// `<Psi_a, Psi_b>` under `r dr dtheta`, by double-exponential quadrature.
    /// Zero unless the angular numbers agree.
    pub fn overlap(&self, a: QuantumNumbers, b: QuantumNumbers) -> f64 {
        if a.m != b.m {
            return 0.0;
        }
        let n_top = a.n.max(b.n) as f64;
        // e^{-x} is below 1e-40 beyond x = 90 + 4n
        let r_max = ((90.0 + 4.0 * n_top) / self.inverse_length_sq()).sqrt();
        let integrand = |r: f64| {
            let pa = self.radial_wavefunction(a, r).unwrap_or(0.0);
            let pb = self.radial_wavefunction(b, r).unwrap_or(0.0);
            pa * pb * r
        };
        let scale = self.length();
        let split = scale * (2.0 * n_top + 2.0).sqrt();
        let inner = quadrature::double_exponential::integrate(integrand, 0.0, split, 1e-14);
        let outer = quadrature::double_exponential::integrate(integrand, split, r_max, 1e-14);
        2.0 * PI * (inner.integral + outer.integral)
    }
}
