//! Conical geometry `dl^2 = dr^2 + sigma^2 r^2 dtheta^2`: parameterizations,
//! the Euclidean embedding, curvatures, the curvature-induced effective
//! potential, and the Bessel orders that encode the cone.
//!
//! Any `sigma > 0` is accepted. Quantities that need the embedding (the
//! embedding itself and the mean curvature) additionally require
//! `sigma <= 1`.

use std::f64::consts::PI;

use crate::error::{domain, ensure_finite, Error, Result};
use crate::specfun::BesselOrder;

/// Particle mass and Planck's constant. Defaults to natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    mass: f64,
    hbar: f64,
}

impl PhysicalConstants {
    pub fn new(mass: f64, hbar: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(domain(format!("mass must be finite and > 0, got {mass}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(domain(format!("hbar must be finite and > 0, got {hbar}")));
        }
        Ok(Self { mass, hbar })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `hbar^2 / 2M`, the kinetic prefactor.
    pub fn kinetic(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            mass: 1.0,
            hbar: 1.0,
        }
    }
}

/// A cone with deficit parameter `sigma > 0`; `sigma = 1` is the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGeometry {
    sigma: f64,
}

impl ConeGeometry {
    pub fn from_sigma(sigma: f64) -> Result<Self> {
        ensure_finite("sigma", sigma)?;
        if sigma <= 0.0 {
            return Err(domain(format!(
                "sigma must be > 0 (sigma = 0 collapses the apex), got {sigma}"
            )));
        }
        Ok(Self { sigma })
    }

    /// `sigma = 1 - gamma / 2pi` for a wedge of deficit angle `gamma`.
    pub fn from_deficit_angle(gamma: f64) -> Result<Self> {
        ensure_finite("deficit angle", gamma)?;
        if gamma >= 2.0 * PI {
            return Err(domain(format!(
                "deficit angle requires gamma < 2pi, got {gamma}"
            )));
        }
        Self::from_sigma(1.0 - gamma / (2.0 * PI))
    }

    /// `sigma = 1 - 4 G eta` for a cosmic string of dimensionless density `G eta`.
    pub fn from_string_density(g_eta: f64) -> Result<Self> {
        ensure_finite("G*eta", g_eta)?;
        if g_eta >= 0.25 {
            return Err(domain(format!(
                "string density requires G*eta < 0.25, got {g_eta}"
            )));
        }
        Self::from_sigma(1.0 - 4.0 * g_eta)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn is_embeddable(&self) -> bool {
        self.sigma <= 1.0
    }

    pub fn is_flat(&self) -> bool {
        self.sigma == 1.0
    }

    pub fn deficit_angle(&self) -> f64 {
        2.0 * PI * (1.0 - self.sigma)
    }

    pub fn string_density(&self) -> f64 {
        (1.0 - self.sigma) / 4.0
    }

    fn require_embeddable(&self) -> Result<()> {
        if self.is_embeddable() {
            Ok(())
        } else {
            Err(Error::NotEmbeddable { sigma: self.sigma })
        }
    }

    /// Point of the cone surface in Euclidean 3-space.
    pub fn embed(&self, r: f64, theta: f64) -> Result<[f64; 3]> {
        self.require_embeddable()?;
        if !(r.is_finite() && r >= 0.0) {
            return Err(domain(format!("radius must be finite and >= 0, got {r}")));
        }
        ensure_finite("theta", theta)?;
        let s = self.sigma;
        Ok([
            s * r * theta.cos(),
            s * r * theta.sin(),
            (1.0 - s * s).sqrt() * r,
        ])
    }

    /// Mean curvature `H(r) = sqrt(1 - sigma^2) / (2 sigma r)`.
    pub fn mean_curvature(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        self.require_embeddable()?;
        Ok((1.0 - self.sigma * self.sigma).sqrt() / (2.0 * self.sigma * r))
    }

    /// Integrated strength `2pi (1 - sigma) / sigma` of the apex delta function
    /// that makes up the Gaussian curvature.
    pub fn gaussian_curvature_strength(&self) -> f64 {
        2.0 * PI * (1.0 - self.sigma) / self.sigma
    }

    /// `V_eff(r) = -(hbar^2/2M) (1 - sigma^2) / (4 sigma^2 r^2)`; attractive
    /// on embeddable cones, repulsive for `sigma > 1`.
    pub fn effective_potential(&self, consts: &PhysicalConstants, r: f64) -> Result<f64> {
        check_radius(r)?;
        let s2 = self.sigma * self.sigma;
        Ok(-consts.kinetic() * (1.0 - s2) / (4.0 * s2 * r * r))
    }

    /// `mu(m) = sqrt(4m^2 + sigma^2 - 1) / (2 sigma)`, the order that absorbs
    /// the effective potential without any external repulsion.
    pub fn effective_index_mu(&self, m: i64) -> Result<BesselOrder> {
        let radicand = 4.0 * (m as f64).powi(2) + self.sigma * self.sigma - 1.0;
        if radicand < 0.0 {
            return Err(Error::ImaginaryIndex { m, radicand });
        }
        BesselOrder::new(radicand.sqrt() / (2.0 * self.sigma))
    }

    /// Smallest `kappa` for which every coupled index is real: `1 - sigma^2`.
    pub fn kappa_floor(&self) -> f64 {
        1.0 - self.sigma * self.sigma
    }

    /// `nu(m, sigma) = sqrt(4m^2 + kappa + sigma^2 - 1) / (2 sigma)`.
    pub fn coupled_index_nu(&self, kappa: f64, m: i64) -> Result<BesselOrder> {
        ensure_finite("kappa", kappa)?;
        let floor = self.kappa_floor();
        if kappa < floor {
            return Err(domain(format!(
                "kappa must be >= 1 - sigma^2 = {floor}, got {kappa}"
            )));
        }
        // kappa >= floor, so only rounding can push this below zero
        let radicand = (4.0 * (m as f64).powi(2) + kappa + self.sigma * self.sigma - 1.0).max(0.0);
        BesselOrder::new(radicand.sqrt() / (2.0 * self.sigma))
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("radius must be finite and > 0, got {r}")))
    }
}
