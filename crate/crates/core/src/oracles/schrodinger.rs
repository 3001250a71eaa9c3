//! Finite-difference radial Schrödinger oracle.
//!
//! With `u(r) = sqrt(r) psi(r)` the channel-`m` radial operator on the cone is
//!
//! ```text
//! -(hbar^2/2M) [u'' - (m^2/sigma^2 - 1/4) u / r^2] + V_c(r) u + V(r) u
//! ```
//!
//! discretized by central differences with Dirichlet ends. `V_c` is either the
//! Jensen-Koppe term `-(hbar^2/2M) H^2` or zero (Podolsky). Only the former
//! reproduces the path-integral spectrum on a cone.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::grid::RadialGrid;
use crate::spectrum::{OscillatorModel, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvatureTermMode {
    JensenKoppe,
    Podolsky,
}

impl CurvatureTermMode {
    pub fn curvature_potential(self, model: &OscillatorModel, r: f64) -> Result<f64> {
        match self {
            Self::JensenKoppe => model.geometry().effective_potential(model.constants(), r),
            Self::Podolsky => Ok(0.0),
        }
    }
}

impl fmt::Display for CurvatureTermMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::JensenKoppe => "jensen-koppe",
            Self::Podolsky => "podolsky",
        })
    }
}

impl FromStr for CurvatureTermMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "jensen-koppe" | "jk" => Ok(Self::JensenKoppe),
            "podolsky" => Ok(Self::Podolsky),
            other => Err(domain(format!(
                "unknown curvature term {other:?}; expected jensen-koppe or podolsky"
            ))),
        }
    }
}

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(domain(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(&off).any(|x| !x.is_finite()) {
            return Err(domain("tridiagonal entries must be finite"));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off_diag(&self) -> &[f64] {
        &self.off
    }

    /// Dense copy, row-major.
    pub fn to_dense(&self) -> ndarray::Array2<f64> {
        let n = self.dim();
        let mut a = ndarray::Array2::zeros((n, n));
        for i in 0..n {
            a[[i, i]] = self.diag[i];
        }
        for (i, &e) in self.off.iter().enumerate() {
            a[[i, i + 1]] = e;
            a[[i + 1, i]] = e;
        }
        a
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if x.len() != n {
            return Err(domain(format!(
                "vector length {} != matrix dimension {n}",
                x.len()
            )));
        }
        Ok((0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect())
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence of the LDLᵀ pivots).
    fn count_below(&self, x: f64, off_sq: &[f64], pivmin: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for (i, &d) in self.diag.iter().enumerate() {
            if i > 0 {
                q = d - x - off_sq[i - 1] / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues, ascending, each bisected down to adjacent floats.
    pub fn eigen_lowest(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 || k > self.dim() {
            return Err(domain(format!(
                "requested {k} eigenvalues of a {0}x{0} matrix",
                self.dim()
            )));
        }
        let off_sq: Vec<f64> = self.off.iter().map(|e| e * e).collect();
        let (lo0, hi0) = self.gershgorin();
        let scale = lo0.abs().max(hi0.abs()).max(f64::MIN_POSITIVE);
        let pivmin = f64::MIN_POSITIVE.max(f64::EPSILON * f64::EPSILON * scale);
        Ok((0..k)
            .map(|idx| {
                let (mut lo, mut hi) = (lo0, hi0);
                loop {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break 0.5 * (lo + hi);
                    }
                    if self.count_below(mid, &off_sq, pivmin) > idx {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
            })
            .collect())
    }
}

fn inverse_square_coefficient(model: &OscillatorModel, m: i64, mode: CurvatureTermMode) -> f64 {
    // everything multiplying (hbar^2/2M) / r^2 in the radial operator
    let s2 = model.sigma().powi(2);
    let centrifugal = (m * m) as f64 / s2 - 0.25;
    let core = model.kappa() / (4.0 * s2);
    match mode {
        CurvatureTermMode::JensenKoppe => centrifugal + core - (1.0 - s2) / (4.0 * s2),
        CurvatureTermMode::Podolsky => centrifugal + core,
    }
}

/// Central-difference radial Hamiltonian on the interior nodes of `grid`.
pub fn radial_hamiltonian_matrix(
    model: &OscillatorModel,
    m: i64,
    mode: CurvatureTermMode,
    grid: &RadialGrid,
) -> Result<SymTridiagonal> {
    let kin = model.constants().kinetic();
    let h = grid.spacing();
    let centrifugal = (m * m) as f64 / model.sigma().powi(2) - 0.25;
    let diag = (1..grid.points() - 1)
        .map(|i| {
            let r = grid.node(i);
            Ok(2.0 * kin / (h * h)
                + kin * centrifugal / (r * r)
                + mode.curvature_potential(model, r)?
                + model.potential(r)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let off = vec![-kin / (h * h); diag.len() - 1];
    SymTridiagonal::new(diag, off)
}

/// Default grid: `[1e-3, 12]` oscillator lengths, 4000 points.
pub fn reference_grid(model: &OscillatorModel) -> RadialGrid {
    let l = model.length();
    RadialGrid::new(1e-3 * l, 12.0 * l, 4000).expect("fixed grid is valid")
}

/// `hbar omega (2n + 1 + sqrt(4m^2 + kappa) / (2 sigma))`: the spectrum with the
/// curvature term left out.
pub fn podolsky_energy(model: &OscillatorModel, qn: QuantumNumbers) -> f64 {
    let nu = (4.0 * (qn.m * qn.m) as f64 + model.kappa()).sqrt() / (2.0 * model.sigma());
    model.hbar() * model.omega() * (2.0 * qn.n as f64 + 1.0 + nu)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelEstimate {
    pub n: u32,
    /// Eigenvalue on the grid as given.
    pub raw: f64,
    /// Extrapolated to `h -> 0` and `r_min -> 0`.
    pub extrapolated: f64,
    /// `|extrapolated - raw|`.
    pub error_estimate: f64,
}

/// The `k` lowest levels of channel `m`, extrapolated in the spacing and the
/// inner cutoff.
///
/// Spacing: the grid and its refinement are combined as `(4 E_h/2 - E_h) / 3`.
/// Cutoff: a Dirichlet wall at `r_0` shifts a level by `~ r_0^p` with
/// `p = 2 sqrt(c + 1/4)`, `c` the inverse-square coefficient, so the same
/// estimate at `r_0/2` gives `(2^p E(r_0/2) - E(r_0)) / (2^p - 1)`. For `p`
/// near zero the shift decays too slowly to extrapolate and the `r_0/2`
/// value is used as is.
pub fn extrapolated_levels(
    model: &OscillatorModel,
    m: i64,
    mode: CurvatureTermMode,
    grid: &RadialGrid,
    k: usize,
) -> Result<Vec<LevelEstimate>> {
    let solve = |g: &RadialGrid| radial_hamiltonian_matrix(model, m, mode, g)?.eigen_lowest(k);
    let spacing_extrapolated = |g: &RadialGrid| -> Result<(Vec<f64>, Vec<f64>)> {
        let (coarse, fine) = rayon::join(|| solve(g), || solve(&g.refined()));
        let (coarse, fine) = (coarse?, fine?);
        let e = coarse
            .iter()
            .zip(&fine)
            .map(|(c, f)| (4.0 * f - c) / 3.0)
            .collect();
        Ok((e, coarse))
    };
    let half = RadialGrid::new(0.5 * grid.r_min(), grid.r_max(), grid.points())?;
    let (at_r0, at_half) = rayon::join(
        || spacing_extrapolated(grid),
        || spacing_extrapolated(&half),
    );
    let ((e_r0, raw), (e_half, _)) = (at_r0?, at_half?);
    let p = 2.0
        * (inverse_square_coefficient(model, m, mode) + 0.25)
            .max(0.0)
            .sqrt();
    Ok((0..k)
        .map(|i| {
            let extrapolated = if p >= 0.2 {
                let w = 2f64.powf(p);
                (w * e_half[i] - e_r0[i]) / (w - 1.0)
            } else {
                e_half[i]
            };
            LevelEstimate {
                n: i as u32,
                raw: raw[i],
                extrapolated,
                error_estimate: (extrapolated - raw[i]).abs(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Matches,
    Excludes,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Matches => "matches",
            Self::Excludes => "excludes",
            Self::Inconclusive => "inconclusive",
        })
    }
}

/// Relative discretization error above which no verdict is given.
pub const INCONCLUSIVE_RELATIVE_ERROR: f64 = 1e-2;
/// A level matches when it lies within this multiple of its error estimate.
pub const MATCH_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelComparison {
    pub n: u32,
    pub numeric: f64,
    /// `hbar omega (2n + 1 + nu(m, sigma))`.
    pub analytic: f64,
    pub abs_deviation: f64,
    pub rel_deviation: f64,
    pub error_estimate: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumMatchReport {
    pub m: i64,
    pub mode: CurvatureTermMode,
    pub levels: Vec<LevelComparison>,
}

pub fn verdict(numeric: f64, analytic: f64, error_estimate: f64) -> Verdict {
    let scale = numeric.abs();
    if error_estimate > INCONCLUSIVE_RELATIVE_ERROR * scale {
        return Verdict::Inconclusive;
    }
    let est = error_estimate.max(1e-12 * scale);
    if (numeric - analytic).abs() <= MATCH_FACTOR * est {
        Verdict::Matches
    } else {
        Verdict::Excludes
    }
}

/// Compares the `k` lowest extrapolated levels with the path-integral spectrum.
pub fn spectrum_match_report(
    model: &OscillatorModel,
    m: i64,
    mode: CurvatureTermMode,
    grid: &RadialGrid,
    k: usize,
) -> Result<SpectrumMatchReport> {
    let levels = extrapolated_levels(model, m, mode, grid, k)?
        .into_iter()
        .map(|lvl| {
            let analytic = model.energy(QuantumNumbers::new(lvl.n, m));
            let abs_deviation = (lvl.extrapolated - analytic).abs();
            LevelComparison {
                n: lvl.n,
                numeric: lvl.extrapolated,
                analytic,
                abs_deviation,
                rel_deviation: abs_deviation / analytic.abs(),
                error_estimate: lvl.error_estimate,
                verdict: verdict(lvl.extrapolated, analytic, lvl.error_estimate),
            }
        })
        .collect();
    Ok(SpectrumMatchReport { m, mode, levels })
}
