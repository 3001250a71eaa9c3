//! Time-sliced path integral for one angular channel, as a transfer matrix.
//!
//! The short-time radial kernel over `eps` is
//!
//! ```text
//! R_m(r_i, r_j; eps) = (M / hbar eps) exp{-(M / 2 hbar eps)(r_i^2 + r_j^2) - V(r_i) eps / hbar}
//!                      * I_m^sigma(sqrt(r_i r_j))
//! ```
//!
//! with the true angular number `m` in the Bessel factor. `N` slices are
//! chained by trapezoid quadrature in `r dr`, `K_N = A (W A)^{N-1}`; whatever
//! order `nu(m, sigma)` the result carries has to emerge from the numerics.

use ndarray::{Array2, Axis};
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::grid::RadialGrid;
use crate::propagator::{radial_kernel_closed, EuclideanTime};
use crate::specfun::ln_bessel_i_scaled;
use crate::spectrum::OscillatorModel;

/// Short-time kernels narrower than this many grid spacings are under-resolved.
pub const RESOLUTION_SPACINGS: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrixRun {
    /// `kernel[[i, j]]` approximates `R_m(r_i, r_j; beta)`.
    pub kernel: Array2<f64>,
    pub grid: RadialGrid,
    pub slices: u32,
    pub eps: f64,
    /// Set when the short-time kernel is not resolved by the grid.
    pub diagnostic: Option<String>,
}

/// `A[[i, j]] = R_m(r_i, r_j; eps)`, with the potential taken at the later point `r_i`.
pub fn short_time_kernel_matrix(
    model: &OscillatorModel,
    m: i64,
    grid: &RadialGrid,
    eps: EuclideanTime,
) -> Result<Array2<f64>> {
    let (mass, hbar, e) = (model.mass(), model.hbar(), eps.get());
    let s = model.sigma();
    let am = m.unsigned_abs() as f64;
    let nodes = grid.nodes();
    let n = nodes.len();
    let ln_pre = (mass / (hbar * e)).ln() + s.ln();
    let rows = nodes
        .par_iter()
        .map(|&ri| {
            let v = model.potential(ri)? * e / hbar;
            nodes
                .iter()
                .map(|&rj| {
                    let d = ri - rj;
                    let z0 = mass * ri * rj / (hbar * e);
                    let ln_k = ln_pre - mass / (2.0 * hbar * e) * d * d - v
                        + ln_bessel_i_scaled(am, s * s * z0)?;
                    Ok(ln_k.exp())
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Array2::from_shape_vec((n, n), rows.concat()).expect("square by construction"))
}

/// `a W b`: one quadrature over the shared intermediate point.
pub fn compose(grid: &RadialGrid, a: &Array2<f64>, b: &Array2<f64>) -> Result<Array2<f64>> {
    let n = grid.points();
    if a.dim() != (n, n) || b.dim() != (n, n) {
        return Err(domain(format!(
            "compose needs {n}x{n} matrices, got {:?} and {:?}",
            a.dim(),
            b.dim()
        )));
    }
    let w = ndarray::Array1::from(grid.radial_weights()).insert_axis(Axis(1));
    Ok(a.dot(&(&w * b)))
}

/// `N`-slice approximation of `R_m(., .; beta)` on `grid`.
pub fn transfer_matrix_kernel(
    model: &OscillatorModel,
    m: i64,
    grid: &RadialGrid,
    beta: EuclideanTime,
    slices: u32,
) -> Result<TransferMatrixRun> {
    if slices == 0 {
        return Err(domain("need at least one time slice"));
    }
    let eps = EuclideanTime::new(beta.get() / slices as f64)?;
    let width = (model.hbar() * eps.get() / model.mass()).sqrt();
    let diagnostic = (width < RESOLUTION_SPACINGS * grid.spacing()).then(|| {
        format!(
            "short-time width {width} is below {RESOLUTION_SPACINGS} grid spacings ({}); refine the grid or use fewer slices",
            grid.spacing()
        )
    });
    let a = short_time_kernel_matrix(model, m, grid, eps)?;
    // binary powering: A^(p+q) = compose(A^p, A^q)
    let mut result: Option<Array2<f64>> = None;
    let mut power = a;
    let mut k = slices;
    loop {
        if k & 1 == 1 {
            result = Some(match result {
                None => power.clone(),
                Some(r) => compose(grid, &r, &power)?,
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        power = compose(grid, &power, &power)?;
    }
    Ok(TransferMatrixRun {
        kernel: result.expect("slices >= 1"),
        grid: *grid,
        slices,
        eps: eps.get(),
        diagnostic,
    })
}

/// Largest relative deviation from the closed-form kernel over grid pairs where
/// the closed form is at least `floor` times its maximum.
pub fn max_interior_deviation(
    model: &OscillatorModel,
    m: i64,
    run: &TransferMatrixRun,
    floor: f64,
) -> Result<f64> {
    let beta = EuclideanTime::new(run.eps * run.slices as f64)?;
    let nodes = run.grid.nodes();
    let closed = nodes
        .par_iter()
        .map(|&ri| {
            nodes
                .iter()
                .map(|&rj| radial_kernel_closed(model, m, ri, rj, beta))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let peak = closed.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    let mut worst = 0.0f64;
    for (i, row) in closed.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c >= floor * peak {
                worst = worst.max((run.kernel[[i, j]] - c).abs() / c);
            }
        }
    }
    Ok(worst)
}
