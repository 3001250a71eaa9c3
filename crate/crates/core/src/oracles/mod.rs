//! Independent numerical checks of the path-integral results:
//!
//! - [`schrodinger`]: finite-difference radial eigensolver with a selectable
//!   curvature term;
//! - [`recombination`]: the short-time Bessel factor against its recombined
//!   form with the effective potential;
//! - [`transfer`]: the time-sliced path integral as repeated quadrature.

pub mod recombination;
pub mod schrodinger;
pub mod transfer;

pub use recombination::{ln_short_time_bfi, recombination_ratio, short_time_bfi};
pub use schrodinger::{
    extrapolated_levels, podolsky_energy, radial_hamiltonian_matrix, reference_grid,
    spectrum_match_report, verdict, CurvatureTermMode, LevelComparison, LevelEstimate,
    SpectrumMatchReport, SymTridiagonal, Verdict,
};
pub use transfer::{
    compose, max_interior_deviation, short_time_kernel_matrix, transfer_matrix_kernel,
    TransferMatrixRun,
};
