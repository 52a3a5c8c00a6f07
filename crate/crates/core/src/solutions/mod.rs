//! Scalar solutions of `D^4 phi - 108 z^3 D phi - 162 z^3 phi = 0`,
//! `D = z d/dz`: the exact Frobenius basis at `z = 0`, the Mellin-Barnes
//! solutions as residue log-series, and a contour-integral oracle.

pub mod contour;
pub mod frobenius;
pub mod identities;
pub mod logseries;
pub mod mellin;
mod ucomplex;

pub use contour::{contour_eval, contour_eval_with, validity_sector, ContourOptions};
pub use frobenius::{
    frobenius_basis, frobenius_coordinates, period_closed_form, quantum_period, rotation_matrix,
    RationalLogSeries,
};
pub use identities::{identity_residuals, rotation_identity, IdentityResiduals, ScalarSolutions};
pub use logseries::{Evaluation, LogSeries};
pub use mellin::{phi_series, SeriesConfig, DEFAULT_ORDER};
pub use ucomplex::UCComplex;
