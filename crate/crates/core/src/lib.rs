//! Monodromy data `(mu, R, S, C)` of the small quantum cohomology of the
//! Lagrangian Grassmannian LG(2,4) at `q = 1`, and the comparison of the
//! Stokes and central connection matrices with the Euler matrix and the
//! Gamma-class matrix of a full exceptional collection.
//!
//! The pipeline is built from globally convergent log-series solutions of
//! the scalar quantum differential equation
//! `D^4 phi - 108 z^3 D phi - 162 z^3 phi = 0` (with `D = z d/dz`), evaluated
//! on the universal cover of `C*`. Everything that can be exact (ring
//! structure constants, the topological-enumerative series, Chern data,
//! Euler pairings) is computed in rational arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod braid;
pub mod cli;
pub mod closed_form;
pub mod cohomology;
pub mod error;
pub mod exec;
pub mod frame;
pub mod ktheory;
pub mod linalg;
pub mod monodromy;
pub mod report;
pub mod solutions;
pub mod special;
pub mod symbolic;

pub use error::{Error, Result};
pub use exec::Exec;
pub use linalg::{CMatrix, Cx};
pub use solutions::UCComplex;
