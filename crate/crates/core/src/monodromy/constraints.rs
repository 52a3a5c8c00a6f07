//! The two algebraic restrictions tying `S`, `C` to `mu`, `R`, `eta`.

use std::f64::consts::PI;

use crate::cohomology::{eta, operator_matrices};
use crate::error::Result;
use crate::linalg::{c, diag, expm_nilpotent, inverse, max_abs, CMatrix, Cx};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstraintResiduals {
    /// `max |C S^T S^{-1} C^{-1} - e^{2 pi i mu} e^{2 pi i R}|`
    pub monodromy: f64,
    /// `max |S - C^{-1} e^{-pi i R} e^{-pi i mu} eta^{-1} (C^T)^{-1}|`
    pub stokes: f64,
}

fn exp_mu(t: Cx) -> CMatrix {
    let mu: Vec<Cx> = (0..4).map(|i| (t * (i as f64 - 1.5)).exp()).collect();
    diag(&mu)
}

pub fn verify_constraints(s: &CMatrix, cm: &CMatrix) -> Result<ConstraintResiduals> {
    let ops = operator_matrices(c(1.0, 0.0));
    let two_pi_i = c(0.0, 2.0 * PI);
    let s_inv = inverse(s, "S")?;
    let c_inv = inverse(cm, "C")?;
    let lhs = cm * s.transpose() * &s_inv * &c_inv;
    let rhs = exp_mu(two_pi_i) * expm_nilpotent(&ops.r, two_pi_i);
    let monodromy = max_abs(&(lhs - rhs));
    let minus_pi_i = c(0.0, -PI);
    let ct_inv = inverse(&cm.transpose(), "C^T")?;
    let eta_inv = inverse(&eta(), "eta")?;
    let rebuilt = &c_inv * expm_nilpotent(&ops.r, minus_pi_i) * exp_mu(minus_pi_i) * eta_inv * ct_inv;
    let stokes = max_abs(&(s - rebuilt));
    Ok(ConstraintResiduals { monodromy, stokes })
}

/// `e^{2 pi i mu}`, which is `-I` here since every `mu_a` is a half-odd integer.
pub fn e_two_pi_i_mu() -> CMatrix {
    exp_mu(c(0.0, 2.0 * PI))
}
