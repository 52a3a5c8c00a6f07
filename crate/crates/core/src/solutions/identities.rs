use std::f64::consts::PI;

use super::{phi_series, LogSeries, SeriesConfig, UCComplex};
use crate::error::Result;
use crate::exec::Exec;
use crate::linalg::Cx;
use crate::special::MellinIntegrand;

/// The pair of globally convergent Mellin-Barnes solutions.
#[derive(Clone, Debug)]
pub struct ScalarSolutions {
    pub phi1: LogSeries,
    pub phi2: LogSeries,
}

impl ScalarSolutions {
    pub fn new(cfg: SeriesConfig, exec: Exec) -> Result<Self> {
        Ok(ScalarSolutions {
            phi1: phi_series(MellinIntegrand::Phi1, cfg, exec)?,
            phi2: phi_series(MellinIntegrand::Phi2, cfg, exec)?,
        })
    }

    pub fn get(&self, kind: MellinIntegrand) -> &LogSeries {
        match kind {
            MellinIntegrand::Phi1 => &self.phi1,
            MellinIntegrand::Phi2 => &self.phi2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityResiduals {
    /// `phi2(z / epsilon) - 2 pi phi1(z) + phi2(z)`
    pub euler: Cx,
    /// `|euler| / (2 pi |phi1(z)|)`
    pub euler_relative: f64,
    /// `sum_k (-1)^k C(4,k) phi2(z epsilon^{4-k})`
    pub rotation: Cx,
    /// `|rotation|` over the sum of the moduli of its five terms
    pub rotation_relative: f64,
}

fn rotation_residual(phi: &LogSeries, z: UCComplex) -> Result<(Cx, f64)> {
    const W: [f64; 5] = [1.0, -4.0, 6.0, -4.0, 1.0];
    let mut acc = Cx::new(0.0, 0.0);
    let mut scale = 0.0;
    for (k, w) in W.iter().enumerate() {
        let v = phi.eval(z.rotated_eps(4 - k as i32), 0)? * *w;
        acc += v;
        scale += v.norm();
    }
    Ok((acc, acc.norm() / scale))
}

pub fn identity_residuals(sol: &ScalarSolutions, z: UCComplex) -> Result<IdentityResiduals> {
    let p1 = sol.phi1.eval(z, 0)?;
    let euler = sol.phi2.eval(z.rotated_eps(-1), 0)? - 2.0 * PI * p1 + sol.phi2.eval(z, 0)?;
    let (rotation, rotation_relative) = rotation_residual(&sol.phi2, z)?;
    Ok(IdentityResiduals {
        euler,
        euler_relative: euler.norm() / (2.0 * PI * p1.norm()),
        rotation,
        rotation_relative,
    })
}

/// Rotation identity for an arbitrary solution, e.g. `phi1`.
pub fn rotation_identity(phi: &LogSeries, z: UCComplex) -> Result<f64> {
    rotation_residual(phi, z).map(|r| r.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sols() -> ScalarSolutions {
        ScalarSolutions::new(SeriesConfig::default(), Exec::default()).unwrap()
    }

    #[test]
    fn euler_identity_points() {
        let s = sols();
        for z in [
            UCComplex::polar(1.3, PI / 6.0),
            UCComplex::polar(1.1, 1.4 * PI),
        ] {
            let r = identity_residuals(&s, z).unwrap();
            assert!(r.euler_relative < 1e-9, "{z}: {}", r.euler_relative);
        }
    }

    #[test]
    fn rotation_identity_points() {
        let s = sols();
        let z = UCComplex::polar(0.8, PI);
        let r = identity_residuals(&s, z).unwrap();
        assert!(r.rotation_relative < 1e-9);
        assert!(rotation_identity(&s.phi1, z).unwrap() < 1e-9);
    }
}
