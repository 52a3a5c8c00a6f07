//! Fundamental matrices `Y_R`, `Y_L` of `dy/dz = (U + mu/z) y`, built column
//! by column from scalar solutions.

use std::f64::consts::PI;

use crate::cohomology::DIM;
use crate::error::{Error, Result};
use crate::frame::{Interval, SectorConfig};
use crate::linalg::{c, CMatrix, Cx};
use crate::solutions::{LogSeries, ScalarSolutions, UCComplex};

/// Prefactor of `phi1`: `-1/(2 sqrt 2 pi^2)`.
pub fn k1() -> f64 {
    -1.0 / (2.0 * 2f64.sqrt() * PI * PI)
}

/// Prefactor of `phi2`: `-1/(sqrt 2 pi^3)`.
pub fn k2() -> f64 {
    -1.0 / (2f64.sqrt() * PI.powi(3))
}

/// The vector `(y1, y2, y3, y4)` determined by a scalar solution:
/// `y4 = z^{3/2} phi`, `y3 = z^{3/2} phi' / 3`,
/// `y2 = (z^{3/2} phi'' + z^{1/2} phi') / 18`,
/// `y1 = (z^2 phi''' + phi' + 3 z phi'' - 54 z^2 phi) / (54 z^{1/2})`.
pub fn vector_from_scalar(phi: &LogSeries, z: UCComplex) -> Result<[Cx; DIM]> {
    let d: Vec<Cx> = (0..4).map(|m| phi.eval(z, m)).collect::<Result<_>>()?;
    Ok(vector_from_derivatives(&[d[0], d[1], d[2], d[3]], z))
}

pub fn vector_from_derivatives(d: &[Cx; 4], z: UCComplex) -> [Cx; DIM] {
    let z32 = z.powf(1.5);
    let z12 = z.powf(0.5);
    let zc = z.to_complex();
    let y4 = z32 * d[0];
    let y3 = z32 * d[1] / 3.0;
    let y2 = (z32 * d[2] + z12 * d[1]) / 18.0;
    let y1 = (zc * zc * d[3] + d[1] + 3.0 * zc * d[2] - 54.0 * zc * zc * d[0]) / (54.0 * z12);
    [y1, y2, y3, y4]
}

fn matrix_from_columns(cols: &[LogSeries; DIM], z: UCComplex) -> Result<CMatrix> {
    let mut m = CMatrix::zeros(DIM, DIM);
    for (k, col) in cols.iter().enumerate() {
        let v = vector_from_scalar(col, z)?;
        for (i, x) in v.iter().enumerate() {
            m[(i, k)] = *x;
        }
    }
    Ok(m)
}

/// Scalar generators of the columns of `Y_R` and `Y_L`.
#[derive(Clone, Debug)]
pub struct FundamentalSolutions {
    pub scalars: ScalarSolutions,
    pub right: [LogSeries; DIM],
    pub left: [LogSeries; DIM],
    /// Second expression for the third column of `Y_L`.
    pub left_third_alt: LogSeries,
    pub sectors: SectorConfig,
}

impl FundamentalSolutions {
    pub fn new(scalars: ScalarSolutions, sectors: SectorConfig) -> Self {
        let theta = 2.0 * PI / 3.0;
        let (k1, k2) = (c(k1(), 0.0), c(k2(), 0.0));
        let p1 = &scalars.phi1;
        let p2 = &scalars.phi2;
        let right = [
            p2.scaled(k2),
            p1.rotated(2.0 * theta).scaled(k1),
            p1.rotated(theta).scaled(-k1),
            p1.scaled(k1),
        ];
        let l1 = p2.rotated(-theta).scaled(-k2);
        let l2 = p1.rotated(-theta).scaled(-k1);
        let l3 = LogSeries::linear_combination(&[
            (k1, &p1.rotated(-2.0 * theta)),
            (c(5.0, 0.0), &l2),
        ]);
        let l4 = p1.scaled(k1);
        // With the phi2 prefactor used here the coefficient of the first
        // column is +4; the display with -4 goes with a different
        // normalization of that column.
        let left_third_alt = LogSeries::linear_combination(&[
            (-k1, &p1.rotated(theta)),
            (c(4.0, 0.0), &l1),
            (c(5.0, 0.0), &l4),
        ]);
        FundamentalSolutions {
            right,
            left: [l1, l2, l3, l4],
            left_third_alt,
            scalars,
            sectors,
        }
    }

    fn check(sector: &Interval, what: &'static str, z: UCComplex) -> Result<()> {
        if sector.contains(z.arg) {
            Ok(())
        } else {
            Err(Error::SectorViolation {
                what,
                arg: z.arg,
                lo: sector.lo,
                hi: sector.hi,
            })
        }
    }

    pub fn y_right(&self, z: UCComplex) -> Result<CMatrix> {
        Self::check(&self.sectors.pi_right, "Y_R", z)?;
        matrix_from_columns(&self.right, z)
    }

    pub fn y_left(&self, z: UCComplex) -> Result<CMatrix> {
        Self::check(&self.sectors.pi_left, "Y_L", z)?;
        matrix_from_columns(&self.left, z)
    }

    /// `Y_L` with its third column from the second expression.
    pub fn y_left_alt(&self, z: UCComplex) -> Result<CMatrix> {
        Self::check(&self.sectors.pi_left, "Y_L", z)?;
        let mut cols = self.left.clone();
        cols[2] = self.left_third_alt.clone();
        matrix_from_columns(&cols, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::operator_matrices;
    use crate::exec::Exec;
    use crate::frame::sector_config;
    use crate::linalg::{max_abs, max_abs_diff};
    use crate::solutions::{quantum_period, SeriesConfig};

    fn fundamental() -> FundamentalSolutions {
        let s = ScalarSolutions::new(SeriesConfig::default(), Exec::default()).unwrap();
        FundamentalSolutions::new(s, sector_config(PI / 4.0).unwrap())
    }

    /// Richardson-extrapolated central difference of `f` along the ray
    /// direction at `z`, returning `dy/dz`.
    fn derivative(f: &dyn Fn(UCComplex) -> [Cx; DIM], z: UCComplex, h: f64) -> [Cx; DIM] {
        let dir = Cx::from_polar(1.0, z.arg);
        let central = |h: f64| -> [Cx; DIM] {
            let a = f(z.with_modulus(z.modulus + h));
            let b = f(z.with_modulus(z.modulus - h));
            std::array::from_fn(|i| (a[i] - b[i]) / (2.0 * h * dir))
        };
        let d1 = central(h);
        let d2 = central(h / 2.0);
        std::array::from_fn(|i| (4.0 * d2[i] - d1[i]) / 3.0)
    }

    #[test]
    fn columns_solve_the_system() {
        let fs = fundamental();
        let ops = operator_matrices(c(1.0, 0.0));
        let z = UCComplex::polar(1.2, PI / 5.0);
        for col in fs.right.iter().chain(fs.left.iter()) {
            let f = |w: UCComplex| vector_from_scalar(col, w).unwrap();
            let dy = derivative(&f, z, 1e-4);
            let y = f(z);
            let yv = CMatrix::from_fn(DIM, 1, |i, _| y[i]);
            let rhs = (&ops.u + &ops.mu / z.to_complex()) * yv;
            let scale = y.iter().map(|x| x.norm()).fold(0.0, f64::max);
            for i in 0..DIM {
                assert!((dy[i] - rhs[(i, 0)]).norm() < 1e-7 * scale.max(1.0));
            }
        }
    }

    #[test]
    fn period_gives_last_component() {
        let p = quantum_period(30).to_log_series();
        let z = UCComplex::polar(0.4, 0.0);
        let v = vector_from_scalar(&p, z).unwrap();
        assert!((v[3] - z.powf(1.5) * p.eval(z, 0).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn assembly_is_linear() {
        let fs = fundamental();
        let (a, b) = (c(0.3, -1.0), c(2.0, 0.5));
        let comb = LogSeries::linear_combination(&[(a, &fs.scalars.phi1), (b, &fs.scalars.phi2)]);
        let z = UCComplex::polar(0.9, 1.0);
        let lhs = vector_from_scalar(&comb, z).unwrap();
        let v1 = vector_from_scalar(&fs.scalars.phi1, z).unwrap();
        let v2 = vector_from_scalar(&fs.scalars.phi2, z).unwrap();
        for i in 0..DIM {
            let r = a * v1[i] + b * v2[i];
            assert!((lhs[i] - r).norm() < 1e-12 * r.norm().max(1.0));
        }
    }

    #[test]
    fn two_expressions_for_left_third_column() {
        let fs = fundamental();
        for arg in [0.55 * PI, 0.6 * PI, 0.65 * PI] {
            let z = UCComplex::polar(1.0, arg);
            let a = fs.y_left(z).unwrap();
            let b = fs.y_left_alt(z).unwrap();
            assert!(max_abs_diff(&a, &b) < 1e-9 * max_abs(&a), "arg {arg}: {:e}", max_abs_diff(&a, &b) / max_abs(&a));
        }
    }

    #[test]
    fn nondegenerate_and_sector_checked() {
        let fs = fundamental();
        let z = UCComplex::polar(2.0, PI / 4.0);
        assert!(fs.y_right(z).unwrap().determinant().norm() > 1e-3);
        assert!(matches!(
            fs.y_right(UCComplex::polar(2.0, PI / 2.0)),
            Err(Error::SectorViolation { .. })
        ));
        assert!(fs.y_left(UCComplex::polar(2.0, 0.0)).is_err());
    }
}
