//! Semisimple frame at `q = 1`: canonical coordinates, the normalized
//! idempotent basis and `Psi`, and the Stokes-ray geometry for an admissible
//! line.

use std::f64::consts::PI;

use num::{One, Zero};

use crate::cohomology::{self, CohClass, DIM};
use crate::error::{Error, Result};
use crate::linalg::{c, inverse, max_abs, CMatrix, Cx};

/// `epsilon = e^{2 pi i / 3}`
pub fn epsilon() -> Cx {
    Cx::from_polar(1.0, 2.0 * PI / 3.0)
}

/// `u = (0, a, a epsilon^2, a epsilon)` with `a = 3 * 2^{2/3}`.
pub fn canonical_coordinates() -> [Cx; DIM] {
    let a = 3.0 * 2f64.powf(2.0 / 3.0);
    let e = epsilon();
    [Cx::zero(), c(a, 0.0), e * e * a, e * a]
}

/// Convention table for the square roots `sqrt(eta_i)`, `eta_i = <pi_i, 1>`:
/// each root is the one nearest to the listed value of `psi_{i1}`.
/// The table is `(-i/sqrt 2, 1/sqrt 6, 1/sqrt 6, 1/sqrt 6)`.
pub fn psi_first_column() -> [Cx; DIM] {
    let s6 = c(1.0 / 6f64.sqrt(), 0.0);
    [c(0.0, -(0.5f64.sqrt())), s6, s6, s6]
}

#[derive(Clone, Debug)]
pub struct Frame {
    pub u: [Cx; DIM],
    /// Row `i` holds `psi_{i alpha} = <f_i, e_alpha>`.
    pub psi: CMatrix,
    pub u_diag: CMatrix,
    pub v: CMatrix,
    /// Column `i` holds the coordinates of the normalized idempotent `f_i`.
    pub idempotents: CMatrix,
}

impl Frame {
    pub fn f(&self, i: usize) -> CohClass<Cx> {
        CohClass::new(std::array::from_fn(|a| self.idempotents[(a, i)]))
    }
}

pub fn frame() -> Result<Frame> {
    let ops = cohomology::operator_matrices(Cx::one());
    let u = canonical_coordinates();
    let id = CMatrix::identity(DIM, DIM);
    let mut idem = CMatrix::zeros(DIM, DIM);
    for i in 0..DIM {
        // Lagrange projector onto the u_i eigenline, applied to the unit
        let mut proj = id.clone();
        for j in 0..DIM {
            if j != i {
                let d = u[i] - u[j];
                if d.norm() < 1e-9 {
                    return Err(Error::DegenerateEigenvector(format!("u_{} = u_{}", i + 1, j + 1)));
                }
                proj = proj * (&ops.u - &id * u[j]) / d;
            }
        }
        let pi_i = proj.column(0).into_owned();
        let eta_i = pi_i[DIM - 1]; // <pi_i, 1> is the top coefficient
        if eta_i.norm() < 1e-12 {
            return Err(Error::DegenerateEigenvector(format!("<pi_{}, 1> = 0", i + 1)));
        }
        let target = psi_first_column()[i];
        let r = eta_i.sqrt();
        let root = if (r - target).norm() <= (r + target).norm() { r } else { -r };
        idem.set_column(i, &(pi_i / root));
    }
    let eta = cohomology::eta();
    let psi = idem.transpose() * &eta;
    let psi_inv = inverse(&psi, "Psi")?;
    let u_diag = &psi * &ops.u * &psi_inv;
    let v = &psi * &ops.mu * &psi_inv;
    Ok(Frame {
        u,
        psi,
        u_diag,
        v,
        idempotents: idem,
    })
}

/// Open interval of universal-cover arguments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

pub const GUARD: f64 = 1e-12;

impl Interval {
    pub fn contains(&self, arg: f64) -> bool {
        arg > self.lo + GUARD && arg < self.hi - GUARD
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn shifted(&self, by: f64) -> Interval {
        Interval {
            lo: self.lo + by,
            hi: self.hi + by,
        }
    }
}

/// `R_ij = { -i rho conj(u_i - u_j) : rho >= 0 }`, indices from 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StokesRay {
    pub i: usize,
    pub j: usize,
    /// Angle in `(-pi, pi]`.
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorConfig {
    pub ell_angle: f64,
    pub rays: Vec<StokesRay>,
    pub pi_left: Interval,
    pub pi_right: Interval,
    pub pi_plus: Interval,
    /// `Pi_-` from the general definition, around the negative half of the line.
    pub pi_minus: Interval,
    /// The interval `(-pi/6, pi/3)` as displayed for `Pi_-` at `ell = pi/4`,
    /// kept for comparison only.
    pub printed_pi_minus: Option<Interval>,
}

pub fn stokes_rays() -> Vec<StokesRay> {
    let u = canonical_coordinates();
    let mut rays = Vec::with_capacity(DIM * (DIM - 1));
    for i in 0..DIM {
        for j in 0..DIM {
            if i != j {
                let w = -Cx::i() * (u[i] - u[j]).conj();
                let mut angle = w.arg();
                // snap to the exact multiple of pi/6 the rays sit on
                let k = (angle / (PI / 6.0)).round();
                if (angle - k * PI / 6.0).abs() < 1e-9 {
                    angle = k * PI / 6.0;
                }
                if angle <= -PI {
                    angle += 2.0 * PI;
                }
                rays.push(StokesRay {
                    i: i + 1,
                    j: j + 1,
                    angle,
                });
            }
        }
    }
    rays
}

fn angle_mod_pi_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Smallest ray angle (lifted to the cover) strictly above `x`.
fn ray_above(rays: &[StokesRay], x: f64) -> f64 {
    rays.iter()
        .map(|r| {
            let k = ((x - r.angle) / (2.0 * PI)).floor() + 1.0;
            let mut a = r.angle + 2.0 * PI * k;
            while a - 2.0 * PI > x + GUARD {
                a -= 2.0 * PI;
            }
            while a <= x + GUARD {
                a += 2.0 * PI;
            }
            a
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest ray angle strictly below `x`.
fn ray_below(rays: &[StokesRay], x: f64) -> f64 {
    -ray_above(
        &rays
            .iter()
            .map(|r| StokesRay {
                angle: -r.angle,
                ..*r
            })
            .collect::<Vec<_>>(),
        -x,
    )
}

pub fn sector_config(ell_angle: f64) -> Result<SectorConfig> {
    let rays = stokes_rays();
    if rays
        .iter()
        .any(|r| angle_mod_pi_distance(r.angle, ell_angle) < GUARD)
    {
        return Err(Error::InadmissibleLine(ell_angle));
    }
    let pi_right = Interval {
        lo: ray_below(&rays, ell_angle - PI),
        hi: ray_above(&rays, ell_angle),
    };
    let pi_left = Interval {
        lo: ray_below(&rays, ell_angle),
        hi: ray_above(&rays, ell_angle + PI),
    };
    let pi_plus = pi_left
        .intersect(&pi_right)
        .expect("left and right sectors overlap around the line");
    let pi_minus = Interval {
        lo: ray_below(&rays, ell_angle - PI),
        hi: ray_above(&rays, ell_angle - PI),
    };
    let printed_pi_minus = ((ell_angle - PI / 4.0).abs() < GUARD).then_some(Interval {
        lo: -PI / 6.0,
        hi: PI / 3.0,
    });
    Ok(SectorConfig {
        ell_angle,
        rays,
        pi_left,
        pi_right,
        pi_plus,
        pi_minus,
        printed_pi_minus,
    })
}

/// `max |Psi^T Psi - eta|`
pub fn orthogonality_residual(f: &Frame) -> f64 {
    max_abs(&(f.psi.transpose() * &f.psi - cohomology::eta()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{pairing, quantum_product};
    use crate::linalg::{diag, max_abs_diff};

    #[test]
    fn coordinates() {
        let u = canonical_coordinates();
        assert!((u[1].re - 4.762_203_155_904_598).abs() < 1e-14);
        let sum: Cx = u.iter().sum();
        assert!(sum.norm() < 1e-14);
        // prod (lambda - u_i) = lambda^4 - 108 lambda at sample points
        for lam in [c(1.0, 0.0), c(0.3, -2.0), c(5.0, 1.0)] {
            let p: Cx = u.iter().map(|ui| lam - ui).product();
            let q = lam.powi(4) - 108.0 * lam;
            assert!((p - q).norm() < 1e-12 * q.norm());
        }
    }

    #[test]
    fn frame_matches_printed_entries() {
        let f = frame().unwrap();
        let s2 = 0.5f64.sqrt();
        let row1 = [c(0.0, -s2), c(0.0, 0.0), c(0.0, 0.0), c(0.0, s2)];
        for (a, e) in row1.iter().enumerate() {
            assert!((f.psi[(0, a)] - e).norm() < 1e-12, "psi(1,{}) = {}", a + 1, f.psi[(0, a)]);
        }
        let s6 = 1.0 / 6f64.sqrt();
        for i in 1..DIM {
            assert!((f.psi[(i, 0)] - s6).norm() < 1e-12);
        }
        assert!((f.v[(0, 1)] - c(0.0, 3f64.sqrt() / 2.0)).norm() < 1e-12);
        assert!(max_abs(&(f.v.transpose() + &f.v)) < 1e-12);
        assert!(max_abs_diff(&f.u_diag, &diag(&f.u)) < 1e-12);
        assert!(orthogonality_residual(&f) < 1e-12);
    }

    #[test]
    fn idempotent_relations() {
        let f = frame().unwrap();
        let one = Cx::one();
        for i in 0..DIM {
            for j in 0..DIM {
                let prod = quantum_product(&f.f(i), &f.f(j), &one);
                let expected = if i == j {
                    f.f(j).scale(&(one / f.psi[(i, 0)]))
                } else {
                    CohClass::zero()
                };
                for a in 0..DIM {
                    assert!((prod.coeffs[a] - expected.coeffs[a]).norm() < 1e-12);
                }
                let p = pairing(&f.f(i), &f.f(j));
                let d = if i == j { one } else { Cx::zero() };
                assert!((p - d).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn sectors_for_quarter_line() {
        let s = sector_config(PI / 4.0).unwrap();
        assert_eq!(s.rays.len(), 12);
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert!(close(s.pi_left.lo, PI / 6.0) && close(s.pi_left.hi, 4.0 * PI / 3.0));
        assert!(close(s.pi_right.lo, -5.0 * PI / 6.0) && close(s.pi_right.hi, PI / 3.0));
        assert!(close(s.pi_plus.lo, PI / 6.0) && close(s.pi_plus.hi, PI / 3.0));
        assert!(close(s.pi_minus.lo, -5.0 * PI / 6.0) && close(s.pi_minus.hi, -2.0 * PI / 3.0));
        let r12 = s.rays.iter().find(|r| (r.i, r.j) == (1, 2)).unwrap();
        assert!(close(r12.angle, PI / 2.0));
        for r in &s.rays {
            let back = s.rays.iter().find(|x| (x.i, x.j) == (r.j, r.i)).unwrap();
            assert!(close((r.angle - back.angle).abs(), PI));
        }
    }

    #[test]
    fn line_through_a_ray_is_rejected() {
        assert_eq!(sector_config(PI / 2.0), Err(Error::InadmissibleLine(PI / 2.0)));
    }

    #[test]
    fn line_avoids_rays() {
        let s = sector_config(PI / 4.0).unwrap();
        let u = canonical_coordinates();
        for rho in [-3.0, -0.5, 0.7, 2.0] {
            let z = Cx::from_polar(rho, s.ell_angle);
            for i in 0..DIM {
                for j in 0..DIM {
                    if i != j {
                        assert!((z * (u[i] - u[j])).re.abs() > 1e-6);
                    }
                }
            }
        }
    }
}
