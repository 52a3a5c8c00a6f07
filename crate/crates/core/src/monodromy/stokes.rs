//! Stokes matrix `S' = Y_R^{-1} Y_L` on the narrow sector `Pi_+`, its integer
//! snapping, and the triangularizing permutation.

use num::Zero;

use super::fundamental::FundamentalSolutions;
use crate::cohomology::DIM;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{c, max_abs_diff, permutation_matrix, solve, CMatrix, Cx};
use crate::solutions::{frobenius_coordinates, UCComplex};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StokesConfig {
    pub z0: UCComplex,
    /// Argument offsets around `z0` at which `S'` is recomputed.
    pub offsets: [f64; 3],
    pub constancy_tol: f64,
    pub snap_tol: f64,
}

impl Default for StokesConfig {
    fn default() -> Self {
        StokesConfig {
            z0: UCComplex::polar(1.0, std::f64::consts::FRAC_PI_4),
            offsets: [0.0, -0.05, 0.05],
            constancy_tol: 1e-8,
            snap_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StokesResult {
    pub points: Vec<UCComplex>,
    /// `S'` before snapping, at each point.
    pub raw: Vec<CMatrix>,
    pub constancy_spread: f64,
    /// Largest distance of a raw entry from its snapped integer.
    pub snap_deviation: f64,
    /// `max |S'(Frobenius coordinates) - S'(snapped)|`
    pub coordinate_residual: f64,
    pub s_prime: [[i64; DIM]; DIM],
    /// `perm[i] = j` means `P[i][j] = 1`.
    pub perm: [usize; DIM],
    pub s: [[i64; DIM]; DIM],
}

pub fn int_matrix(m: &[[i64; DIM]; DIM]) -> CMatrix {
    CMatrix::from_fn(DIM, DIM, |i, j| c(m[i][j] as f64, 0.0))
}

/// `Y_R(z)^{-1} Y_L(z)`
pub fn stokes_at(fs: &FundamentalSolutions, z: UCComplex) -> Result<CMatrix> {
    solve(&fs.y_right(z)?, &fs.y_left(z)?, "Y_R")
}

/// The same product across `Pi_-`: `Y_R` on the lower sheet against `Y_L`
/// one turn up, `Y_R(z e^{-2 pi i})^{-1} Y_L(z)`.
pub fn stokes_minus_at(fs: &FundamentalSolutions, z: UCComplex) -> Result<CMatrix> {
    let lower = z.rotated(-2.0 * std::f64::consts::PI);
    solve(&fs.y_right(lower)?, &fs.y_left(z)?, "Y_R")
}

/// `S'` from the Frobenius-basis coordinates of the scalar generators. The
/// vector assembly is linear and injective, so this equals `Y_R^{-1} Y_L`
/// without evaluating anything at a base point.
pub fn stokes_from_coordinates(fs: &FundamentalSolutions) -> Result<CMatrix> {
    let coords = |cols: &[crate::solutions::LogSeries; DIM]| {
        CMatrix::from_fn(DIM, DIM, |i, j| frobenius_coordinates(&cols[j])[i])
    };
    solve(&coords(&fs.right), &coords(&fs.left), "Frobenius coordinates of Y_R")
}

pub fn snap(m: &CMatrix, tol: f64) -> Result<([[i64; DIM]; DIM], f64)> {
    let mut out = [[0i64; DIM]; DIM];
    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            let x = m[(i, j)];
            let r = x.re.round();
            let dev = (x - c(r, 0.0)).norm();
            if dev > tol {
                return Err(Error::SnapFailure {
                    row: i + 1,
                    col: j + 1,
                    value: format!("{x}"),
                    tol,
                });
            }
            worst = worst.max(dev);
            out[i][j] = r as i64;
        }
    }
    Ok((out, worst))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `(P M P^{-1})_{ij} = M_{perm[i], perm[j]}`
pub fn conjugate_by_perm(m: &[[i64; DIM]; DIM], perm: &[usize; DIM]) -> [[i64; DIM]; DIM] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[perm[i]][perm[j]]))
}

/// First permutation (lexicographic) making `P M P^{-1}` upper triangular.
pub fn triangularizing_permutation(m: &[[i64; DIM]; DIM]) -> Option<[usize; DIM]> {
    permutations(DIM).into_iter().find_map(|p| {
        let perm: [usize; DIM] = p.try_into().ok()?;
        let t = conjugate_by_perm(m, &perm);
        let lower_zero = (0..DIM).all(|i| (0..i).all(|j| t[i][j] == 0));
        lower_zero.then_some(perm)
    })
}

pub fn stokes_matrix(fs: &FundamentalSolutions, cfg: &StokesConfig, exec: Exec) -> Result<StokesResult> {
    let points: Vec<UCComplex> = cfg.offsets.iter().map(|d| cfg.z0.rotated(*d)).collect();
    let raw: Vec<CMatrix> = exec
        .map(&points, |z| stokes_at(fs, *z))
        .into_iter()
        .collect::<Result<_>>()?;
    let spread = raw
        .iter()
        .skip(1)
        .map(|m| max_abs_diff(m, &raw[0]))
        .fold(0.0, f64::max);
    if spread > cfg.constancy_tol {
        return Err(Error::NotConstant {
            what: "S'",
            spread,
            tol: cfg.constancy_tol,
        });
    }
    let (s_prime, snap_deviation) = snap(&raw[0], cfg.snap_tol)?;
    let perm = triangularizing_permutation(&s_prime)
        .ok_or(Error::Singular("no permutation triangularizes S'"))?;
    let s = conjugate_by_perm(&s_prime, &perm);
    let coordinate_residual = max_abs_diff(&stokes_from_coordinates(fs)?, &int_matrix(&s_prime));
    Ok(StokesResult {
        coordinate_residual,
        points,
        raw,
        constancy_spread: spread,
        snap_deviation,
        s_prime,
        perm,
        s,
    })
}

impl StokesResult {
    pub fn p_matrix(&self) -> CMatrix {
        permutation_matrix(&self.perm)
    }

    pub fn is_unipotent_upper(&self) -> bool {
        (0..DIM).all(|i| self.s[i][i] == 1 && (0..i).all(|j| self.s[i][j].is_zero()))
    }
}

/// `max |Y_R(z e^{-2 pi i})^{-1} Y_L(z) - S'^T|` over the given points.
pub fn minus_sector_residual(
    fs: &FundamentalSolutions,
    s_prime: &[[i64; DIM]; DIM],
    points: &[UCComplex],
) -> Result<f64> {
    let target = int_matrix(s_prime).transpose();
    let mut worst: f64 = 0.0;
    for z in points {
        let m = stokes_minus_at(fs, *z)?;
        worst = worst.max(max_abs_diff(&m, &target));
    }
    Ok(worst)
}

pub fn diag_is_one(m: &CMatrix, tol: f64) -> bool {
    (0..m.nrows()).all(|i| (m[(i, i)] - Cx::new(1.0, 0.0)).norm() < tol)
}
