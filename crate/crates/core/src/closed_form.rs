//! Published reference values for LG(2,4): integer matrices, the low-order
//! coefficients of the topological-enumerative series, and the closed forms
//! of `C`, `C_Gamma` and the Gamma class as polynomials in `pi`, `g` (Euler's
//! constant) and `z3` (zeta(3)).
//!
//! These are used only as comparison targets. Nothing in the pipeline reads
//! them.

use std::str::FromStr;

use crate::cohomology::DIM;
use crate::linalg::{CMatrix, Cx, QMatrix, Q};
use crate::special::Constants;
use crate::symbolic::sym;

/// `(2d)! / (d!)^5` for `d = 0..5`, as `(num, den)`.
pub const PERIOD_COEFFICIENTS: [(i64, i64); 6] =
    [(1, 1), (2, 1), (3, 4), (5, 54), (35, 6912), (7, 48000)];

pub const S_PRIME: [[i64; DIM]; DIM] =
    [[1, 4, 4, 0], [0, 1, 0, 0], [0, 5, 1, 0], [-4, -5, -11, 1]];

/// `P[i][PERM[i]] = 1`
pub const PERM: [usize; DIM] = [3, 0, 2, 1];

pub const S: [[i64; DIM]; DIM] =
    [[1, -4, -11, -5], [0, 1, 4, 4], [0, 0, 1, 5], [0, 0, 0, 1]];

pub const EULER_MATRIX: [[i64; DIM]; DIM] =
    [[1, 5, 16, 14], [0, 1, 4, 5], [0, 0, 1, 4], [0, 0, 0, 1]];

pub const EULER_MATRIX_INVERSE: [[i64; DIM]; DIM] =
    [[1, -5, 4, -5], [0, 1, -4, 11], [0, 0, 1, -4], [0, 0, 0, 1]];

pub const BRAID_WORD: &[&str] = &["b23_inverse"];
pub const BRAID_SIGNS: [i8; DIM] = [1, -1, -1, 1];

/// `Phi_1 .. Phi_7`, entries as rational strings.
pub const PHI_TOP: [[[&str; DIM]; DIM]; 7] = [
    [["0", "0", "1", "0"], ["0", "0", "0", "1"], ["0", "0", "0", "0"], ["0", "0", "0", "0"]],
    [["0", "-2", "0", "0"], ["0", "0", "0", "0"], ["0", "0", "0", "2"], ["0", "0", "0", "0"]],
    [["2", "0", "0", "1"], ["0", "-2", "0", "0"], ["0", "0", "-2", "0"], ["0", "0", "0", "2"]],
    [["0", "0", "-3/2", "0"], ["4", "0", "0", "3/2"], ["0", "0", "0", "0"], ["0", "0", "-4", "0"]],
    [["0", "3/2", "0", "0"], ["0", "0", "-7/2", "0"], ["8", "0", "0", "3/2"], ["0", "8", "0", "0"]],
    [["13/4", "0", "0", "1/2"], ["0", "33/4", "0", "0"], ["0", "0", "-17/4", "0"], ["0", "0", "0", "3/4"]],
    [["0", "0", "-19/12", "0"], ["-5/2", "0", "0", "5/12"], ["0", "25/2", "0", "0"], ["0", "0", "-5/2", "0"]],
];

pub fn phi_top_printed() -> Vec<QMatrix> {
    PHI_TOP
        .iter()
        .map(|m| QMatrix::from_fn(DIM, |i, j| Q::from_str(m[i][j]).expect("valid rational literal")))
        .collect()
}

/// Coefficients of `Gamma^-` on `(s0, s1, s2, s21)`.
pub const GAMMA_MINUS: [&str; DIM] = ["1", "3 g", "(54 g^2 + pi^2)/6", "(-4 z3 + 18 g^3 + g pi^2)/2"];

/// Graded Chern characters as printed. The `s21` entry of `Sigma^{2,1} U*`
/// reads `-32 i pi^3`; the value consistent with `C_Gamma`, with the Euler
/// matrix and with `Sigma^{2,1} U* = U* (x) O(1)` is `-12 i pi^3`.
pub const CH_PRINTED: [(&str, [&str; DIM]); 5] = [
    ("O", ["1", "0", "0", "0"]),
    ("O(1)", ["1", "2 i pi", "-4 pi^2", "-8/3 i pi^3"]),
    ("Sigma21(U*)", ["2", "6 i pi", "-16 pi^2", "-32 i pi^3"]),
    ("O(2)", ["1", "4 i pi", "-16 pi^2", "-64/3 i pi^3"]),
    ("Wedge2(U*)", ["1", "2 i pi", "-4 pi^2", "-8/3 i pi^3"]),
];

pub const CH_SIGMA21_CORRECTED: [&str; DIM] = ["2", "6 i pi", "-16 pi^2", "-12 i pi^3"];

/// Entry `(num, d)` stands for `num / (d sqrt(2) pi^{3/2})`.
pub type ClosedEntry = (&'static str, i64);

/// `C = C' P^{-1}`, row-major.
pub const C_CLOSED: [[ClosedEntry; DIM]; DIM] = [
    [("i", 2), ("i", 1), ("-i", 2), ("i", 2)],
    [("pi + 3 i g", 2), ("3 i g", 1), ("pi - 3 i g", 2), ("-3 (pi - i g)", 2)],
    [
        ("54 i g^2 + 36 g pi - 5 i pi^2", 12),
        ("i (54 g^2 + 7 pi^2)", 6),
        ("-54 i g^2 + 36 g pi + 5 i pi^2", 12),
        ("i (54 g^2 + 108 i g pi - 53 pi^2)", 12),
    ],
    [
        ("-(12 i z3 - 54 i g^3 - 54 g^2 pi + 15 i g pi^2 + pi^3)", 12),
        ("i (-4 z3 + 18 g^3 + 7 g pi^2)", 2),
        ("12 i z3 + (pi - 3 i g) (18 g^2 + 12 i g pi - pi^2)", 12),
        ("-4 i z3 + 18 i g^3 - 54 g^2 pi - 53 i g pi^2 + 17 pi^3", 4),
    ],
];

pub const C_GAMMA_CLOSED: [[ClosedEntry; DIM]; DIM] = [
    [("i", 2), ("i", 2), ("i", 1), ("i", 2)],
    [("pi + 3 i g", 2), ("-(pi - 3 i g)", 2), ("-2 pi + 3 i g", 1), ("-3 (pi - i g)", 2)],
    [
        ("54 i g^2 + 36 g pi - 5 i pi^2", 12),
        ("i (54 g^2 + 36 i g pi - 5 pi^2)", 12),
        ("i (54 g^2 + 72 i g pi - 17 pi^2)", 6),
        ("i (54 g^2 + 108 i g pi - 53 pi^2)", 12),
    ],
    [
        ("-(12 i z3 - 54 i g^3 - 54 g^2 pi + 15 i g pi^2 + pi^3)", 12),
        ("-12 i z3 + 54 i g^3 - 54 g^2 pi - 15 i g pi^2 + pi^3", 12),
        ("2 (pi^3 - 6 i z3) + 54 i g^3 - 108 g^2 pi - 51 i g pi^2", 6),
        ("-4 i z3 + 18 i g^3 - 54 g^2 pi - 53 i g pi^2 + 17 pi^3", 4),
    ],
];

pub fn evaluate_entry(entry: &ClosedEntry, k: &Constants) -> Cx {
    let den = entry.1 as f64 * 2f64.sqrt() * k.pi.powf(1.5);
    sym(entry.0).eval(k) / den
}

pub fn evaluate(entries: &[[ClosedEntry; DIM]; DIM], k: &Constants) -> CMatrix {
    CMatrix::from_fn(DIM, DIM, |i, j| evaluate_entry(&entries[i][j], k))
}
