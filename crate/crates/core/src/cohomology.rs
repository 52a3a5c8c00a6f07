//! Small quantum cohomology of LG(2,4) in the Schubert basis
//! `(s0, s1, s2, s21)`, its Poincare pairing, and the operators
//! `mu`, `R` and `U = c1 *` at a chosen value of `q`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::linalg::{c, qi, CMatrix, Cx, QMatrix, Q};
use crate::symbolic::SymPoly;

pub const DIM: usize = 4;
pub const BASIS_NAMES: [&str; DIM] = ["s0", "s1", "s2", "s21"];
/// Half the cohomological degree of each basis class.
pub const DEGREES: [u32; DIM] = [0, 1, 2, 3];

/// Coefficient rings used for cohomology classes.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
}

impl Scalar for Q {
    fn from_int(n: i64) -> Self {
        qi(n)
    }
}

impl Scalar for Cx {
    fn from_int(n: i64) -> Self {
        c(n as f64, 0.0)
    }
}

impl Scalar for SymPoly {
    fn from_int(n: i64) -> Self {
        SymPoly::int(n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohClass<T> {
    pub coeffs: [T; DIM],
}

impl<T: Scalar> CohClass<T> {
    pub fn new(coeffs: [T; DIM]) -> Self {
        CohClass { coeffs }
    }

    pub fn zero() -> Self {
        CohClass {
            coeffs: std::array::from_fn(|_| T::zero()),
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut out = Self::zero();
        out.coeffs[i] = T::one();
        out
    }

    pub fn unit() -> Self {
        Self::basis(0)
    }

    pub fn scale(&self, s: &T) -> Self {
        CohClass {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() * s.clone()),
        }
    }

    /// Part of (half) degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        CohClass {
            coeffs: std::array::from_fn(|i| {
                if DEGREES[i] == d {
                    self.coeffs[i].clone()
                } else {
                    T::zero()
                }
            }),
        }
    }

    /// Integral over the fundamental class: the top coefficient.
    pub fn integral(&self) -> T {
        self.coeffs[DIM - 1].clone()
    }

    /// Dual class: degree-`d` part multiplied by `(-1)^d`.
    pub fn dual(&self) -> Self {
        CohClass {
            coeffs: std::array::from_fn(|i| {
                if DEGREES[i] % 2 == 1 {
                    -self.coeffs[i].clone()
                } else {
                    self.coeffs[i].clone()
                }
            }),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> CohClass<U> {
        CohClass {
            coeffs: std::array::from_fn(|i| f(&self.coeffs[i])),
        }
    }
}

impl<T: Scalar> Add for CohClass<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        CohClass {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()),
        }
    }
}

impl<T: Scalar> Sub for CohClass<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        CohClass {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()),
        }
    }
}

/// `coeff * q^power * s_target`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub power: u32,
    pub target: usize,
}

/// Structure constants of the quantum and classical products and the pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct RingTables {
    pub eta: [[i64; DIM]; DIM],
    /// `quantum[a][b]` lists the terms of `s_a * s_b`.
    pub quantum: [[Vec<Term>; DIM]; DIM],
    pub classical: [[Vec<Term>; DIM]; DIM],
}

const fn t(coeff: i64, power: u32, target: usize) -> Term {
    Term {
        coeff,
        power,
        target,
    }
}

impl RingTables {
    pub fn new() -> Self {
        let mut quantum: [[Vec<Term>; DIM]; DIM] = Default::default();
        for (i, row) in quantum.iter_mut().enumerate() {
            row[0] = vec![t(1, 0, i)];
        }
        for j in 0..DIM {
            quantum[0][j] = vec![t(1, 0, j)];
        }
        let upper = [
            (1, 1, vec![t(2, 0, 2)]),
            (1, 2, vec![t(1, 1, 0), t(1, 0, 3)]),
            (1, 3, vec![t(1, 1, 1)]),
            (2, 2, vec![t(1, 1, 1)]),
            (2, 3, vec![t(1, 1, 2)]),
            (3, 3, vec![t(1, 2, 0)]),
        ];
        for (a, b, terms) in upper {
            quantum[a][b] = terms.clone();
            quantum[b][a] = terms;
        }
        let classical = quantum.clone().map(|row| {
            row.map(|terms| terms.into_iter().filter(|t| t.power == 0).collect())
        });
        let mut eta = [[0; DIM]; DIM];
        for (i, row) in eta.iter_mut().enumerate() {
            row[DIM - 1 - i] = 1;
        }
        RingTables {
            eta,
            quantum,
            classical,
        }
    }
}

impl Default for RingTables {
    fn default() -> Self {
        Self::new()
    }
}

fn tables() -> &'static RingTables {
    use std::sync::OnceLock;
    static TABLES: OnceLock<RingTables> = OnceLock::new();
    TABLES.get_or_init(RingTables::new)
}

fn product_with<T: Scalar>(
    table: &[[Vec<Term>; DIM]; DIM],
    a: &CohClass<T>,
    b: &CohClass<T>,
    q: &T,
) -> CohClass<T> {
    let mut out = CohClass::<T>::zero();
    for i in 0..DIM {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..DIM {
            if b.coeffs[j].is_zero() {
                continue;
            }
            let ab = a.coeffs[i].clone() * b.coeffs[j].clone();
            for term in &table[i][j] {
                let mut w = T::from_int(term.coeff);
                for _ in 0..term.power {
                    w = w * q.clone();
                }
                out.coeffs[term.target] = out.coeffs[term.target].clone() + w * ab.clone();
            }
        }
    }
    out
}

pub fn quantum_product<T: Scalar>(a: &CohClass<T>, b: &CohClass<T>, q: &T) -> CohClass<T> {
    product_with(&tables().quantum, a, b, q)
}

pub fn classical_product<T: Scalar>(a: &CohClass<T>, b: &CohClass<T>) -> CohClass<T> {
    product_with(&tables().classical, a, b, &T::zero())
}

/// Classical exponential `exp(x)` for `x` of positive degree (nilpotent).
pub fn classical_exp<T: Scalar>(x: &CohClass<T>, inverse_factorials: &[T; DIM]) -> CohClass<T> {
    let mut out = CohClass::unit();
    let mut power = CohClass::unit();
    for inv in inverse_factorials.iter().skip(1) {
        power = classical_product(&power, x);
        out = out + power.scale(inv);
    }
    out
}

pub fn pairing<T: Scalar>(a: &CohClass<T>, b: &CohClass<T>) -> T {
    let eta = &tables().eta;
    let mut acc = T::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            if eta[i][j] != 0 {
                acc = acc + T::from_int(eta[i][j]) * a.coeffs[i].clone() * b.coeffs[j].clone();
            }
        }
    }
    acc
}

/// First Chern class `c1 = 3 s1`.
pub fn first_chern<T: Scalar>() -> CohClass<T> {
    CohClass::basis(1).scale(&T::from_int(3))
}

/// Matrix of `x -> m(v, x)`: column `j` holds the coordinates of `m(v, e_j)`.
fn multiplication_matrix<T: Scalar>(
    mul: impl Fn(&CohClass<T>, &CohClass<T>) -> CohClass<T>,
    v: &CohClass<T>,
) -> [[T; DIM]; DIM] {
    let cols: Vec<CohClass<T>> = (0..DIM).map(|j| mul(v, &CohClass::basis(j))).collect();
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j].coeffs[i].clone()))
}

/// `(mu, R, U)` with exact rational entries.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrices<M> {
    pub mu: M,
    pub r: M,
    pub u: M,
}

pub fn mu_diagonal() -> [Q; DIM] {
    std::array::from_fn(|i| Q::new((2 * i as i64 - 3).into(), 2.into()))
}

pub fn operator_matrices_exact(q: &Q) -> OperatorMatrices<QMatrix> {
    let c1 = first_chern::<Q>();
    let r = multiplication_matrix(classical_product, &c1);
    let u = multiplication_matrix(|a, b| quantum_product(a, b, q), &c1);
    let mu = mu_diagonal();
    OperatorMatrices {
        mu: QMatrix::from_fn(DIM, |i, j| if i == j { mu[i].clone() } else { Q::zero() }),
        r: QMatrix::from_fn(DIM, |i, j| r[i][j].clone()),
        u: QMatrix::from_fn(DIM, |i, j| u[i][j].clone()),
    }
}

pub fn operator_matrices(q: Cx) -> OperatorMatrices<CMatrix> {
    let c1 = first_chern::<Cx>();
    let r = multiplication_matrix(classical_product, &c1);
    let u = multiplication_matrix(|a, b| quantum_product(a, b, &q), &c1);
    let mu: Vec<Cx> = (0..DIM).map(|i| c(i as f64 - 1.5, 0.0)).collect();
    OperatorMatrices {
        mu: crate::linalg::diag(&mu),
        r: CMatrix::from_fn(DIM, DIM, |i, j| r[i][j]),
        u: CMatrix::from_fn(DIM, DIM, |i, j| u[i][j]),
    }
}

/// Pairing matrix `eta` as a rational matrix.
pub fn eta_exact() -> QMatrix {
    QMatrix::from_fn(DIM, |i, j| qi(tables().eta[i][j]))
}

pub fn eta() -> CMatrix {
    eta_exact().to_cmatrix()
}

// Ring presentation: Q[q][x1, x2] / (x1^2 - 2 x2, x2^2 - q x1), reduced to the
// monomials 1, x1, x2, x1 x2. Keys are (deg x1, deg x2, deg q).
type PresPoly = BTreeMap<(u32, u32, u32), Q>;

fn pres_add(p: &mut PresPoly, key: (u32, u32, u32), v: Q) {
    let e = p.entry(key).or_insert_with(Q::zero);
    *e += v;
    if e.is_zero() {
        p.remove(&key);
    }
}

fn pres_reduce(p: PresPoly) -> PresPoly {
    let mut work = p;
    loop {
        let Some((&key, _)) = work.iter().find(|((i, j, _), _)| *i >= 2 || *j >= 2) else {
            return work;
        };
        let v = work.remove(&key).unwrap();
        let (i, j, k) = key;
        if i >= 2 {
            pres_add(&mut work, (i - 2, j + 1, k), v * qi(2));
        } else {
            pres_add(&mut work, (i + 1, j - 2, k + 1), v);
        }
    }
}

fn pres_mul(a: &PresPoly, b: &PresPoly) -> PresPoly {
    let mut out = PresPoly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            pres_add(&mut out, (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2), va * vb);
        }
    }
    pres_reduce(out)
}

/// Image of `s_i` under `s1 -> x1, s2 -> x1^2/2, s21 -> x1^3/2 - q`.
fn presentation_image(i: usize) -> PresPoly {
    let mut p = PresPoly::new();
    match i {
        0 => pres_add(&mut p, (0, 0, 0), Q::one()),
        1 => pres_add(&mut p, (1, 0, 0), Q::one()),
        2 => pres_add(&mut p, (2, 0, 0), Q::new(1.into(), 2.into())),
        _ => {
            pres_add(&mut p, (3, 0, 0), Q::new(1.into(), 2.into()));
            pres_add(&mut p, (0, 0, 1), -Q::one());
        }
    }
    pres_reduce(p)
}

/// Number of table entries whose image in the presentation ring disagrees
/// with the product of the images (zero when the presentation holds).
pub fn presentation_mismatches() -> usize {
    let tables = tables();
    let mut bad = 0;
    for a in 0..DIM {
        for b in 0..DIM {
            let lhs = pres_mul(&presentation_image(a), &presentation_image(b));
            let mut rhs = PresPoly::new();
            for term in &tables.quantum[a][b] {
                for (k, v) in presentation_image(term.target) {
                    pres_add(&mut rhs, (k.0, k.1, k.2 + term.power), v * qi(term.coeff));
                }
            }
            if lhs != pres_reduce(rhs) {
                bad += 1;
            }
        }
    }
    bad
}
