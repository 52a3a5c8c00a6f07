//! Chern data, Todd and Gamma classes, Chern characters of the exceptional
//! collection, the Euler matrix via Hirzebruch-Riemann-Roch, and the matrix
//! whose columns are the Gamma-twisted graded Chern characters.

use std::f64::consts::PI;

use num::ToPrimitive;

use crate::cohomology::{classical_exp, classical_product, first_chern, CohClass, Scalar, DIM};
use crate::error::{Error, Result};
use crate::linalg::{q, qi, CMatrix, Cx, QMatrix, Q};
use crate::special::{constants, Constants};
use crate::symbolic::SymPoly;

fn inverse_factorials<T: Scalar>(from_q: impl Fn(Q) -> T) -> [T; DIM] {
    [qi(1), qi(1), q(1, 2), q(1, 6)].map(from_q)
}

fn h<T: Scalar>() -> CohClass<T> {
    CohClass::basis(1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChernData {
    pub c1: CohClass<Q>,
    pub c2: CohClass<Q>,
    pub c3: CohClass<Q>,
    pub p1: CohClass<Q>,
    pub p2: CohClass<Q>,
    pub p3: CohClass<Q>,
}

/// Total Chern class `(1 + h)^5 / (1 + 2h)` of the quadric threefold.
pub fn total_chern_class() -> CohClass<Q> {
    let one = CohClass::<Q>::unit();
    let one_plus_h = one.clone() + h();
    let mut num = one.clone();
    for _ in 0..5 {
        num = classical_product(&num, &one_plus_h);
    }
    // (1 + 2h)^{-1} = sum_k (-2h)^k, nilpotent past degree 3
    let minus_2h = h::<Q>().scale(&qi(-2));
    let mut inv = one.clone();
    let mut pow = one;
    for _ in 0..3 {
        pow = classical_product(&pow, &minus_2h);
        inv = inv + pow.clone();
    }
    classical_product(&num, &inv)
}

pub fn chern_data() -> ChernData {
    let c = total_chern_class();
    let (c1, c2, c3) = (c.degree_part(1), c.degree_part(2), c.degree_part(3));
    let cp = |a: &CohClass<Q>, b: &CohClass<Q>| classical_product(a, b);
    let p1 = c1.clone();
    let p2 = cp(&c1, &c1) - c2.scale(&qi(2));
    let p3 = cp(&cp(&c1, &c1), &c1) - cp(&c1, &c2).scale(&qi(3)) + c3.scale(&qi(3));
    ChernData {
        c1,
        c2,
        c3,
        p1,
        p2,
        p3,
    }
}

/// `Td = exp(p1/2 - p2/24)` through degree 3 (the cubic term of
/// `log(x / (1 - e^{-x}))` vanishes).
pub fn todd_class(ch: &ChernData) -> CohClass<Q> {
    let log_td = ch.p1.scale(&q(1, 2)) - ch.p2.scale(&q(1, 24));
    classical_exp(&log_td, &inverse_factorials(|x| x))
}

/// Sign of the Gamma class: `Plus` is `prod Gamma(1 + delta)`, `Minus` is
/// `prod Gamma(1 - delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaSign {
    Plus,
    Minus,
}

fn sym_class(c: &CohClass<Q>) -> CohClass<SymPoly> {
    c.map(|x| SymPoly::rational(x.clone()))
}

/// `exp(-+ g p1 + z2 p2 / 2 -+ z3 p3 / 3)`, with `g`, `pi`, `z3` symbolic.
pub fn gamma_class(sign: GammaSign) -> CohClass<SymPoly> {
    let ch = chern_data();
    let s = match sign {
        GammaSign::Plus => -1,
        GammaSign::Minus => 1,
    };
    let exponent = sym_class(&ch.p1).scale(&(SymPoly::euler_gamma() * SymPoly::int(s)))
        + sym_class(&ch.p2).scale(&SymPoly::zeta2().scale_q(&q(1, 2)))
        + sym_class(&ch.p3).scale(&SymPoly::zeta3().scale_q(&q(s, 3)));
    classical_exp(&exponent, &inverse_factorials(SymPoly::rational))
}

/// Objects of the collection `(O, O(1), Sigma^{2,1} U*, O(2))`, the bundle
/// `wedge^2 U* = O(1)`, and their twists `E_k = F_k (x) wedge^2 U*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KObject {
    O,
    O1,
    Sigma21,
    O2,
    Wedge2,
    /// `U*`, the dual tautological bundle.
    UDual,
    Tensor(Box<KObject>, Box<KObject>),
}

impl KObject {
    pub fn twisted(k: usize) -> KObject {
        let base = [KObject::O, KObject::O1, KObject::Sigma21, KObject::O2];
        KObject::Tensor(Box::new(base[k].clone()), Box::new(KObject::Wedge2))
    }

    pub fn name(&self) -> String {
        match self {
            KObject::O => "O".into(),
            KObject::O1 => "O(1)".into(),
            KObject::Sigma21 => "Sigma^{2,1}U*".into(),
            KObject::O2 => "O(2)".into(),
            KObject::Wedge2 => "wedge^2 U*".into(),
            KObject::UDual => "U*".into(),
            KObject::Tensor(a, b) => format!("{} (x) {}", a.name(), b.name()),
        }
    }

    /// Classical Chern character (no `2 pi i` scaling).
    pub fn ch_plain(&self) -> CohClass<Q> {
        let line = |k: i64| classical_exp(&h::<Q>().scale(&qi(k)), &inverse_factorials(|x| x));
        match self {
            KObject::O => CohClass::unit(),
            KObject::O1 | KObject::Wedge2 => line(1),
            KObject::O2 => line(2),
            // rank 2, c1 = s1, c2 = s2: ch = 2 + c1 + (c1^2 - 2c2)/2 + (c1^3 - 3 c1 c2)/6
            KObject::UDual => CohClass::new([qi(2), qi(1), qi(0), q(-1, 6)]),
            // Sigma^{2,1} U* = U* (x) det U*
            KObject::Sigma21 => classical_product(&KObject::UDual.ch_plain(), &line(1)),
            KObject::Tensor(a, b) => classical_product(&a.ch_plain(), &b.ch_plain()),
        }
    }

    /// `Ch(V) = sum_j e^{2 pi i tau_j}`: degree-`d` part scaled by `(2 pi i)^d`.
    pub fn ch_graded(&self) -> CohClass<SymPoly> {
        let plain = self.ch_plain();
        let two_pi_i = SymPoly::pi() * SymPoly::i().scale_q(&qi(2));
        CohClass::new(std::array::from_fn(|a| {
            SymPoly::rational(plain.coeffs[a].clone()) * two_pi_i.pow(crate::cohomology::DEGREES[a])
        }))
    }
}

pub fn collection() -> [KObject; DIM] {
    std::array::from_fn(KObject::twisted)
}

/// `chi(E, F) = int ch(E)^dual ch(F) Td`
pub fn euler_pairing(e: &KObject, f: &KObject, td: &CohClass<Q>) -> Q {
    classical_product(&classical_product(&e.ch_plain().dual(), &f.ch_plain()), td).integral()
}

pub fn euler_matrix_exact() -> QMatrix {
    let td = todd_class(&chern_data());
    let objs = collection();
    QMatrix::from_fn(DIM, |j, k| euler_pairing(&objs[j], &objs[k], &td))
}

pub fn euler_matrix() -> Result<[[i64; DIM]; DIM]> {
    let m = euler_matrix_exact();
    let mut out = [[0; DIM]; DIM];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let v = &m[(i, j)];
            if !v.is_integer() {
                return Err(Error::NonIntegralEuler {
                    row: i + 1,
                    col: j + 1,
                    value: v.to_string(),
                });
            }
            *x = v.to_integer().to_i64().expect("small Euler pairing");
        }
    }
    Ok(out)
}

/// Symbolic column numerators `Gamma^- exp(-pi i c1) Ch(E_k)`; the columns of
/// `C_Gamma` are these times `i / (2 pi)^{3/2}`.
pub fn c_gamma_numerators() -> [CohClass<SymPoly>; DIM] {
    let gamma = gamma_class(GammaSign::Minus);
    let minus_pi_i = SymPoly::pi() * SymPoly::i().scale_q(&qi(-1));
    let twist = classical_exp(
        &first_chern::<SymPoly>().scale(&minus_pi_i),
        &inverse_factorials(SymPoly::rational),
    );
    let base = classical_product(&gamma, &twist);
    collection().map(|e| classical_product(&base, &e.ch_graded()))
}

/// `i^{D bar} / (2 pi)^{D/2}` with `D = 3`, `D bar = 1`.
pub fn c_gamma_prefactor() -> Cx {
    Cx::new(0.0, 1.0) / (2.0 * PI).powf(1.5)
}

pub fn c_gamma_matrix_with(k: &Constants) -> CMatrix {
    let cols = c_gamma_numerators();
    let pre = c_gamma_prefactor();
    CMatrix::from_fn(DIM, DIM, |a, j| pre * cols[j].coeffs[a].eval(k))
}

pub fn c_gamma_matrix() -> CMatrix {
    c_gamma_matrix_with(&constants())
}

/// `Gamma^+ Gamma^-` in degree `<= 3` should be `exp(z2 p2)`.
pub fn gamma_product_check() -> bool {
    let prod = classical_product(&gamma_class(GammaSign::Plus), &gamma_class(GammaSign::Minus));
    let ch = chern_data();
    let expected = classical_exp(
        &sym_class(&ch.p2).scale(&SymPoly::zeta2()),
        &inverse_factorials(SymPoly::rational),
    );
    prod == expected
}

impl ChernData {
    pub fn euler_characteristic(&self) -> Q {
        self.c3.integral()
    }
}

pub fn is_unipotent_upper(m: &[[i64; DIM]; DIM]) -> bool {
    (0..DIM).all(|i| m[i][i] == 1 && (0..i).all(|j| m[i][j] == 0))
}
