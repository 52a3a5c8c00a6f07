//! Braid-group and sign action on pairs `(S, C)`, and an exhaustive search
//! for a word and sign diagonal carrying one pair to another.

use std::fmt;

use crate::error::Result;
use crate::exec::Exec;
use crate::linalg::{c, inverse, max_abs_diff, CMatrix, Cx};

/// Generator `beta_{i,i+1}` (`index = i`, from 1) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn name(&self) -> String {
        let base = format!("b{}{}", self.index, self.index + 1);
        if self.inverse {
            base + "_inverse"
        } else {
            base
        }
    }

    /// All letters for `n x n` matrices, in search order.
    pub fn alphabet(n: usize) -> Vec<Letter> {
        (1..n)
            .flat_map(|index| {
                [false, true].map(|inverse| Letter { index, inverse })
            })
            .collect()
    }
}

/// Letters are applied in list order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidWord {
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BraidWord { letters }
    }

    pub fn names(&self) -> Vec<String> {
        self.letters.iter().map(Letter::name).collect()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "identity");
        }
        write!(f, "{}", self.names().join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDiagonal {
    pub signs: Vec<i8>,
}

impl SignDiagonal {
    pub fn identity(n: usize) -> Self {
        SignDiagonal { signs: vec![1; n] }
    }

    /// Pattern number `k`: bit `j` set means `signs[j] = -1`, first entry is the
    /// highest bit so that the numbering is lexicographic.
    pub fn from_index(n: usize, k: usize) -> Self {
        SignDiagonal {
            signs: (0..n)
                .map(|j| if k >> (n - 1 - j) & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn matrix(&self) -> CMatrix {
        let n = self.signs.len();
        CMatrix::from_fn(n, n, |i, j| if i == j { c(self.signs[i] as f64, 0.0) } else { Cx::new(0.0, 0.0) })
    }

    /// `(J S J, C J)`
    pub fn apply(&self, s: &CMatrix, cm: &CMatrix) -> (CMatrix, CMatrix) {
        let j = self.matrix();
        (&j * s * &j, cm * &j)
    }
}

fn k_matrix(s: &CMatrix, letter: Letter) -> CMatrix {
    let n = s.nrows();
    let i = letter.index - 1;
    let sij = s[(i, i + 1)];
    let mut k = CMatrix::identity(n, n);
    k[(i, i + 1)] = c(1.0, 0.0);
    k[(i + 1, i)] = c(1.0, 0.0);
    if letter.inverse {
        k[(i, i)] = -sij;
        k[(i + 1, i + 1)] = c(0.0, 0.0);
    } else {
        k[(i, i)] = c(0.0, 0.0);
        k[(i + 1, i + 1)] = -sij;
    }
    k
}

/// One elementary step: `S -> K S K`, `C -> C K^{-1}`.
pub fn apply_letter(letter: Letter, s: &CMatrix, cm: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let k = k_matrix(s, letter);
    let k_inv = inverse(&k, "braid K-matrix")?;
    Ok((&k * s * &k, cm * k_inv))
}

pub fn braid_act(word: &BraidWord, s: &CMatrix, cm: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let mut pair = (s.clone(), cm.clone());
    for letter in &word.letters {
        pair = apply_letter(*letter, &pair.0, &pair.1)?;
    }
    Ok(pair)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BraidMatch {
    pub word: BraidWord,
    pub signs: SignDiagonal,
    pub s_deviation: f64,
    pub c_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub found: Option<BraidMatch>,
    pub candidates: usize,
}

/// All words of length `<= max_len`, shortest first, then lexicographic.
pub fn words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let alphabet = Letter::alphabet(n);
    let mut out = vec![BraidWord::default()];
    let mut layer = vec![BraidWord::default()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for l in &alphabet {
                let mut letters = w.letters.clone();
                letters.push(*l);
                next.push(BraidWord::new(letters));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Searches words of length `<= max_len` combined with all sign diagonals
/// for `J beta(S) J = S_target` and `beta(C) J = C_target` within `tol`.
/// Sign patterns are processed in parallel; the match that comes first in
/// (word order, sign order) is returned.
pub fn search_equivalence(
    s: &CMatrix,
    cm: &CMatrix,
    s_target: &CMatrix,
    c_target: &CMatrix,
    max_len: usize,
    tol: f64,
    exec: Exec,
) -> Result<SearchOutcome> {
    let n = s.nrows();
    let all_words = words(n, max_len);
    let acted: Vec<(CMatrix, CMatrix)> = all_words
        .iter()
        .map(|w| braid_act(w, s, cm))
        .collect::<Result<_>>()?;
    let patterns = 1usize << n;
    let per_sign: Vec<Option<(usize, BraidMatch)>> = exec.map_range(patterns, |k| {
        let signs = SignDiagonal::from_index(n, k);
        acted.iter().enumerate().find_map(|(wi, (bs, bc))| {
            let (js, jc) = signs.apply(bs, bc);
            let s_dev = max_abs_diff(&js, s_target);
            let c_dev = max_abs_diff(&jc, c_target);
            (s_dev <= tol && c_dev <= tol).then(|| {
                (
                    wi,
                    BraidMatch {
                        word: all_words[wi].clone(),
                        signs: signs.clone(),
                        s_deviation: s_dev,
                        c_deviation: c_dev,
                    },
                )
            })
        })
    });
    let found = per_sign
        .into_iter()
        .enumerate()
        .filter_map(|(k, m)| m.map(|(wi, bm)| ((wi, k), bm)))
        .min_by_key(|(key, _)| *key)
        .map(|(_, bm)| bm);
    Ok(SearchOutcome {
        found,
        candidates: all_words.len() * patterns,
    })
}
