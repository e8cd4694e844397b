//! Nil objects `(M, f)` over a product of copies of the base ring: `M` is a
//! direct sum of free modules, one per unit, and `f` is a family of matrices
//! indexed by letters, each letter being a rank-one bimodule generator from
//! one unit to another.
//!
//! Words compose left to right: `f_{i_1 ... i_p}` applies `f_{i_1}` first, so
//! its matrix is `F_{i_p} ... F_{i_1}`. Since distinct words are independent
//! basis elements of the tensor powers of `S`, `f^k = 0` iff `f_u = 0` for every
//! word of length `k`.
//!
//! Nilpotency is decided through the chain `M_i = ker f^i`, computed as
//! `M_{i+1} = {v : f_l(v) in M_i for every letter l}` over the fraction field.
//! The chain grows strictly until it stabilizes, so it stabilizes after at
//! most `dim M` steps, and `f` is nilpotent iff it reaches `M`; kernels of
//! integer matrices are pure, so working over the fraction field loses nothing.

mod functor;
mod graded;
pub mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::linalg::Matrix;
use num_traits::Zero;

use crate::scalar::Scalar;

pub use graded::GradedCarrier;
pub use functor::{direct_sum, phi1, phi2, phi2_bounded, phi_word, WordSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown unit `{0}`")]
    UnknownUnit(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("object is not nilpotent")]
    NotNilpotent,
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRing {
    units: Vec<String>,
    letters: Vec<Letter>,
}

impl BlockRing {
    pub fn new(units: Vec<String>, letters: Vec<Letter>) -> Result<Self, NilError> {
        let mut seen = std::collections::BTreeSet::new();
        if !units.iter().all(|u| seen.insert(u)) {
            return Err(NilError::InvalidData("unit labels must be distinct".into()));
        }
        let mut names = std::collections::BTreeSet::new();
        for l in &letters {
            if l.src >= units.len() || l.dst >= units.len() {
                return Err(NilError::UnknownUnit(format!("{} / {}", l.src, l.dst)));
            }
            if !names.insert(&l.name) {
                return Err(NilError::InvalidData(format!("duplicate letter `{}`", l.name)));
            }
        }
        Ok(BlockRing { units, letters })
    }

    /// Convenience constructor from `(name, src label, dst label)` triples.
    pub fn with_letters(units: &[&str], letters: &[(&str, &str, &str)]) -> Result<Self, NilError> {
        let units: Vec<String> = units.iter().map(|s| s.to_string()).collect();
        let unit = |s: &str| units.iter().position(|u| u == s).ok_or_else(|| NilError::UnknownUnit(s.into()));
        let letters = letters
            .iter()
            .map(|&(n, s, d)| Ok(Letter { name: n.into(), src: unit(s)?, dst: unit(d)? }))
            .collect::<Result<Vec<_>, NilError>>()?;
        BlockRing::new(units, letters)
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn unit_index(&self, label: &str) -> Option<usize> {
        self.units.iter().position(|u| u == label)
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l.name == name)
    }
}

/// Kernel chain `0 = M_0 ⊂ M_1 ⊂ ...`, each level a basis of column vectors
/// in the total space over the fraction field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration<F> {
    pub levels: Vec<Vec<Vec<F>>>,
}

impl<F> Filtration<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nilpotency<F> {
    pub nilpotent: bool,
    /// Least `k` with `f^k = 0`.
    pub index: Option<usize>,
    pub filtration: Filtration<F>,
}

/// Immutable; the nilpotency certificate is computed once on demand.
#[derive(Clone)]
pub struct NilObject<S: Scalar> {
    ring: BlockRing,
    dims: Vec<usize>,
    mats: Vec<Matrix<S>>,
    cert: OnceLock<Nilpotency<S::Fraction>>,
}

impl<S: Scalar> PartialEq for NilObject<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.dims == other.dims && self.mats == other.mats
    }
}

impl<S: Scalar> Eq for NilObject<S> {}

impl<S: Scalar> NilObject<S> {
    /// Checks that each letter matrix has shape `dims[dst] x dims[src]`.
    pub fn new(ring: BlockRing, dims: Vec<usize>, mats: Vec<Matrix<S>>) -> Result<Self, NilError> {
        if dims.len() != ring.units.len() {
            return Err(NilError::ShapeMismatch(format!("{} dims for {} units", dims.len(), ring.units.len())));
        }
        if mats.len() != ring.letters.len() {
            return Err(NilError::ShapeMismatch(format!("{} matrices for {} letters", mats.len(), ring.letters.len())));
        }
        for (l, m) in ring.letters.iter().zip(&mats) {
            if m.rows() != dims[l.dst] || m.cols() != dims[l.src] {
                return Err(NilError::ShapeMismatch(format!(
                    "letter `{}` needs {}x{}, got {}x{}",
                    l.name,
                    dims[l.dst],
                    dims[l.src],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(NilObject { ring, dims, mats, cert: OnceLock::new() })
    }

    /// The object with every letter acting by zero.
    pub fn zero(ring: BlockRing, dims: Vec<usize>) -> Result<Self, NilError> {
        let mats = ring.letters.iter().map(|l| Matrix::zeros(dims[l.dst], dims[l.src])).collect();
        NilObject::new(ring, dims, mats)
    }

    pub fn ring(&self) -> &BlockRing {
        &self.ring
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn letter_matrix(&self, name: &str) -> Option<&Matrix<S>> {
        self.ring.letter_index(name).map(|i| &self.mats[i])
    }

    pub fn matrices(&self) -> &[Matrix<S>] {
        &self.mats
    }

    pub fn offsets(&self) -> Vec<usize> {
        self.dims
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect()
    }

    /// Letter `i` as an endomorphism of the total space.
    pub fn total_letter(&self, i: usize) -> Matrix<S> {
        let d = self.total_dim();
        let off = self.offsets();
        let l = &self.ring.letters[i];
        let mut m = Matrix::zeros(d, d);
        m.set_block(off[l.dst], off[l.src], &self.mats[i]);
        m
    }

    /// Composite of the letters of `word` (indices), as an endomorphism of
    /// the total space; identity for the empty word, zero when consecutive
    /// letters do not match up.
    pub fn word_matrix(&self, word: &[usize]) -> Result<Matrix<S>, NilError> {
        let mut m = Matrix::identity(self.total_dim());
        for &i in word {
            if i >= self.mats.len() {
                return Err(NilError::UnknownLetter(format!("#{i}")));
            }
            m = self.total_letter(i).mul(&m);
        }
        Ok(m)
    }

    pub fn word_matrix_named(&self, word: &[&str]) -> Result<Matrix<S>, NilError> {
        let idx = word
            .iter()
            .map(|n| self.ring.letter_index(n).ok_or_else(|| NilError::UnknownLetter(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.word_matrix(&idx)
    }

    /// The block of a word composite from its first letter's source unit to
    /// its last letter's destination unit.
    pub fn word_block(&self, word: &[usize]) -> Result<Matrix<S>, NilError> {
        let (first, last) = match (word.first(), word.last()) {
            (Some(&f), Some(&l)) => (&self.ring.letters[f], &self.ring.letters[l]),
            _ => return Err(NilError::InvalidData("empty word has no block".into())),
        };
        let off = self.offsets();
        Ok(self.word_matrix(word)?.block(off[last.dst], off[first.src], self.dims[last.dst], self.dims[first.src]))
    }

    pub fn is_nilpotent(&self) -> &Nilpotency<S::Fraction> {
        self.cert.get_or_init(|| self.compute_nilpotency())
    }

    fn compute_nilpotency(&self) -> Nilpotency<S::Fraction> {
        let d = self.total_dim();
        let letters: Vec<Matrix<S::Fraction>> =
            (0..self.mats.len()).map(|i| self.total_letter(i).to_fraction()).collect();
        let mut levels: Vec<Vec<Vec<S::Fraction>>> = vec![vec![]];
        loop {
            let cur = levels.last().expect("nonempty");
            if cur.len() == d {
                let index = levels.len() - 1;
                return Nilpotency { nilpotent: true, index: Some(index), filtration: Filtration { levels } };
            }
            let p = Matrix::annihilator(d, cur);
            let stacked: Vec<Matrix<S::Fraction>> = letters.iter().map(|l| p.mul(l)).collect();
            let next = if stacked.is_empty() {
                Matrix::<S::Fraction>::identity(d).to_rows()
            } else {
                Matrix::vstack(d, &stacked).kernel()
            };
            if next.len() == cur.len() {
                return Nilpotency { nilpotent: false, index: None, filtration: Filtration { levels } };
            }
            levels.push(next);
        }
    }

    /// `v in M_{i+1}` iff every `f_l(v)` lies in `M_i`, for each computed level.
    pub fn check_filtration(&self, filt: &Filtration<S::Fraction>) -> bool {
        let d = self.total_dim();
        let letters: Vec<Matrix<S::Fraction>> =
            (0..self.mats.len()).map(|i| self.total_letter(i).to_fraction()).collect();
        if filt.levels.first().map_or(true, |l| !l.is_empty()) {
            return false;
        }
        filt.levels.windows(2).all(|w| {
            let p = Matrix::annihilator(d, &w[0]);
            let expected = if letters.is_empty() {
                d
            } else {
                let stacked: Vec<_> = letters.iter().map(|l| p.mul(l)).collect();
                d - Matrix::vstack(d, &stacked).rank()
            };
            let contained = w[1].iter().all(|v| letters.iter().all(|l| p.apply(&l.apply(v)).iter().all(|x| x.is_zero())));
            let independent = w[1].is_empty()
                || Matrix::from_rows(w[1].clone(), d).expect("vectors of length d").rank() == w[1].len();
            contained && independent && w[1].len() == expected
        })
    }

    /// Same units and dimensions, and equal matrices letter by letter, a
    /// letter missing on one side counting as zero.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.ring.units != other.ring.units || self.dims != other.dims {
            return false;
        }
        let table = |x: &Self| -> BTreeMap<String, (usize, usize, Matrix<S>)> {
            x.ring
                .letters
                .iter()
                .zip(&x.mats)
                .filter(|(_, m)| !m.is_zero())
                .map(|(l, m)| (l.name.clone(), (l.src, l.dst, m.clone())))
                .collect()
        };
        table(self) == table(other)
    }

    /// Reverses the order of the units (and relabels letters accordingly).
    pub fn swap_units(&self) -> Self {
        let n = self.ring.units.len();
        let flip = |u: usize| n - 1 - u;
        let units = self.ring.units.iter().rev().cloned().collect();
        let letters =
            self.ring.letters.iter().map(|l| Letter { name: l.name.clone(), src: flip(l.src), dst: flip(l.dst) }).collect();
        NilObject {
            ring: BlockRing { units, letters },
            dims: self.dims.iter().rev().copied().collect(),
            mats: self.mats.clone(),
            cert: OnceLock::new(),
        }
    }

    /// Drops letters whose matrix is zero.
    pub fn prune(&self) -> Self {
        let keep: Vec<usize> = (0..self.mats.len()).filter(|&i| !self.mats[i].is_zero()).collect();
        NilObject {
            ring: BlockRing {
                units: self.ring.units.clone(),
                letters: keep.iter().map(|&i| self.ring.letters[i].clone()).collect(),
            },
            dims: self.dims.clone(),
            mats: keep.iter().map(|&i| self.mats[i].clone()).collect(),
            cert: OnceLock::new(),
        }
    }
}

impl<S: Scalar> fmt::Debug for NilObject<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar> fmt::Display for NilObject<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.ring.units.iter().zip(&self.dims).map(|(u, d)| format!("{u}:{d}")).collect();
        writeln!(f, "NilObject over {} [{}]", S::base_label(), dims.join(", "))?;
        for (l, m) in self.ring.letters.iter().zip(&self.mats) {
            writeln!(f, "  {} : {} -> {} {:?}", l.name, self.ring.units[l.src], self.ring.units[l.dst], m)?;
        }
        Ok(())
    }
}
