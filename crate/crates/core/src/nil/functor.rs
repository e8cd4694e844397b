//! Functors on nil objects over a two-unit ring with units `a` (index 0) and
//! `b` (index 1), and the word-restriction functors.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{BlockRing, Letter, NilError, NilObject};

fn two_units<S: Scalar>(x: &NilObject<S>) -> Result<(), NilError> {
    if x.ring.units.len() == 2 {
        Ok(())
    } else {
        Err(NilError::RingMismatch(format!("expected two units, got {}", x.ring.units.len())))
    }
}

fn letters_between<S: Scalar>(x: &NilObject<S>, src: usize, dst: usize) -> Vec<usize> {
    (0..x.ring.letters.len()).filter(|&i| x.ring.letters[i].src == src && x.ring.letters[i].dst == dst).collect()
}

/// Restriction to the `b` unit: `(M_b, f_bb)`.
pub fn phi1<S: Scalar>(x: &NilObject<S>) -> Result<NilObject<S>, NilError> {
    two_units(x)?;
    if !x.is_nilpotent().nilpotent {
        return Err(NilError::NotNilpotent);
    }
    let bb = letters_between(x, 1, 1);
    let ring = BlockRing {
        units: vec![x.ring.units[1].clone()],
        letters: bb.iter().map(|&i| Letter { name: x.ring.letters[i].name.clone(), src: 0, dst: 0 }).collect(),
    };
    certify(NilObject::new(ring, vec![x.dims[1]], bb.iter().map(|&i| x.mats[i].clone()).collect())?)
}

fn certify<S: Scalar>(y: NilObject<S>) -> Result<NilObject<S>, NilError> {
    if y.is_nilpotent().nilpotent {
        Ok(y)
    } else {
        Err(NilError::InvariantViolation("transported object is not nilpotent".into()))
    }
}

/// Transport to the `a` unit with detours through `b` of at most `max_loops`
/// consecutive `b -> b` letters: the letters are the `a -> a` letters plus one
/// composite `l1.w1...wk.l2` for every `a -> b` letter `l1`, `b -> a` letter `l2`
/// and word `w` of `b -> b` letters with `k <= max_loops`.
pub fn phi2_bounded<S: Scalar>(x: &NilObject<S>, max_loops: usize) -> Result<NilObject<S>, NilError> {
    two_units(x)?;
    let aa = letters_between(x, 0, 0);
    let ab = letters_between(x, 0, 1);
    let bb = letters_between(x, 1, 1);
    let ba = letters_between(x, 1, 0);
    let name = |i: usize| x.ring.letters[i].name.clone();

    let mut letters: Vec<Letter> = aa.iter().map(|&i| Letter { name: name(i), src: 0, dst: 0 }).collect();
    let mut mats: Vec<Matrix<S>> = aa.iter().map(|&i| x.mats[i].clone()).collect();

    // words in the b -> b letters, as (names, matrix on M_b), by length
    let mut layer: Vec<(Vec<String>, Matrix<S>)> = vec![(vec![], Matrix::identity(x.dims[1]))];
    let mut loops = Vec::new();
    for k in 0..=max_loops {
        if k > 0 {
            layer = layer
                .iter()
                .flat_map(|(w, m)| bb.iter().map(move |&i| (w, m, i)))
                .map(|(w, m, i)| {
                    let mut w = w.clone();
                    w.push(name(i));
                    (w, x.mats[i].mul(m))
                })
                .collect();
        }
        loops.extend(layer.iter().cloned());
    }
    for &l1 in &ab {
        for (w, m) in &loops {
            for &l2 in &ba {
                let mut parts = vec![name(l1)];
                parts.extend(w.iter().cloned());
                parts.push(name(l2));
                letters.push(Letter { name: parts.join("."), src: 0, dst: 0 });
                mats.push(x.mats[l2].mul(&m.mul(&x.mats[l1])));
            }
        }
    }
    let ring = BlockRing { units: vec![x.ring.units[0].clone()], letters };
    let y = NilObject::new(ring, vec![x.dims[0]], mats)?;
    if x.is_nilpotent().nilpotent {
        certify(y)
    } else {
        Ok(y)
    }
}

/// [`phi2_bounded`] with the loop bound taken from the nilpotency index of
/// the `b -> b` part, beyond which every detour vanishes.
pub fn phi2<S: Scalar>(x: &NilObject<S>) -> Result<NilObject<S>, NilError> {
    let index = phi1(x)?.is_nilpotent().index.expect("restriction of a nilpotent object");
    phi2_bounded(x, index.saturating_sub(1))
}

/// A set of words in the letters, by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSet {
    Finite(Vec<Vec<String>>),
    /// `{ i^k j : k >= 0 }`.
    PowerPrefix { i: String, j: String },
}

/// Keeps the module and replaces the letters by one letter per word `u` of
/// `set`, acting by `f_u` from the source of its first letter to the target
/// of its last. Infinite sets are cut at the nilpotency index, past which
/// every word acts by zero.
pub fn phi_word<S: Scalar>(x: &NilObject<S>, set: &WordSet) -> Result<NilObject<S>, NilError> {
    let index = x.is_nilpotent().index.ok_or(NilError::NotNilpotent)?;
    let words: Vec<Vec<String>> = match set {
        WordSet::Finite(ws) => ws.clone(),
        WordSet::PowerPrefix { i, j } => (0..index.max(1))
            .map(|k| std::iter::repeat(i.clone()).take(k).chain(std::iter::once(j.clone())).collect())
            .collect(),
    };
    let mut letters = Vec::new();
    let mut mats = Vec::new();
    for w in &words {
        let idx = w
            .iter()
            .map(|n| x.ring.letter_index(n).ok_or_else(|| NilError::UnknownLetter(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        if idx.is_empty() {
            return Err(NilError::InvalidData("empty word".into()));
        }
        let (src, dst) = (x.ring.letters[idx[0]].src, x.ring.letters[idx[idx.len() - 1]].dst);
        let name = w.join(".");
        if letters.iter().any(|l: &Letter| l.name == name) {
            continue;
        }
        letters.push(Letter { name, src, dst });
        mats.push(x.word_block(&idx)?);
    }
    certify(NilObject::new(BlockRing::new(x.ring.units.clone(), letters)?, x.dims.clone(), mats)?)
}

/// Direct sum over a common set of units. Letters are matched by name; a
/// letter present on one side only acts by zero on the other summand.
pub fn direct_sum<S: Scalar>(x: &NilObject<S>, y: &NilObject<S>) -> Result<NilObject<S>, NilError> {
    if x.ring.units != y.ring.units {
        return Err(NilError::RingMismatch("different units".into()));
    }
    let mut table: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    let mut order: Vec<&str> = Vec::new();
    for l in x.ring.letters.iter().chain(&y.ring.letters) {
        match table.get(l.name.as_str()) {
            Some(&(s, d)) if (s, d) != (l.src, l.dst) => {
                return Err(NilError::RingMismatch(format!("letter `{}` has different types", l.name)));
            }
            Some(_) => {}
            None => {
                table.insert(&l.name, (l.src, l.dst));
                order.push(&l.name);
            }
        }
    }
    let part = |z: &NilObject<S>, name: &str, s: usize, d: usize| {
        z.letter_matrix(name).cloned().unwrap_or_else(|| Matrix::zeros(z.dims[d], z.dims[s]))
    };
    let mut letters = Vec::new();
    let mut mats = Vec::new();
    for name in order {
        let (s, d) = table[name];
        letters.push(Letter { name: name.to_string(), src: s, dst: d });
        mats.push(part(x, name, s, d).direct_sum(&part(y, name, s, d)));
    }
    let dims = x.dims.iter().zip(&y.dims).map(|(a, b)| a + b).collect();
    NilObject::new(BlockRing::new(x.ring.units.clone(), letters)?, dims, mats)
}
