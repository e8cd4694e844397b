//! Group rings of amalgams and HNN extensions, and the decomposition of the
//! group ring as a bimodule over the edge group into summands indexed by
//! sequences of blocks.

use std::collections::BTreeMap;
use std::fmt;

use super::amalgam::{Amalgam, AmalgamWord};
use super::hnn::{HNNWord, Hnn};
use super::FreeProdError;
use crate::scalar::Ring;

/// A group given by normal forms.
pub trait Construction {
    type Word: Clone + Ord + fmt::Debug;
    fn label(&self) -> &str;
    fn one(&self) -> Self::Word;
    fn word_mul(&self, a: &Self::Word, b: &Self::Word) -> Self::Word;
    fn word_inv(&self, a: &Self::Word) -> Self::Word;
    fn render_word(&self, w: &Self::Word) -> String;
    fn parse_word(&self, s: &str) -> Result<Self::Word, FreeProdError>;
    fn sequence_type(&self, w: &Self::Word) -> SequenceType;
}

/// Side labels of the bimodule blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Alpha,
    Beta,
}

impl Side {
    /// Row index `i` with `f(i) = side`, where `f(1) = beta`.
    pub fn row_index(self) -> u8 {
        match self {
            Side::Beta => 1,
            Side::Alpha => 2,
        }
    }

    /// Column index `j` with `g(j) = side`, where `g(1) = alpha`.
    pub fn col_index(self) -> u8 {
        match self {
            Side::Alpha => 1,
            Side::Beta => 2,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Alpha => "a",
            Side::Beta => "b",
        })
    }
}

/// `(i_1, j_1, ..., i_n, j_n)`; empty for the summand `C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SequenceType {
    pub blocks: Vec<(Side, Side)>,
}

impl SequenceType {
    pub fn is_admissible(&self) -> bool {
        self.blocks.windows(2).all(|p| p[0].1 != p[1].0)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The same summand written with blocks of `S`: `(i_1, j_1, ..., i_n, j_n)`
    /// in `{1, 2}` with `j_k = i_{k+1}`.
    pub fn s_indices(&self) -> Vec<(u8, u8)> {
        self.blocks.iter().map(|(i, j)| (i.row_index(), j.col_index())).collect()
    }

    /// `(i, j)` such that the summand lies in `_i(S^n)_j`, or `None` for `C`.
    pub fn s_power(&self) -> Option<(u8, u8, usize)> {
        let s = self.s_indices();
        Some((s.first()?.0, s.last()?.1, s.len()))
    }
}

impl fmt::Display for SequenceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.blocks.iter().map(|(i, j)| format!("{i}{j}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Construction for Amalgam {
    type Word = AmalgamWord;
    fn label(&self) -> &str {
        &self.name
    }
    fn one(&self) -> AmalgamWord {
        self.identity()
    }
    fn word_mul(&self, a: &AmalgamWord, b: &AmalgamWord) -> AmalgamWord {
        self.mul(a, b)
    }
    fn word_inv(&self, a: &AmalgamWord) -> AmalgamWord {
        self.inv(a)
    }
    fn render_word(&self, w: &AmalgamWord) -> String {
        self.render(w)
    }
    fn parse_word(&self, s: &str) -> Result<AmalgamWord, FreeProdError> {
        let s = s.trim();
        if s.starts_with('<') || s == "1" {
            Amalgam::parse_word(self, s)
        } else {
            self.normalize(&self.parse_raw(s)?)
        }
    }
    /// Syllables of the first factor lie in `A' = (a, a)`, of the second in
    /// `B' = (b, b)`; the head acts through the bimodule structure.
    fn sequence_type(&self, w: &AmalgamWord) -> SequenceType {
        let blocks = w
            .syllables
            .iter()
            .map(|(k, _)| if *k == 0 { (Side::Alpha, Side::Alpha) } else { (Side::Beta, Side::Beta) })
            .collect();
        SequenceType { blocks }
    }
}

impl Construction for Hnn {
    type Word = HNNWord;
    fn label(&self) -> &str {
        &self.name
    }
    fn one(&self) -> HNNWord {
        self.identity()
    }
    fn word_mul(&self, a: &HNNWord, b: &HNNWord) -> HNNWord {
        self.mul(a, b)
    }
    fn word_inv(&self, a: &HNNWord) -> HNNWord {
        self.inv(a)
    }
    fn render_word(&self, w: &HNNWord) -> String {
        self.render(w)
    }
    fn parse_word(&self, s: &str) -> Result<HNNWord, FreeProdError> {
        self.normalize(&self.parse_raw(s)?)
    }
    /// Blocks: `A' = (a, a)`, `tA = (b, a)`, `At^-1 = (a, b)`, `tA''t^-1 = (b, b)`.
    /// Each `t` followed directly by `t^-1` forms a `tA''t^-1` block; any
    /// other `t` takes the element after it, any other `t^-1` the element
    /// before it; an element between `t^-1` and `t`, or a leading/trailing
    /// element outside `alpha(C)`, is an `A'` block.
    fn sequence_type(&self, w: &HNNWord) -> SequenceType {
        let es = w.t_exponents();
        let n = es.len();
        let outside_alpha = |g| !self.alpha.contains(g);
        let mut blocks = Vec::new();
        if n == 0 {
            if outside_alpha(&w.head) {
                blocks.push((Side::Alpha, Side::Alpha));
            }
            return SequenceType { blocks };
        }
        if es[0] > 0 && outside_alpha(&w.head) {
            blocks.push((Side::Alpha, Side::Alpha));
        }
        let mut k = 0;
        while k < n {
            if es[k] > 0 {
                if k + 1 < n && es[k + 1] < 0 {
                    blocks.push((Side::Beta, Side::Beta));
                    k += 2;
                } else {
                    blocks.push((Side::Beta, Side::Alpha));
                    k += 1;
                }
            } else {
                blocks.push((Side::Alpha, Side::Beta));
                k += 1;
            }
            // the element after position k - 1, when it is sandwiched between t^-1 and t
            if k < n && es[k - 1] < 0 && es[k] > 0 {
                blocks.push((Side::Alpha, Side::Alpha));
            }
        }
        if es[n - 1] < 0 && outside_alpha(&w.tail[n - 1].1) {
            blocks.push((Side::Alpha, Side::Alpha));
        }
        SequenceType { blocks }
    }
}

/// A finite `R`-linear combination of group elements of a construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement<W, R> {
    construction: String,
    terms: BTreeMap<W, R>,
}

impl<W: Clone + Ord + fmt::Debug, R: Ring> GroupRingElement<W, R> {
    pub fn zero<C: Construction<Word = W>>(g: &C) -> Self {
        GroupRingElement { construction: g.label().to_string(), terms: BTreeMap::new() }
    }

    pub fn basis<C: Construction<Word = W>>(g: &C, w: W) -> Self {
        Self::from_terms(g, [(w, R::one())])
    }

    pub fn one<C: Construction<Word = W>>(g: &C) -> Self {
        Self::basis(g, g.one())
    }

    pub fn from_terms<C: Construction<Word = W>>(g: &C, terms: impl IntoIterator<Item = (W, R)>) -> Self {
        let mut out = Self::zero(g);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    pub fn terms(&self) -> impl Iterator<Item = (&W, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: W, c: R) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&w).unwrap_or_else(R::zero) + c;
        if !v.is_zero() {
            self.terms.insert(w, v);
        }
    }

    fn same(&self, other: &Self) -> Result<(), FreeProdError> {
        if self.construction != other.construction {
            return Err(FreeProdError::MixedConstructions(self.construction.clone(), other.construction.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FreeProdError> {
        self.same(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            construction: self.construction.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FreeProdError> {
        self.add(&other.neg())
    }

    /// Bilinear extension of the group law, re-normalizing every product.
    pub fn ring_mul<C: Construction<Word = W>>(&self, g: &C, other: &Self) -> Result<Self, FreeProdError> {
        self.same(other)?;
        if self.construction != g.label() {
            return Err(FreeProdError::MixedConstructions(self.construction.clone(), g.label().to_string()));
        }
        let mut out = Self::zero(g);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(g.word_mul(a, b), x.clone() * y.clone());
            }
        }
        Ok(out)
    }

    /// Splits into summands by sequence type; the parts sum back to `self`.
    pub fn grade_decompose<C: Construction<Word = W>>(&self, g: &C) -> BTreeMap<SequenceType, Self> {
        let mut out: BTreeMap<SequenceType, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(g.sequence_type(w)).or_insert_with(|| Self::zero(g)).add_term(w.clone(), c.clone());
        }
        out
    }

    /// `c*[word] + ...` with `[]` holding the rendered normal form.
    pub fn render<C: Construction<Word = W>>(&self, g: &C) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let s = g.render_word(w);
                let s = if w == &g.one() { String::new() } else { s };
                format!("{c}*[{s}]")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Parses `2*[1:s 2:r] + -1*[]`.
pub fn parse_group_ring<C: Construction, R: crate::scalar::Scalar>(
    g: &C,
    s: &str,
) -> Result<GroupRingElement<C::Word, R>, FreeProdError> {
    let mut out = GroupRingElement::zero(g);
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let (coeff, after) =
            rest.split_once("*[").ok_or_else(|| FreeProdError::Parse(format!("expected `c*[word]` in `{rest}`")))?;
        let (word, tail) =
            after.split_once(']').ok_or_else(|| FreeProdError::Parse(format!("unclosed `[` in `{rest}`")))?;
        let c = R::parse_scalar(coeff.trim())
            .ok_or_else(|| FreeProdError::Parse(format!("bad coefficient `{}`", coeff.trim())))?;
        let w = if word.trim().is_empty() { g.one() } else { g.parse_word(word)? };
        out.add_term(w, c);
        rest = tail.trim_start();
        if let Some(t) = rest.strip_prefix('+') {
            rest = t.trim_start();
        } else if !rest.is_empty() {
            return Err(FreeProdError::Parse(format!("expected `+` before `{rest}`")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprod::samples;
    use num_bigint::BigInt;

    type ZG<W> = GroupRingElement<W, BigInt>;

    #[test]
    fn involution_kills() {
        let d = samples::infinite_dihedral();
        let s = d.normalize(&d.parse_raw("1:s").unwrap()).unwrap();
        let one: ZG<_> = GroupRingElement::one(&d);
        let sb = GroupRingElement::basis(&d, s);
        let p = one.add(&sb).unwrap().ring_mul(&d, &one.sub(&sb).unwrap()).unwrap();
        assert!(p.is_zero());
        assert_eq!(sb.ring_mul(&d, &one).unwrap(), sb);
    }

    #[test]
    fn dihedral_grading() {
        let d = samples::infinite_dihedral();
        let w = d.normalize(&d.parse_raw("2:r 1:s").unwrap()).unwrap();
        let t = d.sequence_type(&w);
        assert_eq!(t.blocks, vec![(Side::Beta, Side::Beta), (Side::Alpha, Side::Alpha)]);
        assert_eq!(t.s_power(), Some((1, 1, 2)));
        assert!(t.is_admissible());
        assert_eq!(d.sequence_type(&d.identity()), SequenceType::default());
    }

    #[test]
    fn hnn_grading() {
        let h = samples::bs12();
        let ty = |s: &str| h.sequence_type(&h.normalize(&h.parse_raw(s).unwrap()).unwrap());
        assert_eq!(ty("T+ a T-").blocks, vec![(Side::Beta, Side::Beta)]);
        assert_eq!(ty("T+ T+").blocks, vec![(Side::Beta, Side::Alpha); 2]);
        assert_eq!(ty("T- T-").blocks, vec![(Side::Alpha, Side::Beta); 2]);
        assert_eq!(ty("a").blocks, vec![]);
        for s in ["T- T+ a", "T+ a T- T+", "T- T- T+ a T-", "a T+ a T- T-"] {
            assert!(ty(s).is_admissible(), "{s}");
        }
    }

    #[test]
    fn text_round_trip() {
        let d = samples::infinite_dihedral();
        let u: ZG<_> = parse_group_ring(&d, "2*[1:s 2:r] + -1*[]").unwrap();
        assert_eq!(u.len(), 2);
        let back: ZG<_> = parse_group_ring(&d, &u.render(&d)).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn mixed_constructions_rejected() {
        let d = samples::infinite_dihedral();
        let a = samples::s3_amalgam();
        let x: ZG<_> = GroupRingElement::one(&d);
        let y: ZG<_> = GroupRingElement::one(&a);
        assert!(matches!(x.ring_mul(&d, &y), Err(FreeProdError::MixedConstructions(..))));
    }
}
