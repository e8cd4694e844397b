//! Amalgamated free products `G_1 *_C G_2` with normal forms
//! `image(c) s_1 s_2 ... s_n`, where each `s_k` is a nontrivial right-coset
//! representative and consecutive syllables come from different factors.

use std::fmt;

use super::embed::Embedding;
use super::group::{Elem, GroupOracle};
use super::FreeProdError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgam {
    pub name: String,
    pub subgroup: GroupOracle,
    pub factors: [GroupOracle; 2],
    pub embeddings: [Embedding; 2],
}

/// A letter of a raw word: an element of factor `0` or `1`.
pub type RawLetter = (usize, Elem);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamWord {
    /// Element of the amalgamated subgroup.
    pub head: Elem,
    /// `(factor, representative)` pairs.
    pub syllables: Vec<RawLetter>,
}

impl Amalgam {
    pub fn new(
        name: impl Into<String>,
        subgroup: GroupOracle,
        factors: [GroupOracle; 2],
        embeddings: [Embedding; 2],
    ) -> Result<Self, FreeProdError> {
        for k in 0..2 {
            if *embeddings[k].source() != subgroup || *embeddings[k].target() != factors[k] {
                return Err(FreeProdError::InvalidData(format!("embedding {k} has the wrong source or target")));
            }
        }
        Ok(Amalgam { name: name.into(), subgroup, factors, embeddings })
    }

    pub fn identity(&self) -> AmalgamWord {
        AmalgamWord { head: self.subgroup.identity(), syllables: vec![] }
    }

    pub fn check_letter(&self, (k, g): &RawLetter) -> Result<(), FreeProdError> {
        if *k > 1 || !self.factors[*k].contains(g) {
            let factor = if *k > 1 { "no such factor".to_string() } else { self.factors[*k].name().to_string() };
            return Err(FreeProdError::NotInFactor(format!("syllable {g:?} claimed in factor {}: {factor}", k + 1)));
        }
        Ok(())
    }

    /// Prepends `x` (in factor `k`) to a normal form.
    fn prepend(&self, k: usize, x: &Elem, w: AmalgamWord) -> AmalgamWord {
        let (gk, emb) = (&self.factors[k], &self.embeddings[k]);
        let mut g = gk.mul(x, &emb.image(&w.head));
        let mut rest = w.syllables;
        if rest.first().is_some_and(|(f, _)| *f == k) {
            let (_, s) = rest.remove(0);
            g = gk.mul(&g, &s);
        }
        let (c, r) = emb.split(&g);
        if !gk.is_identity(&r) {
            rest.insert(0, (k, r));
        }
        AmalgamWord { head: c, syllables: rest }
    }

    pub fn normalize(&self, raw: &[RawLetter]) -> Result<AmalgamWord, FreeProdError> {
        raw.iter().try_for_each(|l| self.check_letter(l))?;
        Ok(raw.iter().rev().fold(self.identity(), |w, (k, x)| self.prepend(*k, x, w)))
    }

    /// A raw word spelling the normal form: the head merged into the first syllable.
    pub fn to_raw(&self, w: &AmalgamWord) -> Vec<RawLetter> {
        let mut raw = w.syllables.clone();
        match raw.first_mut() {
            Some((k, s)) => *s = self.factors[*k].mul(&self.embeddings[*k].image(&w.head), s),
            None if !self.subgroup.is_identity(&w.head) => raw.push((0, self.embeddings[0].image(&w.head))),
            None => {}
        }
        raw
    }

    pub fn mul(&self, a: &AmalgamWord, b: &AmalgamWord) -> AmalgamWord {
        let mut raw = self.to_raw(a);
        raw.extend(self.to_raw(b));
        self.normalize(&raw).expect("normal forms are valid words")
    }

    pub fn inv(&self, a: &AmalgamWord) -> AmalgamWord {
        let raw: Vec<RawLetter> =
            self.to_raw(a).into_iter().rev().map(|(k, g)| (k, self.factors[k].inv(&g))).collect();
        self.normalize(&raw).expect("normal forms are valid words")
    }

    pub fn is_normal(&self, w: &AmalgamWord) -> bool {
        self.subgroup.contains(&w.head)
            && w.syllables.iter().all(|(k, s)| {
                *k < 2 && !self.factors[*k].is_identity(s) && self.embeddings[*k].rep(s) == *s
            })
            && w.syllables.windows(2).all(|p| p[0].0 != p[1].0)
    }

    pub fn render(&self, w: &AmalgamWord) -> String {
        let mut parts = Vec::new();
        if !self.subgroup.is_identity(&w.head) {
            parts.push(format!("<{}>", self.subgroup.render(&w.head).replace(' ', "*")));
        }
        parts.extend(w.syllables.iter().map(|(k, s)| format!("{}:{}", k + 1, self.factors[*k].render(s).replace(' ', "*"))));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Parses tokens `k:element` (factor `k` in `1, 2`), separated by spaces.
    pub fn parse_raw(&self, s: &str) -> Result<Vec<RawLetter>, FreeProdError> {
        s.split_whitespace()
            .map(|tok| {
                let (k, g) = tok
                    .split_once(':')
                    .ok_or_else(|| FreeProdError::Parse(format!("expected `factor:element`, got `{tok}`")))?;
                let k: usize = match k {
                    "1" => 0,
                    "2" => 1,
                    _ => return Err(FreeProdError::Parse(format!("factor must be 1 or 2, got `{k}`"))),
                };
                Ok((k, self.factors[k].parse(g)?))
            })
            .collect()
    }

    /// Parses a normal form as printed by [`Amalgam::render`]: an optional
    /// head `<c>` followed by syllables.
    pub fn parse_word(&self, s: &str) -> Result<AmalgamWord, FreeProdError> {
        let s = s.trim();
        if s == "1" {
            return Ok(self.identity());
        }
        let (head, rest) = match s.strip_prefix('<') {
            Some(t) => {
                let (h, r) = t.split_once('>').ok_or_else(|| FreeProdError::Parse(format!("unclosed head in `{s}`")))?;
                (self.subgroup.parse(h)?, r)
            }
            None => (self.subgroup.identity(), s),
        };
        let w = AmalgamWord { head, syllables: self.parse_raw(rest)? };
        if !self.is_normal(&w) {
            return Err(FreeProdError::Parse(format!("`{s}` is not in normal form")));
        }
        Ok(w)
    }
}

impl fmt::Display for Amalgam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} *_{} {}", self.factors[0].name(), self.subgroup.name(), self.factors[1].name())
    }
}
