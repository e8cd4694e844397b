//! HNN extensions `<A, t | alpha(c) t = t beta(c)>`.
//!
//! Normal forms are `g_0 t^{e_1} g_1 ... t^{e_n} g_n` where `g_k` (k >= 1) is
//! a right-coset representative of `beta(C)` after `t` and of `alpha(C)` after
//! `t^-1`, with no pinch `t 1 t^-1` or `t^-1 1 t` left. They are built by
//! prepending letters right to left, moving subgroup elements leftwards
//! through `t beta(c) = alpha(c) t` and `t^-1 alpha(c) = beta(c) t^-1`.

use std::fmt;

use super::embed::Embedding;
use super::group::{Elem, GroupOracle};
use super::FreeProdError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnn {
    pub name: String,
    pub base: GroupOracle,
    pub subgroup: GroupOracle,
    pub alpha: Embedding,
    pub beta: Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HnnLetter {
    G(Elem),
    /// `t` or `t^-1`.
    T(i8),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HNNWord {
    pub head: Elem,
    pub tail: Vec<(i8, Elem)>,
}

impl HNNWord {
    pub fn t_exponents(&self) -> Vec<i8> {
        self.tail.iter().map(|(e, _)| *e).collect()
    }
}

impl Hnn {
    pub fn new(
        name: impl Into<String>,
        base: GroupOracle,
        subgroup: GroupOracle,
        alpha: Embedding,
        beta: Embedding,
    ) -> Result<Self, FreeProdError> {
        for e in [&alpha, &beta] {
            if *e.source() != subgroup || *e.target() != base {
                return Err(FreeProdError::InvalidData("embedding has the wrong source or target".into()));
            }
        }
        Ok(Hnn { name: name.into(), base, subgroup, alpha, beta })
    }

    pub fn identity(&self) -> HNNWord {
        HNNWord { head: self.base.identity(), tail: vec![] }
    }

    /// The embedding whose cosets normalize the element following `t^e`.
    fn after(&self, e: i8) -> &Embedding {
        if e > 0 {
            &self.beta
        } else {
            &self.alpha
        }
    }

    /// The embedding whose image appears on the left once an element of
    /// `after(e)` is moved through `t^e`.
    fn before(&self, e: i8) -> &Embedding {
        if e > 0 {
            &self.alpha
        } else {
            &self.beta
        }
    }

    fn check(&self, l: &HnnLetter) -> Result<(), FreeProdError> {
        match l {
            HnnLetter::G(g) if !self.base.contains(g) => {
                Err(FreeProdError::NotInFactor(format!("{g:?} is not in {}", self.base.name())))
            }
            HnnLetter::T(e) if e.abs() != 1 => Err(FreeProdError::InvalidData(format!("t exponent {e}"))),
            _ => Ok(()),
        }
    }

    fn prepend(&self, l: &HnnLetter, mut w: HNNWord) -> HNNWord {
        match l {
            HnnLetter::G(g) => {
                w.head = self.base.mul(g, &w.head);
                w
            }
            HnnLetter::T(e) => {
                let (c, r) = self.after(*e).split(&w.head);
                let moved = self.before(*e).image(&c);
                if self.base.is_identity(&r) && w.tail.first().is_some_and(|(f, _)| *f == -*e) {
                    let (_, g1) = w.tail.remove(0);
                    HNNWord { head: self.base.mul(&moved, &g1), tail: w.tail }
                } else {
                    w.tail.insert(0, (*e, r));
                    HNNWord { head: moved, tail: w.tail }
                }
            }
        }
    }

    pub fn normalize(&self, raw: &[HnnLetter]) -> Result<HNNWord, FreeProdError> {
        raw.iter().try_for_each(|l| self.check(l))?;
        Ok(raw.iter().rev().fold(self.identity(), |w, l| self.prepend(l, w)))
    }

    pub fn to_raw(&self, w: &HNNWord) -> Vec<HnnLetter> {
        let mut raw = vec![HnnLetter::G(w.head.clone())];
        for (e, g) in &w.tail {
            raw.push(HnnLetter::T(*e));
            raw.push(HnnLetter::G(g.clone()));
        }
        raw
    }

    pub fn mul(&self, a: &HNNWord, b: &HNNWord) -> HNNWord {
        let mut raw = self.to_raw(a);
        raw.extend(self.to_raw(b));
        self.normalize(&raw).expect("normal forms are valid words")
    }

    pub fn inv(&self, a: &HNNWord) -> HNNWord {
        let raw: Vec<HnnLetter> = self
            .to_raw(a)
            .into_iter()
            .rev()
            .map(|l| match l {
                HnnLetter::G(g) => HnnLetter::G(self.base.inv(&g)),
                HnnLetter::T(e) => HnnLetter::T(-e),
            })
            .collect();
        self.normalize(&raw).expect("normal forms are valid words")
    }

    pub fn is_normal(&self, w: &HNNWord) -> bool {
        self.base.contains(&w.head)
            && w.tail.iter().all(|(e, g)| e.abs() == 1 && self.after(*e).rep(g) == *g)
            && w.tail.windows(2).all(|p| !(p[0].0 == -p[1].0 && self.base.is_identity(&p[0].1)))
    }

    /// Removes pinches `t beta(c) t^-1 -> alpha(c)` and `t^-1 alpha(c) t -> beta(c)`
    /// one at a time, letting `choose` pick which of the available pinches
    /// (listed left to right) to remove. Adjacent base letters are merged.
    pub fn britton_reduce(
        &self,
        raw: &[HnnLetter],
        mut choose: impl FnMut(usize) -> usize,
    ) -> Result<Vec<HnnLetter>, FreeProdError> {
        raw.iter().try_for_each(|l| self.check(l))?;
        let mut w = self.merge(raw.to_vec());
        loop {
            let mut pinches = Vec::new();
            for i in 0..w.len() {
                let HnnLetter::T(e) = w[i] else { continue };
                let (mid, j) = match w.get(i + 1) {
                    Some(HnnLetter::G(g)) => (g.clone(), i + 2),
                    _ => (self.base.identity(), i + 1),
                };
                if w.get(j) != Some(&HnnLetter::T(-e)) {
                    continue;
                }
                if let Some(c) = self.after(e).preimage(&mid) {
                    pinches.push((i, j, self.before(e).image(&c)));
                }
            }
            if pinches.is_empty() {
                return Ok(w);
            }
            let (i, j, g) = pinches.swap_remove(choose(pinches.len()) % pinches.len());
            w.splice(i..=j, [HnnLetter::G(g)]);
            w = self.merge(w);
        }
    }

    pub fn britton_leftmost(&self, raw: &[HnnLetter]) -> Result<Vec<HnnLetter>, FreeProdError> {
        self.britton_reduce(raw, |_| 0)
    }

    fn merge(&self, w: Vec<HnnLetter>) -> Vec<HnnLetter> {
        let mut out: Vec<HnnLetter> = Vec::with_capacity(w.len());
        for l in w {
            match (out.last_mut(), l) {
                (Some(HnnLetter::G(a)), HnnLetter::G(b)) => *a = self.base.mul(a, &b),
                (_, l) => out.push(l),
            }
            if matches!(out.last(), Some(HnnLetter::G(g)) if self.base.is_identity(g)) {
                out.pop();
            }
        }
        out
    }

    pub fn render(&self, w: &HNNWord) -> String {
        self.render_raw(&self.to_raw(w))
    }

    pub fn render_raw(&self, raw: &[HnnLetter]) -> String {
        let parts: Vec<String> = raw
            .iter()
            .filter_map(|l| match l {
                HnnLetter::G(g) if self.base.is_identity(g) => None,
                HnnLetter::G(g) => Some(self.base.render(g)),
                HnnLetter::T(e) => Some(if *e > 0 { "T+".into() } else { "T-".into() }),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Tokens `T+`, `T-`, or base-group elements; adjacent base tokens multiply.
    pub fn parse_raw(&self, s: &str) -> Result<Vec<HnnLetter>, FreeProdError> {
        let mut out: Vec<HnnLetter> = Vec::new();
        for tok in s.split_whitespace() {
            match tok {
                "T+" | "T" => out.push(HnnLetter::T(1)),
                "T-" | "T^-1" => out.push(HnnLetter::T(-1)),
                _ => {
                    let g = self.base.parse(tok)?;
                    match out.last_mut() {
                        Some(HnnLetter::G(a)) => *a = self.base.mul(a, &g),
                        _ => out.push(HnnLetter::G(g)),
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Hnn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} *_{}", self.base.name(), self.subgroup.name())
    }
}

#[cfg(test)]
mod tests {
    use crate::freeprod::samples;

    #[test]
    fn baumslag_solitar_pinch() {
        let h = samples::bs12();
        let nf = h.normalize(&h.parse_raw("T- a T+").unwrap()).unwrap();
        assert_eq!(h.render(&nf), "a^2");
        let raw = h.britton_leftmost(&h.parse_raw("T- a T+").unwrap()).unwrap();
        assert_eq!(h.render_raw(&raw), "a^2");
    }

    #[test]
    fn free_cancellation() {
        let h = samples::bs12();
        assert_eq!(h.normalize(&h.parse_raw("T+ T-").unwrap()).unwrap(), h.identity());
    }

    #[test]
    fn no_pinch_without_membership() {
        let h = samples::bs12();
        // a is not in beta(C) = <a^2>, so t a t^-1 is reduced
        let raw = h.parse_raw("T+ a T-").unwrap();
        assert_eq!(h.britton_leftmost(&raw).unwrap(), raw);
        let nf = h.normalize(&raw).unwrap();
        assert_eq!(h.render(&nf), "T+ a T-");
        assert!(h.is_normal(&nf));
        // t a^2 t^-1 = a
        let nf = h.normalize(&h.parse_raw("T+ a^2 T-").unwrap()).unwrap();
        assert_eq!(h.render(&nf), "a");
    }

    #[test]
    fn moving_through_t() {
        let h = samples::bs12();
        // t a^3 = t a^2 a = a t a
        let nf = h.normalize(&h.parse_raw("T+ a^3").unwrap()).unwrap();
        assert_eq!(h.render(&nf), "a T+ a");
        let back = h.parse_raw(&h.render(&nf)).unwrap();
        assert_eq!(h.normalize(&back).unwrap(), nf);
    }
}
