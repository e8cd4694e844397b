//! The commutative Laurent polynomial ring in the variables `x_i`, `i` in Z.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Ring;

/// A Laurent monomial `prod x_i^{e_i}`, stored sorted by index with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(i64, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: i64, exp: i64) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(index, exp)])
        }
    }

    /// Builds a monomial from arbitrary `(index, exponent)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for (i, e) in pairs {
            *acc.entry(i).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn factors(&self) -> &[(i64, i64)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, index: i64) -> i64 {
        self.0
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.0[pos].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(i, e)| (i, -e)).collect())
    }

    /// Relabels `x_i -> x_{i+m}`.
    pub fn shift(&self, m: i64) -> Monomial {
        Monomial(self.0.iter().map(|&(i, e)| (i + m, e)).collect())
    }

    /// Splits off the power of `x_index`: returns `(e, rest)` with `self = x_index^e * rest`.
    pub fn split_var(&self, index: i64) -> (i64, Monomial) {
        let e = self.exponent(index);
        let rest = Monomial(self.0.iter().copied().filter(|&(i, _)| i != index).collect());
        (e, rest)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(i, e)| format!("x_{i}^{e}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Element of `A = R[x_i^{+-1} : i in Z]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<R> {
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        let mut p = LaurentPoly { terms: BTreeMap::new() };
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn constant(c: R) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn monomial(m: Monomial, c: R) -> Self {
        Self::from_terms([(m, c)])
    }

    /// The variable `x_i`.
    pub fn x(i: i64) -> Self {
        Self::monomial(Monomial::var(i, 1), R::one())
    }

    /// `y_i = 1 - x_i`.
    pub fn y(i: i64) -> Self {
        Self::one() - Self::x(i)
    }

    /// `z_i = y_i - y_{i-1} = x_{i-1} - x_i`.
    pub fn z(i: i64) -> Self {
        Self::x(i - 1) - Self::x(i)
    }

    /// `y_hi * y_{hi-1} * ... * y_lo`; the empty product when `lo > hi`.
    pub fn y_desc(hi: i64, lo: i64) -> Self {
        (lo..=hi).rev().fold(Self::one(), |acc, k| acc * Self::y(k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> R {
        self.terms.get(m).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// The ring automorphism `x_i -> x_{i+m}`.
    pub fn shift(&self, m: i64) -> Self {
        if m == 0 {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.shift(m), c.clone())).collect() }
    }

    /// Substitutes `x_from -> x_to`.
    pub fn substitute(&self, from: i64, to: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let (e, rest) = m.split_var(from);
            (rest.mul(&Monomial::var(to, e)), c.clone())
        }))
    }

    /// Returns `q` with `self - self|_{x_from -> x_to} = (x_from - x_to) * q`.
    pub fn divided_difference(&self, from: i64, to: i64) -> Self {
        let mut q = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(from);
            // x^e - y^e = (x - y) * D_e(x, y)
            let (sign, range): (bool, Vec<(i64, i64)>) = if e > 0 {
                (true, (0..e).map(|i| (e - 1 - i, i)).collect())
            } else {
                (false, (0..-e).map(|i| (-1 - i, i + e)).collect())
            };
            for (ex, ey) in range {
                let mono = rest.mul(&Monomial::from_pairs([(from, ex), (to, ey)]));
                let coeff = if sign { c.clone() } else { -c.clone() };
                q.add_term(mono, coeff);
            }
        }
        q
    }

    /// Evaluates every `x_i` to a single variable `x`, returning exponent -> coefficient.
    pub fn collapse(&self) -> BTreeMap<i64, R> {
        let mut out: BTreeMap<i64, R> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.total_degree();
            let v = out.remove(&d).unwrap_or_else(R::zero) + c.clone();
            if !v.is_zero() {
                out.insert(d, v);
            }
        }
        out
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<R: Ring> Zero for LaurentPoly<R> {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for LaurentPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<R: Ring> $tr<&LaurentPoly<R>> for &LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $method(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
                self.$inner(rhs)
            }
        }
        impl<R: Ring> $tr for LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $method(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
                (&self).$inner(&rhs)
            }
        }
    };
}

impl<R: Ring> LaurentPoly<R> {
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<R: Ring> Neg for LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        self.neg_ref()
    }
}

impl<R: Ring> Neg for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        self.neg_ref()
    }
}

impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{m} * {c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type A = LaurentPoly<BigInt>;

    #[test]
    fn monomial_product_cancels() {
        let m = Monomial::from_pairs([(0, 2), (3, -1)]);
        assert!(m.mul(&m.inverse()).is_one());
        assert_eq!(m.shift(2), Monomial::from_pairs([(2, 2), (5, -1)]));
        assert_eq!(m.exponent(3), -1);
        assert_eq!(m.exponent(1), 0);
    }

    #[test]
    fn z_telescopes() {
        // z_0 + z_{-1} = x_{-2} - x_0
        assert_eq!(A::z(0) + A::z(-1), A::x(-2) - A::x(0));
        assert_eq!(A::z(1), A::y(1) - A::y(0));
    }

    #[test]
    fn y_desc_empty_and_nonempty() {
        assert_eq!(A::y_desc(0, 1), A::one());
        assert_eq!(A::y_desc(0, -1), A::y(0) * A::y(-1));
        assert_eq!(A::y_desc(3, -3).len(), 1 << 7);
    }

    #[test]
    fn divided_difference_identity() {
        let x = |i, e| A::monomial(Monomial::var(i, e), BigInt::from(1));
        let p = x(-2, 3) * x(5, 1) + x(-2, -2) * x(-1, 1) - x(-2, -1) + A::constant(BigInt::from(4));
        let q = p.divided_difference(-2, -1);
        let lhs = &p - &p.substitute(-2, -1);
        let rhs = (A::x(-2) - A::x(-1)) * q;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn collapse_kills_z() {
        assert!(A::z(5).collapse().is_empty());
        let c = (A::x(3) * A::x(-1)).collapse();
        assert_eq!(c.get(&2), Some(&BigInt::from(1)));
    }
}
