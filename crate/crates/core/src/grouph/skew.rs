//! The group ring of `H`, as skew Laurent polynomials in `t` over `A`.
//!
//! Elements are written `sum_k t^k u_k` with coefficients `u_k` in `A` on the
//! right. Conjugation by `t` shifts indices, `t x_i t^{-1} = x_{i+1}`, which
//! gives the commutation rule `a t = t shift_{-1}(a)` and the product
//! `(t^k a)(t^l b) = t^{k+l} shift_{-l}(a) b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Monomial};
use crate::scalar::Ring;

/// Integers extended by both infinities, for valuations and degrees of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInfinity,
    Finite(i64),
    PosInfinity,
}

impl Extended {
    pub fn finite(self) -> Option<i64> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInfinity => write!(f, "-inf"),
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::PosInfinity => write!(f, "+inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZHElement<R> {
    coeffs: BTreeMap<i64, LaurentPoly<R>>,
}

impl<R: Ring> ZHElement<R> {
    /// `t^k a`.
    pub fn term(k: i64, a: LaurentPoly<R>) -> Self {
        let mut coeffs = BTreeMap::new();
        if !a.is_zero() {
            coeffs.insert(k, a);
        }
        ZHElement { coeffs }
    }

    pub fn from_a(a: LaurentPoly<R>) -> Self {
        Self::term(0, a)
    }

    pub fn t_pow(k: i64) -> Self {
        Self::term(k, LaurentPoly::one())
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i64, LaurentPoly<R>)>) -> Self {
        let mut out = ZHElement::zero();
        for (k, a) in coeffs {
            out.add_coeff(k, a);
        }
        out
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &LaurentPoly<R>)> {
        self.coeffs.iter().map(|(k, a)| (*k, a))
    }

    /// Right coefficient `u_k` of `t^k`.
    pub fn coeff(&self, k: i64) -> LaurentPoly<R> {
        self.coeffs.get(&k).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Left coefficient: the `c` with `t^k u_k = c t^k`, i.e. `shift_k(u_k)`.
    pub fn left_coeff(&self, k: i64) -> LaurentPoly<R> {
        self.coeff(k).shift(k)
    }

    pub fn add_coeff(&mut self, k: i64, a: LaurentPoly<R>) {
        if a.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&k) {
            Some(prev) => prev + a,
            None => a,
        };
        if !sum.is_zero() {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn valuation(&self) -> Extended {
        self.coeffs.keys().next().map_or(Extended::PosInfinity, |&k| Extended::Finite(k))
    }

    pub fn degree(&self) -> Extended {
        self.coeffs.keys().next_back().map_or(Extended::NegInfinity, |&k| Extended::Finite(k))
    }

    /// `(valuation, degree)` in `t`; `(+inf, -inf)` for zero.
    pub fn val_deg(&self) -> (Extended, Extended) {
        (self.valuation(), self.degree())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.values().map(|a| a.len()).sum()
    }

    /// Right multiplication by an element of `A`.
    pub fn mul_a(&self, a: &LaurentPoly<R>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(k, u)| (*k, u * a)))
    }

    /// Left multiplication by an element of `A`: `a t^k u = t^k shift_{-k}(a) u`.
    pub fn a_mul(a: &LaurentPoly<R>, u: &Self) -> Self {
        Self::from_coeffs(u.coeffs.iter().map(|(k, c)| (*k, &a.shift(-k) * c)))
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(k, u)| (*k, u.scale(c))))
    }

    /// Ring homomorphism to `R[x^{+-1}, t^{+-1}]` sending every `x_i` to `x`.
    pub fn eval_collapse(&self) -> Laurent2<R> {
        let mut out = Laurent2::zero();
        for (k, a) in &self.coeffs {
            for (xe, c) in a.collapse() {
                out.add_term(*k, xe, c);
            }
        }
        out
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = ZHElement::zero();
        for (k, a) in &self.coeffs {
            for (l, b) in &rhs.coeffs {
                out.add_coeff(k + l, &a.shift(-l) * b);
            }
        }
        out
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in &rhs.coeffs {
            out.add_coeff(*k, a.clone());
        }
        out
    }

    fn neg_ref(&self) -> Self {
        ZHElement { coeffs: self.coeffs.iter().map(|(k, a)| (*k, -a)).collect() }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
}

impl<R: Ring> Zero for ZHElement<R> {
    fn zero() -> Self {
        ZHElement { coeffs: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for ZHElement<R> {
    fn one() -> Self {
        Self::t_pow(0)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $method:ident, $inner:ident) => {
        impl<R: Ring> $tr<&$ty<R>> for &$ty<R> {
            type Output = $ty<R>;
            fn $method(self, rhs: &$ty<R>) -> $ty<R> {
                self.$inner(rhs)
            }
        }
        impl<R: Ring> $tr for $ty<R> {
            type Output = $ty<R>;
            fn $method(self, rhs: $ty<R>) -> $ty<R> {
                (&self).$inner(&rhs)
            }
        }
    };
}

forward_binop!(ZHElement, Add, add, add_ref);
forward_binop!(ZHElement, Sub, sub, sub_ref);
forward_binop!(ZHElement, Mul, mul, mul_ref);

impl<R: Ring> Neg for ZHElement<R> {
    type Output = ZHElement<R>;
    fn neg(self) -> ZHElement<R> {
        self.neg_ref()
    }
}

impl<R: Ring> Neg for &ZHElement<R> {
    type Output = ZHElement<R>;
    fn neg(self) -> ZHElement<R> {
        self.neg_ref()
    }
}

/// Renders the canonical text form: terms `t^k * [x_i^e ...] * c` joined by
/// ` + `, ordered by `t`-degree then monomial; zero prints as `0`.
impl<R: Ring> fmt::Display for ZHElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in &self.coeffs {
            for (m, c) in a.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "t^{k} * {m} * {c}")?;
            }
        }
        Ok(())
    }
}

/// Element of the commutative ring `R[x^{+-1}, t^{+-1}]`, keyed by `(t-exp, x-exp)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent2<R> {
    terms: BTreeMap<(i64, i64), R>,
}

impl<R: Ring> Laurent2<R> {
    pub fn add_term(&mut self, te: i64, xe: i64, c: R) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&(te, xe)).unwrap_or_else(R::zero) + c;
        if !v.is_zero() {
            self.terms.insert((te, xe), v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &R)> {
        self.terms.iter()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Laurent2::zero();
        for ((t1, x1), a) in &self.terms {
            for ((t2, x2), b) in &rhs.terms {
                out.add_term(t1 + t2, x1 + x2, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<R: Ring> Zero for Laurent2<R> {
    fn zero() -> Self {
        Laurent2 { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> Add for Laurent2<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for ((t, x), c) in rhs.terms {
            self.add_term(t, x, c);
        }
        self
    }
}

impl<R: Ring> fmt::Display for Laurent2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((t, x), c)| format!("t^{t} * x^{x} * {c}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `t^k * prod x_i^{e_i}` as a single basis element.
pub fn basis_element<R: Ring>(k: i64, m: Monomial) -> ZHElement<R> {
    ZHElement::term(k, LaurentPoly::monomial(m, R::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type ZH = ZHElement<BigInt>;
    type A = LaurentPoly<BigInt>;

    fn t(k: i64) -> ZH {
        ZH::t_pow(k)
    }

    fn a(p: A) -> ZH {
        ZH::from_a(p)
    }

    #[test]
    fn conjugation_matches_group_relation() {
        // t x_0 t^{-1} = x_1 and t^{-1} x_0 t = x_{-1}
        assert_eq!(&(&t(1) * &a(A::x(0))) * &t(-1), a(A::x(1)));
        assert_eq!(&(&t(-1) * &a(A::x(0))) * &t(1), a(A::x(-1)));
        // x t^n x t^{-n} = t^n x t^{-n} x
        for n in -3..=3 {
            let lhs = &(&(&a(A::x(0)) * &t(n)) * &a(A::x(0))) * &t(-n);
            let rhs = &(&(&t(n) * &a(A::x(0))) * &t(-n)) * &a(A::x(0));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_examples() {
        let tx0 = ZH::term(1, A::x(0));
        assert_eq!(&tx0 * &t(1), ZH::term(2, A::x(-1)));
        assert_eq!(&tx0 * &ZH::one(), tx0);
        let p = ZH::one() - ZH::term(1, A::y(0));
        let q = ZH::one() + ZH::term(1, A::y(0));
        let pq = &p * &q;
        let qp = &q * &p;
        assert_eq!(pq, qp.clone()); // both equal 1 - t y_0 t y_0 = 1 - t^2 y_{-1} y_0
        // a genuinely noncommuting pair
        let r = ZH::one() + ZH::from_a(A::y(0));
        assert_ne!(&p * &r, &r * &p);
        assert_eq!(pq, ZH::one() - ZH::term(2, A::y(-1) * A::y(0)));
    }

    #[test]
    fn valuation_and_degree() {
        let u = ZH::from_a(A::z(0)) + ZH::term(3, A::z(1));
        assert_eq!(u.val_deg(), (Extended::Finite(0), Extended::Finite(3)));
        assert_eq!(ZH::zero().val_deg(), (Extended::PosInfinity, Extended::NegInfinity));
        assert_eq!(ZH::term(-2, A::x(5)).val_deg(), (Extended::Finite(-2), Extended::Finite(-2)));
    }

    #[test]
    fn collapse_examples() {
        assert!(ZH::from_a(A::z(5)).eval_collapse().is_zero());
        let c = ZH::term(1, A::x(-3)).eval_collapse();
        assert_eq!(c.terms().collect::<Vec<_>>(), vec![(&(1, 1), &BigInt::from(1))]);
    }

    #[test]
    fn left_coefficients() {
        let u = ZH::term(2, A::x(0));
        // t^2 x_0 = x_2 t^2
        assert_eq!(u.left_coeff(2), A::x(2));
        assert_eq!(ZH::a_mul(&A::x(2), &t(2)), u);
    }

    #[test]
    fn display_format() {
        let u = ZH::term(-1, A::x(2) * A::x(-1) * A::x(-1)) - ZH::from_a(A::one());
        assert_eq!(u.to_string(), "t^-1 * [x_-1^2 x_2^1] * 1 + t^0 * [] * -1");
        assert_eq!(ZH::zero().to_string(), "0");
    }
}
