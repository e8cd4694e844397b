//! Elements of `H` itself, as `m t^k` with `m` a monomial in the `x_i`, and
//! the endomorphisms `f_p: x -> x, t -> t^p`.

use std::fmt;

use super::laurent::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HElement {
    pub mono: Monomial,
    pub t: i64,
}

impl HElement {
    pub fn identity() -> Self {
        HElement { mono: Monomial::one(), t: 0 }
    }

    pub fn new(mono: Monomial, t: i64) -> Self {
        HElement { mono, t }
    }

    pub fn t_pow(k: i64) -> Self {
        HElement { mono: Monomial::one(), t: k }
    }

    pub fn x(i: i64) -> Self {
        HElement { mono: Monomial::var(i, 1), t: 0 }
    }

    /// `(m t^k)(m' t^l) = m shift_k(m') t^{k+l}`.
    pub fn mul(&self, other: &HElement) -> HElement {
        HElement { mono: self.mono.mul(&other.mono.shift(self.t)), t: self.t + other.t }
    }

    pub fn inv(&self) -> HElement {
        HElement { mono: self.mono.inverse().shift(-self.t), t: -self.t }
    }

    pub fn is_identity(&self) -> bool {
        self.t == 0 && self.mono.is_one()
    }

    /// `f_p`, sending `x_i = t^i x t^-i` to `x_{pi}`.
    pub fn f(&self, p: i64) -> HElement {
        let mono = Monomial::from_pairs(self.mono.factors().iter().map(|&(i, e)| (p * i, e)));
        HElement { mono, t: p * self.t }
    }

    /// The preimage under the injective map `f_p`, if `self` lies in its image.
    pub fn f_preimage(&self, p: i64) -> Option<HElement> {
        if p == 0 || self.t % p != 0 || self.mono.factors().iter().any(|&(i, _)| i % p != 0) {
            return None;
        }
        let mono = Monomial::from_pairs(self.mono.factors().iter().map(|&(i, e)| (i / p, e)));
        Some(HElement { mono, t: self.t / p })
    }

    /// Whether `gamma` lies in `Gamma(z) = f_p^{-1}(z f_p(H) z^{-1})`.
    pub fn in_gamma(p: i64, z: &HElement, gamma: &HElement) -> bool {
        z.inv().mul(&gamma.f(p)).mul(z).f_preimage(p).is_some()
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} t^{}", self.mono, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        // x t^n x t^-n = t^n x t^-n x
        let x = HElement::x(0);
        for n in -3..=3 {
            let tn = HElement::t_pow(n);
            let conj = tn.mul(&x).mul(&tn.inv());
            assert_eq!(conj, HElement::x(n));
            assert_eq!(x.mul(&conj), conj.mul(&x));
        }
    }

    #[test]
    fn f_is_a_homomorphism() {
        let a = HElement::new(Monomial::from_pairs([(1, 2), (-1, -1)]), 3);
        let b = HElement::new(Monomial::var(2, 1), -1);
        for p in [-2, 2, 3] {
            assert_eq!(a.mul(&b).f(p), a.f(p).mul(&b.f(p)));
            assert_eq!(a.f(p).f_preimage(p), Some(a.clone()));
        }
        assert_eq!(HElement::t_pow(1).f_preimage(2), None);
    }

    #[test]
    fn gamma_of_three_kinds() {
        let p = 3;
        // z in H' outside the image: Gamma(z) = H'
        let z = HElement::x(1);
        assert!(HElement::in_gamma(p, &z, &HElement::x(5)));
        assert!(!HElement::in_gamma(p, &z, &HElement::t_pow(1)));
        // z a power of t: Gamma(z) contains t but not x
        let z = HElement::t_pow(1);
        assert!(HElement::in_gamma(p, &z, &HElement::t_pow(1)));
        assert!(!HElement::in_gamma(p, &z, &HElement::x(0)));
        // x_1 t = t x_0 lies in the double coset of t; x_2 t does not
        let z = HElement::new(Monomial::var(1, 1), 1);
        assert!(HElement::in_gamma(p, &z, &HElement::t_pow(1)));
        let z = HElement::new(Monomial::var(2, 1), 1);
        assert!(!HElement::in_gamma(p, &z, &HElement::t_pow(1)));
        assert!(!HElement::in_gamma(p, &z, &HElement::x(0)));
        assert!(HElement::in_gamma(p, &z, &HElement::identity()));
    }
}
