//! Relations among the kernel generators: vectors `(c_0, ..., c_{n-1})` with
//! `sum_i W_i c_i = 0`, their complexity, and the descent step that lowers it.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::kernel::{w_pair, PairElement};
use super::laurent::LaurentPoly;
use super::skew::{Extended, ZHElement};
use super::GroupHError;
use crate::scalar::Ring;

type A<R> = LaurentPoly<R>;

/// `F_n(c) = sum_{i<n} W_i c_i`.
pub fn f_n<R: Ring>(c: &[ZHElement<R>]) -> Result<PairElement<R>, GroupHError> {
    let mut acc = PairElement::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        acc = acc.add(&w_pair::<R>(i as u32)?.mul_right(ci));
    }
    Ok(acc)
}

/// An element of `R_n = ker F_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationVector<R> {
    c: Vec<ZHElement<R>>,
}

impl<R: Ring> RelationVector<R> {
    /// Validates `F_n(c) = 0`.
    pub fn new(c: Vec<ZHElement<R>>) -> Result<Self, GroupHError> {
        if c.is_empty() {
            return Err(GroupHError::InvalidArgument("relation vector needs arity >= 1".into()));
        }
        if !f_n(&c)?.is_zero() {
            return Err(GroupHError::NotARelation);
        }
        Ok(RelationVector { c })
    }

    pub fn zero(n: usize) -> Self {
        RelationVector { c: vec![ZHElement::zero(); n.max(1)] }
    }

    pub fn arity(&self) -> usize {
        self.c.len()
    }

    pub fn entries(&self) -> &[ZHElement<R>] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// The last projection `pi_n`.
    pub fn last(&self) -> &ZHElement<R> {
        self.c.last().expect("arity >= 1")
    }

    /// Right multiplication of every entry by `r`; stays in `R_n`.
    pub fn mul_right(&self, r: &ZHElement<R>) -> Self {
        RelationVector { c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupHError> {
        self.check_arity(other)?;
        Ok(RelationVector { c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupHError> {
        self.check_arity(other)?;
        Ok(RelationVector { c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() })
    }

    /// Re-validates membership in `R_n`.
    pub fn validate(&self) -> Result<(), GroupHError> {
        if f_n(&self.c)?.is_zero() {
            Ok(())
        } else {
            Err(GroupHError::NotARelation)
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), GroupHError> {
        if self.arity() != other.arity() {
            return Err(GroupHError::InvalidArgument(format!(
                "arity mismatch: {} vs {}",
                self.arity(),
                other.arity()
            )));
        }
        Ok(())
    }
}

/// `X(p, q) = W_q z_{-p} - W_p z_{-q} - W_{q-p-1} t^{p+1} z_1 y_0 ... y_{-p}`,
/// viewed as a vector of arity `n > q`.
pub fn x_relation<R: Ring>(p: usize, q: usize, n: usize) -> Result<RelationVector<R>, GroupHError> {
    if p >= q || q >= n {
        return Err(GroupHError::InvalidArgument(format!(
            "X(p, q) needs 0 <= p < q < n, got p={p} q={q} n={n}"
        )));
    }
    let (pi, qi) = (p as i64, q as i64);
    let mut c = vec![ZHElement::zero(); n];
    c[q] = ZHElement::from_a(A::z(-pi));
    c[p] = ZHElement::from_a(-A::z(-qi));
    let tail = ZHElement::term(pi + 1, A::z(1) * A::y_desc(0, -pi));
    c[q - p - 1] = &c[q - p - 1] - &tail;
    RelationVector::new(c)
}

/// Writes `a = sum_{j<n} z_{-j} a_j` when `a` lies in the ideal
/// `I_n = (z_0, z_{-1}, ..., z_{1-n})`, and returns `None` otherwise.
///
/// Works by divided differences, substituting `x_{-j} -> x_{1-j}` for
/// `j = n, n-1, ..., 1`; the final residue (all of `x_{-1}, ..., x_{-n}`
/// set to `x_0`) vanishes exactly when `a` is in the ideal.
pub fn ideal_decompose<R: Ring>(a: &A<R>, n: usize) -> Option<Vec<A<R>>> {
    let mut coeffs = vec![A::zero(); n];
    let mut rest = a.clone();
    for j in (1..=n as i64).rev() {
        coeffs[(j - 1) as usize] = rest.divided_difference(-j, 1 - j);
        rest = rest.substitute(-j, 1 - j);
    }
    rest.is_zero().then_some(coeffs)
}

/// `sum_j z_{-j} a_j`.
pub fn ideal_combine<R: Ring>(coeffs: &[A<R>]) -> A<R> {
    coeffs.iter().enumerate().fold(A::zero(), |acc, (j, a)| acc + &A::z(-(j as i64)) * a)
}

/// `(alpha, beta, gamma)`: valuation of the last entry, the lowest valuation,
/// and the largest index attaining it.
///
/// Ordered so that a larger `alpha`, then a larger `beta`, then a smaller
/// `gamma` means *smaller* complexity; this is the lexicographic order on
/// `(d - alpha, alpha - beta, gamma)` for any fixed `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Complexity {
    pub alpha: Extended,
    pub beta: i64,
    pub gamma: usize,
}

impl Ord for Complexity {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .alpha
            .cmp(&self.alpha)
            .then(other.beta.cmp(&self.beta))
            .then(self.gamma.cmp(&other.gamma))
    }
}

impl PartialOrd for Complexity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

pub fn complexity<R: Ring>(x: &RelationVector<R>) -> Result<Complexity, GroupHError> {
    let vals: Vec<Extended> = x.c.iter().map(|c| c.valuation()).collect();
    let beta = vals
        .iter()
        .filter_map(|v| v.finite())
        .min()
        .ok_or_else(|| GroupHError::InvalidArgument("complexity of the zero vector".into()))?;
    let gamma = vals.iter().rposition(|v| *v == Extended::Finite(beta)).expect("beta attained");
    Ok(Complexity { alpha: *vals.last().expect("arity >= 1"), beta, gamma })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceStep<R> {
    pub vector: RelationVector<R>,
    /// Set when no further step applies (zero vector, or `gamma = 0`).
    pub terminal: bool,
    pub before: Option<Complexity>,
    pub after: Option<Complexity>,
}

/// One descent step `X' = X - sum_{j<gamma} X(j, gamma) a_j t^beta`, where
/// `c_{gamma,beta} = sum_j z_{-j} a_j` is the lowest-layer left coefficient of
/// `c_gamma` decomposed in `I_gamma`.
///
/// Asserts the lowest-layer identity `sum_{k<=gamma} z_{-k} c_{k,beta} = 0`,
/// membership `c_{gamma,beta} in I_gamma`, and strict decrease of complexity;
/// any failure is an invariant violation.
pub fn reduce_step<R: Ring>(x: &RelationVector<R>) -> Result<ReduceStep<R>, GroupHError> {
    if x.is_zero() {
        return Ok(ReduceStep { vector: x.clone(), terminal: true, before: None, after: None });
    }
    let chi = complexity(x)?;
    let (beta, gamma) = (chi.beta, chi.gamma);
    let layer: Vec<A<R>> = x.c[..=gamma].iter().map(|c| c.left_coeff(beta)).collect();
    let identity = ideal_combine(&layer);
    if !identity.is_zero() {
        return Err(GroupHError::InvariantViolation(format!(
            "lowest layer identity fails at beta={beta}, gamma={gamma}"
        )));
    }
    if gamma == 0 {
        return Ok(ReduceStep { vector: x.clone(), terminal: true, before: Some(chi), after: Some(chi) });
    }
    let lead = &layer[gamma];
    let a = ideal_decompose(lead, gamma).ok_or_else(|| {
        GroupHError::InvariantViolation(format!("c_(gamma,beta) not in I_{gamma}"))
    })?;
    let n = x.arity();
    let mut next = x.clone();
    for (j, aj) in a.iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        // a_j t^beta = t^beta shift_{-beta}(a_j)
        let factor = ZHElement::term(beta, aj.shift(-beta));
        next = next.sub(&x_relation::<R>(j, gamma, n)?.mul_right(&factor))?;
    }
    next.validate()?;
    let after = if next.is_zero() { None } else { Some(complexity(&next)?) };
    if let Some(new) = after {
        if new >= chi {
            return Err(GroupHError::InvariantViolation(format!(
                "complexity did not decrease: {chi} -> {new}"
            )));
        }
    }
    Ok(ReduceStep { vector: next, terminal: false, before: Some(chi), after })
}

/// Iterates [`reduce_step`] until a terminal vector, returning the complexity trace.
pub fn reduce_fully<R: Ring>(
    x: &RelationVector<R>,
    max_steps: usize,
) -> Result<(RelationVector<R>, Vec<Complexity>), GroupHError> {
    let mut cur = x.clone();
    let mut trace = Vec::new();
    for _ in 0..max_steps {
        let step = reduce_step(&cur)?;
        if let Some(c) = step.before {
            if trace.last() != Some(&c) {
                trace.push(c);
            }
        }
        if step.terminal {
            return Ok((step.vector, trace));
        }
        cur = step.vector;
    }
    Err(GroupHError::ResourceLimit(format!("reduction did not terminate in {max_steps} steps")))
}

/// Finite certificates that `1` is not in the right ideal `J_n` generated by `I_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonCoherenceCertificate {
    pub n: usize,
    /// Products `z_{-j} r` checked to collapse to zero.
    pub ideal_products_checked: usize,
    pub ideal_collapses_to_zero: bool,
    pub unit_survives: bool,
    /// `pi_n(X(p, n-1)) = z_{-p}` for all `p < n - 1`.
    pub projections_ok: bool,
}

impl NonCoherenceCertificate {
    pub fn passed(&self) -> bool {
        self.ideal_collapses_to_zero && self.unit_survives && self.projections_ok
    }
}

/// The right ideal of `Z[H]` generated by `I_n = (z_0, z_{-1}, ..., z_{1-n})`.
/// Distinct from the word sets of the admissible-set sieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RightIdealJn {
    pub n: usize,
}

impl RightIdealJn {
    pub fn new(n: usize) -> Self {
        RightIdealJn { n }
    }

    pub fn generators<R: Ring>(&self) -> Vec<ZHElement<R>> {
        (0..self.n).map(|j| ZHElement::from_a(A::z(-(j as i64)))).collect()
    }

    /// Checks `collapse(z_{-j} r) = 0` for every generator and every sample
    /// `r` (and `r = 1`), `collapse(1) != 0`, and `pi_n(X(p, n-1)) = z_{-p}`.
    pub fn certificate<R: Ring>(
        &self,
        samples: &[ZHElement<R>],
    ) -> Result<NonCoherenceCertificate, GroupHError> {
        let n = self.n;
        let one = ZHElement::<R>::one();
        let mut checked = 0;
        let mut zero = true;
        for gen in self.generators::<R>() {
            for r in samples.iter().chain(std::iter::once(&one)) {
                checked += 1;
                zero &= (&gen * r).eval_collapse().is_zero();
            }
        }
        let unit_survives = !one.eval_collapse().is_zero();
        let mut projections_ok = true;
        for p in 0..n.saturating_sub(1) {
            let x = x_relation::<R>(p, n - 1, n)?;
            projections_ok &= *x.last() == ZHElement::from_a(A::z(-(p as i64)));
        }
        Ok(NonCoherenceCertificate {
            n,
            ideal_products_checked: checked,
            ideal_collapses_to_zero: zero,
            unit_survives,
            projections_ok,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type ZH = ZHElement<BigInt>;
    type Rv = RelationVector<BigInt>;

    fn int(v: i64) -> A<BigInt> {
        A::constant(BigInt::from(v))
    }

    #[test]
    fn first_relations_hold() {
        let x: Rv = x_relation(0, 1, 2).unwrap();
        // W_1 z_0 - W_0 z_{-1} - W_0 t z_1 y_0
        assert_eq!(x.entries()[1], ZH::from_a(A::z(0)));
        assert_eq!(x.entries()[0], ZH::from_a(-A::z(-1)) - ZH::term(1, A::z(1) * A::y(0)));
        assert!(x_relation::<BigInt>(1, 2, 3).is_ok());
        assert_eq!(*x_relation::<BigInt>(2, 4, 5).unwrap().last(), ZH::from_a(A::z(-2)));
    }

    #[test]
    fn relation_argument_errors() {
        assert!(matches!(x_relation::<BigInt>(1, 1, 3), Err(GroupHError::InvalidArgument(_))));
        assert!(matches!(x_relation::<BigInt>(0, 3, 3), Err(GroupHError::InvalidArgument(_))));
        let bogus = vec![ZH::one(), ZH::zero()];
        assert_eq!(Rv::new(bogus), Err(GroupHError::NotARelation));
    }

    #[test]
    fn decomposition_examples() {
        let a = A::<BigInt>::x(-2) - A::x(0);
        let d = ideal_decompose(&a, 3).unwrap();
        assert_eq!(d, vec![int(1), int(1), int(0)]);
        assert!(ideal_decompose(&A::<BigInt>::x(1), 2).is_none());
        let b = A::<BigInt>::z(-3) * A::x(3);
        let d = ideal_decompose(&b, 4).unwrap();
        assert_eq!(ideal_combine(&d), b);
        // negative exponents
        let c = A::<BigInt>::monomial(super::super::laurent::Monomial::var(-1, -2), BigInt::from(1))
            - A::monomial(super::super::laurent::Monomial::var(0, -2), BigInt::from(1));
        let d = ideal_decompose(&c, 1).unwrap();
        assert_eq!(ideal_combine(&d), c);
    }

    #[test]
    fn complexity_examples() {
        let x: Rv = x_relation(0, 3, 4).unwrap();
        assert_eq!(complexity(&x).unwrap().alpha, Extended::Finite(0));
        let single = RelationVector { c: vec![ZH::term(2, A::z(1))] };
        assert_eq!(
            complexity(&single).unwrap(),
            Complexity { alpha: Extended::Finite(2), beta: 2, gamma: 0 }
        );
        assert!(complexity(&Rv::zero(3)).is_err());
    }

    #[test]
    fn complexity_order() {
        let c = |a: i64, b: i64, g: usize| Complexity { alpha: Extended::Finite(a), beta: b, gamma: g };
        assert!(c(3, 0, 2) < c(2, 0, 2));
        assert!(c(2, 1, 2) < c(2, 0, 2));
        assert!(c(2, 0, 1) < c(2, 0, 2));
        let inf = Complexity { alpha: Extended::PosInfinity, beta: 0, gamma: 3 };
        assert!(inf < c(100, 0, 0));
    }

    #[test]
    fn reduce_lowers_complexity() {
        let x: Rv = x_relation(0, 2, 4).unwrap().mul_right(&ZH::t_pow(3));
        let step = reduce_step(&x).unwrap();
        assert!(!step.terminal);
        assert!(step.after.map_or(true, |a| a < step.before.unwrap()));
        let (end, trace) = reduce_fully(&x, 200).unwrap();
        assert!(end.is_zero());
        assert!(trace.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn zero_vector_is_terminal() {
        let step = reduce_step(&Rv::zero(3)).unwrap();
        assert!(step.terminal);
        assert_eq!(step.vector, Rv::zero(3));
    }

    #[test]
    fn certificates_small_n() {
        let samples = vec![ZH::term(1, A::x(2)), ZH::term(-2, A::y(0))];
        for n in 1..=4 {
            assert!(RightIdealJn::new(n).certificate(&samples).unwrap().passed());
        }
    }
}
