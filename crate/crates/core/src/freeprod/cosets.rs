//! Double cosets in finite groups and the subgroups `Gamma(x)` with their
//! conjugation maps `lambda_x`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::embed::Embedding;
use super::group::{Elem, FiniteGroup};
use super::FreeProdError;

/// The orbits `H x K` of `H x K` acting on `set` (default: the whole group).
/// Orbits and their members are sorted by element index.
pub fn double_cosets(
    g: &FiniteGroup,
    left: &[usize],
    right: &[usize],
    set: Option<&[usize]>,
) -> Result<Vec<Vec<usize>>, FreeProdError> {
    for h in [left, right] {
        if h.iter().any(|&x| x >= g.order()) || !g.is_subgroup(h) {
            return Err(FreeProdError::InvalidData("double cosets need subgroups".into()));
        }
    }
    let universe: BTreeSet<usize> = match set {
        Some(s) => s.iter().copied().collect(),
        None => (0..g.order()).collect(),
    };
    let mut remaining = universe.clone();
    let mut orbits = Vec::new();
    while let Some(&x) = remaining.iter().next() {
        let orbit: BTreeSet<usize> =
            left.iter().flat_map(|&h| right.iter().map(move |&k| g.mul_idx(g.mul_idx(h, x), k))).collect();
        if !orbit.is_subset(&universe) {
            return Err(FreeProdError::InvalidData("set is not stable under the two subgroups".into()));
        }
        for y in &orbit {
            remaining.remove(y);
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaData {
    /// `Gamma(x) = beta^-1(x alpha(H) x^-1)`.
    pub gamma: Vec<Elem>,
    /// `(gamma, lambda_x(gamma))` with `beta(gamma) = x alpha(lambda_x(gamma)) x^-1`.
    pub lambda: Vec<(Elem, Elem)>,
    /// `Gamma'(x^-1) = alpha^-1(x^-1 beta(H) x)`.
    pub gamma_prime: Vec<Elem>,
    pub identity_holds: bool,
    pub bijective: bool,
    pub homomorphism: bool,
}

/// Computes `Gamma(x)` and `lambda_x` for embeddings `alpha, beta: H -> G`
/// with `H` finite, verifying the defining identity and that `lambda_x` is
/// an isomorphism onto `Gamma'(x^-1)`.
pub fn gamma_data(alpha: &Embedding, beta: &Embedding, x: &Elem) -> Result<GammaData, FreeProdError> {
    let (h, g) = (alpha.source(), alpha.target());
    if beta.source() != h || beta.target() != g {
        return Err(FreeProdError::InvalidData("alpha and beta must share source and target".into()));
    }
    if !g.contains(x) {
        return Err(FreeProdError::NotInFactor(format!("{x:?} is not in {}", g.name())));
    }
    let hs = h.elements().ok_or_else(|| FreeProdError::Unsupported("Gamma(x) needs a finite H".into()))?;
    let xi = g.inv(x);
    let conj_back = |y: &Elem| g.mul(&g.mul(&xi, y), x);
    let conj = |y: &Elem| g.mul(&g.mul(x, y), &xi);

    let mut lambda = Vec::new();
    for c in &hs {
        if let Some(l) = alpha.preimage(&conj_back(&beta.image(c))) {
            lambda.push((c.clone(), l));
        }
    }
    let gamma: Vec<Elem> = lambda.iter().map(|(c, _)| c.clone()).collect();
    let gamma_prime: Vec<Elem> = hs.iter().filter(|c| beta.contains(&conj(&alpha.image(c)))).cloned().collect();

    let identity_holds = lambda.iter().all(|(c, l)| beta.image(c) == conj(&alpha.image(l)));
    let images: BTreeSet<&Elem> = lambda.iter().map(|(_, l)| l).collect();
    let bijective =
        images.len() == lambda.len() && images == gamma_prime.iter().collect::<BTreeSet<_>>();
    let lookup = |c: &Elem| lambda.iter().find(|(d, _)| d == c).map(|(_, l)| l.clone());
    let homomorphism = lambda.iter().all(|(a, la)| {
        lambda.iter().all(|(b, lb)| lookup(&h.mul(a, b)) == Some(h.mul(la, lb)))
    });
    if !(identity_holds && bijective && homomorphism) {
        return Err(FreeProdError::OracleInconsistency(format!(
            "lambda_x check failed (identity {identity_holds}, bijective {bijective}, homomorphism {homomorphism})"
        )));
    }
    Ok(GammaData { gamma, lambda, gamma_prime, identity_holds, bijective, homomorphism })
}

/// `H(x, y) = Gamma_1(x) ∩ Gamma_2(y)`.
pub fn intersection(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let bs: BTreeSet<&Elem> = b.iter().collect();
    a.iter().filter(|e| bs.contains(e)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprod::group::GroupOracle;

    fn s3_and_h() -> (GroupOracle, GroupOracle, Embedding) {
        let s3 = GroupOracle::Finite(FiniteGroup::s3());
        let h = GroupOracle::Finite(FiniteGroup::cyclic("H", "h", 2));
        let e = Embedding::new(&h, &s3, &[s3.parse("(12)").unwrap()], None).unwrap();
        (s3, h, e)
    }

    #[test]
    fn s3_double_cosets() {
        let g = FiniteGroup::s3();
        let h = g.generated(&[g.index_of("(12)").unwrap()]);
        let orbits = double_cosets(&g, &h, &h, None).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [2, 4]);
        let complement: Vec<usize> = (0..6).filter(|x| !h.contains(x)).collect();
        assert_eq!(double_cosets(&g, &h, &h, Some(&complement)).unwrap().len(), 1);
        let trivial = [g.identity_index()];
        assert_eq!(double_cosets(&g, &trivial, &trivial, None).unwrap().len(), 6);
        assert!(double_cosets(&g, &h, &h, Some(&[g.identity_index()])).is_err());
    }

    #[test]
    fn gamma_trivial_for_transposition() {
        let (s3, h, e) = s3_and_h();
        let d = gamma_data(&e, &e, &s3.parse("(13)").unwrap()).unwrap();
        assert_eq!(d.gamma, vec![h.identity()]);
        let d = gamma_data(&e, &e, &s3.identity()).unwrap();
        assert_eq!(d.gamma.len(), 2);
        assert!(d.lambda.iter().all(|(c, l)| c == l));
    }
}
