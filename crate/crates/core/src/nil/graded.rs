//! The carrier `M ⊕ MS ⊕ MS² ⊕ ...` cut off at a fixed degree.
//!
//! Since every letter is a rank-one generator, `MS^k` splits as a sum over
//! type-compatible words `u` of length `k` of copies of the target component
//! of `u`. Degree 0 is `M` itself, indexed by the empty word.

use crate::scalar::Scalar;

use super::{NilError, NilObject};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCarrier {
    /// `(word, dimension)` per summand, by degree then lexicographically.
    pub components: Vec<(Vec<usize>, usize)>,
    pub max_degree: usize,
}

impl GradedCarrier {
    pub fn new<S: Scalar>(x: &NilObject<S>, max_degree: usize) -> Self {
        let letters = x.ring().letters();
        let mut components = vec![(vec![], x.total_dim())];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..max_degree {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..letters.len())
                        .filter(move |&i| w.last().map_or(true, |&p| letters[p].dst == letters[i].src))
                        .map(move |i| {
                            let mut w = w.clone();
                            w.push(i);
                            w
                        })
                })
                .collect();
            components.extend(layer.iter().map(|w| (w.clone(), x.dims()[letters[*w.last().expect("nonempty")].dst])));
        }
        GradedCarrier { components, max_degree }
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_degree + 1];
        for (w, d) in &self.components {
            out[w.len()] += d;
        }
        out
    }

    /// `f^k(v)` for `v` in the total space, as its components in degree `k`.
    pub fn power_image<S: Scalar>(&self, x: &NilObject<S>, v: &[S], k: usize) -> Result<Vec<(Vec<usize>, Vec<S>)>, NilError> {
        if k > self.max_degree {
            return Err(NilError::InvalidData(format!("degree {k} beyond the cutoff {}", self.max_degree)));
        }
        if v.len() != x.total_dim() {
            return Err(NilError::ShapeMismatch(format!("vector of length {}", v.len())));
        }
        if k == 0 {
            return Ok(vec![(vec![], v.to_vec())]);
        }
        let off = x.offsets();
        self.components
            .iter()
            .filter(|(w, _)| w.len() == k)
            .map(|(w, d)| {
                let dst = x.ring().letters()[*w.last().expect("nonempty")].dst;
                let full = x.word_matrix(w)?.apply(v);
                Ok((w.clone(), full[off[dst]..off[dst] + d].to_vec()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::nil::BlockRing;
    use num_bigint::BigInt;
    use num_traits::Zero;

    #[test]
    fn carrier_dims_and_vanishing() {
        let ring = BlockRing::with_letters(&["a", "b"], &[("u", "a", "b"), ("v", "b", "b")]).unwrap();
        let one = || Matrix::from_rows(vec![vec![BigInt::from(1)]], 1).unwrap();
        let x = NilObject::new(ring, vec![1, 1], vec![one(), Matrix::zeros(1, 1)]).unwrap();
        let c = GradedCarrier::new(&x, 3);
        // degree 1: u, v; degree 2: uv, vv; degree 3: uvv, vvv
        assert_eq!(c.degree_dims(), vec![2, 2, 2, 2]);
        let v = vec![BigInt::from(5), BigInt::from(0)];
        let img = c.power_image(&x, &v, 1).unwrap();
        assert!(img.iter().any(|(_, comp)| comp == &vec![BigInt::from(5)]));
        assert!(c.power_image(&x, &v, 2).unwrap().iter().all(|(_, comp)| comp.iter().all(Zero::is_zero)));
    }
}
