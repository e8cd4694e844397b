//! Injective homomorphisms `C -> G` together with a fixed right transversal,
//! so every `g` splits uniquely as `g = image(c) * rep` with `rep` canonical
//! for the coset `image(C) g`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::group::{Elem, GroupOracle};
use super::FreeProdError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    /// Source of order one, infinite target.
    Trivial,
    Finite {
        image: Vec<usize>,
        preimage: HashMap<usize, usize>,
        rep: Vec<usize>,
    },
    /// Generators go to distinct generators (or their inverses) of a free group.
    FreeFactor {
        letters: Vec<i32>,
        back: HashMap<i32, i32>,
    },
    /// `Z^k -> Z^m`; `hnf` rows are `unimod * images`, echelon with positive pivots.
    Lattice {
        images: Vec<Vec<i64>>,
        hnf: Vec<Vec<i64>>,
        pivots: Vec<usize>,
        unimod: Vec<Vec<i64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: GroupOracle,
    target: GroupOracle,
    kind: Kind,
}

impl Embedding {
    /// Builds the homomorphism determined by the images of the source
    /// generators, checking that it is well defined and injective. A
    /// transversal, when given, must contain exactly one element per right
    /// coset (finite targets only); otherwise the least element of each coset
    /// is used.
    pub fn new(
        source: &GroupOracle,
        target: &GroupOracle,
        gen_images: &[Elem],
        transversal: Option<&[Elem]>,
    ) -> Result<Self, FreeProdError> {
        let gens = source.generators();
        if gens.len() != gen_images.len() {
            return Err(FreeProdError::InvalidData(format!(
                "{} generators but {} images",
                gens.len(),
                gen_images.len()
            )));
        }
        if let Some(bad) = gen_images.iter().find(|g| !target.contains(g)) {
            return Err(FreeProdError::NotInFactor(format!("{bad:?} is not in {}", target.name())));
        }
        let kind = if source.order() == Some(1) && target.as_finite().is_none() {
            Kind::Trivial
        } else {
            match (source, target) {
                (GroupOracle::Finite(s), GroupOracle::Finite(t)) => {
                    let mut image = vec![usize::MAX; s.order()];
                    image[s.identity_index()] = t.identity_index();
                    let mut queue = VecDeque::from([s.identity_index()]);
                    while let Some(c) = queue.pop_front() {
                        for (k, &g) in s.generator_indices().iter().enumerate() {
                            let Elem::Fin(gi) = gen_images[k] else { unreachable!() };
                            let (d, v) = (s.mul_idx(c, g), t.mul_idx(image[c], gi));
                            if image[d] == usize::MAX {
                                image[d] = v;
                                queue.push_back(d);
                            } else if image[d] != v {
                                return Err(FreeProdError::OracleInconsistency(
                                    "generator images do not define a homomorphism".into(),
                                ));
                            }
                        }
                    }
                    let preimage: HashMap<usize, usize> = image.iter().enumerate().map(|(c, &g)| (g, c)).collect();
                    if preimage.len() != image.len() {
                        return Err(FreeProdError::OracleInconsistency("embedding is not injective".into()));
                    }
                    let rep = right_coset_reps(t, &image, transversal)?;
                    Kind::Finite { image, preimage, rep }
                }
                (GroupOracle::Free(_), GroupOracle::Free(_)) => {
                    let mut letters = Vec::new();
                    let mut back = HashMap::new();
                    for (k, g) in gen_images.iter().enumerate() {
                        match g {
                            Elem::Free(w) if w.len() == 1 && !back.contains_key(&w[0].abs()) => {
                                letters.push(w[0]);
                                back.insert(w[0].abs(), (k as i32 + 1) * w[0].signum());
                            }
                            _ => {
                                return Err(FreeProdError::Unsupported(
                                    "free-group subgroups must be free factors on generators".into(),
                                ))
                            }
                        }
                    }
                    Kind::FreeFactor { letters, back }
                }
                (GroupOracle::FreeAbelian(_), GroupOracle::FreeAbelian(t)) => {
                    let images: Vec<Vec<i64>> = gen_images
                        .iter()
                        .map(|g| match g {
                            Elem::Ab(v) => v.clone(),
                            _ => unreachable!(),
                        })
                        .collect();
                    let (hnf, pivots, unimod) = hermite(&images, t.generators.len());
                    if hnf.len() != images.len() {
                        return Err(FreeProdError::OracleInconsistency("embedding is not injective".into()));
                    }
                    Kind::Lattice { images, hnf, pivots, unimod }
                }
                _ => {
                    return Err(FreeProdError::Unsupported(format!(
                        "embedding {} into {}",
                        source.name(),
                        target.name()
                    )))
                }
            }
        };
        if transversal.is_some() && !matches!(kind, Kind::Finite { .. }) {
            return Err(FreeProdError::Unsupported("explicit transversals need finite groups".into()));
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), kind })
    }

    pub fn source(&self) -> &GroupOracle {
        &self.source
    }

    pub fn target(&self) -> &GroupOracle {
        &self.target
    }

    pub fn image(&self, c: &Elem) -> Elem {
        match (&self.kind, c) {
            (Kind::Trivial, _) => self.target.identity(),
            (Kind::Finite { image, .. }, Elem::Fin(i)) => Elem::Fin(image[*i]),
            (Kind::FreeFactor { letters, .. }, Elem::Free(w)) => {
                Elem::Free(w.iter().map(|&l| letters[l.unsigned_abs() as usize - 1] * l.signum()).collect())
            }
            (Kind::Lattice { images, .. }, Elem::Ab(v)) => {
                let m = self.target_rank();
                Elem::Ab((0..m).map(|j| v.iter().zip(images).map(|(c, row)| c * row[j]).sum()).collect())
            }
            _ => panic!("{c:?} is not in {}", self.source.name()),
        }
    }

    pub fn preimage(&self, g: &Elem) -> Option<Elem> {
        let (c, rep) = self.split(g);
        self.target.is_identity(&rep).then_some(c)
    }

    pub fn contains(&self, g: &Elem) -> bool {
        self.preimage(g).is_some()
    }

    /// `g = image(c) * rep`.
    pub fn split(&self, g: &Elem) -> (Elem, Elem) {
        match (&self.kind, g) {
            (Kind::Trivial, _) => (self.source.identity(), g.clone()),
            (Kind::Finite { preimage, rep, .. }, Elem::Fin(i)) => {
                let t = self.target.as_finite().expect("finite target");
                let r = rep[*i];
                let h = t.mul_idx(*i, t.inv_idx(r));
                (Elem::Fin(preimage[&h]), Elem::Fin(r))
            }
            (Kind::FreeFactor { back, .. }, Elem::Free(w)) => {
                let cut = w.iter().position(|l| !back.contains_key(&l.abs())).unwrap_or(w.len());
                let c = w[..cut].iter().map(|l| back[&l.abs()] * l.signum()).collect();
                (Elem::Free(c), Elem::Free(w[cut..].to_vec()))
            }
            (Kind::Lattice { hnf, pivots, unimod, .. }, Elem::Ab(v)) => {
                let mut r = v.clone();
                let mut coeffs = vec![0i64; hnf.len()];
                for (k, (row, &p)) in hnf.iter().zip(pivots).enumerate() {
                    let q = r[p].div_euclid(row[p]);
                    coeffs[k] = q;
                    for (x, y) in r.iter_mut().zip(row) {
                        *x -= q * y;
                    }
                }
                let k = self.source_rank();
                let c = (0..k).map(|j| coeffs.iter().zip(unimod).map(|(q, u)| q * u[j]).sum()).collect();
                (Elem::Ab(c), Elem::Ab(r))
            }
            _ => panic!("{g:?} is not in {}", self.target.name()),
        }
    }

    /// The canonical representative of `image(C) g`.
    pub fn rep(&self, g: &Elem) -> Elem {
        self.split(g).1
    }

    /// All transversal elements, identity first, when the index is finite.
    pub fn transversal(&self) -> Option<Vec<Elem>> {
        let mut reps = match &self.kind {
            Kind::Finite { rep, .. } => {
                let mut r: Vec<usize> = rep.clone();
                r.sort_unstable();
                r.dedup();
                r.into_iter().map(Elem::Fin).collect()
            }
            Kind::Trivial => self.target.elements()?,
            Kind::FreeFactor { letters, .. } => {
                let GroupOracle::Free(t) = &self.target else { unreachable!() };
                if letters.len() != t.generators.len() {
                    return None;
                }
                vec![self.target.identity()]
            }
            Kind::Lattice { hnf, pivots, .. } => {
                let m = self.target_rank();
                if hnf.len() != m {
                    return None;
                }
                let mut out = vec![vec![0i64; m]];
                for (row, &p) in hnf.iter().zip(pivots) {
                    out = out
                        .into_iter()
                        .flat_map(|v| {
                            (0..row[p]).map(move |x| {
                                let mut w = v.clone();
                                w[p] = x;
                                w
                            })
                        })
                        .collect();
                }
                out.into_iter().map(Elem::Ab).collect()
            }
        };
        let id = self.target.identity();
        reps.sort_by_key(|e| *e != id);
        Some(reps)
    }

    pub fn index(&self) -> Option<usize> {
        self.transversal().map(|t| t.len())
    }

    /// The image subgroup, when finite.
    pub fn image_elements(&self) -> Option<Vec<Elem>> {
        self.source.elements().map(|cs| cs.iter().map(|c| self.image(c)).collect())
    }

    /// Images of the source generators, in generator order.
    pub fn generator_images(&self) -> Vec<Elem> {
        self.source.generators().iter().map(|g| self.image(g)).collect()
    }

    fn source_rank(&self) -> usize {
        match &self.source {
            GroupOracle::FreeAbelian(g) => g.generators.len(),
            _ => 0,
        }
    }

    fn target_rank(&self) -> usize {
        match &self.target {
            GroupOracle::FreeAbelian(g) => g.generators.len(),
            _ => 0,
        }
    }
}

fn right_coset_reps(
    t: &super::group::FiniteGroup,
    image: &[usize],
    transversal: Option<&[Elem]>,
) -> Result<Vec<usize>, FreeProdError> {
    let n = t.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = image.iter().map(|&h| t.mul_idx(h, g)).collect();
        for &m in &members {
            coset_of[m] = cosets.len();
        }
        cosets.push(members);
    }
    let mut chosen: BTreeMap<usize, usize> = BTreeMap::new();
    match transversal {
        Some(list) => {
            for e in list {
                let Elem::Fin(g) = e else {
                    return Err(FreeProdError::InvalidData("transversal element of wrong kind".into()));
                };
                if *g >= n || chosen.insert(coset_of[*g], *g).is_some() {
                    return Err(FreeProdError::InvalidData("transversal hits a coset twice".into()));
                }
            }
            if chosen.len() != cosets.len() {
                return Err(FreeProdError::InvalidData("transversal misses a coset".into()));
            }
            let id_coset = coset_of[t.identity_index()];
            if chosen[&id_coset] != t.identity_index() {
                return Err(FreeProdError::InvalidData("transversal must contain the identity".into()));
            }
        }
        None => {
            for (k, members) in cosets.iter().enumerate() {
                let least = if k == coset_of[t.identity_index()] {
                    t.identity_index()
                } else {
                    *members.iter().min().expect("nonempty coset")
                };
                chosen.insert(k, least);
            }
        }
    }
    Ok((0..n).map(|g| chosen[&coset_of[g]]).collect())
}

/// Integer row echelon form of the row lattice of `rows`: returns the nonzero
/// rows (positive pivots, entries above pivots reduced), their pivot columns,
/// and the transform expressing each output row in terms of the input rows.
fn hermite(rows: &[Vec<i64>], m: usize) -> (Vec<Vec<i64>>, Vec<usize>, Vec<Vec<i64>>) {
    let k = rows.len();
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut u: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m {
        if r == k {
            break;
        }
        loop {
            let Some(best) = (r..k).filter(|&i| a[i][col] != 0).min_by_key(|&i| a[i][col].abs()) else {
                break;
            };
            a.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..k {
                let q = a[i][col].div_euclid(a[r][col]);
                if q != 0 {
                    for j in 0..m {
                        a[i][j] -= q * a[r][j];
                    }
                    for j in 0..k {
                        u[i][j] -= q * u[r][j];
                    }
                }
                done &= a[i][col] == 0;
            }
            if done {
                break;
            }
        }
        if a[r][col] == 0 {
            continue;
        }
        if a[r][col] < 0 {
            a[r].iter_mut().for_each(|x| *x = -*x);
            u[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = a[i][col].div_euclid(a[r][col]);
            for j in 0..m {
                a[i][j] -= q * a[r][j];
            }
            for j in 0..k {
                u[i][j] -= q * u[r][j];
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    u.truncate(r);
    (a, pivots, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprod::group::FiniteGroup;

    #[test]
    fn finite_split() {
        let s3 = GroupOracle::Finite(FiniteGroup::s3());
        let z2 = GroupOracle::Finite(FiniteGroup::cyclic("Z2", "h", 2));
        let e = Embedding::new(&z2, &s3, &[s3.parse("(12)").unwrap()], None).unwrap();
        assert_eq!(e.index(), Some(3));
        for g in s3.elements().unwrap() {
            let (c, r) = e.split(&g);
            assert_eq!(s3.mul(&e.image(&c), &r), g);
            assert_eq!(e.rep(&s3.mul(&e.image(&z2.parse("h").unwrap()), &g)), r);
        }
        assert!(e.contains(&s3.parse("(12)").unwrap()));
        assert!(!e.contains(&s3.parse("(13)").unwrap()));
    }

    #[test]
    fn non_homomorphism_rejected() {
        let z3 = GroupOracle::Finite(FiniteGroup::cyclic("Z3", "g", 3));
        let s3 = GroupOracle::Finite(FiniteGroup::s3());
        assert!(Embedding::new(&z3, &s3, &[s3.parse("(12)").unwrap()], None).is_err());
        assert!(Embedding::new(&z3, &s3, &[s3.parse("(123)").unwrap()], None).is_ok());
    }

    #[test]
    fn free_factor_split() {
        let f1 = GroupOracle::free("F1", &["c"]);
        let f2 = GroupOracle::free("F2", &["a", "b"]);
        let e = Embedding::new(&f1, &f2, &[f2.parse("b^-1").unwrap()], None).unwrap();
        let g = f2.parse("b^2 a b").unwrap();
        let (c, r) = e.split(&g);
        assert_eq!(f1.render(&c), "c^-2");
        assert_eq!(f2.render(&r), "a b");
        assert_eq!(f2.mul(&e.image(&c), &r), g);
        assert!(Embedding::new(&f1, &f2, &[f2.parse("a b").unwrap()], None).is_err());
    }

    #[test]
    fn lattice_split() {
        let z = GroupOracle::free_abelian("C", &["c"]);
        let za = GroupOracle::free_abelian("A", &["a"]);
        let beta = Embedding::new(&z, &za, &[za.parse("a^2").unwrap()], None).unwrap();
        let (c, r) = beta.split(&za.parse("a^-3").unwrap());
        assert_eq!((c, r), (Elem::Ab(vec![-2]), Elem::Ab(vec![1])));
        assert_eq!(beta.index(), Some(2));
        let z2 = GroupOracle::free_abelian("Z2", &["x", "y"]);
        let e = Embedding::new(&z2, &z2, &[Elem::Ab(vec![2, 1]), Elem::Ab(vec![0, 3])], None).unwrap();
        assert_eq!(e.index(), Some(6));
        for v in [vec![5, -7], vec![-1, 2], vec![0, 0]] {
            let g = Elem::Ab(v);
            let (c, r) = e.split(&g);
            assert_eq!(z2.mul(&e.image(&c), &r), g);
        }
    }
}
