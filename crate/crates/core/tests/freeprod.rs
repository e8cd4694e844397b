use std::collections::{BTreeMap, BTreeSet};

use genfree::freeprod::amalgam::RawLetter;
use genfree::freeprod::{
    double_cosets, gamma_data, lemma16_check, samples, Amalgam, Construction, Elem, Embedding, FiniteGroup,
    GroupOracle, GroupRingElement, Hnn, HnnLetter, SData,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_amalgam_word(a: &Amalgam, rng: &mut ChaCha8Rng, max: usize) -> Vec<RawLetter> {
    let len = rng.gen_range(0..=max);
    (0..len)
        .map(|_| {
            let k = rng.gen_range(0..2);
            let els = a.factors[k].elements().unwrap();
            (k, els.choose(rng).unwrap().clone())
        })
        .collect()
}

fn random_hnn_word(h: &Hnn, rng: &mut ChaCha8Rng, max: usize) -> Vec<HnnLetter> {
    let len = rng.gen_range(0..=max);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                HnnLetter::T(if rng.gen_bool(0.5) { 1 } else { -1 })
            } else {
                let g = h.base.generators()[0].clone();
                HnnLetter::G(h.base.pow(&g, rng.gen_range(-3..=3)))
            }
        })
        .collect()
}

/// Affine maps `x -> p x + q`, composed as functions.
type Affine = (BigRational, BigRational);

fn compose(f: &Affine, g: &Affine) -> Affine {
    (&f.0 * &g.0, &f.0 * &g.1 + &f.1)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn identity() -> Affine {
    (BigRational::one(), BigRational::zero())
}

/// `s: x -> -x`, `r: x -> 1 - x`; faithful on `Z/2 * Z/2`.
fn dihedral_model(w: &[RawLetter]) -> Affine {
    w.iter().fold(identity(), |acc, (k, g)| {
        let m = match (k, g) {
            (_, Elem::Fin(0)) => identity(),
            (0, _) => (rat(-1, 1), rat(0, 1)),
            _ => (rat(-1, 1), rat(1, 1)),
        };
        compose(&acc, &m)
    })
}

/// `a: x -> x + 1`, `t: x -> x / 2`; faithful on `BS(1, 2)`.
fn bs_model(w: &[HnnLetter]) -> Affine {
    w.iter().fold(identity(), |acc, l| {
        let m = match l {
            HnnLetter::G(Elem::Ab(v)) => (rat(1, 1), rat(v[0], 1)),
            HnnLetter::T(1) => (rat(1, 2), rat(0, 1)),
            HnnLetter::T(_) => (rat(2, 1), rat(0, 1)),
            _ => unreachable!(),
        };
        compose(&acc, &m)
    })
}

#[test]
fn amalgam_normal_forms_are_idempotent_and_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in [samples::infinite_dihedral(), samples::s3_amalgam()] {
        for _ in 0..1000 {
            let u = random_amalgam_word(&a, &mut rng, 8);
            let v = random_amalgam_word(&a, &mut rng, 8);
            let nu = a.normalize(&u).unwrap();
            assert!(a.is_normal(&nu));
            assert_eq!(a.normalize(&a.to_raw(&nu)).unwrap(), nu);
            let uv: Vec<_> = u.iter().chain(&v).cloned().collect();
            let nv = a.normalize(&v).unwrap();
            assert_eq!(a.normalize(&uv).unwrap(), a.mul(&nu, &nv));
            assert_eq!(a.mul(&nu, &a.inv(&nu)), a.identity());
        }
    }
}

#[test]
fn hnn_normal_forms_are_idempotent_and_multiplicative() {
    let h = samples::bs12();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let u = random_hnn_word(&h, &mut rng, 10);
        let v = random_hnn_word(&h, &mut rng, 10);
        let nu = h.normalize(&u).unwrap();
        assert!(h.is_normal(&nu));
        assert_eq!(h.normalize(&h.to_raw(&nu)).unwrap(), nu);
        let uv: Vec<_> = u.iter().chain(&v).cloned().collect();
        assert_eq!(h.normalize(&uv).unwrap(), h.mul(&nu, &h.normalize(&v).unwrap()));
    }
}

#[test]
fn dihedral_normal_forms_are_unique() {
    let d = samples::infinite_dihedral();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let words: Vec<_> = (0..300).map(|_| random_amalgam_word(&d, &mut rng, 7)).collect();
    for u in &words {
        for v in &words {
            let same_model = dihedral_model(u) == dihedral_model(v);
            let same_nf = d.normalize(u).unwrap() == d.normalize(v).unwrap();
            assert_eq!(same_model, same_nf);
        }
    }
}

#[test]
fn collapsing_amalgam_matches_permutations() {
    let s3 = GroupOracle::Finite(FiniteGroup::s3());
    let c = GroupOracle::Finite(FiniteGroup::cyclic("C", "h", 2));
    let b = GroupOracle::Finite(FiniteGroup::cyclic("B", "r", 2));
    let e1 = Embedding::new(&c, &s3, &[s3.parse("(12)").unwrap()], None).unwrap();
    let e2 = Embedding::new(&c, &b, &[b.parse("r").unwrap()], None).unwrap();
    let a = Amalgam::new("S3 *_C C", c, [s3.clone(), b], [e1, e2]).unwrap();
    let twelve = s3.parse("(12)").unwrap();
    let model = |w: &[RawLetter]| {
        w.iter().fold(s3.identity(), |acc, (k, g)| {
            let x = if *k == 0 { g.clone() } else if *g == Elem::Fin(0) { s3.identity() } else { twelve.clone() };
            s3.mul(&acc, &x)
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let words: Vec<_> = (0..200).map(|_| random_amalgam_word(&a, &mut rng, 6)).collect();
    let forms: BTreeSet<_> = words.iter().map(|w| a.normalize(w).unwrap()).collect();
    assert!(forms.len() <= 6);
    for u in &words {
        for v in &words {
            assert_eq!(model(u) == model(v), a.normalize(u).unwrap() == a.normalize(v).unwrap());
        }
    }
}

#[test]
fn bs12_normal_forms_are_unique() {
    let h = samples::bs12();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let words: Vec<_> = (0..300).map(|_| random_hnn_word(&h, &mut rng, 8)).collect();
    for u in &words {
        for v in &words {
            assert_eq!(bs_model(u) == bs_model(v), h.normalize(u).unwrap() == h.normalize(v).unwrap());
        }
    }
}

#[test]
fn britton_reduction_is_order_independent() {
    let h = samples::bs12();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let w = random_hnn_word(&h, &mut rng, 12);
        let left = h.britton_leftmost(&w).unwrap();
        let mut pick = ChaCha8Rng::seed_from_u64(rng.gen());
        let random = h.britton_reduce(&w, |n| pick.gen_range(0..n)).unwrap();
        let nf = h.normalize(&w).unwrap();
        for r in [&left, &random] {
            assert_eq!(h.normalize(r).unwrap(), nf);
            let ts: Vec<i8> = r.iter().filter_map(|l| if let HnnLetter::T(e) = l { Some(*e) } else { None }).collect();
            assert_eq!(ts, nf.t_exponents());
        }
        assert_eq!(bs_model(&left), bs_model(&w));
    }
}

#[test]
fn ring_multiplication_is_associative() {
    let a = samples::s3_amalgam();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let elt = |rng: &mut ChaCha8Rng| {
        let terms: Vec<_> = (0..3)
            .map(|_| (a.normalize(&random_amalgam_word(&a, rng, 4)).unwrap(), BigInt::from(rng.gen_range(-3..=3))))
            .collect();
        GroupRingElement::from_terms(&a, terms)
    };
    for _ in 0..100 {
        let (x, y, z) = (elt(&mut rng), elt(&mut rng), elt(&mut rng));
        let l = x.ring_mul(&a, &y).unwrap().ring_mul(&a, &z).unwrap();
        let r = x.ring_mul(&a, &y.ring_mul(&a, &z).unwrap()).unwrap();
        assert_eq!(l, r);
        assert_eq!(x.ring_mul(&a, &GroupRingElement::one(&a)).unwrap(), x);
    }
}

fn check_grading<C: Construction>(g: &C, elems: Vec<GroupRingElement<C::Word, BigInt>>) {
    for u in elems {
        let parts = u.grade_decompose(g);
        let mut sum = GroupRingElement::zero(g);
        for (ty, part) in &parts {
            assert!(ty.is_admissible(), "{ty}");
            if let Some((_, _, n)) = ty.s_power() {
                let s = ty.s_indices();
                assert!(s.windows(2).all(|p| p[0].1 == p[1].0));
                assert_eq!(n, s.len());
            }
            sum = sum.add(part).unwrap();
        }
        assert_eq!(sum, u);
    }
}

#[test]
fn grading_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for a in [samples::infinite_dihedral(), samples::s3_amalgam()] {
        let elems = (0..200)
            .map(|_| {
                let terms: Vec<_> = (0..4)
                    .map(|_| (a.normalize(&random_amalgam_word(&a, &mut rng, 6)).unwrap(), BigInt::from(rng.gen_range(1..=5))))
                    .collect();
                GroupRingElement::from_terms(&a, terms)
            })
            .collect();
        check_grading(&a, elems);
    }
    let h = samples::bs12();
    let elems = (0..300)
        .map(|_| {
            let terms: Vec<_> = (0..4)
                .map(|_| (h.normalize(&random_hnn_word(&h, &mut rng, 10)).unwrap(), BigInt::from(rng.gen_range(1..=5))))
                .collect();
            GroupRingElement::from_terms(&h, terms)
        })
        .collect();
    check_grading(&h, elems);
}

/// Each summand is closed under the two-sided action of the edge group.
#[test]
fn grading_is_bimodule_compatible() {
    let h = samples::bs12();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let c = h.subgroup.generators()[0].clone();
    for _ in 0..300 {
        let w = h.normalize(&random_hnn_word(&h, &mut rng, 8)).unwrap();
        let k = rng.gen_range(-3..=3);
        let ac = h.normalize(&[HnnLetter::G(h.alpha.image(&h.subgroup.pow(&c, k)))]).unwrap();
        assert_eq!(h.sequence_type(&h.mul(&ac, &w)), h.sequence_type(&w));
        assert_eq!(h.sequence_type(&h.mul(&w, &ac)), h.sequence_type(&w));
    }
    let a = samples::s3_amalgam();
    for _ in 0..300 {
        let w = a.normalize(&random_amalgam_word(&a, &mut rng, 6)).unwrap();
        let hc = a.normalize(&[(0, a.embeddings[0].image(&a.subgroup.parse("h").unwrap()))]).unwrap();
        assert_eq!(a.sequence_type(&a.mul(&hc, &w)), a.sequence_type(&w));
        assert_eq!(a.sequence_type(&a.mul(&w, &hc)), a.sequence_type(&w));
    }
}

#[test]
fn double_cosets_partition() {
    let a = samples::s3_amalgam();
    for g in [&a.factors[0], &a.factors[1]] {
        let f = g.as_finite().unwrap();
        let subgroups: Vec<Vec<usize>> = (0..f.order()).map(|x| f.generated(&[x])).collect();
        for l in &subgroups {
            for r in &subgroups {
                let orbits = double_cosets(f, l, r, None).unwrap();
                let mut all: Vec<usize> = orbits.concat();
                all.sort_unstable();
                assert_eq!(all, (0..f.order()).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn gamma_identity_on_shipped_examples() {
    let a = samples::s3_amalgam();
    let d = samples::infinite_dihedral();
    for amalgam in [&a, &d] {
        for k in 0..2 {
            let e = &amalgam.embeddings[k];
            for x in amalgam.factors[k].elements().unwrap() {
                let g = gamma_data(e, e, &x).unwrap();
                assert!(g.identity_holds && g.bijective && g.homomorphism);
            }
        }
    }
    // two different embeddings of Z/2 into S3
    let s3 = &a.factors[0];
    let beta = Embedding::new(&a.subgroup, s3, &[s3.parse("(13)").unwrap()], None).unwrap();
    let mut sizes = BTreeMap::new();
    for x in s3.elements().unwrap() {
        let g = gamma_data(&a.embeddings[0], &beta, &x).unwrap();
        *sizes.entry(g.gamma.len()).or_insert(0) += 1;
    }
    // x (12) x^-1 = (13) for exactly two x
    assert_eq!(sizes, BTreeMap::from([(1, 4), (2, 2)]));
}

#[test]
fn lemma16_dimensions() {
    let d = samples::infinite_dihedral();
    let a = samples::s3_amalgam();
    let h = samples::bs12();
    for m1 in 0..4 {
        for m2 in 0..4 {
            for data in [SData::Amalgam(&d), SData::Amalgam(&a), SData::Hnn(&h)] {
                let r = lemma16_check((m1, m2), &data).unwrap();
                assert!(r.ok);
                assert_eq!(r.s_sigma_dims, (m1 + m2, m1 + m2));
            }
        }
    }
}
