use genfree::grouph::{
    complexity, f_map, ideal_decompose, parse_zh, reduce_fully, reduce_step, w_pair, x_relation,
    Extended, HElement, LaurentPoly, Monomial, PairElement, RelationVector, RightIdealJn, ZHElement,
};
use genfree::{Integer, A, ZH};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((-3i64..=3, -2i64..=2), 0..3).prop_map(Monomial::from_pairs)
}

fn arb_a() -> impl Strategy<Value = A> {
    prop::collection::vec((arb_monomial(), -3i64..=3), 0..4).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(m, c)| (m, Integer::from(c))))
    })
}

fn arb_zh() -> impl Strategy<Value = ZH> {
    prop::collection::vec((-2i64..=2, arb_a()), 0..3).prop_map(ZHElement::from_coeffs)
}

fn random_zh(rng: &mut ChaCha8Rng) -> ZH {
    let mut u = ZH::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = Monomial::from_pairs(
            (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-1..=1))),
        );
        let c = Integer::from(rng.gen_range(-2i64..=2));
        u = u + ZH::term(rng.gen_range(-1..=1), A::monomial(m, c));
    }
    u
}

fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> RelationVector<Integer> {
    let mut x = RelationVector::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let q = rng.gen_range(1..n);
        let p = rng.gen_range(0..q);
        let r = ZH::term(rng.gen_range(0..=2), A::constant(Integer::from(rng.gen_range(1i64..=2))));
        x = x.add(&x_relation(p, q, n).unwrap().mul_right(&r)).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_is_associative_and_unital(u in arb_zh(), v in arb_zh(), w in arb_zh()) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &ZH::one(), u.clone());
        prop_assert_eq!(&ZH::one() * &u, u);
    }

    #[test]
    fn valuation_and_degree_add(u in arb_zh(), v in arb_zh()) {
        prop_assume!(!u.is_zero() && !v.is_zero());
        let (nu, du) = u.val_deg();
        let (nv, dv) = v.val_deg();
        let (nuv, duv) = (&u * &v).val_deg();
        let sum = |a: Extended, b: Extended| Extended::Finite(a.finite().unwrap() + b.finite().unwrap());
        prop_assert_eq!(nuv, sum(nu, nv));
        prop_assert_eq!(duv, sum(du, dv));
    }

    #[test]
    fn collapse_is_a_ring_map(u in arb_zh(), v in arb_zh()) {
        prop_assert_eq!((&u * &v).eval_collapse(), u.eval_collapse().mul(&v.eval_collapse()));
        prop_assert_eq!((&u + &v).eval_collapse(), u.eval_collapse() + v.eval_collapse());
    }

    #[test]
    fn text_round_trip(u in arb_zh()) {
        let back: ZH = parse_zh(&u.to_string()).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn ideal_decomposition_round_trips(coeffs in prop::collection::vec(arb_a(), 1..4), extra in arb_a()) {
        let n = coeffs.len();
        let a = coeffs.iter().enumerate()
            .fold(A::zero(), |acc, (j, c)| acc + &A::z(-(j as i64)) * c);
        let d = ideal_decompose(&a, n).expect("built inside the ideal");
        let back = d.iter().enumerate().fold(A::zero(), |acc, (j, c)| acc + &A::z(-(j as i64)) * c);
        prop_assert_eq!(back, a.clone());
        // adding something outside the ideal is detected
        let outside = a + extra.clone();
        let residue_zero = ideal_decompose(&extra, n).is_some();
        prop_assert_eq!(ideal_decompose(&outside, n).is_some(), residue_zero);
    }
}

#[test]
fn generators_lie_in_kernel_up_to_twelve() {
    for n in 0..=12 {
        let w: PairElement<Integer> = w_pair(n).unwrap();
        assert!(f_map(&w).is_zero(), "W_{n}");
    }
}

#[test]
fn relations_hold_exactly() {
    for q in 1..=10 {
        for p in 0..q {
            let x = x_relation::<Integer>(p, q, q + 1).unwrap();
            x.validate().unwrap();
        }
    }
}

#[test]
fn last_projection_of_relations() {
    for n in 2..=10usize {
        for p in 0..n - 1 {
            let x = x_relation::<Integer>(p, n - 1, n).unwrap();
            assert_eq!(*x.last(), ZH::from_a(A::z(-(p as i64))));
        }
    }
}

#[test]
fn random_relations_reduce_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.gen_range(2..=5);
        let x = random_relation(&mut rng, n);
        if x.is_zero() {
            continue;
        }
        let mut cur = x;
        loop {
            let before = complexity(&cur).unwrap();
            let step = reduce_step(&cur).unwrap();
            if step.terminal {
                break;
            }
            step.vector.validate().unwrap();
            if let Some(after) = step.after {
                assert!(after < before);
            }
            if step.vector.is_zero() {
                break;
            }
            cur = step.vector;
        }
    }
}

#[test]
fn reduce_fully_reports_trace() {
    let x = x_relation::<Integer>(1, 3, 4).unwrap().mul_right(&ZH::term(2, A::x(0)));
    let (end, trace) = reduce_fully(&x, 1000).unwrap();
    assert!(end.is_zero());
    assert!(!trace.is_empty());
}

#[test]
fn ideal_collapses_for_small_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<ZH> = (0..20).map(|_| random_zh(&mut rng)).collect();
    for n in 1..=8 {
        let cert = RightIdealJn::new(n).certificate(&samples).unwrap();
        assert!(cert.passed(), "n = {n}");
    }
}

#[test]
fn gamma_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let el = |rng: &mut ChaCha8Rng| {
        let m = Monomial::from_pairs((0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(-3..=3), rng.gen_range(-1..=1))));
        HElement::new(m, rng.gen_range(-2..=2))
    };
    for p in [2i64, 3] {
        for _ in 0..200 {
            let (a, b, z, g) = (el(&mut rng), el(&mut rng), el(&mut rng), el(&mut rng));
            let moved = a.f(p).mul(&z).mul(&b.f(p));
            // g in Gamma(f(a) z f(b)) iff a^-1 g a in Gamma(z)
            let lhs = HElement::in_gamma(p, &moved, &g);
            let rhs = HElement::in_gamma(p, &z, &a.inv().mul(&g).mul(&a));
            assert_eq!(lhs, rhs);
        }
    }
}
