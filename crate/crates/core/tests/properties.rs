use std::sync::Arc;

use albert::albert::shipped::all;
use albert::albert::{AlbertAlgebra, AlbertElem, DIM};
use albert::assoc3::shipped::{cyclic7_gamma2, split_q};
use albert::composition::shipped::{definite, split};
use albert::composition::CayleyElem;
use albert::exactfield::shipped::cyclic7;
use albert::exactfield::{hilbert90, FieldElem};
use albert::hexagon::{hex_inv, hex_mul, HexElem};
use albert::random::Sampler;
use albert::strmaps::InstrWord;
use albert::workspace::{parse_q, word_from_json, word_json};
use albert::Q;
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn qvec(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(small_q(), n)
}

fn l_elem(v: Vec<Q>) -> FieldElem {
    FieldElem::new(&cyclic7(), v).unwrap()
}

fn albert_pair() -> impl Strategy<Value = (Arc<AlbertAlgebra>, AlbertElem, AlbertElem)> {
    (0..all().len(), qvec(DIM), qvec(DIM)).prop_map(|(k, x, y)| {
        let a = all().swap_remove(k);
        let (x, y) = (a.elem(x).unwrap(), a.elem(y).unwrap());
        (a, x, y)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rational_strings_round_trip(q in small_q()) {
        prop_assert_eq!(parse_q(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn field_axioms_and_sigma(a in qvec(3), b in qvec(3), c in qvec(3)) {
        let (a, b, c) = (l_elem(a), l_elem(b), l_elem(c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        let s = |x: &FieldElem| x.apply_auto(1).unwrap();
        prop_assert_eq!(s(&a.mul(&b)), s(&a).mul(&s(&b)));
        prop_assert_eq!(s(&a.add(&b)), s(&a).add(&s(&b)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn hilbert90_postcondition(w in qvec(3)) {
        let w = l_elem(w);
        prop_assume!(!w.is_zero());
        let alpha = w.apply_auto(1).unwrap().div(&w).unwrap();
        let q = hilbert90(&alpha, 1).unwrap();
        prop_assert_eq!(alpha.mul(&q), q.apply_auto(1).unwrap());
    }

    #[test]
    fn octonion_laws(a in qvec(8), x in qvec(8), y in qvec(8), definite_params in any::<bool>()) {
        let c = if definite_params { definite() } else { split() };
        let e = |v: Vec<Q>| -> CayleyElem { c.elem(v).unwrap() };
        let (a, x, y) = (e(a), e(x), e(y));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        prop_assert_eq!(a.mul(&x.mul(&a)), a.mul(&x).mul(&a));
        prop_assert_eq!(a.mul(&x).mul(&a).mul(&y), a.mul(&x.mul(&a.mul(&y))));
        prop_assert_eq!(x.mul(&x.conj()), CayleyElem::scalar(&c, x.norm()));
    }

    #[test]
    fn degree_three_laws(a in qvec(9), b in qvec(9), cyclic in any::<bool>()) {
        let d = if cyclic { cyclic7_gamma2() } else { split_q() };
        let (a, b) = (d.from_q_coords(&a).unwrap(), d.from_q_coords(&b).unwrap());
        prop_assert_eq!(a.mul(&b).norm(), a.norm().mul(&b.norm()));
        prop_assert_eq!(a.mul(&a.adjoint()), d.scalar(&a.norm()));
        prop_assert_eq!(a.cross(&b), b.cross(&a));
    }

    #[test]
    fn albert_identities((alg, x, y) in albert_pair()) {
        prop_assert_eq!(x.jmul(&y), y.jmul(&x));
        prop_assert_eq!(x.norm(), x.newton_norm());
        prop_assert_eq!(x.jmul(&x.adjoint()), alg.scalar(&x.norm()));
        prop_assert_eq!(x.adjoint().adjoint(), x.scale(&x.norm()));
        prop_assert_eq!(x.trace_form(&y), x.jmul(&y).trace());
        let n = x.norm();
        prop_assert_eq!(x.u_apply(&y).norm(), &n * &n * y.norm());
    }

    #[test]
    fn hexagon_group_laws(seed in any::<u64>()) {
        let alg = all().swap_remove(0);
        let mut s = Sampler::new(seed);
        let (g, h, k) = (HexElem::random(&alg, &mut s), HexElem::random(&alg, &mut s), HexElem::random(&alg, &mut s));
        let m = |a: &HexElem, b: &HexElem| hex_mul(a, b).unwrap();
        prop_assert_eq!(m(&m(&g, &h), &k), m(&g, &m(&h, &k)));
        prop_assert!(m(&g, &hex_inv(&g)).is_identity());
    }

    #[test]
    fn word_json_round_trip(seed in any::<u64>(), t in small_q()) {
        prop_assume!(t != Q::from_integer(0.into()));
        let alg = all().swap_remove(2);
        let mut s = Sampler::new(seed);
        let w = InstrWord::new(&alg).scalar(t, "p").u(alg.random_invertible(&mut s), "p");
        let text = serde_json::to_string(&word_json(&w)).unwrap();
        let back = word_from_json(&alg, &serde_json::from_str::<Vec<_>>(&text).unwrap()).unwrap();
        prop_assert_eq!(back.eval().unwrap().op, w.eval().unwrap().op);
    }
}
