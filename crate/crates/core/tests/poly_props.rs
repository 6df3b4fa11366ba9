use delzant::poly::MultiPoly;
use delzant::rational::frac;
use delzant::Rational;
use proptest::prelude::*;

const NVARS: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, NVARS), rational()), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(NVARS, terms))
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), NVARS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative_and_commutative(a in poly(), b in poly(), c in poly()) {
        let left = a.add(&b).unwrap().add(&c).unwrap();
        let right = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn multiplication_is_associative(a in poly(), b in poly(), c in poly()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.mul(&MultiPoly::one(NVARS)).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), x in point()) {
        let prod = a.mul(&b).unwrap().eval(&x).unwrap();
        prop_assert_eq!(prod, a.eval(&x).unwrap() * b.eval(&x).unwrap());
    }

    #[test]
    fn partials_commute(a in poly(), i in 0..NVARS, j in 0..NVARS) {
        let ij = a.partial(i).unwrap().partial(j).unwrap();
        let ji = a.partial(j).unwrap().partial(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn partial_obeys_leibniz(a in poly(), b in poly(), i in 0..NVARS) {
        let left = a.mul(&b).unwrap().partial(i).unwrap();
        let right = a.partial(i).unwrap().mul(&b).unwrap()
            .add(&a.mul(&b.partial(i).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn substitute_scaled_at_one_is_eval(a in poly(), mu in point(), k in -4i64..=4) {
        let u = a.substitute_scaled(&mu).unwrap();
        prop_assert_eq!(u.eval_int(1), a.eval(&mu).unwrap());
        let scaled: Vec<Rational> = mu.iter().map(|m| m * frac(k, 1)).collect();
        prop_assert_eq!(u.eval_int(k), a.eval(&scaled).unwrap());
    }
}
