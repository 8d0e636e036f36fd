use std::cmp::Ordering;

use fermat_mld::polyring::{Monomial, MonomialOrder, Polynomial, PrimeField, Ring};
use proptest::prelude::*;

const P: u32 = 32003;
const NVARS: usize = 3;

fn ring() -> Ring {
    Ring::grevlex(NVARS, PrimeField::new(P).unwrap())
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..4, NVARS).prop_map(|e| Monomial::new(&e))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), 0u32..P), 0..6).prop_map(|terms| Polynomial::from_terms(ring(), terms))
}

fn point() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..P, NVARS)
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::Grevlex), (1usize..NVARS).prop_map(MonomialOrder::BlockElimination)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_commutative_and_associative(f in polynomial(), g in polynomial(), h in polynomial()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(f in polynomial(), g in polynomial(), h in polynomial()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn multiplication_distributes(f in polynomial(), g in polynomial(), h in polynomial()) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn subtraction_inverts_addition(f in polynomial(), g in polynomial()) {
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn orders_are_antisymmetric_and_transitive(o in order(), a in monomial(), b in monomial(), c in monomial()) {
        prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
        prop_assert_eq!(o.compare(&a, &b) == Ordering::Equal, a == b);
        if o.compare(&a, &b) != Ordering::Greater && o.compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(o.compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn orders_respect_multiplication(o in order(), a in monomial(), b in monomial(), c in monomial()) {
        prop_assert_eq!(o.compare(&a, &b), o.compare(&a.mul(&c), &b.mul(&c)));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in polynomial(), g in polynomial(), pt in point()) {
        let field = PrimeField::new(P).unwrap();
        let (fv, gv) = (f.evaluate(&pt).unwrap(), g.evaluate(&pt).unwrap());
        prop_assert_eq!((&f * &g).evaluate(&pt).unwrap(), field.mul(fv, gv));
        prop_assert_eq!((&f + &g).evaluate(&pt).unwrap(), field.add(fv, gv));
    }

    #[test]
    fn homogeneous_forms_vanish_at_the_origin(m in monomial(), c in 1u32..P) {
        prop_assume!(!m.is_one());
        let f = Polynomial::monomial(ring(), m, c);
        prop_assert_eq!(f.evaluate(&[0; NVARS]).unwrap(), 0);
    }
}
