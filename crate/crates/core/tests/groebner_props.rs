use fermat_mld::groebner::{buchberger, ideal_equals, is_reduced_basis, reduce, Ideal};
use fermat_mld::polyring::{Monomial, MonomialOrder, Polynomial, PrimeField, Ring};
use proptest::prelude::*;

const P: u32 = 32003;

fn ring(nvars: usize) -> Ring {
    Ring::grevlex(nvars, PrimeField::new(P).unwrap())
}

fn monomials_of_degree(nvars: usize, deg: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(pos: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos == cur.len() - 1 {
            cur[pos] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// A random form of degree `deg`; coefficients are zero with probability 1/3.
fn form(nvars: usize, deg: u16) -> impl Strategy<Value = Polynomial> {
    let monos = monomials_of_degree(nvars, deg);
    prop::collection::vec(prop_oneof![1 => Just(0u32), 2 => 1u32..P], monos.len())
        .prop_map(move |cs| Polynomial::from_terms(ring(nvars), monos.iter().copied().zip(cs)))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn any_form(nvars: usize) -> impl Strategy<Value = Polynomial> {
    (1u16..=3).prop_flat_map(move |d| form(nvars, d))
}

/// Possibly inhomogeneous polynomials in three variables.
fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u16..3, 3), 1u32..P), 1..4)
        .prop_map(|ts| Polynomial::from_terms(ring(3), ts.into_iter().map(|(e, c)| (Monomial::new(&e), c))))
}

fn linear_form(nvars: usize) -> impl Strategy<Value = Polynomial> {
    form(nvars, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_basis_ignores_generator_order(gens in prop::collection::vec(small_poly(), 1..4), rot in 0usize..4) {
        let a = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        let b = buchberger(&shuffled, MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(is_reduced_basis(&a));
    }

    #[test]
    fn generators_reduce_to_zero(gens in prop::collection::vec(small_poly(), 1..4)) {
        let basis = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        for g in &gens {
            prop_assert!(reduce(g, &basis).unwrap().is_zero());
        }
    }

    #[test]
    fn elimination_order_basis_generates_the_same_ideal(gens in prop::collection::vec(small_poly(), 1..3)) {
        let basis = buchberger(&gens, MonomialOrder::BlockElimination(1)).unwrap();
        let i = Ideal::new(ring(3), gens.clone()).unwrap();
        let back: Vec<Polynomial> = basis.iter().map(|g| g.with_order(MonomialOrder::Grevlex).unwrap()).collect();
        let j = Ideal::new(ring(3), back).unwrap();
        prop_assert!(ideal_equals(&i, &j).unwrap());
    }

    #[test]
    fn saturation_is_idempotent(gens in prop::collection::vec(any_form(3), 1..3), l in linear_form(3)) {
        let i = Ideal::new(ring(3), gens).unwrap();
        let once = i.saturate(&l).unwrap();
        let twice = once.saturate(&l).unwrap();
        prop_assert!(ideal_equals(&once, &twice).unwrap());
    }

    #[test]
    fn linear_saturation_matches_elimination(gens in prop::collection::vec(any_form(3), 1..4), l in linear_form(3)) {
        let i = Ideal::new(ring(3), gens).unwrap();
        let fast = i.saturate_linear(&l).unwrap();
        let slow = i.saturate(&l).unwrap();
        prop_assert!(ideal_equals(&fast, &slow).unwrap());
    }

    #[test]
    fn degree_survives_saturation_by_a_variable(f in any_form(3), g in any_form(3), k in 1u16..3, var in 0usize..3) {
        let r = ring(3);
        let ci = Ideal::new(r, vec![f.clone(), g.clone()]).unwrap();
        prop_assume!(ci.krull_dimension().unwrap() == Some(1));
        // no point of V(f, g) on the hyperplane x_var = 0
        let x = Polynomial::var(r, var);
        prop_assume!(Ideal::new(r, vec![f.clone(), g.clone(), x.clone()]).unwrap().degree_projective().unwrap() == 0);
        // (f, g) times a power of the irrelevant ideal
        let mut gens = Vec::new();
        for m in monomials_of_degree(3, k) {
            gens.push(f.mul_monomial(&m));
            gens.push(g.mul_monomial(&m));
        }
        let i = Ideal::new(r, gens).unwrap();
        let sat = i.saturate(&x).unwrap();
        let expected = u64::from(f.total_degree().unwrap() * g.total_degree().unwrap());
        prop_assert_eq!(ci.degree_projective().unwrap(), expected);
        prop_assert_eq!(i.degree_projective().unwrap(), expected);
        prop_assert_eq!(sat.degree_projective().unwrap(), i.degree_projective().unwrap());
    }

    #[test]
    fn binary_form_degree_is_its_degree(d in 1u16..=7, seed in prop::collection::vec(1u32..P, 8)) {
        let r = ring(2);
        let f = Polynomial::from_terms(r, monomials_of_degree(2, d).into_iter().zip(seed));
        let i = Ideal::new(r, vec![f]).unwrap();
        prop_assert_eq!(i.degree_projective().unwrap(), u64::from(d));
    }
}
