//! Buchberger's algorithm with the Gebauer-Moeller pair criteria.

use std::collections::hash_map::Entry;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Ring, RingError, Term};

use super::{budget, GroebnerError};

/// Bit `i` set iff variable `i` (mod 64) occurs. A cheap necessary test for divisibility.
#[inline]
fn divmask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .fold(0u64, |acc, (i, _)| acc | 1 << (i % 64))
}

/// A set of monic reducers with their head data cached.
struct Reducers<'a> {
    polys: Vec<&'a Polynomial>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys
            .iter()
            .map(|p| divmask(p.leading_monomial().unwrap()))
            .collect();
        Self { polys, masks }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<&'a Polynomial> {
        let mask = divmask(m);
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, &pm)| pm & !mask == 0 && p.leading_monomial().unwrap().divides(m))
            .map(|(p, _)| *p)
    }

    /// Full normal form of `f`.
    ///
    /// Pending terms sit in a hash map keyed by monomial, with a max-heap
    /// giving the next term to look at, so one reduction step only touches
    /// the terms of the reducer.
    fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ring = *f.ring();
        let field = ring.field();
        let order = ring.order();
        let mut pending: FxHashMap<Monomial, u32> = f.terms().iter().copied().collect();
        let mut heap: BinaryHeap<Ordered> = f.terms().iter().map(|(m, _)| Ordered(*m, order)).collect();
        let mut done: Vec<Term> = Vec::new();
        while let Some(Ordered(m, _)) = heap.pop() {
            let c = match pending.remove(&m) {
                Some(c) if c != 0 => c,
                _ => continue,
            };
            let Some(g) = self.find(&m) else {
                done.push((m, c));
                continue;
            };
            let (gm, gc) = g.leading_term().unwrap();
            let q = gm.quotient_of(&m).unwrap();
            let coeff = if *gc == 1 { c } else { field.div(c, *gc) };
            let coeff = field.neg(coeff);
            for (tm, tc) in &g.terms()[1..] {
                let mm = tm.mul(&q);
                let delta = field.mul(coeff, *tc);
                match pending.entry(mm) {
                    Entry::Occupied(mut e) => {
                        let v = e.get_mut();
                        *v = field.add(*v, delta);
                    }
                    Entry::Vacant(e) => {
                        e.insert(delta);
                        heap.push(Ordered(mm, order));
                    }
                }
            }
        }
        Polynomial::from_sorted_terms(ring, done)
    }
}

/// A monomial ordered by a fixed monomial order, for the reduction heap.
struct Ordered(Monomial, MonomialOrder);

impl PartialEq for Ordered {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.1.compare(&self.0, &other.0)
    }
}

/// Normal form of `f` with respect to `basis` (not necessarily a Groebner basis).
///
/// No term of the result is divisible by a head term of `basis`, and
/// `f - result` lies in the ideal generated by `basis`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial, GroebnerError> {
    for g in basis {
        f.ring().check_same(g.ring())?;
    }
    Ok(Reducers::new(basis).normal_form(f))
}

/// `lcm/lm(f) * f/lc(f) - lcm/lm(g) * g/lc(g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    f.ring().check_same(g.ring())?;
    if f.is_zero() || g.is_zero() {
        return Err(GroebnerError::ZeroPolynomial);
    }
    let (fm, _) = f.leading_term().unwrap();
    let (gm, _) = g.leading_term().unwrap();
    let lcm = fm.lcm(gm);
    let left = f.monic().mul_monomial(&fm.quotient_of(&lcm).unwrap());
    let right = g.monic().mul_monomial(&gm.quotient_of(&lcm).unwrap());
    Ok(&left - &right)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State {
    ring: Ring,
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (mi, mj) = (self.lm(i), self.lm(j));
        let lcm = mi.lcm(mj);
        let sugar = (self.sugar[i] + lcm.degree() - mi.degree())
            .max(self.sugar[j] + lcm.degree() - mj.degree());
        Pair { i, j, lcm, sugar }
    }

    /// Inserts polynomial `h` (monic, reduced w.r.t. the active set) and
    /// updates the pair list.
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(false);

        let lm_h = *self.lm(hi);
        let candidates: Vec<(Pair, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (self.pair(g, hi), lm_h.is_coprime(self.lm(g))))
            .collect();

        // chain criterion among the new pairs; coprime pairs still prune others
        let mut kept: Vec<usize> = Vec::new();
        for (idx, (p, coprime)) in candidates.iter().enumerate() {
            if *coprime {
                kept.push(idx);
                continue;
            }
            let dominated = candidates[idx + 1..]
                .iter()
                .any(|(q, _)| q.lcm.divides(&p.lcm))
                || kept.iter().any(|&k| candidates[k].0.lcm.divides(&p.lcm));
            if !dominated {
                kept.push(idx);
            }
        }

        // prune old pairs whose lcm is strictly reached through h
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                if !lm_h.divides(&p.lcm) {
                    return true;
                }
                let li = self.lm(p.i).lcm(&lm_h);
                let lj = self.lm(p.j).lcm(&lm_h);
                li == p.lcm || lj == p.lcm
            })
            .collect();

        // product criterion
        self.pairs.extend(
            kept.into_iter()
                .filter(|&k| !candidates[k].1)
                .map(|k| candidates[k].0.clone()),
        );

        for g in 0..hi {
            if self.active[g] && lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| a.lcm.degree().cmp(&b.lcm.degree()))
                    .then_with(|| order.compare(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_polys(&self) -> impl Iterator<Item = &Polynomial> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
///
/// The result is sorted by descending head term, every element is monic and
/// the zero ideal yields an empty basis. All generators must share one ring
/// (up to the monomial order, which is replaced by `order`).
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>, GroebnerError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().with_order(order)?;
    let mut input = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring().nvars() != ring.nvars() || g.ring().field() != ring.field() {
            return Err(GroebnerError::Ring(RingError::RingMismatch));
        }
        let g = g.with_order(order)?;
        if g.is_zero() {
            continue;
        }
        if g.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        input.push(g.monic());
    }
    // process cheap generators first
    input.sort_by(|a, b| {
        let (ma, mb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        ma.degree()
            .cmp(&mb.degree())
            .then_with(|| order.compare(ma, mb))
            .then_with(|| a.len().cmp(&b.len()))
    });

    let mut state = State {
        ring,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let reduced = Reducers::new(state.active_polys()).normal_form(&g);
        if reduced.is_zero() {
            continue;
        }
        if reduced.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        let sugar = g.total_degree().unwrap();
        state.insert(reduced.monic(), sugar);
    }

    while let Some(pair) = state.select() {
        budget::check()?;
        let s = s_polynomial(&state.polys[pair.i], &state.polys[pair.j])?;
        let h = Reducers::new(state.active_polys()).normal_form(&s);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        state.insert(h.monic(), pair.sugar);
    }

    Ok(interreduce(state.active_polys().cloned().collect()))
}

/// Turns a minimal Groebner basis into the reduced one, sorted descending.
fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let Some(first) = basis.first() else {
        return basis;
    };
    let order = first.ring().order();
    basis.sort_by(|a, b| {
        order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    for i in 0..basis.len() {
        let reduced = {
            let others = Reducers::new(
                basis
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, p)| p),
            );
            let (head, tail) = split_head(&basis[i]);
            let tail = others.normal_form(&tail);
            &head + &tail
        };
        basis[i] = reduced.monic();
    }
    basis
}

fn split_head(f: &Polynomial) -> (Polynomial, Polynomial) {
    let ring = *f.ring();
    let mut terms = f.terms().to_vec();
    let tail = terms.split_off(1);
    (
        Polynomial::from_sorted_terms(ring, terms),
        Polynomial::from_sorted_terms(ring, tail),
    )
}

/// Checks the defining properties of a reduced Groebner basis that do not
/// need the ideal: monic heads, no head divides any term of another element.
pub fn is_reduced_basis(basis: &[Polynomial]) -> bool {
    for (i, f) in basis.iter().enumerate() {
        if f.leading_coeff() != Some(1) {
            return false;
        }
        let head = f.leading_monomial().unwrap();
        for (j, g) in basis.iter().enumerate() {
            if i != j && g.terms().iter().any(|(m, _)| head.divides(m)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PrimeField;

    fn ring2() -> Ring {
        Ring::grevlex(2, PrimeField::new(32003).unwrap())
    }

    fn p(r: Ring, terms: &[(&[u16], i64)]) -> Polynomial {
        Polynomial::from_exponents(r, terms)
    }

    #[test]
    fn reduce_examples() {
        let r = ring2();
        let x = Polynomial::var(r, 0);
        let x2 = p(r, &[(&[2, 0], 1)]);
        assert!(reduce(&Polynomial::zero(r), &[x.clone()]).unwrap().is_zero());
        assert!(reduce(&x2, &[x]).unwrap().is_zero());
        // x^2 + y mod (x^2 - y) = 2y
        let f = p(r, &[(&[2, 0], 1), (&[0, 1], 1)]);
        let g = p(r, &[(&[2, 0], 1), (&[0, 1], -1)]);
        assert_eq!(reduce(&f, &[g]).unwrap(), p(r, &[(&[0, 1], 2)]));
    }

    #[test]
    fn s_polynomial_examples() {
        let r = ring2();
        let f = p(r, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = p(r, &[(&[1, 1], 1), (&[0, 0], -1)]);
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        // y*f - x*g = x - y^2
        assert_eq!(
            s_polynomial(&f, &g).unwrap(),
            p(r, &[(&[1, 0], 1), (&[0, 2], -1)])
        );
        assert_eq!(
            s_polynomial(&f, &Polynomial::zero(r)),
            Err(GroebnerError::ZeroPolynomial)
        );
        // coprime heads: the S-polynomial reduces to zero
        let a = p(r, &[(&[2, 0], 1), (&[0, 0], 1)]);
        let b = p(r, &[(&[0, 2], 1), (&[1, 0], 1)]);
        let s = s_polynomial(&a, &b).unwrap();
        assert!(reduce(&s, &[a, b]).unwrap().is_zero());
    }

    #[test]
    fn buchberger_small_cases() {
        let r = ring2();
        let x = Polynomial::var(r, 0);
        let y = Polynomial::var(r, 1);
        assert_eq!(buchberger(&[x.clone()], MonomialOrder::Grevlex).unwrap(), vec![x.clone()]);
        assert_eq!(
            buchberger(&[&x + &y, y.clone()], MonomialOrder::Grevlex).unwrap(),
            vec![x, y]
        );
    }

    #[test]
    fn buchberger_hand_example() {
        let r = ring2();
        let f = p(r, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = p(r, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let gb = buchberger(&[f.clone(), g.clone()], MonomialOrder::Grevlex).unwrap();
        // grevlex basis {x^2 - y, x*y - 1, y^2 - x}
        assert_eq!(
            gb,
            vec![
                f.clone(),
                g.clone(),
                p(r, &[(&[0, 2], 1), (&[1, 0], -1)]),
            ]
        );
        assert!(is_reduced_basis(&gb));
        // the lex-shaped pair {x - y^2, y^3 - 1} generates the same ideal
        let other = [p(r, &[(&[1, 0], 1), (&[0, 2], -1)]), p(r, &[(&[0, 3], 1), (&[0, 0], -1)])];
        for h in &other {
            assert!(reduce(h, &gb).unwrap().is_zero());
        }
        let gb2 = buchberger(&other, MonomialOrder::Grevlex).unwrap();
        for h in [f, g] {
            assert!(reduce(&h, &gb2).unwrap().is_zero());
        }
        assert_eq!(gb, gb2);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = ring2();
        assert!(buchberger(&[], MonomialOrder::Grevlex).unwrap().is_empty());
        assert!(buchberger(&[Polynomial::zero(r)], MonomialOrder::Grevlex).unwrap().is_empty());
        let x = Polynomial::var(r, 0);
        let gb = buchberger(&[x.clone(), &x + &Polynomial::one(r)], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb, vec![Polynomial::one(r)]);
    }
}
