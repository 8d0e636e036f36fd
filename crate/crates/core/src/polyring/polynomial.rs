use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::PrimeField;
use super::monomial::{Exponent, Monomial, MonomialOrder, MAX_VARS};
use super::RingError;

/// Polynomial ring metadata: variable count, monomial order and coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    nvars: usize,
    order: MonomialOrder,
    field: PrimeField,
}

impl Ring {
    pub fn new(nvars: usize, order: MonomialOrder, field: PrimeField) -> Result<Self, RingError> {
        if nvars > MAX_VARS {
            return Err(RingError::TooManyVariables(nvars));
        }
        if let MonomialOrder::BlockElimination(k) = order {
            if k > nvars {
                return Err(RingError::BlockTooLarge { block: k, nvars });
            }
        }
        Ok(Self {
            nvars,
            order,
            field,
        })
    }

    /// Panics if `nvars` exceeds [`MAX_VARS`].
    pub fn grevlex(nvars: usize, field: PrimeField) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Self {
            nvars,
            order: MonomialOrder::Grevlex,
            field,
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring, RingError> {
        Ring::new(self.nvars, order, self.field)
    }

    pub fn check_same(&self, other: &Ring) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }
}

pub type Term = (Monomial, u32);

/// Sparse polynomial over a prime field.
///
/// Terms are kept strictly descending in the ring's monomial order with no
/// zero coefficients, so the zero polynomial is the empty term list and
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: Ring, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars), c)]
        };
        Self { ring, terms }
    }

    /// The variable `x_i`.
    pub fn var(ring: Ring, i: usize) -> Self {
        assert!(i < ring.nvars, "variable index {i} out of range");
        Self {
            ring,
            terms: vec![(Monomial::var_power(ring.nvars, i, 1), 1)],
        }
    }

    pub fn monomial(ring: Ring, mono: Monomial, coeff: u32) -> Self {
        Self::from_terms(ring, vec![(mono, coeff)])
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients. Coefficients may be non-canonical.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = Term>) -> Self {
        let field = ring.field;
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|(m, c)| {
                debug_assert_eq!(m.nvars(), ring.nvars);
                (m, field.from_u64(c as u64))
            })
            .collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { ring, terms: out }
    }

    /// Convenience constructor from `(exponents, signed coefficient)` pairs.
    pub fn from_exponents(ring: Ring, terms: &[(&[Exponent], i64)]) -> Self {
        let field = ring.field;
        Self::from_terms(
            ring,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e), field.from_i64(*c))),
        )
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    #[inline]
    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Variables occurring in some term.
    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[var] > 0)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, 1))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.ring.check_same(&other.ring)?;
        let minus_one = self.ring.field.neg(1);
        Ok(self.merge(other, minus_one))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.ring.check_same(&other.ring)?;
        let field = self.ring.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring));
        }
        let mut prod = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                prod.push((m1.mul(m2), field.mul(*c1, *c2)));
            }
        }
        Ok(Polynomial::from_terms(self.ring, prod))
    }

    /// `self + scale * other`, both already in the same ring.
    fn merge(&self, other: &Polynomial, scale: u32) -> Polynomial {
        let field = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = field.mul(b[j].1, scale);
                    if c != 0 {
                        out.push((b[j].0.clone(), c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a[i].1, field.mul(b[j].1, scale));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            let c = field.mul(*c, scale);
            if c != 0 {
                out.push((m.clone(), c));
            }
        }
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    /// `self - coeff * mono * other`; the workhorse of division.
    pub fn sub_mul_term(&self, coeff: u32, mono: &Monomial, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ring, other.ring);
        Polynomial {
            ring: self.ring,
            terms: sub_mul_terms(&self.ring, &self.terms, coeff, mono, &other.terms),
        }
    }

    /// Wraps terms that are already sorted, merged and nonzero.
    pub(crate) fn from_sorted_terms(ring: Ring, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring, terms }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = self.ring.field;
        let c = field.from_u64(c as u64);
        if c == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), *c))
                .collect(),
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.ring.field.inv(lc)),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32, RingError> {
        if point.len() != self.ring.nvars {
            return Err(RingError::PointLengthMismatch {
                expected: self.ring.nvars,
                got: point.len(),
            });
        }
        let field = self.ring.field;
        let point: Vec<u32> = point.iter().map(|&v| field.from_u64(v as u64)).collect();
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = field.mul(v, field.pow(*x, e as u64));
                }
            }
            acc = field.add(acc, v);
        }
        Ok(acc)
    }

    /// Same polynomial viewed under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Polynomial, RingError> {
        let ring = self.ring.with_order(order)?;
        if ring == self.ring {
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Polynomial { ring, terms })
    }

    /// Embeds into `target`, a ring with `target.nvars() - self.nvars()` new
    /// variables placed in front of the existing ones.
    pub fn prepend_vars(&self, target: Ring) -> Result<Polynomial, RingError> {
        if target.nvars < self.ring.nvars || target.field != self.ring.field {
            return Err(RingError::RingMismatch);
        }
        let extra = target.nvars - self.ring.nvars;
        Ok(Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.prepend_vars(extra), *c)),
        ))
    }

    /// Restricts to `target`, dropping leading variables that must not occur.
    pub fn drop_leading_vars(&self, target: Ring) -> Option<Polynomial> {
        if target.nvars > self.ring.nvars || target.field != self.ring.field {
            return None;
        }
        let extra = self.ring.nvars - target.nvars;
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.drop_leading_vars(extra)?, *c));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.ring.nvars);
        let nvars = self.ring.nvars;
        Polynomial::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial::new(&e), *c)
            }),
        )
    }

    /// Substitutes `x_i -> images[i]` for every variable; the images live in `target`.
    pub fn substitute(&self, images: &[Polynomial], target: Ring) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars);
        let field = self.ring.field;
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, *c as i64);
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    term = &term * &img.pow(e as u32);
                }
            }
            debug_assert_eq!(target.field, field);
            acc = &acc + &term;
        }
        acc
    }
}

/// Merges `a - coeff * mono * b` for descending term lists of one ring.
fn sub_mul_terms(
    ring: &Ring,
    a: &[Term],
    coeff: u32,
    mono: &Monomial,
    b: &[Term],
) -> Vec<Term> {
    let field = ring.field;
    let order = ring.order;
    let neg = field.neg(coeff);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for (m, c) in b {
        let shifted = m.mul(mono);
        let c = field.mul(*c, neg);
        loop {
            if i < a.len() {
                match order.compare(&a[i].0, &shifted) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let s = field.add(a[i].1, c);
                        if s != 0 {
                            out.push((shifted, s));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Less => {}
                }
            }
            out.push((shifted, c));
            break;
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.ring.field.modulus();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            // print the symmetric representative
            let (neg, abs) = if *c > p / 2 { (true, p - c) } else { (false, *c) };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs == 1 {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::grevlex(n, PrimeField::new(p).unwrap())
    }

    #[test]
    fn add_cancels() {
        let r = ring(7, 2);
        let x = Polynomial::var(r, 0);
        let y = Polynomial::var(r, 1);
        assert_eq!(&(&x + &y) + &(-&y), x);
        assert_eq!(&x + &Polynomial::zero(r), x);
        assert!((&x.scale(3) + &x.scale(4)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(32003, 2);
        let x = Polynomial::var(r, 0);
        let y = Polynomial::var(r, 1);
        let lhs = &(&x - &y) * &(&x + &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
        assert_eq!(&x * &Polynomial::one(r), x);
    }

    #[test]
    fn frobenius_in_char_two() {
        let r = ring(2, 1);
        let x = Polynomial::var(r, 0);
        let sq = (&x + &Polynomial::one(r)).pow(2);
        assert_eq!(sq, Polynomial::from_exponents(r, &[(&[2], 1), (&[0], 1)]));
    }

    #[test]
    fn fermat_conic_vanishes() {
        // 1 + 4 + 9 = 14 = 0 mod 7
        let r = ring(7, 3);
        let f = Polynomial::from_exponents(r, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        assert_eq!(f.evaluate(&[1, 2, 3]).unwrap(), 0);
        assert_eq!(f.evaluate(&[0, 0, 0]).unwrap(), 0);
        assert!(f.evaluate(&[1, 2]).is_err());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(ring(7, 2), 0);
        let b = Polynomial::var(ring(7, 3), 0);
        assert_eq!(a.try_add(&b), Err(RingError::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(RingError::RingMismatch));
    }

    #[test]
    fn sub_mul_term_matches_naive() {
        let r = ring(101, 2);
        let f = Polynomial::from_exponents(r, &[(&[2, 1], 3), (&[1, 1], 5), (&[0, 0], 1)]);
        let g = Polynomial::from_exponents(r, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let m = Monomial::new(&[1, 1]);
        let naive = &f - &(&Polynomial::monomial(r, m.clone(), 3) * &g);
        assert_eq!(f.sub_mul_term(3, &m, &g), naive);
    }

    #[test]
    fn display_uses_symmetric_coefficients() {
        let r = ring(7, 2);
        let f = Polynomial::from_exponents(r, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], 2)]);
        assert_eq!(f.to_string(), "x0 - x1 + 2");
    }
}
