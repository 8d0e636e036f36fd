use std::cmp::Ordering;
use std::fmt;

use super::RingError;

pub type Exponent = u16;

/// Largest number of variables a monomial can carry.
pub const MAX_VARS: usize = 16;

/// A power product `x_0^e_0 * ... * x_{n-1}^e_{n-1}` with its cached total degree.
///
/// Exponents live inline; slots past `nvars` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [Exponent; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl Monomial {
    /// Panics if `exps` is longer than [`MAX_VARS`].
    pub fn new(exps: &[Exponent]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut arr = [0; MAX_VARS];
        arr[..exps.len()].copy_from_slice(exps);
        Self {
            exps: arr,
            nvars: exps.len() as u8,
            degree: exps.iter().map(|&e| e as u32).sum(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Self {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    /// The monomial `x_var^power` in `nvars` variables.
    pub fn var_power(nvars: usize, var: usize, power: Exponent) -> Self {
        assert!(var < nvars);
        let mut m = Self::one(nvars);
        m.exps[var] = power;
        m.degree = power as u32;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut exps = [0; MAX_VARS];
        for i in 0..self.nvars as usize {
            exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow in monomial product");
        }
        Monomial {
            exps,
            nvars: self.nvars,
            degree: self.degree + other.degree,
        }
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps[..self.nvars as usize]
                .iter()
                .zip(&other.exps[..self.nvars as usize])
                .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = [0; MAX_VARS];
        for i in 0..self.nvars as usize {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Some(Monomial {
            exps,
            nvars: self.nvars,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; MAX_VARS];
        let mut degree = 0;
        for i in 0..self.nvars as usize {
            exps[i] = self.exps[i].max(other.exps[i]);
            degree += exps[i] as u32;
        }
        Monomial {
            exps,
            nvars: self.nvars,
            degree,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exponents()
            .iter()
            .zip(other.exponents())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents()
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Inserts `count` zero exponents in front; used when adjoining auxiliary variables.
    pub fn prepend_vars(&self, count: usize) -> Monomial {
        let mut exps = vec![0; count];
        exps.extend_from_slice(self.exponents());
        Monomial::new(&exps)
    }

    /// Drops the first `count` variables, which must all have exponent zero.
    pub fn drop_leading_vars(&self, count: usize) -> Option<Monomial> {
        let e = self.exponents();
        if e[..count].iter().any(|&x| x != 0) {
            return None;
        }
        Some(Monomial::new(&e[count..]))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i)?;
            } else {
                write!(f, "x{}^{}", i, e)?;
            }
        }
        Ok(())
    }
}

/// Monomial orders supported by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with `x_0 > x_1 > ... > x_{n-1}`.
    Grevlex,
    /// Eliminates the first `k` variables: grevlex on the first block decides,
    /// ties are broken by grevlex on the remaining variables.
    BlockElimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a.exponents(), a.degree, b.exponents(), b.degree),
            MonomialOrder::BlockElimination(k) => {
                let (ah, at) = a.exponents().split_at(k);
                let (bh, bt) = b.exponents().split_at(k);
                let adh: u32 = ah.iter().map(|&e| e as u32).sum();
                let bdh: u32 = bh.iter().map(|&e| e as u32).sum();
                grevlex(ah, adh, bh, bdh)
                    .then_with(|| grevlex(at, a.degree - adh, bt, b.degree - bdh))
            }
        }
    }

    /// Checked comparison, rejecting monomials from different rings.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, RingError> {
        if a.nvars() != b.nvars() {
            return Err(RingError::VariableCountMismatch {
                left: a.nvars(),
                right: b.nvars(),
            });
        }
        if let MonomialOrder::BlockElimination(k) = *self {
            if k > a.nvars() {
                return Err(RingError::BlockTooLarge {
                    block: k,
                    nvars: a.nvars(),
                });
            }
        }
        Ok(self.compare(a, b))
    }

    /// True when comparison starts with the total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex | MonomialOrder::BlockElimination(0))
    }
}

#[inline]
fn grevlex(a: &[Exponent], da: u32, b: &[Exponent], db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
