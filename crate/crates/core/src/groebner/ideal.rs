use std::sync::OnceLock;

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Ring, RingError};

use super::buchberger::{buchberger, reduce};
use super::hilbert;
use super::GroebnerError;

/// A polynomial ideal given by generators, with a write-once cache of its
/// reduced Groebner basis under the ring's monomial order.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Self {
            ring: self.ring,
            generators: self.generators.clone(),
            basis,
        }
    }
}

impl Ideal {
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        for g in &generators {
            ring.check_same(g.ring())?;
        }
        Ok(Self {
            ring,
            generators,
            basis: OnceLock::new(),
        })
    }

    /// An ideal whose generators are already its reduced Groebner basis.
    pub(crate) fn from_reduced_basis(ring: Ring, basis: Vec<Polynomial>) -> Self {
        let cache = OnceLock::new();
        let _ = cache.set(basis.clone());
        Self {
            ring,
            generators: basis,
            basis: cache,
        }
    }

    pub fn unit(ring: Ring) -> Self {
        Self::from_reduced_basis(ring, vec![Polynomial::one(ring)])
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    /// Reduced Groebner basis under the ring's order, computed on first use.
    pub fn groebner_basis(&self) -> Result<&[Polynomial], GroebnerError> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let gb = buchberger(&self.generators, self.ring.order())?;
        Ok(self.basis.get_or_init(|| gb))
    }

    pub fn is_unit(&self) -> Result<bool, GroebnerError> {
        Ok(self.groebner_basis()?.iter().any(Polynomial::is_unit))
    }

    /// Normal form of `f` modulo the ideal.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        self.ring.check_same(f.ring())?;
        reduce(f, self.groebner_basis()?)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// `self + (extra)`.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal, GroebnerError> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Ideal::new(self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, GroebnerError> {
        self.ring.check_same(&other.ring)?;
        self.with_generators(&other.generators)
    }

    /// Same ideal in the same variables under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ideal, GroebnerError> {
        let ring = self.ring.with_order(order)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.with_order(order))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    /// Generators of `I ∩ K[x_k, ..., x_{n-1}]`, the ideal with the first `k`
    /// variables eliminated, returned in a grevlex ring on the remaining ones.
    ///
    /// The returned generators are the reduced Groebner basis of the
    /// elimination ideal.
    pub fn eliminate(&self, k: usize) -> Result<Ideal, GroebnerError> {
        let nvars = self.ring.nvars();
        if k >= nvars {
            return Err(GroebnerError::EliminateAll { k, nvars });
        }
        let target = Ring::grevlex(nvars - k, self.ring.field());
        if k == 0 {
            return self.with_order(MonomialOrder::Grevlex);
        }
        let block = self.with_order(MonomialOrder::BlockElimination(k))?;
        let gb = block.groebner_basis()?;
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter_map(|g| g.drop_leading_vars(target))
            .collect();
        Ok(Ideal::from_reduced_basis(target, kept))
    }

    /// The saturation `I : f^∞`.
    ///
    /// Adjoins an auxiliary variable `t` in front, adds `t*f - 1` and
    /// eliminates `t`. The result lives in the same ring as `self`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal, GroebnerError> {
        self.ring.check_same(f.ring())?;
        if f.is_zero() {
            return Err(GroebnerError::ZeroPolynomial);
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let field = self.ring.field();
        let big = Ring::new(
            self.ring.nvars() + 1,
            MonomialOrder::BlockElimination(1),
            field,
        )?;
        let t = Polynomial::var(big, 0);
        let mut gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.prepend_vars(big))
            .collect::<Result<_, RingError>>()?;
        gens.push(&(&t * &f.prepend_vars(big)?) - &Polynomial::one(big));
        let lifted = Ideal::new(big, gens)?;
        let eliminated = lifted.eliminate(1)?;
        if self.ring.order() == MonomialOrder::Grevlex {
            Ok(eliminated)
        } else {
            eliminated.with_order(self.ring.order())
        }
    }

    /// The saturation `I : l^∞` by a linear form `l`.
    ///
    /// For homogeneous `I` the coordinates are changed so that `l` becomes
    /// the last variable `y`; in a grevlex basis of the transformed ideal,
    /// dividing every element by its largest power of `y` gives a basis of
    /// the saturation. Other input falls back to [`Ideal::saturate`].
    pub fn saturate_linear(&self, l: &Polynomial) -> Result<Ideal, GroebnerError> {
        self.ring.check_same(l.ring())?;
        if l.is_zero() {
            return Err(GroebnerError::ZeroPolynomial);
        }
        if !self.is_homogeneous() || !l.is_homogeneous() || l.total_degree() != Some(1) {
            return self.saturate(l);
        }
        let n = self.ring.nvars();
        let field = self.ring.field();
        let flat = Ring::grevlex(n, field);
        let mut c = vec![0u32; n];
        for (m, coef) in l.terms() {
            c[m.support().next().unwrap()] = *coef;
        }
        // j is the last variable occurring in l, so c_i = 0 for i > j
        let j = (0..n).rev().find(|&i| c[i] != 0).unwrap();
        let last = n - 1;
        let y = |i| Polynomial::var(flat, i);
        let mut pivot = y(last);
        for (i, &ci) in c.iter().enumerate().take(j) {
            if ci != 0 {
                pivot = pivot.sub_mul_term(ci, &Monomial::one(n), &y(i));
            }
        }
        let pivot = pivot.scale(field.inv(c[j]));
        let forward: Vec<Polynomial> = (0..n)
            .map(|i| match i {
                _ if i == j => pivot.clone(),
                _ if i == last => y(j),
                _ => y(i),
            })
            .collect();
        let target = self.ring;
        let x = |i| Polynomial::var(target, i);
        let backward: Vec<Polynomial> = (0..n)
            .map(|i| match i {
                _ if i == last => l.clone(),
                _ if i == j => x(last),
                _ => x(i),
            })
            .collect();

        let moved: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.substitute(&forward, flat))
            .collect();
        let gb = buchberger(&moved, MonomialOrder::Grevlex)?;
        let gens: Vec<Polynomial> = gb
            .iter()
            .map(|g| {
                let k = g.terms().iter().map(|(m, _)| m.exponents()[last]).min().unwrap_or(0);
                let divided = Polynomial::from_terms(
                    flat,
                    g.terms().iter().map(|(m, coef)| {
                        let mut e = m.exponents().to_vec();
                        e[last] -= k;
                        (Monomial::new(&e), *coef)
                    }),
                );
                divided.substitute(&backward, target)
            })
            .collect();
        Ideal::new(target, gens)
    }

    /// Saturation by each polynomial in turn.
    pub fn saturate_all(&self, fs: &[Polynomial]) -> Result<Ideal, GroebnerError> {
        let mut acc = self.clone();
        for f in fs {
            acc = acc.saturate(f)?;
        }
        Ok(acc)
    }

    /// Krull dimension of `S/I`; `None` when `I = (1)`.
    pub fn krull_dimension(&self) -> Result<Option<usize>, GroebnerError> {
        let leads = self.leading_monomials()?;
        Ok(hilbert::dimension_and_degree(&leads, self.ring.nvars()).map(|(dim, _)| dim))
    }

    fn leading_monomials(&self) -> Result<Vec<Monomial>, GroebnerError> {
        let graded = if self.ring.order().is_graded() {
            self.groebner_basis()?.to_vec()
        } else {
            self.with_order(MonomialOrder::Grevlex)?
                .groebner_basis()?
                .to_vec()
        };
        Ok(graded
            .iter()
            .map(|g| *g.leading_monomial().unwrap())
            .collect())
    }

    /// Degree of the zero-dimensional projective scheme `V(I)`: the constant
    /// Hilbert polynomial of `S/I`, read off the lead-term ideal.
    ///
    /// Returns 0 for the unit ideal and for ideals whose projective zero set
    /// is empty; positive-dimensional input is an error.
    pub fn degree_projective(&self) -> Result<u64, GroebnerError> {
        if !self.is_homogeneous() {
            return Err(GroebnerError::NotHomogeneous);
        }
        let leads = self.leading_monomials()?;
        match hilbert::dimension_and_degree(&leads, self.ring.nvars()) {
            None | Some((0, _)) => Ok(0),
            Some((1, deg)) => Ok(deg as u64),
            Some((dim, _)) => Err(GroebnerError::PositiveDimensional {
                projective_dimension: dim - 1,
            }),
        }
    }

    /// Ideal equality through reduced Groebner bases under a common order.
    pub fn equals(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        if self.ring.nvars() != other.ring.nvars() || self.ring.field() != other.ring.field() {
            return Err(GroebnerError::Ring(RingError::RingMismatch));
        }
        if self.ring.order() == other.ring.order() {
            return Ok(self.groebner_basis()? == other.groebner_basis()?);
        }
        let b = other.with_order(self.ring.order())?;
        Ok(self.groebner_basis()? == b.groebner_basis()?)
    }
}

/// Free-function form of [`Ideal::equals`].
pub fn ideal_equals(a: &Ideal, b: &Ideal) -> Result<bool, GroebnerError> {
    a.equals(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PrimeField;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn ideal(r: Ring, gens: &[&[(&[u16], i64)]]) -> Ideal {
        Ideal::new(r, gens.iter().map(|t| Polynomial::from_exponents(r, t)).collect()).unwrap()
    }

    #[test]
    fn eliminate_examples() {
        let r = Ring::grevlex(3, field());
        // (t*x - 1, t*y) with t = x0
        let i = ideal(r, &[&[(&[1, 1, 0], 1), (&[0, 0, 0], -1)], &[(&[1, 0, 1], 1)]]);
        let e = i.eliminate(1).unwrap();
        let r2 = Ring::grevlex(2, field());
        assert_eq!(e.generators(), &[Polynomial::var(r2, 1)]);

        let xy = ideal(r2, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)]]);
        assert!(xy.eliminate(0).unwrap().equals(&xy).unwrap());
        assert!(matches!(xy.eliminate(2), Err(GroebnerError::EliminateAll { .. })));

        // graph of a map: (t - x) has trivial projection
        let g = ideal(r2, &[&[(&[1, 0], 1), (&[0, 1], -1)]]);
        assert!(g.eliminate(1).unwrap().generators().is_empty());
    }

    #[test]
    fn saturate_examples() {
        let r = Ring::grevlex(2, field());
        let x = Polynomial::var(r, 0);
        let y = Polynomial::var(r, 1);
        let i = ideal(r, &[&[(&[1, 1], 1)]]);
        assert_eq!(i.saturate(&y).unwrap().generators(), &[x.clone()]);

        let j = ideal(r, &[&[(&[2, 0], 1)], &[(&[1, 1], 1)]]);
        assert!(j.saturate(&x).unwrap().is_unit().unwrap());

        // z1^3 + z2^3 : (z1 + z2)^inf = (z1^2 - z1 z2 + z2^2)
        let k = ideal(r, &[&[(&[3, 0], 1), (&[0, 3], 1)]]);
        let sat = k.saturate(&(&x + &y)).unwrap();
        let expected = Polynomial::from_exponents(r, &[(&[2, 0], 1), (&[1, 1], -1), (&[0, 2], 1)]);
        assert_eq!(sat.generators(), &[expected]);
        assert_eq!(sat.degree_projective().unwrap(), 2);

        assert_eq!(
            k.saturate(&Polynomial::zero(r)).unwrap_err(),
            GroebnerError::ZeroPolynomial
        );
    }

    #[test]
    fn linear_saturation_matches_rabinowitsch() {
        let r = Ring::grevlex(3, field());
        let cases = [
            ideal(r, &[&[(&[2, 1, 0], 1), (&[0, 1, 2], -3)], &[(&[1, 1, 1], 1), (&[0, 3, 0], 2)]]),
            ideal(r, &[&[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)], &[(&[1, 1, 0], 1), (&[0, 0, 2], 5)]]),
            ideal(r, &[&[(&[1, 1, 0], 1)], &[(&[1, 0, 1], 1)]]),
        ];
        let forms = [
            Polynomial::from_exponents(r, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]),
            Polynomial::from_exponents(r, &[(&[1, 0, 0], 2), (&[0, 1, 0], -1)]),
            Polynomial::var(r, 0),
            Polynomial::var(r, 2),
        ];
        for i in &cases {
            for l in &forms {
                let fast = i.saturate_linear(l).unwrap();
                let slow = i.saturate(l).unwrap();
                assert!(fast.equals(&slow).unwrap(), "{:?} by {l}", i.generators());
            }
        }
    }

    #[test]
    fn degree_examples() {
        let r = Ring::grevlex(2, field());
        for d in 1..7u16 {
            let f = ideal(r, &[&[(&[d, 0], 1), (&[0, d], 1)]]);
            assert_eq!(f.degree_projective().unwrap(), d as u64);
        }
        let irrelevant = ideal(r, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)]]);
        assert_eq!(irrelevant.degree_projective().unwrap(), 0);
        assert_eq!(Ideal::unit(r).degree_projective().unwrap(), 0);

        let r3 = Ring::grevlex(3, field());
        let curve = ideal(r3, &[&[(&[2, 0, 0], 1), (&[0, 1, 1], 1)]]);
        assert_eq!(
            curve.degree_projective().unwrap_err(),
            GroebnerError::PositiveDimensional { projective_dimension: 1 }
        );
        let affine = ideal(r, &[&[(&[1, 0], 1), (&[0, 0], 1)]]);
        assert_eq!(affine.degree_projective().unwrap_err(), GroebnerError::NotHomogeneous);
    }

    #[test]
    fn equality_examples() {
        let r = Ring::grevlex(2, field());
        let a = ideal(r, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)]]);
        let b = ideal(r, &[&[(&[0, 1], 1)], &[(&[1, 0], 1), (&[0, 1], 1)]]);
        assert!(a.equals(&b).unwrap());
        let c = ideal(r, &[&[(&[1, 0], 1)]]);
        let d = ideal(r, &[&[(&[2, 0], 1)]]);
        assert!(!c.equals(&d).unwrap());
        let other = ideal(Ring::grevlex(3, field()), &[&[(&[1, 0, 0], 1)]]);
        assert!(c.equals(&other).is_err());
    }
}
