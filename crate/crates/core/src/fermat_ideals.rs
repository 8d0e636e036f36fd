//! The polynomials and ideals attached to the Fermat hypersurface
//! `F_{n,d} = V(x_0^d + ... + x_n^d)`: the critical ideal of the likelihood
//! function, its arrangement-free part, and the partition ideals `I_a^d`
//! in `s` variables `z_0, ..., z_{s-1}`.

use rand::Rng;
use thiserror::Error;

use crate::groebner::{GroebnerError, Ideal};
use crate::partitions::Partition;
use crate::polyring::{Monomial, Polynomial, PrimeField, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FermatError {
    #[error("need {what}, got {got}")]
    OutOfRange { what: &'static str, got: usize },
    #[error("column indices must satisfy i < j < k < {len}, got ({i}, {j}, {k})")]
    BadIndices { i: usize, j: usize, k: usize, len: usize },
    #[error("data vector entries must be nonzero with nonzero sum")]
    BadData,
    #[error("index set must be nonempty and inside the ring")]
    BadIndexSet,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A data point `u` over `F_p`: nonzero entries with nonzero sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataVector {
    field: PrimeField,
    u: Vec<u32>,
    sum: u32,
}

impl DataVector {
    pub fn new(field: PrimeField, values: &[i64]) -> Result<Self, FermatError> {
        let u: Vec<u32> = values.iter().map(|&v| field.from_i64(v)).collect();
        let sum = u.iter().fold(0, |acc, &v| field.add(acc, v));
        if u.is_empty() || u.contains(&0) || sum == 0 {
            return Err(FermatError::BadData);
        }
        Ok(Self { field, u, sum })
    }

    /// `(1, ..., 1)` of length `len`; requires `len` to be nonzero mod `p`.
    pub fn all_ones(field: PrimeField, len: usize) -> Result<Self, FermatError> {
        Self::new(field, &vec![1; len])
    }

    /// Uniform entries in `[1, p-1]`, redrawn until the sum is nonzero.
    pub fn sample<R: Rng + ?Sized>(field: PrimeField, len: usize, rng: &mut R) -> Self {
        let p = field.modulus();
        loop {
            let values: Vec<i64> = (0..len).map(|_| rng.gen_range(1..p) as i64).collect();
            if let Ok(v) = Self::new(field, &values) {
                return v;
            }
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn values(&self) -> &[u32] {
        &self.u
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.u.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    #[inline]
    pub fn sum(&self) -> u32 {
        self.sum
    }

    pub fn is_all_ones(&self) -> bool {
        self.u.iter().all(|&v| v == 1)
    }
}

fn exps(nvars: usize, pairs: &[(usize, u16)]) -> Monomial {
    let mut e = vec![0u16; nvars];
    for &(v, p) in pairs {
        e[v] += p;
    }
    Monomial::new(&e)
}

fn degree_u16(d: usize) -> u16 {
    u16::try_from(d).expect("degree fits in an exponent")
}

/// `x_0^d + ... + x_n^d` in `n+1` variables.
pub fn fermat_polynomial(field: PrimeField, n: usize, d: usize) -> Result<Polynomial, FermatError> {
    if n < 1 {
        return Err(FermatError::OutOfRange { what: "n >= 1", got: n });
    }
    if d < 2 {
        return Err(FermatError::OutOfRange { what: "d >= 2", got: d });
    }
    Ok(weighted_power_sum(Ring::grevlex(n + 1, field), &vec![1; n + 1], d))
}

/// `w_0 x_0^d + ... + w_m x_m^d`.
fn weighted_power_sum(ring: Ring, weights: &[u32], d: usize) -> Polynomial {
    let nvars = ring.nvars();
    Polynomial::from_terms(
        ring,
        weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (exps(nvars, &[(i, degree_u16(d))]), w)),
    )
}

/// `w_0 x_0 + ... + w_m x_m`.
fn weighted_linear_form(ring: Ring, weights: &[u32]) -> Polynomial {
    let nvars = ring.nvars();
    Polynomial::from_terms(
        ring,
        weights.iter().enumerate().map(|(i, &w)| (exps(nvars, &[(i, 1)]), w)),
    )
}

/// `x_0 + ... + x_{m-1}` in a ring with `m` variables.
pub fn coordinate_sum(ring: Ring) -> Polynomial {
    weighted_linear_form(ring, &vec![1; ring.nvars()])
}

fn check_indices(i: usize, j: usize, k: usize, len: usize) -> Result<(), FermatError> {
    if i < j && j < k && k < len {
        Ok(())
    } else {
        Err(FermatError::BadIndices { i, j, k, len })
    }
}

/// The `3x3` minor on columns `i < j < k` of the matrix with rows `u`,
/// `x` and `(x_0^d, ..., x_n^d)`:
/// `u_i x_j x_k (x_k^{d-1} - x_j^{d-1}) + u_j x_k x_i (x_i^{d-1} - x_k^{d-1})
///  + u_k x_i x_j (x_j^{d-1} - x_i^{d-1})`.
///
/// For `u = (1, ..., 1)` the factored form is used instead.
pub fn minor(u: &DataVector, d: usize, i: usize, j: usize, k: usize) -> Result<Polynomial, FermatError> {
    let len = u.len();
    check_indices(i, j, k, len)?;
    if d < 2 {
        return Err(FermatError::OutOfRange { what: "d >= 2", got: d });
    }
    let ring = Ring::grevlex(len, u.field());
    if u.is_all_ones() {
        return factored_minor_in(ring, d, i, j, k);
    }
    Ok(expanded_minor(ring, u.values(), d, i, j, k))
}

fn expanded_minor(ring: Ring, u: &[u32], d: usize, i: usize, j: usize, k: usize) -> Polynomial {
    let field = ring.field();
    let nvars = ring.nvars();
    let e = degree_u16(d);
    let mut terms = Vec::with_capacity(6);
    // cyclic rotations (i, j, k), (j, k, i), (k, i, j) of a x_b x_c^d - a x_b^d x_c
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        terms.push((exps(nvars, &[(b, 1), (c, e)]), u[a]));
        terms.push((exps(nvars, &[(b, e), (c, 1)]), field.neg(u[a])));
    }
    Polynomial::from_terms(ring, terms)
}

/// The complete homogeneous symmetric polynomial of degree `m` in the
/// variables indexed by `indices`.
pub fn symmetric_sum(ring: Ring, indices: &[usize], m: usize) -> Result<Polynomial, FermatError> {
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.is_empty() || idx.len() != indices.len() || *idx.last().unwrap() >= ring.nvars() {
        return Err(FermatError::BadIndexSet);
    }
    let nvars = ring.nvars();
    let mut terms = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(pos: usize, left: u16, idx: &[usize], cur: &mut Vec<u16>, out: &mut Vec<(Monomial, u32)>) {
        if pos == idx.len() - 1 {
            cur[idx[pos]] = left;
            out.push((Monomial::new(cur), 1));
            cur[idx[pos]] = 0;
            return;
        }
        for e in 0..=left {
            cur[idx[pos]] = e;
            rec(pos + 1, left - e, idx, cur, out);
        }
        cur[idx[pos]] = 0;
    }
    rec(0, degree_u16(m), &idx, &mut cur, &mut terms);
    Ok(Polynomial::from_terms(ring, terms))
}

fn factored_minor_in(ring: Ring, d: usize, i: usize, j: usize, k: usize) -> Result<Polynomial, FermatError> {
    let z = |v| Polynomial::var(ring, v);
    let vandermonde = &(&(&z(i) - &z(j)) * &(&z(j) - &z(k))) * &(&z(k) - &z(i));
    Ok(&vandermonde * &symmetric_sum(ring, &[i, j, k], d - 2)?)
}

/// The all-ones minor in `s` variables built from its factorization
/// `(z_i - z_j)(z_j - z_k)(z_k - z_i) h_{d-2}(z_i, z_j, z_k)`.
/// Indices are zero-based: `0 <= i < j < k < s`.
pub fn factored_minor(field: PrimeField, s: usize, d: usize, i: usize, j: usize, k: usize) -> Result<Polynomial, FermatError> {
    check_indices(i, j, k, s)?;
    if d < 2 {
        return Err(FermatError::OutOfRange { what: "d >= 2", got: d });
    }
    factored_minor_in(Ring::grevlex(s, field), d, i, j, k)
}

fn all_minors(ring: Ring, u: Option<&[u32]>, d: usize) -> Result<Vec<Polynomial>, FermatError> {
    let m = ring.nvars();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                out.push(match u {
                    Some(u) => expanded_minor(ring, u, d, i, j, k),
                    None => factored_minor_in(ring, d, i, j, k)?,
                });
            }
        }
    }
    Ok(out)
}

/// `I^u_{n,d} = (f_{n,d}, e_ijk for all i < j < k)` in `n+1` variables.
pub fn critical_ideal(n: usize, d: usize, u: &DataVector) -> Result<Ideal, FermatError> {
    if n < 2 {
        return Err(FermatError::OutOfRange { what: "n >= 2", got: n });
    }
    if u.len() != n + 1 {
        return Err(FermatError::OutOfRange { what: "a data vector of length n+1", got: u.len() });
    }
    let field = u.field();
    let ring = Ring::grevlex(n + 1, field);
    let mut gens = vec![fermat_polynomial(field, n, d)?];
    let values = (!u.is_all_ones()).then(|| u.values());
    gens.extend(all_minors(ring, values, d)?);
    Ok(Ideal::new(ring, gens)?)
}

/// Saturation by `x_0 + ... + x_n` alone. On the Fermat critical ideal this
/// removes every solution on the coordinate hyperplanes as well.
pub fn remove_arrangement(ideal: &Ideal) -> Result<Ideal, FermatError> {
    Ok(ideal.saturate_linear(&coordinate_sum(*ideal.ring()))?)
}

/// Saturation by every coordinate and by their sum, one after another.
pub fn remove_arrangement_all(ideal: &Ideal) -> Result<Ideal, FermatError> {
    let ring = *ideal.ring();
    let mut acc = ideal.clone();
    for i in 0..ring.nvars() {
        acc = acc.saturate_linear(&Polynomial::var(ring, i))?;
    }
    Ok(acc.saturate_linear(&coordinate_sum(ring))?)
}

/// `(x_0 + ... + x_n, x_0^d + ... + x_n^d, x_k x_h (x_h^{d-1} - x_k^{d-1}) for k < h)`,
/// the critical ideal cut with the hyperplane `x_0 + ... + x_n = 0`,
/// which does not depend on `u`.
pub fn arrangement_slice_ideal(field: PrimeField, n: usize, d: usize) -> Result<Ideal, FermatError> {
    let f = fermat_polynomial(field, n, d)?;
    let ring = *f.ring();
    let nvars = n + 1;
    let e = degree_u16(d);
    let mut gens = vec![coordinate_sum(ring), f];
    for k in 0..nvars {
        for h in k + 1..nvars {
            gens.push(Polynomial::from_terms(
                ring,
                [
                    (exps(nvars, &[(k, 1), (h, e)]), 1),
                    (exps(nvars, &[(k, e), (h, 1)]), field.neg(1)),
                ],
            ));
        }
    }
    Ok(Ideal::new(ring, gens)?)
}

fn partition_weights(field: PrimeField, a: &Partition) -> Vec<u32> {
    a.parts().iter().map(|&p| field.from_u64(p as u64)).collect()
}

fn partition_ring(field: PrimeField, a: &Partition) -> Result<Ring, FermatError> {
    if a.len() < 2 {
        return Err(FermatError::OutOfRange { what: "a partition with at least two parts", got: a.len() });
    }
    Ok(Ring::grevlex(a.len(), field))
}

/// `(a_1 z_1^d + ... + a_s z_s^d, e_ijk at u = 1)` before any saturation.
fn partition_generators(field: PrimeField, a: &Partition, d: usize) -> Result<Ideal, FermatError> {
    if d < 2 {
        return Err(FermatError::OutOfRange { what: "d >= 2", got: d });
    }
    let ring = partition_ring(field, a)?;
    let mut gens = vec![weighted_power_sum(ring, &partition_weights(field, a), d)];
    gens.extend(all_minors(ring, None, d)?);
    Ok(Ideal::new(ring, gens)?)
}

/// The weighted linear form `a_1 z_1 + ... + a_s z_s`.
pub fn partition_linear_form(field: PrimeField, a: &Partition) -> Result<Polynomial, FermatError> {
    Ok(weighted_linear_form(partition_ring(field, a)?, &partition_weights(field, a)))
}

fn differences(ring: Ring) -> Vec<Polynomial> {
    let s = ring.nvars();
    let mut out = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            out.push(&Polynomial::var(ring, i) - &Polynomial::var(ring, j));
        }
    }
    out
}

/// The ideal `I_a^d` of `a`-critical points in `s = len(a)` variables.
///
/// For `s = 2` this is `(a_1 z_1^d + a_2 z_2^d) : (a_1 z_1 + a_2 z_2)^inf`.
/// For `s >= 3` the generators are saturated by each `z_i - z_j` in
/// lexicographic order of `(i, j)`, then by the weighted linear form.
pub fn partition_ideal(field: PrimeField, a: &Partition, d: usize) -> Result<Ideal, FermatError> {
    let linear = partition_linear_form(field, a)?;
    let base = if a.len() >= 3 {
        partition_ideal_without_weighted_sum(field, a, d)?
    } else {
        partition_generators(field, a, d)?
    };
    Ok(base.saturate_linear(&linear)?)
}

/// The generators of `I_a^d` saturated by the differences `z_i - z_j` only,
/// keeping the points on `a_1 z_1 + ... + a_s z_s = 0`.
pub fn partition_ideal_without_weighted_sum(field: PrimeField, a: &Partition, d: usize) -> Result<Ideal, FermatError> {
    let mut ideal = partition_generators(field, a, d)?;
    for f in differences(*ideal.ring()) {
        ideal = ideal.saturate_linear(&f)?;
    }
    Ok(ideal)
}
