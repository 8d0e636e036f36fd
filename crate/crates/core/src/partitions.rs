//! Integer partitions of `n+1` and the counting coefficients `c_a`, `o_a`
//! attached to them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partitions need n+1 >= 2 and d >= 2, got n+1 = {n_plus_1}, d = {d}")]
    OutOfRange { n_plus_1: usize, d: usize },
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    Invalid(Vec<usize>),
    #[error("coefficient overflows 128 bits")]
    Overflow,
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::Invalid(parts));
        }
        Ok(Self { parts })
    }

    #[inline]
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number of parts `s`.
    #[inline]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The partitioned integer, `n+1`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Multiplicities of the distinct part values, largest value first.
    pub fn alpha(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 && self.parts[i - 1] == *p {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `m` with between `min_len` and `max_len` parts, in
/// lexicographically decreasing order.
pub fn partitions_with_length(m: usize, min_len: usize, max_len: usize) -> Vec<Partition> {
    fn rec(left: usize, cap: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, m, max_len, &mut Vec::new(), &mut out);
    }
    out.into_iter()
        .filter(|p| p.len() >= min_len)
        .map(|parts| Partition { parts })
        .collect()
}

/// The partitions of `n+1` of length `2..=min(d, n+1)`, lexicographically
/// decreasing.
pub fn enumerate_partitions(n_plus_1: usize, d: usize) -> Result<Vec<Partition>, PartitionError> {
    if n_plus_1 < 2 || d < 2 {
        return Err(PartitionError::OutOfRange { n_plus_1, d });
    }
    Ok(partitions_with_length(n_plus_1, 2, d.min(n_plus_1)))
}

/// `binom(n, k)` with overflow detection.
pub fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `c_a = binom(N, a1) * binom(N - a1, a2) * ... * binom(N - a1 - ... - a_{s-2}, a_{s-1})`
/// with `N = n+1`: the number of ways to assign coordinates to the blocks.
pub fn coefficient_c(a: &Partition) -> Result<u128, PartitionError> {
    let mut left = a.total() as u128;
    let mut acc: u128 = 1;
    for &p in &a.parts[..a.len() - 1] {
        let b = binomial(left, p as u128).ok_or(PartitionError::Overflow)?;
        acc = acc.checked_mul(b).ok_or(PartitionError::Overflow)?;
        left -= p as u128;
    }
    Ok(acc)
}

/// `o_a`, the product of the factorials of the multiplicities.
pub fn symmetry_order_o(a: &Partition) -> Result<u128, PartitionError> {
    a.alpha().into_iter().try_fold(1u128, |acc, k| {
        let fact = (1..=k as u128).try_fold(1u128, |f, i| f.checked_mul(i));
        fact.and_then(|f| acc.checked_mul(f)).ok_or(PartitionError::Overflow)
    })
}
