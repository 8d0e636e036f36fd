//! ML degrees of Fermat hypersurfaces: the random-data and partitioning
//! strategies, closed formulas, and the multi-prime cross-check.

mod closed;
mod engine;

pub use closed::{
    boundary_count_plane, closed_form_plane_curve, closed_form_quadric, length2_degree,
    length2_total,
};
pub use engine::{cross_check, mldeg_partitioning, mldeg_random_data, CrossCheckReport, Engine};

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fermat_ideals::FermatError;
use crate::groebner::GroebnerError;
use crate::partitions::{Partition, PartitionError};
use crate::polyring::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MldegError {
    #[error("argument out of range: need {0}")]
    OutOfRange(&'static str),
    #[error("integer overflow")]
    Overflow,
    #[error("prime {prime} is unusable for n = {n}, d = {d}: {reason}")]
    BadPrime { prime: u32, n: usize, d: usize, reason: &'static str },
    #[error("no closed formula for n = {n}, d = {d}")]
    NoClosedForm { n: usize, d: usize },
    #[error("timed out")]
    Timeout,
    #[error("results disagree for n = {n}, d = {d}: {details}")]
    Disagreement { n: usize, d: usize, details: String },
    #[error("{0}")]
    Fermat(FermatError),
    #[error("{0}")]
    Partition(#[from] PartitionError),
}

impl From<GroebnerError> for MldegError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Timeout => MldegError::Timeout,
            other => MldegError::Fermat(FermatError::Groebner(other)),
        }
    }
}

impl From<FermatError> for MldegError {
    fn from(e: FermatError) -> Self {
        match e {
            FermatError::Groebner(g) => g.into(),
            other => MldegError::Fermat(other),
        }
    }
}

/// How an ML degree is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Closed formula (`d = 2` or `n = 2`).
    Closed,
    /// Sum over partitions of `c_a deg(I_a^d) / o_a`.
    Partitioning,
    /// As `Partitioning`, with each `deg I_a^d` taken as a difference of two
    /// degrees that avoid the saturation by the weighted linear form.
    PartitioningDiff,
    /// Degree of the arrangement-free critical ideal for random data.
    Random,
    /// Degree of the critical ideal for random data minus the degree of its
    /// part on the hyperplane `x_0 + ... + x_n = 0`.
    RandomDiff,
    /// Closed formula when one exists, otherwise `PartitioningDiff`.
    Auto,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Closed,
        Strategy::Partitioning,
        Strategy::PartitioningDiff,
        Strategy::Random,
        Strategy::RandomDiff,
        Strategy::Auto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Closed => "closed",
            Strategy::Partitioning => "partitioning",
            Strategy::PartitioningDiff => "partitioning-diff",
            Strategy::Random => "random",
            Strategy::RandomDiff => "random-diff",
            Strategy::Auto => "auto",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy `{s}`"))
    }
}

/// Run parameters shared by every strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Moduli to compute over; results must agree across all of them.
    pub primes: Vec<u32>,
    pub seed: u64,
    /// Worker threads for per-partition and per-prime tasks.
    pub parallelism: usize,
    pub timeout: Option<Duration>,
    pub strategy: Strategy,
    /// Largest `n` for which `cross_check` runs the random-data strategies.
    pub random_cap: usize,
}

pub const DEFAULT_PRIMES: [u32; 2] = [32003, 65537];

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            primes: DEFAULT_PRIMES.to_vec(),
            seed: 1,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            timeout: None,
            strategy: Strategy::Auto,
            random_cap: 4,
        }
    }
}

/// Smallest modulus the engine accepts.
pub const MIN_PRIME: u32 = 101;

/// Checks that `p` is a prime at least [`MIN_PRIME`] that divides neither
/// `d` nor any integer up to `n+1` (so `n+1` and every partition part are
/// units mod `p`).
pub fn screen_prime(p: u32, n: usize, d: usize) -> Result<(), MldegError> {
    let bad = |reason| Err(MldegError::BadPrime { prime: p, n, d, reason });
    if !is_prime(p as u64) {
        return bad("not prime");
    }
    if p < MIN_PRIME {
        return bad("below the minimum modulus");
    }
    if d % p as usize == 0 {
        return bad("divides d");
    }
    if (n + 1) as u64 >= p as u64 {
        return bad("does not exceed n+1");
    }
    Ok(())
}

/// One summand of the partition formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionContribution {
    pub partition: Partition,
    pub c: u128,
    pub o: u128,
    pub degree: u64,
    /// `c * degree / o`.
    pub contribution: u128,
}

/// Wall-clock time of one phase of a computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseTiming {
    pub phase: String,
    pub seconds: f64,
}

/// Outcome of one ML degree computation.
///
/// Equality ignores `elapsed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MLDegreeResult {
    pub n: usize,
    pub d: usize,
    /// The strategy that produced `value`; `Auto` is resolved.
    pub strategy: Strategy,
    pub value: u128,
    pub breakdown: Option<Vec<PartitionContribution>>,
    /// Moduli whose results agreed on `value`; empty for closed formulas.
    pub primes: Vec<u32>,
    pub elapsed: Vec<PhaseTiming>,
}

impl PartialEq for MLDegreeResult {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.d == other.d
            && self.strategy == other.strategy
            && self.value == other.value
            && self.breakdown == other.breakdown
            && self.primes == other.primes
    }
}

impl MLDegreeResult {
    /// Total of all phase timings.
    pub fn seconds(&self) -> f64 {
        self.elapsed.iter().map(|p| p.seconds).sum()
    }
}

/// The closed formula for `F_{n,d}`, when one applies.
pub fn closed_form(n: usize, d: usize) -> Result<Option<u128>, MldegError> {
    if d == 2 {
        return closed_form_quadric(n).map(Some);
    }
    if n == 2 {
        return closed_form_plane_curve(d).map(Some);
    }
    Ok(None)
}
