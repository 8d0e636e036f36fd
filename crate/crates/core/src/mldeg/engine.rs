use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    closed_form, screen_prime, EngineConfig, MLDegreeResult, MldegError, PartitionContribution,
    PhaseTiming, Strategy,
};
use crate::fermat_ideals::{
    arrangement_slice_ideal, critical_ideal, partition_ideal, partition_ideal_without_weighted_sum,
    partition_linear_form, remove_arrangement, DataVector,
};
use crate::groebner::budget;
use crate::partitions::{coefficient_c, enumerate_partitions, symmetry_order_o, Partition};
use crate::polyring::{next_prime, PrimeField};

/// Attempts with fresh primes before a disagreement becomes an error.
const MAX_ATTEMPTS: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct MemoKey {
    parts: Vec<usize>,
    d: usize,
    prime: u32,
    by_difference: bool,
}

/// Runs strategies under one configuration, sharing a worker pool and a
/// table of partition-ideal degrees across calls.
pub struct Engine {
    cfg: EngineConfig,
    pool: rayon::ThreadPool,
    memo: Mutex<HashMap<MemoKey, u64>>,
}

/// Values of every applicable strategy for one `(n, d)`, all equal to `value`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub n: usize,
    pub d: usize,
    pub value: u128,
    pub runs: Vec<MLDegreeResult>,
}

fn phase(name: &str, since: Instant) -> PhaseTiming {
    PhaseTiming {
        phase: name.to_string(),
        seconds: since.elapsed().as_secs_f64(),
    }
}

impl Engine {
    pub fn new(cfg: EngineConfig) -> Result<Self, MldegError> {
        if cfg.primes.is_empty() {
            return Err(MldegError::OutOfRange("at least one prime"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism.max(1))
            .build()
            .map_err(|_| MldegError::OutOfRange("a usable thread pool"))?;
        Ok(Self {
            cfg,
            pool,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    /// Runs the configured strategy.
    pub fn compute(&self, n: usize, d: usize) -> Result<MLDegreeResult, MldegError> {
        self.compute_with(n, d, self.cfg.strategy)
    }

    pub fn compute_with(&self, n: usize, d: usize, strategy: Strategy) -> Result<MLDegreeResult, MldegError> {
        match strategy {
            Strategy::Closed => self.closed(n, d),
            Strategy::Partitioning => self.partitioning(n, d, false),
            Strategy::PartitioningDiff => self.partitioning(n, d, true),
            Strategy::Random => self.random_data(n, d, false),
            Strategy::RandomDiff => self.random_data(n, d, true),
            Strategy::Auto => {
                if closed_form(n, d)?.is_some() {
                    self.closed(n, d)
                } else {
                    self.partitioning(n, d, true)
                }
            }
        }
    }

    fn check_bounds(n: usize, d: usize) -> Result<(), MldegError> {
        if n < 1 {
            return Err(MldegError::OutOfRange("n >= 1"));
        }
        if d < 2 {
            return Err(MldegError::OutOfRange("d >= 2"));
        }
        Ok(())
    }

    pub fn closed(&self, n: usize, d: usize) -> Result<MLDegreeResult, MldegError> {
        Self::check_bounds(n, d)?;
        let start = Instant::now();
        let value = closed_form(n, d)?.ok_or(MldegError::NoClosedForm { n, d })?;
        Ok(MLDegreeResult {
            n,
            d,
            strategy: Strategy::Closed,
            value,
            breakdown: None,
            primes: Vec::new(),
            elapsed: vec![phase("formula", start)],
        })
    }

    /// The primes for attempt `k`: the configured ones first, then fresh
    /// screened primes above everything used so far.
    fn primes_for_attempt(&self, used: &[u32], attempt: u64, n: usize, d: usize) -> Result<Vec<u32>, MldegError> {
        if attempt == 0 {
            for &p in &self.cfg.primes {
                screen_prime(p, n, d)?;
            }
            return Ok(self.cfg.primes.clone());
        }
        let want = self.cfg.primes.len().max(2);
        let mut p = used.iter().copied().max().unwrap_or(0);
        let mut out = Vec::with_capacity(want);
        while out.len() < want {
            p = next_prime(p);
            if screen_prime(p, n, d).is_ok() {
                out.push(p);
            }
        }
        Ok(out)
    }

    fn deadline(&self) -> Option<Instant> {
        self.cfg.timeout.map(|t| Instant::now() + t)
    }

    /// `deg I_a^d` over `F_p`, memoized.
    fn partition_degree(
        &self,
        a: &Partition,
        d: usize,
        prime: u32,
        by_difference: bool,
        deadline: Option<Instant>,
    ) -> Result<u64, MldegError> {
        let key = MemoKey {
            parts: a.parts().to_vec(),
            d,
            prime,
            by_difference,
        };
        if let Some(&v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let field = PrimeField::new(prime).map_err(|_| MldegError::BadPrime {
            prime,
            n: a.total() - 1,
            d,
            reason: "not prime",
        })?;
        let degree = budget::with_deadline(deadline, || -> Result<u64, MldegError> {
            if by_difference {
                let tilde = partition_ideal_without_weighted_sum(field, a, d)?;
                let cut = tilde.with_generators(&[partition_linear_form(field, a)?])?;
                let whole = tilde.degree_projective()?;
                let part = cut.degree_projective()?;
                whole.checked_sub(part).ok_or(MldegError::BadPrime {
                    prime,
                    n: a.total() - 1,
                    d,
                    reason: "negative degree difference",
                })
            } else {
                Ok(partition_ideal(field, a, d)?.degree_projective()?)
            }
        })?;
        self.memo.lock().unwrap().entry(key).or_insert(degree);
        Ok(degree)
    }

    /// Sum of `c_a deg(I_a^d) / o_a` over the partitions of `n+1` of length
    /// `2..=min(d, n+1)`, with the degrees agreeing across primes.
    pub fn partitioning(&self, n: usize, d: usize, by_difference: bool) -> Result<MLDegreeResult, MldegError> {
        Self::check_bounds(n, d)?;
        let start = Instant::now();
        let deadline = self.deadline();
        let parts = enumerate_partitions(n + 1, d)?;
        let coeffs = parts
            .iter()
            .map(|a| Ok((coefficient_c(a)?, symmetry_order_o(a)?)))
            .collect::<Result<Vec<_>, MldegError>>()?;
        let enumerated = phase("enumerate", start);
        let strategy = if by_difference {
            Strategy::PartitioningDiff
        } else {
            Strategy::Partitioning
        };

        let mut used: Vec<u32> = Vec::new();
        let mut failures: Vec<String> = Vec::new();
        for attempt in 0..MAX_ATTEMPTS {
            let primes = self.primes_for_attempt(&used, attempt, n, d)?;
            used.extend(&primes);
            let tasks: Vec<(usize, usize)> = (0..primes.len())
                .flat_map(|pi| (0..parts.len()).map(move |ai| (pi, ai)))
                .collect();
            let degrees: Vec<u64> = self.pool.install(|| {
                tasks
                    .par_iter()
                    .map(|&(pi, ai)| self.partition_degree(&parts[ai], d, primes[pi], by_difference, deadline))
                    .collect::<Result<Vec<u64>, MldegError>>()
            })?;

            let mut breakdowns: Vec<Result<Vec<PartitionContribution>, String>> = Vec::new();
            for (pi, &p) in primes.iter().enumerate() {
                let row = &degrees[pi * parts.len()..(pi + 1) * parts.len()];
                breakdowns.push(assemble(&parts, &coeffs, row).map_err(|e| format!("p = {p}: {e}")));
            }
            let first = breakdowns[0].clone();
            match first {
                Ok(b) if breakdowns.iter().all(|x| x.as_ref() == Ok(&b)) => {
                    let value = b
                        .iter()
                        .try_fold(0u128, |acc, c| acc.checked_add(c.contribution))
                        .ok_or(MldegError::Overflow)?;
                    return Ok(MLDegreeResult {
                        n,
                        d,
                        strategy,
                        value,
                        breakdown: Some(b),
                        primes,
                        elapsed: vec![enumerated, phase("degrees", start)],
                    });
                }
                _ => failures.push(describe_attempt(&primes, &breakdowns)),
            }
        }
        Err(MldegError::Disagreement {
            n,
            d,
            details: failures.join("; "),
        })
    }

    /// Degree of the arrangement-free critical ideal for random data `u`,
    /// drawn per prime from the seed.
    pub fn random_data(&self, n: usize, d: usize, by_difference: bool) -> Result<MLDegreeResult, MldegError> {
        if n < 2 {
            return Err(MldegError::OutOfRange("n >= 2"));
        }
        Self::check_bounds(n, d)?;
        let start = Instant::now();
        let deadline = self.deadline();
        let strategy = if by_difference {
            Strategy::RandomDiff
        } else {
            Strategy::Random
        };
        let mut used: Vec<u32> = Vec::new();
        let mut failures: Vec<String> = Vec::new();
        for attempt in 0..MAX_ATTEMPTS {
            let primes = self.primes_for_attempt(&used, attempt, n, d)?;
            used.extend(&primes);
            let values: Vec<Result<u64, String>> = self.pool.install(|| {
                primes
                    .par_iter()
                    .map(|&p| {
                        budget::with_deadline(deadline, || self.random_degree(n, d, p, attempt, by_difference))
                    })
                    .collect::<Result<Vec<_>, MldegError>>()
            })?;
            if let Ok(v) = &values[0] {
                if values.iter().all(|x| x.as_ref() == Ok(v)) {
                    return Ok(MLDegreeResult {
                        n,
                        d,
                        strategy,
                        value: *v as u128,
                        breakdown: None,
                        primes,
                        elapsed: vec![phase("degrees", start)],
                    });
                }
            }
            let listing: Vec<String> = primes
                .iter()
                .zip(&values)
                .map(|(p, v)| match v {
                    Ok(v) => format!("p = {p}: {v}"),
                    Err(e) => format!("p = {p}: {e}"),
                })
                .collect();
            failures.push(listing.join(", "));
        }
        Err(MldegError::Disagreement {
            n,
            d,
            details: failures.join("; "),
        })
    }

    /// The degree for one prime. Inner `Err(String)` marks a result that is
    /// unusable for this prime and data, as opposed to a hard failure.
    fn random_degree(
        &self,
        n: usize,
        d: usize,
        prime: u32,
        attempt: u64,
        by_difference: bool,
    ) -> Result<Result<u64, String>, MldegError> {
        let field = PrimeField::new(prime).map_err(|_| MldegError::BadPrime {
            prime,
            n,
            d,
            reason: "not prime",
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream((attempt << 32) | prime as u64);
        let u = DataVector::sample(field, n + 1, &mut rng);
        let ideal = critical_ideal(n, d, &u)?;
        if by_difference {
            let whole = ideal.degree_projective()?;
            let slice = arrangement_slice_ideal(field, n, d)?.degree_projective()?;
            Ok(whole
                .checked_sub(slice)
                .ok_or_else(|| format!("negative difference {whole} - {slice}")))
        } else {
            Ok(Ok(remove_arrangement(&ideal)?.degree_projective()?))
        }
    }

    /// Runs every applicable strategy and requires one common value:
    /// both partitioning variants always, the random-data variants when
    /// `2 <= n <= random_cap`, and the closed formula when one exists.
    pub fn cross_check(&self, n: usize, d: usize) -> Result<CrossCheckReport, MldegError> {
        let mut strategies = vec![Strategy::Partitioning, Strategy::PartitioningDiff];
        if (2..=self.cfg.random_cap).contains(&n) {
            strategies.extend([Strategy::Random, Strategy::RandomDiff]);
        }
        if closed_form(n, d)?.is_some() {
            strategies.push(Strategy::Closed);
        }
        let mut runs = Vec::with_capacity(strategies.len());
        for s in strategies {
            runs.push(self.compute_with(n, d, s)?);
        }
        let value = runs[0].value;
        if runs.iter().any(|r| r.value != value) {
            let details = runs
                .iter()
                .map(|r| format!("{} = {}", r.strategy, r.value))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(MldegError::Disagreement { n, d, details });
        }
        Ok(CrossCheckReport { n, d, value, runs })
    }
}

fn assemble(parts: &[Partition], coeffs: &[(u128, u128)], degrees: &[u64]) -> Result<Vec<PartitionContribution>, String> {
    parts
        .iter()
        .zip(coeffs)
        .zip(degrees)
        .map(|((a, &(c, o)), &degree)| {
            let total = c.checked_mul(degree as u128).ok_or("overflow")?;
            if total % o != 0 {
                return Err(format!("o_a = {o} does not divide c_a * deg = {total} for {a}"));
            }
            Ok(PartitionContribution {
                partition: a.clone(),
                c,
                o,
                degree,
                contribution: total / o,
            })
        })
        .collect()
}

fn describe_attempt(primes: &[u32], breakdowns: &[Result<Vec<PartitionContribution>, String>]) -> String {
    primes
        .iter()
        .zip(breakdowns)
        .map(|(p, b)| match b {
            Ok(b) => {
                let degs: Vec<String> = b.iter().map(|c| format!("{}:{}", c.partition, c.degree)).collect();
                format!("p = {p}: [{}]", degs.join(" "))
            }
            Err(e) => e.clone(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Partition formula under `cfg`; see [`Engine::partitioning`].
pub fn mldeg_partitioning(n: usize, d: usize, cfg: &EngineConfig, by_difference: bool) -> Result<MLDegreeResult, MldegError> {
    Engine::new(cfg.clone())?.partitioning(n, d, by_difference)
}

/// Random-data strategy under `cfg`; see [`Engine::random_data`].
pub fn mldeg_random_data(n: usize, d: usize, cfg: &EngineConfig, by_difference: bool) -> Result<MLDegreeResult, MldegError> {
    Engine::new(cfg.clone())?.random_data(n, d, by_difference)
}

/// All applicable strategies under `cfg`; see [`Engine::cross_check`].
pub fn cross_check(n: usize, d: usize, cfg: &EngineConfig) -> Result<CrossCheckReport, MldegError> {
    Engine::new(cfg.clone())?.cross_check(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EngineConfig {
        EngineConfig {
            parallelism: 2,
            ..EngineConfig::default()
        }
    }

    #[test]
    fn partitioning_breakdown_for_cubic_surface() {
        let r = mldeg_partitioning(3, 3, &cfg(), false).unwrap();
        assert_eq!(r.value, 30);
        let b = r.breakdown.unwrap();
        let rows: Vec<(Vec<usize>, u128, u128, u64, u128)> = b
            .iter()
            .map(|c| (c.partition.parts().to_vec(), c.c, c.o, c.degree, c.contribution))
            .collect();
        assert_eq!(
            rows,
            vec![
                (vec![3, 1], 4, 1, 3, 12),
                (vec![2, 2], 6, 2, 2, 6),
                (vec![2, 1, 1], 12, 2, 2, 12),
            ]
        );
    }

    #[test]
    fn random_matches_table() {
        assert_eq!(mldeg_random_data(2, 4, &cfg(), false).unwrap().value, 18);
        assert_eq!(mldeg_random_data(3, 2, &cfg(), true).unwrap().value, 14);
    }

    #[test]
    fn auto_prefers_closed_forms() {
        let e = Engine::new(cfg()).unwrap();
        assert_eq!(e.compute(2, 9).unwrap().strategy, Strategy::Closed);
        assert_eq!(e.compute(3, 3).unwrap().strategy, Strategy::PartitioningDiff);
        assert!(matches!(e.compute_with(3, 3, Strategy::Closed), Err(MldegError::NoClosedForm { .. })));
    }

    #[test]
    fn bad_primes_are_rejected() {
        let c = EngineConfig {
            primes: vec![97],
            ..cfg()
        };
        assert!(matches!(mldeg_partitioning(2, 3, &c, false), Err(MldegError::BadPrime { .. })));
        let c = EngineConfig {
            primes: vec![32004],
            ..cfg()
        };
        assert!(matches!(mldeg_partitioning(2, 3, &c, false), Err(MldegError::BadPrime { .. })));
    }

    #[test]
    fn timeout_is_reported() {
        let c = EngineConfig {
            timeout: Some(std::time::Duration::ZERO),
            ..cfg()
        };
        assert_eq!(mldeg_random_data(3, 3, &c, false), Err(MldegError::Timeout));
    }
}
