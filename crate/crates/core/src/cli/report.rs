use serde::{Deserialize, Serialize};

use crate::mldeg::{MLDegreeResult, PartitionContribution};
use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub primes: Vec<u32>,
    pub seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakdownRow {
    pub partition: Partition,
    pub c: u128,
    pub o: u128,
    pub degree: u64,
    pub contribution: u128,
}

impl From<&PartitionContribution> for BreakdownRow {
    fn from(c: &PartitionContribution) -> Self {
        Self {
            partition: c.partition.clone(),
            c: c.c,
            o: c.o,
            degree: c.degree,
            contribution: c.contribution,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: usize,
    pub d: usize,
    pub strategy: String,
    pub value: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Vec<BreakdownRow>>,
    pub seconds: f64,
}

impl ResultRow {
    pub fn from_result(r: &MLDegreeResult, with_breakdown: bool) -> Self {
        Self {
            n: r.n,
            d: r.d,
            strategy: r.strategy.to_string(),
            value: r.value,
            breakdown: if with_breakdown {
                r.breakdown.as_ref().map(|b| b.iter().map(BreakdownRow::from).collect())
            } else {
                None
            },
            seconds: r.seconds(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionRow {
    pub partition: Partition,
    pub c: u128,
    pub o: u128,
}

/// A cell that failed: a value different from the table, or an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: usize,
    pub d: usize,
    pub strategy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub got: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Everything a command produced. A run succeeds iff `mismatches` is empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub environment: Environment,
    pub results: Vec<ResultRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partitions: Option<Vec<PartitionRow>>,
    pub mismatches: Vec<Mismatch>,
}

impl RunReport {
    pub fn new(command: &str, environment: Environment) -> Self {
        Self {
            command: command.to_string(),
            environment,
            results: Vec::new(),
            partitions: None,
            mismatches: Vec::new(),
        }
    }

    pub fn success(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
