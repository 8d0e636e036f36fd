use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};

const EMBEDDED: &str = include_str!("../../data/golden_table.txt");

/// Known ML degrees keyed by `(n, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenTable {
    entries: BTreeMap<(usize, usize), u128>,
}

impl GoldenTable {
    /// The table shipped with the crate.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded golden table is well formed")
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Whitespace-separated `n d value` triples, one per line; `#` starts a comment.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [n, d, v] = fields[..] else {
                bail!("line {}: expected `n d value`, got `{line}`", lineno + 1);
            };
            let n: usize = n.parse().with_context(|| format!("line {}: n", lineno + 1))?;
            let d: usize = d.parse().with_context(|| format!("line {}: d", lineno + 1))?;
            let v: u128 = v.parse().with_context(|| format!("line {}: value", lineno + 1))?;
            if entries.insert((n, d), v).is_some() {
                bail!("line {}: duplicate entry for n = {n}, d = {d}", lineno + 1);
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, n: usize, d: usize) -> Option<u128> {
        self.entries.get(&(n, d)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with `n <= max_n` and `d <= max_d`, ordered by `(n, d)`.
    pub fn cells_within(&self, max_n: usize, max_d: usize) -> Vec<(usize, usize, u128)> {
        self.entries
            .iter()
            .filter(|((n, d), _)| *n <= max_n && *d <= max_d)
            .map(|(&(n, d), &v)| (n, d, v))
            .collect()
    }
}
