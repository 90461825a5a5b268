use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Suite identifiers accepted by [`crate::suites::run_suite`].
pub const SUITES: &[&str] = &[
    "fundamental_solutions",
    "c_alpha",
    "lemmas",
    "prop_B",
    "telescoping",
    "b_forms",
    "rk_squared",
    "laplace_split",
    "b_commute",
    "technical",
    "classical_reduction",
    "kernels",
    "covariance",
    "intertwining",
    "cocycle",
    "steinweiss",
    "target_space",
    "delta",
    "all",
];

/// Everything that determines a run. `None` grids fall back to the suite's
/// default; an explicit empty list yields no cases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub m: Option<Vec<usize>>,
    pub k: Option<Vec<u32>>,
    pub order: Option<Vec<u32>>,
    pub alpha: Option<Vec<i64>>,
    pub beta: Option<Vec<i64>>,
    pub s: Option<Vec<u32>>,
    pub seed: u64,
    pub budget: Option<usize>,
    pub tolerance: f64,
    pub resolution: usize,
    pub output: Option<PathBuf>,
    /// Worker count; does not affect results, so it is not serialized.
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig {
            suite: suite.to_string(),
            m: None,
            k: None,
            order: None,
            alpha: None,
            beta: None,
            s: None,
            seed: 0,
            budget: Some(hspin_core::identities::DEFAULT_BUDGET),
            tolerance: 5e-2,
            resolution: 64,
            output: None,
            jobs: None,
        }
    }

    pub fn with_m(mut self, m: &[usize]) -> Self {
        self.m = Some(m.to_vec());
        self
    }

    pub fn with_k(mut self, k: &[u32]) -> Self {
        self.k = Some(k.to_vec());
        self
    }

    pub fn with_order(mut self, order: &[u32]) -> Self {
        self.order = Some(order.to_vec());
        self
    }

    pub fn with_s(mut self, s: &[u32]) -> Self {
        self.s = Some(s.to_vec());
        self
    }

    pub fn with_alpha(mut self, alpha: &[i64]) -> Self {
        self.alpha = Some(alpha.to_vec());
        self
    }

    pub fn options(&self) -> hspin_core::identities::CheckOptions {
        hspin_core::identities::CheckOptions { budget: self.budget, seed: self.seed }
    }
}

/// Parses `"3,4,5"`; the empty string is the empty list.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<T>().map_err(|e| format!("bad list entry {p:?}: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list::<i64>("3, -1,0").unwrap(), vec![3, -1, 0]);
        assert!(parse_list::<u32>("").unwrap().is_empty());
        assert!(parse_list::<u32>("x").is_err());
    }
}
