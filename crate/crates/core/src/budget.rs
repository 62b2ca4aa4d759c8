//! Scan limits, overridable through `HYPERLAB_BUDGET`.

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "HYPERLAB_BUDGET";

/// Caps on exhaustive scans.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Consequent evaluations allowed per predicate instance.
    pub evaluations: u64,
    /// Candidate subsets allowed when enumerating hyperideals.
    pub subsets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { evaluations: 10_000_000, subsets: 1 << 20 }
    }
}

impl Budget {
    /// Parses `N` (evaluations only) or `evals=N,subsets=M` in any order.
    pub fn parse(spec: &str) -> Result<Budget> {
        let mut out = Budget::default();
        let bad = || Error::Document(format!("malformed budget `{spec}`"));
        let spec = spec.trim();
        if let Ok(n) = spec.parse::<u64>() {
            out.evaluations = n;
            return Ok(out);
        }
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "evals" | "evaluations" => out.evaluations = value,
                "subsets" => out.subsets = value,
                _ => return Err(bad()),
            }
        }
        Ok(out)
    }

    /// Default budget with any override from the environment applied.
    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) if !v.trim().is_empty() => Budget::parse(&v),
            _ => Ok(Budget::default()),
        }
    }

    pub(crate) fn check_evaluations(&self, needed: u64, what: &str) -> Result<()> {
        if needed > self.evaluations {
            Err(Error::Capacity(format!("{what} needs {needed} evaluations, budget is {}", self.evaluations)))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Budget::parse("500").unwrap().evaluations, 500);
        let b = Budget::parse("subsets=64, evals=9").unwrap();
        assert_eq!(b, Budget { evaluations: 9, subsets: 64 });
        assert!(Budget::parse("evals").is_err());
        assert!(Budget::parse("speed=3").is_err());
    }

    #[test]
    fn capacity_error() {
        let b = Budget { evaluations: 10, subsets: 1 };
        assert!(b.check_evaluations(10, "scan").is_ok());
        assert!(matches!(b.check_evaluations(11, "scan"), Err(Error::Capacity(_))));
    }
}
