//! Per-condition verification reports with counterexample witnesses.

use std::time::Instant;

use serde::Serialize;

use crate::linalg::AlgebraElement;
use crate::scalar::Scalar;

/// Evaluation strategy: exact symbolic parameters, or exact evaluation at
/// deterministic random rational specializations (one full run per seed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "seeds")]
pub enum Strategy {
    Symbolic,
    Random(Vec<u64>),
}

impl Strategy {
    pub fn seeds(&self) -> &[u64] {
        match self {
            Strategy::Symbolic => &[],
            Strategy::Random(s) => s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    ProbabilisticPass,
    Fail,
}

/// A failing quantifier instantiation and the nonzero difference element.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub instantiation: String,
    pub difference: String,
}

/// Outcome of one condition family over its full quantifier range.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub id: String,
    pub quantifiers: String,
    pub instances: usize,
    pub failures: usize,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub seeds: Vec<u64>,
    pub millis: u128,
}

/// Outcome of a suite run.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    pub strategy: Strategy,
    pub passed: bool,
    pub conditions: Vec<ConditionReport>,
}

impl VerificationReport {
    pub fn new(
        suite: &str,
        n: usize,
        strategy: Strategy,
        conditions: Vec<ConditionReport>,
    ) -> Self {
        let passed = conditions.iter().all(|c| c.status != Status::Fail);
        VerificationReport {
            suite: suite.to_string(),
            n,
            strategy,
            passed,
            conditions,
        }
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Zeroes the timing fields, for byte-reproducible output.
    pub fn strip_timings(&mut self) {
        for c in &mut self.conditions {
            c.millis = 0;
        }
    }
}

/// Maximum recorded witnesses per condition; scanning continues past the cap
/// so `failures` counts every failing instantiation.
pub const MAX_WITNESSES: usize = 5;

/// Accumulates instantiations of one condition.
pub struct ConditionChecker {
    id: String,
    quantifiers: String,
    instances: usize,
    failures: usize,
    witnesses: Vec<Witness>,
    started: Instant,
}

impl ConditionChecker {
    pub fn new(id: &str, quantifiers: &str) -> Self {
        ConditionChecker {
            id: id.to_string(),
            quantifiers: quantifiers.to_string(),
            instances: 0,
            failures: 0,
            witnesses: Vec::new(),
            started: Instant::now(),
        }
    }

    fn record(&mut self, ok: bool, label: impl FnOnce() -> String, diff: impl FnOnce() -> String) {
        self.instances += 1;
        if ok {
            return;
        }
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                instantiation: label(),
                difference: diff(),
            });
        }
    }

    /// Checks `lhs = rhs` for elements of one registry.
    pub fn eq_elements(
        &mut self,
        label: impl FnOnce() -> String,
        lhs: &AlgebraElement,
        rhs: &AlgebraElement,
    ) {
        let diff = lhs.sub(rhs);
        self.record(diff.is_zero(), label, || diff.to_string());
    }

    pub fn eq_scalars(&mut self, label: impl FnOnce() -> String, lhs: &Scalar, rhs: &Scalar) {
        let diff = lhs.sub(rhs);
        self.record(diff.is_zero(), label, || diff.to_string());
    }

    pub fn finish(self) -> ConditionReport {
        ConditionReport {
            id: self.id,
            quantifiers: self.quantifiers,
            instances: self.instances,
            failures: self.failures,
            status: if self.failures == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            witnesses: self.witnesses,
            seeds: Vec::new(),
            millis: self.started.elapsed().as_millis(),
        }
    }
}

/// Merges per-seed runs of the same condition list into one probabilistic
/// verdict: every condition must be aligned by id across seeds.
pub fn merge_random_runs(runs: Vec<(u64, Vec<ConditionReport>)>) -> Vec<ConditionReport> {
    let mut merged: Vec<ConditionReport> = Vec::new();
    for (seed, conditions) in runs {
        if merged.is_empty() {
            merged = conditions
                .into_iter()
                .map(|mut c| {
                    c.seeds = vec![seed];
                    if c.status == Status::Pass {
                        c.status = Status::ProbabilisticPass;
                    }
                    c
                })
                .collect();
            continue;
        }
        assert_eq!(merged.len(), conditions.len(), "seed runs must align");
        for (acc, run) in merged.iter_mut().zip(conditions) {
            assert_eq!(acc.id, run.id, "seed runs must align by condition id");
            acc.seeds.push(seed);
            acc.failures += run.failures;
            acc.millis += run.millis;
            if run.status == Status::Fail {
                acc.status = Status::Fail;
                for w in run.witnesses {
                    if acc.witnesses.len() < MAX_WITNESSES {
                        acc.witnesses.push(w);
                    }
                }
            }
        }
    }
    merged
}
