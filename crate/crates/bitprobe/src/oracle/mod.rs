//! Brute-force verification against direct set membership.
//!
//! Every check builds a structure for a subset `S` of element ordinals, runs
//! the two-probe query for a list of elements and compares each answer with a
//! binary search in the sorted `S`. Work is split across threads, but
//! outcomes are merged in enumeration order so a report never depends on
//! scheduling.

mod exhaustive;
mod faults;
mod random;
mod report;
mod space;

use std::collections::BTreeMap;
use std::time::Duration;

use bitprobe_core::{build_from_ordinals, classify, query, CaseLabel, Params, ProbeTrace};
use thiserror::Error;

pub use exhaustive::{exhaustive_work, verify_exhaustive, ExhaustiveOptions};
pub use faults::{
    fault_scan, fault_sensitivity, flip_can_change_answers, FaultSummary, FlipOutcome,
};
pub use random::{subset_rng, verify_random, NON_MEMBER_SAMPLES};
pub use report::{write_space_csv, SPACE_HEADER};
pub use space::{space_audit, SpaceRow};

/// Default cap on recorded failures; the total count stays exact.
pub const DEFAULT_FAILURE_CAP: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "exhaustive verification at b = {b} with |S| <= {max_n} is infeasible: \
         {subsets} subsets, {queries} queries"
    )]
    Infeasible {
        b: u64,
        max_n: usize,
        subsets: u128,
        queries: u128,
    },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Scheme(#[from] bitprobe_core::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// The scheme answered `got` for `element`, ground truth is `expected`.
    Answer {
        subset: Vec<u64>,
        element: u64,
        expected: bool,
        got: bool,
        trace: ProbeTrace,
    },
    /// The probes did not follow the A-then-B/C decision tree.
    Probe {
        subset: Vec<u64>,
        element: u64,
        trace: ProbeTrace,
    },
    /// Building the structure failed.
    Build { subset: Vec<u64>, error: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive { max_n: usize },
    Random { trials: u64, seed: u64, n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub b: u64,
    pub mode: Mode,
    pub subsets_checked: u64,
    pub queries_checked: u64,
    /// Exact number of failures of any kind.
    pub failure_count: u64,
    pub trace_violations: u64,
    /// The first failures in enumeration order, at most `failure_cap` of them.
    pub failures: Vec<Failure>,
    pub failure_cap: usize,
    pub case_histogram: BTreeMap<CaseLabel, u64>,
    pub elapsed: Duration,
}

impl VerifyReport {
    fn new(b: u64, mode: Mode, failure_cap: usize) -> Self {
        VerifyReport {
            b,
            mode,
            subsets_checked: 0,
            queries_checked: 0,
            failure_count: 0,
            trace_violations: 0,
            failures: Vec::new(),
            failure_cap,
            case_histogram: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// The same report with the timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        VerifyReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }

    fn absorb(&mut self, outcome: SubsetOutcome) {
        self.subsets_checked += 1;
        self.queries_checked += outcome.queries;
        self.failure_count += outcome.failure_count;
        self.trace_violations += outcome.trace_violations;
        *self.case_histogram.entry(outcome.label).or_default() += 1;
        let room = self.failure_cap.saturating_sub(self.failures.len());
        self.failures
            .extend(outcome.failures.into_iter().take(room));
    }
}

/// Result of checking one subset.
#[derive(Debug, Clone)]
pub(crate) struct SubsetOutcome {
    pub queries: u64,
    pub failure_count: u64,
    pub trace_violations: u64,
    pub failures: Vec<Failure>,
    pub label: CaseLabel,
}

/// Builds the structure for `subset` (sorted, distinct ordinals) and checks
/// every element yielded by `elements`.
pub(crate) fn check_subset(
    p: &Params,
    subset: &[u64],
    elements: impl IntoIterator<Item = u64>,
    failure_cap: usize,
) -> SubsetOutcome {
    debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
    let mut blocks: Vec<_> = subset
        .iter()
        .map(|&n| p.element_from_ordinal(n).expect("ordinal in range").block)
        .collect();
    blocks.dedup();
    let label = classify(&blocks);

    let mut out = SubsetOutcome {
        queries: 0,
        failure_count: 0,
        trace_violations: 0,
        failures: Vec::new(),
        label,
    };
    let st = match build_from_ordinals(p, subset) {
        Ok(st) => st,
        Err(e) => {
            out.failure_count = 1;
            out.failures.push(Failure::Build {
                subset: subset.to_vec(),
                error: e.to_string(),
            });
            return out;
        }
    };

    let record = |out: &mut SubsetOutcome, f: Failure| {
        out.failure_count += 1;
        if out.failures.len() < failure_cap {
            out.failures.push(f);
        }
    };
    for n in elements {
        let e = p.element_from_ordinal(n).expect("ordinal in range");
        let answer = query(&st, &e).expect("valid element");
        out.queries += 1;
        if !answer.trace.follows_decision_tree() {
            out.trace_violations += 1;
            record(
                &mut out,
                Failure::Probe {
                    subset: subset.to_vec(),
                    element: n,
                    trace: answer.trace,
                },
            );
        }
        let expected = subset.binary_search(&n).is_ok();
        if answer.member != expected {
            record(
                &mut out,
                Failure::Answer {
                    subset: subset.to_vec(),
                    element: n,
                    expected,
                    got: answer.member,
                    trace: answer.trace,
                },
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_subset_counts_every_element() {
        let p = Params::new(2).unwrap();
        let out = check_subset(&p, &[0, 13, 40, 63], 0..64, 8);
        assert_eq!(out.queries, 64);
        assert_eq!(out.failure_count, 0);
        assert_eq!(out.trace_violations, 0);
    }

    #[test]
    fn oversized_subset_is_a_build_failure() {
        let p = Params::new(2).unwrap();
        let out = check_subset(&p, &[0, 1, 2, 3, 4], 0..64, 8);
        assert_eq!(out.failure_count, 1);
        assert!(matches!(out.failures[0], Failure::Build { .. }));
    }

    #[test]
    fn absorb_caps_failures_but_counts_all() {
        let p = Params::new(2).unwrap();
        let mut report = VerifyReport::new(2, Mode::Exhaustive { max_n: 4 }, 1);
        for _ in 0..3 {
            report.absorb(check_subset(&p, &[0, 1, 2, 3, 4], 0..64, 8));
        }
        assert_eq!(report.failure_count, 3);
        assert_eq!(report.failures.len(), 1);
        assert!(!report.passed());
    }
}
