use std::time::Instant;

use bitprobe_core::{Params, MAX_SET_SIZE};
use itertools::Itertools;
use rayon::prelude::*;

use super::{check_subset, Mode, OracleError, VerifyReport, DEFAULT_FAILURE_CAP};

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    pub max_n: usize,
    /// Permit `b = 3`. Only small `max_n` finish in reasonable time there.
    pub allow_b3: bool,
    pub failure_cap: usize,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            max_n: MAX_SET_SIZE,
            allow_b3: false,
            failure_cap: DEFAULT_FAILURE_CAP,
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// `(subsets, queries)` for all subsets of size `<= max_n` of a `b^6` universe.
pub fn exhaustive_work(b: u64, max_n: usize) -> (u128, u128) {
    let m = u128::from(b).pow(6);
    let subsets: u128 = (0..=max_n as u128).map(|k| binomial(m, k.min(m))).sum();
    (subsets, subsets * m)
}

/// Checks every subset of size at most `max_n` against every element.
///
/// Subsets are enumerated by size, then lexicographically by ordinal.
pub fn verify_exhaustive(b: u64, opts: ExhaustiveOptions) -> Result<VerifyReport, OracleError> {
    let p = Params::new(b)?;
    if opts.max_n > MAX_SET_SIZE {
        return Err(OracleError::Parameter(format!(
            "max_n = {} exceeds the supported set size {MAX_SET_SIZE}",
            opts.max_n
        )));
    }
    if b > 3 || (b == 3 && !opts.allow_b3) {
        let (subsets, queries) = exhaustive_work(b, opts.max_n);
        return Err(OracleError::Infeasible {
            b,
            max_n: opts.max_n,
            subsets,
            queries,
        });
    }

    let start = Instant::now();
    let m = p.universe_size();
    let mut report = VerifyReport::new(b, Mode::Exhaustive { max_n: opts.max_n }, opts.failure_cap);
    for k in 0..=opts.max_n {
        for chunk in &(0..m).combinations(k).chunks(CHUNK) {
            let chunk: Vec<Vec<u64>> = chunk.collect();
            let outcomes: Vec<_> = chunk
                .par_iter()
                .map(|subset| check_subset(&p, subset, 0..m, opts.failure_cap))
                .collect();
            for outcome in outcomes {
                report.absorb(outcome);
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
