//! Seeded random verification.
//!
//! Trial `t` draws from ChaCha8 keyed with `seed` (expanded by
//! `SeedableRng::seed_from_u64`) on stream `t`, so each trial's subset is
//! fixed by `(seed, t)` alone and trials can run in any order or in
//! parallel.

use std::time::Instant;

use bitprobe_core::{Params, MAX_SET_SIZE};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check_subset, Mode, OracleError, VerifyReport, DEFAULT_FAILURE_CAP};

/// Non-members queried per subset when the universe is too large to scan.
pub const NON_MEMBER_SAMPLES: usize = 10_000;

/// Largest `b` whose universe is scanned in full for every subset.
const FULL_SCAN_MAX_B: u64 = 4;

pub fn subset_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniform `n`-subset of `[0, m)`, sorted.
pub(crate) fn draw_subset(rng: &mut ChaCha8Rng, m: u64, n: usize) -> Vec<u64> {
    let mut subset: Vec<u64> = index::sample(rng, m as usize, n)
        .into_iter()
        .map(|k| k as u64)
        .collect();
    subset.sort_unstable();
    subset
}

/// Checks `trials` random `n`-subsets. For `b <= 4` every element is queried,
/// otherwise the members plus [`NON_MEMBER_SAMPLES`] random non-members.
pub fn verify_random(
    b: u64,
    trials: u64,
    seed: u64,
    n: usize,
) -> Result<VerifyReport, OracleError> {
    let p = Params::new(b)?;
    if trials == 0 {
        return Err(OracleError::Parameter("trials must be at least 1".into()));
    }
    if n > MAX_SET_SIZE {
        return Err(OracleError::Parameter(format!(
            "subset size {n} exceeds the supported set size {MAX_SET_SIZE}"
        )));
    }
    let m = p.universe_size();
    let start = Instant::now();

    let outcomes: Vec<_> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = subset_rng(seed, t);
            let subset = draw_subset(&mut rng, m, n);
            if b <= FULL_SCAN_MAX_B {
                check_subset(&p, &subset, 0..m, DEFAULT_FAILURE_CAP)
            } else {
                let mut elements = subset.clone();
                while elements.len() < subset.len() + NON_MEMBER_SAMPLES {
                    let e = rng.random_range(0..m);
                    if subset.binary_search(&e).is_err() {
                        elements.push(e);
                    }
                }
                check_subset(&p, &subset, elements, DEFAULT_FAILURE_CAP)
            }
        })
        .collect();

    let mut report = VerifyReport::new(b, Mode::Random { trials, seed, n }, DEFAULT_FAILURE_CAP);
    for outcome in outcomes {
        report.absorb(outcome);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
