//! Acceptance criteria. Runs as a plain binary so each criterion prints one
//! PASS/FAIL line; exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use bitprobe::core::tables::{table_a_len, table_b_len, table_c_len};
use bitprobe::core::{build_from_ordinals, CaseLabel, Params};
use bitprobe::format::{deserialize, serialize};
use bitprobe::oracle::{
    fault_sensitivity, space_audit, subset_rng, verify_exhaustive, verify_random,
    ExhaustiveOptions, VerifyReport,
};
use rand::seq::index;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// 1. All 679,121 subsets of size <= 4 at b = 2, all 64 elements each.
fn exhaustive_b2(report: &VerifyReport) -> Outcome {
    let h = |l: CaseLabel| report.case_histogram.get(&l).copied().unwrap_or(0);
    let zero: Vec<&str> = CaseLabel::ALL
        .iter()
        .filter(|&&l| h(l) == 0)
        .map(|l| l.as_str())
        .collect();
    // IVA needs three blocks at one coordinate, hence three superblocks.
    let histogram_ok = zero == ["IVA"];
    let pass = report.subsets_checked == 679_121
        && report.queries_checked == 679_121 * 64
        && report.failure_count == 0
        && histogram_ok;
    outcome(
        pass,
        format!(
            "{} subsets, {} queries, {} failures; labels with zero count: {:?}",
            report.subsets_checked, report.queries_checked, report.failure_count, zero
        ),
    )
}

/// 2. Seeded random 4-subsets: 10^5 at b = 3, 10^4 at b = 4, every element queried.
fn random_b3_b4() -> Outcome {
    let r3 = verify_random(3, 100_000, 1, 4).expect("b = 3 run");
    let r4 = verify_random(4, 10_000, 1, 4).expect("b = 4 run");
    let pass = r3.failure_count == 0
        && r4.failure_count == 0
        && r3.queries_checked == 100_000 * 729
        && r4.queries_checked == 10_000 * 4096;
    outcome(
        pass,
        format!(
            "b=3: {} subsets, {} failures; b=4: {} subsets, {} failures",
            r3.subsets_checked, r3.failure_count, r4.subsets_checked, r4.failure_count
        ),
    )
}

/// 3. Every query of criterion 1 reads A first, then B after 0 or C after 1.
fn probe_discipline(report: &VerifyReport) -> Outcome {
    outcome(
        report.trace_violations == 0 && report.queries_checked == 679_121 * 64,
        format!(
            "{} traces of two probes checked, {} violations",
            report.queries_checked, report.trace_violations
        ),
    )
}

/// 4. Exact table sizes for b = 2..=16 and the total/b^5 bounds.
fn space_formulas() -> Outcome {
    let rows = space_audit(2..=16).expect("audit");
    let mut bad = Vec::new();
    for r in &rows {
        let b = r.b;
        let p = Params::new(b).unwrap();
        // one b-bit slot per anchor realized by some grid point, per superblock
        let g = (b * b) as i64;
        let realized: u64 = (1..=b as i64)
            .map(|s| {
                (0..g)
                    .flat_map(|y| (0..g).map(move |x| x - s * y))
                    .collect::<BTreeSet<_>>()
                    .len() as u64
            })
            .sum();
        let closed = b * ((b * b - 1) * b * (b + 3) / 2 + b);
        let ok = r.a_bits == b.pow(5)
            && r.c_bits == b.pow(5)
            && r.b_bits == closed
            && r.b_bits == realized * b
            && (r.a_bits, r.b_bits, r.c_bits)
                == (table_a_len(&p), table_b_len(&p), table_c_len(&p))
            && r.ratio <= 3.1
            && (b < 4 || r.ratio <= 3.0);
        if !ok {
            bad.push(b);
        }
    }
    let spot = |b: u64| {
        rows.iter()
            .find(|r| r.b == b)
            .map(|r| (r.a_bits, r.b_bits, r.c_bits))
    };
    let spots_ok = spot(2) == Some((32, 34, 32)) && spot(4) == Some((1024, 856, 1024));
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    outcome(
        bad.is_empty() && spots_ok,
        format!(
            "b=2..16 checked, mismatches at {bad:?}; max total/b^5 = {max_ratio:.4}, b=16 ratio = {:.4}",
            rows.last().unwrap().ratio
        ),
    )
}

/// 5. Line families for b = 2..=8: non-empty lines, partition of the grid,
///    line counts, and at most one common point for different slopes.
fn line_family_suite() -> Outcome {
    let mut violations = 0u64;
    for b in 2..=8u64 {
        let p = Params::new(b).unwrap();
        let g = p.grid_side() as i64;
        for s in 1..=b {
            let (lo, hi) = p.anchor_range(s);
            if (hi - lo) as u64 != p.num_lines(s).unwrap()
                || p.num_lines(s).unwrap() != (s + 1) * (p.grid_side() - 1) + 1
            {
                violations += 1;
            }
            let mut hits: HashMap<i64, u64> = HashMap::new();
            for y in 0..g {
                for x in 0..g {
                    let a = x - s as i64 * y;
                    if !(lo..hi).contains(&a) {
                        violations += 1;
                    }
                    *hits.entry(a).or_default() += 1;
                }
            }
            // every anchor of the family is hit, and the hit counts cover the grid once
            violations += (lo..hi).filter(|a| !hits.contains_key(a)).count() as u64;
            if hits.values().sum::<u64>() != (g * g) as u64 {
                violations += 1;
            }
            for a in lo..hi {
                let pts: Vec<_> = p
                    .line_points(&bitprobe::core::LineRef { s, anchor: a })
                    .collect();
                if pts.len() as u64 != hits.get(&a).copied().unwrap_or(0) {
                    violations += 1;
                }
            }
        }
        for s in 1..=b as i64 {
            for t in s + 1..=b as i64 {
                let mut common: HashMap<(i64, i64), u32> = HashMap::new();
                for y in 0..g {
                    for x in 0..g {
                        *common.entry((x - s * y, x - t * y)).or_default() += 1;
                    }
                }
                violations += common.values().filter(|&&c| c > 1).count() as u64;
            }
        }
    }
    outcome(violations == 0, format!("b=2..8, {violations} violations"))
}

/// 6. Rebuilding 1,000 seeded b = 3 subsets gives identical bytes; bytes round-trip.
fn determinism_and_serialization() -> Outcome {
    let p = Params::new(3).unwrap();
    let mut mismatches = 0;
    for t in 0..1000 {
        let mut rng = subset_rng(2024, t);
        let mut subset: Vec<u64> = index::sample(&mut rng, 729, 4)
            .into_iter()
            .map(|k| k as u64)
            .collect();
        let first = serialize(&build_from_ordinals(&p, &subset).unwrap());
        subset.reverse();
        let st = build_from_ordinals(&p, &subset).unwrap();
        let second = serialize(&st);
        let back = deserialize(&second).expect("parse");
        if first != second || back != st || serialize(&back) != second {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("1000 structures, {mismatches} mismatches"),
    )
}

/// 7. Single-bit flips in 100 seeded b = 2 structures.
fn fault_detection() -> Outcome {
    let s = fault_sensitivity(2, 100, 7, 4).expect("fault scan");
    let rate = s.detection_rate();
    let pass = s.silent == 0 && s.mispredicted == 0 && rate >= 0.99;
    outcome(
        pass,
        format!(
            "{} flips: {} detected, {} proven benign, {} silent, {} mispredicted; \
             detected {:.4} of answer-changing flips ({:.4} of all flips)",
            s.flips,
            s.detected,
            s.proven_benign,
            s.silent,
            s.mispredicted,
            rate,
            s.raw_detection_rate()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let exhaustive = verify_exhaustive(2, ExhaustiveOptions::default()).expect("b = 2 run");

    let results = [
        ("1 exhaustive correctness, b=2", exhaustive_b2(&exhaustive)),
        ("2 randomized correctness, b=3/b=4", random_b3_b4()),
        ("3 probe discipline", probe_discipline(&exhaustive)),
        ("4 space formulas", space_formulas()),
        ("5 line-family properties", line_family_suite()),
        (
            "6 determinism and serialization",
            determinism_and_serialization(),
        ),
        ("7 fault sensitivity", fault_detection()),
    ];

    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "[{}] criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
