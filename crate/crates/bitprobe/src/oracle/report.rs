use std::fmt;
use std::io;

use bitprobe_core::CaseLabel;

use super::{Failure, Mode, SpaceRow, VerifyReport};

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive { max_n } => write!(f, "exhaustive, |S| <= {max_n}"),
            Mode::Random { trials, seed, n } => {
                write!(f, "random, {trials} trials of |S| = {n}, seed {seed}")
            }
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Answer {
                subset,
                element,
                expected,
                got,
                trace,
            } => write!(
                f,
                "S={subset:?} e={element}: expected {expected}, got {got} ({trace})"
            ),
            Failure::Probe {
                subset,
                element,
                trace,
            } => write!(
                f,
                "S={subset:?} e={element}: probe order violated ({trace})"
            ),
            Failure::Build { subset, error } => write!(f, "S={subset:?}: build failed: {error}"),
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "b = {} (m = {}), {}", self.b, self.b.pow(6), self.mode)?;
        writeln!(f, "subsets checked:  {}", self.subsets_checked)?;
        writeln!(f, "queries checked:  {}", self.queries_checked)?;
        writeln!(f, "failures:         {}", self.failure_count)?;
        writeln!(f, "trace violations: {}", self.trace_violations)?;
        writeln!(f, "elapsed:          {:.3} s", self.elapsed.as_secs_f64())?;
        writeln!(f, "cases:")?;
        for label in CaseLabel::ALL {
            let n = self.case_histogram.get(&label).copied().unwrap_or(0);
            writeln!(f, "  {:<20} {n}", label.as_str())?;
        }
        if !self.failures.is_empty() {
            writeln!(
                f,
                "first {} failures (of {}):",
                self.failures.len(),
                self.failure_count
            )?;
            for fail in &self.failures {
                writeln!(f, "  {fail}")?;
            }
        }
        write!(
            f,
            "verdict: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

impl VerifyReport {
    /// Summary row `b,subsets,queries,failures,seconds`, then `label,count` rows.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        w.write_record(["b", "subsets", "queries", "failures", "seconds"])?;
        w.write_record([
            self.b.to_string(),
            self.subsets_checked.to_string(),
            self.queries_checked.to_string(),
            self.failure_count.to_string(),
            format!("{:.3}", self.elapsed.as_secs_f64()),
        ])?;
        w.write_record(["label", "count"])?;
        for label in CaseLabel::ALL {
            let n = self.case_histogram.get(&label).copied().unwrap_or(0);
            w.write_record([label.as_str().to_string(), n.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for SpaceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>4} {:>14} {:>14} {:>14} {:>15} {:>8.4}",
            self.b, self.a_bits, self.b_bits, self.c_bits, self.total, self.ratio
        )
    }
}

pub const SPACE_HEADER: &str =
    "   b            |A|            |B|            |C|           total   /b^5";

pub fn write_space_csv<W: io::Write>(rows: &[SpaceRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["b", "a_bits", "b_bits", "c_bits", "total", "ratio"])?;
    for r in rows {
        w.write_record([
            r.b.to_string(),
            r.a_bits.to_string(),
            r.b_bits.to_string(),
            r.c_bits.to_string(),
            r.total.to_string(),
            format!("{:.6}", r.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}
