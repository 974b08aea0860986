//! Single-bit fault injection.
//!
//! Each bit of a built structure is flipped in turn and the oracle queries
//! every element of the universe. Independently, [`flip_can_change_answers`]
//! decides from the table contents alone whether the flip can alter any
//! answer: a bit nobody reads (a B slot whose line is entirely routed to C,
//! a C slot whose coordinate is entirely routed to B) or an A bit whose B and
//! C slots hold identical contents is benign. A flip that the oracle misses
//! without being proven benign is reported as silent.

use bitprobe_core::tables::line_offset;
use bitprobe_core::{a_index, b_index, build_from_ordinals, c_index, query, LineRef, Params};
use bitprobe_core::{BlockAddr, Structure, TableId};
use rayon::prelude::*;

use super::random::{draw_subset, subset_rng};
use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipOutcome {
    pub table: TableId,
    pub pos: u64,
    /// Some query disagreed with ground truth after the flip.
    pub detected: bool,
    /// The static analysis found an element whose answer the flip changes.
    pub can_change: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FaultSummary {
    pub structures: u64,
    pub flips: u64,
    pub detected: u64,
    /// Flips shown by static analysis to leave every answer unchanged.
    pub proven_benign: u64,
    /// Undetected flips not proven benign.
    pub silent: u64,
    /// Flips where detection and static analysis disagree.
    pub mispredicted: u64,
}

impl FaultSummary {
    /// Share of flips that can change an answer which the oracle detected.
    pub fn detection_rate(&self) -> f64 {
        let live = self.flips - self.proven_benign;
        if live == 0 {
            1.0
        } else {
            self.detected as f64 / live as f64
        }
    }

    /// Share of all flips detected, benign ones included.
    pub fn raw_detection_rate(&self) -> f64 {
        if self.flips == 0 {
            1.0
        } else {
            self.detected as f64 / self.flips as f64
        }
    }

    fn add(&mut self, f: &FlipOutcome) {
        self.flips += 1;
        self.detected += u64::from(f.detected);
        self.proven_benign += u64::from(!f.can_change);
        self.silent += u64::from(!f.detected && f.can_change);
        self.mispredicted += u64::from(f.detected != f.can_change);
    }
}

/// Inverse of `b_index`: the line and index owning bit `pos` of table B.
fn b_slot(p: &Params, pos: u64) -> (LineRef, u64) {
    let s = (1..=p.b())
        .find(|&s| pos < line_offset(p, s + 1))
        .expect("position inside table B");
    let rel = pos - line_offset(p, s);
    let line = p
        .line_from_ordinal(s, rel / p.b())
        .expect("ordinal inside family");
    (line, rel % p.b())
}

/// Whether flipping `pos` of `table` changes the answer for at least one element.
pub fn flip_can_change_answers(st: &Structure, table: TableId, pos: u64) -> bool {
    let p = st.params();
    let a = st.table(TableId::A);
    let (b, g) = (p.b(), p.grid_side());
    match table {
        TableId::A => {
            let blk = p.block_from_ordinal(pos).expect("position inside table A");
            let line = blk.line();
            (0..b).any(|i| {
                st.table(TableId::B).get(b_index(p, &line, i))
                    != st.table(TableId::C).get(c_index(p, blk.x, blk.y, i))
            })
        }
        TableId::B => {
            let (line, _) = b_slot(p, pos);
            p.line_points(&line)
                .any(|(x, y)| !a.get(a_index(p, &BlockAddr::new(line.s, x, y))))
        }
        TableId::C => {
            let cell = pos / b;
            let (x, y) = (cell % g, cell / g);
            (1..=b).any(|s| a.get(a_index(p, &BlockAddr::new(s, x, y))))
        }
    }
}

/// Flips every bit of the structure for `subset` and records what the oracle sees.
pub fn fault_scan(p: &Params, subset: &[u64]) -> Result<Vec<FlipOutcome>, OracleError> {
    let st = build_from_ordinals(p, subset)?;
    let m = p.universe_size();
    let mut out = Vec::with_capacity(st.total_bits() as usize);
    for table in [TableId::A, TableId::B, TableId::C] {
        for pos in 0..st.table(table).len() {
            let mut faulty = st.clone();
            faulty.table_mut(table).flip(pos);
            let detected = (0..m).any(|n| {
                let e = p.element_from_ordinal(n).expect("in range");
                let got = query(&faulty, &e).expect("valid element").member;
                got != subset.binary_search(&n).is_ok()
            });
            out.push(FlipOutcome {
                table,
                pos,
                detected,
                can_change: flip_can_change_answers(&st, table, pos),
            });
        }
    }
    Ok(out)
}

/// Fault scans over `structures` seeded random `n`-subsets.
pub fn fault_sensitivity(
    b: u64,
    structures: u64,
    seed: u64,
    n: usize,
) -> Result<FaultSummary, OracleError> {
    let p = Params::new(b)?;
    let scans: Vec<Vec<FlipOutcome>> = (0..structures)
        .into_par_iter()
        .map(|t| {
            fault_scan(
                &p,
                &draw_subset(&mut subset_rng(seed, t), p.universe_size(), n),
            )
        })
        .collect::<Result<_, _>>()?;
    let mut summary = FaultSummary {
        structures,
        ..Default::default()
    };
    for f in scans.iter().flatten() {
        summary.add(f);
    }
    Ok(summary)
}
