//! Diagnostic taxonomy of four-block configurations by number of distinct
//! lines and by which blocks share grid coordinates. The storage scheme does
//! not depend on it; it exists to stratify verification runs.

use core::fmt;

use alloc::vec::Vec;

use crate::geometry::{line_of, BlockAddr, LineRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseLabel {
    /// Four distinct lines.
    I,
    /// One line.
    II,
    /// Two lines, split three and one.
    IIIA,
    /// Two lines, split two and two.
    IIIB,
    /// Three lines; three blocks share a coordinate.
    IVA,
    /// Three lines; two disjoint pairs share coordinates.
    IVB,
    /// Three lines; one coincident pair, and the block off the pair's lines
    /// sits on the shared line's trace in the grid.
    IVCi,
    /// Three lines; one coincident pair, otherwise.
    IVCii,
    /// Three lines; all coordinates distinct.
    IVD,
    FewerThan4Blocks,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 10] = [
        CaseLabel::I,
        CaseLabel::II,
        CaseLabel::IIIA,
        CaseLabel::IIIB,
        CaseLabel::IVA,
        CaseLabel::IVB,
        CaseLabel::IVCi,
        CaseLabel::IVCii,
        CaseLabel::IVD,
        CaseLabel::FewerThan4Blocks,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::IIIA => "IIIA",
            CaseLabel::IIIB => "IIIB",
            CaseLabel::IVA => "IVA",
            CaseLabel::IVB => "IVB",
            CaseLabel::IVCi => "IVC_i",
            CaseLabel::IVCii => "IVC_ii",
            CaseLabel::IVD => "IVD",
            CaseLabel::FewerThan4Blocks => "FEWER_THAN_4_BLOCKS",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Labels a set of non-empty blocks. Anything other than four distinct
/// blocks is [`CaseLabel::FewerThan4Blocks`].
pub fn classify(non_empty: &[BlockAddr]) -> CaseLabel {
    let mut blocks = non_empty.to_vec();
    blocks.sort_unstable();
    blocks.dedup();
    if blocks.len() != 4 {
        return CaseLabel::FewerThan4Blocks;
    }

    // (line, number of blocks on it)
    let mut lines: Vec<(LineRef, usize)> = Vec::with_capacity(4);
    for blk in &blocks {
        let l = line_of(blk);
        match lines.iter_mut().find(|(m, _)| *m == l) {
            Some((_, n)) => *n += 1,
            None => lines.push((l, 1)),
        }
    }

    match lines.len() {
        4 => CaseLabel::I,
        1 => CaseLabel::II,
        2 => {
            if lines.iter().any(|&(_, n)| n == 3) {
                CaseLabel::IIIA
            } else {
                CaseLabel::IIIB
            }
        }
        3 => classify_three_lines(&blocks, &lines),
        _ => unreachable!("four blocks span one to four lines"),
    }
}

fn classify_three_lines(blocks: &[BlockAddr], lines: &[(LineRef, usize)]) -> CaseLabel {
    let shared = lines
        .iter()
        .find(|&&(_, n)| n == 2)
        .map(|&(l, _)| l)
        .expect("three lines over four blocks share one");

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..blocks.len() {
        for k in j + 1..blocks.len() {
            if blocks[j].coords() == blocks[k].coords() {
                pairs.push((j, k));
            }
        }
    }

    match pairs.len() {
        0 => CaseLabel::IVD,
        // three pairwise-coincident blocks
        3 => CaseLabel::IVA,
        2 => {
            let disjoint = pairs[0].0 != pairs[1].0
                && pairs[0].0 != pairs[1].1
                && pairs[0].1 != pairs[1].0
                && pairs[0].1 != pairs[1].1;
            debug_assert!(disjoint, "two overlapping pairs imply a third");
            CaseLabel::IVB
        }
        1 => {
            let (j, k) = pairs[0];
            let on_shared = |blk: &BlockAddr| line_of(blk) == shared;
            // The lone block: not in the pair and not on the shared line.
            let lone = blocks
                .iter()
                .enumerate()
                .find(|&(t, blk)| t != j && t != k && !on_shared(blk));
            match lone {
                Some((_, blk)) if shared.contains(blk.x, blk.y) => CaseLabel::IVCi,
                _ => CaseLabel::IVCii,
            }
        }
        _ => unreachable!("blocks on the shared line have distinct coordinates"),
    }
}
