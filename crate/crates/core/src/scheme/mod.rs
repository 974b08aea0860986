//! Storage and query schemes.
//!
//! A non-empty block is stored whole in either table B (at the slot of its
//! line) or table C (at the slot of its grid coordinate), and its A bit says
//! which. An empty block must be routed by its A bit to a slot that reads as
//! all zeros: B works unless a B-stored block shares its line, C works unless
//! a C-stored block shares its coordinate. The assignment search below picks
//! a placement of the non-empty blocks under which no empty block is blocked
//! both ways.

mod cases;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

pub use cases::{classify, CaseLabel};

use crate::error::{Error, Result};
use crate::geometry::{line_of, BlockAddr, ElementAddr, Params};
use crate::tables::{a_index, b_index, c_index, Structure, TableId};
use crate::MAX_SET_SIZE;

/// Members of `S` grouped by block: block -> set of indices within the block.
pub type Grouping = BTreeMap<BlockAddr, BTreeSet<u64>>;

/// Validates and deduplicates `set`, grouping members by block.
pub fn group_members(p: &Params, set: &[ElementAddr]) -> Result<Grouping> {
    for e in set {
        p.check_element(e)?;
    }
    let distinct: BTreeSet<&ElementAddr> = set.iter().collect();
    if distinct.len() > MAX_SET_SIZE {
        return Err(Error::Capacity {
            distinct: distinct.len(),
        });
    }
    let mut groups = Grouping::new();
    for e in distinct {
        groups.entry(e.block).or_default().insert(e.i);
    }
    Ok(groups)
}

/// Which table each non-empty block is stored in. Both lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Assignment {
    pub placed_b: Vec<BlockAddr>,
    pub placed_c: Vec<BlockAddr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlockedStatus {
    /// Shares a line with a block stored in B, so its B slot is not all-zero.
    pub b_blocked: bool,
    /// Shares grid coordinates with a block stored in C, so its C slot is not all-zero.
    pub c_blocked: bool,
}

impl BlockedStatus {
    #[inline]
    pub fn is_stuck(&self) -> bool {
        self.b_blocked && self.c_blocked
    }
}

impl Assignment {
    #[inline]
    pub fn is_non_empty(&self, blk: &BlockAddr) -> bool {
        self.placed_b.binary_search(blk).is_ok() || self.placed_c.binary_search(blk).is_ok()
    }

    /// Checks the separation constraints against the given set of non-empty blocks.
    pub fn is_valid(&self, non_empty: &[BlockAddr]) -> bool {
        let mut all: Vec<BlockAddr> = self
            .placed_b
            .iter()
            .chain(&self.placed_c)
            .copied()
            .collect();
        all.sort_unstable();
        let mut want = non_empty.to_vec();
        want.sort_unstable();
        want.dedup();
        if all != want {
            return false;
        }
        let lines_distinct = pairwise_distinct(&self.placed_b, line_of);
        let coords_distinct = pairwise_distinct(&self.placed_c, BlockAddr::coords);
        lines_distinct && coords_distinct && !self.has_stuck_empty_block()
    }

    /// An empty block is stuck iff it lies on the line of a B-placed block and
    /// at the coordinate of a C-placed one. Such a block would be `(s, x, y)`
    /// for some B-placed line `l_s` and C-placed coordinate `(x, y)` on it.
    fn has_stuck_empty_block(&self) -> bool {
        self.placed_b.iter().any(|bb| {
            let line = line_of(bb);
            self.placed_c.iter().any(|cb| {
                let candidate = BlockAddr::new(bb.s, cb.x, cb.y);
                line.contains(cb.x, cb.y) && !self.is_non_empty(&candidate)
            })
        })
    }

    /// The A bit of a block: 0 routes a query to table B, 1 to table C.
    pub fn a_bit(&self, blk: &BlockAddr) -> bool {
        if self.placed_b.binary_search(blk).is_ok() {
            false
        } else if self.placed_c.binary_search(blk).is_ok() {
            true
        } else {
            blocked_status(blk, self).b_blocked
        }
    }
}

fn pairwise_distinct<K: PartialEq>(blocks: &[BlockAddr], key: impl Fn(&BlockAddr) -> K) -> bool {
    blocks
        .iter()
        .enumerate()
        .all(|(j, u)| blocks[j + 1..].iter().all(|v| key(u) != key(v)))
}

/// Blocking status of an empty block. `blk` must not be one of the placed blocks.
pub fn blocked_status(blk: &BlockAddr, asg: &Assignment) -> BlockedStatus {
    debug_assert!(!asg.is_non_empty(blk), "{blk:?} is not empty");
    let line = line_of(blk);
    BlockedStatus {
        b_blocked: asg.placed_b.iter().any(|o| line_of(o) == line),
        c_blocked: asg.placed_c.iter().any(|o| o.coords() == blk.coords()),
    }
}

/// Finds the first valid placement of the (at most four) non-empty blocks.
///
/// Blocks are sorted by `(s, x, y)`; candidates `k = 0, 1, .., 2^n - 1` are
/// tried in order, bit `j` of `k` sending block `j` to table C.
pub fn assign_blocks(p: &Params, non_empty: &[BlockAddr]) -> Result<Assignment> {
    let mut blocks = non_empty.to_vec();
    blocks.sort_unstable();
    blocks.dedup();
    for blk in &blocks {
        p.check_block(blk)?;
    }
    if blocks.len() > MAX_SET_SIZE {
        return Err(Error::Capacity {
            distinct: blocks.len(),
        });
    }
    for k in 0u32..(1 << blocks.len()) {
        let (c, b): (Vec<_>, Vec<_>) = blocks
            .iter()
            .enumerate()
            .partition(|(j, _)| k & (1 << j) != 0);
        let asg = Assignment {
            placed_b: b.into_iter().map(|(_, blk)| *blk).collect(),
            placed_c: c.into_iter().map(|(_, blk)| *blk).collect(),
        };
        if asg.is_valid(&blocks) {
            return Ok(asg);
        }
    }
    Err(Error::NoValidAssignment { blocks })
}

/// Builds the tables storing `set` (at most four distinct elements).
pub fn build(p: &Params, set: &[ElementAddr]) -> Result<Structure> {
    let groups = group_members(p, set)?;
    build_grouped(p, &groups)
}

/// [`build`] over flat element ordinals.
pub fn build_from_ordinals(p: &Params, ordinals: &[u64]) -> Result<Structure> {
    let elems = ordinals
        .iter()
        .map(|&n| p.element_from_ordinal(n))
        .collect::<Result<Vec<_>>>()?;
    build(p, &elems)
}

/// [`build`] for members already grouped by block.
pub fn build_grouped(p: &Params, groups: &Grouping) -> Result<Structure> {
    let non_empty: Vec<BlockAddr> = groups.keys().copied().collect();
    let asg = assign_blocks(p, &non_empty)?;
    let mut st = Structure::empty(*p);

    for blk in &asg.placed_b {
        let line = line_of(blk);
        let slot = st.table_mut(TableId::B);
        for &i in &groups[blk] {
            slot.set(b_index(p, &line, i), true);
        }
        // Every empty block on this line is B-blocked and goes to C.
        for (x, y) in p.line_points(&line) {
            let other = BlockAddr::new(blk.s, x, y);
            if !asg.is_non_empty(&other) {
                st.table_mut(TableId::A).set(a_index(p, &other), true);
            }
        }
    }
    for blk in &asg.placed_c {
        st.table_mut(TableId::A).set(a_index(p, blk), true);
        let slot = st.table_mut(TableId::C);
        for &i in &groups[blk] {
            slot.set(c_index(p, blk.x, blk.y, i), true);
        }
    }
    Ok(st)
}

/// One bit read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Probe {
    pub table: TableId,
    pub pos: u64,
    pub value: bool,
}

/// The two reads made by one query, first always in table A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProbeTrace(pub [Probe; 2]);

impl ProbeTrace {
    #[inline]
    pub fn probes(&self) -> &[Probe] {
        &self.0
    }

    /// First probe in A, second in B after a 0 or in C after a 1.
    pub fn follows_decision_tree(&self) -> bool {
        let [first, second] = self.0;
        first.table == TableId::A
            && second.table == if first.value { TableId::C } else { TableId::B }
    }
}

impl core::fmt::Display for ProbeTrace {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let [a, b] = self.0;
        write!(
            f,
            "{}[{}]={} ; {}[{}]={}",
            a.table,
            a.pos,
            u8::from(a.value),
            b.table,
            b.pos,
            u8::from(b.value)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOutcome {
    pub member: bool,
    pub trace: ProbeTrace,
}

/// Answers "is `e` in S?" with exactly two bit reads.
pub fn query(st: &Structure, e: &ElementAddr) -> Result<QueryOutcome> {
    let p = st.params();
    p.check_element(e)?;
    let blk = &e.block;
    let pos = a_index(p, blk);
    let first = Probe {
        table: TableId::A,
        pos,
        value: st.table(TableId::A).get(pos),
    };
    let (table, pos) = if first.value {
        (TableId::C, c_index(p, blk.x, blk.y, e.i))
    } else {
        (TableId::B, b_index(p, &line_of(blk), e.i))
    };
    let second = Probe {
        table,
        pos,
        value: st.table(table).get(pos),
    };
    Ok(QueryOutcome {
        member: second.value,
        trace: ProbeTrace([first, second]),
    })
}
