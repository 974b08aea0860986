//! The three bit tables and their index layouts.
//!
//! * `A`: one bit per block, selecting which table holds the block.
//! * `B`: one `b`-bit block per line of every superblock's line family.
//! * `C`: one `b`-bit block per grid coordinate, shared by all superblocks.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{BlockAddr, LineRef, Params};

/// Fixed-length bit vector. Bit `k` lives in word `k / 64` at bit `k % 64`,
/// which matches LSB-first byte order once words are written little-endian.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitTable {
    len: u64,
    words: Vec<u64>,
}

impl BitTable {
    pub fn new(len: u64) -> Self {
        BitTable {
            len,
            words: vec![0; len.div_ceil(64) as usize],
        }
    }

    #[inline]
    pub fn len(&self) -> u64 {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, k: u64) -> bool {
        assert!(k < self.len, "bit {k} out of table of {} bits", self.len);
        (self.words[(k / 64) as usize] >> (k % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, k: u64, v: bool) {
        assert!(k < self.len, "bit {k} out of table of {} bits", self.len);
        let w = &mut self.words[(k / 64) as usize];
        let mask = 1u64 << (k % 64);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, k: u64) {
        assert!(k < self.len, "bit {k} out of table of {} bits", self.len);
        self.words[(k / 64) as usize] ^= 1u64 << (k % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Positions of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(wi as u64 * 64 + t)
            })
        })
    }

    /// Packed bytes, `ceil(len / 8)` of them, bit `k` at byte `k / 8` position `k % 8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.len.div_ceil(8) as usize;
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(n)
            .collect()
    }

    /// Inverse of [`BitTable::to_bytes`]. Returns `None` if `bytes` has the wrong
    /// length or sets a bit at or beyond `len`.
    pub fn from_bytes(len: u64, bytes: &[u8]) -> Option<Self> {
        if bytes.len() as u64 != len.div_ceil(8) {
            return None;
        }
        let mut t = BitTable::new(len);
        for (w, chunk) in t.words.iter_mut().zip(bytes.chunks(8)) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            *w = u64::from_le_bytes(buf);
        }
        if !len.is_multiple_of(64) {
            if let Some(last) = t.words.last() {
                if last >> (len % 64) != 0 {
                    return None;
                }
            }
        }
        Some(t)
    }
}

impl fmt::Debug for BitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BitTable")
            .field("len", &self.len)
            .field("ones", &self.count_ones())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableId {
    A,
    B,
    C,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::A => "A",
            TableId::B => "B",
            TableId::C => "C",
        })
    }
}

/// `|A| = b^5`.
pub fn table_a_len(p: &Params) -> u64 {
    p.num_blocks()
}

/// `|B| = b * [(b^2-1) * b(b+3)/2 + b]`, one `b`-bit slot per line over all superblocks.
pub fn table_b_len(p: &Params) -> u64 {
    line_offset(p, p.b() + 1)
}

/// `|C| = b^4 * b`.
pub fn table_c_len(p: &Params) -> u64 {
    p.blocks_per_superblock() * p.b()
}

pub fn total_bits(p: &Params) -> u64 {
    table_a_len(p) + table_b_len(p) + table_c_len(p)
}

/// Bit offset of superblock `s`'s line slots in table B:
/// `b * sum_{j<s} num_lines(j) = b * [(b^2-1)(s-1)(s+2)/2 + (s-1)]`.
/// Valid for `1 <= s <= b + 1`; `s = b + 1` yields `|B|`.
#[inline]
pub fn line_offset(p: &Params, s: u64) -> u64 {
    let g1 = p.grid_side() - 1;
    p.b() * (g1 * (s - 1) * (s + 2) / 2 + (s - 1))
}

/// `(s-1)*b^4 + y*b^2 + x`.
#[inline]
pub fn a_index(p: &Params, blk: &BlockAddr) -> u64 {
    p.block_ordinal(blk)
}

/// `offset(s) + line_ordinal * b + i`.
#[inline]
pub fn b_index(p: &Params, l: &LineRef, i: u64) -> u64 {
    line_offset(p, l.s) + p.line_ordinal(l) * p.b() + i
}

/// `(y*b^2 + x)*b + i`, the same for every superblock.
#[inline]
pub fn c_index(p: &Params, x: u64, y: u64, i: u64) -> u64 {
    (y * p.grid_side() + x) * p.b() + i
}

/// The built data structure: the three tables for one parameter choice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    params: Params,
    a: BitTable,
    b: BitTable,
    c: BitTable,
}

impl Structure {
    /// All-zero tables of the exact sizes for `params`.
    pub fn empty(params: Params) -> Self {
        Structure {
            a: BitTable::new(table_a_len(&params)),
            b: BitTable::new(table_b_len(&params)),
            c: BitTable::new(table_c_len(&params)),
            params,
        }
    }

    /// Assembles a structure from tables, checking their lengths.
    pub fn from_tables(params: Params, a: BitTable, b: BitTable, c: BitTable) -> Option<Self> {
        if a.len() != table_a_len(&params)
            || b.len() != table_b_len(&params)
            || c.len() != table_c_len(&params)
        {
            return None;
        }
        Some(Structure { params, a, b, c })
    }

    #[inline]
    pub fn params(&self) -> &Params {
        &self.params
    }

    #[inline]
    pub fn table(&self, id: TableId) -> &BitTable {
        match id {
            TableId::A => &self.a,
            TableId::B => &self.b,
            TableId::C => &self.c,
        }
    }

    #[inline]
    pub fn table_mut(&mut self, id: TableId) -> &mut BitTable {
        match id {
            TableId::A => &mut self.a,
            TableId::B => &mut self.b,
            TableId::C => &mut self.c,
        }
    }

    pub fn total_bits(&self) -> u64 {
        self.a.len() + self.b.len() + self.c.len()
    }
}
