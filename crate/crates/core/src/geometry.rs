//! Universe layout: elements are grouped into blocks of `b` elements, blocks
//! into `b` superblocks, and each superblock arranges its `b^4` blocks on a
//! `b^2 x b^2` grid. Superblock `s` is covered by the family of lines of
//! slope `1/s`, each identified by the x-intercept ("anchor") it crosses the
//! `y = 0` axis at.

use alloc::vec::Vec;

use crate::error::{check_range, Error, Result};
use crate::{MAX_B, MIN_B};

/// The scheme parameter `b = m^{1/6}` together with its derived dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    b: u64,
}

impl Params {
    pub fn new(b: u64) -> Result<Self> {
        if !(MIN_B..=MAX_B).contains(&b) {
            return Err(Error::InvalidBlockSize { b });
        }
        Ok(Params { b })
    }

    /// Smallest `b` with `b^6 >= m`. Elements in `[m, b^6)` are padding and never members.
    pub fn for_universe(m: u64) -> Result<Self> {
        let mut b = 1u64;
        while b <= MAX_B && b.pow(6) < m {
            b += 1;
        }
        if !(MIN_B..=MAX_B).contains(&b) {
            return Err(Error::InvalidUniverse { m });
        }
        Ok(Params { b })
    }

    #[inline]
    pub fn b(&self) -> u64 {
        self.b
    }

    /// Side length of a superblock grid, `b^2`.
    #[inline]
    pub fn grid_side(&self) -> u64 {
        self.b * self.b
    }

    #[inline]
    pub fn blocks_per_superblock(&self) -> u64 {
        self.b.pow(4)
    }

    #[inline]
    pub fn num_superblocks(&self) -> u64 {
        self.b
    }

    #[inline]
    pub fn num_blocks(&self) -> u64 {
        self.b.pow(5)
    }

    /// `m = b^6`.
    #[inline]
    pub fn universe_size(&self) -> u64 {
        self.b.pow(6)
    }

    pub fn check_superblock(&self, s: u64) -> Result<()> {
        check_range("superblock", s as i128, 1, self.b as i128 + 1)
    }

    pub fn check_block(&self, blk: &BlockAddr) -> Result<()> {
        self.check_superblock(blk.s)?;
        let g = self.grid_side() as i128;
        check_range("x", blk.x as i128, 0, g)?;
        check_range("y", blk.y as i128, 0, g)
    }

    pub fn check_element(&self, e: &ElementAddr) -> Result<()> {
        self.check_block(&e.block)?;
        check_range("index", e.i as i128, 0, self.b as i128)
    }

    pub fn check_line(&self, l: &LineRef) -> Result<()> {
        self.check_superblock(l.s)?;
        let (lo, hi) = self.anchor_range(l.s);
        check_range("anchor", l.anchor as i128, lo as i128, hi as i128)
    }

    /// Half-open anchor range `[-s(b^2-1), b^2)` of the line family of superblock `s`.
    #[inline]
    pub fn anchor_range(&self, s: u64) -> (i64, i64) {
        let g = self.grid_side() as i64;
        (-(s as i64) * (g - 1), g)
    }

    pub fn element_from_ordinal(&self, n: u64) -> Result<ElementAddr> {
        check_range(
            "element ordinal",
            n as i128,
            0,
            self.universe_size() as i128,
        )?;
        let (b, g) = (self.b, self.grid_side());
        let i = n % b;
        let rest = n / b;
        let x = rest % g;
        let rest = rest / g;
        let y = rest % g;
        let s = rest / g + 1;
        Ok(ElementAddr {
            block: BlockAddr { s, x, y },
            i,
        })
    }

    /// Inverse of [`Params::element_from_ordinal`]: `n = (((s-1)*b^2 + y)*b^2 + x)*b + i`.
    pub fn element_to_ordinal(&self, e: &ElementAddr) -> Result<u64> {
        self.check_element(e)?;
        Ok(self.block_ordinal(&e.block) * self.b + e.i)
    }

    /// Dense block number `(s-1)*b^4 + y*b^2 + x`. Caller guarantees validity.
    #[inline]
    pub fn block_ordinal(&self, blk: &BlockAddr) -> u64 {
        let g = self.grid_side();
        ((blk.s - 1) * g + blk.y) * g + blk.x
    }

    pub fn block_from_ordinal(&self, k: u64) -> Result<BlockAddr> {
        check_range("block ordinal", k as i128, 0, self.num_blocks() as i128)?;
        let g = self.grid_side();
        Ok(BlockAddr {
            s: k / (g * g) + 1,
            y: (k / g) % g,
            x: k % g,
        })
    }

    /// Number of lines of slope `1/s` meeting the grid: `(s+1)(b^2-1)+1`.
    pub fn num_lines(&self, s: u64) -> Result<u64> {
        self.check_superblock(s)?;
        Ok((s + 1) * (self.grid_side() - 1) + 1)
    }

    /// Dense index of a line within its family, `anchor + s(b^2-1)`.
    #[inline]
    pub fn line_ordinal(&self, l: &LineRef) -> u64 {
        (l.anchor + l.s as i64 * (self.grid_side() as i64 - 1)) as u64
    }

    pub fn line_from_ordinal(&self, s: u64, k: u64) -> Result<LineRef> {
        let n = self.num_lines(s)?;
        check_range("line ordinal", k as i128, 0, n as i128)?;
        Ok(LineRef {
            s,
            anchor: k as i64 - s as i64 * (self.grid_side() as i64 - 1),
        })
    }

    /// Grid points `(x, y)` with `x - s*y = anchor`, by increasing `y`.
    pub fn points_on_line(&self, l: &LineRef) -> Result<Vec<(u64, u64)>> {
        self.check_line(l)?;
        Ok(self.line_points(l).collect())
    }

    /// Unchecked iterator form of [`Params::points_on_line`].
    pub fn line_points(&self, l: &LineRef) -> impl Iterator<Item = (u64, u64)> {
        let g = self.grid_side() as i64;
        let (s, a) = (l.s as i64, l.anchor);
        // 0 <= a + s*y < g  <=>  ceil(-a/s) <= y <= floor((g-1-a)/s)
        let y_lo = (-a).div_euclid(s) + i64::from((-a).rem_euclid(s) != 0);
        let y_lo = y_lo.max(0);
        let y_hi = (g - 1 - a).div_euclid(s).min(g - 1);
        (y_lo..=y_hi).map(move |y| ((a + s * y) as u64, y as u64))
    }

    /// Iterates over every line of every superblock.
    pub fn all_lines(&self) -> impl Iterator<Item = LineRef> + '_ {
        (1..=self.b).flat_map(move |s| {
            let (lo, hi) = self.anchor_range(s);
            (lo..hi).map(move |anchor| LineRef { s, anchor })
        })
    }
}

/// `(s, x, y)`: superblock id (1-based, the slope is `1/s`) and grid coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockAddr {
    pub s: u64,
    pub x: u64,
    pub y: u64,
}

impl BlockAddr {
    pub const fn new(s: u64, x: u64, y: u64) -> Self {
        BlockAddr { s, x, y }
    }

    #[inline]
    pub fn coords(&self) -> (u64, u64) {
        (self.x, self.y)
    }

    /// The line of slope `1/s` through this block.
    #[inline]
    pub fn line(&self) -> LineRef {
        line_of(self)
    }
}

/// `(s, x, y, i)`: a block plus the element's index within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementAddr {
    pub block: BlockAddr,
    pub i: u64,
}

impl ElementAddr {
    pub const fn new(s: u64, x: u64, y: u64, i: u64) -> Self {
        ElementAddr {
            block: BlockAddr { s, x, y },
            i,
        }
    }
}

/// Line of slope `1/s` crossing the x-axis at `anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineRef {
    pub s: u64,
    pub anchor: i64,
}

impl LineRef {
    #[inline]
    pub fn contains(&self, x: u64, y: u64) -> bool {
        x as i64 - self.s as i64 * y as i64 == self.anchor
    }
}

#[inline]
pub fn line_of(blk: &BlockAddr) -> LineRef {
    LineRef {
        s: blk.s,
        anchor: blk.x as i64 - blk.s as i64 * blk.y as i64,
    }
}
