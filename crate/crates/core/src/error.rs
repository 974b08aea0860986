use core::fmt;

use alloc::vec::Vec;

use crate::geometry::BlockAddr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `b` outside `[MIN_B, MAX_B]`.
    InvalidBlockSize { b: u64 },
    /// A universe size whose sixth root rounds up to less than 2 or more than `MAX_B`.
    InvalidUniverse { m: u64 },
    /// A coordinate, index or ordinal outside its range. `bound` is exclusive.
    OutOfRange {
        what: &'static str,
        value: i128,
        min: i128,
        bound: i128,
    },
    /// More than four distinct elements requested.
    Capacity { distinct: usize },
    /// No B/C placement satisfies the separation constraints. Unreachable if the scheme is sound.
    NoValidAssignment { blocks: Vec<BlockAddr> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBlockSize { b } => write!(
                f,
                "block size b = {b} is not supported (need {} <= b <= {})",
                crate::MIN_B,
                crate::MAX_B
            ),
            Error::InvalidUniverse { m } => write!(
                f,
                "universe size m = {m} does not resolve to a block size in [{}, {}]",
                crate::MIN_B,
                crate::MAX_B
            ),
            Error::OutOfRange {
                what,
                value,
                min,
                bound,
            } => write!(f, "{what} = {value} is out of range [{min}, {bound})"),
            Error::Capacity { distinct } => write!(
                f,
                "set has {distinct} distinct elements, at most {} are supported",
                crate::MAX_SET_SIZE
            ),
            Error::NoValidAssignment { blocks } => write!(
                f,
                "internal failure: no valid table assignment for non-empty blocks {blocks:?}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: i128, min: i128, bound: i128) -> Result<()> {
    if value < min || value >= bound {
        Err(Error::OutOfRange {
            what,
            value,
            min,
            bound,
        })
    } else {
        Ok(())
    }
}
