//! Adaptive two-bitprobe membership for sets of at most four elements.
//!
//! A universe of `m = b^6` elements is split into `b^5` blocks of `b`
//! elements. Three bit tables of `O(b^5) = O(m^{5/6})` bits in total store a
//! set `S`, and "is `e` in `S`?" is answered by reading one bit of table A and,
//! depending on it, one bit of table B or table C.
//!
//! ```
//! use bitprobe_core::{build, query, Params};
//!
//! let p = Params::new(2).unwrap();
//! let set = [p.element_from_ordinal(5).unwrap(), p.element_from_ordinal(40).unwrap()];
//! let st = build(&p, &set).unwrap();
//! assert!(query(&st, &set[0]).unwrap().member);
//! assert!(!query(&st, &p.element_from_ordinal(6).unwrap()).unwrap().member);
//! ```

#![no_std]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod scheme;
pub mod tables;

pub use error::{Error, Result};
pub use geometry::{line_of, BlockAddr, ElementAddr, LineRef, Params};
pub use scheme::{
    assign_blocks, blocked_status, build, build_from_ordinals, build_grouped, classify,
    group_members, query, Assignment, BlockedStatus, CaseLabel, Probe, ProbeTrace, QueryOutcome,
};
pub use tables::{a_index, b_index, c_index, BitTable, Structure, TableId};

/// Smallest supported block size.
pub const MIN_B: u64 = 2;
/// Largest supported block size; keeps `m = b^6` within `2^60`.
pub const MAX_B: u64 = 1024;
/// Largest set the scheme stores.
pub const MAX_SET_SIZE: usize = 4;
