use std::ops::RangeInclusive;

use bitprobe_core::tables::{table_a_len, table_b_len, table_c_len};
use bitprobe_core::Params;

use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceRow {
    pub b: u64,
    pub a_bits: u64,
    pub b_bits: u64,
    pub c_bits: u64,
    pub total: u64,
    /// `total / b^5`.
    pub ratio: f64,
}

/// Exact table sizes for each `b` in `range`.
pub fn space_audit(range: RangeInclusive<u64>) -> Result<Vec<SpaceRow>, OracleError> {
    range
        .map(|b| {
            let p = Params::new(b)?;
            let (a, bb, c) = (table_a_len(&p), table_b_len(&p), table_c_len(&p));
            let total = a + bb + c;
            Ok(SpaceRow {
                b,
                a_bits: a,
                b_bits: bb,
                c_bits: c,
                total,
                ratio: total as f64 / p.num_blocks() as f64,
            })
        })
        .collect()
}
