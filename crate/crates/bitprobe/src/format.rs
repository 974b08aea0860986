//! Structure file format.
//!
//! ```text
//! "BP42"            4 bytes magic
//! version           1 byte, currently 1
//! b                 u64 little-endian
//! A, B, C           each: bit length as u64 little-endian, then ceil(len/8)
//!                   bytes, bit k at byte k/8, bit position k%8 (LSB first)
//! ```
//!
//! Sections follow each other without padding. Trailing bytes are rejected.

use std::fs;
use std::io;
use std::path::Path;

use bitprobe_core::tables::{table_a_len, table_b_len, table_c_len};
use bitprobe_core::{BitTable, Params, Structure, TableId};
use thiserror::Error;

pub const MAGIC: [u8; 4] = *b"BP42";
pub const VERSION: u8 = 1;

const SECTIONS: [TableId; 3] = [TableId::A, TableId::B, TableId::C];

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("bad magic {found:02x?}, expected \"BP42\"")]
    BadMagic { found: Vec<u8> },
    #[error("unsupported format version {0}, expected {VERSION}")]
    UnsupportedVersion(u8),
    #[error("invalid parameters in header: {0}")]
    InvalidParams(#[from] bitprobe_core::Error),
    #[error("length mismatch in {section}: expected {expected}, found {found}")]
    LengthMismatch {
        section: &'static str,
        expected: u64,
        found: u64,
    },
    #[error("padding bits set in table {0}")]
    NonZeroPadding(TableId),
    #[error("{0} trailing bytes after table C")]
    TrailingBytes(usize),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn serialize(st: &Structure) -> Vec<u8> {
    let mut out = Vec::with_capacity(13 + 3 * 8 + (st.total_bits() as usize).div_ceil(8) + 2);
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&st.params().b().to_le_bytes());
    for id in SECTIONS {
        let t = st.table(id);
        out.extend_from_slice(&t.len().to_le_bytes());
        out.extend_from_slice(&t.to_bytes());
    }
    out
}

struct Cursor<'a> {
    rest: &'a [u8],
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: u64, section: &'static str) -> Result<&'a [u8], FormatError> {
        if (self.rest.len() as u64) < n {
            return Err(FormatError::LengthMismatch {
                section,
                expected: n,
                found: self.rest.len() as u64,
            });
        }
        let (head, tail) = self.rest.split_at(n as usize);
        self.rest = tail;
        Ok(head)
    }

    fn u64(&mut self, section: &'static str) -> Result<u64, FormatError> {
        let bytes = self.take(8, section)?;
        Ok(u64::from_le_bytes(bytes.try_into().expect("8 bytes")))
    }
}

fn section_name(id: TableId) -> &'static str {
    match id {
        TableId::A => "table A",
        TableId::B => "table B",
        TableId::C => "table C",
    }
}

pub fn deserialize(bytes: &[u8]) -> Result<Structure, FormatError> {
    let mut cur = Cursor { rest: bytes };
    let magic = cur.take(4, "magic")?;
    if magic != MAGIC {
        return Err(FormatError::BadMagic {
            found: magic.to_vec(),
        });
    }
    let version = cur.take(1, "version")?[0];
    if version != VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    let params = Params::new(cur.u64("header")?)?;

    let expected = [
        table_a_len(&params),
        table_b_len(&params),
        table_c_len(&params),
    ];
    let mut tables = Vec::with_capacity(3);
    for (id, want) in SECTIONS.into_iter().zip(expected) {
        let name = section_name(id);
        let len = cur.u64(name)?;
        if len != want {
            return Err(FormatError::LengthMismatch {
                section: name,
                expected: want,
                found: len,
            });
        }
        let payload = cur.take(len.div_ceil(8), name)?;
        tables.push(BitTable::from_bytes(len, payload).ok_or(FormatError::NonZeroPadding(id))?);
    }
    if !cur.rest.is_empty() {
        return Err(FormatError::TrailingBytes(cur.rest.len()));
    }
    let c = tables.pop().expect("three tables");
    let b = tables.pop().expect("three tables");
    let a = tables.pop().expect("three tables");
    Ok(Structure::from_tables(params, a, b, c).expect("lengths checked above"))
}

pub fn write_file(path: &Path, st: &Structure) -> Result<(), FormatError> {
    fs::write(path, serialize(st))?;
    Ok(())
}

pub fn read_file(path: &Path) -> Result<Structure, FormatError> {
    deserialize(&fs::read(path)?)
}
