//! One client's ciphertexts, in memory and as an append-only file.
//!
//! File layout (big-endian):
//!
//! ```text
//! "MCDB" | version u8 | owner u32 | n u16 | count u64
//! count × ( row_id u64 | len u32 | basic ciphertext container )
//! ```

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;

use crate::basic::BasicCiphertext;
use crate::error::{DecodeError, Error, Result};
use crate::wire::WireFormat;

pub const COLUMN_MAGIC: &[u8; 4] = b"MCDB";
pub const COLUMN_VERSION: u8 = 1;
const COUNT_OFFSET: u64 = 4 + 1 + 4 + 2;
const FILE_HEADER_LEN: usize = COUNT_OFFSET as usize + 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncryptedColumn {
    j: u32,
    n: u8,
    rows: Vec<(u64, BasicCiphertext)>,
    ids: HashSet<u64>,
}

impl EncryptedColumn {
    pub fn new(j: u32, n: u8) -> Self {
        EncryptedColumn { j, n, rows: Vec::new(), ids: HashSet::new() }
    }

    pub fn owner(&self) -> u32 {
        self.j
    }

    pub fn bits(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[(u64, BasicCiphertext)] {
        &self.rows
    }

    pub fn push(&mut self, row_id: u64, ct: BasicCiphertext) -> Result<()> {
        if ct.client() != self.j {
            return Err(Error::ClientMismatch { left: self.j, right: ct.client() });
        }
        if ct.bits() != self.n {
            return Err(Error::BitLengthMismatch { left: self.n, right: ct.bits() });
        }
        if !self.ids.insert(row_id) {
            return Err(Error::InvalidParameter(format!("duplicate row id {row_id}")));
        }
        self.rows.push((row_id, ct));
        Ok(())
    }

    /// Rows in order, each given the next id starting at 0.
    pub fn from_ciphertexts(j: u32, n: u8, cts: impl IntoIterator<Item = BasicCiphertext>) -> Result<Self> {
        let mut col = EncryptedColumn::new(j, n);
        for (id, ct) in cts.into_iter().enumerate() {
            col.push(id as u64, ct)?;
        }
        Ok(col)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = header(self.j, self.n, self.rows.len() as u64);
        for (id, ct) in &self.rows {
            out.extend_from_slice(&record(*id, ct));
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (j, n, count) = parse_header(bytes)?;
        let mut col = EncryptedColumn::new(j, n);
        let mut pos = FILE_HEADER_LEN;
        for _ in 0..count {
            let (id, ct, used) = parse_record(&bytes[pos..])?;
            col.push(id, ct).map_err(|e| DecodeError::InvalidField(e.to_string()))?;
            pos += used;
        }
        if pos != bytes.len() {
            return Err(DecodeError::TrailingBytes(bytes.len() - pos).into());
        }
        Ok(col)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }

    /// Creates an empty column file; fails if it exists.
    pub fn create_file(path: &Path, j: u32, n: u8) -> Result<()> {
        let mut f = OpenOptions::new().write(true).create_new(true).open(path)?;
        f.write_all(&header(j, n, 0))?;
        Ok(())
    }

    /// Appends one record to a column file and bumps its count in place.
    /// Validates owner, bit length, and row-id uniqueness first.
    pub fn append_to_file(path: &Path, row_id: u64, ct: &BasicCiphertext) -> Result<()> {
        let existing = Self::load(path)?;
        existing.clone().push(row_id, ct.clone())?;
        let mut f = OpenOptions::new().read(true).write(true).open(path)?;
        f.seek(SeekFrom::End(0))?;
        f.write_all(&record(row_id, ct))?;
        f.seek(SeekFrom::Start(COUNT_OFFSET))?;
        f.write_all(&(existing.len() as u64 + 1).to_be_bytes())?;
        f.sync_all()?;
        Ok(())
    }

    /// Owner and bit length from a file header, without reading records.
    pub fn peek_file(path: &Path) -> Result<(u32, u8, u64)> {
        let mut buf = [0u8; FILE_HEADER_LEN];
        File::open(path)?.read_exact(&mut buf)?;
        Ok(parse_header(&buf)?)
    }
}

fn header(j: u32, n: u8, count: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(FILE_HEADER_LEN);
    out.extend_from_slice(COLUMN_MAGIC);
    out.push(COLUMN_VERSION);
    out.extend_from_slice(&j.to_be_bytes());
    out.extend_from_slice(&(n as u16).to_be_bytes());
    out.extend_from_slice(&count.to_be_bytes());
    out
}

fn record(id: u64, ct: &BasicCiphertext) -> Vec<u8> {
    let body = ct.to_bytes();
    let mut out = Vec::with_capacity(12 + body.len());
    out.extend_from_slice(&id.to_be_bytes());
    out.extend_from_slice(&(body.len() as u32).to_be_bytes());
    out.extend_from_slice(&body);
    out
}

fn parse_header(bytes: &[u8]) -> Result<(u32, u8, u64), DecodeError> {
    if bytes.len() < FILE_HEADER_LEN {
        return Err(DecodeError::Truncated { needed: FILE_HEADER_LEN - bytes.len() });
    }
    if &bytes[..4] != COLUMN_MAGIC {
        return Err(DecodeError::BadMagic { expected: "MCDB" });
    }
    if bytes[4] != COLUMN_VERSION {
        return Err(DecodeError::UnsupportedVersion(bytes[4]));
    }
    let j = u32::from_be_bytes(bytes[5..9].try_into().unwrap());
    let n = u16::from_be_bytes(bytes[9..11].try_into().unwrap());
    let count = u64::from_be_bytes(bytes[11..19].try_into().unwrap());
    if j == 0 {
        return Err(DecodeError::InvalidField("client index 0".into()));
    }
    if n == 0 || n > 64 {
        return Err(DecodeError::InvalidField(format!("bit length {n}")));
    }
    Ok((j, n as u8, count))
}

fn parse_record(bytes: &[u8]) -> Result<(u64, BasicCiphertext, usize), DecodeError> {
    if bytes.len() < 12 {
        return Err(DecodeError::Truncated { needed: 12 - bytes.len() });
    }
    let id = u64::from_be_bytes(bytes[..8].try_into().unwrap());
    let len = u32::from_be_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let body = bytes.get(12..12 + len).ok_or_else(|| DecodeError::Truncated { needed: 12 + len - bytes.len() })?;
    Ok((id, BasicCiphertext::from_bytes(body)?, 12 + len))
}
