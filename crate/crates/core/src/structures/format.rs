//! Index file layout (all integers little-endian):
//!
//! ```text
//! "WVLT" | version u8 | kind u8 (0 = tree, 1 = matrix) | n u64 | sigma u64
//! | level count u16 | matrix only: level count × zeros u64
//! | per level: bit length u64, words u64 …
//! ```
//!
//! Rank/select support is never stored; it is rebuilt on load.

use std::io::{Read, Write};

use super::{StructureKind, WaveletLevels, WaveletMatrix, WaveletTree};
use crate::bitperm::code_width;
use crate::bitvec::{BitVector, RankSelectBitVector};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"WVLT";
pub const FORMAT_VERSION: u8 = 1;

fn write_parts<'a, W: Write>(
    w: &mut W,
    kind: StructureKind,
    len: usize,
    sigma: usize,
    zeros: &[usize],
    levels: impl ExactSizeIterator<Item = &'a BitVector>,
) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[FORMAT_VERSION, kind_byte(kind)])?;
    w.write_all(&(len as u64).to_le_bytes())?;
    w.write_all(&(sigma as u64).to_le_bytes())?;
    w.write_all(&(levels.len() as u16).to_le_bytes())?;
    if kind == StructureKind::Matrix {
        for &z in zeros {
            w.write_all(&(z as u64).to_le_bytes())?;
        }
    }
    for level in levels {
        level.write_to(w)?;
    }
    Ok(())
}

fn kind_byte(kind: StructureKind) -> u8 {
    match kind {
        StructureKind::Tree => 0,
        StructureKind::Matrix => 1,
    }
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_usize<R: Read>(r: &mut R, what: &str) -> Result<usize> {
    usize::try_from(read_u64(r)?).map_err(|_| Error::Format(format!("{what} exceeds address space")))
}

impl WaveletLevels {
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        write_parts(w, self.kind, self.len, self.sigma, &self.zeros, self.levels.iter())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    /// Reads and validates an index: level count and lengths must match
    /// the header, and matrix zero counts must match their levels.
    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("bad magic bytes".into()));
        }
        let mut head = [0u8; 2];
        r.read_exact(&mut head)?;
        if head[0] != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {}", head[0])));
        }
        let kind = match head[1] {
            0 => StructureKind::Tree,
            1 => StructureKind::Matrix,
            k => return Err(Error::Format(format!("unknown structure kind {k}"))),
        };
        let len = read_usize(r, "text length")?;
        let sigma = read_usize(r, "alphabet size")?;
        let mut count = [0u8; 2];
        r.read_exact(&mut count)?;
        let count = u16::from_le_bytes(count) as usize;
        if count as u32 != code_width(sigma) {
            return Err(Error::Format(format!(
                "{count} levels stored for an alphabet of size {sigma}"
            )));
        }
        let zeros = if kind == StructureKind::Matrix {
            (0..count)
                .map(|_| read_usize(r, "zero count"))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let mut levels = Vec::with_capacity(count);
        for l in 0..count {
            let bv = BitVector::read_from(r)?;
            if bv.len() != len {
                return Err(Error::Format(format!(
                    "level {l} holds {} bits, expected {len}",
                    bv.len()
                )));
            }
            if zeros.get(l).is_some_and(|&z| bv.len() - bv.count_ones() != z) {
                return Err(Error::Format(format!(
                    "zero count of level {l} disagrees with its bits"
                )));
            }
            levels.push(bv);
        }
        Ok(Self {
            kind,
            len,
            sigma,
            levels,
            zeros,
        })
    }
}

/// A loaded index of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WaveletIndex {
    Tree(WaveletTree),
    Matrix(WaveletMatrix),
}

impl From<WaveletLevels> for WaveletIndex {
    fn from(levels: WaveletLevels) -> Self {
        match levels.kind {
            StructureKind::Tree => WaveletIndex::Tree(levels.into_tree()),
            StructureKind::Matrix => WaveletIndex::Matrix(levels.into_matrix()),
        }
    }
}

impl WaveletIndex {
    pub fn kind(&self) -> StructureKind {
        match self {
            WaveletIndex::Tree(_) => StructureKind::Tree,
            WaveletIndex::Matrix(_) => StructureKind::Matrix,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            WaveletIndex::Tree(t) => t.len(),
            WaveletIndex::Matrix(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sigma(&self) -> usize {
        match self {
            WaveletIndex::Tree(t) => t.sigma(),
            WaveletIndex::Matrix(m) => m.sigma(),
        }
    }

    pub fn access(&self, i: usize) -> u32 {
        match self {
            WaveletIndex::Tree(t) => t.access(i),
            WaveletIndex::Matrix(m) => m.access(i),
        }
    }

    pub fn rank(&self, c: u32, i: usize) -> usize {
        match self {
            WaveletIndex::Tree(t) => t.rank(c, i),
            WaveletIndex::Matrix(m) => m.rank(c, i),
        }
    }

    pub fn select(&self, c: u32, j: usize) -> Result<usize> {
        match self {
            WaveletIndex::Tree(t) => t.select(c, j),
            WaveletIndex::Matrix(m) => m.select(c, j),
        }
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        match self {
            WaveletIndex::Tree(t) => write_parts(
                w,
                StructureKind::Tree,
                t.len(),
                t.sigma(),
                &[],
                t.levels().iter().map(RankSelectBitVector::bits),
            ),
            WaveletIndex::Matrix(m) => write_parts(
                w,
                StructureKind::Matrix,
                m.len(),
                m.sigma(),
                m.zeros(),
                m.levels().iter().map(RankSelectBitVector::bits),
            ),
        }
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        WaveletLevels::read_from(r).map(Self::from)
    }
}
