use crate::bitperm::{bit_of, code_width};
use crate::bitvec::{BitVector, RankSelectBitVector};
use crate::error::{Error, Result};

/// Level-wise wavelet tree: one bit vector per level, holding the level's
/// bits grouped by bit prefix in increasing prefix order. Node boundaries
/// are recovered on the fly by interval tracking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletTree {
    levels: Vec<RankSelectBitVector>,
    len: usize,
    sigma: usize,
}

impl WaveletTree {
    pub fn from_levels(len: usize, sigma: usize, levels: Vec<BitVector>) -> Self {
        assert_eq!(
            levels.len() as u32,
            code_width(sigma),
            "level count must be ceil(lg sigma)"
        );
        assert!(levels.iter().all(|l| l.len() == len), "every level must hold n bits");
        Self {
            levels: levels.into_iter().map(RankSelectBitVector::new).collect(),
            len,
            sigma,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, l: usize) -> &RankSelectBitVector {
        &self.levels[l]
    }

    pub fn levels(&self) -> &[RankSelectBitVector] {
        &self.levels
    }

    fn width(&self) -> u32 {
        self.levels.len() as u32
    }

    /// The symbol at position `i`.
    pub fn access(&self, i: usize) -> u32 {
        assert!(i < self.len, "position {i} out of range {}", self.len);
        let (mut s, mut e, mut i) = (0, self.len, i);
        let mut symbol = 0u32;
        for bv in &self.levels {
            let r0s = bv.rank0(s);
            let zeros = bv.rank0(e) - r0s;
            let bit = bv.get(i);
            if bit {
                i = s + zeros + (bv.rank1(i) - (s - r0s));
                s += zeros;
            } else {
                i = s + (bv.rank0(i) - r0s);
                e = s + zeros;
            }
            symbol = (symbol << 1) | bit as u32;
        }
        symbol
    }

    /// Occurrences of `c` in `[0, i)`.
    pub fn rank(&self, c: u32, i: usize) -> usize {
        assert!(
            (c as usize) < self.sigma.max(1),
            "symbol {c} outside alphabet {}",
            self.sigma
        );
        assert!(i <= self.len, "prefix length {i} exceeds {}", self.len);
        let width = self.width();
        let (mut s, mut e, mut i) = (0, self.len, i);
        for (l, bv) in self.levels.iter().enumerate() {
            let r0s = bv.rank0(s);
            let zeros = bv.rank0(e) - r0s;
            if bit_of(l as u32, c as u64, width) {
                i = s + zeros + (bv.rank1(i) - (s - r0s));
                s += zeros;
            } else {
                i = s + (bv.rank0(i) - r0s);
                e = s + zeros;
            }
        }
        i - s
    }

    /// Position of the `j`-th (1-based) occurrence of `c`.
    pub fn select(&self, c: u32, j: usize) -> Result<usize> {
        if c as usize >= self.sigma.max(1) {
            return Err(Error::OccurrenceAbsent);
        }
        let width = self.width();
        // Interval starts of c's node on every level, root first, followed
        // by the start of c's leaf interval.
        let mut starts = Vec::with_capacity(self.levels.len() + 1);
        let (mut s, mut e) = (0, self.len);
        for (l, bv) in self.levels.iter().enumerate() {
            starts.push(s);
            let zeros = bv.rank0(e) - bv.rank0(s);
            if bit_of(l as u32, c as u64, width) {
                s += zeros;
            } else {
                e = s + zeros;
            }
        }
        starts.push(s);
        if j == 0 || j > e - s {
            return Err(Error::OccurrenceAbsent);
        }
        let mut pos = s + j - 1;
        for (l, bv) in self.levels.iter().enumerate().rev() {
            let bit = bit_of(l as u32, c as u64, width);
            let offset = pos - starts[l + 1];
            pos = bv.select(bit, bv.rank(bit, starts[l]) + offset + 1)?;
        }
        Ok(pos)
    }
}
