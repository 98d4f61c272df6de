use crate::bitperm::{bit_of, code_width};
use crate::bitvec::{BitVector, RankSelectBitVector};
use crate::error::{Error, Result};

/// Wavelet matrix: per-level bit vectors plus the number of zeros on each
/// level. A 0-bit at position `i` of level `l` moves to `rank0(l, i)` on
/// level `l + 1`, a 1-bit to `zeros[l] + rank1(l, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletMatrix {
    levels: Vec<RankSelectBitVector>,
    zeros: Vec<usize>,
    len: usize,
    sigma: usize,
}

impl WaveletMatrix {
    pub fn from_levels(len: usize, sigma: usize, levels: Vec<BitVector>, zeros: Vec<usize>) -> Self {
        assert_eq!(
            levels.len() as u32,
            code_width(sigma),
            "level count must be ceil(lg sigma)"
        );
        assert_eq!(levels.len(), zeros.len(), "one zero count per level");
        assert!(levels.iter().all(|l| l.len() == len), "every level must hold n bits");
        Self {
            levels: levels.into_iter().map(RankSelectBitVector::new).collect(),
            zeros,
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

    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    fn width(&self) -> u32 {
        self.levels.len() as u32
    }

    #[inline]
    fn descend(&self, l: usize, bit: bool, i: usize) -> usize {
        let bv = &self.levels[l];
        if bit {
            self.zeros[l] + bv.rank1(i)
        } else {
            bv.rank0(i)
        }
    }

    pub fn access(&self, i: usize) -> u32 {
        assert!(i < self.len, "position {i} out of range {}", self.len);
        let mut i = i;
        let mut symbol = 0u32;
        for l in 0..self.levels.len() {
            let bit = self.levels[l].get(i);
            i = self.descend(l, bit, i);
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
        let (mut s, mut i) = (0, i);
        for l in 0..self.levels.len() {
            let bit = bit_of(l as u32, c as u64, width);
            s = self.descend(l, bit, s);
            i = self.descend(l, bit, i);
        }
        i - s
    }

    /// Position of the `j`-th (1-based) occurrence of `c`.
    pub fn select(&self, c: u32, j: usize) -> Result<usize> {
        if c as usize >= self.sigma.max(1) {
            return Err(Error::OccurrenceAbsent);
        }
        let width = self.width();
        let (mut s, mut e) = (0, self.len);
        for l in 0..self.levels.len() {
            let bit = bit_of(l as u32, c as u64, width);
            s = self.descend(l, bit, s);
            e = self.descend(l, bit, e);
        }
        if j == 0 || j > e - s {
            return Err(Error::OccurrenceAbsent);
        }
        let mut pos = s + j - 1;
        for l in (0..self.levels.len()).rev() {
            let bit = bit_of(l as u32, c as u64, width);
            let bv = &self.levels[l];
            pos = if bit {
                bv.select1(pos - self.zeros[l] + 1)?
            } else {
                bv.select0(pos + 1)?
            };
        }
        Ok(pos)
    }
}
