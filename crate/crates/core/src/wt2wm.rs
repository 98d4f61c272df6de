//! Constant-time mapping from wavelet tree positions to wavelet matrix
//! positions, and a tree-to-matrix conversion built on it.
//!
//! Both structures group level `l` by `l`-bit prefix in the same stable
//! order; only the placement of the groups differs. A unary histogram `U`
//! recovers the prefix group of a tree position and its offset inside the
//! group, and a table `X` of matrix group starts finishes the mapping.

use crate::bitperm::{code_width, prefix_of, rho, BitReversalPermutation};
use crate::bitvec::{BitVector, RankSelectBitVector};
use crate::error::Result;
use crate::levelstats::{borders, histogram, Histogram};
use crate::structures::{WaveletMatrix, WaveletTree};

/// `1^h(0) 0 1^h(1) 0 … 1^h(sigma-1)` with rank/select support.
#[derive(Clone, Debug)]
pub struct UnaryHistogram {
    bits: RankSelectBitVector,
}

impl UnaryHistogram {
    /// Unary code of the first `sigma` histogram counts.
    pub fn from_histogram(h: &Histogram, sigma: usize) -> Self {
        let counts = &h.counts()[..sigma.max(1)];
        let n: usize = counts.iter().sum();
        let mut bits = BitVector::new(n + counts.len() - 1);
        let mut pos = 0;
        for (s, &count) in counts.iter().enumerate() {
            if s > 0 {
                pos += 1; // separator
            }
            for p in pos..pos + count {
                bits.set(p, true);
            }
            pos += count;
        }
        Self {
            bits: RankSelectBitVector::new(bits),
        }
    }

    pub fn bits(&self) -> &RankSelectBitVector {
        &self.bits
    }

    /// The `k`-th smallest symbol occurrence of the text (0-based).
    pub fn kth_smallest(&self, k: usize) -> u64 {
        let one = self.bits.select1(k + 1).expect("rank beyond text length");
        self.bits.rank0(one) as u64
    }
}

/// Build the unary histogram of `text` over `[0, sigma)`.
pub fn build_unary_histogram(text: &[u32], sigma: usize) -> Result<UnaryHistogram> {
    Ok(UnaryHistogram::from_histogram(&histogram(text, sigma)?, sigma))
}

/// Matrix interval starts for levels `1..width`; level `l` occupies
/// `starts[2^l - 2 .. 2^(l+1) - 2]`, indexed by prefix value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalStartTable {
    width: u32,
    starts: Vec<usize>,
}

impl IntervalStartTable {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.starts
    }

    /// Matrix start of the interval of `prefix` on `level >= 1`.
    #[inline]
    pub fn start(&self, level: u32, prefix: usize) -> usize {
        debug_assert!(level >= 1 && level < self.width && prefix < 1 << level);
        self.starts[(1 << level) - 2 + prefix]
    }

    pub fn level_block(&self, level: u32) -> &[usize] {
        let base = (1usize << level) - 2;
        &self.starts[base..base + (1 << level)]
    }
}

/// Folds the full-width histogram downwards, storing each level's borders
/// in bit-reversal order. The permutation tables are derived by contraction
/// from the deepest one.
pub fn build_interval_starts(h: &Histogram) -> IntervalStartTable {
    let width = h.level();
    let mut starts = vec![0usize; (1usize << width).saturating_sub(2)];
    if width >= 2 {
        let mut level_hist = h.clone();
        let mut order: BitReversalPermutation = rho(width - 1);
        for l in (1..width).rev() {
            level_hist.fold_in_place();
            if order.order() > l {
                order = order.contract();
            }
            let b = borders(&level_hist, &order);
            let base = (1usize << l) - 2;
            starts[base..base + (1 << l)].copy_from_slice(b.starts());
        }
    }
    IntervalStartTable { width, starts }
}

/// `U` and `X` together.
#[derive(Clone, Debug)]
pub struct WtToWmMap {
    unary: UnaryHistogram,
    starts: IntervalStartTable,
}

impl WtToWmMap {
    pub fn new(h: &Histogram, sigma: usize) -> Self {
        assert_eq!(h.level(), code_width(sigma), "histogram must be full width");
        Self {
            unary: UnaryHistogram::from_histogram(h, sigma),
            starts: build_interval_starts(h),
        }
    }

    pub fn from_text(text: &[u32], sigma: usize) -> Result<Self> {
        Ok(Self::new(&histogram(text, sigma)?, sigma))
    }

    pub fn unary(&self) -> &UnaryHistogram {
        &self.unary
    }

    pub fn starts(&self) -> &IntervalStartTable {
        &self.starts
    }

    /// Matrix position holding the bit found at tree position `i` of `level`.
    pub fn map_position(&self, level: u32, i: usize) -> usize {
        let width = self.starts.width;
        assert!(level < width, "level {level} out of range {width}");
        if level <= 1 {
            return i;
        }
        let u = self.unary.bits();
        let symbol = self.unary.kth_smallest(i);
        let bp = prefix_of(level, symbol, width) as usize;
        // Occurrences of symbols below the group's smallest code; the guard
        // avoids select0 with ordinal 0.
        let before = if bp == 0 {
            0
        } else {
            let separator = u
                .select0(bp << (width - level))
                .expect("group start exists for an occurring prefix");
            u.rank1(separator)
        };
        self.starts.start(level, bp) + (i - before)
    }
}

/// Full-width histogram of a wavelet tree's text, read off the sizes of
/// its deepest intervals.
pub fn histogram_from_tree(wt: &WaveletTree) -> Histogram {
    let width = wt.level_count() as u32;
    let mut sizes = vec![wt.len()];
    let mut starts = vec![0usize];
    for l in 0..width as usize {
        let bv = wt.level(l);
        let mut next_sizes = Vec::with_capacity(sizes.len() * 2);
        let mut next_starts = Vec::with_capacity(sizes.len() * 2);
        for (&s, &size) in starts.iter().zip(&sizes) {
            let zeros = bv.rank0(s + size) - bv.rank0(s);
            next_starts.extend([s, s + zeros]);
            next_sizes.extend([zeros, size - zeros]);
        }
        sizes = next_sizes;
        starts = next_starts;
    }
    Histogram::from_counts(width, sizes)
}

/// Converts a wavelet tree to the wavelet matrix of the same text.
pub fn convert_wt_to_wm(wt: &WaveletTree) -> WaveletMatrix {
    convert_with_histogram(wt, &histogram_from_tree(wt))
}

/// Conversion using the text's histogram instead of deriving it.
pub fn convert_wt_to_wm_with_text(wt: &WaveletTree, text: &[u32]) -> Result<WaveletMatrix> {
    Ok(convert_with_histogram(wt, &histogram(text, wt.sigma())?))
}

fn convert_with_histogram(wt: &WaveletTree, h: &Histogram) -> WaveletMatrix {
    let n = wt.len();
    let width = wt.level_count() as u32;
    let map = WtToWmMap::new(h, wt.sigma());
    let mut levels = Vec::with_capacity(width as usize);
    for l in 0..width {
        let src = wt.level(l as usize).bits();
        let dst = if l <= 1 {
            src.clone()
        } else {
            let mut dst = BitVector::new(n);
            for (w, &word) in src.words().iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    let i = w * 64 + rest.trailing_zeros() as usize;
                    dst.set(map.map_position(l, i), true);
                    rest &= rest - 1;
                }
            }
            dst
        };
        levels.push(dst);
    }
    // Zero count of level l from the level-(l + 1) histogram.
    let mut level_hist = h.clone();
    let mut zeros = vec![0; width as usize];
    for l in (0..width).rev() {
        zeros[l as usize] = level_hist.even_total();
        if l > 0 {
            level_hist.fold_in_place();
        }
    }
    WaveletMatrix::from_levels(n, wt.sigma(), levels, zeros)
}
