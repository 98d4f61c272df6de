//! Level-wise wavelet tree and wavelet matrix, their queries, and the
//! binary index format.

mod format;
mod matrix;
mod tree;

pub use format::{WaveletIndex, FORMAT_VERSION, MAGIC};
pub use matrix::WaveletMatrix;
pub use tree::WaveletTree;

use crate::bitperm::code_width;
use crate::bitvec::BitVector;
use crate::levelstats::Histogram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Tree,
    Matrix,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Tree => "wt",
            StructureKind::Matrix => "wm",
        }
    }
}

/// Plain level bit vectors as produced by construction, before rank and
/// select support is attached. `zeros` is empty for wavelet trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletLevels {
    pub kind: StructureKind,
    pub len: usize,
    pub sigma: usize,
    pub levels: Vec<BitVector>,
    pub zeros: Vec<usize>,
}

impl WaveletLevels {
    pub fn level_count(&self) -> u32 {
        code_width(self.sigma)
    }

    /// Heap bytes of the level bit vectors and the zeros array.
    pub fn size_in_bytes(&self) -> usize {
        self.levels.iter().map(BitVector::size_in_bytes).sum::<usize>()
            + self.zeros.len() * std::mem::size_of::<usize>()
    }

    /// First `(level, bit)` where the two structures differ, if any.
    /// Header mismatches report the first level with a differing length.
    pub fn first_divergence(&self, other: &WaveletLevels) -> Option<(usize, usize)> {
        let levels = self.levels.len().max(other.levels.len());
        for l in 0..levels {
            match (self.levels.get(l), other.levels.get(l)) {
                (Some(a), Some(b)) if a == b => continue,
                (Some(a), Some(b)) => {
                    let common = a.len().min(b.len());
                    let bit = (0..common).find(|&i| a.get(i) != b.get(i)).unwrap_or(common);
                    return Some((l, bit));
                }
                _ => return Some((l, 0)),
            }
        }
        None
    }

    pub fn into_tree(self) -> WaveletTree {
        assert_eq!(self.kind, StructureKind::Tree);
        WaveletTree::from_levels(self.len, self.sigma, self.levels)
    }

    pub fn into_matrix(self) -> WaveletMatrix {
        assert_eq!(self.kind, StructureKind::Matrix);
        WaveletMatrix::from_levels(self.len, self.sigma, self.levels, self.zeros)
    }
}

/// Zero count of wavelet matrix level `l`, from the level-`(l + 1)` prefix
/// histogram: prefixes ending in a 0 bit are exactly the 0-bits of level `l`.
pub fn zeros_from_histogram(h: &Histogram) -> usize {
    h.even_total()
}
