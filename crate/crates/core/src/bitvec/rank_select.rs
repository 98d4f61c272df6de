use super::{BitVector, WORD_BITS};
use crate::error::{Error, Result};

const SUPERBLOCK_BITS: usize = 2048;
const BLOCK_BITS: usize = 256;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / WORD_BITS;
const BLOCKS_PER_SUPERBLOCK: usize = SUPERBLOCK_BITS / BLOCK_BITS;
const SELECT_SAMPLE: usize = 8192;

/// Immutable bit vector with constant-time rank and sampled select.
///
/// Rank uses absolute one-counts per 2048-bit superblock and relative
/// one-counts per 256-bit block, finished by in-word popcounts. Select
/// samples the superblock of every 8192nd occurrence and binary searches
/// the superblocks between two samples.
#[derive(Clone, Debug)]
pub struct RankSelectBitVector {
    bits: BitVector,
    superblocks: Vec<u64>,
    blocks: Vec<u16>,
    ones: usize,
    select1_samples: Vec<u32>,
    select0_samples: Vec<u32>,
}

impl RankSelectBitVector {
    pub fn new(bits: BitVector) -> Self {
        let len = bits.len();
        let words = bits.words();
        let nblocks = len / BLOCK_BITS + 1;
        let mut superblocks = Vec::with_capacity(len / SUPERBLOCK_BITS + 1);
        let mut blocks = Vec::with_capacity(nblocks);
        let mut total = 0u64;
        for b in 0..nblocks {
            if b % BLOCKS_PER_SUPERBLOCK == 0 {
                superblocks.push(total);
            }
            blocks.push((total - superblocks[b / BLOCKS_PER_SUPERBLOCK]) as u16);
            let lo = (b * WORDS_PER_BLOCK).min(words.len());
            let hi = (lo + WORDS_PER_BLOCK).min(words.len());
            total += words[lo..hi].iter().map(|w| w.count_ones() as u64).sum::<u64>();
        }
        let ones = total as usize;

        let mut select1_samples = Vec::new();
        let mut select0_samples = Vec::new();
        let nsuper = superblocks.len();
        for sb in 0..nsuper {
            let end = ((sb + 1) * SUPERBLOCK_BITS).min(len);
            let ones_end = if sb + 1 < nsuper {
                superblocks[sb + 1] as usize
            } else {
                ones
            };
            let zeros_end = end - ones_end;
            while select1_samples.len() * SELECT_SAMPLE < ones_end {
                select1_samples.push(sb as u32);
            }
            while select0_samples.len() * SELECT_SAMPLE < zeros_end {
                select0_samples.push(sb as u32);
            }
        }

        Self {
            bits,
            superblocks,
            blocks,
            ones,
            select1_samples,
            select0_samples,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.ones
    }

    /// Number of 1-bits in `[0, i)`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len(), "rank position {i} exceeds length {}", self.len());
        let words = self.bits.words();
        let b = i / BLOCK_BITS;
        let mut r = self.superblocks[i / SUPERBLOCK_BITS] as usize + self.blocks[b] as usize;
        let w = i / WORD_BITS;
        for word in &words[b * WORDS_PER_BLOCK..w] {
            r += word.count_ones() as usize;
        }
        let tail = i % WORD_BITS;
        if tail != 0 {
            r += (words[w] & ((1u64 << tail) - 1)).count_ones() as usize;
        }
        r
    }

    /// Number of 0-bits in `[0, i)`.
    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    #[inline]
    pub fn rank(&self, bit: bool, i: usize) -> usize {
        if bit {
            self.rank1(i)
        } else {
            self.rank0(i)
        }
    }

    /// Position of the `j`-th (1-based) occurrence of `bit`.
    pub fn select(&self, bit: bool, j: usize) -> Result<usize> {
        let count = if bit { self.ones } else { self.count_zeros() };
        if j == 0 || j > count {
            return Err(Error::OccurrenceAbsent);
        }
        Ok(self.select_unchecked(bit, j - 1))
    }

    #[inline]
    pub fn select1(&self, j: usize) -> Result<usize> {
        self.select(true, j)
    }

    #[inline]
    pub fn select0(&self, j: usize) -> Result<usize> {
        self.select(false, j)
    }

    // Counts of `bit` before superblock `sb` / block `b`.
    #[inline]
    fn before_superblock(&self, bit: bool, sb: usize) -> usize {
        let ones = self.superblocks[sb] as usize;
        if bit {
            ones
        } else {
            sb * SUPERBLOCK_BITS - ones
        }
    }

    #[inline]
    fn in_superblock_before_block(&self, bit: bool, b: usize) -> usize {
        let ones = self.blocks[b] as usize;
        if bit {
            ones
        } else {
            (b % BLOCKS_PER_SUPERBLOCK) * BLOCK_BITS - ones
        }
    }

    /// `k` is the 0-based occurrence index and must be in range.
    fn select_unchecked(&self, bit: bool, k: usize) -> usize {
        let samples = if bit {
            &self.select1_samples
        } else {
            &self.select0_samples
        };
        let s = k / SELECT_SAMPLE;
        let mut lo = samples[s] as usize;
        let mut hi = samples.get(s + 1).map_or(self.superblocks.len(), |&x| x as usize + 1);
        // Largest superblock whose preceding count is <= k.
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.before_superblock(bit, mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let sb = lo;
        let mut k = k - self.before_superblock(bit, sb);

        let first_block = sb * BLOCKS_PER_SUPERBLOCK;
        let last_block = (first_block + BLOCKS_PER_SUPERBLOCK).min(self.blocks.len());
        let mut b = first_block;
        while b + 1 < last_block && self.in_superblock_before_block(bit, b + 1) <= k {
            b += 1;
        }
        k -= self.in_superblock_before_block(bit, b);

        let words = self.bits.words();
        let mut w = b * WORDS_PER_BLOCK;
        loop {
            let word = if bit { words[w] } else { !words[w] };
            let c = word.count_ones() as usize;
            if k < c {
                return w * WORD_BITS + select_in_word(word, k as u32) as usize;
            }
            k -= c;
            w += 1;
        }
    }
}

impl From<BitVector> for RankSelectBitVector {
    fn from(bits: BitVector) -> Self {
        Self::new(bits)
    }
}

impl PartialEq for RankSelectBitVector {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for RankSelectBitVector {}

/// Position of the `k`-th (0-based) set bit of `word`; `k < popcount(word)`.
#[inline]
fn select_in_word(word: u64, mut k: u32) -> u32 {
    let mut shift = 0;
    loop {
        let c = ((word >> shift) & 0xff).count_ones();
        if k < c {
            break;
        }
        k -= c;
        shift += 8;
    }
    let mut rest = word >> shift;
    for _ in 0..k {
        rest &= rest - 1;
    }
    shift + rest.trailing_zeros()
}
