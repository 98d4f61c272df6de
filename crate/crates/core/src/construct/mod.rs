//! Bottom-up construction of wavelet trees and wavelet matrices.
//!
//! Every algorithm computes the full-width symbol histogram once and derives
//! shallower prefix histograms by folding sibling counts, so the text is
//! scanned once per level only to place bits. Trees lay out each level's
//! prefix intervals in increasing prefix order, matrices in bit-reversal
//! order; nothing else differs.
//!
//! All algorithms produce bit-identical output for every thread count.

mod dd;
mod levelpar;
mod pc;
mod ps;

use std::ops::Range;

pub use dd::{build_partial, dd_construct, merge_partials, PartialStructure};
pub use levelpar::level_parallel_pc;
pub use pc::pc_construct;
pub use ps::ps_construct;

use crate::bitperm::{code_width, prefix_of, reverse_bits, IntervalOrder};
use crate::bitvec::{BitVector, WORD_BITS};
use crate::error::{Error, Result};
use crate::par::Workers;
use crate::structures::{StructureKind, WaveletLevels};

/// Text slices handed to workers start at multiples of this many symbols,
/// the least common multiple of a 64-bit word and a 64-byte cache line
/// measured in bits, so no two workers share an output word or line.
pub const SLICE_GRANULE: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Sequential bottom-up counting construction.
    Pc,
    /// Parallel construction through a global counting sort per level.
    Ps,
    /// One worker per level, each running the counting construction.
    LevelParallelPc,
    /// Domain decomposition with sequential `Pc` partials, then a merge.
    DdPc,
    /// Domain decomposition with sequential `Ps` partials, then a merge.
    DdPs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Pc,
        Algorithm::Ps,
        Algorithm::LevelParallelPc,
        Algorithm::DdPc,
        Algorithm::DdPs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Pc => "pc",
            Algorithm::Ps => "ps",
            Algorithm::LevelParallelPc => "levelpar",
            Algorithm::DdPc => "ddpc",
            Algorithm::DdPs => "ddps",
        }
    }
}

/// Sequential algorithm used for the partial structures of a domain
/// decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerAlgorithm {
    Pc,
    Ps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub kind: StructureKind,
    pub algorithm: Algorithm,
    pub threads: usize,
}

impl ConstructionPlan {
    pub fn new(kind: StructureKind, algorithm: Algorithm, threads: usize) -> Self {
        Self {
            kind,
            algorithm,
            threads: threads.max(1),
        }
    }

    /// Workers that can do useful work: the sequential algorithm uses one,
    /// level parallelism at most one per level.
    pub fn effective_parallelism(&self, sigma: usize) -> usize {
        match self.algorithm {
            Algorithm::Pc => 1,
            Algorithm::LevelParallelPc => self.threads.min(code_width(sigma) as usize).max(1),
            _ => self.threads,
        }
    }
}

/// Builds the structure described by `plan`.
pub fn construct(text: &[u32], sigma: usize, plan: &ConstructionPlan) -> Result<WaveletLevels> {
    match plan.algorithm {
        Algorithm::Pc => pc_construct(text, sigma, plan.kind),
        Algorithm::Ps => ps_construct(text, sigma, plan.kind, plan.threads),
        Algorithm::LevelParallelPc => level_parallel_pc(text, sigma, plan.kind, plan.threads),
        Algorithm::DdPc => dd_construct(text, sigma, plan.kind, plan.threads, InnerAlgorithm::Pc),
        Algorithm::DdPs => dd_construct(text, sigma, plan.kind, plan.threads, InnerAlgorithm::Ps),
    }
}

/// Interval order of one level for the given structure kind.
#[derive(Clone, Copy, Debug)]
pub(crate) enum LevelOrder {
    Identity,
    Reversed(u32),
}

impl LevelOrder {
    #[inline]
    pub(crate) fn new(kind: StructureKind, level: u32) -> Self {
        match kind {
            StructureKind::Tree => LevelOrder::Identity,
            StructureKind::Matrix => LevelOrder::Reversed(level),
        }
    }
}

impl IntervalOrder for LevelOrder {
    #[inline]
    fn at(&self, rank: usize) -> usize {
        match *self {
            LevelOrder::Identity => rank,
            LevelOrder::Reversed(level) => reverse_bits(rank as u64, level) as usize,
        }
    }
}

/// Code width for `sigma`, after checking it fits 32-bit symbols.
pub(crate) fn checked_width(sigma: usize) -> Result<u32> {
    let width = code_width(sigma);
    if width > 32 {
        return Err(Error::AlphabetTooLarge { sigma, levels: width });
    }
    Ok(width)
}

fn check_symbols(text: &[u32], offset: usize, sigma: usize) -> Result<()> {
    let bound = sigma.max(1);
    match text.iter().position(|&c| c as usize >= bound) {
        Some(p) => Err(Error::SymbolOutOfRange {
            symbol: text[p] as u64,
            position: offset + p,
            sigma,
        }),
        None => Ok(()),
    }
}

/// Checks every symbol is below `sigma`, splitting the scan over `slices`.
pub(crate) fn validate(text: &[u32], sigma: usize, slices: &[Range<usize>], workers: &Workers) -> Result<()> {
    let tasks: Vec<Range<usize>> = slices.to_vec();
    workers
        .map(tasks, |_, r| check_symbols(&text[r.clone()], r.start, sigma))
        .into_iter()
        .collect()
}

/// Splits `[0, n)` into `parts` consecutive ranges whose starts are
/// multiples of [`SLICE_GRANULE`]; trailing ranges may be empty.
pub fn slice_ranges(n: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.max(1);
    let per = n.div_ceil(parts).div_ceil(SLICE_GRANULE) * SLICE_GRANULE;
    (0..parts).map(|c| (c * per).min(n)..((c + 1) * per).min(n)).collect()
}

/// Carves `words` into the word ranges covering each bit range of `slices`.
/// Slice starts must be word aligned.
pub(crate) fn split_words<'a>(mut words: &'a mut [u64], slices: &[Range<usize>]) -> Vec<&'a mut [u64]> {
    let mut out = Vec::with_capacity(slices.len());
    let mut consumed = 0;
    for r in slices {
        debug_assert!(r.is_empty() || r.start == consumed * WORD_BITS);
        let end = r.end.div_ceil(WORD_BITS).max(consumed);
        let (head, tail) = std::mem::take(&mut words).split_at_mut(end - consumed);
        out.push(head);
        words = tail;
        consumed = end;
    }
    out
}

/// Packs bit `level` of each symbol, in text order, into `words`.
#[inline]
pub(crate) fn pack_level_bits(symbols: &[u32], level: u32, width: u32, words: &mut [u64]) {
    let shift = width - 1 - level;
    for (word, chunk) in words.iter_mut().zip(symbols.chunks(WORD_BITS)) {
        let mut w = 0u64;
        for (j, &c) in chunk.iter().enumerate() {
            w |= (((c >> shift) & 1) as u64) << j;
        }
        *word = w;
    }
}

/// Writes bit `level` of every symbol at its running border: the counting
/// placement shared by the sequential algorithms.
#[inline]
pub(crate) fn place_level_bits(text: &[u32], level: u32, width: u32, borders: &mut [usize], out: &mut BitVector) {
    let words = out.words_mut();
    let bit_shift = width - 1 - level;
    for &c in text {
        let q = prefix_of(level, c as u64, width) as usize;
        let pos = borders[q];
        borders[q] = pos + 1;
        words[pos / WORD_BITS] |= (((c >> bit_shift) & 1) as u64) << (pos % WORD_BITS);
    }
}

pub(crate) fn empty_levels(kind: StructureKind, len: usize, sigma: usize) -> WaveletLevels {
    WaveletLevels {
        kind,
        len,
        sigma,
        levels: Vec::new(),
        zeros: Vec::new(),
    }
}
