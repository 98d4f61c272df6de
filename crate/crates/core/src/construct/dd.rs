use std::ops::Range;

use super::pc::pc_core;
use super::ps::ps_core;
use super::{checked_width, empty_levels, slice_ranges, validate, InnerAlgorithm, LevelOrder};
use crate::bitvec::{or_copy_bits, BitVector, WORD_BITS};
use crate::error::Result;
use crate::levelstats::{interleaved_prefix_sum_flat, prefix_sum_in_order};
use crate::par::Workers;
use crate::structures::{StructureKind, WaveletLevels};

/// The structure of one text slice, with the prefix histogram of every
/// level retained for merging.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialStructure {
    len: usize,
    levels: Vec<BitVector>,
    zeros: Vec<usize>,
    /// `histograms[l]` counts the `l`-bit prefixes; `histograms[0] == [len]`.
    histograms: Vec<Vec<usize>>,
}

impl PartialStructure {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn levels(&self) -> &[BitVector] {
        &self.levels
    }

    pub fn histogram(&self, level: usize) -> &[usize] {
        &self.histograms[level]
    }
}

/// Builds the partial structure of `slice` sequentially with `inner`.
/// Symbols must already be validated against a `width`-bit code.
pub fn build_partial(slice: &[u32], width: u32, kind: StructureKind, inner: InnerAlgorithm) -> PartialStructure {
    let mut histograms = vec![Vec::new(); width as usize];
    if width > 0 {
        histograms[0] = vec![slice.len()];
    }
    let keep = |l: u32, counts: &[usize]| histograms[l as usize] = counts[..1 << l].to_vec();
    let (levels, zeros) = if width == 0 {
        (Vec::new(), Vec::new())
    } else {
        match inner {
            InnerAlgorithm::Pc => {
                let mut hist = vec![0usize; 1 << width];
                let mut borders = vec![0usize; 1 << width];
                pc_core(slice, width, kind, &mut hist, &mut borders, keep)
            }
            InnerAlgorithm::Ps => ps_core(slice, width, kind, &Workers::new(1), keep),
        }
    };
    PartialStructure {
        len: slice.len(),
        levels,
        zeros,
        histograms,
    }
}

/// Domain decomposition: partial structures for granule-aligned slices are
/// built concurrently and then merged.
pub fn dd_construct(
    text: &[u32],
    sigma: usize,
    kind: StructureKind,
    threads: usize,
    inner: InnerAlgorithm,
) -> Result<WaveletLevels> {
    let width = checked_width(sigma)?;
    let workers = Workers::new(threads);
    let slices = slice_ranges(text.len(), workers.threads());
    validate(text, sigma, &slices, &workers)?;
    if width == 0 {
        return Ok(empty_levels(kind, text.len(), sigma));
    }
    let mut partials = workers.map(slices, |_, r: Range<usize>| build_partial(&text[r], width, kind, inner));

    let zeros = if kind == StructureKind::Matrix {
        (0..width as usize)
            .map(|l| partials.iter().map(|p| p.zeros[l]).sum())
            .collect()
    } else {
        Vec::new()
    };
    let levels = if partials.len() == 1 {
        partials.pop().unwrap().levels
    } else {
        merge_with(&partials, kind, &workers)
    };
    Ok(WaveletLevels {
        kind,
        len: text.len(),
        sigma,
        levels,
        zeros,
    })
}

/// Concatenates, level by level, the same-prefix intervals of consecutive
/// partial structures into full levels.
pub fn merge_partials(partials: &[PartialStructure], kind: StructureKind, threads: usize) -> Vec<BitVector> {
    merge_with(partials, kind, &Workers::new(threads))
}

/// One source interval copied to its merged position.
#[derive(Clone, Copy, Debug)]
struct Segment {
    dest: usize,
    part: usize,
    src: usize,
    len: usize,
}

fn merge_with(partials: &[PartialStructure], kind: StructureKind, workers: &Workers) -> Vec<BitVector> {
    assert!(!partials.is_empty(), "nothing to merge");
    let width = partials[0].levels.len();
    assert!(
        partials
            .iter()
            .all(|p| p.levels.len() == width && p.histograms.len() == width),
        "partials disagree on the level count"
    );
    let n: usize = partials.iter().map(|p| p.len).sum();
    (0..width).map(|l| merge_level(partials, l, n, kind, workers)).collect()
}

fn merge_level(partials: &[PartialStructure], l: usize, n: usize, kind: StructureKind, workers: &Workers) -> BitVector {
    let size = 1usize << l;
    let cores = partials.len();
    let order = LevelOrder::new(kind, l as u32);

    let mut hists = Vec::with_capacity(cores * size);
    for p in partials {
        let h = &p.histograms[l];
        assert_eq!(h.len(), size, "partial histogram has the wrong level");
        assert_eq!(
            h.iter().sum::<usize>(),
            p.len,
            "partial histogram disagrees with its slice"
        );
        hists.extend_from_slice(h);
    }
    let mut dest = vec![0usize; cores * size];
    interleaved_prefix_sum_flat(&hists, size, size, cores, &order, &mut dest, workers);
    let mut src = vec![0usize; cores * size];
    for c in 0..cores {
        let row = c * size..(c + 1) * size;
        prefix_sum_in_order(&hists[row.clone()], &order, &mut src[row]);
    }

    // Interleaved order is destination order.
    let mut segments = Vec::new();
    for r in 0..size {
        let q = crate::bitperm::IntervalOrder::at(&order, r);
        for c in 0..cores {
            let len = hists[c * size + q];
            if len > 0 {
                segments.push(Segment {
                    dest: dest[c * size + q],
                    part: c,
                    src: src[c * size + q],
                    len,
                });
            }
        }
    }

    let mut out = BitVector::new(n);
    let nwords = out.words().len();
    let chunk = nwords.div_ceil(workers.threads()).div_ceil(8).max(1) * 8;
    let tasks: Vec<&mut [u64]> = out.words_mut().chunks_mut(chunk).collect();
    let segments = &segments;
    workers.for_each(tasks, |t, words| {
        let lo = t * chunk * WORD_BITS;
        let hi = (lo + words.len() * WORD_BITS).min(n);
        copy_segments(words, lo, hi, segments, partials, l);
    });
    out
}

/// Fills destination bits `[lo, hi)`, held by `words`, from every segment
/// overlapping that range. Words straddling two segments are written here
/// from both sources, so no word has two writers.
fn copy_segments(
    words: &mut [u64],
    lo: usize,
    hi: usize,
    segments: &[Segment],
    partials: &[PartialStructure],
    l: usize,
) {
    let first = segments.partition_point(|s| s.dest + s.len <= lo);
    for s in &segments[first..] {
        if s.dest >= hi {
            break;
        }
        let from = s.dest.max(lo);
        let to = (s.dest + s.len).min(hi);
        let source = &partials[s.part].levels[l];
        or_copy_bits(words, lo, from, source, s.src + (from - s.dest), to - from);
    }
}
