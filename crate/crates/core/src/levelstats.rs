//! Prefix histograms, the bottom-up fold, interval borders as zero-based
//! prefix sums in a chosen interval order, and the stable counting sort by
//! bit prefix shared by every construction algorithm.

use std::ops::Range;

use crate::bitperm::{code_width, prefix_of, IntervalOrder};
use crate::error::{Error, Result};
use crate::par::{ScatterSlice, Workers};

/// Entry count above which the interleaved prefix sum is split into blocks.
const PARALLEL_SCAN_THRESHOLD: usize = 1 << 16;

/// Occurrence counts of the `level`-bit prefixes of a text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    level: u32,
    counts: Vec<usize>,
}

impl Histogram {
    pub fn from_counts(level: u32, counts: Vec<usize>) -> Self {
        assert_eq!(counts.len(), 1usize << level, "histogram size must be 2^level");
        Self { level, counts }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Merges sibling prefixes in place, dropping one level.
    pub fn fold_in_place(&mut self) {
        assert!(self.level > 0, "cannot fold a level-0 histogram");
        self.level -= 1;
        fold_counts(&mut self.counts, self.level);
        self.counts.truncate(1 << self.level);
    }

    pub fn fold(mut self) -> Self {
        self.fold_in_place();
        self
    }

    /// Total of the prefixes ending in a 0 bit, i.e. the number of zeros a
    /// wavelet matrix stores one level above this histogram's.
    pub fn even_total(&self) -> usize {
        even_total(&self.counts)
    }
}

/// Starting position of every prefix interval within one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Borders {
    level: u32,
    starts: Vec<usize>,
}

impl Borders {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }
}

/// Full-width histogram of `text` over `[0, sigma)`, sized `2^ceil(lg sigma)`.
pub fn histogram(text: &[u32], sigma: usize) -> Result<Histogram> {
    let width = code_width(sigma);
    let mut counts = vec![0usize; 1 << width];
    for (position, &c) in text.iter().enumerate() {
        if c as usize >= sigma.max(1) {
            return Err(Error::SymbolOutOfRange {
                symbol: c as u64,
                position,
                sigma,
            });
        }
        counts[c as usize] += 1;
    }
    Ok(Histogram { level: width, counts })
}

/// Zero-based prefix sum of `h` taken in interval order `order`.
pub fn borders(h: &Histogram, order: &impl IntervalOrder) -> Borders {
    let mut starts = vec![0; h.counts.len()];
    prefix_sum_in_order(&h.counts, order, &mut starts);
    Borders { level: h.level, starts }
}

/// Per-core borders from per-core histograms, computed as one zero-based
/// prefix sum over the sequence `locals[0][π(0)], …, locals[p-1][π(0)],
/// locals[0][π(1)], …` so each prefix interval is laid out core by core.
pub fn interleaved_prefix_sum(locals: &[Histogram], order: &(impl IntervalOrder + Sync)) -> Vec<Borders> {
    assert!(!locals.is_empty(), "need at least one local histogram");
    let level = locals[0].level;
    assert!(
        locals.iter().all(|h| h.level == level),
        "local histograms disagree on the level"
    );
    let width = 1usize << level;
    let flat: Vec<usize> = locals.iter().flat_map(|h| h.counts.iter().copied()).collect();
    let mut out = vec![0usize; flat.len()];
    let workers = Workers::new(1);
    interleaved_prefix_sum_flat(&flat, width, width, locals.len(), order, &mut out, &workers);
    out.chunks(width)
        .map(|c| Borders {
            level,
            starts: c.to_vec(),
        })
        .collect()
}

/// Stable counting sort of `text` by `level`-bit prefix. Core `c` scans
/// `slices[c]` and scatters through `borders[c]`, so prefix groups appear
/// in the order the borders were computed in.
pub fn counting_sort_by_prefix(
    text: &[u32],
    level: u32,
    width: u32,
    borders: &[Borders],
    slices: &[Range<usize>],
) -> Vec<u32> {
    assert_eq!(borders.len(), slices.len());
    let mut out = vec![0u32; text.len()];
    let mut cursors: Vec<Vec<usize>> = borders.iter().map(|b| b.starts.clone()).collect();
    for (range, cursor) in slices.iter().zip(&mut cursors) {
        for &c in &text[range.clone()] {
            let q = prefix_of(level, c as u64, width) as usize;
            out[cursor[q]] = c;
            cursor[q] += 1;
        }
    }
    out
}

#[inline]
pub(crate) fn fold_counts(counts: &mut [usize], new_level: u32) {
    for i in 0..1usize << new_level {
        counts[i] = counts[2 * i] + counts[2 * i + 1];
    }
}

#[inline]
pub(crate) fn even_total(counts: &[usize]) -> usize {
    counts.iter().step_by(2).sum()
}

/// `starts[order.at(r)]` receives the sum of `counts[order.at(r')]` for r' < r.
#[inline]
pub(crate) fn prefix_sum_in_order(counts: &[usize], order: &impl IntervalOrder, starts: &mut [usize]) {
    let mut acc = 0;
    for r in 0..counts.len() {
        let q = order.at(r);
        starts[q] = acc;
        acc += counts[q];
    }
}

/// Interleaved prefix sum over `cores` histograms stored core-major in
/// `hists` with row stride `stride`, each using its first `width` entries.
/// Results land in `out` with the same layout.
pub(crate) fn interleaved_prefix_sum_flat(
    hists: &[usize],
    stride: usize,
    width: usize,
    cores: usize,
    order: &(impl IntervalOrder + Sync),
    out: &mut [usize],
    workers: &Workers,
) {
    let tasks = workers.threads().min(width);
    if tasks <= 1 || width * cores < PARALLEL_SCAN_THRESHOLD {
        let mut acc = 0;
        for r in 0..width {
            let q = order.at(r);
            for c in 0..cores {
                out[c * stride + q] = acc;
                acc += hists[c * stride + q];
            }
        }
        return;
    }

    // Blocked scan: block sums in parallel, a short sequential scan over the
    // block totals, then each block writes its own prefixes.
    let per_block = width.div_ceil(tasks);
    let ranges: Vec<Range<usize>> = (0..tasks)
        .map(|t| (t * per_block).min(width)..((t + 1) * per_block).min(width))
        .collect();
    let sums = workers.map(ranges.clone(), |_, ranks: Range<usize>| {
        ranks
            .map(|r| {
                let q = order.at(r);
                (0..cores).map(|c| hists[c * stride + q]).sum::<usize>()
            })
            .sum::<usize>()
    });
    let mut offset = 0;
    let offsets: Vec<usize> = sums
        .iter()
        .map(|s| {
            let o = offset;
            offset += s;
            o
        })
        .collect();
    let sink = ScatterSlice::new(out);
    let tasks: Vec<(Range<usize>, usize)> = ranges.into_iter().zip(offsets).collect();
    workers.for_each(tasks, |_, (ranks, mut acc)| {
        for r in ranks {
            let q = order.at(r);
            for c in 0..cores {
                // SAFETY: the rank blocks are disjoint and `order` is a
                // permutation, so each (c, q) cell belongs to one block.
                unsafe { sink.write(c * stride + q, acc) };
                acc += hists[c * stride + q];
            }
        }
    });
}

/// Parallel stable scatter of `text` by `level`-bit prefix into `out`.
/// `cursors` holds per-core borders (core-major, row stride `stride`) and
/// is advanced past every written symbol.
#[allow(clippy::too_many_arguments)]
pub(crate) fn scatter_by_prefix(
    text: &[u32],
    level: u32,
    width: u32,
    slices: &[Range<usize>],
    cursors: &mut [usize],
    stride: usize,
    out: &mut [u32],
    workers: &Workers,
) {
    let sink = ScatterSlice::new(out);
    let tasks: Vec<(Range<usize>, &mut [usize])> = slices.iter().cloned().zip(cursors.chunks_mut(stride)).collect();
    workers.for_each(tasks, |_, (range, cursor)| {
        for &c in &text[range] {
            let q = prefix_of(level, c as u64, width) as usize;
            // SAFETY: the interleaved prefix sum gives every core a disjoint
            // destination range per prefix, sized by its local count.
            unsafe { sink.write(cursor[q], c) };
            cursor[q] += 1;
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitperm::{reverse_bits, rho, BitReversal, Identity};
    use proptest::prelude::*;

    const EXAMPLE: [u32; 10] = [0, 1, 6, 7, 1, 5, 4, 2, 6, 3];

    #[test]
    fn histogram_examples() {
        assert_eq!(histogram(&EXAMPLE, 8).unwrap().counts(), &[1, 2, 1, 1, 1, 1, 2, 1]);
        assert_eq!(histogram(&[], 8).unwrap().counts(), &[0; 8]);
        assert_eq!(histogram(&[0, 0, 0], 2).unwrap().counts(), &[3, 0]);
        assert_eq!(histogram(&[0, 1, 2], 3).unwrap().counts(), &[1, 1, 1, 0]);
        assert!(matches!(
            histogram(&[0, 3], 3),
            Err(Error::SymbolOutOfRange {
                symbol: 3,
                position: 1,
                sigma: 3
            })
        ));
    }

    #[test]
    fn fold_examples() {
        let h = histogram(&EXAMPLE, 8).unwrap().fold();
        assert_eq!((h.level(), h.counts()), (2, &[3, 2, 2, 3][..]));
        let h = h.fold();
        assert_eq!((h.level(), h.counts()), (1, &[5, 5][..]));
        let z = Histogram::from_counts(2, vec![0; 4]).fold();
        assert_eq!(z.counts(), &[0, 0]);
    }

    #[test]
    fn border_examples() {
        let h = Histogram::from_counts(2, vec![3, 2, 2, 3]);
        assert_eq!(borders(&h, &Identity).starts(), &[0, 3, 5, 7]);
        assert_eq!(borders(&h, &rho(2)).starts(), &[0, 5, 3, 7]);
        assert_eq!(borders(&h, &BitReversal { level: 2 }).starts(), &[0, 5, 3, 7]);
        let single = Histogram::from_counts(0, vec![10]);
        assert_eq!(borders(&single, &Identity).starts(), &[0]);
    }

    #[test]
    fn interleaved_examples() {
        let locals = [
            Histogram::from_counts(1, vec![2, 1]),
            Histogram::from_counts(1, vec![1, 2]),
        ];
        let b = interleaved_prefix_sum(&locals, &Identity);
        assert_eq!(b[0].starts(), &[0, 3]);
        assert_eq!(b[1].starts(), &[2, 4]);

        let zeros = [
            Histogram::from_counts(2, vec![0; 4]),
            Histogram::from_counts(2, vec![0; 4]),
        ];
        assert!(interleaved_prefix_sum(&zeros, &Identity)
            .iter()
            .all(|b| b.starts().iter().all(|&s| s == 0)));
    }

    #[test]
    fn even_totals() {
        assert_eq!(even_total(&[1, 2, 1, 1, 1, 1, 2, 1]), 5);
        assert_eq!(even_total(&[3, 2, 2, 3]), 5);
    }

    #[test]
    fn counting_sort_examples() {
        let range = 0..EXAMPLE.len();
        let whole = std::slice::from_ref(&range);
        let h1 = histogram(&EXAMPLE, 8).unwrap().fold().fold();
        let b = borders(&h1, &Identity);
        assert_eq!(
            counting_sort_by_prefix(&EXAMPLE, 1, 3, &[b], whole),
            vec![0, 1, 1, 2, 3, 6, 7, 5, 4, 6]
        );
        let h2 = histogram(&EXAMPLE, 8).unwrap().fold();
        let b = borders(&h2, &rho(2));
        assert_eq!(
            counting_sort_by_prefix(&EXAMPLE, 2, 3, &[b], whole),
            vec![0, 1, 1, 5, 4, 2, 3, 6, 7, 6]
        );
        let h0 = Histogram::from_counts(0, vec![EXAMPLE.len()]);
        let b = borders(&h0, &Identity);
        assert_eq!(counting_sort_by_prefix(&EXAMPLE, 0, 3, &[b], whole), EXAMPLE.to_vec());
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let cores = 5;
        let width = 1 << 14;
        let hists: Vec<usize> = (0..cores * width).map(|i| (i * 7919) % 13).collect();
        let order = BitReversal { level: 14 };
        let mut seq = vec![0; hists.len()];
        let mut par = vec![0; hists.len()];
        interleaved_prefix_sum_flat(&hists, width, width, cores, &order, &mut seq, &Workers::new(1));
        interleaved_prefix_sum_flat(&hists, width, width, cores, &order, &mut par, &Workers::new(4));
        assert_eq!(seq, par);
    }

    fn local_hist(text: &[u32], level: u32, width: u32) -> Histogram {
        let mut counts = vec![0; 1 << level];
        for &c in text {
            counts[prefix_of(level, c as u64, width) as usize] += 1;
        }
        Histogram::from_counts(level, counts)
    }

    proptest! {
        #[test]
        fn fold_telescopes(text in prop::collection::vec(0u32..64, 0..200)) {
            let mut h = histogram(&text, 64).unwrap();
            while h.level() > 0 {
                h.fold_in_place();
                prop_assert_eq!(h.total(), text.len());
            }
            prop_assert_eq!(h.counts(), &[text.len()][..]);
        }

        #[test]
        fn borders_tile_the_level(
            counts in prop::collection::vec(0usize..20, 16),
            reversed in any::<bool>(),
        ) {
            let h = Histogram::from_counts(4, counts.clone());
            let b = if reversed { borders(&h, &BitReversal { level: 4 }) } else { borders(&h, &Identity) };
            let mut intervals: Vec<(usize, usize)> =
                (0..16).map(|q| (b.starts()[q], b.starts()[q] + counts[q])).collect();
            intervals.sort();
            let mut at = 0;
            for (s, e) in intervals {
                prop_assert_eq!(s, at);
                at = e;
            }
            prop_assert_eq!(at, h.total());
        }

        #[test]
        fn single_core_interleaving_is_plain_borders(counts in prop::collection::vec(0usize..50, 8)) {
            let h = Histogram::from_counts(3, counts);
            let order = BitReversal { level: 3 };
            prop_assert_eq!(&interleaved_prefix_sum(std::slice::from_ref(&h), &order)[0], &borders(&h, &order));
        }

        /// Multi-core counting sort equals a reference stable sort, and the
        /// scatter destinations form a permutation of the output positions.
        #[test]
        fn counting_sort_is_stable(
            text in prop::collection::vec(0u32..32, 0..300),
            level in 0u32..=5,
            cuts in prop::collection::vec(0usize..300, 0..4),
            reversed in any::<bool>(),
        ) {
            let width = 5;
            let mut cuts: Vec<usize> = cuts.into_iter().map(|c| c.min(text.len())).collect();
            cuts.push(0);
            cuts.push(text.len());
            cuts.sort();
            let slices: Vec<Range<usize>> = cuts.windows(2).map(|w| w[0]..w[1]).collect();
            let locals: Vec<Histogram> =
                slices.iter().map(|r| local_hist(&text[r.clone()], level, width)).collect();
            let key = |c: u32| {
                let p = prefix_of(level, c as u64, width);
                if reversed { reverse_bits(p, level) } else { p }
            };
            let b = if reversed {
                interleaved_prefix_sum(&locals, &BitReversal { level })
            } else {
                interleaved_prefix_sum(&locals, &Identity)
            };

            let mut seen = vec![false; text.len()];
            let mut cursors: Vec<Vec<usize>> = b.iter().map(|x| x.starts().to_vec()).collect();
            for (r, cur) in slices.iter().zip(&mut cursors) {
                for &c in &text[r.clone()] {
                    let q = prefix_of(level, c as u64, width) as usize;
                    prop_assert!(!seen[cur[q]], "destination {} written twice", cur[q]);
                    seen[cur[q]] = true;
                    cur[q] += 1;
                }
            }
            prop_assert!(seen.iter().all(|&s| s));

            let sorted = counting_sort_by_prefix(&text, level, width, &b, &slices);
            let mut reference = text.clone();
            reference.sort_by_key(|&c| key(c));
            prop_assert_eq!(sorted, reference);
        }
    }
}
