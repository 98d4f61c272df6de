use super::{checked_width, empty_levels, pack_level_bits, slice_ranges, split_words, validate, LevelOrder};
use crate::bitvec::BitVector;
use crate::error::Result;
use crate::levelstats::{even_total, fold_counts, interleaved_prefix_sum_flat, scatter_by_prefix};
use crate::par::Workers;
use crate::structures::{StructureKind, WaveletLevels};

/// Parallel sort-based construction.
///
/// The text is cut into `threads` granule-aligned slices. Each worker keeps
/// a local histogram of its slice; per level, the local histograms are
/// folded, combined by an interleaved prefix sum, and used to counting-sort
/// the text by prefix into one scratch buffer reused across levels. The
/// level is then written from the sorted symbols, each worker owning the
/// output words of its slice.
pub fn ps_construct(text: &[u32], sigma: usize, kind: StructureKind, threads: usize) -> Result<WaveletLevels> {
    let width = checked_width(sigma)?;
    let workers = Workers::new(threads);
    let slices = slice_ranges(text.len(), workers.threads());
    validate(text, sigma, &slices, &workers)?;
    if width == 0 {
        return Ok(empty_levels(kind, text.len(), sigma));
    }
    let (levels, zeros) = ps_core(text, width, kind, &workers, |_, _| {});
    Ok(WaveletLevels {
        kind,
        len: text.len(),
        sigma,
        levels,
        zeros,
    })
}

/// `on_level(l, hists)` receives every level's folded local histograms,
/// stored core-major with row stride `2^width`.
pub(crate) fn ps_core(
    text: &[u32],
    width: u32,
    kind: StructureKind,
    workers: &Workers,
    mut on_level: impl FnMut(u32, &[usize]),
) -> (Vec<BitVector>, Vec<usize>) {
    let n = text.len();
    let cores = workers.threads();
    let slices = slice_ranges(n, cores);
    let stride = 1usize << width;
    let matrix = kind == StructureKind::Matrix;

    let mut levels: Vec<BitVector> = (0..width).map(|_| BitVector::new(n)).collect();
    let mut zeros = if matrix { vec![0; width as usize] } else { Vec::new() };
    let mut hists = vec![0usize; cores * stride];
    let mut borders = vec![0usize; cores * stride];
    let mut sorted = vec![0u32; n];

    {
        let tasks: Vec<_> = slices
            .iter()
            .cloned()
            .zip(hists.chunks_mut(stride))
            .zip(split_words(levels[0].words_mut(), &slices))
            .collect();
        workers.for_each(tasks, |_, ((range, hist), words)| {
            let slice = &text[range];
            for &c in slice {
                hist[c as usize] += 1;
            }
            pack_level_bits(slice, 0, width, words);
        });
    }
    if matrix {
        zeros[width as usize - 1] = hists.chunks(stride).map(even_total).sum();
    }

    for l in (1..width).rev() {
        let size = 1usize << l;
        let tasks: Vec<&mut [usize]> = hists.chunks_mut(stride).collect();
        workers.for_each(tasks, |_, hist| fold_counts(hist, l));
        on_level(l, &hists);
        if matrix {
            zeros[l as usize - 1] = hists.chunks(stride).map(|h| even_total(&h[..size])).sum();
        }

        let order = LevelOrder::new(kind, l);
        interleaved_prefix_sum_flat(&hists, stride, size, cores, &order, &mut borders, workers);
        scatter_by_prefix(text, l, width, &slices, &mut borders, stride, &mut sorted, workers);

        let tasks: Vec<_> = slices
            .iter()
            .cloned()
            .zip(split_words(levels[l as usize].words_mut(), &slices))
            .collect();
        let sorted = &sorted;
        workers.for_each(tasks, |_, (range, words)| {
            pack_level_bits(&sorted[range], l, width, words);
        });
    }
    (levels, zeros)
}
