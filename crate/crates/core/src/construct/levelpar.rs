use super::{checked_width, empty_levels, pack_level_bits, place_level_bits, slice_ranges, validate, LevelOrder};
use crate::bitperm::prefix_of;
use crate::bitvec::BitVector;
use crate::error::Result;
use crate::levelstats::{even_total, fold_counts, prefix_sum_in_order};
use crate::par::Workers;
use crate::structures::{StructureKind, WaveletLevels};

/// Level-parallel counting construction: every level is built by its own
/// worker from a fresh scan of the text, so at most `ceil(lg sigma)`
/// workers are busy.
pub fn level_parallel_pc(text: &[u32], sigma: usize, kind: StructureKind, threads: usize) -> Result<WaveletLevels> {
    let width = checked_width(sigma)?;
    let workers = Workers::new(threads.min(width as usize));
    validate(text, sigma, &slice_ranges(text.len(), workers.threads()), &workers)?;
    if width == 0 {
        return Ok(empty_levels(kind, text.len(), sigma));
    }
    let built = workers.map((0..width).collect(), |_, l| build_level(text, width, kind, l));
    let (levels, level_zeros): (Vec<BitVector>, Vec<usize>) = built.into_iter().unzip();
    Ok(WaveletLevels {
        kind,
        len: text.len(),
        sigma,
        levels,
        zeros: if kind == StructureKind::Matrix {
            level_zeros
        } else {
            Vec::new()
        },
    })
}

/// Level `l` and its zero count. The worker counts `(l + 1)`-bit prefixes,
/// reads the zero count off the even entries, folds once to level `l` and
/// places the bits.
fn build_level(text: &[u32], width: u32, kind: StructureKind, l: u32) -> (BitVector, usize) {
    let mut bv = BitVector::new(text.len());
    let mut hist = vec![0usize; 1 << (l + 1)];
    for &c in text {
        hist[prefix_of(l + 1, c as u64, width) as usize] += 1;
    }
    let zeros = even_total(&hist);
    if l == 0 {
        pack_level_bits(text, 0, width, bv.words_mut());
        return (bv, zeros);
    }
    fold_counts(&mut hist, l);
    let size = 1usize << l;
    let mut borders = vec![0usize; size];
    prefix_sum_in_order(&hist[..size], &LevelOrder::new(kind, l), &mut borders);
    place_level_bits(text, l, width, &mut borders, &mut bv);
    (bv, zeros)
}
