use super::{checked_width, empty_levels, pack_level_bits, place_level_bits, validate, LevelOrder};
use crate::bitvec::BitVector;
use crate::error::Result;
use crate::levelstats::{even_total, fold_counts, prefix_sum_in_order};
use crate::par::Workers;
use crate::structures::{StructureKind, WaveletLevels};

/// Sequential bottom-up counting construction.
///
/// One pass fills level 0 and the full-width histogram. Each deeper level
/// then folds the histogram one prefix bit shorter, turns it into interval
/// borders in the kind's interval order and scans the text once, placing
/// every symbol's bit at its prefix's running border. Auxiliary space is
/// two arrays of `2^ceil(lg sigma)` positions.
pub fn pc_construct(text: &[u32], sigma: usize, kind: StructureKind) -> Result<WaveletLevels> {
    let width = checked_width(sigma)?;
    validate(text, sigma, std::slice::from_ref(&(0..text.len())), &Workers::new(1))?;
    if width == 0 {
        return Ok(empty_levels(kind, text.len(), sigma));
    }
    let mut hist = vec![0usize; 1 << width];
    let mut borders = vec![0usize; 1 << width];
    let (levels, zeros) = pc_core(text, width, kind, &mut hist, &mut borders, |_, _| {});
    Ok(WaveletLevels {
        kind,
        len: text.len(),
        sigma,
        levels,
        zeros,
    })
}

/// The counting construction over pre-validated symbols of `width` bits.
/// `on_level(l, counts)` sees each level's prefix histogram for
/// `l = width - 1, …, 1` right after it is folded.
pub(crate) fn pc_core(
    text: &[u32],
    width: u32,
    kind: StructureKind,
    hist: &mut [usize],
    borders: &mut [usize],
    mut on_level: impl FnMut(u32, &[usize]),
) -> (Vec<BitVector>, Vec<usize>) {
    let n = text.len();
    let matrix = kind == StructureKind::Matrix;
    let mut levels: Vec<BitVector> = (0..width).map(|_| BitVector::new(n)).collect();
    let mut zeros = if matrix { vec![0; width as usize] } else { Vec::new() };

    for &c in text {
        hist[c as usize] += 1;
    }
    pack_level_bits(text, 0, width, levels[0].words_mut());
    if matrix {
        zeros[width as usize - 1] = even_total(&hist[..1 << width]);
    }

    for l in (1..width).rev() {
        let size = 1usize << l;
        fold_counts(hist, l);
        on_level(l, &hist[..size]);
        if matrix {
            zeros[l as usize - 1] = even_total(&hist[..size]);
        }
        prefix_sum_in_order(&hist[..size], &LevelOrder::new(kind, l), &mut borders[..size]);
        place_level_bits(text, l, width, &mut borders[..size], &mut levels[l as usize]);
    }
    (levels, zeros)
}
