//! Slow reference implementations used as ground truth.
//!
//! Level `l` of a wavelet tree is bit `l` of the text stably sorted by
//! `l`-bit prefix; for a wavelet matrix the sort key is the reversed prefix.
//! These are computed with the standard library's comparison sort and
//! share no code with the counting paths.

use crate::bitvec::BitVector;
use crate::error::{Error, Result};
use crate::structures::{StructureKind, WaveletLevels};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_len: usize,
    pub max_sigma: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_len: 1_000_000,
            max_sigma: 1 << 20,
        }
    }
}

impl OracleConfig {
    fn check(&self, text: &[u32], sigma: usize) -> Result<u32> {
        assert!(self.max_len > 0 && self.max_sigma > 0, "oracle guards must be positive");
        if text.len() > self.max_len {
            return Err(Error::GuardExceeded(format!(
                "text length {} above {}",
                text.len(),
                self.max_len
            )));
        }
        if sigma > self.max_sigma {
            return Err(Error::GuardExceeded(format!(
                "alphabet {sigma} above {}",
                self.max_sigma
            )));
        }
        if let Some(p) = text.iter().position(|&c| c as usize >= sigma.max(1)) {
            return Err(Error::SymbolOutOfRange {
                symbol: text[p] as u64,
                position: p,
                sigma,
            });
        }
        // Smallest w with 2^w >= sigma, by counting.
        let mut width = 0u32;
        while (1usize << width) < sigma {
            width += 1;
        }
        Ok(width)
    }
}

fn msb_bit(c: u32, l: u32, width: u32) -> bool {
    let code = format!("{:0w$b}", c, w = width as usize);
    code.as_bytes()[l as usize] == b'1'
}

fn prefix_key(c: u32, l: u32, width: u32, reversed: bool) -> String {
    let code = format!("{:0w$b}", c, w = width as usize);
    let prefix = &code[..l as usize];
    if reversed {
        prefix.chars().rev().collect()
    } else {
        prefix.to_string()
    }
}

fn naive_levels(text: &[u32], sigma: usize, config: &OracleConfig, kind: StructureKind) -> Result<WaveletLevels> {
    let width = config.check(text, sigma)?;
    let reversed = kind == StructureKind::Matrix;
    let mut levels = Vec::new();
    let mut zeros = Vec::new();
    for l in 0..width {
        let mut sorted = text.to_vec();
        sorted.sort_by_cached_key(|&c| prefix_key(c, l, width, reversed));
        let bv = BitVector::from_bits(sorted.iter().map(|&c| msb_bit(c, l, width)));
        if reversed {
            zeros.push(text.iter().filter(|&&c| !msb_bit(c, l, width)).count());
        }
        levels.push(bv);
    }
    Ok(WaveletLevels {
        kind,
        len: text.len(),
        sigma,
        levels,
        zeros,
    })
}

pub fn naive_wt(text: &[u32], sigma: usize, config: &OracleConfig) -> Result<WaveletLevels> {
    naive_levels(text, sigma, config, StructureKind::Tree)
}

pub fn naive_wm(text: &[u32], sigma: usize, config: &OracleConfig) -> Result<WaveletLevels> {
    naive_levels(text, sigma, config, StructureKind::Matrix)
}

pub fn naive_build(text: &[u32], sigma: usize, kind: StructureKind, config: &OracleConfig) -> Result<WaveletLevels> {
    naive_levels(text, sigma, config, kind)
}

pub fn naive_access(text: &[u32], i: usize) -> u32 {
    text[i]
}

pub fn naive_rank(text: &[u32], c: u32, i: usize) -> usize {
    text[..i].iter().filter(|&&x| x == c).count()
}

pub fn naive_select(text: &[u32], c: u32, j: usize) -> Result<usize> {
    if j == 0 {
        return Err(Error::OccurrenceAbsent);
    }
    text.iter()
        .enumerate()
        .filter(|(_, &x)| x == c)
        .nth(j - 1)
        .map(|(p, _)| p)
        .ok_or(Error::OccurrenceAbsent)
}
