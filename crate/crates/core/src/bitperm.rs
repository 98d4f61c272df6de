//! Bit prefixes of fixed-width symbol codes and the bit-reversal permutation.
//!
//! Bits are numbered from the most significant end: bit 0 of a `width`-bit
//! code is its MSB.

/// Number of levels (code width) for an alphabet of `sigma` symbols:
/// `ceil(lg sigma)`, with 0 and 1 both giving zero levels.
#[inline]
pub fn code_width(sigma: usize) -> u32 {
    if sigma <= 1 {
        0
    } else {
        usize::BITS - (sigma - 1).leading_zeros()
    }
}

/// A symbol together with the width of its binary code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolCode {
    value: u64,
    width: u32,
}

impl SymbolCode {
    pub fn new(value: u64, width: u32) -> Self {
        assert!(width <= 64 && (width == 64 || value >> width == 0));
        Self { value, width }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn width(self) -> u32 {
        self.width
    }

    /// The `k`-th most significant bit.
    pub fn bit(self, k: u32) -> bool {
        bit_of(k, self.value, self.width)
    }

    /// The `k` most significant bits read as an integer.
    pub fn prefix(self, k: u32) -> u64 {
        prefix_of(k, self.value, self.width)
    }
}

#[inline]
pub fn bit_of(k: u32, value: u64, width: u32) -> bool {
    debug_assert!(k < width);
    (value >> (width - 1 - k)) & 1 == 1
}

#[inline]
pub fn prefix_of(k: u32, value: u64, width: u32) -> u64 {
    debug_assert!(k <= width);
    let shift = width - k;
    if shift >= 64 {
        0
    } else {
        value >> shift
    }
}

/// Reverses the low `width` bits of `v`.
#[inline]
pub fn reverse_bits(v: u64, width: u32) -> u64 {
    debug_assert!(width == 64 || v >> width == 0);
    if width == 0 {
        0
    } else {
        v.reverse_bits() >> (64 - width)
    }
}

/// An ordering of the `2^level` bit prefixes of one level: `at(r)` is the
/// prefix occupying rank `r` in interval order.
pub trait IntervalOrder {
    fn at(&self, rank: usize) -> usize;
}

/// Prefixes in increasing order, the wavelet tree layout.
#[derive(Clone, Copy, Debug)]
pub struct Identity;

impl IntervalOrder for Identity {
    #[inline]
    fn at(&self, rank: usize) -> usize {
        rank
    }
}

/// Bit-reversal order of `level`-bit prefixes, the wavelet matrix layout.
/// Computed on the fly; see [`BitReversalPermutation`] for the table form.
#[derive(Clone, Copy, Debug)]
pub struct BitReversal {
    pub level: u32,
}

impl IntervalOrder for BitReversal {
    #[inline]
    fn at(&self, rank: usize) -> usize {
        reverse_bits(rank as u64, self.level) as usize
    }
}

/// Materialized bit-reversal permutation of order `k` over `[0, 2^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitReversalPermutation {
    order: u32,
    table: Vec<u32>,
}

impl BitReversalPermutation {
    /// Table of order `k`; `k = 0` is the singleton `(0)`.
    pub fn new(k: u32) -> Self {
        assert!(k <= 32, "bit-reversal order {k} exceeds 32");
        let table = (0..1u64 << k).map(|i| reverse_bits(i, k) as u32).collect();
        Self { order: k, table }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Order `k + 1` from order `k`: doubled entries, then doubled plus one.
    pub fn expand(&self) -> Self {
        let mut table = Vec::with_capacity(self.table.len() * 2);
        table.extend(self.table.iter().map(|&x| 2 * x));
        table.extend(self.table.iter().map(|&x| 2 * x + 1));
        Self {
            order: self.order + 1,
            table,
        }
    }

    /// Order `k - 1` from order `k`: the first half, each entry shifted right.
    pub fn contract(&self) -> Self {
        assert!(self.order > 0, "cannot contract the order-0 permutation");
        let half = self.table.len() / 2;
        Self {
            order: self.order - 1,
            table: self.table[..half].iter().map(|&x| x >> 1).collect(),
        }
    }
}

impl IntervalOrder for BitReversalPermutation {
    #[inline]
    fn at(&self, rank: usize) -> usize {
        self.table[rank] as usize
    }
}

/// `rho(k)`, the bit-reversal permutation of order `k`.
pub fn rho(k: u32) -> BitReversalPermutation {
    BitReversalPermutation::new(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(code_width(0), 0);
        assert_eq!(code_width(1), 0);
        assert_eq!(code_width(2), 1);
        assert_eq!(code_width(3), 2);
        assert_eq!(code_width(4), 2);
        assert_eq!(code_width(5), 3);
        assert_eq!(code_width(8), 3);
        assert_eq!(code_width(256), 8);
        assert_eq!(code_width(70_000), 17);
        assert_eq!(code_width(1 << 32), 32);
    }

    #[test]
    fn bits_and_prefixes() {
        assert!(bit_of(0, 0b101, 3));
        assert!(!bit_of(2, 0b100, 3));
        assert!(!bit_of(0, 0, 3));
        assert_eq!(prefix_of(2, 0b011, 3), 0b01);
        assert_eq!(prefix_of(0, 0b111, 3), 0);
        assert_eq!(prefix_of(3, 5, 3), 5);
        assert_eq!(prefix_of(0, u32::MAX as u64, 32), 0);
        let c = SymbolCode::new(5, 3);
        assert!(c.bit(0) && !c.bit(1) && c.bit(2));
        assert_eq!(c.prefix(2), 0b10);
    }

    #[test]
    fn reversal() {
        assert_eq!(reverse_bits(0b001, 3), 0b100);
        assert_eq!(reverse_bits(0, 5), 0);
        assert_eq!(reverse_bits(0b110, 3), 0b011);
        assert_eq!(reverse_bits(0, 0), 0);
    }

    #[test]
    fn small_permutations() {
        assert_eq!(rho(0).as_slice(), &[0]);
        assert_eq!(rho(1).as_slice(), &[0, 1]);
        assert_eq!(rho(2).as_slice(), &[0, 2, 1, 3]);
        assert_eq!(rho(3).as_slice(), &[0, 4, 2, 6, 1, 5, 3, 7]);
    }

    #[test]
    fn recurrences_and_involution() {
        for k in 0..=16 {
            let r = rho(k);
            let t = r.as_slice();
            assert!((0..t.len()).all(|i| t[t[i] as usize] as usize == i));
            assert_eq!(r.expand(), rho(k + 1));
            if k > 0 {
                assert_eq!(r.contract(), rho(k - 1));
            }
            let order = BitReversal { level: k };
            assert!((0..t.len()).all(|i| order.at(i) == t[i] as usize));
        }
    }
}
