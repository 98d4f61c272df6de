//! Packed bit vectors and their rank/select support.
//!
//! Bits are stored least-significant-first in 64-bit words: bit `j` lives in
//! word `j / 64` at in-word position `j % 64`. Bits past `len` in the last
//! word are always zero.

mod rank_select;

use std::io::{Read, Write};

pub use rank_select::RankSelectBitVector;

use crate::error::{Error, Result};

pub const WORD_BITS: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

impl BitVector {
    /// A vector of `len` zero bits.
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                *words.last_mut().unwrap() |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Parses a string of `0`/`1` characters, ignoring anything else.
    pub fn from_bit_str(s: &str) -> Self {
        Self::from_bits(s.chars().filter_map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        }))
    }

    /// Wraps packed words. Fails if a padding bit past `len` is set.
    pub fn from_words(len: usize, words: Vec<u64>) -> Result<Self> {
        if words.len() != words_for(len) {
            return Err(Error::Format(format!(
                "{} words cannot hold exactly {len} bits",
                words.len()
            )));
        }
        let tail = len % WORD_BITS;
        if tail != 0 && words[words.len() - 1] >> tail != 0 {
            return Err(Error::Format("nonzero padding bits".into()));
        }
        Ok(Self { len, words })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        let word = &mut self.words[i / WORD_BITS];
        if bit {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Whole-word mutable access. Split it with `chunks_mut` to hand disjoint
    /// word ranges to concurrent writers; callers must keep padding bits zero.
    #[inline]
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Reads `count <= 64` bits starting at `pos`, returned in the low bits.
    #[inline]
    pub fn read_bits(&self, pos: usize, count: usize) -> u64 {
        debug_assert!(count <= WORD_BITS && pos + count <= self.len);
        if count == 0 {
            return 0;
        }
        let w = pos / WORD_BITS;
        let off = pos % WORD_BITS;
        let mut v = self.words[w] >> off;
        if off + count > WORD_BITS {
            v |= self.words[w + 1] << (WORD_BITS - off);
        }
        if count < WORD_BITS {
            v &= (1u64 << count) - 1;
        }
        v
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Heap bytes held by the packed words.
    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * std::mem::size_of::<u64>()
    }

    /// Little-endian bit length followed by the little-endian words.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(&(self.len as u64).to_le_bytes())?;
        for word in &self.words {
            w.write_all(&word.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let len = usize::try_from(u64::from_le_bytes(buf))
            .map_err(|_| Error::Format("bit length exceeds address space".into()))?;
        let nwords = words_for(len);
        let mut words = Vec::with_capacity(nwords);
        for _ in 0..nwords {
            r.read_exact(&mut buf)?;
            words.push(u64::from_le_bytes(buf));
        }
        Self::from_words(len, words)
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Copies `len` bits from `src[src_pos..]` into a word slice whose first
/// word holds bit `dst_base` of the logical destination; the target range
/// `[dst_pos, dst_pos + len)` must lie inside the slice. Destination bits
/// are OR-ed in, so the range is expected to be zero.
pub(crate) fn or_copy_bits(
    dst: &mut [u64],
    dst_base: usize,
    dst_pos: usize,
    src: &BitVector,
    src_pos: usize,
    len: usize,
) {
    debug_assert!(dst_base.is_multiple_of(WORD_BITS) && dst_pos >= dst_base);
    let mut rel = dst_pos - dst_base;
    let mut from = src_pos;
    let mut left = len;
    // Head: fill up to the next destination word boundary.
    let head = ((WORD_BITS - rel % WORD_BITS) % WORD_BITS).min(left);
    if head > 0 {
        dst[rel / WORD_BITS] |= src.read_bits(from, head) << (rel % WORD_BITS);
        rel += head;
        from += head;
        left -= head;
    }
    // Body: whole destination words.
    while left >= WORD_BITS {
        dst[rel / WORD_BITS] |= src.read_bits(from, WORD_BITS);
        rel += WORD_BITS;
        from += WORD_BITS;
        left -= WORD_BITS;
    }
    if left > 0 {
        dst[rel / WORD_BITS] |= src.read_bits(from, left);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fresh_vectors_are_zero() {
        let v = BitVector::new(0);
        assert_eq!(v.len(), 0);
        assert!(v.words().is_empty());

        let v = BitVector::new(10);
        assert_eq!(v.words().len(), 1);
        assert!((0..10).all(|i| !v.get(i)));

        let v = BitVector::new(65);
        assert_eq!(v.words(), &[0, 0]);
    }

    #[test]
    fn set_then_get() {
        let mut v = BitVector::new(10);
        v.set(3, true);
        assert!(v.get(3));
        assert!(!v.get(2));
        assert!(!v.get(4));
        v.set(3, false);
        assert!(!v.get(3));
    }

    #[test]
    fn rejects_dirty_padding() {
        assert!(BitVector::from_words(3, vec![0b1000]).is_err());
        assert!(BitVector::from_words(3, vec![0b0101]).is_ok());
        assert!(BitVector::from_words(65, vec![0]).is_err());
    }

    #[test]
    fn wire_format_layout() {
        let v = BitVector::from_bit_str("1011");
        let mut out = Vec::new();
        v.write_to(&mut out).unwrap();
        assert_eq!(out.len(), 16);
        assert_eq!(&out[..8], &4u64.to_le_bytes());
        assert_eq!(&out[8..], &0b1101u64.to_le_bytes());
    }

    fn bits_strategy() -> impl Strategy<Value = Vec<bool>> {
        prop::collection::vec(any::<bool>(), 0..700)
    }

    proptest! {
        #[test]
        fn serialization_is_identity(bits in bits_strategy()) {
            let v = BitVector::from_bits(bits.iter().copied());
            let mut bytes = Vec::new();
            v.write_to(&mut bytes).unwrap();
            let back = BitVector::read_from(&mut bytes.as_slice()).unwrap();
            prop_assert_eq!(&back, &v);
            let mut again = Vec::new();
            back.write_to(&mut again).unwrap();
            prop_assert_eq!(again, bytes);
        }

        #[test]
        fn or_copy_matches_bitwise_copy(
            bits in prop::collection::vec(any::<bool>(), 1..400),
            src_pos in 0usize..400,
            len in 0usize..400,
            dst_pos in 0usize..200,
        ) {
            let src = BitVector::from_bits(bits.iter().copied());
            let src_pos = src_pos % src.len();
            let len = len.min(src.len() - src_pos);
            let mut dst = BitVector::new(dst_pos + len + 70);
            or_copy_bits(dst.words_mut(), 0, dst_pos, &src, src_pos, len);
            for i in 0..dst.len() {
                let expect = i >= dst_pos && i < dst_pos + len && bits[src_pos + i - dst_pos];
                prop_assert_eq!(dst.get(i), expect, "bit {}", i);
            }
        }
    }
}
