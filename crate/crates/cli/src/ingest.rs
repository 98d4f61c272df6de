use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::Path;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlphabetMode {
    /// Raw bytes over an alphabet of 256.
    Byte,
    /// Bytes renumbered densely by first occurrence.
    ByteEffective,
    /// ASCII-whitespace separated tokens, numbered by first occurrence.
    Words,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestedText {
    pub symbols: Vec<u32>,
    /// Distinct symbols in the effective modes, 256 for raw bytes. Zero
    /// for an empty input in an effective mode.
    pub sigma: usize,
    pub mode: AlphabetMode,
    /// Token of every word id, in id order. Empty unless `mode` is `Words`.
    pub tokens: Vec<String>,
    pub input_bytes: usize,
}

impl IngestedText {
    /// Alphabet size handed to construction; an empty alphabet is built as
    /// a single-symbol one.
    pub fn structure_sigma(&self) -> usize {
        self.sigma.max(1)
    }
}

pub fn ingest(path: &Path, mode: AlphabetMode) -> io::Result<IngestedText> {
    Ok(ingest_bytes(&fs::read(path)?, mode))
}

pub fn ingest_bytes(bytes: &[u8], mode: AlphabetMode) -> IngestedText {
    let (symbols, sigma, tokens) = match mode {
        AlphabetMode::Byte => (bytes.iter().map(|&b| b as u32).collect(), 256, Vec::new()),
        AlphabetMode::ByteEffective => {
            let mut ids = [u32::MAX; 256];
            let mut next = 0;
            let symbols = bytes
                .iter()
                .map(|&b| {
                    if ids[b as usize] == u32::MAX {
                        ids[b as usize] = next;
                        next += 1;
                    }
                    ids[b as usize]
                })
                .collect();
            (symbols, next as usize, Vec::new())
        }
        AlphabetMode::Words => {
            let mut ids: HashMap<&[u8], u32> = HashMap::new();
            let mut tokens = Vec::new();
            let symbols = bytes
                .split(|b| b.is_ascii_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    *ids.entry(t).or_insert_with(|| {
                        tokens.push(String::from_utf8_lossy(t).into_owned());
                        tokens.len() as u32 - 1
                    })
                })
                .collect();
            let sigma = tokens.len();
            (symbols, sigma, tokens)
        }
    };
    IngestedText {
        symbols,
        sigma,
        mode,
        tokens,
        input_bytes: bytes.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effective_bytes_follow_first_occurrence() {
        let t = ingest_bytes(b"abca", AlphabetMode::ByteEffective);
        assert_eq!(t.symbols, [0, 1, 2, 0]);
        assert_eq!(t.sigma, 3);
    }

    #[test]
    fn words_split_on_whitespace_runs() {
        let t = ingest_bytes(b"to be or to be", AlphabetMode::Words);
        assert_eq!(t.symbols, [0, 1, 2, 0, 1]);
        assert_eq!(t.sigma, 3);
        assert_eq!(t.tokens, ["to", "be", "or"]);
        let t = ingest_bytes(b"  to\t\tbe\n\nto ", AlphabetMode::Words);
        assert_eq!(t.symbols, [0, 1, 0]);
    }

    #[test]
    fn raw_bytes_and_empty_input() {
        let t = ingest_bytes(b"\x00\xff", AlphabetMode::Byte);
        assert_eq!((t.symbols, t.sigma), (vec![0, 255], 256));
        for mode in [AlphabetMode::ByteEffective, AlphabetMode::Words] {
            let t = ingest_bytes(b"", mode);
            assert!(t.symbols.is_empty());
            assert_eq!((t.sigma, t.structure_sigma()), (0, 1));
        }
    }
}
