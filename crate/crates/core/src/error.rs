use std::io;

use thiserror::Error;

/// Errors surfaced by construction, queries and (de)serialization.
#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {symbol} at position {position} is not below the alphabet size {sigma}")]
    SymbolOutOfRange { symbol: u64, position: usize, sigma: usize },
    #[error("occurrence absent")]
    OccurrenceAbsent,
    #[error("alphabet of size {sigma} needs {levels} levels, more than the supported 32")]
    AlphabetTooLarge { sigma: usize, levels: u32 },
    #[error("oracle guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("malformed index: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
