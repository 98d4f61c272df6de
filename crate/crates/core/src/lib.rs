//! Bottom-up construction of level-wise wavelet trees and wavelet matrices.
//!
//! The construction algorithms in [`construct`] compute the histogram of the
//! deepest level once and derive every shallower level's prefix histogram
//! by folding, sequentially or on `p` workers. [`structures`] provides
//! access/rank/select over the results, and [`wt2wm`] maps wavelet tree
//! positions to wavelet matrix positions in constant time.
//!
//! ```
//! use wavelet_core::construct::{construct, Algorithm, ConstructionPlan};
//! use wavelet_core::structures::StructureKind;
//!
//! let text = [0, 1, 6, 7, 1, 5, 4, 2, 6, 3];
//! let plan = ConstructionPlan::new(StructureKind::Matrix, Algorithm::Ps, 2);
//! let wm = construct(&text, 8, &plan).unwrap().into_matrix();
//! assert_eq!(wm.access(2), 6);
//! assert_eq!(wm.rank(6, 10), 2);
//! assert_eq!(wm.select(1, 2).unwrap(), 4);
//! ```

pub mod bitperm;
pub mod bitvec;
pub mod construct;
pub mod error;
pub mod levelstats;
pub mod meter;
pub mod oracle;
pub mod structures;
pub mod wt2wm;

mod par;

pub use error::{Error, Result};
