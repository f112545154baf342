//! Generalized covering radii of Reed–Muller codes.
//!
//! The `t`-weight of a `t x n` binary matrix is the size of the union of its
//! row supports, and `R_t(C)` is the largest `t`-distance from a matrix to
//! the nearest element of `C^t`. This crate computes `R_t` exactly for small
//! codes, bounds it for Reed–Muller codes of any size, finds nearby
//! codewords with a recursive decoder, and turns that decoder into a
//! planner for batches of linear queries.
//!
//! ```
//! use rmcover::{bounds, cover, rm, BitMatrix};
//!
//! let code = rm(1, 3)?;
//! assert_eq!(bounds::best_upper_bound(2, 1, 3)?.integer_form, 3);
//!
//! let v = BitMatrix::from_strs(&["01101000", "00010111"])?;
//! let res = cover::cover(&v, 1, cover::CoverOptions::default())?;
//! assert!(code.contains_rows(&res.codeword));
//! assert!(res.distance as u64 <= res.guarantee);
//! # Ok::<(), rmcover::Error>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod cover;
pub mod error;
pub mod exact;
pub mod gf2;
pub mod planner;
pub mod rm;
pub mod selftest;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use rm::{rm, LinearCode, RmCode};
