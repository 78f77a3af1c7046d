//! Colored braids and the simple branched coverings of the disk they present.
//!
//! The crate provides the braid action on branch-point colorings, the
//! groupoid of colored braids modulo the local moves `M` and `P` with
//! replayable certificates, orbit complexes with their Schreier generators,
//! and the action of liftable braids on the first homology of the covering
//! surface.

pub mod action;
pub mod braid;
pub mod catalog;
pub mod complex;
pub mod covering;
pub mod error;
pub mod homlift;
pub mod lattice;
pub mod perm;
pub mod rewrite;
pub mod verify;

pub use action::{apply, is_liftable, ColoredBraid, Orbit};
pub use braid::{parse_word, words_equal, BraidWord, FreeWord, Letter};
pub use covering::{Coloring, StandardFamily};
pub use error::{Error, Result};
pub use perm::{kappa, Permutation, Transposition};
pub use lattice::{Int, IntMatrix};
