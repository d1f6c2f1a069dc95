//! Exact character theory of the symmetric groups and the character-ratio
//! statistics of the Plancherel and conjugacy measures.
//!
//! The crate is organised bottom-up:
//!
//! * [`partition`]: integer partitions and their class statistics.
//! * [`perm`]: finite-support permutations, cycle tuples, symbols and products.
//! * [`reduction`]: the pairwise deletion procedure on cycle tuples.
//! * [`character`]: Murnaghan–Nakayama characters, hook dimensions, full tables.
//! * [`measure`]: Plancherel and conjugacy measures with exact masses.
//! * [`class_algebra`]: Frobenius tuple counting and its brute-force oracle.
//! * [`radical`] and [`moments`]: exact moments of normalized character ratios
//!   and their Gaussian/Hermite limits.

pub mod character;
pub mod class_algebra;
pub mod error;
pub mod measure;
pub mod moments;
pub mod partition;
pub mod perm;
pub mod radical;
pub mod reduction;

pub use character::CharacterTable;
pub use error::{Error, Result};
pub use measure::{MeasureKind, SpectralMeasure};
pub use partition::Partition;
pub use perm::{CycleTuple, Permutation};
pub use radical::RadicalRational;
