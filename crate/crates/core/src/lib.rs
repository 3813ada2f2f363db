//! Inner and outer approximations of the eigenvalue sets of symmetric
//! interval matrices.
//!
//! A symmetric interval matrix `A^S` is stored as a midpoint `A_c` and a
//! nonnegative radius `A_Δ`. Its `i`-th eigenvalue set
//! `λ_i(A^S) = {λ_i(A) : A ∈ A^S}` is a closed interval. This crate computes
//!
//! * outer bands `ω_i ⊇ λ_i(A^S)` from a perturbation bound ([`outer`]),
//! * inner bands `μ_i ⊆ λ_i(A^S)` by local improvement ([`local`]), full
//!   vertex enumeration ([`vertex`]), and submatrix vertex enumeration with
//!   optional branch and bound pruning ([`submatrix`]),
//! * flags telling which inner endpoints are provably exact,
//! * singular value bands of rectangular interval matrices
//!   ([`harness::singular`]).
//!
//! All arithmetic is ordinary round-to-nearest floating point, so results
//! are accurate but not rigorously verified.
//!
//! ```
//! use interval_spectra::fixtures::small_3x3;
//! use interval_spectra::local::local_inner;
//!
//! let bands = local_inner(&small_3x3()).unwrap().bands;
//! assert!((bands.bands[0].hi() - 6.7843).abs() < 1e-4);
//! ```

pub mod band;
pub mod eig;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod interval;
pub mod local;
pub mod outer;
pub mod simplex;
pub mod submatrix;
pub mod symmetric;
pub mod vertex;

pub use band::{BandSet, Side};
pub use error::{Error, Result};
pub use interval::{interval_matvec, Band, Interval, IntervalMatrix};
pub use symmetric::{gram_product, jordan_wielandt, IndexSet, SignVector, SymmetricIntervalMatrix};
