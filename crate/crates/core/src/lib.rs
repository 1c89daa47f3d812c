//! Spectrum-maximizing products for pairs of 2x2 matrices.
//!
//! The crate is organized around binary words over the alphabet {1,2} and the
//! matrix products they encode (substitute the first matrix for 1, the second
//! for 2):
//!
//! - [`words`]: word combinatorics, isospectral clusters, and the 62
//!   representative words of length <= 8.
//! - [`mat2`]: 2x2 complex matrix algebra, spectral radii, word evaluation,
//!   and determinant normalization of pairs.
//! - [`fricke`]: exact integer trace polynomials for words in SL2 pairs.
//! - [`verify`]: machine checks of the domination inequality
//!   rho(P4) <= max(rho(P1), rho(P2), rho(P3)), both exact and numerical.
//! - [`montecarlo`]: reproducible argmax frequency experiments over random
//!   Gaussian pairs.
//! - [`doublerot`]: double-rotation path encoding and an exact realizability
//!   decider for binary words.

pub mod doublerot;
pub mod fricke;
pub mod linear;
pub mod mat2;
pub mod montecarlo;
pub mod rng;
pub mod sturm;
pub mod verify;
pub mod words;

pub use mat2::{Mat2, MatrixPair};
pub use words::{IsospectralCluster, Word};
