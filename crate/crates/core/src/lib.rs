//! Exact decision procedures for the existence of fundamental and essential
//! matrices compatible with a set of two-view point correspondences.
//!
//! All arithmetic is over ℚ. The data matrix `Z` has one row `yᵀ ⊗ xᵀ` per
//! correspondence, and matrices are vectorized row by row, so the epipolar
//! constraint `yᵀ M x = 0` reads `Z · vec(M) = 0`.
//!
//! ```
//! use epicheck::{build_data_matrices, exists_fundamental, Correspondence};
//!
//! let corrs = [Correspondence::from_i64([1, 2], [3, 4])];
//! let data = build_data_matrices(&corrs);
//! let verdict = exists_fundamental(&data.z).unwrap();
//! assert!(verdict.exists);
//! ```

pub mod demazure;
pub mod essential;
pub mod exactla;
pub mod fundamental;
pub mod groebner;
pub mod mat3;
pub mod mpoly;
pub mod oracle;
pub mod rational;
pub mod univariate;
pub mod witness;

pub use essential::{exists_essential, EssentialVerdict, Existence};
pub use exactla::{build_data_matrices, Correspondence, DataMatrices, RatMatrix};
pub use fundamental::{exists_fundamental, exists_fundamental_with, FundamentalOptions, FundamentalVerdict, Reason};
pub use rational::Rational;
pub use witness::Witness;
