//! Integer linear algebra for K-theory: Smith normal form, cokernels,
//! Cuntz-Krieger groups and the groups attached to block sequences.
//!
//! ```
//! use qmark::ktheory::{cokernel, IntegerMatrix};
//!
//! // K0 of the Cuntz algebra O_n is Z/(n-1).
//! let ones: IntegerMatrix = "[[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]]".parse().unwrap();
//! let k0 = cokernel(&ones.transpose().one_minus().unwrap());
//! assert_eq!(k0.to_string(), "Z/3");
//! ```

mod blocks;
mod correspondence;
mod cuntz;
mod group;
mod lattice;
mod matrix;
mod snf;

pub use blocks::{block_matrix, k0_blocks, k0_blocks_direct, BlockK0};
pub use correspondence::{classification_correspondence, CfKind, CorrespondenceReport};
pub use cuntz::{has_positive_power, k0_cuntz_krieger, CuntzKrieger, MatrixFlag};
pub use group::{cokernel, kernel_rank, AbelianGroupPresentation};
pub use lattice::{lattice_lambda, Lattice};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, smith_normal_form_with_budget, SmithForm};
