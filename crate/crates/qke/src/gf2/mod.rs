//! Dense linear algebra over GF(2).
//!
//! Vectors and matrices are bit-packed into 64-bit words. All operations are
//! deterministic: identical inputs give bit-identical outputs across runs and
//! platforms. Values are immutable in practice (operations return new values),
//! so they are safe to share across threads.

mod bits;
mod elim;
mod text;

pub use bits::{BitMatrix, BitVector};
pub use elim::{
    complete_basis, invert, nullspace_basis, rank, reduce_to_corner_identity, solve_coordinates,
    CornerReduction,
};
pub(crate) use elim::{solve_row_combination, IndependentSet};
