//! Exact arithmetic substrate: lattice vectors, big-integer matrices and
//! multivectors in the exterior algebra of `Q^n`.
//!
//! Nothing in here touches floating point. Rank, determinant and kernel
//! computations run over `BigInt` with fraction-free elimination; inverses
//! are computed over `BigRational`.

mod lattice;
mod matrix;
mod multivector;

pub use lattice::LatticeVector;
pub(crate) use matrix::matrix_is_unit;
pub use matrix::{determinant, extend_to_basis, inverse, rank, rank_of_rows, IntMatrix};
pub use multivector::{binomial, k_subsets, kernel_dim_of_wedge_maps, Multivector, Subset};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// Hard limit on the ambient lattice dimension. Exterior powers grow like
/// `C(n, k)`, so anything near this is already far past desk scale.
pub const MAX_DIM: usize = 16;

pub(crate) fn check_dim(n: usize) -> crate::Result<()> {
    if n > MAX_DIM {
        Err(crate::Error::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}
