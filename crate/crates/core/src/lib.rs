//! Holomorphic polyvector fields on smooth complete toric varieties.
//!
//! Given a smooth complete fan, the space of holomorphic `k`-vector fields
//! splits into torus weight spaces indexed by the lattice points of the
//! polytope `P = {I : <I, e_t> ≥ -1}`. A point in the relative interior of a
//! codimension-`i` face contributes a space of dimension `C(n-i, k-i)` (zero
//! for `i > k`), spanned by the wedge of its tight rays times wedges of
//! complementary vectors.
//!
//! [`pvf`] computes these bases and dimensions; [`oracle`] recomputes the
//! dimensions by two unrelated routes and sweeps a shell of weights around
//! the polytope; [`methods`] exposes all three routes behind one trait.
//!
//! ```
//! use toric_pvf::{generators, model::ToricModel};
//!
//! let model = ToricModel::new(generators::projective_space(2)?)?;
//! assert_eq!(model.dimension_table().totals(), vec![1, 8, 10]);
//! # Ok::<(), toric_pvf::Error>(())
//! ```

pub mod classify;
pub mod cli;
mod error;
pub mod exact_linalg;
pub mod fan;
pub mod generators;
pub mod methods;
pub mod model;
pub mod oracle;
pub mod polytope;
pub mod pvf;

pub use error::{Error, Result};
