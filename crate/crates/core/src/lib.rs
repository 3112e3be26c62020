//! Solutions of the spin equation `i dV/dt = (σ·F(t)) V` for a two-component
//! complex spinor `V` driven by a complex, time-dependent field `F`.
//!
//! The crate bundles a catalog of closed-form (field, solution) pairs, the
//! transformations that generate new pairs from old ones, the inverse problem
//! of recovering `F` from `V`, and an adaptive Runge–Kutta oracle used to
//! verify every closed form by residual substitution.

pub mod catalog;
pub mod cli;
pub mod darboux;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod mat2;
pub mod numeric;
pub mod reduction;
pub mod solutions;
pub mod special;
pub mod spinor;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec};
pub use mat2::Mat2;
pub use spinor::{CVec3, Spinor};
