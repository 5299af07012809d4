//! Cauchy singular integrals with parameters on planar and product domains.
//!
//! The crate evaluates the boundary Cauchy integral `S`, its Plemelj boundary
//! value, the solid Cauchy transform `T`, estimates Log-Hölder seminorms from
//! samples and composes the slice operators into a solution operator for
//! `∂̄u = f` on products of discs.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counterexample;
pub mod dbar;
pub mod error;
pub mod geometry;
pub mod holder;
pub mod operators;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;
