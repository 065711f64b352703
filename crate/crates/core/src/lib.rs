//! Exact construction and verification of FRT bialgebroids and Hopf algebroids
//! over finite-dimensional base algebras.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod algebra;
pub mod bimodule;
pub mod braiding;
pub mod error;
pub mod face;
pub mod fixtures;
pub mod frt;
pub mod linalg;
pub mod multitensor;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod tensor_ring;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
