//! Local limit theorems for triangular arrays with infinitely divisible limits:
//! characteristic exponents, array models, Fourier inversion and convergence rates.

// NaN-rejecting comparisons such as `!(x > 0.0)` are intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod array;
pub mod canonical;
pub mod error;
pub mod experiment;
pub mod fit;
pub mod inversion;
mod par;
pub mod quad;
pub mod rates;
pub mod special;

pub use error::{Error, Result};
pub use par::set_jobs;
