//! Numerics for the starlike classes `S*_q(α)` and `S*(q_α)`: truncated power
//! series, closed-form evaluators for the dominant `q_α` and extremal `f_α`,
//! grid membership tests, radius solvers and coefficient bounds.

pub mod cli;
pub mod coeffs;
pub mod error;
pub mod membership;
pub mod numeric;
pub mod radii;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use series::TruncatedSeries;
pub use special::Alpha;
