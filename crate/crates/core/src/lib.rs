//! Time stepping for evolution inclusions
//!
//! ```text
//! ẋ(t) ∈ −F(t, x(t)) + f(x(t)) + u(t),   x(0) = x₀,
//! ```
//!
//! with `F(t, ·)` maximal monotone. The solver advances by resolvents
//! `x_{k+1} = (I + h F(t_{k+1}, ·))⁻¹(x_k + …)` and ships the pieces needed
//! around it: convex projections, an LCP toolkit, passivity checks for
//! linear complementarity systems, a-priori bound certificates and
//! brute-force oracles.

pub mod error;
pub mod geometry;
pub mod lcp;
pub mod linalg;
pub mod operators;
pub mod oracle;
pub mod passivity;
pub mod scenario;
pub mod signal;
pub mod timestepper;

pub use error::{Error, Result};
