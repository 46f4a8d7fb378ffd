//! Effective mod-ℓ surjectivity for products of elliptic curves over ℚ and
//! over 𝔽_p(t): exact arithmetic, curve point counting, explicit constants
//! and isogeny bounds, finite group theory in GL₂(ℤ/ℓℤ), certificate-producing
//! surjectivity tests, and family-level trace statistics.

pub mod arith;
pub mod bounds;
pub mod curves;
pub mod error;
pub mod family;
pub mod groups;
pub mod surjectivity;

pub use error::{Error, Result};
