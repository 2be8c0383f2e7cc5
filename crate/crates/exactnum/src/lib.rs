//! Exact arithmetic substrate: rationals, integer/rational polynomials,
//! irreducibility over Q, composed products, dense rational matrices and
//! certified real/complex root isolation.
//!
//! Everything here is deterministic and immutable after construction.
//! Refinement methods return new values instead of mutating.

pub mod composed;
pub mod eigen;
pub mod error;
pub mod factor;
pub mod identify;
pub mod interval;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod rational;
pub mod roots;

pub use composed::composed_product_poly;
pub use eigen::{eigenvalue_magnitude_profile, MagnitudeClass, MagnitudeEnclosure};
pub use error::{ExactError, Result};
pub use factor::is_irreducible;
pub use interval::{ComplexBox, Interval};
pub use matrix::RationalMatrix;
pub use poly::{IntPoly, RatPoly};
pub use rational::Rational;
pub use roots::{isolate_roots, ComplexAlgebraic, RealAlgebraic, RootSet};

/// Default cap for precision escalation, in bits.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;
