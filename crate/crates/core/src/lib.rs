//! Floor-decomposed tropical plane curves with exact arithmetic.
//!
//! Geometry is generic over an exact [`Scalar`]; the concrete aliases below
//! fix it to arbitrary-precision rationals, which is what the higher layers
//! (floors, moves, enumeration) use.

pub mod curve;
pub mod floors;
pub mod lattice;
pub mod linalg;
pub mod moves;
pub mod constructor;
pub mod enumeration;
pub mod polygon;
pub mod scalar;

pub use lattice::{LatticePoint, Slope, Vec2};
pub use scalar::{Rational, Scalar};

/// Curve with arbitrary-precision rational coordinates.
pub type Curve = curve::ParametrizedTropicalCurve<Rational>;
/// Curve over 64-bit rationals, for small instances.
pub type Curve64 = curve::ParametrizedTropicalCurve<num_rational::Ratio<i64>>;
