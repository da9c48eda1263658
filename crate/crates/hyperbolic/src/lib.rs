//! Analysis over the hyperbolic (split-complex) number ring.
//!
//! The crate provides the ring arithmetic itself, power-series elementary
//! functions, numeric differentiation with the hyperbolic Cauchy-Riemann
//! conditions, contour integration with principal-value and divergence
//! handling, multivalued square roots, small Clifford / geometric algebras
//! including the bidimensional Minkowski algebra, the d'Alembert
//! wave-equation correspondence, and an expression parser used by the
//! `hyp` command-line front end.

pub mod curve;
pub mod diff;
pub mod expr;
pub mod number;
pub mod quad;
pub mod roots;
pub mod specfun;
pub mod suite;
pub mod wave;

pub mod clifford;
pub mod contour;
pub use curve::Curve;
pub use diff::{Field2, GridSpec};
pub use roots::RootSet;
pub use number::{HNumber, IdempotentPair, Quadrant};
pub use specfun::SeriesConfig;
