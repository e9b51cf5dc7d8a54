//! holokernel: exact-arithmetic verification of GJMS building-block
//! combinatorics, Poincare-Einstein power series on model geometries, heat
//! kernel coefficients of the holographic Laplacian by independent routes,
//! Q-curvature recursions, conformal Hessian forms and a pointwise jet
//! calculus laboratory.
//!
//! Every computation is exact: arbitrary-precision rationals, optionally
//! tagged with a power of pi, and multivariate polynomials in named symbols.

pub mod scalar;
pub mod ring;
pub mod series;
pub mod gjms;
pub mod models;
pub mod spheres;
pub mod heat;
pub mod hessian;
pub mod jet;
pub mod report;
pub mod suites;
pub mod cli;

pub use scalar::ExactScalar;
pub use ring::{RingElement, Sym};
pub use series::EvenSeries;
