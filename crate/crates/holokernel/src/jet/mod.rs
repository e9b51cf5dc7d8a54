//! Pointwise exact jet calculus: curvature from metric jets,
//! normal-coordinate identities, Gaussian moments, Poisson brackets, the
//! Fefferman-Graham recursion, the holographic Gaussian-integral identity,
//! the order r^{-4} parametrix and the Weyl-contraction identities.

pub mod xpoly;
pub mod rng;
pub mod tensor;
pub mod fg;
pub mod symbol;
pub mod gaussian_identity;
pub mod parametrix;
pub mod checks;

pub use rng::SmallRng;
pub use tensor::{curvature_package, JetMetric, Tensor};
pub use xpoly::{Rat, VarSpec, XPoly};
