//! Numerical laboratory for exterior Helmholtz scattering by a partially
//! coated obstacle with an impedance boundary condition.
//!
//! The crate solves the direct scattering problem by boundary-integral
//! collocation (with an exact sphere-series reference solution), reconstructs
//! the surface impedance from noisy far-field data through a
//! far-field -> near-field -> boundary -> impedance pipeline, and provides a
//! suite of probes for quantitative unique-continuation estimates: doubling
//! inequalities, three-spheres log-convexity, reverse Holder / A_p products,
//! lower bounds away from the obstacle, and log-type stability fits.

pub mod error;
pub mod geometry;
pub mod inverse;
pub mod lowdisc;
pub mod quantlab;
pub mod scatter;
pub mod specfun;
pub mod sphgrid;
pub mod vec3;

pub use error::{Error, Result};
