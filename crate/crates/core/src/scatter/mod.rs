//! Direct problem: boundary-integral collocation solver, the exact
//! sphere-series reference, and near/far field evaluation.

pub mod bie;
pub mod series;
pub mod types;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::sphgrid::SphereGrid;
use crate::vec3::Vec3;

pub use bie::{solve_direct_bie, BieOptions};
pub use series::{impedance_sphere_coeffs, series_with_traces, sphere_series};
pub use types::{
    BcResidualReport, FarFieldPattern, FieldWant, Representation, ScatterSolution,
    SolutionTraces, WaveConfig,
};

/// Evaluate the scattered or total field at exterior points.
pub fn eval_field(
    solution: &ScatterSolution,
    points: &[Vec3],
    want: FieldWant,
) -> Result<Vec<Complex64>> {
    solution.eval(points, want)
}

/// Far-field pattern of a solution on a direction grid.
pub fn eval_far_field(solution: &ScatterSolution, grid: &Arc<SphereGrid>) -> FarFieldPattern {
    solution.far_field(grid)
}

/// Quadrature `L2(S2)` norm of a far-field pattern.
pub fn l2_sphere_norm(pattern: &FarFieldPattern) -> f64 {
    pattern.l2_norm()
}

/// `L2(S2)` distance of two patterns on the same grid.
pub fn l2_sphere_diff(a: &FarFieldPattern, b: &FarFieldPattern) -> Result<f64> {
    a.l2_diff(b)
}
