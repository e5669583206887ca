//! Exact multipole series for the fully coated sphere with constant
//! impedance: the reference solution every other solver is checked against.
//!
//! Mode matching of `u = e^{ikx.omega} + u^s` against
//! `du/dnu + i lambda u = 0` on `|x| = a` gives
//! `c_n = -(k j_n'(ka) + i lambda j_n(ka)) / (k h_n'(ka) + i lambda h_n(ka))`.

use std::sync::Arc;

use num_complex::Complex64;

use super::types::{Representation, ScatterSolution, SolutionTraces, WaveConfig};
use crate::error::{Error, Result};
use crate::geometry::BoundaryMesh;
use crate::specfun::bessel::radial_table;
use crate::vec3;

const TAIL_TOLERANCE: f64 = 1e-14;

/// Series coefficients `c_0..=c_n` for the impedance sphere.
pub fn impedance_sphere_coeffs(k: f64, radius: f64, lambda: f64, n: usize) -> Result<Vec<Complex64>> {
    if !(k > 0.0) || !(radius > 0.0) {
        return Err(Error::ArgumentOutOfRange(format!(
            "need k > 0 and radius > 0, got k = {k}, a = {radius}"
        )));
    }
    if lambda < 0.0 {
        return Err(Error::ArgumentOutOfRange(format!(
            "impedance constant must be >= 0, got {lambda}"
        )));
    }
    let table = radial_table(n, k * radius)?;
    let il = Complex64::new(0.0, lambda);
    Ok((0..=n)
        .map(|m| {
            let num = k * table.j_prime[m] + il * table.j[m];
            let den = k * table.h_prime(m) + il * table.h(m);
            -num / den
        })
        .collect())
}

/// Exact solution of the direct problem for a fully coated sphere with
/// constant impedance. The truncation degree is chosen so the trailing
/// far-field coefficient drops below `1e-14` of the leading one; `n_cap`
/// bounds the search.
pub fn sphere_series(
    wave: &WaveConfig,
    radius: f64,
    lambda: f64,
    n_cap: usize,
) -> Result<ScatterSolution> {
    let all = impedance_sphere_coeffs(wave.k, radius, lambda, n_cap)?;
    let magnitude: Vec<f64> = all
        .iter()
        .enumerate()
        .map(|(n, c)| (2 * n + 1) as f64 * c.norm())
        .collect();
    let lead = magnitude.iter().cloned().fold(0.0, f64::max);
    let mut n_trunc = None;
    for n in 0..=n_cap {
        if magnitude[n] < TAIL_TOLERANCE * lead {
            n_trunc = Some(n);
            break;
        }
    }
    let n_trunc = n_trunc.ok_or(Error::TruncationInsufficient {
        tail: magnitude[n_cap] / lead,
        n_max: n_cap,
    })?;
    Ok(ScatterSolution {
        wave: *wave,
        representation: Representation::Series {
            radius,
            lambda,
            coeffs: all[..=n_trunc].to_vec(),
        },
        traces: None,
        condition_estimate: None,
        bc_report: None,
    })
}

/// Attach boundary traces evaluated at the nodes of a sphere mesh.
pub fn series_with_traces(
    solution: &ScatterSolution,
    mesh: Arc<BoundaryMesh>,
) -> Result<ScatterSolution> {
    let Representation::Series { radius, coeffs, .. } = &solution.representation else {
        return Err(Error::ArgumentOutOfRange(
            "boundary traces from the modal form need a series solution".into(),
        ));
    };
    let mut u = Vec::with_capacity(mesh.len());
    let mut dnu = Vec::with_capacity(mesh.len());
    for i in mesh.node_indices() {
        let p = mesh.node(i);
        let r = vec3::norm(p);
        if (r - radius).abs() > 1e-8 * radius {
            return Err(Error::ArgumentOutOfRange(format!(
                "mesh node radius {r} is not on the series sphere a = {radius}"
            )));
        }
        let cg = vec3::dot(p, solution.wave.omega) / r;
        let (ui, di) =
            super::types::series_boundary_traces(solution.wave.k, coeffs, *radius, cg)?;
        u.push(ui);
        dnu.push(di);
    }
    let mut out = solution.clone();
    out.traces = Some(SolutionTraces { mesh, u, dnu });
    Ok(out)
}
