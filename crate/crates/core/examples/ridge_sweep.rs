//! Boundary-trace error of the fundamental-solution continuation as a
//! function of the ridge parameter, for clean and noisy data.
//!
//! ```bash
//! cargo run --release --example ridge_sweep
//! ```

use std::sync::Arc;

use impedlab_core::geometry::{build_quadrature, CoatingPartition, StarSurface, SurfaceSpec};
use impedlab_core::inverse::{add_noise, far_to_near, mfs_matrix, mfs_sources, TruncationPolicy};
use impedlab_core::scatter::{series_with_traces, sphere_series, WaveConfig};
use impedlab_core::specfun::{fundamental_solution, fundamental_solution_grad_x};
use impedlab_core::sphgrid::SphereGrid;
use impedlab_core::vec3;
use nalgebra::DVector;
use num_complex::Complex64;

fn main() {
    let wave = WaveConfig::new(1.0, [0.0, 0.0, 1.0]).unwrap();
    let surface = Arc::new(StarSurface::build(&SurfaceSpec::sphere(1.0)).unwrap());
    let mesh = Arc::new(
        build_quadrature(surface, CoatingPartition::FullyImpedance, 16, 32, 1.0).unwrap(),
    );
    let sol = sphere_series(&wave, 1.0, 1.0, 40).unwrap();
    let grid = SphereGrid::build(32, 64).unwrap();
    let pattern = sol.far_field(&grid);
    let exact = series_with_traces(&sol, mesh.clone()).unwrap();
    let exact_traces = exact.traces.as_ref().unwrap();

    for eps in [0.0, 1e-4, 1e-2] {
        let data = if eps > 0.0 { add_noise(&pattern, eps, 3) } else { pattern.clone() };
        let near = far_to_near(&data, wave.k, 3.0, 2.0, &TruncationPolicy::default()).unwrap();
        let sources = mfs_sources(&mesh, 0.7, 400).unwrap();
        let matrix = mfs_matrix(&near, wave.k, &sources);
        let svd = matrix.clone().svd(true, true);
        let u = svd.u.as_ref().unwrap();
        let vt = svd.v_t.as_ref().unwrap();
        let s = &svd.singular_values;
        let b = DVector::from_iterator(
            near.grid.len(),
            near.values
                .iter()
                .zip(near.grid.weights())
                .map(|(v, w)| v * w.sqrt()),
        );
        let beta = u.adjoint() * &b;
        println!(
            "eps = {eps:.1e}  n_used = {}  prop_err = {:.3e}  sigma_max = {:.3e}",
            near.n_used, near.propagated_error, s[0]
        );
        println!("  alpha_rel     residual      sup u err     sup dnu err");
        for alpha_rel in [1e-4, 1e-5, 1e-6, 1e-7, 3e-8, 1e-8, 1e-9, 1e-10, 1e-12] {
            let alpha = alpha_rel * s[0];
            let mut scaled = beta.clone();
            for q in 0..s.len() {
                scaled[q] *= Complex64::new(s[q] / (s[q] * s[q] + alpha * alpha), 0.0);
            }
            let c = vt.adjoint() * &scaled;
            // residual
            let mut res_sq = (b.norm_squared() - beta.norm_squared()).max(0.0);
            for q in 0..s.len() {
                let damp = alpha * alpha / (s[q] * s[q] + alpha * alpha);
                res_sq += beta[q].norm_sqr() * damp * damp;
            }
            // boundary errors
            let mut sup_u: f64 = 0.0;
            let mut sup_dnu: f64 = 0.0;
            for i in mesh.node_indices() {
                let x = mesh.node(i);
                let nu = mesh.normal(i);
                let mut us = Complex64::new(0.0, 0.0);
                let mut dus = Complex64::new(0.0, 0.0);
                for (j, z) in sources.iter().enumerate() {
                    us += c[j] * fundamental_solution(wave.k, x, *z).unwrap();
                    let g = fundamental_solution_grad_x(wave.k, x, *z).unwrap();
                    dus += c[j] * (g[0] * nu[0] + g[1] * nu[1] + g[2] * nu[2]);
                }
                let u_tot = us + wave.incident(x);
                let dnu_tot = dus + wave.incident_normal_derivative(x, nu);
                sup_u = sup_u.max((u_tot - exact_traces.u[i]).norm());
                sup_dnu = sup_dnu.max((dnu_tot - exact_traces.dnu[i]).norm());
                let _ = vec3::norm(x);
            }
            println!(
                "  {alpha_rel:9.1e}   {:.4e}   {sup_u:.4e}   {sup_dnu:.4e}",
                res_sq.sqrt()
            );
        }
    }
}
