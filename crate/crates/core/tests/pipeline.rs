//! End-to-end reconstruction checks on the canonical coated sphere:
//! far field -> near field -> boundary traces -> impedance.

use std::sync::Arc;

use impedlab_core::geometry::{
    build_quadrature, CoatingPartition, ImpedanceField, StarSurface, SurfaceSpec,
};
use impedlab_core::inverse::{
    add_noise, default_trust_threshold, far_to_near, impedance_error, mfs_matrix, mfs_sources,
    near_to_boundary, recover_impedance, ErrorNorm, MfsConfig, RidgeSolver, TruncationPolicy,
};
use impedlab_core::scatter::{series_with_traces, sphere_series, WaveConfig};
use impedlab_core::sphgrid::SphereGrid;
use num_complex::Complex64;

fn setup() -> (
    WaveConfig,
    Arc<impedlab_core::geometry::BoundaryMesh>,
    impedlab_core::scatter::ScatterSolution,
    impedlab_core::scatter::FarFieldPattern,
) {
    let wave = WaveConfig::new(1.0, [0.0, 0.0, 1.0]).unwrap();
    let surface = Arc::new(StarSurface::build(&SurfaceSpec::sphere(1.0)).unwrap());
    let mesh = Arc::new(
        build_quadrature(surface, CoatingPartition::FullyImpedance, 16, 32, 1.0).unwrap(),
    );
    let sol = sphere_series(&wave, 1.0, 1.0, 40).unwrap();
    let grid = SphereGrid::build(32, 64).unwrap();
    let pattern = sol.far_field(&grid);
    (wave, mesh, sol, pattern)
}

#[test]
fn noiseless_pipeline_recovers_constant_impedance() {
    let (wave, mesh, sol, pattern) = setup();
    let near = far_to_near(&pattern, wave.k, 3.0, 2.0, &TruncationPolicy::default()).unwrap();
    assert!(near.propagated_error == 0.0);

    let trace = near_to_boundary(&near, &wave, &mesh, 0.1, &MfsConfig::default()).unwrap();

    // Continuation quality: compare u against the exact series traces.
    let exact = series_with_traces(&sol, mesh.clone()).unwrap();
    let exact_traces = exact.traces.as_ref().unwrap();
    let mut max_u_err: f64 = 0.0;
    for (row, &i) in trace.node_indices.iter().enumerate() {
        max_u_err = max_u_err.max((trace.u[row] - exact_traces.u[i]).norm());
    }
    assert!(max_u_err < 1e-4, "boundary trace error {max_u_err:.3e}");

    let tau = default_trust_threshold(&trace);
    let rec = recover_impedance(&trace, tau).unwrap();
    let truth = ImpedanceField::constant(1.0);
    let sup = impedance_error(&truth, &trace, &rec, ErrorNorm::Sup).unwrap();
    assert!(sup < 1e-2, "noiseless sup error {sup:.3e}");
    assert!(rec.max_imag_residual < 1e-2);
}

#[test]
fn mfs_reproduces_a_field_radiated_by_one_of_its_sources() {
    let (wave, mesh, _, pattern) = setup();
    let sources = mfs_sources(&mesh, 0.7, 400).unwrap();
    let z_star = sources[37];

    // Synthesize near-field data of phi(., z*) on the annulus grid.
    let near0 = far_to_near(&pattern, wave.k, 3.0, 2.0, &TruncationPolicy::default()).unwrap();
    let mut near = near0.clone();
    for (v, d) in near.values.iter_mut().zip(near.grid.directions()) {
        let x = [3.0 * d[0], 3.0 * d[1], 3.0 * d[2]];
        *v = impedlab_core::specfun::fundamental_solution(wave.k, x, z_star).unwrap();
    }
    near.propagated_error = 0.0;

    let matrix = mfs_matrix(&near, wave.k, &sources);
    let solver = RidgeSolver::new(matrix.clone()).unwrap();
    let b = nalgebra::DVector::from_iterator(
        near.grid.len(),
        near.values
            .iter()
            .zip(near.grid.weights())
            .map(|(v, w)| v * w.sqrt()),
    );
    // "machine precision" here means the rounding floor of the SVD of an
    // operator with condition ~1e16, not raw f64 epsilon
    let (coeffs, _, residual) = solver.solve_discrepancy(&b, 0.0, 1e-13).unwrap();
    assert!(residual < 1e-8, "representation contains truth: {residual:.3e}");
    // the fitted field matches the data at off-grid checkpoints
    let x = [0.0, 2.2, 1.1];
    let mut fit = Complex64::new(0.0, 0.0);
    for (j, z) in sources.iter().enumerate() {
        fit += coeffs[j] * impedlab_core::specfun::fundamental_solution(wave.k, x, *z).unwrap();
    }
    let exact = impedlab_core::specfun::fundamental_solution(wave.k, x, z_star).unwrap();
    assert!((fit - exact).norm() < 1e-8, "{:.3e}", (fit - exact).norm());
}

#[test]
fn noise_amplifies_through_the_continuation() {
    let (wave, mesh, sol, pattern) = setup();
    let noisy = add_noise(&pattern, 1e-3, 7);
    let near = far_to_near(&noisy, wave.k, 3.0, 2.0, &TruncationPolicy::default()).unwrap();
    let trace = near_to_boundary(&near, &wave, &mesh, 0.1, &MfsConfig::default()).unwrap();

    // near-field error actually incurred
    let exact_near: Vec<Complex64> = {
        let pts: Vec<_> = near
            .grid
            .directions()
            .iter()
            .map(|d| [3.0 * d[0], 3.0 * d[1], 3.0 * d[2]])
            .collect();
        impedlab_core::scatter::eval_field(&sol, &pts, impedlab_core::scatter::FieldWant::Scattered)
            .unwrap()
    };
    let near_err = {
        let diff: Vec<Complex64> = near
            .values
            .iter()
            .zip(&exact_near)
            .map(|(a, b)| a - b)
            .collect();
        near.grid.l2_norm(&diff)
    };

    let exact = series_with_traces(&sol, mesh.clone()).unwrap();
    let exact_traces = exact.traces.as_ref().unwrap();
    let mut sup_boundary_err: f64 = 0.0;
    for (row, &i) in trace.node_indices.iter().enumerate() {
        sup_boundary_err = sup_boundary_err.max((trace.u[row] - exact_traces.u[i]).norm());
    }
    assert!(
        sup_boundary_err > near_err,
        "ill-posedness: boundary {sup_boundary_err:.3e} vs near {near_err:.3e}"
    );
}
