//! Near field to boundary: regularized analytic continuation by a
//! fundamental-solution fit (method of fundamental solutions).
//!
//! The scattered field is fitted as `u^s(x) ~ sum_j c_j phi(x, z_j)` with
//! source points on the surface shrunk radially into the obstacle. The
//! ridge-regularized least-squares problem is solved through the SVD, and
//! the ridge parameter follows the discrepancy principle: the data residual
//! is matched to the propagated-error estimate of the near field.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::backprop::NearFieldAnnulus;
use crate::error::{Error, Result};
use crate::geometry::BoundaryMesh;
use crate::scatter::WaveConfig;
use crate::specfun::kernel::{fundamental_solution, fundamental_solution_grad_x};
use crate::specfun::quadrature::gauss_legendre;
use crate::vec3::{self, Vec3};

/// Fundamental-solution fit configuration.
#[derive(Debug, Clone, Copy)]
pub struct MfsConfig {
    /// Radial shrink factor placing the sources inside the obstacle.
    pub inflation: f64,
    /// Approximate number of source points.
    pub source_count: usize,
    /// Multiplier on the propagated-error estimate in the discrepancy target.
    pub morozov_factor: f64,
    /// Ridge floor relative to the largest singular value. The floor governs
    /// clean-data runs: SVD rounding on the smallest singular directions is
    /// amplified by the inward continuation, so driving the ridge to zero
    /// degrades the boundary trace again below ~1e-8.
    pub alpha_floor: f64,
}

impl Default for MfsConfig {
    fn default() -> Self {
        Self {
            inflation: 0.7,
            source_count: 400,
            morozov_factor: 1.0,
            alpha_floor: 1e-8,
        }
    }
}

/// Continuation diagnostics recorded with the boundary trace.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ContinuationDiagnostics {
    pub alpha: f64,
    pub data_residual: f64,
    pub target_residual: f64,
    pub n_sources: usize,
    pub sigma_max: f64,
    pub sigma_min: f64,
}

/// Total-field boundary traces on the inner impedance portion.
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    pub rho: f64,
    pub node_indices: Vec<usize>,
    pub points: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    pub angles: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
    pub u: Vec<Complex64>,
    pub dnu: Vec<Complex64>,
    pub diagnostics: ContinuationDiagnostics,
}

/// Ridge-regularized least squares through the SVD, with a residual curve
/// monotone in the ridge parameter.
pub struct RidgeSolver {
    u: DMatrix<Complex64>,
    v_t: DMatrix<Complex64>,
    singular: Vec<f64>,
}

impl RidgeSolver {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let svd = matrix.svd(true, true);
        let u = svd.u.ok_or_else(|| {
            Error::IllConditionedFit("SVD did not return the left factor".into())
        })?;
        let v_t = svd.v_t.ok_or_else(|| {
            Error::IllConditionedFit("SVD did not return the right factor".into())
        })?;
        Ok(Self {
            u,
            v_t,
            singular: svd.singular_values.iter().copied().collect(),
        })
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular.iter().cloned().fold(0.0, f64::max)
    }

    pub fn sigma_min(&self) -> f64 {
        self.singular.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Energy of `b` outside the column span (unreachable residual floor).
    fn perp_norm_sq(&self, b: &DVector<Complex64>, beta: &DVector<Complex64>) -> f64 {
        (b.norm_squared() - beta.norm_squared()).max(0.0)
    }

    fn residual_at(&self, beta: &DVector<Complex64>, perp_sq: f64, alpha: f64) -> f64 {
        let mut sum = perp_sq;
        for (q, &s) in self.singular.iter().enumerate() {
            let damp = alpha * alpha / (s * s + alpha * alpha);
            sum += beta[q].norm_sqr() * damp * damp;
        }
        sum.sqrt()
    }

    fn coefficients(&self, beta: &DVector<Complex64>, alpha: f64) -> DVector<Complex64> {
        let mut scaled = beta.clone();
        for (q, &s) in self.singular.iter().enumerate() {
            scaled[q] *= Complex64::new(s / (s * s + alpha * alpha), 0.0);
        }
        self.v_t.adjoint() * scaled
    }

    /// Pick the ridge parameter by bisection on the discrepancy equation
    /// `residual(alpha) = target`; returns `(c, alpha, achieved residual)`.
    pub fn solve_discrepancy(
        &self,
        b: &DVector<Complex64>,
        target: f64,
        alpha_floor: f64,
    ) -> Result<(DVector<Complex64>, f64, f64)> {
        let beta = self.u.adjoint() * b;
        let perp_sq = self.perp_norm_sq(b, &beta);
        let alpha_lo = alpha_floor.max(1e-300);
        let floor_res = self.residual_at(&beta, perp_sq, alpha_lo);
        if target <= floor_res {
            if target > 0.0 && floor_res > 4.0 * target {
                return Err(Error::IllConditionedFit(format!(
                    "discrepancy target {target:.3e} unreachable: residual floor \
                     {floor_res:.3e} at alpha = {alpha_lo:.3e}"
                )));
            }
            return Ok((self.coefficients(&beta, alpha_lo), alpha_lo, floor_res));
        }
        let mut lo = alpha_lo;
        let mut hi = 1e3 * self.sigma_max().max(1.0);
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if self.residual_at(&beta, perp_sq, mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi / lo < 1.0 + 1e-12 {
                break;
            }
        }
        let alpha = (lo * hi).sqrt();
        let res = self.residual_at(&beta, perp_sq, alpha);
        Ok((self.coefficients(&beta, alpha), alpha, res))
    }
}

/// Source points: the surface shrunk radially by the inflation factor.
pub fn mfs_sources(mesh: &BoundaryMesh, inflation: f64, count: usize) -> Result<Vec<Vec3>> {
    if !(inflation > 0.0 && inflation < 1.0) {
        return Err(Error::ArgumentOutOfRange(format!(
            "source inflation factor {inflation} outside (0, 1)"
        )));
    }
    let n_theta = ((count as f64 / 2.0).sqrt().round() as usize).max(4);
    let n_phi = 2 * n_theta;
    let (t, _) = gauss_legendre(n_theta);
    let surface = mesh.surface();
    let mut sources = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = t[i].acos();
        for j in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / n_phi as f64;
            sources.push(vec3::scale(surface.point(theta, phi), inflation));
        }
    }
    Ok(sources)
}

/// Build the weighted collocation matrix of the fundamental-solution fit.
pub fn mfs_matrix(near: &NearFieldAnnulus, k: f64, sources: &[Vec3]) -> DMatrix<Complex64> {
    let m = near.grid.len();
    DMatrix::from_fn(m, sources.len(), |i, j| {
        let x = vec3::scale(near.grid.directions()[i], near.radius);
        let w = near.grid.weights()[i].sqrt();
        w * fundamental_solution(k, x, sources[j]).expect("sources inside")
    })
}

/// Fit the near field and evaluate total-field traces on the inner
/// impedance portion `Gamma_I^rho` of the mesh.
pub fn near_to_boundary(
    near: &NearFieldAnnulus,
    wave: &WaveConfig,
    mesh: &BoundaryMesh,
    rho: f64,
    cfg: &MfsConfig,
) -> Result<BoundaryTrace> {
    let sources = mfs_sources(mesh, cfg.inflation, cfg.source_count)?;
    let matrix = mfs_matrix(near, wave.k, &sources);
    let solver = RidgeSolver::new(matrix)?;
    fit_and_trace(near, wave, mesh, rho, cfg, &sources, &solver)
}

/// Same as [`near_to_boundary`] but reusing a prefactored solver; the sweep
/// command shares one decomposition across all noise realizations.
pub fn fit_and_trace(
    near: &NearFieldAnnulus,
    wave: &WaveConfig,
    mesh: &BoundaryMesh,
    rho: f64,
    cfg: &MfsConfig,
    sources: &[Vec3],
    solver: &RidgeSolver,
) -> Result<BoundaryTrace> {
    let b = DVector::from_iterator(
        near.grid.len(),
        near.values
            .iter()
            .zip(near.grid.weights())
            .map(|(v, w)| v * w.sqrt()),
    );
    let target = cfg.morozov_factor * near.propagated_error;
    let alpha_floor = cfg.alpha_floor * solver.sigma_max();
    let (coeffs, alpha, residual) = solver.solve_discrepancy(&b, target, alpha_floor)?;

    let node_indices = mesh.inner_impedance_nodes(rho);
    if node_indices.is_empty() {
        return Err(Error::ArgumentOutOfRange(format!(
            "no impedance node at arc distance > {rho} from the Dirichlet part"
        )));
    }
    let k = wave.k;
    let mut trace = BoundaryTrace {
        rho,
        node_indices: node_indices.clone(),
        points: Vec::new(),
        normals: Vec::new(),
        angles: Vec::new(),
        weights: Vec::new(),
        u: Vec::new(),
        dnu: Vec::new(),
        diagnostics: ContinuationDiagnostics {
            alpha,
            data_residual: residual,
            target_residual: target,
            n_sources: sources.len(),
            sigma_max: solver.sigma_max(),
            sigma_min: solver.sigma_min(),
        },
    };
    for &i in &node_indices {
        let x = mesh.node(i);
        let nu = mesh.normal(i);
        let mut us = Complex64::new(0.0, 0.0);
        let mut dus = Complex64::new(0.0, 0.0);
        for (j, z) in sources.iter().enumerate() {
            us += coeffs[j] * fundamental_solution(k, x, *z)?;
            let g = fundamental_solution_grad_x(k, x, *z)?;
            dus += coeffs[j] * (g[0] * nu[0] + g[1] * nu[1] + g[2] * nu[2]);
        }
        trace.points.push(x);
        trace.normals.push(nu);
        trace.angles.push(mesh.node_angles(i));
        trace.weights.push(mesh.weight(i));
        trace.u.push(us + wave.incident(x));
        trace
            .dnu
            .push(dus + wave.incident_normal_derivative(x, nu));
    }
    Ok(trace)
}
