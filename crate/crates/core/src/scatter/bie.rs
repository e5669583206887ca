//! Direct solver by single-layer boundary-integral collocation.
//!
//! The scattered field is sought as `u^s = S mu` with the single-layer
//! potential `S mu (x) = int phi(x,y) mu(y) ds(y)`. Collocating at the mesh
//! nodes gives, on the Dirichlet part, `S mu = -e^{ik omega.x}` and, on the
//! impedance part, `(-I/2 + K') mu + i lambda S mu = -d/dnu e^{ik omega.x}
//! - i lambda e^{ik omega.x}`.
//!
//! Weakly singular integrals are handled with a floating partition of unity:
//! a smooth cutoff splits each integral into a far part evaluated with the
//! global tensor rule and a near part integrated in polar coordinates on a
//! local chart around the collocation point, where the polar Jacobian cancels
//! the kernel singularity. Density values off the nodes come from tensor
//! Lagrange interpolation on the parameter grid.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use super::types::{BcResidualReport, Representation, ScatterSolution, SolutionTraces, WaveConfig};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryMesh, ImpedanceField, LocalChart, Region};
use crate::lowdisc::halton_cube;
use crate::specfun::kernel::{fundamental_solution, fundamental_solution_grad_x};
use crate::specfun::quadrature::gauss_legendre;
use crate::vec3::{self, Vec3};

/// Tuning knobs of the collocation scheme.
#[derive(Debug, Clone)]
pub struct BieOptions {
    /// Cutoff radius in local mesh spacings.
    pub patch_factor: f64,
    /// Tensor Lagrange interpolation order for the density.
    pub interpolation_order: usize,
    /// Radial Gauss points of the polar correction.
    pub radial_points: usize,
    /// Angular trapezoid points of the polar correction.
    pub angular_points: usize,
    /// Off-node checkpoints for the boundary-condition re-check.
    pub checkpoints: usize,
    /// Largest acceptable checkpoint residual away from the interface band.
    pub residual_threshold: f64,
    /// Polar-angle half-width of the interface band excluded from the gate.
    pub interface_band: f64,
    /// Condition-estimate ceiling before the solve is declared singular.
    pub condition_limit: f64,
}

impl Default for BieOptions {
    fn default() -> Self {
        Self {
            patch_factor: 4.0,
            interpolation_order: 4,
            radial_points: 12,
            angular_points: 24,
            checkpoints: 96,
            residual_threshold: 0.25,
            interface_band: 0.25,
            condition_limit: 1e13,
        }
    }
}

/// Quintic blend: 1 below 0.4, 0 above 1, C^2 in between.
#[inline]
fn cutoff(u: f64) -> f64 {
    if u <= 0.4 {
        1.0
    } else if u >= 1.0 {
        0.0
    } else {
        let t = (u - 0.4) / 0.6;
        1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
    }
}

struct RowTarget {
    point: Vec3,
    normal: Vec3,
    theta: f64,
    phi: f64,
    spacing: f64,
}

/// Discrete rows of the single-layer operator `S` and of the exterior
/// normal-derivative operator `-I/2 + K'` at one on-surface target.
fn operator_rows(
    mesh: &BoundaryMesh,
    k: f64,
    target: &RowTarget,
    opts: &BieOptions,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = mesh.len();
    let mut s_row = vec![Complex64::new(0.0, 0.0); n];
    let mut kp_row = vec![Complex64::new(0.0, 0.0); n];
    let x = target.point;
    let nu = target.normal;
    let r_local = vec3::norm(x);
    let delta = (opts.patch_factor * target.spacing * r_local)
        .min(0.4 * mesh.surface().r_min());

    // Far part: global rule on the smoothly truncated kernel.
    for j in 0..n {
        let y = mesh.node(j);
        let d = vec3::distance(x, y);
        let eta = cutoff(d / delta);
        if eta >= 1.0 {
            continue;
        }
        let w = mesh.weight(j) * (1.0 - eta);
        let phi = fundamental_solution(k, x, y).expect("distinct nodes");
        let g = fundamental_solution_grad_x(k, x, y).expect("distinct nodes");
        s_row[j] += w * phi;
        kp_row[j] += w * (g[0] * nu[0] + g[1] * nu[1] + g[2] * nu[2]);
    }

    // Near part: polar rule on the chart; the rho Jacobian cancels the 1/R.
    let chart = LocalChart::new(mesh.surface(), x);
    let mut s_max = 1.6 * delta / r_local;
    for _ in 0..8 {
        let mut min_rim = f64::INFINITY;
        for j in 0..16 {
            let psi = 2.0 * std::f64::consts::PI * j as f64 / 16.0;
            let p = chart.eval(s_max * psi.cos(), s_max * psi.sin());
            min_rim = min_rim.min(vec3::distance(x, p.point));
        }
        if min_rim > delta {
            break;
        }
        s_max *= 1.3;
    }
    let (gr, wr) = gauss_legendre(opts.radial_points);
    let n_psi = opts.angular_points;
    let dpsi = 2.0 * std::f64::consts::PI / n_psi as f64;
    for (i, t) in gr.iter().enumerate() {
        let rho = 0.5 * (t + 1.0) * s_max;
        let w_rho = 0.5 * s_max * wr[i] * rho * dpsi;
        for jp in 0..n_psi {
            let psi = dpsi * jp as f64;
            let p = chart.eval(rho * psi.cos(), rho * psi.sin());
            let d = vec3::distance(x, p.point);
            let eta = cutoff(d / delta);
            if eta <= 0.0 {
                continue;
            }
            let common = w_rho * p.jacobian * eta;
            let phi = fundamental_solution(k, x, p.point).expect("rho > 0");
            let g = fundamental_solution_grad_x(k, x, p.point).expect("rho > 0");
            let kp = g[0] * nu[0] + g[1] * nu[1] + g[2] * nu[2];
            for &(node, lw) in mesh
                .interpolation_stencil(p.theta, p.phi, opts.interpolation_order)
                .iter()
            {
                s_row[node] += common * lw * phi;
                kp_row[node] += common * lw * kp;
            }
        }
    }

    // Exterior jump of the single-layer normal derivative.
    for &(node, lw) in mesh
        .interpolation_stencil(target.theta, target.phi, opts.interpolation_order)
        .iter()
    {
        kp_row[node] -= 0.5 * lw;
    }

    (s_row, kp_row)
}

fn node_target(mesh: &BoundaryMesh, i: usize) -> RowTarget {
    let (theta, phi) = mesh.node_angles(i);
    RowTarget {
        point: mesh.node(i),
        normal: mesh.normal(i),
        theta,
        phi,
        spacing: mesh.theta_spacing_of_row(i / mesh.n_phi()),
    }
}

fn checkpoint_target(mesh: &BoundaryMesh, theta: f64, phi: f64) -> RowTarget {
    let f = mesh.surface().frame(theta, phi);
    RowTarget {
        point: f.point,
        normal: f.normal,
        theta,
        phi,
        spacing: mesh.theta_spacing_at(theta),
    }
}

/// Solve the direct problem by dense collocation.
pub fn solve_direct_bie(
    mesh: Arc<BoundaryMesh>,
    wave: &WaveConfig,
    impedance: &ImpedanceField,
    opts: &BieOptions,
) -> Result<ScatterSolution> {
    impedance.validate_on_mesh(&mesh)?;
    let n = mesh.len();
    let k = wave.k;

    let lambda: Vec<f64> = mesh
        .node_indices()
        .map(|i| {
            let (t, p) = mesh.node_angles(i);
            impedance.eval(t, p)
        })
        .collect();

    // Assemble the S and (-I/2 + K') rows once; traces reuse them.
    let rows: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..n)
        .into_par_iter()
        .map(|i| operator_rows(&mesh, k, &node_target(&mesh, i), opts))
        .collect();

    let mut a = DMatrix::<Complex64>::zeros(n, n);
    let mut b = DVector::<Complex64>::zeros(n);
    for i in 0..n {
        let target = node_target(&mesh, i);
        let (s_row, kp_row) = &rows[i];
        let inc = wave.incident(target.point);
        match mesh.region(i) {
            Region::Dirichlet => {
                for (j, v) in s_row.iter().enumerate() {
                    a[(i, j)] = *v;
                }
                b[i] = -inc;
            }
            Region::Impedance => {
                let il = Complex64::new(0.0, lambda[i]);
                for j in 0..n {
                    a[(i, j)] = kp_row[j] + il * s_row[j];
                }
                b[i] = -(wave.incident_normal_derivative(target.point, target.normal)
                    + il * inc);
            }
        }
    }

    let lu = a.lu();
    let u_factor = lu.u();
    let diag: Vec<f64> = (0..n).map(|i| u_factor[(i, i)].norm()).collect();
    drop(u_factor);
    let dmax = diag.iter().cloned().fold(0.0, f64::max);
    let dmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let cond_estimate = if dmin > 0.0 { dmax / dmin } else { f64::INFINITY };
    if !cond_estimate.is_finite() || cond_estimate > opts.condition_limit {
        return Err(Error::SingularSystem { cond_estimate });
    }
    let density_vec = lu
        .solve(&b)
        .ok_or(Error::SingularSystem { cond_estimate })?;
    let density: Vec<Complex64> = density_vec.iter().copied().collect();

    // Boundary traces from the jump relations.
    let traces: Vec<(Complex64, Complex64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let target = node_target(&mesh, i);
            let (s_row, kp_row) = &rows[i];
            let us: Complex64 = s_row.iter().zip(&density).map(|(a, m)| a * m).sum();
            let dus: Complex64 = kp_row.iter().zip(&density).map(|(a, m)| a * m).sum();
            let u = us + wave.incident(target.point);
            let dnu = dus + wave.incident_normal_derivative(target.point, target.normal);
            (u, dnu)
        })
        .collect();
    drop(rows);

    // Boundary-condition re-check at off-node surface points.
    let cap_angle = mesh.partition().cap_angle();
    let checkpoints: Vec<(f64, f64, f64, f64)> = halton_cube(opts.checkpoints, 11)
        .into_par_iter()
        .map(|q| {
            let theta = (1.0 - 2.0 * q[0]).clamp(-1.0, 1.0).acos();
            let phi = 2.0 * std::f64::consts::PI * q[1];
            let target = checkpoint_target(&mesh, theta, phi);
            let (s_row, kp_row) = operator_rows(&mesh, k, &target, opts);
            let us: Complex64 = s_row.iter().zip(&density).map(|(a, m)| a * m).sum();
            let dus: Complex64 = kp_row.iter().zip(&density).map(|(a, m)| a * m).sum();
            let inc = wave.incident(target.point);
            let residual = match mesh.partition().region(theta) {
                Region::Dirichlet => (us + inc).norm(),
                Region::Impedance => {
                    let u = us + inc;
                    let dnu =
                        dus + wave.incident_normal_derivative(target.point, target.normal);
                    let il = Complex64::new(0.0, impedance.eval(theta, phi));
                    (dnu + il * u).norm()
                }
            };
            let interface_distance = cap_angle.map_or(f64::INFINITY, |c| (theta - c).abs());
            (theta, phi, residual, interface_distance)
        })
        .collect();
    let max_away = checkpoints
        .iter()
        .filter(|c| c.3 > opts.interface_band)
        .map(|c| c.2)
        .fold(0.0, f64::max);
    if max_away > opts.residual_threshold {
        return Err(Error::ResolutionTooCoarse(format!(
            "boundary-condition residual {max_away:.3e} at off-node checkpoints \
             exceeds {:.3e}",
            opts.residual_threshold
        )));
    }

    Ok(ScatterSolution {
        wave: *wave,
        representation: Representation::SingleLayer {
            mesh: mesh.clone(),
            density,
        },
        traces: Some(SolutionTraces {
            mesh: mesh.clone(),
            u: traces.iter().map(|t| t.0).collect(),
            dnu: traces.iter().map(|t| t.1).collect(),
        }),
        condition_estimate: Some(cond_estimate),
        bc_report: Some(BcResidualReport {
            checkpoints,
            max_away_from_interface: max_away,
        }),
    })
}
