//! Wave configuration, scattering solutions, and far-field patterns.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::BoundaryMesh;
use crate::sphgrid::{ShCoeffs, SphereGrid};
use crate::specfun::bessel::radial_table;
use crate::specfun::legendre::legendre_p_array;
use crate::vec3::{self, Vec3};

/// Incident plane wave: wavenumber and unit direction.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WaveConfig {
    pub k: f64,
    pub omega: Vec3,
}

impl WaveConfig {
    pub fn new(k: f64, omega: Vec3) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::ArgumentOutOfRange(format!(
                "wavenumber must be positive, got {k}"
            )));
        }
        let n = vec3::norm(omega);
        if n < 1e-14 {
            return Err(Error::ArgumentOutOfRange(
                "incident direction must be nonzero".into(),
            ));
        }
        Ok(Self {
            k,
            omega: vec3::scale(omega, 1.0 / n),
        })
    }

    /// `e^{i k x . omega}`.
    #[inline]
    pub fn incident(&self, x: Vec3) -> Complex64 {
        Complex64::new(0.0, self.k * vec3::dot(x, self.omega)).exp()
    }

    /// Normal derivative of the incident wave along `nu`.
    #[inline]
    pub fn incident_normal_derivative(&self, x: Vec3, nu: Vec3) -> Complex64 {
        Complex64::new(0.0, self.k * vec3::dot(nu, self.omega)) * self.incident(x)
    }
}

/// Which field to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldWant {
    Total,
    Scattered,
}

/// How the scattered field is represented away from the boundary.
#[derive(Debug, Clone)]
pub enum Representation {
    /// Sphere multipole series `u^s = sum (2n+1) i^n c_n h_n(kr) P_n(cos gamma)`.
    Series {
        radius: f64,
        lambda: f64,
        coeffs: Vec<Complex64>,
    },
    /// Single-layer potential with nodal density on the quadrature mesh.
    SingleLayer {
        mesh: Arc<BoundaryMesh>,
        density: Vec<Complex64>,
    },
}

/// Discrete boundary traces of the total field.
#[derive(Debug, Clone)]
pub struct SolutionTraces {
    pub mesh: Arc<BoundaryMesh>,
    pub u: Vec<Complex64>,
    pub dnu: Vec<Complex64>,
}

/// Residuals of the boundary condition re-evaluated off the collocation nodes.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct BcResidualReport {
    /// `(theta, phi, residual, arc distance to the coating interface)`.
    pub checkpoints: Vec<(f64, f64, f64, f64)>,
    /// Largest residual among checkpoints away from the interface band.
    pub max_away_from_interface: f64,
}

/// A solved exterior scattering problem.
#[derive(Debug, Clone)]
pub struct ScatterSolution {
    pub wave: WaveConfig,
    pub representation: Representation,
    pub traces: Option<SolutionTraces>,
    pub condition_estimate: Option<f64>,
    pub bc_report: Option<BcResidualReport>,
}

impl ScatterSolution {
    /// True when the point lies strictly outside the obstacle closure.
    pub fn is_exterior(&self, p: Vec3) -> bool {
        match &self.representation {
            Representation::Series { radius, .. } => vec3::norm(p) > *radius,
            Representation::SingleLayer { mesh, .. } => mesh.surface().is_outside(p),
        }
    }

    fn require_exterior(&self, points: &[Vec3]) -> Result<()> {
        for p in points {
            if !self.is_exterior(*p) {
                return Err(Error::PointInsideObstacle(p[0], p[1], p[2]));
            }
        }
        Ok(())
    }

    /// Evaluate the scattered or total field at exterior points.
    pub fn eval(&self, points: &[Vec3], want: FieldWant) -> Result<Vec<Complex64>> {
        self.require_exterior(points)?;
        let k = self.wave.k;
        let mut values = match &self.representation {
            Representation::Series { coeffs, .. } => points
                .iter()
                .map(|&p| {
                    let r = vec3::norm(p);
                    let cg = vec3::dot(p, self.wave.omega) / r;
                    series_scattered(k, coeffs, r, cg)
                })
                .collect::<Result<Vec<_>>>()?,
            Representation::SingleLayer { mesh, density } => points
                .iter()
                .map(|&p| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in mesh.node_indices() {
                        let y = mesh.node(j);
                        let phi =
                            crate::specfun::kernel::fundamental_solution(k, p, y)?;
                        acc += mesh.weight(j) * phi * density[j];
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()?,
        };
        if want == FieldWant::Total {
            for (v, p) in values.iter_mut().zip(points) {
                *v += self.wave.incident(*p);
            }
        }
        Ok(values)
    }

    /// Far-field pattern on a quadrature grid of directions.
    pub fn far_field(&self, grid: &Arc<SphereGrid>) -> FarFieldPattern {
        let k = self.wave.k;
        let values = match &self.representation {
            Representation::Series { coeffs, .. } => grid
                .directions()
                .iter()
                .map(|&d| series_far_field(k, coeffs, vec3::dot(d, self.wave.omega)))
                .collect(),
            Representation::SingleLayer { mesh, density } => {
                let scale = 1.0 / (4.0 * std::f64::consts::PI);
                grid.directions()
                    .iter()
                    .map(|&d| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for j in mesh.node_indices() {
                            let y = mesh.node(j);
                            let phase = Complex64::new(0.0, -k * vec3::dot(d, y)).exp();
                            acc += mesh.weight(j) * phase * density[j];
                        }
                        acc * scale
                    })
                    .collect()
            }
        };
        FarFieldPattern {
            grid: grid.clone(),
            values,
            epsilon: 0.0,
        }
    }

    /// Total-field boundary trace at an arbitrary surface parameter.
    ///
    /// Series solutions evaluate the modal closed form; single-layer
    /// solutions interpolate the nodal traces.
    pub fn boundary_value(&self, theta: f64, phi: f64) -> Result<Complex64> {
        match &self.representation {
            Representation::Series {
                radius, coeffs, ..
            } => {
                let d = vec3::direction(theta, phi);
                let cg = vec3::dot(d, self.wave.omega);
                let (u, _) = series_boundary_traces(self.wave.k, coeffs, *radius, cg)?;
                Ok(u)
            }
            Representation::SingleLayer { mesh, .. } => {
                let traces = self.traces.as_ref().ok_or_else(|| {
                    Error::ArgumentOutOfRange(
                        "single-layer solution carries no boundary traces".into(),
                    )
                })?;
                Ok(mesh.interp_complex(&traces.u, theta, phi, 4))
            }
        }
    }

    pub fn series_coeffs(&self) -> Option<&[Complex64]> {
        match &self.representation {
            Representation::Series { coeffs, .. } => Some(coeffs),
            Representation::SingleLayer { .. } => None,
        }
    }
}

/// `u^s` of the sphere series at radius `r >= a` and `cos gamma`.
pub(crate) fn series_scattered(
    k: f64,
    coeffs: &[Complex64],
    r: f64,
    cos_gamma: f64,
) -> Result<Complex64> {
    let n_max = coeffs.len().saturating_sub(1);
    let table = radial_table(n_max, k * r)?;
    let p = legendre_p_array(n_max, cos_gamma)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut i_pow = Complex64::new(1.0, 0.0);
    for n in 0..=n_max {
        acc += (2 * n + 1) as f64 * i_pow * coeffs[n] * table.h(n) * p[n];
        i_pow *= Complex64::new(0.0, 1.0);
    }
    Ok(acc)
}

/// Far field of the sphere series: `(1/(ik)) sum (2n+1) c_n P_n(cos gamma)`.
pub(crate) fn series_far_field(k: f64, coeffs: &[Complex64], cos_gamma: f64) -> Complex64 {
    let n_max = coeffs.len().saturating_sub(1);
    let p = legendre_p_array(n_max, cos_gamma.clamp(-1.0, 1.0)).expect("clamped");
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..=n_max {
        acc += (2 * n + 1) as f64 * coeffs[n] * p[n];
    }
    acc / Complex64::new(0.0, k)
}

/// Total-field boundary traces `(u, du/dnu)` of the sphere series.
pub(crate) fn series_boundary_traces(
    k: f64,
    coeffs: &[Complex64],
    radius: f64,
    cos_gamma: f64,
) -> Result<(Complex64, Complex64)> {
    let n_max = coeffs.len().saturating_sub(1);
    let table = radial_table(n_max, k * radius)?;
    let p = legendre_p_array(n_max, cos_gamma)?;
    let mut u = Complex64::new(0.0, 0.0);
    let mut dnu = Complex64::new(0.0, 0.0);
    let mut i_pow = Complex64::new(1.0, 0.0);
    for n in 0..=n_max {
        let w = (2 * n + 1) as f64 * i_pow * p[n];
        u += w * (table.j[n] + coeffs[n] * table.h(n));
        dnu += w * k * (table.j_prime[n] + coeffs[n] * table.h_prime(n));
        i_pow *= Complex64::new(0.0, 1.0);
    }
    Ok((u, dnu))
}

/// Complex far-field samples on a sphere quadrature grid, with the noise
/// level the samples are known to carry (`0` for synthetic clean data).
#[derive(Debug, Clone)]
pub struct FarFieldPattern {
    pub grid: Arc<SphereGrid>,
    pub values: Vec<Complex64>,
    pub epsilon: f64,
}

impl FarFieldPattern {
    /// Quadrature `L2(S2)` norm.
    pub fn l2_norm(&self) -> f64 {
        self.grid.l2_norm(&self.values)
    }

    /// `L2(S2)` norm of the difference of two patterns on the same grid.
    pub fn l2_diff(&self, other: &Self) -> Result<f64> {
        if !self.grid.same_layout(&other.grid) {
            return Err(Error::GridMismatch(format!(
                "{}x{} vs {}x{}",
                self.grid.n_theta(),
                self.grid.n_phi(),
                other.grid.n_theta(),
                other.grid.n_phi()
            )));
        }
        let diff: Vec<Complex64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.grid.l2_norm(&diff))
    }

    /// Spherical-harmonic analysis of the samples.
    pub fn sh_coeffs(&self, n_max: usize) -> Result<ShCoeffs> {
        self.grid.analyze(&self.values, n_max)
    }
}
