//! Star-shaped surfaces given by a real spherical-harmonic radius map
//! `r(theta, phi) > 0` about the origin.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::harmonics::real_basis_from_table;
use crate::specfun::legendre::AssocLegendre;
use crate::specfun::quadrature::gauss_legendre;
use crate::vec3::{self, Vec3};

/// One real spherical-harmonic coefficient of the radius map.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HarmonicCoeff {
    pub n: usize,
    pub m: i32,
    pub value: f64,
}

/// Descriptor from which a validated [`StarSurface`] is built.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub radial_coeffs: Vec<HarmonicCoeff>,
    /// A priori diameter bound `d`.
    pub diam_bound: f64,
    /// A priori Lipschitz constant `M` of the radius map.
    pub lipschitz_bound: f64,
    /// A priori patch scale `r0` gating local-neighborhood constructions.
    pub patch_scale: f64,
}

impl SurfaceSpec {
    /// Sphere of the given radius (`r = radius * sqrt(4 pi) * Ybar_0^0`).
    pub fn sphere(radius: f64) -> Self {
        Self {
            radial_coeffs: vec![HarmonicCoeff {
                n: 0,
                m: 0,
                value: radius * (4.0 * PI).sqrt(),
            }],
            diam_bound: 2.0 * radius * 1.25,
            lipschitz_bound: 1.0,
            patch_scale: 0.5 * radius,
        }
    }
}

/// Validated star-shaped surface with cached bounds.
#[derive(Debug, Clone)]
pub struct StarSurface {
    coeffs: Vec<HarmonicCoeff>,
    n_max: usize,
    diam_bound: f64,
    lipschitz_bound: f64,
    patch_scale: f64,
    r_min: f64,
    r_max: f64,
    diameter: f64,
    max_gradient: f64,
}

/// Point, outward normal, and area-element factors at a surface parameter.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceFrame {
    pub point: Vec3,
    pub normal: Vec3,
    /// `|y_theta x y_phi|`, the area element in `d theta d phi`.
    pub jacobian_theta_phi: f64,
    /// Area element in `dt d phi` with `t = cos theta` (the `sin theta` factor removed).
    pub jacobian_t_phi: f64,
}

impl StarSurface {
    /// Validate a descriptor on a dense evaluation grid.
    pub fn build(spec: &SurfaceSpec) -> Result<Self> {
        let n_max = spec.radial_coeffs.iter().map(|c| c.n).max().unwrap_or(0);
        for c in &spec.radial_coeffs {
            if c.m.unsigned_abs() as usize > c.n {
                return Err(Error::ArgumentOutOfRange(format!(
                    "radial coefficient order |{}| exceeds degree {}",
                    c.m, c.n
                )));
            }
        }
        let mut surf = Self {
            coeffs: spec.radial_coeffs.clone(),
            n_max,
            diam_bound: spec.diam_bound,
            lipschitz_bound: spec.lipschitz_bound,
            patch_scale: spec.patch_scale,
            r_min: 0.0,
            r_max: 0.0,
            diameter: 0.0,
            max_gradient: 0.0,
        };

        // Dense antipode-symmetric grid: GL in cos(theta) x uniform phi.
        let n_t = 96;
        let n_p = 192;
        let (ts, _) = gauss_legendre(n_t);
        let mut radii = vec![0.0_f64; n_t * n_p];
        let mut r_min = f64::INFINITY;
        let mut r_max: f64 = 0.0;
        let mut max_grad: f64 = 0.0;
        for (i, &t) in ts.iter().enumerate() {
            let theta = t.acos();
            for j in 0..n_p {
                let phi = 2.0 * PI * j as f64 / n_p as f64;
                let (r, g) = surf.radius_and_gradient(theta, phi);
                radii[i * n_p + j] = r;
                r_min = r_min.min(r);
                r_max = r_max.max(r);
                max_grad = max_grad.max(vec3::norm(g));
            }
        }
        if !(r_min > 0.0) {
            return Err(Error::NonPositiveRadius { min_r: r_min });
        }
        // Diameter over antipodal pairs (exact for pairs through the origin).
        let mut diameter: f64 = 0.0;
        for i in 0..n_t {
            for j in 0..n_p {
                let opposite = radii[(n_t - 1 - i) * n_p + (j + n_p / 2) % n_p];
                diameter = diameter.max(radii[i * n_p + j] + opposite);
            }
        }
        if diameter > spec.diam_bound {
            return Err(Error::DiameterExceeded {
                diameter,
                bound: spec.diam_bound,
            });
        }
        if max_grad > spec.lipschitz_bound * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::ArgumentOutOfRange(format!(
                "radius-map gradient {max_grad:.6e} exceeds declared Lipschitz bound {:.6e}",
                spec.lipschitz_bound
            )));
        }
        surf.r_min = r_min;
        surf.r_max = r_max;
        surf.diameter = diameter;
        surf.max_gradient = max_grad;
        Ok(surf)
    }

    pub fn radius(&self, theta: f64, phi: f64) -> f64 {
        let table = AssocLegendre::new(self.n_max, theta);
        self.coeffs
            .iter()
            .map(|c| c.value * real_basis_from_table(&table, c.n, c.m, phi).0)
            .sum()
    }

    /// Radius and its surface gradient as a tangent 3-vector.
    pub fn radius_and_gradient(&self, theta: f64, phi: f64) -> (f64, Vec3) {
        // The gradient components use the theta/phi frame, which degenerates
        // at the poles; nudging theta keeps every quantity finite while
        // changing smooth-surface values at the 1e-8 level only.
        let theta_c = theta.clamp(1e-8, PI - 1e-8);
        let table = AssocLegendre::new(self.n_max, theta_c);
        let mut r = 0.0;
        let mut d_theta = 0.0;
        let mut d_phi_over_sin = 0.0;
        for c in &self.coeffs {
            let (v, dt, dp) = real_basis_from_table(&table, c.n, c.m, phi);
            r += c.value * v;
            d_theta += c.value * dt;
            d_phi_over_sin += c.value * dp;
        }
        let th = vec3::theta_hat(theta_c, phi);
        let ph = vec3::phi_hat(phi);
        let g = vec3::add(vec3::scale(th, d_theta), vec3::scale(ph, d_phi_over_sin));
        (r, g)
    }

    /// Point, outward unit normal, and area elements at `(theta, phi)`.
    pub fn frame(&self, theta: f64, phi: f64) -> SurfaceFrame {
        let (r, g) = self.radius_and_gradient(theta, phi);
        let d = vec3::direction(theta, phi);
        let point = vec3::scale(d, r);
        // y_theta x y_phi = r sin(theta) (r d - g_vec), with g tangent.
        let un = vec3::sub(vec3::scale(d, r), g);
        let norm_un = vec3::norm(un);
        let normal = vec3::scale(un, 1.0 / norm_un);
        let jac_t_phi = r * norm_un;
        SurfaceFrame {
            point,
            normal,
            jacobian_theta_phi: jac_t_phi * theta.sin(),
            jacobian_t_phi: jac_t_phi,
        }
    }

    pub fn point(&self, theta: f64, phi: f64) -> Vec3 {
        vec3::scale(vec3::direction(theta, phi), self.radius(theta, phi))
    }

    /// Signed margin of the star-shape membership test: `|x| - r(xhat)`.
    pub fn outside_margin(&self, p: Vec3) -> f64 {
        let rho = vec3::norm(p);
        if rho == 0.0 {
            return -self.r_min;
        }
        rho - self.radius(vec3::polar_angle(p), vec3::azimuth(p))
    }

    pub fn is_outside(&self, p: Vec3) -> bool {
        self.outside_margin(p) > 0.0
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn diam_bound(&self) -> f64 {
        self.diam_bound
    }

    pub fn lipschitz_bound(&self) -> f64 {
        self.lipschitz_bound
    }

    pub fn patch_scale(&self) -> f64 {
        self.patch_scale
    }

    pub fn max_gradient(&self) -> f64 {
        self.max_gradient
    }

    pub fn harmonic_degree(&self) -> usize {
        self.n_max
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perturbed_spec() -> SurfaceSpec {
        SurfaceSpec {
            radial_coeffs: vec![
                HarmonicCoeff {
                    n: 0,
                    m: 0,
                    value: (4.0 * PI).sqrt(),
                },
                HarmonicCoeff {
                    n: 2,
                    m: 0,
                    value: 0.3,
                },
            ],
            diam_bound: 3.0,
            lipschitz_bound: 2.0,
            patch_scale: 0.5,
        }
    }

    #[test]
    fn sphere_has_unit_radius_everywhere() {
        let s = StarSurface::build(&SurfaceSpec::sphere(1.0)).unwrap();
        for &(t, p) in &[(0.01, 0.0), (1.2, 3.0), (3.1, 5.9)] {
            assert!((s.radius(t, p) - 1.0).abs() < 1e-14);
        }
        assert!((s.diameter() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn perturbed_sphere_r_min_matches_y20_extremum() {
        // min of Ybar_2^0 = -sqrt(5/16pi) at cos(theta) = 0
        let s = StarSurface::build(&perturbed_spec()).unwrap();
        let expected = 1.0 - 0.3 * (5.0 / (16.0 * PI)).sqrt();
        // validation-grid minimum sits within one grid cell of the extremum
        assert!((s.r_min() - expected).abs() < 1e-4, "{}", s.r_min());
        assert!(s.r_min() >= expected - 1e-12);
    }

    #[test]
    fn negative_radius_rejected() {
        let spec = SurfaceSpec {
            radial_coeffs: vec![HarmonicCoeff {
                n: 0,
                m: 0,
                value: -1.2 * (4.0 * PI).sqrt(),
            }],
            diam_bound: 3.0,
            lipschitz_bound: 1.0,
            patch_scale: 0.5,
        };
        assert!(matches!(
            StarSurface::build(&spec),
            Err(Error::NonPositiveRadius { .. })
        ));
    }

    #[test]
    fn oversized_surface_rejected() {
        let mut spec = SurfaceSpec::sphere(2.0);
        spec.diam_bound = 3.0;
        assert!(matches!(
            StarSurface::build(&spec),
            Err(Error::DiameterExceeded { .. })
        ));
    }

    #[test]
    fn sphere_frame_is_radial() {
        let s = StarSurface::build(&SurfaceSpec::sphere(2.0)).unwrap();
        let f = s.frame(PI / 2.0, 0.0);
        assert!(vec3::distance(f.point, [2.0, 0.0, 0.0]) < 1e-13);
        assert!(vec3::distance(f.normal, [1.0, 0.0, 0.0]) < 1e-13);
        assert!((f.jacobian_theta_phi - 4.0).abs() < 1e-12);
    }

    #[test]
    fn normal_orthogonal_to_finite_difference_tangents() {
        let s = StarSurface::build(&perturbed_spec()).unwrap();
        let h = 1e-5;
        for &(t, p) in &[(0.7, 1.3), (2.2, 4.0), (1.5707, 0.3)] {
            let f = s.frame(t, p);
            let tangent_t = vec3::scale(vec3::sub(s.point(t + h, p), s.point(t - h, p)), 0.5 / h);
            let tangent_p = vec3::scale(vec3::sub(s.point(t, p + h), s.point(t, p - h)), 0.5 / h);
            assert!(vec3::dot(f.normal, tangent_t).abs() < 1e-6);
            assert!(vec3::dot(f.normal, tangent_p).abs() < 1e-6);
            assert!(vec3::dot(f.normal, f.point) > 0.0, "outward");
            assert!((vec3::norm(f.normal) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn membership_test_against_nearest_sample_sign() {
        use crate::lowdisc::halton_cube;
        let s = StarSurface::build(&perturbed_spec()).unwrap();
        // Dense surface cloud with normals.
        let n_t = 64;
        let n_p = 128;
        let mut cloud = Vec::new();
        for i in 0..n_t {
            let theta = PI * (i as f64 + 0.5) / n_t as f64;
            for j in 0..n_p {
                let phi = 2.0 * PI * j as f64 / n_p as f64;
                let f = s.frame(theta, phi);
                cloud.push((f.point, f.normal));
            }
        }
        let band = 0.08; // cloud spacing tolerance
        let mut checked = 0usize;
        for q in halton_cube(100_000, 3) {
            let x = [3.0 * q[0] - 1.5, 3.0 * q[1] - 1.5, 3.0 * q[2] - 1.5];
            // Points clearly outside the radial bounds agree with any sane
            // membership oracle; the shell near the surface is what matters.
            let rho = vec3::norm(x);
            if rho > s.r_max() + band {
                assert!(s.is_outside(x));
                continue;
            }
            if rho < s.r_min() - band {
                assert!(!s.is_outside(x));
                continue;
            }
            let (mut best_d, mut best) = (f64::INFINITY, 0usize);
            for (idx, (p, _)) in cloud.iter().enumerate() {
                let d = vec3::distance(x, *p);
                if d < best_d {
                    best_d = d;
                    best = idx;
                }
            }
            if best_d < band {
                continue; // within the tolerance band
            }
            checked += 1;
            let (p, nu) = cloud[best];
            let independent_outside = vec3::dot(vec3::sub(x, p), nu) > 0.0;
            assert_eq!(s.is_outside(x), independent_outside, "x = {x:?}");
        }
        assert!(checked > 10_000);
    }
}
