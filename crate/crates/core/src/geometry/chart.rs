//! Local surface chart around a boundary point, via central projection of a
//! tangent-plane disk onto the unit sphere of directions. The chart has no
//! coordinate singularity anywhere (in particular not at the poles of the
//! global parameterization), which makes it the right tool for the polar
//! singularity-correction quadratures.

use super::surface::StarSurface;
use crate::vec3::{self, Vec3};

pub struct LocalChart<'a> {
    surface: &'a StarSurface,
    center: Vec3,
    e1: Vec3,
    e2: Vec3,
}

#[derive(Debug, Clone, Copy)]
pub struct ChartPoint {
    pub point: Vec3,
    /// Polar angle of the direction, for density interpolation.
    pub theta: f64,
    /// Azimuth of the direction.
    pub phi: f64,
    /// Area element `|dY/ds1 x dY/ds2|`.
    pub jacobian: f64,
}

impl<'a> LocalChart<'a> {
    pub fn new(surface: &'a StarSurface, center_dir: Vec3) -> Self {
        let center = vec3::normalize(center_dir);
        let (e1, e2) = vec3::orthonormal_basis(center);
        Self {
            surface,
            center,
            e1,
            e2,
        }
    }

    /// Direction for chart coordinates `(s1, s2)`.
    pub fn direction(&self, s1: f64, s2: f64) -> Vec3 {
        vec3::normalize(vec3::add(
            self.center,
            vec3::add(vec3::scale(self.e1, s1), vec3::scale(self.e2, s2)),
        ))
    }

    /// Surface point and area element at chart coordinates.
    pub fn eval(&self, s1: f64, s2: f64) -> ChartPoint {
        let w = vec3::add(
            self.center,
            vec3::add(vec3::scale(self.e1, s1), vec3::scale(self.e2, s2)),
        );
        let n = vec3::norm(w);
        let d = vec3::scale(w, 1.0 / n);
        let theta = vec3::polar_angle(d);
        let phi = vec3::azimuth(d);
        let (r, g) = self.surface.radius_and_gradient(theta, phi);
        // d(dhat)/ds_i = (e_i - d (d . e_i)) / |w|
        let dd1 = vec3::scale(
            vec3::sub(self.e1, vec3::scale(d, vec3::dot(d, self.e1))),
            1.0 / n,
        );
        let dd2 = vec3::scale(
            vec3::sub(self.e2, vec3::scale(d, vec3::dot(d, self.e2))),
            1.0 / n,
        );
        // Y = r(dhat) dhat, dY/ds_i = (g . dd_i) dhat + r dd_i
        let t1 = vec3::add(vec3::scale(d, vec3::dot(g, dd1)), vec3::scale(dd1, r));
        let t2 = vec3::add(vec3::scale(d, vec3::dot(g, dd2)), vec3::scale(dd2, r));
        ChartPoint {
            point: vec3::scale(d, r),
            theta,
            phi,
            jacobian: vec3::norm(vec3::cross(t1, t2)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::surface::{HarmonicCoeff, StarSurface, SurfaceSpec};
    use std::f64::consts::PI;

    fn bumpy() -> StarSurface {
        StarSurface::build(&SurfaceSpec {
            radial_coeffs: vec![
                HarmonicCoeff { n: 0, m: 0, value: (4.0 * PI).sqrt() },
                HarmonicCoeff { n: 2, m: 1, value: 0.2 },
            ],
            diam_bound: 3.0,
            lipschitz_bound: 2.0,
            patch_scale: 0.5,
        })
        .unwrap()
    }

    #[test]
    fn chart_jacobian_matches_finite_differences() {
        let s = bumpy();
        for center in [[0.2, 0.3, 0.93], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]] {
            let chart = LocalChart::new(&s, center);
            let h = 1e-6;
            for &(a, b) in &[(0.05, -0.02), (0.0, 0.0), (-0.08, 0.06)] {
                let p = chart.eval(a, b);
                let px = chart.eval(a + h, b);
                let mx = chart.eval(a - h, b);
                let py = chart.eval(a, b + h);
                let my = chart.eval(a, b - h);
                let t1 = vec3::scale(vec3::sub(px.point, mx.point), 0.5 / h);
                let t2 = vec3::scale(vec3::sub(py.point, my.point), 0.5 / h);
                let jac_fd = vec3::norm(vec3::cross(t1, t2));
                assert!(
                    (p.jacobian - jac_fd).abs() < 1e-5 * (1.0 + jac_fd),
                    "center {center:?} s=({a},{b}): {} vs {}",
                    p.jacobian,
                    jac_fd
                );
            }
        }
    }

    #[test]
    fn chart_disk_integrates_sphere_cap_area() {
        // On the unit sphere, a chart disk of radius s covers the cap of
        // aperture atan(s); integrate the Jacobian in polar coordinates.
        let s = StarSurface::build(&SurfaceSpec::sphere(1.0)).unwrap();
        let chart = LocalChart::new(&s, [0.0, 0.0, 1.0]);
        let s_max: f64 = 0.4;
        let (gx, gw) = crate::specfun::quadrature::gauss_legendre(24);
        let n_psi = 48;
        let mut area = 0.0;
        for (x, w) in gx.iter().zip(&gw) {
            let rho = 0.5 * (x + 1.0) * s_max;
            let wr = 0.5 * s_max * w;
            for j in 0..n_psi {
                let psi = 2.0 * PI * j as f64 / n_psi as f64;
                let p = chart.eval(rho * psi.cos(), rho * psi.sin());
                area += wr * (2.0 * PI / n_psi as f64) * rho * p.jacobian;
            }
        }
        let cap = 2.0 * PI * (1.0 - 1.0 / (1.0 + s_max * s_max).sqrt());
        assert!((area - cap).abs() < 1e-10, "area {area}, cap {cap}");
    }
}
