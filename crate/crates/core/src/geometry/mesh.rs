//! Surface quadrature meshes: Gauss-Legendre x trapezoid tensor grids in
//! `(theta, phi)`, graded toward the coating interface for polar caps.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::partition::{CoatingPartition, Region};
use super::surface::StarSurface;
use crate::error::{Error, Result};
use crate::specfun::quadrature::gauss_legendre;
use crate::vec3::Vec3;

const MIN_THETA_NODES: usize = 8;
const MIN_PHI_NODES: usize = 16;

/// Tensor-product boundary quadrature with per-node frames and region tags.
#[derive(Debug)]
pub struct BoundaryMesh {
    surface: Arc<StarSurface>,
    partition: CoatingPartition,
    n_theta: usize,
    n_phi: usize,
    thetas: Vec<f64>,
    phis: Vec<f64>,
    nodes: Vec<Vec3>,
    normals: Vec<Vec3>,
    weights: Vec<f64>,
    regions: Vec<Region>,
    theta_spacing: Vec<f64>,
    /// Number of leading theta rows on the Dirichlet side (0 when fully coated).
    n_dirichlet_rows: usize,
    grading_exponent: f64,
}

/// Build the tensor quadrature. For a polar cap the theta nodes are graded
/// toward the interface circle with the given exponent (spacing decays like
/// distance^((q-1)/q)); a fully coated surface uses Gauss-Legendre in
/// `cos(theta)`, which integrates smooth band-limited data to near machine
/// precision.
pub fn build_quadrature(
    surface: Arc<StarSurface>,
    partition: CoatingPartition,
    n_theta: usize,
    n_phi: usize,
    grading_exponent: f64,
) -> Result<BoundaryMesh> {
    partition.validate()?;
    if n_theta < MIN_THETA_NODES || n_phi < MIN_PHI_NODES {
        return Err(Error::ResolutionTooCoarse(format!(
            "mesh {n_theta}x{n_phi} below minimum {MIN_THETA_NODES}x{MIN_PHI_NODES}"
        )));
    }
    if grading_exponent < 1.0 {
        return Err(Error::ArgumentOutOfRange(format!(
            "grading exponent {grading_exponent} must be >= 1"
        )));
    }

    // Per-row theta values with scalar quadrature factors. `true` marks rows
    // whose factor multiplies the d(theta)-form Jacobian (graded panels);
    // `false` marks rows in the dt-form (Gauss in cos theta).
    let mut rows: Vec<(f64, f64, bool)> = Vec::with_capacity(n_theta);
    let mut n_dirichlet_rows = 0;
    match partition {
        CoatingPartition::FullyImpedance => {
            let (t, wt) = gauss_legendre(n_theta);
            for i in 0..n_theta {
                // ascending theta = descending t
                rows.push((t[n_theta - 1 - i].acos(), wt[n_theta - 1 - i], false));
            }
        }
        CoatingPartition::PolarCap { cap_angle } => {
            let share = (n_theta as f64 * cap_angle / PI).round() as usize;
            let n_d = share.clamp(4, n_theta.saturating_sub(4));
            if n_d < 4 || n_theta - n_d < 4 {
                return Err(Error::ResolutionTooCoarse(format!(
                    "polar-cap mesh needs at least 4 rows per side, got {n_d}/{}",
                    n_theta - n_d
                )));
            }
            n_dirichlet_rows = n_d;
            let q = grading_exponent;
            // Dirichlet side: theta = cap * (1 - xi^q), graded toward the cap edge.
            let (x, w) = gauss_legendre(n_d);
            for i in 0..n_d {
                let xi = 0.5 * (x[i] + 1.0);
                let theta = cap_angle * (1.0 - xi.powf(q));
                let jac = cap_angle * q * xi.powf(q - 1.0) * 0.5 * w[i];
                rows.push((theta, jac, true));
            }
            // Impedance side: theta = cap + (pi - cap) * xi^q.
            let (x, w) = gauss_legendre(n_theta - n_d);
            for i in 0..n_theta - n_d {
                let xi = 0.5 * (x[i] + 1.0);
                let theta = cap_angle + (PI - cap_angle) * xi.powf(q);
                let jac = (PI - cap_angle) * q * xi.powf(q - 1.0) * 0.5 * w[i];
                rows.push((theta, jac, true));
            }
            rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        }
    }

    let phis: Vec<f64> = (0..n_phi).map(|j| 2.0 * PI * j as f64 / n_phi as f64).collect();
    let dphi = 2.0 * PI / n_phi as f64;

    let count = n_theta * n_phi;
    let mut nodes = Vec::with_capacity(count);
    let mut normals = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    let mut regions = Vec::with_capacity(count);
    for &(theta, factor, theta_form) in &rows {
        let region = partition.region(theta);
        for &phi in &phis {
            let f = surface.frame(theta, phi);
            let jac = if theta_form {
                f.jacobian_theta_phi
            } else {
                f.jacobian_t_phi
            };
            nodes.push(f.point);
            normals.push(f.normal);
            weights.push(factor * dphi * jac);
            regions.push(region);
        }
    }

    let thetas: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let mut theta_spacing = vec![0.0_f64; n_theta];
    for i in 0..n_theta {
        let lo = if i == 0 { thetas[0].min(thetas[1] - thetas[0]) } else { thetas[i] - thetas[i - 1] };
        let hi = if i + 1 == n_theta {
            (PI - thetas[i]).min(thetas[i] - thetas[i - 1])
        } else {
            thetas[i + 1] - thetas[i]
        };
        theta_spacing[i] = 0.5 * (lo + hi);
    }

    Ok(BoundaryMesh {
        surface,
        partition,
        n_theta,
        n_phi,
        thetas,
        phis,
        nodes,
        normals,
        weights,
        regions,
        theta_spacing,
        n_dirichlet_rows,
        grading_exponent,
    })
}

impl BoundaryMesh {
    pub fn surface(&self) -> &Arc<StarSurface> {
        &self.surface
    }

    pub fn partition(&self) -> CoatingPartition {
        self.partition
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn grading_exponent(&self) -> f64 {
        self.grading_exponent
    }

    pub fn node_indices(&self) -> std::ops::Range<usize> {
        0..self.nodes.len()
    }

    #[inline]
    pub fn node(&self, i: usize) -> Vec3 {
        self.nodes[i]
    }

    #[inline]
    pub fn normal(&self, i: usize) -> Vec3 {
        self.normals[i]
    }

    #[inline]
    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    #[inline]
    pub fn region(&self, i: usize) -> Region {
        self.regions[i]
    }

    #[inline]
    pub fn node_angles(&self, i: usize) -> (f64, f64) {
        (self.thetas[i / self.n_phi], self.phis[i % self.n_phi])
    }

    pub fn nodes(&self) -> &[Vec3] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn area(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn region_area(&self, region: Region) -> f64 {
        self.weights
            .iter()
            .zip(&self.regions)
            .filter(|(_, r)| **r == region)
            .map(|(w, _)| w)
            .sum()
    }

    /// Local theta spacing of the row enclosing `theta` (used to size the
    /// singular-correction patches).
    pub fn theta_spacing_at(&self, theta: f64) -> f64 {
        let row = match self
            .thetas
            .binary_search_by(|probe| probe.total_cmp(&theta))
        {
            Ok(i) => i,
            Err(i) => i.min(self.n_theta - 1),
        };
        self.theta_spacing[row]
    }

    pub fn theta_spacing_of_row(&self, row: usize) -> f64 {
        self.theta_spacing[row]
    }

    /// Arc-length proxy for the distance from node `i` to the Dirichlet part:
    /// polar-angle gap times the node radius.
    pub fn dist_to_dirichlet(&self, i: usize) -> f64 {
        let (theta, _) = self.node_angles(i);
        let gap = self.partition.angular_distance_to_dirichlet(theta);
        if gap.is_infinite() {
            f64::INFINITY
        } else {
            gap * crate::vec3::norm(self.nodes[i])
        }
    }

    /// Indices of impedance nodes at arc distance greater than `rho` from the
    /// Dirichlet part (the inner portion the reconstruction reports on).
    pub fn inner_impedance_nodes(&self, rho: f64) -> Vec<usize> {
        self.node_indices()
            .filter(|&i| self.regions[i] == Region::Impedance && self.dist_to_dirichlet(i) > rho)
            .collect()
    }

    /// Row range `(lo, hi)` of the side a query angle interpolates on.
    fn side_rows(&self, theta: f64) -> (usize, usize) {
        if self.n_dirichlet_rows == 0 {
            (0, self.n_theta)
        } else if self.partition.region(theta) == Region::Dirichlet {
            (0, self.n_dirichlet_rows)
        } else {
            (self.n_dirichlet_rows, self.n_theta)
        }
    }

    /// Tensor Lagrange interpolation stencil at an arbitrary surface
    /// parameter. Returns `(node index, weight)` pairs; the theta stencil
    /// never crosses the coating interface.
    pub fn interpolation_stencil(&self, theta: f64, phi: f64, order: usize) -> Vec<(usize, f64)> {
        let (lo, hi) = self.side_rows(theta);
        let side = &self.thetas[lo..hi];
        let p = order.min(side.len());
        let pos = match side.binary_search_by(|probe| probe.total_cmp(&theta)) {
            Ok(i) | Err(i) => i,
        };
        let start = pos.saturating_sub(p / 2).min(side.len() - p);
        let theta_nodes = &side[start..start + p];
        let wt = lagrange_weights(theta_nodes, theta);

        let dphi = 2.0 * PI / self.n_phi as f64;
        let pp = order.min(self.n_phi);
        let base = (phi / dphi).floor() as i64 - (pp as i64 / 2 - 1);
        let phi_nodes: Vec<f64> = (0..pp).map(|o| (base + o as i64) as f64 * dphi).collect();
        let wp = lagrange_weights(&phi_nodes, phi);

        let mut out = Vec::with_capacity(p * pp);
        for (a, &wa) in wt.iter().enumerate() {
            let row = lo + start + a;
            for (b, &wb) in wp.iter().enumerate() {
                let col = (base + b as i64).rem_euclid(self.n_phi as i64) as usize;
                out.push((row * self.n_phi + col, wa * wb));
            }
        }
        out
    }

    /// Interpolate nodal complex values at an arbitrary surface parameter.
    pub fn interp_complex(&self, values: &[Complex64], theta: f64, phi: f64, order: usize) -> Complex64 {
        self.interpolation_stencil(theta, phi, order)
            .iter()
            .map(|&(i, w)| values[i] * w)
            .sum()
    }
}

fn lagrange_weights(xs: &[f64], x: f64) -> Vec<f64> {
    let n = xs.len();
    let mut w = vec![1.0_f64; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w[i] *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::surface::SurfaceSpec;

    fn sphere(radius: f64) -> Arc<StarSurface> {
        Arc::new(StarSurface::build(&SurfaceSpec::sphere(radius)).unwrap())
    }

    #[test]
    fn sphere_area_is_spectrally_exact() {
        let mesh = build_quadrature(sphere(1.0), CoatingPartition::FullyImpedance, 16, 32, 1.0)
            .unwrap();
        assert!((mesh.area() - 4.0 * PI).abs() < 1e-10, "{}", mesh.area());
    }

    #[test]
    fn polar_cap_region_areas() {
        let mesh = build_quadrature(
            sphere(1.0),
            CoatingPartition::PolarCap { cap_angle: PI / 3.0 },
            24,
            32,
            2.0,
        )
        .unwrap();
        // spherical cap area: 2 pi (1 - cos(pi/3)) = pi
        let cap = mesh.region_area(Region::Dirichlet);
        assert!((cap - PI).abs() < 1e-8, "cap area {cap}");
        assert!((mesh.area() - 4.0 * PI).abs() < 1e-8);
    }

    #[test]
    fn grading_clusters_rows_at_the_interface() {
        let cap = PI / 3.0;
        let mesh = build_quadrature(
            sphere(1.0),
            CoatingPartition::PolarCap { cap_angle: cap },
            32,
            32,
            3.0,
        )
        .unwrap();
        // Impedance-side spacing must shrink monotonically toward the
        // interface and scale like distance^(2/3) for exponent 3.
        let imp: Vec<f64> = mesh.thetas().iter().copied().filter(|&t| t > cap).collect();
        let gaps: Vec<f64> = imp.windows(2).map(|w| w[1] - w[0]).collect();
        for i in 1..gaps.len() / 2 {
            assert!(gaps[i] >= gaps[i - 1] * 0.99, "non-monotone near interface");
        }
        let d0 = imp[0] - cap;
        let d1 = imp[1] - cap;
        let ratio = (gaps[0] / gaps[1]).ln() / (d0 / d1).ln();
        assert!((ratio - 2.0 / 3.0).abs() < 0.25, "spacing exponent {ratio}");
    }

    #[test]
    fn quadrature_converges_at_high_order_on_smooth_surface() {
        use crate::geometry::surface::HarmonicCoeff;
        let spec = SurfaceSpec {
            radial_coeffs: vec![
                HarmonicCoeff { n: 0, m: 0, value: (4.0 * PI).sqrt() },
                HarmonicCoeff { n: 3, m: 2, value: 0.25 },
            ],
            diam_bound: 3.0,
            lipschitz_bound: 3.0,
            patch_scale: 0.5,
        };
        let surf = Arc::new(StarSurface::build(&spec).unwrap());
        let area = |n: usize| {
            build_quadrature(surf.clone(), CoatingPartition::FullyImpedance, n, 2 * n, 1.0)
                .unwrap()
                .area()
        };
        let reference = area(96);
        let e1 = (area(8) - reference).abs();
        let e2 = (area(16) - reference).abs();
        assert!(e2 <= e1 / 16.0 + 1e-13, "e(8) = {e1:.3e}, e(16) = {e2:.3e}");
    }

    #[test]
    fn coarse_resolution_rejected() {
        assert!(matches!(
            build_quadrature(sphere(1.0), CoatingPartition::FullyImpedance, 4, 32, 1.0),
            Err(Error::ResolutionTooCoarse(_))
        ));
    }

    #[test]
    fn normals_are_unit_and_outward() {
        let mesh = build_quadrature(sphere(2.0), CoatingPartition::FullyImpedance, 12, 24, 1.0)
            .unwrap();
        for i in mesh.node_indices() {
            let nu = mesh.normal(i);
            assert!((crate::vec3::norm(nu) - 1.0).abs() < 1e-12);
            assert!(crate::vec3::dot(nu, mesh.node(i)) > 0.0);
        }
    }

    #[test]
    fn interpolation_reproduces_band_limited_data() {
        let mesh = build_quadrature(sphere(1.0), CoatingPartition::FullyImpedance, 24, 48, 1.0)
            .unwrap();
        let f = |theta: f64, phi: f64| {
            Complex64::new((2.0 * theta).cos(), (theta.sin() * phi.sin()).cos())
        };
        let values: Vec<Complex64> = mesh
            .node_indices()
            .map(|i| {
                let (t, p) = mesh.node_angles(i);
                f(t, p)
            })
            .collect();
        for &(t, p) in &[(0.9, 1.7), (2.0, 0.1), (1.3, 6.0)] {
            let got = mesh.interp_complex(&values, t, p, 4);
            assert!((got - f(t, p)).norm() < 5e-4, "at ({t}, {p}): {got}");
        }
        // queries between the pole and the first row extrapolate; the error
        // grows by a bounded constant
        let got = mesh.interp_complex(&values, 0.05, 3.0, 4);
        assert!((got - f(0.05, 3.0)).norm() < 5e-3);
    }

    #[test]
    fn stencil_weights_sum_to_one() {
        let mesh = build_quadrature(
            sphere(1.0),
            CoatingPartition::PolarCap { cap_angle: 1.0 },
            24,
            32,
            2.0,
        )
        .unwrap();
        for &(t, p) in &[(0.5, 0.3), (1.8, 4.0), (3.0, 2.0)] {
            let s: f64 = mesh
                .interpolation_stencil(t, p, 4)
                .iter()
                .map(|&(_, w)| w)
                .sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
