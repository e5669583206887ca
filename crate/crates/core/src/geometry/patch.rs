//! Local boundary neighborhoods: the exterior ball portion
//! `B_rho(x0) \ closure(D)` sampled by a deterministic low-discrepancy fill,
//! and the boundary portion `closure(...) ∩ ∂D` sampled by a refined local
//! parametric quadrature restricted to the ball.

use std::f64::consts::PI;

use super::partition::{CoatingPartition, Region};
use super::surface::StarSurface;
use crate::error::{Error, Result};
use crate::lowdisc::halton_ball;
use crate::specfun::quadrature::gauss_legendre;
use crate::vec3::{self, Vec3};

/// Sampling resolution knobs for [`local_patch`].
#[derive(Debug, Clone, Copy)]
pub struct PatchSamples {
    /// Number of low-discrepancy fill points of the ball (before the
    /// outside-obstacle filter).
    pub volume_total: usize,
    /// Per-direction resolution of the local surface quadrature.
    pub surface_resolution: usize,
    /// Seed offsetting the deterministic fill sequence.
    pub seed: u64,
}

impl Default for PatchSamples {
    fn default() -> Self {
        Self {
            volume_total: 4000,
            surface_resolution: 48,
            seed: 0,
        }
    }
}

/// Volume samples of `B_rho(x0) \ closure(D)` with a uniform weight.
#[derive(Debug, Clone)]
pub struct VolumePatch {
    pub points: Vec<Vec3>,
    /// Weight carried by every accepted point: `|B_rho| / total`.
    pub weight_per_point: f64,
}

impl VolumePatch {
    pub fn total_weight(&self) -> f64 {
        self.weight_per_point * self.points.len() as f64
    }
}

/// Surface samples of the boundary portion inside the ball.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    pub points: Vec<Vec3>,
    pub angles: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
}

impl SurfacePatch {
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Combined local neighborhood of a boundary point.
#[derive(Debug, Clone)]
pub struct LocalPatch {
    pub center: Vec3,
    pub radius: f64,
    pub volume: VolumePatch,
    pub surface: SurfacePatch,
}

fn check_preconditions(
    surface: &StarSurface,
    partition: CoatingPartition,
    theta0: f64,
    phi0: f64,
    rho: f64,
) -> Result<Vec3> {
    if rho <= 0.0 {
        return Err(Error::EmptyPatch(format!("patch radius {rho} <= 0")));
    }
    if rho >= surface.patch_scale() {
        return Err(Error::ArgumentOutOfRange(format!(
            "patch radius {rho} must stay below the patch scale r0 = {}",
            surface.patch_scale()
        )));
    }
    let x0 = surface.point(theta0, phi0);
    if partition.region(theta0) != Region::Impedance {
        return Err(Error::PatchTouchesDirichlet {
            distance: 0.0,
            radius: rho,
        });
    }
    let dist = partition.angular_distance_to_dirichlet(theta0) * vec3::norm(x0);
    if dist <= rho {
        return Err(Error::PatchTouchesDirichlet {
            distance: dist,
            radius: rho,
        });
    }
    Ok(x0)
}

/// Low-discrepancy fill of the exterior ball portion.
pub fn volume_patch(
    surface: &StarSurface,
    partition: CoatingPartition,
    theta0: f64,
    phi0: f64,
    rho: f64,
    total: usize,
    seed: u64,
) -> Result<VolumePatch> {
    let x0 = check_preconditions(surface, partition, theta0, phi0, rho)?;
    let points: Vec<Vec3> = halton_ball(total, seed)
        .into_iter()
        .map(|p| vec3::add(x0, vec3::scale(p, rho)))
        .filter(|p| surface.is_outside(*p))
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyPatch(format!(
            "no fill point of B_{rho}(x0) lies outside the obstacle"
        )));
    }
    let ball_volume = 4.0 / 3.0 * PI * rho.powi(3);
    Ok(VolumePatch {
        weight_per_point: ball_volume / total as f64,
        points,
    })
}

/// Refined parametric quadrature of the boundary inside the ball. Rim cells
/// carry a fractional weight so the mollified indicator converges with the
/// local resolution.
pub fn surface_patch(
    surface: &StarSurface,
    partition: CoatingPartition,
    theta0: f64,
    phi0: f64,
    rho: f64,
    resolution: usize,
) -> Result<SurfacePatch> {
    let x0 = check_preconditions(surface, partition, theta0, phi0, rho)?;
    let mut delta = (1.5 * rho / surface.r_min() + 0.1 * rho).min(PI);
    for _ in 0..6 {
        let patch = surface_patch_with_box(surface, x0, theta0, phi0, rho, delta, resolution);
        match patch {
            Some(p) => return Ok(p),
            None => delta = (delta * 1.4).min(PI),
        }
    }
    Err(Error::EmptyPatch(
        "surface patch box failed to enclose the ball".into(),
    ))
}

fn surface_patch_with_box(
    surface: &StarSurface,
    x0: Vec3,
    theta0: f64,
    phi0: f64,
    rho: f64,
    delta: f64,
    resolution: usize,
) -> Option<SurfacePatch> {
    let n = resolution.max(8);
    let theta_lo = (theta0 - delta).max(0.0);
    let theta_hi = (theta0 + delta).min(PI);
    let full_circle = theta_lo <= 1e-9 || theta_hi >= PI - 1e-9 || delta >= PI / 2.0;
    let sin_min = theta_lo.sin().min(theta_hi.sin());
    let (phi_lo, phi_width) = if full_circle || delta / sin_min >= PI {
        (0.0, 2.0 * PI)
    } else {
        let dphi = delta / sin_min;
        (phi0 - dphi, 2.0 * dphi)
    };

    let (gt, wt) = gauss_legendre(n);
    let (gp, wp) = gauss_legendre(n);
    let h_theta = (theta_hi - theta_lo) / n as f64;
    let mut points = Vec::new();
    let mut angles = Vec::new();
    let mut weights = Vec::new();
    let mut rim_ok = true;
    for (it, t) in gt.iter().enumerate() {
        let theta = theta_lo + 0.5 * (t + 1.0) * (theta_hi - theta_lo);
        let w_theta = 0.5 * (theta_hi - theta_lo) * wt[it];
        for (ip, p) in gp.iter().enumerate() {
            let phi_raw = phi_lo + 0.5 * (p + 1.0) * phi_width;
            let phi = phi_raw.rem_euclid(2.0 * PI);
            let w_phi = 0.5 * phi_width * wp[ip];
            let f = surface.frame(theta, phi);
            let d = vec3::distance(f.point, x0);
            // local sample diameter for the mollified rim indicator
            let h_loc = (h_theta * vec3::norm(f.point))
                .max(phi_width / n as f64 * vec3::norm(f.point) * theta.sin());
            let frac = (0.5 + (rho - d) / h_loc).clamp(0.0, 1.0);
            // box-coverage check: outermost ring must clear the ball
            if (it == 0 || it == n - 1 || ((ip == 0 || ip == n - 1) && phi_width < 2.0 * PI))
                && d <= rho
                && !(theta_lo == 0.0 && it == 0)
                && !(theta_hi == PI && it == n - 1)
            {
                rim_ok = false;
            }
            if frac > 0.0 {
                points.push(f.point);
                angles.push((theta, phi));
                weights.push(w_theta * w_phi * f.jacobian_theta_phi * frac);
            }
        }
    }
    if !rim_ok {
        return None;
    }
    if points.is_empty() {
        return None;
    }
    Some(SurfacePatch {
        points,
        angles,
        weights,
    })
}

/// Combined volume and surface sampling of the local neighborhood.
pub fn local_patch(
    surface: &StarSurface,
    partition: CoatingPartition,
    theta0: f64,
    phi0: f64,
    rho: f64,
    samples: PatchSamples,
) -> Result<LocalPatch> {
    let x0 = check_preconditions(surface, partition, theta0, phi0, rho)?;
    let volume = volume_patch(
        surface,
        partition,
        theta0,
        phi0,
        rho,
        samples.volume_total,
        samples.seed,
    )?;
    let surface_samples = surface_patch(
        surface,
        partition,
        theta0,
        phi0,
        rho,
        samples.surface_resolution,
    )?;
    Ok(LocalPatch {
        center: x0,
        radius: rho,
        volume,
        surface: surface_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::surface::SurfaceSpec;

    fn unit_sphere() -> StarSurface {
        StarSurface::build(&SurfaceSpec::sphere(1.0)).unwrap()
    }

    /// Exact volume of `B_rho(x0) \ closure(B_1(0))` for `x0` on the unit
    /// sphere, from the two-sphere lens formula.
    fn exact_exterior_volume(rho: f64) -> f64 {
        let d = 1.0_f64;
        let a = (d * d - rho * rho + 1.0) / (2.0 * d);
        let h1 = 1.0 - a;
        let h2 = rho - (d - a);
        let lens = PI * h1 * h1 * (3.0 - h1) / 3.0 + PI * h2 * h2 * (3.0 * rho - h2) / 3.0;
        4.0 / 3.0 * PI * rho.powi(3) - lens
    }

    #[test]
    fn north_pole_volume_matches_lens_oracle() {
        let s = unit_sphere();
        let patch = volume_patch(
            &s,
            CoatingPartition::FullyImpedance,
            1e-9,
            0.0,
            0.2,
            20_000,
            0,
        )
        .unwrap();
        let exact = exact_exterior_volume(0.2);
        let got = patch.total_weight();
        assert!(
            (got - exact).abs() < 0.02 * exact,
            "got {got:.6e}, exact {exact:.6e}"
        );
        // The locally flat approximation (half ball) is off by the curvature
        // correction, about 7.5 percent at rho = 0.2.
        let half_ball = 2.0 / 3.0 * PI * 0.2_f64.powi(3);
        assert!((got - half_ball).abs() < 0.10 * half_ball);
    }

    #[test]
    fn degenerate_radius_is_empty() {
        let s = unit_sphere();
        assert!(matches!(
            local_patch(
                &s,
                CoatingPartition::FullyImpedance,
                0.3,
                0.0,
                0.0,
                PatchSamples::default()
            ),
            Err(Error::EmptyPatch(_))
        ));
    }

    #[test]
    fn patch_near_cap_rejected() {
        let s = unit_sphere();
        let cap = PI / 3.0;
        assert!(matches!(
            local_patch(
                &s,
                CoatingPartition::PolarCap { cap_angle: cap },
                cap + 0.05,
                0.0,
                0.2,
                PatchSamples::default()
            ),
            Err(Error::PatchTouchesDirichlet { .. })
        ));
    }

    #[test]
    fn volume_points_stay_outside_and_nest() {
        let s = unit_sphere();
        let theta0 = 2.0;
        let p1 = volume_patch(&s, CoatingPartition::FullyImpedance, theta0, 1.0, 0.1, 5000, 0)
            .unwrap();
        let x0 = s.point(theta0, 1.0);
        for p in &p1.points {
            assert!(s.is_outside(*p));
            assert!(vec3::distance(*p, x0) <= 0.2, "inside the 2 rho ball");
        }
    }

    #[test]
    fn surface_patch_area_matches_spherical_cap() {
        let s = unit_sphere();
        // {y on unit sphere : |y - x0| <= rho} is a cap of aperture
        // 2 asin(rho/2).
        for &rho in &[0.1, 0.2, 0.4] {
            let patch = surface_patch(&s, CoatingPartition::FullyImpedance, 1.2, 0.7, rho, 64)
                .unwrap();
            let aperture = 2.0 * (rho / 2.0).asin();
            let exact = 2.0 * PI * (1.0 - aperture.cos());
            let got = patch.total_weight();
            assert!(
                (got - exact).abs() < 5e-3 * exact,
                "rho {rho}: got {got:.6e}, exact {exact:.6e}"
            );
        }
    }

    #[test]
    fn surface_patch_works_at_the_pole() {
        let s = unit_sphere();
        let patch =
            surface_patch(&s, CoatingPartition::FullyImpedance, 1e-9, 0.0, 0.15, 48).unwrap();
        let aperture = 2.0 * (0.15 / 2.0_f64).asin();
        let exact = 2.0 * PI * (1.0 - aperture.cos());
        assert!((patch.total_weight() - exact).abs() < 1e-2 * exact);
    }

    #[test]
    fn oversized_patch_rejected() {
        let s = unit_sphere();
        assert!(matches!(
            volume_patch(&s, CoatingPartition::FullyImpedance, 1.0, 0.0, 0.6, 100, 0),
            Err(Error::ArgumentOutOfRange(_))
        ));
    }
}
