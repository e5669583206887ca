//! Far field to near field: spherical-harmonic back-propagation with a
//! noise-aware truncation rule.
//!
//! A radiating field `u^s = sum a_nm h_n(kr) Y_nm` has far field
//! `sum a_nm (-i)^{n+1}/k Y_nm`, so the scattered-field coefficients are
//! `a_nm = k i^{n+1} g_nm`. Mode `n` amplifies far-field noise by
//! `|k h_n(k R1)|`, which grows super-exponentially in `n`; the truncation
//! rule keeps modes while `|k h_n(k R1)| eps <= sqrt(eps)`, balancing the
//! propagated noise against the truncation bias.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scatter::FarFieldPattern;
use crate::specfun::bessel::radial_table;
use crate::sphgrid::{ShCoeffs, SphereGrid};

/// Truncation policy for the back-propagation.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPolicy {
    /// Hard cap on the retained degree. Clean data keeps every mode up to
    /// the cap, and mode `n` amplifies rounding in the analyzed far field
    /// by `|k h_n(k R1)|`, so the cap must stay where that factor is still
    /// well below `1/eps_machine`; 13 keeps it under ~2e6 for `k R1 = 3`.
    pub n_max: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { n_max: 13 }
    }
}

/// Scattered-field samples reconstructed on the sphere `R1 * S^2`.
#[derive(Debug, Clone)]
pub struct NearFieldAnnulus {
    pub radius: f64,
    pub grid: Arc<SphereGrid>,
    pub values: Vec<Complex64>,
    pub n_used: usize,
    /// Estimated L2 error of the reconstructed near field.
    pub propagated_error: f64,
    pub epsilon: f64,
}

/// Degree kept by the rule `|k h_n(k R1)| eps <= sqrt(eps)` (a prefix in `n`).
pub fn truncation_degree(k: f64, r1: f64, epsilon: f64, n_cap: usize) -> Result<usize> {
    if epsilon <= 0.0 {
        return Ok(n_cap);
    }
    let table = radial_table(n_cap, k * r1)?;
    let budget = epsilon.sqrt();
    let mut n_used = 0;
    for n in 0..=n_cap {
        if k * table.h(n).norm() * epsilon <= budget {
            n_used = n;
        } else {
            break;
        }
    }
    Ok(n_used)
}

/// Back-propagate with the noise-aware truncation rule.
pub fn far_to_near(
    pattern: &FarFieldPattern,
    k: f64,
    r1: f64,
    obstacle_diameter: f64,
    policy: &TruncationPolicy,
) -> Result<NearFieldAnnulus> {
    let n_cap = policy.n_max.min(pattern.grid.max_analysis_degree());
    let n_used = truncation_degree(k, r1, pattern.epsilon, n_cap)?;
    far_to_near_truncated(pattern, k, r1, obstacle_diameter, n_used)
}

/// Back-propagate with an explicitly forced truncation degree.
pub fn far_to_near_truncated(
    pattern: &FarFieldPattern,
    k: f64,
    r1: f64,
    obstacle_diameter: f64,
    n_used: usize,
) -> Result<NearFieldAnnulus> {
    if r1 <= obstacle_diameter {
        return Err(Error::RadiusInsideObstacle {
            radius: r1,
            required: obstacle_diameter,
        });
    }
    let g = pattern.sh_coeffs(n_used)?;
    let n_used = g.n_max; // analysis may cap further on coarse grids
    let table = radial_table(n_used, k * r1)?;

    // c_nm = a_nm h_n(k R1) with a_nm = k i^{n+1} g_nm
    let mut synth = ShCoeffs::zero(n_used);
    let mut amp_sq_sum = 0.0;
    for n in 0..=n_used {
        let i_pow = Complex64::new(0.0, 1.0).powu(n as u32 + 1);
        let factor = k * i_pow * table.h(n);
        amp_sq_sum += (2 * n + 1) as f64 * (k * table.h(n).norm()).powi(2);
        for m in -(n as i32)..=n as i32 {
            synth.set(n, m, factor * g.get(n, m));
        }
    }
    let values = pattern.grid.synthesize(&synth);
    let propagated_error = pattern.epsilon / (n_used as f64 + 1.0) * amp_sq_sum.sqrt();
    Ok(NearFieldAnnulus {
        radius: r1,
        grid: pattern.grid.clone(),
        values,
        n_used,
        propagated_error,
        epsilon: pattern.epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::noise::add_noise;
    use crate::scatter::{eval_field, sphere_series, FieldWant, WaveConfig};
    use crate::vec3;

    fn oracle_pattern(n_grid: usize) -> (FarFieldPattern, crate::scatter::ScatterSolution) {
        let wave = WaveConfig::new(1.0, [0.0, 0.0, 1.0]).unwrap();
        let sol = sphere_series(&wave, 1.0, 1.0, 40).unwrap();
        let grid = SphereGrid::build(n_grid, 2 * n_grid).unwrap();
        (sol.far_field(&grid), sol)
    }

    #[test]
    fn clean_round_trip_matches_direct_evaluation() {
        let (pattern, sol) = oracle_pattern(24);
        let near = far_to_near(&pattern, 1.0, 3.0, 2.0, &TruncationPolicy::default()).unwrap();
        let pts: Vec<_> = pattern
            .grid
            .directions()
            .iter()
            .map(|&d| vec3::scale(d, 3.0))
            .collect();
        let direct = eval_field(&sol, &pts, FieldWant::Scattered).unwrap();
        let max_err = near
            .values
            .iter()
            .zip(&direct)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(max_err < 1e-8, "max near-field error {max_err:.3e}");
    }

    #[test]
    fn zero_noise_keeps_the_cap() {
        let (pattern, _) = oracle_pattern(24);
        let near = far_to_near(&pattern, 1.0, 3.0, 2.0, &TruncationPolicy { n_max: 17 }).unwrap();
        assert_eq!(near.n_used, 17);
    }

    #[test]
    fn truncation_is_monotone_in_noise() {
        let n_hi = truncation_degree(1.0, 3.0, 1e-6, 30).unwrap();
        let n_lo = truncation_degree(1.0, 3.0, 1e-2, 30).unwrap();
        assert!(n_hi >= n_lo, "N(1e-6) = {n_hi} < N(1e-2) = {n_lo}");
        assert!(n_lo >= 2, "even noisy data keeps the leading modes");
    }

    #[test]
    fn radius_inside_obstacle_rejected() {
        let (pattern, _) = oracle_pattern(16);
        assert!(matches!(
            far_to_near(&pattern, 1.0, 1.5, 2.0, &TruncationPolicy::default()),
            Err(Error::RadiusInsideObstacle { .. })
        ));
    }

    #[test]
    fn back_propagation_is_linear_at_fixed_truncation() {
        let (pattern, _) = oracle_pattern(16);
        let noisy = add_noise(&pattern, 1e-3, 9);
        let a = far_to_near_truncated(&pattern, 1.0, 3.0, 2.0, 8).unwrap();
        let b = far_to_near_truncated(&noisy, 1.0, 3.0, 2.0, 8).unwrap();
        // combination 2p - q propagated with the same truncation
        let mut combo = pattern.clone();
        for (c, (p, q)) in combo.values.iter_mut().zip(pattern.values.iter().zip(&noisy.values)) {
            *c = 2.0 * p - q;
        }
        let ab = far_to_near_truncated(&combo, 1.0, 3.0, 2.0, 8).unwrap();
        for i in 0..ab.values.len() {
            let expect = 2.0 * a.values[i] - b.values[i];
            assert!((ab.values[i] - expect).norm() < 1e-12);
        }
    }
}
