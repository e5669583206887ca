//! Deterministic low-discrepancy point sets for ball and half-ball integrals.
//!
//! Probe integrals over small regions are always ratios of masses sampled with
//! the same sequence, so reproducibility matters more than raw accuracy here.

use crate::vec3::Vec3;

/// Van der Corput radical inverse in the given base.
#[inline]
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut x = 0.0;
    while i > 0 {
        x += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    x
}

/// `count` Halton points in the unit cube `[0,1)^3`, offset by `seed`.
pub fn halton_cube(count: usize, seed: u64) -> Vec<Vec3> {
    (0..count as u64)
        .map(|i| {
            let j = i + 1 + seed;
            [
                radical_inverse(j, 2),
                radical_inverse(j, 3),
                radical_inverse(j, 5),
            ]
        })
        .collect()
}

/// Exactly `count` low-discrepancy points in the unit ball.
pub fn halton_ball(count: usize, seed: u64) -> Vec<Vec3> {
    let mut points = Vec::with_capacity(count);
    // distinct seeds jump to disjoint segments of the sequence
    let mut i = 1 + seed.wrapping_mul(7919);
    while points.len() < count {
        let p = [
            2.0 * radical_inverse(i, 2) - 1.0,
            2.0 * radical_inverse(i, 3) - 1.0,
            2.0 * radical_inverse(i, 5) - 1.0,
        ];
        if p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < 1.0 {
            points.push(p);
        }
        i += 1;
    }
    points
}

/// Exactly `count` low-discrepancy points in the lower unit half-ball (`z <= 0`).
pub fn halton_half_ball(count: usize, seed: u64) -> Vec<Vec3> {
    halton_ball(count, seed)
        .into_iter()
        .map(|p| [p[0], p[1], -p[2].abs()])
        .collect()
}

/// Deterministic quasi-uniform directions on the unit sphere (Fibonacci lattice).
pub fn fibonacci_sphere(count: usize) -> Vec<Vec3> {
    let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let s = (1.0 - z * z).sqrt();
            let phi = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
            [s * phi.cos(), s * phi.sin(), z]
        })
        .collect()
}
