//! Far-field noise injection with an exactly prescribed L2(S2) perturbation
//! norm.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scatter::FarFieldPattern;

/// Add a pseudo-random complex perturbation rescaled so its quadrature
/// L2(S2) norm equals `epsilon` exactly. Deterministic in `seed`.
pub fn add_noise(pattern: &FarFieldPattern, epsilon: f64, seed: u64) -> FarFieldPattern {
    let mut out = pattern.clone();
    out.epsilon = epsilon;
    if epsilon == 0.0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || {
        // Box-Muller from two uniforms.
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        let r = (-2.0 * u1.ln()).sqrt();
        let phase = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(r * phase.cos(), r * phase.sin())
    };
    let perturbation: Vec<Complex64> = (0..pattern.values.len()).map(|_| gauss()).collect();
    let norm = pattern.grid.l2_norm(&perturbation);
    let scale = epsilon / norm;
    for (v, p) in out.values.iter_mut().zip(&perturbation) {
        *v += scale * p;
    }
    out
}
