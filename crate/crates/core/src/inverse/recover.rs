//! Boundary traces to impedance: the pointwise quotient
//! `lambda(x) = Re[ i du/dnu(x) / u(x) ]` on nodes where `|u|` clears a
//! trust threshold, plus error metrics against a reference impedance.

use num_complex::Complex64;

use super::continuation::BoundaryTrace;
use crate::error::{Error, Result};
use crate::geometry::ImpedanceField;

/// Recovered impedance values with the trust mask.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    /// Recovered value per trace node; only meaningful where `trusted`.
    pub lambda_hat: Vec<f64>,
    pub trusted: Vec<bool>,
    pub threshold: f64,
    /// Largest imaginary residue of `i du/dnu / u` over trusted nodes; the
    /// impedance is real, so this measures trace consistency.
    pub max_imag_residual: f64,
}

/// Default trust threshold: well above the estimated trace error, and never
/// below a small fraction of the field scale (the field cannot vanish on
/// sets of positive boundary density, so the discarded set stays small).
pub fn default_trust_threshold(trace: &BoundaryTrace) -> f64 {
    let max_u = trace.u.iter().map(|u| u.norm()).fold(0.0, f64::max);
    let err_estimate = trace
        .diagnostics
        .data_residual
        .max(trace.diagnostics.target_residual);
    (10.0 * err_estimate).max(1e-3 * max_u)
}

/// Pointwise impedance recovery on trusted nodes.
pub fn recover_impedance(trace: &BoundaryTrace, threshold: f64) -> Result<ReconstructionResult> {
    if !(threshold > 0.0) {
        return Err(Error::ArgumentOutOfRange(format!(
            "trust threshold must be positive, got {threshold}"
        )));
    }
    let mut lambda_hat = vec![0.0_f64; trace.u.len()];
    let mut trusted = vec![false; trace.u.len()];
    let mut max_imag: f64 = 0.0;
    let mut any = false;
    for (i, (u, dnu)) in trace.u.iter().zip(&trace.dnu).enumerate() {
        if u.norm() >= threshold {
            // division only happens on this branch
            debug_assert!(u.norm() >= threshold);
            let q = Complex64::new(0.0, 1.0) * dnu / u;
            lambda_hat[i] = q.re;
            trusted[i] = true;
            max_imag = max_imag.max(q.im.abs());
            any = true;
        }
    }
    if !any {
        return Err(Error::AllMasked { threshold });
    }
    Ok(ReconstructionResult {
        lambda_hat,
        trusted,
        threshold,
        max_imag_residual: max_imag,
    })
}

/// Error norm for the recovered impedance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorNorm {
    Sup,
    L2,
}

/// Norm of `lambda_true - lambda_hat` over trusted nodes.
pub fn impedance_error(
    truth: &ImpedanceField,
    trace: &BoundaryTrace,
    result: &ReconstructionResult,
    norm: ErrorNorm,
) -> Result<f64> {
    let mut sup: f64 = 0.0;
    let mut l2_sq = 0.0;
    let mut any = false;
    for (i, &(theta, phi)) in trace.angles.iter().enumerate() {
        if !result.trusted[i] {
            continue;
        }
        any = true;
        let diff = (truth.eval(theta, phi) - result.lambda_hat[i]).abs();
        sup = sup.max(diff);
        l2_sq += trace.weights[i] * diff * diff;
    }
    if !any {
        return Err(Error::AllMasked {
            threshold: result.threshold,
        });
    }
    Ok(match norm {
        ErrorNorm::Sup => sup,
        ErrorNorm::L2 => l2_sq.sqrt(),
    })
}
