//! Helmholtz fundamental solution `phi(x,y) = e^{ik|x-y|} / (4 pi |x-y|)`
//! and its gradients. `k = 0` degenerates to the Laplace kernel.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vec3::{dot, sub, Vec3};

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Requested kernel quantity.
#[derive(Debug, Clone, Copy)]
pub enum KernelMode {
    Value,
    /// Derivative along the given unit normal at `y`.
    NormalDerivativeY(Vec3),
}

#[inline]
fn separation(x: Vec3, y: Vec3) -> Result<(Vec3, f64)> {
    let d = sub(x, y);
    let r = dot(d, d).sqrt();
    if r < 1e-300 {
        return Err(Error::CoincidentPoints { distance: r });
    }
    Ok((d, r))
}

/// Kernel value `phi(x, y)`.
pub fn fundamental_solution(k: f64, x: Vec3, y: Vec3) -> Result<Complex64> {
    let (_, r) = separation(x, y)?;
    Ok(Complex64::new(0.0, k * r).exp() / (FOUR_PI * r))
}

/// Gradient of `phi` with respect to `x`.
pub fn fundamental_solution_grad_x(k: f64, x: Vec3, y: Vec3) -> Result<[Complex64; 3]> {
    let (d, r) = separation(x, y)?;
    let phi = Complex64::new(0.0, k * r).exp() / (FOUR_PI * r);
    let factor = phi * (Complex64::new(0.0, k) - Complex64::new(1.0 / r, 0.0)) / r;
    Ok([factor * d[0], factor * d[1], factor * d[2]])
}

/// Gradient of `phi` with respect to `y` (`= -grad_x` since `phi` depends on `x - y`).
pub fn fundamental_solution_grad_y(k: f64, x: Vec3, y: Vec3) -> Result<[Complex64; 3]> {
    let g = fundamental_solution_grad_x(k, x, y)?;
    Ok([-g[0], -g[1], -g[2]])
}

/// Value or normal-derivative form, matching the documented kernel contract.
pub fn helmholtz_kernel(k: f64, x: Vec3, y: Vec3, mode: KernelMode) -> Result<Complex64> {
    match mode {
        KernelMode::Value => fundamental_solution(k, x, y),
        KernelMode::NormalDerivativeY(nu) => {
            let g = fundamental_solution_grad_y(k, x, y)?;
            Ok(g[0] * nu[0] + g[1] * nu[1] + g[2] * nu[2])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_separation_value() {
        let v = fundamental_solution(PI, [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]).unwrap();
        assert!((v - Complex64::new(-1.0 / (4.0 * PI), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn laplace_limit() {
        let v = fundamental_solution(0.0, [0.0, 0.0, 0.0], [0.0, 2.0, 0.0]).unwrap();
        assert!((v - Complex64::new(1.0 / (8.0 * PI), 0.0)).norm() < 1e-16);
    }

    #[test]
    fn radial_kernel_orthogonal_normal() {
        let x = [2.0, 0.0, 0.0];
        let y = [0.0, 0.0, 0.0];
        let nu = [0.0, 1.0, 0.0]; // perpendicular to x - y
        let v = helmholtz_kernel(1.3, x, y, KernelMode::NormalDerivativeY(nu)).unwrap();
        assert!(v.norm() < 1e-16);
    }

    #[test]
    fn reciprocity() {
        let x = [0.1, -0.4, 0.9];
        let y = [1.0, 0.2, -0.3];
        let a = fundamental_solution(2.7, x, y).unwrap();
        let b = fundamental_solution(2.7, y, x).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coincident_points_rejected() {
        let p = [0.3, 0.3, 0.3];
        assert!(matches!(
            fundamental_solution(1.0, p, p),
            Err(crate::error::Error::CoincidentPoints { .. })
        ));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let k = 1.7;
        let x = [0.4, 0.1, -0.2];
        let y = [1.2, -0.5, 0.7];
        let h = 1e-6;
        let g = fundamental_solution_grad_x(k, x, y).unwrap();
        for axis in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[axis] += h;
            xm[axis] -= h;
            let fd = (fundamental_solution(k, xp, y).unwrap()
                - fundamental_solution(k, xm, y).unwrap())
                / (2.0 * h);
            assert!((g[axis] - fd).norm() < 1e-8);
        }
    }
}
