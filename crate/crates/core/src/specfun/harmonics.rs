//! Complex and real spherical harmonics built on the normalized
//! associated Legendre tables.

use num_complex::Complex64;

use super::legendre::AssocLegendre;
use crate::error::{Error, Result};

/// Flat index for complex coefficients with `|m| <= n`: `n^2 + n + m`.
#[inline]
pub fn sh_index(n: usize, m: i32) -> usize {
    ((n * n + n) as i64 + m as i64) as usize
}

/// Number of `(n, m)` pairs with `n <= n_max`.
#[inline]
pub fn sh_len(n_max: usize) -> usize {
    (n_max + 1) * (n_max + 1)
}

/// Orthonormal complex spherical harmonic `Y_n^m(theta, phi)`.
pub fn sph_harm(n: usize, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() as usize > n {
        return Err(Error::ArgumentOutOfRange(format!(
            "spherical harmonic order |{m}| exceeds degree {n}"
        )));
    }
    let table = AssocLegendre::new(n, theta);
    Ok(sph_harm_from_table(&table, n, m, phi))
}

/// Same as [`sph_harm`] but reusing a precomputed Legendre table.
#[inline]
pub fn sph_harm_from_table(table: &AssocLegendre, n: usize, m: i32, phi: f64) -> Complex64 {
    let ma = m.unsigned_abs() as usize;
    let base = table.p(n, ma);
    let (s, c) = (m as f64 * phi).sin_cos();
    if m >= 0 {
        base * Complex64::new(c, s)
    } else {
        // Y_n^{-m} = (-1)^m conj(Y_n^m) and Pbar is real.
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        sign * base * Complex64::new(c, s)
    }
}

/// Real spherical harmonic basis value used by radius and impedance maps:
/// `m = 0` is `Pbar_n0`, `m > 0` is `sqrt(2) Pbar_nm cos(m phi)`,
/// `m < 0` is `sqrt(2) Pbar_n|m| sin(|m| phi)`.
pub fn real_sph_harm(n: usize, m: i32, theta: f64, phi: f64) -> Result<f64> {
    if m.unsigned_abs() as usize > n {
        return Err(Error::ArgumentOutOfRange(format!(
            "real harmonic order |{m}| exceeds degree {n}"
        )));
    }
    let table = AssocLegendre::new(n, theta);
    Ok(real_basis_from_table(&table, n, m, phi).0)
}

/// `(value, d/dtheta, (1/sin) d/dphi)` of the real harmonic, pole-safe.
pub fn real_basis_from_table(table: &AssocLegendre, n: usize, m: i32, phi: f64) -> (f64, f64, f64) {
    let sqrt2 = std::f64::consts::SQRT_2;
    let ma = m.unsigned_abs() as usize;
    if m == 0 {
        (table.p(n, 0), table.dp(n, 0), 0.0)
    } else {
        let (s, c) = (ma as f64 * phi).sin_cos();
        let (trig, dtrig) = if m > 0 { (c, -s) } else { (s, c) };
        let value = sqrt2 * table.p(n, ma) * trig;
        let dtheta = sqrt2 * table.dp(n, ma) * trig;
        let dphi_over_sin = sqrt2 * table.p_over_sin(n, ma) * ma as f64 * dtrig;
        (value, dtheta, dphi_over_sin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn y00_normalization() {
        let y = sph_harm(0, 0, 1.0, 2.0).unwrap();
        assert!((y - Complex64::new(1.0 / (4.0 * PI).sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn conjugation_symmetry() {
        for &(n, m) in &[(3usize, 1i32), (5, 4), (8, 2), (2, 2)] {
            for &(theta, phi) in &[(0.3, 1.1), (1.9, 4.2), (2.8, 0.2)] {
                let plus = sph_harm(n, m, theta, phi).unwrap();
                let minus = sph_harm(n, -m, theta, phi).unwrap();
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((minus - sign * plus.conj()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn index_packing_is_dense() {
        let mut seen = vec![false; sh_len(6)];
        for n in 0..=6usize {
            for m in -(n as i32)..=n as i32 {
                let i = sh_index(n, m);
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn real_basis_gradient_matches_finite_differences() {
        let (theta, phi) = (1.2, 0.8);
        let h = 1e-6;
        for &(n, m) in &[(2usize, 0i32), (3, 2), (4, -3), (5, 1)] {
            let f = |t: f64, p: f64| real_sph_harm(n, m, t, p).unwrap();
            let table = AssocLegendre::new(n, theta);
            let (_, dt, dp_os) = real_basis_from_table(&table, n, m, phi);
            let fd_t = (f(theta + h, phi) - f(theta - h, phi)) / (2.0 * h);
            let fd_p = (f(theta, phi + h) - f(theta, phi - h)) / (2.0 * h) / theta.sin();
            assert!((dt - fd_t).abs() < 5e-8, "n={n} m={m}");
            assert!((dp_os - fd_p).abs() < 5e-8, "n={n} m={m}");
        }
    }
}
