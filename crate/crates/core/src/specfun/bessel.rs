//! Spherical Bessel and Hankel functions.
//!
//! `j_n` uses Miller's downward recurrence with normalization against
//! `j_0 = sin(x)/x` (or `j_1` when `x` sits near a zero of `j_0`), `y_n`
//! uses the stable upward recurrence, and `h_n = j_n + i y_n`. Derivatives
//! come from `f_n' = f_{n-1} - (n+1)/x f_n`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order for desk-scale runs (`kr <= 20`).
pub const DEFAULT_N_MAX: usize = 60;

/// Values and derivatives of one spherical radial function family at fixed order.
#[derive(Debug, Clone, Copy)]
pub struct RadialBundle {
    pub n: usize,
    pub x: f64,
    pub j: f64,
    pub j_prime: f64,
    pub h: Complex64,
    pub h_prime: Complex64,
}

/// Tables of `j_n`, `y_n` and their derivatives for `n = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct RadialTable {
    pub x: f64,
    pub j: Vec<f64>,
    pub y: Vec<f64>,
    pub j_prime: Vec<f64>,
    pub y_prime: Vec<f64>,
}

impl RadialTable {
    pub fn h(&self, n: usize) -> Complex64 {
        Complex64::new(self.j[n], self.y[n])
    }

    pub fn h_prime(&self, n: usize) -> Complex64 {
        Complex64::new(self.j_prime[n], self.y_prime[n])
    }

    pub fn bundle(&self, n: usize) -> RadialBundle {
        RadialBundle {
            n,
            x: self.x,
            j: self.j[n],
            j_prime: self.j_prime[n],
            h: self.h(n),
            h_prime: self.h_prime(n),
        }
    }
}

/// Spherical Bessel functions of the first kind, `j_0..=j_{n_max}`.
pub fn spherical_j(n_max: usize, x: f64) -> Result<Vec<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::ArgumentOutOfRange(format!(
            "spherical Bessel argument must be positive and finite, got {x}"
        )));
    }
    // Start the downward recurrence far enough above both n_max and x.
    let start = n_max + 16 + (1.5 * x) as usize;
    let mut v = vec![0.0_f64; start + 2];
    v[start + 1] = 0.0;
    v[start] = 1e-300;
    for n in (1..=start).rev() {
        v[n - 1] = (2 * n + 1) as f64 / x * v[n] - v[n + 1];
        if v[n - 1].abs() > 1e280 {
            let s = 1e-280;
            for w in v[n - 1..].iter_mut() {
                *w *= s;
            }
        }
    }
    let j0 = x.sin() / x;
    let j1 = x.sin() / (x * x) - x.cos() / x;
    // Normalize against whichever reference value is better conditioned.
    let scale = if j0.abs() >= j1.abs() {
        j0 / v[0]
    } else {
        j1 / v[1]
    };
    Ok(v[..=n_max].iter().map(|w| w * scale).collect())
}

/// Spherical Bessel functions of the second kind, `y_0..=y_{n_max}`.
pub fn spherical_y(n_max: usize, x: f64) -> Result<Vec<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::ArgumentOutOfRange(format!(
            "spherical Neumann argument must be positive and finite, got {x}"
        )));
    }
    let mut y = vec![0.0_f64; n_max + 1];
    y[0] = -x.cos() / x;
    if n_max >= 1 {
        y[1] = -x.cos() / (x * x) - x.sin() / x;
    }
    for n in 2..=n_max {
        y[n] = (2 * n - 1) as f64 / x * y[n - 1] - y[n - 2];
    }
    Ok(y)
}

fn derivative(values: &[f64], x: f64) -> Vec<f64> {
    let n_max = values.len() - 1;
    let mut d = vec![0.0_f64; n_max + 1];
    // f_0' = -f_1 needs one extra order when n_max = 0; callers always pass n_max >= 1.
    d[0] = if n_max >= 1 {
        -values[1]
    } else {
        f64::NAN
    };
    for n in 1..=n_max {
        d[n] = values[n - 1] - (n + 1) as f64 / x * values[n];
    }
    d
}

/// Full table of spherical radial functions up to `n_max`.
pub fn radial_table(n_max: usize, x: f64) -> Result<RadialTable> {
    let order = n_max.max(1);
    let j = spherical_j(order, x)?;
    let y = spherical_y(order, x)?;
    let j_prime = derivative(&j, x);
    let y_prime = derivative(&y, x);
    Ok(RadialTable {
        x,
        j,
        y,
        j_prime,
        y_prime,
    })
}

/// Single-order bundle `(j, j', h, h')`, bounded by `n_max_limit`.
pub fn radial_bundle(n: usize, x: f64, n_max_limit: usize) -> Result<RadialBundle> {
    if n > n_max_limit {
        return Err(Error::ArgumentOutOfRange(format!(
            "order {n} exceeds configured maximum {n_max_limit}"
        )));
    }
    Ok(radial_table(n, x)?.bundle(n))
}

/// Partial sum of the plane-wave expansion
/// `e^{i k r cos(gamma)} = sum (2n+1) i^n j_n(kr) P_n(cos gamma)`,
/// together with a tail-size estimate from the next ten terms.
pub fn plane_wave_partial_sum(
    k: f64,
    r: f64,
    cos_gamma: f64,
    n_terms: usize,
) -> Result<(Complex64, f64)> {
    if cos_gamma.abs() > 1.0 + 1e-12 {
        return Err(Error::ArgumentOutOfRange(format!(
            "cos(gamma) = {cos_gamma} outside [-1, 1]"
        )));
    }
    let x = k * r;
    if x == 0.0 {
        return Ok((Complex64::new(1.0, 0.0), 0.0));
    }
    let extra = 10;
    let table = radial_table(n_terms + extra, x)?;
    let p = super::legendre::legendre_p_array(n_terms + extra, cos_gamma.clamp(-1.0, 1.0))?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut i_pow = Complex64::new(1.0, 0.0);
    for n in 0..=n_terms {
        sum += (2 * n + 1) as f64 * i_pow * table.j[n] * p[n];
        i_pow *= Complex64::new(0.0, 1.0);
    }
    let tail: f64 = (n_terms + 1..=n_terms + extra)
        .map(|n| (2 * n + 1) as f64 * table.j[n].abs())
        .sum();
    Ok((sum, tail))
}
