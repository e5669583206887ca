//! Legendre polynomials and orthonormalized associated Legendre functions.

use crate::error::{Error, Result};

/// `P_n(t)` by the three-term recurrence.
pub fn legendre_p(n: usize, t: f64) -> Result<f64> {
    Ok(*legendre_p_array(n, t)?.last().unwrap())
}

/// `P_0(t) ..= P_n(t)`.
pub fn legendre_p_array(n: usize, t: f64) -> Result<Vec<f64>> {
    if t.abs() > 1.0 + 1e-12 {
        return Err(Error::ArgumentOutOfRange(format!(
            "Legendre argument {t} outside [-1, 1]"
        )));
    }
    let t = t.clamp(-1.0, 1.0);
    let mut p = vec![0.0_f64; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = t;
    }
    for m in 2..=n {
        p[m] = ((2 * m - 1) as f64 * t * p[m - 1] - (m - 1) as f64 * p[m - 2]) / m as f64;
    }
    Ok(p)
}

/// Fully normalized associated Legendre functions at one polar angle.
///
/// `p[(n,m)]` holds `Pbar_n^m(cos theta)` with Condon-Shortley phase and
/// normalization `int |Pbar_n^m(cos t) e^{im phi}|^2 dOmega = 1`. The table
/// also carries `dp = d/dtheta Pbar` and `s = Pbar / sin(theta)` (for m >= 1);
/// `s` is computed by its own recurrence so every entry stays finite at the
/// poles.
#[derive(Debug, Clone)]
pub struct AssocLegendre {
    n_max: usize,
    p: Vec<f64>,
    dp: Vec<f64>,
    s: Vec<f64>,
}

#[inline]
fn tri(n: usize, m: usize) -> usize {
    n * (n + 1) / 2 + m
}

impl AssocLegendre {
    pub fn new(n_max: usize, theta: f64) -> Self {
        let len = tri(n_max, n_max) + 1;
        let mut p = vec![0.0_f64; len];
        let mut s = vec![0.0_f64; len];
        let mut dp = vec![0.0_f64; len];
        let (sin_t, cos_t) = theta.sin_cos();
        let inv_4pi = 1.0 / (4.0 * std::f64::consts::PI);

        // Diagonal seeds: Pbar_m^m = c_m sin^m, with
        // c_{m+1} = -sqrt((2m+3)/(2m+2)) c_m and c_0 = sqrt(1/4pi).
        let mut c = inv_4pi.sqrt();
        p[tri(0, 0)] = c;
        for m in 1..=n_max {
            c *= -((2 * m + 1) as f64 / (2 * m) as f64).sqrt();
            p[tri(m, m)] = c * sin_t.powi(m as i32);
            s[tri(m, m)] = c * sin_t.powi(m as i32 - 1);
        }
        // First off-diagonal and the standard upward recurrence in n; the
        // same recurrence propagates s = Pbar/sin since sin is n-independent.
        for m in 0..n_max {
            let seed = ((2 * m + 3) as f64).sqrt() * cos_t;
            p[tri(m + 1, m)] = seed * p[tri(m, m)];
            if m >= 1 {
                s[tri(m + 1, m)] = seed * s[tri(m, m)];
            }
            for n in m + 2..=n_max {
                let a = ((4 * n * n - 1) as f64 / (n * n - m * m) as f64).sqrt();
                let b = (((n - 1) * (n - 1) - m * m) as f64
                    / (4 * (n - 1) * (n - 1) - 1) as f64)
                    .sqrt();
                p[tri(n, m)] = a * (cos_t * p[tri(n - 1, m)] - b * p[tri(n - 2, m)]);
                if m >= 1 {
                    s[tri(n, m)] = a * (cos_t * s[tri(n - 1, m)] - b * s[tri(n - 2, m)]);
                }
            }
        }
        // Derivatives. m = 0 uses dPbar_n0 = sqrt(n(n+1)) Pbar_n1; m >= 1 uses
        // the pole-safe combination n cos(t) s_n^m - e_nm s_{n-1}^m.
        for n in 1..=n_max {
            dp[tri(n, 0)] = ((n * (n + 1)) as f64).sqrt() * p[tri(n, 1)];
            for m in 1..=n {
                let mut d = n as f64 * cos_t * s[tri(n, m)];
                if n > m {
                    let e = (((n * n - m * m) * (2 * n + 1)) as f64 / (2 * n - 1) as f64).sqrt();
                    d -= e * s[tri(n - 1, m)];
                }
                dp[tri(n, m)] = d;
            }
        }
        Self { n_max, p, dp, s }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `Pbar_n^m`, m >= 0.
    #[inline]
    pub fn p(&self, n: usize, m: usize) -> f64 {
        self.p[tri(n, m)]
    }

    /// `d/dtheta Pbar_n^m`, m >= 0.
    #[inline]
    pub fn dp(&self, n: usize, m: usize) -> f64 {
        self.dp[tri(n, m)]
    }

    /// `Pbar_n^m / sin(theta)`, finite at the poles; only defined for m >= 1.
    #[inline]
    pub fn p_over_sin(&self, n: usize, m: usize) -> f64 {
        debug_assert!(m >= 1);
        self.s[tri(n, m)]
    }
}
