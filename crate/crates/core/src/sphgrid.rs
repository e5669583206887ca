//! Quadrature grids on the unit sphere and the spherical-harmonic
//! analysis/synthesis used by far-field patterns and back-propagation.
//!
//! The grid is Gauss-Legendre in `cos(theta)` times a uniform trapezoid in
//! `phi`, so the analysis of a pattern band-limited to degree `n_theta - 1`
//! is exact up to rounding.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::harmonics::{sh_index, sh_len, sph_harm_from_table};
use crate::specfun::legendre::AssocLegendre;
use crate::specfun::quadrature::gauss_legendre;
use crate::vec3::{self, Vec3};

#[derive(Debug)]
pub struct SphereGrid {
    n_theta: usize,
    n_phi: usize,
    thetas: Vec<f64>,
    phis: Vec<f64>,
    /// Solid-angle weights per node; they sum to `4 pi`.
    weights: Vec<f64>,
    directions: Vec<Vec3>,
}

/// Complex spherical-harmonic coefficients indexed by `n^2 + n + m`.
#[derive(Debug, Clone)]
pub struct ShCoeffs {
    pub n_max: usize,
    pub values: Vec<Complex64>,
}

impl ShCoeffs {
    pub fn zero(n_max: usize) -> Self {
        Self {
            n_max,
            values: vec![Complex64::new(0.0, 0.0); sh_len(n_max)],
        }
    }

    #[inline]
    pub fn get(&self, n: usize, m: i32) -> Complex64 {
        self.values[sh_index(n, m)]
    }

    #[inline]
    pub fn set(&mut self, n: usize, m: i32, v: Complex64) {
        self.values[sh_index(n, m)] = v;
    }

    /// `sum |c|^2`, the squared L2(S2) norm of the synthesized function.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum()
    }
}

impl SphereGrid {
    pub fn build(n_theta: usize, n_phi: usize) -> Result<Arc<Self>> {
        if n_theta < 4 || n_phi < 8 {
            return Err(Error::ResolutionTooCoarse(format!(
                "sphere grid {n_theta}x{n_phi} below minimum 4x8"
            )));
        }
        let (t, wt) = gauss_legendre(n_theta);
        let thetas: Vec<f64> = (0..n_theta).map(|i| t[n_theta - 1 - i].acos()).collect();
        let phis: Vec<f64> = (0..n_phi).map(|j| 2.0 * PI * j as f64 / n_phi as f64).collect();
        let dphi = 2.0 * PI / n_phi as f64;
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        let mut directions = Vec::with_capacity(n_theta * n_phi);
        for i in 0..n_theta {
            let w = wt[n_theta - 1 - i] * dphi;
            for &phi in &phis {
                weights.push(w);
                directions.push(vec3::direction(thetas[i], phi));
            }
        }
        Ok(Arc::new(Self {
            n_theta,
            n_phi,
            thetas,
            phis,
            weights,
            directions,
        }))
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn directions(&self) -> &[Vec3] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node_angles(&self, i: usize) -> (f64, f64) {
        (self.thetas[i / self.n_phi], self.phis[i % self.n_phi])
    }

    /// Largest degree the grid analyzes exactly for band-limited data.
    pub fn max_analysis_degree(&self) -> usize {
        (self.n_theta - 1).min(self.n_phi / 2 - 1)
    }

    pub fn same_layout(&self, other: &Self) -> bool {
        self.n_theta == other.n_theta && self.n_phi == other.n_phi
    }

    /// Quadrature L2(S2) norm of nodal values.
    pub fn l2_norm(&self, values: &[Complex64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        self.weights
            .iter()
            .zip(values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Spherical-harmonic analysis by quadrature.
    pub fn analyze(&self, values: &[Complex64], n_max: usize) -> Result<ShCoeffs> {
        if values.len() != self.len() {
            return Err(Error::GridMismatch(format!(
                "{} values on a grid of {} nodes",
                values.len(),
                self.len()
            )));
        }
        let n_max = n_max.min(self.max_analysis_degree());
        let mut coeffs = ShCoeffs::zero(n_max);
        for (row, &theta) in self.thetas.iter().enumerate() {
            let table = AssocLegendre::new(n_max, theta);
            for (col, &phi) in self.phis.iter().enumerate() {
                let idx = row * self.n_phi + col;
                let wv = self.weights[idx] * values[idx];
                for n in 0..=n_max {
                    for m in -(n as i32)..=n as i32 {
                        let y = sph_harm_from_table(&table, n, m, phi);
                        coeffs.values[sh_index(n, m)] += wv * y.conj();
                    }
                }
            }
        }
        Ok(coeffs)
    }

    /// Synthesis of coefficients at the grid nodes.
    pub fn synthesize(&self, coeffs: &ShCoeffs) -> Vec<Complex64> {
        let mut values = vec![Complex64::new(0.0, 0.0); self.len()];
        for (row, &theta) in self.thetas.iter().enumerate() {
            let table = AssocLegendre::new(coeffs.n_max, theta);
            for (col, &phi) in self.phis.iter().enumerate() {
                let idx = row * self.n_phi + col;
                let mut acc = Complex64::new(0.0, 0.0);
                for n in 0..=coeffs.n_max {
                    for m in -(n as i32)..=n as i32 {
                        acc += coeffs.get(n, m) * sph_harm_from_table(&table, n, m, phi);
                    }
                }
                values[idx] = acc;
            }
        }
        values
    }
}
