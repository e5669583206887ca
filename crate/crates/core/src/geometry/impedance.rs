//! Surface impedance models on the coated part of the boundary, with the
//! a priori lower bound `lambda >= lambda_0 > 0` and Lipschitz bound.

use serde::{Deserialize, Serialize};

use super::mesh::BoundaryMesh;
use super::partition::Region;
use crate::error::{Error, Result};
use crate::specfun::harmonics::real_basis_from_table;
use crate::specfun::legendre::AssocLegendre;
use crate::vec3;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum ImpedanceModel {
    Constant {
        value: f64,
    },
    /// Real spherical-harmonic expansion evaluated on surface directions.
    HarmonicExpansion {
        coeffs: Vec<crate::geometry::surface::HarmonicCoeff>,
    },
    /// Gaussian bump in geodesic angle around a direction.
    Bump {
        baseline: f64,
        amplitude: f64,
        center_theta: f64,
        center_phi: f64,
        width: f64,
    },
}

/// Impedance field with its a priori constants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImpedanceField {
    pub model: ImpedanceModel,
    /// Lower bound `lambda_0 > 0`.
    pub lambda0: f64,
    /// Lipschitz-norm bound `Lambda`.
    pub lipschitz_bound: f64,
}

impl ImpedanceField {
    pub fn constant(value: f64) -> Self {
        Self {
            model: ImpedanceModel::Constant { value },
            lambda0: value,
            lipschitz_bound: value.max(1.0),
        }
    }

    pub fn eval(&self, theta: f64, phi: f64) -> f64 {
        match &self.model {
            ImpedanceModel::Constant { value } => *value,
            ImpedanceModel::HarmonicExpansion { coeffs } => {
                let n_max = coeffs.iter().map(|c| c.n).max().unwrap_or(0);
                let table = AssocLegendre::new(n_max, theta);
                coeffs
                    .iter()
                    .map(|c| c.value * real_basis_from_table(&table, c.n, c.m, phi).0)
                    .sum()
            }
            ImpedanceModel::Bump {
                baseline,
                amplitude,
                center_theta,
                center_phi,
                width,
            } => {
                let d = vec3::direction(theta, phi);
                let c = vec3::direction(*center_theta, *center_phi);
                let angle = vec3::dot(d, c).clamp(-1.0, 1.0).acos();
                baseline + amplitude * (-(angle * angle) / (width * width)).exp()
            }
        }
    }

    /// Check `lambda >= lambda_0` at every impedance node and the discrete
    /// Lipschitz quotient over impedance node pairs against `Lambda`.
    pub fn validate_on_mesh(&self, mesh: &BoundaryMesh) -> Result<()> {
        if !(self.lambda0 > 0.0) {
            return Err(Error::ArgumentOutOfRange(format!(
                "lambda_0 must be positive, got {}",
                self.lambda0
            )));
        }
        let nodes: Vec<(usize, f64)> = mesh
            .node_indices()
            .filter(|&i| mesh.region(i) == Region::Impedance)
            .map(|i| {
                let (theta, phi) = mesh.node_angles(i);
                (i, self.eval(theta, phi))
            })
            .collect();
        for (i, v) in &nodes {
            if *v < self.lambda0 - 1e-12 {
                let (theta, phi) = mesh.node_angles(*i);
                return Err(Error::ArgumentOutOfRange(format!(
                    "impedance {v:.6e} at (theta, phi) = ({theta:.4}, {phi:.4}) \
                     undercuts lambda_0 = {:.6e}",
                    self.lambda0
                )));
            }
        }
        let mut max_quotient: f64 = 0.0;
        for (a, (i, vi)) in nodes.iter().enumerate() {
            for (j, vj) in nodes.iter().skip(a + 1) {
                let d = vec3::distance(mesh.node(*i), mesh.node(*j));
                if d > 1e-9 {
                    max_quotient = max_quotient.max((vi - vj).abs() / d);
                }
            }
        }
        if max_quotient > self.lipschitz_bound * (1.0 + 1e-9) {
            return Err(Error::ArgumentOutOfRange(format!(
                "discrete Lipschitz quotient {max_quotient:.6e} exceeds bound {:.6e}",
                self.lipschitz_bound
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::mesh::build_quadrature;
    use crate::geometry::partition::CoatingPartition;
    use crate::geometry::surface::{StarSurface, SurfaceSpec};
    use std::sync::Arc;

    fn unit_mesh() -> Arc<BoundaryMesh> {
        let s = Arc::new(StarSurface::build(&SurfaceSpec::sphere(1.0)).unwrap());
        Arc::new(build_quadrature(s, CoatingPartition::FullyImpedance, 12, 24, 1.0).unwrap())
    }

    #[test]
    fn constant_model_passes_its_own_bounds() {
        let mesh = unit_mesh();
        ImpedanceField::constant(1.0).validate_on_mesh(&mesh).unwrap();
    }

    #[test]
    fn lower_bound_violation_detected() {
        let mesh = unit_mesh();
        let field = ImpedanceField {
            model: ImpedanceModel::Constant { value: 0.3 },
            lambda0: 0.5,
            lipschitz_bound: 1.0,
        };
        assert!(field.validate_on_mesh(&mesh).is_err());
    }

    #[test]
    fn lipschitz_violation_detected() {
        let mesh = unit_mesh();
        let field = ImpedanceField {
            model: ImpedanceModel::Bump {
                baseline: 1.0,
                amplitude: 5.0,
                center_theta: 1.0,
                center_phi: 1.0,
                width: 0.05,
            },
            lambda0: 0.5,
            lipschitz_bound: 2.0,
        };
        assert!(field.validate_on_mesh(&mesh).is_err());
    }

    #[test]
    fn bump_model_evaluates_baseline_far_away() {
        let field = ImpedanceField {
            model: ImpedanceModel::Bump {
                baseline: 2.0,
                amplitude: 1.0,
                center_theta: 0.2,
                center_phi: 0.0,
                width: 0.3,
            },
            lambda0: 1.0,
            lipschitz_bound: 10.0,
        };
        assert!((field.eval(0.2, 0.0) - 3.0).abs() < 1e-12);
        assert!((field.eval(std::f64::consts::PI - 0.1, 1.0) - 2.0).abs() < 1e-6);
    }
}
