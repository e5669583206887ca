//! Coating partition of the boundary into a Dirichlet part and an
//! impedance part. The supported family is a polar cap: the Dirichlet
//! portion is `{polar angle < cap_angle}` and the impedance portion is
//! its complement, so the interface is a single smooth circle.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Region tag for boundary nodes and samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Dirichlet,
    Impedance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoatingPartition {
    /// The whole boundary carries the impedance condition.
    FullyImpedance,
    /// Dirichlet cap `{theta < cap_angle}`, impedance on the complement.
    PolarCap { cap_angle: f64 },
}

impl CoatingPartition {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::FullyImpedance => Ok(()),
            Self::PolarCap { cap_angle } => {
                if *cap_angle > 0.0 && *cap_angle < PI {
                    Ok(())
                } else {
                    Err(Error::ArgumentOutOfRange(format!(
                        "cap angle {cap_angle} outside (0, pi)"
                    )))
                }
            }
        }
    }

    pub fn region(&self, theta: f64) -> Region {
        match self {
            Self::FullyImpedance => Region::Impedance,
            Self::PolarCap { cap_angle } => {
                if theta < *cap_angle {
                    Region::Dirichlet
                } else {
                    Region::Impedance
                }
            }
        }
    }

    /// Polar-angle distance from an impedance point to the Dirichlet part
    /// (the cap-model proxy for the geodesic distance; infinite when there
    /// is no Dirichlet part, zero inside it).
    pub fn angular_distance_to_dirichlet(&self, theta: f64) -> f64 {
        match self {
            Self::FullyImpedance => f64::INFINITY,
            Self::PolarCap { cap_angle } => (theta - cap_angle).max(0.0),
        }
    }

    pub fn cap_angle(&self) -> Option<f64> {
        match self {
            Self::FullyImpedance => None,
            Self::PolarCap { cap_angle } => Some(*cap_angle),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fully_impedance_has_no_dirichlet_part() {
        let p = CoatingPartition::FullyImpedance;
        p.validate().unwrap();
        assert_eq!(p.region(0.1), Region::Impedance);
        assert_eq!(p.region(3.0), Region::Impedance);
        assert!(p.angular_distance_to_dirichlet(1.0).is_infinite());
    }

    #[test]
    fn polar_cap_splits_by_polar_angle() {
        let p = CoatingPartition::PolarCap { cap_angle: PI / 3.0 };
        p.validate().unwrap();
        assert_eq!(p.region(0.5), Region::Dirichlet);
        assert_eq!(p.region(1.5), Region::Impedance);
        assert!((p.angular_distance_to_dirichlet(1.5) - (1.5 - PI / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn degenerate_cap_rejected() {
        assert!(CoatingPartition::PolarCap { cap_angle: 0.0 }.validate().is_err());
        assert!(CoatingPartition::PolarCap { cap_angle: PI }.validate().is_err());
    }
}
