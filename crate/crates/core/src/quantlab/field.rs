//! Field abstractions the probes run on: solved scattering fields,
//! synthetic fields, and globally rescaled wrappers for invariance checks.

use num_complex::Complex64;

use crate::error::Result;
use crate::scatter::{FieldWant, ScatterSolution};
use crate::vec3::Vec3;

/// Complex field evaluated at exterior volume points.
pub trait VolumeField: Sync {
    fn eval_points(&self, points: &[Vec3]) -> Result<Vec<Complex64>>;
}

/// Complex field evaluated at boundary parameters.
pub trait SurfaceField: Sync {
    fn eval_surface(&self, angles: &[(f64, f64)]) -> Result<Vec<Complex64>>;
}

impl VolumeField for ScatterSolution {
    fn eval_points(&self, points: &[Vec3]) -> Result<Vec<Complex64>> {
        self.eval(points, FieldWant::Total)
    }
}

impl SurfaceField for ScatterSolution {
    fn eval_surface(&self, angles: &[(f64, f64)]) -> Result<Vec<Complex64>> {
        angles
            .iter()
            .map(|&(t, p)| self.boundary_value(t, p))
            .collect()
    }
}

/// Difference of two solutions, `U = u_1 - u_2`.
pub struct DifferenceField<'a> {
    pub first: &'a ScatterSolution,
    pub second: &'a ScatterSolution,
}

impl VolumeField for DifferenceField<'_> {
    fn eval_points(&self, points: &[Vec3]) -> Result<Vec<Complex64>> {
        let a = self.first.eval_points(points)?;
        let b = self.second.eval_points(points)?;
        Ok(a.iter().zip(&b).map(|(x, y)| x - y).collect())
    }
}

/// Constant synthetic field.
pub struct UniformField(pub Complex64);

impl VolumeField for UniformField {
    fn eval_points(&self, points: &[Vec3]) -> Result<Vec<Complex64>> {
        Ok(vec![self.0; points.len()])
    }
}

impl SurfaceField for UniformField {
    fn eval_surface(&self, angles: &[(f64, f64)]) -> Result<Vec<Complex64>> {
        Ok(vec![self.0; angles.len()])
    }
}

/// Global complex rescaling of another field.
pub struct Scaled<'a, F: ?Sized> {
    pub field: &'a F,
    pub factor: Complex64,
}

impl<F: VolumeField + ?Sized> VolumeField for Scaled<'_, F> {
    fn eval_points(&self, points: &[Vec3]) -> Result<Vec<Complex64>> {
        Ok(self
            .field
            .eval_points(points)?
            .into_iter()
            .map(|v| v * self.factor)
            .collect())
    }
}

impl<F: SurfaceField + ?Sized> SurfaceField for Scaled<'_, F> {
    fn eval_surface(&self, angles: &[(f64, f64)]) -> Result<Vec<Complex64>> {
        Ok(self
            .field
            .eval_surface(angles)?
            .into_iter()
            .map(|v| v * self.factor)
            .collect())
    }
}
