//! Star-shaped surfaces, coating partitions, impedance fields, surface
//! quadrature meshes, and local boundary neighborhoods.

pub mod chart;
pub mod impedance;
pub mod mesh;
pub mod partition;
pub mod patch;
pub mod surface;

pub use chart::{ChartPoint, LocalChart};
pub use impedance::{ImpedanceField, ImpedanceModel};
pub use mesh::{build_quadrature, BoundaryMesh};
pub use partition::{CoatingPartition, Region};
pub use patch::{
    local_patch, surface_patch, volume_patch, LocalPatch, PatchSamples, SurfacePatch, VolumePatch,
};
pub use surface::{HarmonicCoeff, StarSurface, SurfaceFrame, SurfaceSpec};

/// Build a validated surface from its descriptor.
pub fn build_surface(spec: &SurfaceSpec) -> crate::Result<StarSurface> {
    StarSurface::build(spec)
}

/// Point, outward normal, and area element at a surface parameter.
pub fn surface_frame(surface: &StarSurface, theta: f64, phi: f64) -> SurfaceFrame {
    surface.frame(theta, phi)
}
