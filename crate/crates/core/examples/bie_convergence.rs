//! Mesh convergence of the collocation solver against the impedance-sphere
//! series for the canonical case k = a = lambda = 1.
//!
//! ```bash
//! cargo run --release --example bie_convergence
//! ```

use std::sync::Arc;
use std::time::Instant;

use impedlab_core::geometry::{
    build_quadrature, CoatingPartition, ImpedanceField, StarSurface, SurfaceSpec,
};
use impedlab_core::scatter::{solve_direct_bie, sphere_series, BieOptions, WaveConfig};
use impedlab_core::sphgrid::SphereGrid;

fn main() {
    let wave = WaveConfig::new(1.0, [0.0, 0.0, 1.0]).unwrap();
    let impedance = ImpedanceField::constant(1.0);
    let surface = Arc::new(StarSurface::build(&SurfaceSpec::sphere(1.0)).unwrap());
    let grid = SphereGrid::build(24, 48).unwrap();
    let series = sphere_series(&wave, 1.0, 1.0, 40).unwrap();
    let series_ff = series.far_field(&grid);
    let norm = series_ff.l2_norm();

    println!("mesh        nodes   rel L2 error   cond est    time");
    for (nt, np) in [(12usize, 24usize), (16, 32), (24, 48), (32, 64)] {
        let mesh = Arc::new(
            build_quadrature(
                surface.clone(),
                CoatingPartition::FullyImpedance,
                nt,
                np,
                1.0,
            )
            .unwrap(),
        );
        let t0 = Instant::now();
        match solve_direct_bie(mesh, &wave, &impedance, &BieOptions::default()) {
            Ok(sol) => {
                let ff = sol.far_field(&grid);
                let rel = ff.l2_diff(&series_ff).unwrap() / norm;
                println!(
                    "{nt:3}x{np:<3}    {:5}   {rel:.6e}   {:.3e}   {:?}",
                    nt * np,
                    sol.condition_estimate.unwrap_or(f64::NAN),
                    t0.elapsed()
                );
            }
            Err(e) => println!("{nt:3}x{np:<3}    FAILED: {e}"),
        }
    }
}
