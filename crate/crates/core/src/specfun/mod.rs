//! Special functions and kernels: spherical Bessel/Hankel functions,
//! Legendre polynomials, spherical harmonics, and the Helmholtz
//! fundamental solution with its derivatives.

pub mod bessel;
pub mod harmonics;
pub mod kernel;
pub mod legendre;
pub mod quadrature;

pub use bessel::{
    plane_wave_partial_sum, radial_bundle, radial_table, RadialBundle, RadialTable, DEFAULT_N_MAX,
};
pub use harmonics::{real_sph_harm, sh_index, sh_len, sph_harm};
pub use kernel::{
    fundamental_solution, fundamental_solution_grad_x, fundamental_solution_grad_y,
    helmholtz_kernel, KernelMode,
};
pub use legendre::{legendre_p, legendre_p_array, AssocLegendre};
pub use quadrature::gauss_legendre;
