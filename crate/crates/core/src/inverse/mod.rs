//! Impedance reconstruction pipeline: noise injection, far-to-near
//! back-propagation, near-to-boundary regularized continuation, and the
//! boundary-to-impedance quotient with its error metrics.

pub mod backprop;
pub mod continuation;
pub mod noise;
pub mod recover;

pub use backprop::{
    far_to_near, far_to_near_truncated, truncation_degree, NearFieldAnnulus, TruncationPolicy,
};
pub use continuation::{
    fit_and_trace, mfs_matrix, mfs_sources, near_to_boundary, BoundaryTrace,
    ContinuationDiagnostics, MfsConfig, RidgeSolver,
};
pub use noise::add_noise;
pub use recover::{
    default_trust_threshold, impedance_error, recover_impedance, ErrorNorm, ReconstructionResult,
};
