//! Radon-type transforms over affine subspaces of a nuclear Fréchet space,
//! computed through Gaussian measures on the hyperplanes.
//!
//! The space is modelled in coordinates: vectors are finitely supported
//! sequences and the Hilbertian norms are weighted by an eigenvalue schedule.

pub mod coord;
pub mod error;
pub mod format;
pub mod functional;
pub mod gaussian;
pub mod hermite;
pub mod quadrature;
pub mod sampling;
pub mod support;
pub mod transform;

pub use coord::{
    norm_p, pairing, project_affine, AffineSubspace, ComplexCoordVec, CoordVec, EigenSchedule, Entry, Hyperplane,
    SparseVec, Subspace,
};
pub use error::{Error, Result};
pub use functional::{ExponentialFunctional, Term};
pub use gaussian::{
    ball_mass_estimate, char_fn, s_transform_delta, translate_density, DualBall, GaussianSampler, MassEstimate,
    SampleBlock,
};
pub use hermite::{hermite_eval, HermiteBasis};
pub use quadrature::{GaussHermite, GaussLegendre, QuadratureSpec};
pub use sampling::{monte_carlo_mean, MeanEstimate};
pub use support::{
    classical_sinogram, delta_conv_check, sinogram_gen, support_recover, BumpFunction, DeltaConvergence,
    ProjectiveCompactSet, RecoveredSet, Sinogram, SinogramMethod, SinogramRow, SlabConstraint,
};
pub use transform::{
    disintegrate_eval, f_n_eval, radon_closed, radon_mc, radon_quadrature, Method, TransformResult,
};
