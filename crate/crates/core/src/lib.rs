//! Relativistic charged-particle dynamics built on the Lorentz algebra.
//!
//! The four-velocity of a test charge is evolved as a succession of
//! infinitesimal boosts and rotations, `u(τ + dτ) = exp(k dτ Λ) u(τ)`, where
//! the algebra element `Λ = E·K − B·S` is the mixed field tensor. The crate
//! also provides the frame-transformation machinery showing that the boost
//! and rotation parameters of `Λ` transform exactly like electric and
//! magnetic fields.
//!
//! Modules:
//!
//! * [`minkowski`] – four-vectors, 4×4 matrices, the (+,−,−,−) metric.
//! * [`lie`] – generators, algebra elements, exponential, adjoint action.
//! * [`frames`] – finite boosts and parameter transformation between frames.
//! * [`fields`] – field tensors, field transformations, field providers.
//! * [`dynamics`] – steppers, trajectories and invariant monitors.

pub mod dynamics;
pub mod error;
pub mod fields;
pub mod frames;
pub mod lie;
pub mod minkowski;

pub use dynamics::{
    invariant_report, simulate, simulate_each, step_euler, step_expmap, step_rk4, ChargeRatio,
    InvariantMonitor, InvariantReport, ParticleState, Sample, StepperKind, Trajectory,
};
pub use error::{Error, Result};
pub use fields::{
    coulomb_field, covariant_field_tensor, field_matrix, transform_field_axis1,
    transform_field_general, Coulomb, EMField, FieldProvider,
};
pub use frames::{finite_boost, transform_params, two_frame_boost, FrameBoost, TwoFrameSolution};
pub use lie::{
    adjoint, boost_generator, commutator, extract_params, lie_matrix, mat_exp, mat_expm1,
    rotation_generator, LieParams,
};
pub use minkowski::{
    mat_apply, mat_inverse, mat_mul, minkowski_dot, FourVector, Matrix4, ThreeVector,
};
