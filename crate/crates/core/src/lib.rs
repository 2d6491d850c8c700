//! The special Galilean group SGal(3) acting on spacetime, its Lie algebra
//! and Maurer-Cartan coframe, moving frames of motions `t ↦ x(t)`, their
//! differential invariants, and invariant-based equivalence testing.
//!
//! Geometry is generic over [`scalar::Real`] (`f32`, `f64`); the Lie
//! algebra layer also runs over exact rationals.

pub mod algebra;
pub mod checks;
pub mod equivalence;
pub mod group;
pub mod linalg;
pub mod maurer_cartan;
pub mod moving_frame;
pub mod prolongation;
pub mod scalar;

pub use scalar::{Coefficient, Real};

pub type GalileanElementF64 = group::GalileanElement<f64>;
pub type GalileanElementF32 = group::GalileanElement<f32>;
pub type RotationF64 = group::Rotation<f64>;
pub type EulerAnglesF64 = group::EulerAngles<f64>;
pub type EventF64 = group::Event<f64>;
pub type Vec3F64 = linalg::Vec3<f64>;
pub type Jet4F64 = moving_frame::Jet4<f64>;
pub type JetNF64 = prolongation::JetN<f64>;
pub type AnalyticMotionF64 = moving_frame::AnalyticMotion<f64>;
pub type SampledMotionF64 = moving_frame::SampledMotion<f64>;
pub type GroupPointF64 = maurer_cartan::GroupPoint<f64>;
pub type GroupTangentF64 = maurer_cartan::GroupTangent<f64>;
/// Affine vector field with exact rational coefficients.
pub type AffineFieldQ = algebra::AffineField<num_rational::Rational64>;
pub type StructureTableQ = algebra::StructureTable<num_rational::Rational64>;
