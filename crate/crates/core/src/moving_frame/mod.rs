//! Moving frames of motions `t ↦ x(t)` under SGal(3).
//!
//! A motion is sampled through its 4-jets ([`Jet4`]); the third-order
//! frame ([`frame`]) is the group element
//!
//! ```text
//! ρ = (t, x_t, [e₁ e₂ e₃], x),
//! e₁ = x_tt/‖x_tt‖,  e₂ = x_tt×x_ttt/‖x_tt×x_ttt‖,  e₃ = e₁×e₂
//! ```
//!
//! which satisfies `ρ·(0, 0) = (t, x)` and `frame(g·j) = g·frame(j)`.
//! Its rotation is expressed by [`normalize_angles`] in the action chart of
//! [`crate::maurer_cartan`]. The invariants are
//! `a₁ = ‖x_tt‖`, `a₂ = ‖x_tt×x_ttt‖`, `a₃ = (x_tt×x_ttt)·x_tttt`, and
//! `J = a₁a₃/a₂²`.

mod differentiation;
mod frame;
mod jet;
mod motion;

pub use differentiation::{fornberg_weights, jets_from_samples, savitzky_golay, DiffScheme, SampledJets, Smoothing};
pub use frame::{frame, invariants, normalize_angles, FrameError, FrameResult, FrameTolerances, InvariantsAtPoint};
pub use jet::{Jet4, JET4_CSV_HEADER};
pub use motion::{AnalyticMotion, Motion, MotionError, PerturbedMotion, SampledMotion, Term};
