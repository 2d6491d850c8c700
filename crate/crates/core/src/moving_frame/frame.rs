use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::jet::Jet4;
use crate::group::{EulerAngles, GalileanElement, Rotation};
use crate::linalg::Mat3;
use crate::maurer_cartan::{chart_angles, CHART_DEGENERACY_TOL};
use crate::scalar::{wrap_angle, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("acceleration vanishes (|x_tt| = {a1:e})")]
    DegenerateAcceleration { a1: f64 },
    #[error("x_tt and x_ttt are parallel (sin of angle = {sin_angle:e})")]
    DegenerateTorsion { sin_angle: f64 },
}

/// Regularity thresholds.
///
/// `tol_a` bounds `‖x_tt‖` from below (absolute). `tol_b` bounds the sine of
/// the angle between `x_tt` and `x_ttt` from below. Jets whose sine is below
/// `conditioning` are computed but flagged.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameTolerances<T> {
    pub tol_a: T,
    pub tol_b: T,
    pub conditioning: T,
}

impl<T: Real> Default for FrameTolerances<T> {
    fn default() -> Self {
        Self { tol_a: T::lit(1e-9), tol_b: T::lit(1e-9), conditioning: T::lit(1e-4) }
    }
}

impl<T: Real> FrameTolerances<T> {
    /// Defaults with `tol_a` scaled to a motion of size `scale`.
    pub fn for_scale(scale: T) -> Self {
        let d = Self::default();
        Self { tol_a: d.tol_a * scale, ..d }
    }

    fn torsion_sine(&self, j: &Jet4<T>) -> T {
        let denom = j.x2.norm() * j.x3.norm();
        if denom == T::zero() {
            T::zero()
        } else {
            j.x2.cross(&j.x3).norm() / denom
        }
    }

    fn check(&self, j: &Jet4<T>) -> Result<T, FrameError> {
        let a1 = j.x2.norm();
        if a1 <= self.tol_a {
            return Err(FrameError::DegenerateAcceleration { a1: a1.as_f64() });
        }
        let sine = self.torsion_sine(j);
        if sine <= self.tol_b {
            return Err(FrameError::DegenerateTorsion { sin_angle: sine.as_f64() });
        }
        Ok(sine)
    }
}

/// Action-chart angles `(θ₁, θ₂, θ₃)` of the frame rotation:
///
/// ```text
/// θ₁ = −atan2(x₂'', x₁''),  θ₂ = −asin(x₃''/‖x_tt‖),
/// θ₃ = atan2(−‖x_tt‖ (x_tt×x_ttt)₃, (x_tt×(x_tt×x_ttt))₃)
/// ```
///
/// The inverse rotation sends `x_tt` to `(‖x_tt‖, 0, 0)`. At the chart
/// singularity (`x_tt` along the third axis) the angles come from the
/// canonical decomposition with θ₃ pinned to 0.
pub fn normalize_angles<T: Real>(j: &Jet4<T>, tol: &FrameTolerances<T>) -> Result<EulerAngles<T>, FrameError> {
    tol.check(j)?;
    let a = j.x2.norm();
    let theta2 = -(j.x2[2] / a).max(-T::one()).min(T::one()).asin();
    if theta2.cos() < T::lit(CHART_DEGENERACY_TOL) {
        return Ok(chart_angles(&frame_rotation(j)).angles);
    }
    let b = j.x2.cross(&j.x3);
    let c = j.x2.cross(&b);
    let theta1 = wrap_angle(-j.x2[1].atan2(j.x2[0]));
    let theta3 = (-a * b[2]).atan2(c[2]);
    Ok(EulerAngles::new(theta1, theta2, theta3))
}

fn frame_rotation<T: Real>(j: &Jet4<T>) -> Rotation<T> {
    let e1 = j.x2.scale(T::one() / j.x2.norm());
    let b = j.x2.cross(&j.x3);
    let e2 = b.scale(T::one() / b.norm());
    let c = j.x2.cross(&b);
    let e3 = c.scale(T::one() / c.norm());
    Rotation::from_matrix_unchecked(Mat3::from_cols(e1, e2, e3))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrameResult<T> {
    /// `(t, x_t, [e₁ e₂ e₃], x)`.
    pub rho: GalileanElement<T>,
    /// Action-chart angles of the rotation block.
    pub angles: EulerAngles<T>,
    pub regular: bool,
    /// `false` when `x_tt` and `x_ttt` are nearly parallel.
    pub well_conditioned: bool,
}

/// Third-order moving frame at a regular jet.
pub fn frame<T: Real>(j: &Jet4<T>, tol: &FrameTolerances<T>) -> Result<FrameResult<T>, FrameError> {
    let sine = tol.check(j)?;
    let rho = GalileanElement::new(j.t, j.x1, frame_rotation(j), j.x);
    Ok(FrameResult {
        rho,
        angles: normalize_angles(j, tol)?,
        regular: true,
        well_conditioned: sine >= tol.conditioning,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantsAtPoint<T> {
    /// `‖x_tt‖`
    pub a1: T,
    /// `‖x_tt × x_ttt‖`
    pub a2: T,
    /// `(x_tt × x_ttt)·x_tttt`, absent when `x_tt ∥ x_ttt`.
    pub a3: Option<T>,
    /// `a₁a₃/a₂²`, absent when `x_tt ∥ x_ttt`.
    pub jcurv: Option<T>,
    /// Both normalizations are defined.
    pub regular: bool,
    pub well_conditioned: bool,
}

pub fn invariants<T: Real>(j: &Jet4<T>, tol: &FrameTolerances<T>) -> InvariantsAtPoint<T> {
    let b = j.x2.cross(&j.x3);
    let a1 = j.x2.norm();
    let a2 = b.norm();
    let status = tol.check(j);
    let (a3, jcurv) = match status {
        Ok(_) => {
            let a3 = b.dot(&j.x4);
            (Some(a3), Some(a1 * a3 / (a2 * a2)))
        }
        Err(_) => (None, None),
    };
    InvariantsAtPoint {
        a1,
        a2,
        a3,
        jcurv,
        regular: status.is_ok(),
        well_conditioned: matches!(status, Ok(s) if s >= tol.conditioning),
    }
}
