//! The special Galilean group SGal(3).
//!
//! An element `(s, v, R, y)` acts on a spacetime event `(t, x)` by
//! `(t, x) ↦ (t + s, R x + t v + y)` and is represented by the 5×5 matrix
//!
//! ```text
//! ┌ 1  0  s ┐
//! │ v  R  y │
//! └ 0  0  1 ┘
//! ```
//!
//! acting on homogeneous columns `[t, x, 1]ᵀ`. Only the identity component
//! (`det R = +1`) is modeled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Mat3, Vec3};
use crate::scalar::{wrap_angle, Real};

/// Default absolute tolerance for group-level equality checks.
pub const DEFAULT_TOL: f64 = 1e-12;

/// `|R₃₁|` closer than this to 1 is treated as gimbal lock.
pub const GIMBAL_LOCK_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("matrix is not special orthogonal (orthonormality defect {defect:e}, det {det})")]
    NotSpecialOrthogonal { defect: f64, det: f64 },
    #[error("5x5 matrix does not have the Galilean block pattern: {0}")]
    MalformedMatrix(&'static str),
    #[error("non-finite component in group element")]
    NonFinite,
}

/// A rotation in SO(3), stored as a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation<T>(Mat3<T>);

impl<T: Real> Rotation<T> {
    pub fn identity() -> Self {
        Self(Mat3::identity())
    }

    /// Validates orthonormality and orientation within `tol`.
    pub fn try_new(m: Mat3<T>, tol: T) -> Result<Self, GroupError> {
        let defect = m.orthonormality_defect();
        let det = m.det();
        if !(defect <= tol) || !((det - T::one()).abs() <= tol) {
            return Err(GroupError::NotSpecialOrthogonal { defect: defect.as_f64(), det: det.as_f64() });
        }
        Ok(Self(m))
    }

    /// Wraps a matrix without checking it. Callers guarantee `m ∈ SO(3)`.
    pub fn from_matrix_unchecked(m: Mat3<T>) -> Self {
        Self(m)
    }

    #[inline]
    pub fn matrix(&self) -> &Mat3<T> {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self(self.0.mul_mat(&o.0))
    }

    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        self.0.mul_vec(v)
    }

    pub fn orthonormality_defect(&self) -> T {
        self.0.orthonormality_defect()
    }

    pub fn det(&self) -> T {
        self.0.det()
    }
}

/// Euler angles in the convention `R = A₃(θ₃)·A₂(θ₂)·A₁(θ₁)` where
///
/// ```text
/// A₃(θ) = [[ cosθ, sinθ, 0], [-sinθ, cosθ, 0], [0, 0, 1]]
/// A₂(θ) = [[ cosθ, 0, sinθ], [0, 1, 0], [-sinθ, 0, cosθ]]
/// A₁(θ) = [[1, 0, 0], [0, cosθ, sinθ], [0, -sinθ, cosθ]]
/// ```
///
/// Canonical branch: θ₁, θ₃ ∈ (−π, π], θ₂ ∈ [−π/2, π/2].
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct EulerAngles<T> {
    pub theta1: T,
    pub theta2: T,
    pub theta3: T,
}

impl<T: Real> EulerAngles<T> {
    pub fn new(theta1: T, theta2: T, theta3: T) -> Self {
        Self { theta1, theta2, theta3 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    /// Wraps θ₁, θ₃ into `(−π, π]`; θ₂ is left untouched.
    pub fn canonical(self) -> Self {
        Self::new(wrap_angle(self.theta1), self.theta2, wrap_angle(self.theta3))
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.theta1, self.theta2, self.theta3]
    }
}

/// Result of inverting the Euler parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EulerDecomposition<T> {
    pub angles: EulerAngles<T>,
    /// Set when θ₂ = ±π/2; then θ₁ is pinned to 0 and θ₃ absorbs the
    /// remaining freedom.
    pub gimbal_lock: bool,
}

/// Elementary rotation `A₃(θ)` (acts in the x–y plane).
pub fn elementary_a3<T: Real>(th: T) -> Mat3<T> {
    let (s, c) = th.sin_cos();
    let (o, z) = (T::one(), T::zero());
    Mat3::from_rows([[c, s, z], [-s, c, z], [z, z, o]])
}

/// Elementary rotation `A₂(θ)` (acts in the x–z plane).
pub fn elementary_a2<T: Real>(th: T) -> Mat3<T> {
    let (s, c) = th.sin_cos();
    let (o, z) = (T::one(), T::zero());
    Mat3::from_rows([[c, z, s], [z, o, z], [-s, z, c]])
}

/// Elementary rotation `A₁(θ)` (acts in the y–z plane).
pub fn elementary_a1<T: Real>(th: T) -> Mat3<T> {
    let (s, c) = th.sin_cos();
    let (o, z) = (T::one(), T::zero());
    Mat3::from_rows([[o, z, z], [z, c, s], [z, -s, c]])
}

/// Closed-form `A₃(θ₃)·A₂(θ₂)·A₁(θ₁)`.
pub fn rotation_from_euler<T: Real>(a: EulerAngles<T>) -> Rotation<T> {
    let (s1, c1) = a.theta1.sin_cos();
    let (s2, c2) = a.theta2.sin_cos();
    let (s3, c3) = a.theta3.sin_cos();
    Rotation(Mat3::from_rows([
        [c2 * c3, c1 * s3 - s1 * s2 * c3, s1 * s3 + c1 * s2 * c3],
        [-c2 * s3, c1 * c3 + s1 * s2 * s3, s1 * c3 - c1 * s2 * s3],
        [-s2, -s1 * c2, c1 * c2],
    ]))
}

/// Branch inverse of [`rotation_from_euler`].
///
/// θ₂ = arcsin(−R₃₁); θ₁, θ₃ from two-argument arctangents. At gimbal lock
/// θ₁ is set to 0.
pub fn euler_from_rotation<T: Real>(r: &Rotation<T>) -> EulerDecomposition<T> {
    let m = r.matrix();
    let r31 = m.get(2, 0);
    let theta2 = (-r31).max(-T::one()).min(T::one()).asin();
    if (T::one() - r31.abs()) <= T::lit(GIMBAL_LOCK_TOL) {
        // cosθ₂ = 0, θ₁ = 0: R₁₂ = sinθ₃, R₂₂ = cosθ₃
        let theta3 = m.get(0, 1).atan2(m.get(1, 1));
        let theta2 = if r31 < T::zero() { T::FRAC_PI_2() } else { -T::FRAC_PI_2() };
        return EulerDecomposition {
            angles: EulerAngles::new(T::zero(), theta2, theta3).canonical(),
            gimbal_lock: true,
        };
    }
    let theta1 = (-m.get(2, 1)).atan2(m.get(2, 2));
    let theta3 = (-m.get(1, 0)).atan2(m.get(0, 0));
    EulerDecomposition { angles: EulerAngles::new(theta1, theta2, theta3).canonical(), gimbal_lock: false }
}

/// A spacetime event `(t, x)`; the homogeneous coordinate is implicitly 1.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Event<T> {
    pub t: T,
    pub x: Vec3<T>,
}

impl<T: Real> Event<T> {
    pub fn new(t: T, x: Vec3<T>) -> Self {
        Self { t, x }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), Vec3::zero())
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        (self.t - o.t).abs().max(self.x.max_abs_diff(&o.x))
    }
}

/// An element `(s, v, R, y)` of SGal(3).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GalileanElement<T> {
    /// Time shift.
    pub s: T,
    /// Boost velocity.
    pub v: Vec3<T>,
    pub r: Rotation<T>,
    /// Spatial translation.
    pub y: Vec3<T>,
}

impl<T: Real> GalileanElement<T> {
    pub fn new(s: T, v: Vec3<T>, r: Rotation<T>, y: Vec3<T>) -> Self {
        Self { s, v, r, y }
    }

    pub fn identity() -> Self {
        Self::new(T::zero(), Vec3::zero(), Rotation::identity(), Vec3::zero())
    }

    pub fn time_shift(s: T) -> Self {
        Self { s, ..Self::identity() }
    }

    pub fn boost(v: Vec3<T>) -> Self {
        Self { v, ..Self::identity() }
    }

    pub fn rotation(r: Rotation<T>) -> Self {
        Self { r, ..Self::identity() }
    }

    pub fn translation(y: Vec3<T>) -> Self {
        Self { y, ..Self::identity() }
    }

    /// Exact identity test (no tolerance).
    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn compose(&self, o: &Self) -> Self {
        compose(self, o)
    }

    pub fn inverse(&self) -> Self {
        inverse(self)
    }

    pub fn act(&self, e: &Event<T>) -> Event<T> {
        act(self, e)
    }

    /// Largest componentwise difference over `(s, v, R, y)`.
    pub fn max_abs_diff(&self, o: &Self) -> T {
        (self.s - o.s)
            .abs()
            .max(self.v.max_abs_diff(&o.v))
            .max(self.r.matrix().max_abs_diff(o.r.matrix()))
            .max(self.y.max_abs_diff(&o.y))
    }

    pub fn approx_eq(&self, o: &Self, tol: T) -> bool {
        self.max_abs_diff(o) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.s.is_finite()
            && self.v.is_finite()
            && self.y.is_finite()
            && self.r.matrix().0.iter().flatten().all(|c| c.is_finite())
    }

    pub fn embed_matrix(&self) -> [[T; 5]; 5] {
        embed_matrix(self)
    }

    /// Reads an element back from its 5×5 representation, checking the
    /// block pattern and the rotation block within `tol`.
    pub fn from_matrix(m: &[[T; 5]; 5], tol: T) -> Result<Self, GroupError> {
        if m.iter().flatten().any(|c| !c.is_finite()) {
            return Err(GroupError::NonFinite);
        }
        let near = |a: T, b: T| (a - b).abs() <= tol;
        if !near(m[0][0], T::one()) || (1..4).any(|j| !near(m[0][j], T::zero())) {
            return Err(GroupError::MalformedMatrix("first row must be (1, 0, 0, 0, s)"));
        }
        if (0..4).any(|j| !near(m[4][j], T::zero())) || !near(m[4][4], T::one()) {
            return Err(GroupError::MalformedMatrix("last row must be (0, 0, 0, 0, 1)"));
        }
        let mut rot = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                rot.0[i][j] = m[i + 1][j + 1];
            }
        }
        let r = Rotation::try_new(rot, tol)?;
        let v = Vec3::new(m[1][0], m[2][0], m[3][0]);
        let y = Vec3::new(m[1][4], m[2][4], m[3][4]);
        Ok(Self::new(m[0][4], v, r, y))
    }

    pub fn euler_angles(&self) -> EulerDecomposition<T> {
        euler_from_rotation(&self.r)
    }
}

/// Group product: `(s₁+s₂, v₁+R₁v₂, R₁R₂, y₁+s₂v₁+R₁y₂)`.
pub fn compose<T: Real>(g1: &GalileanElement<T>, g2: &GalileanElement<T>) -> GalileanElement<T> {
    GalileanElement {
        s: g1.s + g2.s,
        v: g1.v + g1.r.apply(&g2.v),
        r: g1.r.compose(&g2.r),
        y: g1.y + g1.v.scale(g2.s) + g1.r.apply(&g2.y),
    }
}

/// `(−s, −R⁻¹v, R⁻¹, R⁻¹(sv − y))`.
pub fn inverse<T: Real>(g: &GalileanElement<T>) -> GalileanElement<T> {
    let rt = g.r.transpose();
    GalileanElement { s: -g.s, v: -rt.apply(&g.v), r: rt, y: rt.apply(&(g.v.scale(g.s) - g.y)) }
}

/// `(t, x) ↦ (t + s, R x + t v + y)`.
pub fn act<T: Real>(g: &GalileanElement<T>, e: &Event<T>) -> Event<T> {
    Event { t: e.t + g.s, x: g.r.apply(&e.x) + g.v.scale(e.t) + g.y }
}

pub fn embed_matrix<T: Real>(g: &GalileanElement<T>) -> [[T; 5]; 5] {
    let mut m = [[T::zero(); 5]; 5];
    m[0][0] = T::one();
    m[0][4] = g.s;
    m[4][4] = T::one();
    for i in 0..3 {
        m[i + 1][0] = g.v[i];
        m[i + 1][4] = g.y[i];
        for j in 0..3 {
            m[i + 1][j + 1] = g.r.matrix().get(i, j);
        }
    }
    m
}

/// Factors `g = g₃·g₄·g₂` with `g₃` a pure rotation, `g₄` a pure boost and
/// `g₂` a shift of origin `(s, y)`.
pub fn decompose<T: Real>(g: &GalileanElement<T>) -> (GalileanElement<T>, GalileanElement<T>, GalileanElement<T>) {
    let rt = g.r.transpose();
    let w = rt.apply(&g.v);
    let eta = rt.apply(&(g.y - g.v.scale(g.s)));
    (
        GalileanElement::rotation(g.r),
        GalileanElement::boost(w),
        GalileanElement { s: g.s, y: eta, ..GalileanElement::identity() },
    )
}

/// Magnitudes for random element generation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementScales {
    pub time: f64,
    pub velocity: f64,
    pub translation: f64,
}

impl Default for ElementScales {
    fn default() -> Self {
        Self { time: 1.0, velocity: 1.0, translation: 1.0 }
    }
}

/// Draws an element from `rng`: `s`, `v`, `y` uniform in `[-scale, scale]`,
/// rotation from uniform Euler angles on the canonical branch.
pub fn random_element_with<T: Real, R: Rng + ?Sized>(rng: &mut R, scales: ElementScales) -> GalileanElement<T> {
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut sym = |k: f64| T::lit(rng.gen_range(-k..=k));
    let s = sym(scales.time);
    let v = Vec3::new(sym(scales.velocity), sym(scales.velocity), sym(scales.velocity));
    let y = Vec3::new(sym(scales.translation), sym(scales.translation), sym(scales.translation));
    let angles = EulerAngles::new(sym(PI), sym(FRAC_PI_2), sym(PI));
    GalileanElement::new(s, v, rotation_from_euler(angles), y)
}

/// Deterministic random element for a given seed.
pub fn random_element<T: Real>(seed: u64, scales: ElementScales) -> GalileanElement<T> {
    assert!(scales.time > 0.0 && scales.velocity > 0.0 && scales.translation > 0.0, "scales must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element_with(&mut rng, scales)
}
