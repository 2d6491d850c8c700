//! Left-invariant Maurer-Cartan forms of SGal(3) in Euler-angle
//! coordinates `(s, θ₁, θ₂, θ₃, v, y)`.
//!
//! # Chart
//!
//! The coordinate form of the action used here is
//! `(t, x) ↦ (t + s, R'(θ) x + t v + y)` with `R'(θ) = A₃(θ₁)·A₂(θ₂)·A₁(θ₃)`.
//! This is [`rotation_from_euler`] with the roles of the first and third
//! angle exchanged; the closed-form coframe below is written in this chart
//! and [`GroupPoint`] always means action-chart coordinates.
//!
//! # Closed forms
//!
//! With `c_k = cos θ_k`, `s_k = sin θ_k`:
//!
//! ```text
//! μ₁  = ds
//! μ₂  = s₂ dθ₁ − dθ₃
//! μ₃  = c₂c₃ dθ₁ − s₃ dθ₂
//! μ₄  = c₂s₃ dθ₁ + c₃ dθ₂
//! μ₅  = c₁c₂ dv₁ − s₁c₂ dv₂ − s₂ dv₃
//! μ₆  = (c₁c₂v₁ − s₁c₂v₂ − s₂v₃) ds − c₁c₂ dy₁ + s₁c₂ dy₂ + s₂ dy₃
//! μ₇  = −(s₁s₃ + c₁s₂c₃) dv₁ + (s₁s₂c₃ − c₁s₃) dv₂ − c₂c₃ dv₃
//! μ₈  = (c₁s₂s₃ − s₁c₃) dv₁ − (s₁s₂s₃ + c₁c₃) dv₂ + c₂s₃ dv₃
//! μ₉  = ((s₁s₃ + c₁s₂c₃)v₁ + (c₁s₃ − s₁s₂c₃)v₂ + c₂c₃v₃) ds
//!       − (c₁s₂c₃ + s₁s₃) dy₁ + (s₁s₂c₃ − c₁s₃) dy₂ − c₂c₃ dy₃
//! μ₁₀ = ((s₁c₃ − c₁s₂s₃)v₁ + (c₁c₃ + s₁s₂s₃)v₂ − c₂s₃v₃) ds
//!       − (s₁c₃ − c₁s₂s₃) dy₁ − (c₁c₃ + s₁s₂s₃) dy₂ + c₂s₃ dy₃
//! ```
//!
//! The commonly tabulated μ₆ drops the `s₂ dy₃` term, and the tabulated
//! μ₁₀ repeats μ₉'s `dy` row and flips the signs of its `v₂`, `v₃`
//! coefficients. Both are kept in [`mc_eval_uncorrected`] so the
//! discrepancy can be reported against the direct solve
//! ([`mc_eval_direct`]).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::group::{
    compose, elementary_a1, elementary_a2, elementary_a3, euler_from_rotation, rotation_from_euler, EulerAngles,
    EulerDecomposition, GalileanElement, Rotation,
};
use crate::linalg::{numerical_rank, solve, Mat3, RankInfo, Vec3};
use crate::scalar::{wrap_angle, Real};

pub const NUM_FORMS: usize = 10;

/// `|cos θ₂|` below this is a degenerate chart point.
pub const CHART_DEGENERACY_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McError {
    #[error("Euler chart is degenerate at this point (|cos θ2| = {cos_theta2:e})")]
    GimbalLock { cos_theta2: f64 },
    #[error("coordinate Jacobian H_z is singular")]
    SingularJacobian,
}

/// Rotation of the action chart, `A₃(θ₁)·A₂(θ₂)·A₁(θ₃)`.
pub fn chart_rotation<T: Real>(a: EulerAngles<T>) -> Rotation<T> {
    rotation_from_euler(EulerAngles::new(a.theta3, a.theta2, a.theta1))
}

/// Inverse of [`chart_rotation`] on the canonical branch. At gimbal lock
/// θ₃ is pinned to 0.
pub fn chart_angles<T: Real>(r: &Rotation<T>) -> EulerDecomposition<T> {
    let d = euler_from_rotation(r);
    EulerDecomposition {
        angles: EulerAngles::new(d.angles.theta3, d.angles.theta2, d.angles.theta1),
        gimbal_lock: d.gimbal_lock,
    }
}

/// `∂R'/∂θ_k`, `k` in `0..3`.
fn chart_rotation_partial<T: Real>(a: &EulerAngles<T>, k: usize) -> Mat3<T> {
    let d = |m: fn(T) -> Mat3<T>, th: T| m(th + T::FRAC_PI_2());
    // d/dθ of an elementary rotation equals the same block rotated by π/2
    // with the fixed axis zeroed.
    let mut f3 = elementary_a3(a.theta1);
    let mut f2 = elementary_a2(a.theta2);
    let mut f1 = elementary_a1(a.theta3);
    match k {
        0 => {
            f3 = d(elementary_a3, a.theta1);
            f3.0[2][2] = T::zero();
        }
        1 => {
            f2 = d(elementary_a2, a.theta2);
            f2.0[1][1] = T::zero();
        }
        _ => {
            f1 = d(elementary_a1, a.theta3);
            f1.0[0][0] = T::zero();
        }
    }
    f3.mul_mat(&f2).mul_mat(&f1)
}

/// Coordinates `(s, θ₁, θ₂, θ₃, v, y)` of a group element in the action chart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroupPoint<T> {
    pub s: T,
    pub theta: EulerAngles<T>,
    pub v: Vec3<T>,
    pub y: Vec3<T>,
}

impl<T: Real> GroupPoint<T> {
    pub fn identity() -> Self {
        Self { s: T::zero(), theta: EulerAngles::zero(), v: Vec3::zero(), y: Vec3::zero() }
    }

    pub fn to_element(&self) -> GalileanElement<T> {
        GalileanElement::new(self.s, self.v, chart_rotation(self.theta), self.y)
    }

    pub fn from_element(g: &GalileanElement<T>) -> Result<Self, McError> {
        let d = chart_angles(&g.r);
        let p = Self { s: g.s, theta: d.angles, v: g.v, y: g.y };
        p.check_chart()?;
        Ok(p)
    }

    pub fn check_chart(&self) -> Result<(), McError> {
        let c2 = self.theta.theta2.cos();
        if c2.abs() < T::lit(CHART_DEGENERACY_TOL) {
            return Err(McError::GimbalLock { cos_theta2: c2.as_f64() });
        }
        Ok(())
    }

    pub fn as_array(&self) -> [T; NUM_FORMS] {
        let [a, b, c] = self.theta.as_array();
        [self.s, a, b, c, self.v[0], self.v[1], self.v[2], self.y[0], self.y[1], self.y[2]]
    }

    pub fn from_array(a: [T; NUM_FORMS]) -> Self {
        Self {
            s: a[0],
            theta: EulerAngles::new(a[1], a[2], a[3]),
            v: Vec3::new(a[4], a[5], a[6]),
            y: Vec3::new(a[7], a[8], a[9]),
        }
    }

    /// `self + eps·xi` in coordinates.
    pub fn offset(&self, xi: &GroupTangent<T>, eps: T) -> Self {
        let p = self.as_array();
        let d = xi.as_array();
        Self::from_array(std::array::from_fn(|i| p[i] + eps * d[i]))
    }
}

/// Tangent vector `(ds, dθ₁, dθ₂, dθ₃, dv, dy)` in chart coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroupTangent<T> {
    pub ds: T,
    pub dtheta: [T; 3],
    pub dv: Vec3<T>,
    pub dy: Vec3<T>,
}

impl<T: Real> GroupTangent<T> {
    pub fn zero() -> Self {
        Self::from_array([T::zero(); NUM_FORMS])
    }

    /// Coordinate vector `∂_j`, `j` in `0..10` following the
    /// [`GroupPoint::as_array`] order.
    pub fn basis(j: usize) -> Self {
        let mut a = [T::zero(); NUM_FORMS];
        a[j] = T::one();
        Self::from_array(a)
    }

    pub fn as_array(&self) -> [T; NUM_FORMS] {
        [
            self.ds,
            self.dtheta[0],
            self.dtheta[1],
            self.dtheta[2],
            self.dv[0],
            self.dv[1],
            self.dv[2],
            self.dy[0],
            self.dy[1],
            self.dy[2],
        ]
    }

    pub fn from_array(a: [T; NUM_FORMS]) -> Self {
        Self { ds: a[0], dtheta: [a[1], a[2], a[3]], dv: Vec3::new(a[4], a[5], a[6]), dy: Vec3::new(a[7], a[8], a[9]) }
    }

    pub fn lin_comb(a: T, x: &Self, b: T, y: &Self) -> Self {
        let (xa, ya) = (x.as_array(), y.as_array());
        Self::from_array(std::array::from_fn(|i| a * xa[i] + b * ya[i]))
    }
}

/// Values `μ₁(ξ) … μ₁₀(ξ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoframeValue<T> {
    pub mu: [T; NUM_FORMS],
}

impl<T: Real> CoframeValue<T> {
    pub fn max_abs_diff(&self, o: &Self) -> T {
        self.mu.iter().zip(&o.mu).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }

    /// Componentwise `|self − o|`.
    pub fn abs_diff(&self, o: &Self) -> [T; NUM_FORMS] {
        std::array::from_fn(|i| (self.mu[i] - o.mu[i]).abs())
    }
}

struct Trig<T> {
    c1: T,
    s1: T,
    c2: T,
    s2: T,
    c3: T,
    s3: T,
}

impl<T: Real> Trig<T> {
    fn new(a: &EulerAngles<T>) -> Self {
        let (s1, c1) = a.theta1.sin_cos();
        let (s2, c2) = a.theta2.sin_cos();
        let (s3, c3) = a.theta3.sin_cos();
        Self { c1, s1, c2, s2, c3, s3 }
    }
}

/// Lines that are identical in the corrected and the tabulated coframe.
fn common_lines<T: Real>(p: &GroupPoint<T>, xi: &GroupTangent<T>) -> [T; NUM_FORMS] {
    let Trig { c1, s1, c2, s2, c3, s3 } = Trig::new(&p.theta);
    let [dt1, dt2, dt3] = xi.dtheta;
    let (v, dv, dy, ds) = (p.v, xi.dv, xi.dy, xi.ds);
    let mut mu = [T::zero(); NUM_FORMS];
    mu[0] = ds;
    mu[1] = s2 * dt1 - dt3;
    mu[2] = c2 * c3 * dt1 - s3 * dt2;
    mu[3] = c2 * s3 * dt1 + c3 * dt2;
    mu[4] = c1 * c2 * dv[0] - s1 * c2 * dv[1] - s2 * dv[2];
    mu[6] = -(s1 * s3 + c1 * s2 * c3) * dv[0] + (s1 * s2 * c3 - c1 * s3) * dv[1] - c2 * c3 * dv[2];
    mu[7] = (c1 * s2 * s3 - s1 * c3) * dv[0] - (s1 * s2 * s3 + c1 * c3) * dv[1] + c2 * s3 * dv[2];
    mu[8] = ((s1 * s3 + c1 * s2 * c3) * v[0] + (c1 * s3 - s1 * s2 * c3) * v[1] + c2 * c3 * v[2]) * ds
        - (c1 * s2 * c3 + s1 * s3) * dy[0]
        + (s1 * s2 * c3 - c1 * s3) * dy[1]
        - c2 * c3 * dy[2];
    mu
}

/// Closed-form coframe (corrected μ₆ and μ₁₀; see module docs).
pub fn mc_eval<T: Real>(p: &GroupPoint<T>, xi: &GroupTangent<T>) -> CoframeValue<T> {
    let Trig { c1, s1, c2, s2, c3, s3 } = Trig::new(&p.theta);
    let (v, dy, ds) = (p.v, xi.dy, xi.ds);
    let mut mu = common_lines(p, xi);
    mu[5] = (c1 * c2 * v[0] - s1 * c2 * v[1] - s2 * v[2]) * ds - c1 * c2 * dy[0] + s1 * c2 * dy[1] + s2 * dy[2];
    let b1 = s1 * c3 - c1 * s2 * s3;
    let b2 = c1 * c3 + s1 * s2 * s3;
    let b3 = -c2 * s3;
    mu[9] = (b1 * v[0] + b2 * v[1] + b3 * v[2]) * ds - b1 * dy[0] - b2 * dy[1] - b3 * dy[2];
    CoframeValue { mu }
}

/// The coframe exactly as commonly tabulated, including the μ₆ and μ₁₀
/// transcription errors.
pub fn mc_eval_uncorrected<T: Real>(p: &GroupPoint<T>, xi: &GroupTangent<T>) -> CoframeValue<T> {
    let Trig { c1, s1, c2, s2, c3, s3 } = Trig::new(&p.theta);
    let (v, dy, ds) = (p.v, xi.dy, xi.ds);
    let mut mu = common_lines(p, xi);
    mu[5] = (c1 * c2 * v[0] - s1 * c2 * v[1] - s2 * v[2]) * ds - c1 * c2 * dy[0] + s1 * c2 * dy[1];
    mu[9] = ((s1 * c3 - c1 * s2 * s3) * v[0] + (c1 * c3 - s1 * s2 * s3) * v[1] + c2 * s3 * v[2]) * ds
        - (c1 * s2 * c3 + s1 * s3) * dy[0]
        + (s1 * s2 * c3 - c1 * s3) * dy[1]
        - c2 * c3 * dy[2];
    CoframeValue { mu }
}

/// How `H_z` and `H_g` are obtained in [`mc_eval_direct`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JacobianMode<T> {
    Analytic,
    /// Central differences with the given step.
    FiniteDifference(T),
}

/// `H(z, g) = (t + s, R'(θ) x + t v + y)`.
fn action_coords<T: Real>(z: &[T; 4], g: &[T; NUM_FORMS]) -> [T; 4] {
    let p = GroupPoint::from_array(*g);
    let r = chart_rotation(p.theta);
    let x = r.apply(&Vec3::new(z[1], z[2], z[3])) + p.v.scale(z[0]) + p.y;
    [z[0] + p.s, x[0], x[1], x[2]]
}

/// `(H_z, H_g ξ)` at `(z, p)`.
fn jacobians<T: Real>(
    z: &[T; 4],
    p: &GroupPoint<T>,
    xi: &GroupTangent<T>,
    mode: JacobianMode<T>,
) -> (Vec<Vec<T>>, [T; 4]) {
    match mode {
        JacobianMode::Analytic => {
            let r = chart_rotation(p.theta);
            let mut hz = vec![vec![T::zero(); 4]; 4];
            hz[0][0] = T::one();
            for i in 0..3 {
                hz[i + 1][0] = p.v[i];
                for j in 0..3 {
                    hz[i + 1][j + 1] = r.matrix().get(i, j);
                }
            }
            let x = Vec3::new(z[1], z[2], z[3]);
            let mut dx = xi.dv.scale(z[0]) + xi.dy;
            for k in 0..3 {
                dx += chart_rotation_partial(&p.theta, k).mul_vec(&x).scale(xi.dtheta[k]);
            }
            (hz, [xi.ds, dx[0], dx[1], dx[2]])
        }
        JacobianMode::FiniteDifference(h) => {
            let g = p.as_array();
            let two_h = T::two() * h;
            let mut hz = vec![vec![T::zero(); 4]; 4];
            for k in 0..4 {
                let mut zp = *z;
                let mut zm = *z;
                zp[k] += h;
                zm[k] -= h;
                let (fp, fm) = (action_coords(&zp, &g), action_coords(&zm, &g));
                for i in 0..4 {
                    hz[i][k] = (fp[i] - fm[i]) / two_h;
                }
            }
            let d = xi.as_array();
            let gp: [T; NUM_FORMS] = std::array::from_fn(|j| g[j] + h * d[j]);
            let gm: [T; NUM_FORMS] = std::array::from_fn(|j| g[j] - h * d[j]);
            let (fp, fm) = (action_coords(z, &gp), action_coords(z, &gm));
            (hz, std::array::from_fn(|i| (fp[i] - fm[i]) / two_h))
        }
    }
}

/// `F(z)·ξ = H_z⁻¹ H_g ξ`.
fn f_applied<T: Real>(
    z: &[T; 4],
    p: &GroupPoint<T>,
    xi: &GroupTangent<T>,
    mode: JacobianMode<T>,
) -> Result<[T; 4], McError> {
    let (hz, hg_xi) = jacobians(z, p, xi, mode);
    let sol = solve(&hz, &hg_xi, T::lit(1e-12)).ok_or(McError::SingularJacobian)?;
    Ok([sol[0], sol[1], sol[2], sol[3]])
}

/// Coframe by the direct method: differentiate the coordinate form of the
/// action, solve `H_z dz = −H_g dg`, and expand `F(z, ·)` in `z`.
///
/// The action is affine in `z`, so evaluating at `z = 0` and at the four
/// unit events gives the expansion exactly.
pub fn mc_eval_direct<T: Real>(
    p: &GroupPoint<T>,
    xi: &GroupTangent<T>,
    mode: JacobianMode<T>,
) -> Result<CoframeValue<T>, McError> {
    let zero = [T::zero(); 4];
    let f0 = f_applied(&zero, p, xi, mode)?;
    let mut coeff = [[T::zero(); 4]; 4]; // coeff[k] = ∂F/∂z_k
    for (k, c) in coeff.iter_mut().enumerate() {
        let mut ek = zero;
        ek[k] = T::one();
        let fk = f_applied(&ek, p, xi, mode)?;
        *c = std::array::from_fn(|i| fk[i] - f0[i]);
    }
    // spatial parts: constant term Rᵀ(dy − v ds), t-coefficient Rᵀdv,
    // x_k-coefficient column k of RᵀdR
    let tr = [f0[1], f0[2], f0[3]];
    let dvc = [coeff[0][1], coeff[0][2], coeff[0][3]];
    let w = |i: usize, k: usize| coeff[k + 1][i + 1];
    let mu = [f0[0], -w(1, 2), w(0, 1), w(0, 2), dvc[0], -tr[0], -dvc[2], -dvc[1], -tr[2], -tr[1]];
    Ok(CoframeValue { mu })
}

/// Wrapped coordinate difference (angles wrap into (−π, π]).
fn chart_delta<T: Real>(a: &GroupPoint<T>, b: &GroupPoint<T>) -> [T; NUM_FORMS] {
    let (x, y) = (a.as_array(), b.as_array());
    std::array::from_fn(|i| {
        let d = x[i] - y[i];
        if (1..=3).contains(&i) {
            wrap_angle(d)
        } else {
            d
        }
    })
}

/// `μ|_{h·p}(dL_h ξ) − μ|_p(ξ)` with `dL_h ξ` from central differences of
/// the chart coordinates of `h·g` around `p`.
pub fn left_invariance_residual<T: Real>(
    h: &GalileanElement<T>,
    p: &GroupPoint<T>,
    xi: &GroupTangent<T>,
    fd_step: T,
) -> Result<[T; NUM_FORMS], McError> {
    p.check_chart()?;
    if h.is_identity() {
        return Ok([T::zero(); NUM_FORMS]);
    }
    let image = |eps: T| GroupPoint::from_element(&compose(h, &p.offset(xi, eps).to_element()));
    let q0 = image(T::zero())?;
    let qp = image(fd_step)?;
    let qm = image(-fd_step)?;
    let delta = chart_delta(&qp, &qm);
    let pushed = GroupTangent::from_array(delta.map(|d| d / (T::two() * fd_step)));
    let lhs = mc_eval(&q0, &pushed);
    let rhs = mc_eval(p, xi);
    Ok(std::array::from_fn(|i| lhs.mu[i] - rhs.mu[i]))
}

/// `[μᵢ(∂ⱼ)]` at `p`.
pub fn coframe_matrix<T: Real>(p: &GroupPoint<T>) -> [[T; NUM_FORMS]; NUM_FORMS] {
    let mut m = [[T::zero(); NUM_FORMS]; NUM_FORMS];
    for j in 0..NUM_FORMS {
        let col = mc_eval(p, &GroupTangent::basis(j));
        for i in 0..NUM_FORMS {
            m[i][j] = col.mu[i];
        }
    }
    m
}

/// Rank of the coframe matrix with relative singular-value cutoff `1e-8`.
pub fn coframe_rank<T: Real>(p: &GroupPoint<T>) -> RankInfo {
    let rows: Vec<Vec<f64>> = coframe_matrix(p).iter().map(|r| r.iter().map(|x| x.as_f64()).collect()).collect();
    numerical_rank(&rows, 1e-8)
}

/// Draws a chart point with `|θ₂| ≤ 1.4` (safely away from gimbal lock)
/// and a tangent vector with unit-scale components.
pub fn random_point_and_tangent<R: Rng + ?Sized>(rng: &mut R) -> (GroupPoint<f64>, GroupTangent<f64>) {
    use std::f64::consts::PI;
    let mut u = |k: f64| rng.gen_range(-k..=k);
    let p = GroupPoint::from_array([u(3.0), u(PI), u(1.4), u(PI), u(2.0), u(2.0), u(2.0), u(5.0), u(5.0), u(5.0)]);
    let xi = GroupTangent::from_array(std::array::from_fn(|_| u(1.0)));
    (p, xi)
}

/// Per-line agreement between a closed form and the direct solve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineAudit {
    /// 1-based form index.
    pub index: usize,
    pub corrected_max_diff: f64,
    pub uncorrected_max_diff: f64,
    /// `true` when the uncorrected line disagrees with the direct solve.
    pub corrected: bool,
}

/// Evaluates both closed forms against [`mc_eval_direct`] (analytic
/// Jacobians) at `samples` seeded random `(point, tangent)` pairs.
pub fn audit_closed_forms(samples: usize, seed: u64, tol: f64) -> Result<Vec<LineAudit>, McError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corrected = [0.0f64; NUM_FORMS];
    let mut uncorrected = [0.0f64; NUM_FORMS];
    for _ in 0..samples {
        let (p, xi) = random_point_and_tangent(&mut rng);
        let direct = mc_eval_direct(&p, &xi, JacobianMode::Analytic)?;
        for (i, d) in mc_eval(&p, &xi).abs_diff(&direct).iter().enumerate() {
            corrected[i] = corrected[i].max(*d);
        }
        for (i, d) in mc_eval_uncorrected(&p, &xi).abs_diff(&direct).iter().enumerate() {
            uncorrected[i] = uncorrected[i].max(*d);
        }
    }
    Ok((0..NUM_FORMS)
        .map(|i| LineAudit {
            index: i + 1,
            corrected_max_diff: corrected[i],
            uncorrected_max_diff: uncorrected[i],
            corrected: uncorrected[i] >= tol,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{random_element_with, ElementScales};

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn ds_direction_example() {
        let mut r = rng(1);
        for _ in 0..10 {
            let (p, _) = random_point_and_tangent(&mut r);
            let mut xi = GroupTangent::zero();
            xi.ds = 1.0;
            let mu = mc_eval(&p, &xi).mu;
            assert_eq!(mu[0], 1.0);
            assert_eq!(&mu[1..5], &[0.0; 4]);
            let Trig { c1, s1, c2, s2, .. } = Trig::new(&p.theta);
            let want = c1 * c2 * p.v[0] - s1 * c2 * p.v[1] - s2 * p.v[2];
            assert!((mu[5] - want).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_dtheta3_example() {
        let mut xi = GroupTangent::zero();
        xi.dtheta[2] = 1.0;
        let mu = mc_eval(&GroupPoint::identity(), &xi).mu;
        assert_eq!(mu[1], -1.0);
        assert_eq!(mu[2], 0.0);
        assert_eq!(mu[3], 0.0);
        let direct = mc_eval_direct(&GroupPoint::<f64>::identity(), &xi, JacobianMode::Analytic).unwrap();
        assert!((direct.mu[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn direct_identity_ds() {
        let mut xi = GroupTangent::zero();
        xi.ds = 1.0;
        let mu = mc_eval_direct(&GroupPoint::identity(), &xi, JacobianMode::Analytic).unwrap();
        assert_eq!(mu.mu[0], 1.0);
    }

    #[test]
    fn direct_expansion_reproduces_ds_parts() {
        // the ds-coefficients of μ₆, μ₉, μ₁₀ come from the z = 0 term only
        let mut r = rng(2);
        for _ in 0..20 {
            let (p, _) = random_point_and_tangent(&mut r);
            let mut xi = GroupTangent::zero();
            xi.ds = 1.0;
            let direct = mc_eval_direct(&p, &xi, JacobianMode::Analytic).unwrap();
            let closed = mc_eval(&p, &xi);
            for k in [5, 8, 9] {
                assert!((direct.mu[k] - closed.mu[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_matches_direct_solve() {
        let mut r = rng(3);
        for _ in 0..100 {
            let (p, xi) = random_point_and_tangent(&mut r);
            let closed = mc_eval(&p, &xi);
            let direct = mc_eval_direct(&p, &xi, JacobianMode::Analytic).unwrap();
            assert!(closed.max_abs_diff(&direct) < 1e-8, "{:?} vs {:?}", closed, direct);
            let fd = mc_eval_direct(&p, &xi, JacobianMode::FiniteDifference(1e-5)).unwrap();
            assert!(closed.max_abs_diff(&fd) < 1e-8);
        }
    }

    #[test]
    fn audit_flags_only_mu6_and_mu10() {
        let audit = audit_closed_forms(100, 4, 1e-8).unwrap();
        let flagged: Vec<usize> = audit.iter().filter(|a| a.corrected).map(|a| a.index).collect();
        assert_eq!(flagged, vec![6, 10]);
        assert!(audit.iter().all(|a| a.corrected_max_diff < 1e-8));
    }

    #[test]
    fn forms_are_linear_in_the_tangent() {
        let mut r = rng(5);
        for _ in 0..50 {
            let (p, xi) = random_point_and_tangent(&mut r);
            let (_, eta) = random_point_and_tangent(&mut r);
            let (a, b) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
            let combo = mc_eval(&p, &GroupTangent::lin_comb(a, &xi, b, &eta));
            let (m1, m2) = (mc_eval(&p, &xi), mc_eval(&p, &eta));
            for i in 0..NUM_FORMS {
                assert!((combo.mu[i] - (a * m1.mu[i] + b * m2.mu[i])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn left_invariance_examples() {
        let mut r = rng(6);
        let (p, xi) = random_point_and_tangent(&mut r);
        assert_eq!(left_invariance_residual(&GalileanElement::identity(), &p, &xi, 1e-5).unwrap(), [0.0; 10]);
        for _ in 0..50 {
            let (p, xi) = random_point_and_tangent(&mut r);
            let h = random_element_with(&mut r, ElementScales { time: 2.0, velocity: 2.0, translation: 3.0 });
            match left_invariance_residual(&h, &p, &xi, 1e-5) {
                Ok(res) => assert!(res.iter().all(|x| x.abs() < 1e-6), "{res:?}"),
                Err(McError::GimbalLock { .. }) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn left_invariance_converges_quadratically() {
        let mut r = rng(7);
        let (p, xi) = random_point_and_tangent(&mut r);
        let h = random_element_with(&mut r, ElementScales::default());
        let norm =
            |s: f64| left_invariance_residual(&h, &p, &xi, s).unwrap().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let (r1, r2) = (norm(2e-2), norm(1e-2));
        let ratio = r1 / r2;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn coframe_is_pointwise_independent() {
        let mut r = rng(8);
        for _ in 0..20 {
            let (p, _) = random_point_and_tangent(&mut r);
            assert_eq!(coframe_rank(&p).rank, 10);
        }
    }

    #[test]
    fn group_point_round_trip() {
        let mut r = rng(9);
        for _ in 0..100 {
            let (p, _) = random_point_and_tangent(&mut r);
            let back = GroupPoint::from_element(&p.to_element()).unwrap();
            let d = chart_delta(&back, &p);
            assert!(d.iter().all(|x| x.abs() < 1e-10), "{d:?}");
        }
    }

    #[test]
    fn chart_degeneracy_is_reported() {
        let mut p = GroupPoint::<f64>::identity();
        p.theta.theta2 = std::f64::consts::FRAC_PI_2;
        assert!(matches!(p.check_chart(), Err(McError::GimbalLock { .. })));
        let xi = GroupTangent::basis(0);
        let h = GalileanElement::time_shift(1.0);
        assert!(left_invariance_residual(&h, &p, &xi, 1e-5).is_err());
    }

    #[test]
    fn chart_partials_match_finite_differences() {
        let a = EulerAngles::new(0.4, -0.3, 1.2);
        let h = 1e-6;
        for k in 0..3 {
            let mut ap = a.as_array();
            let mut am = a.as_array();
            ap[k] += h;
            am[k] -= h;
            let rp = chart_rotation(EulerAngles::new(ap[0], ap[1], ap[2]));
            let rm = chart_rotation(EulerAngles::new(am[0], am[1], am[2]));
            let fd = rp.matrix().add(&rm.matrix().scale(-1.0)).scale(1.0 / (2.0 * h));
            assert!(fd.max_abs_diff(&chart_rotation_partial(&a, k)) < 1e-9);
        }
    }
}
