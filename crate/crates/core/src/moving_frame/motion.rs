use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::differentiation::{fornberg_weights, jets_from_samples, DiffScheme, SampledJets, Smoothing};
use super::jet::Jet4;
use crate::group::{compose, GalileanElement};
use crate::linalg::Vec3;
use crate::prolongation::{JetN, MAX_ORDER};
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MotionError {
    #[error("grid too small: need at least {needed} samples, got {got}")]
    GridTooSmall { needed: usize, got: usize },
    #[error("time grid is not strictly increasing at sample {index}")]
    NonMonotoneGrid { index: usize },
    #[error("non-finite value at sample {index}")]
    NonFinite { index: usize },
    #[error("{times} times but {positions} positions")]
    LengthMismatch { times: usize, positions: usize },
    #[error("invalid smoothing: window {window} must be odd, at least degree + 1 = {} and within the grid", degree + 1)]
    InvalidSmoothing { window: usize, degree: usize },
    #[error("time {t} is outside the motion's domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },
}

/// Source of jets along a trajectory.
pub trait Motion<T: Real> {
    fn jet(&self, t: T) -> Result<Jet4<T>, MotionError>;

    fn domain(&self) -> (T, T);

    /// Estimated absolute error of the derivatives of order 0..=4 near `t`.
    fn jet_error(&self, _t: T) -> [T; 5] {
        [T::zero(); 5]
    }

    fn position(&self, t: T) -> Result<Vec3<T>, MotionError> {
        Ok(self.jet(t)?.x)
    }
}

/// One additive term of a coordinate function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Term<T> {
    /// `Σ cₖ tᵏ`, ascending coefficients.
    Poly(Vec<T>),
    /// `amp · sin(freq·t + phase)`.
    Sine { amp: T, freq: T, phase: T },
}

impl<T: Real> Term<T> {
    fn derivative(&self, t: T, k: usize) -> T {
        match self {
            Term::Poly(c) => {
                let mut acc = T::zero();
                for (i, &ci) in c.iter().enumerate().skip(k).rev() {
                    let falling = (i - k + 1..=i).fold(T::one(), |f, m| f * T::lit(m as f64));
                    acc = acc * t + ci * falling;
                }
                acc
            }
            Term::Sine { amp, freq, phase } => {
                let shift = T::FRAC_PI_2() * T::lit(k as f64);
                *amp * freq.powi(k as i32) * (*freq * t + *phase + shift).sin()
            }
        }
    }
}

/// Motion with closed-form coordinates, optionally moved by a group element.
///
/// All derivatives are evaluated exactly (up to rounding).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticMotion<T> {
    pub axes: [Vec<Term<T>>; 3],
    pub transform: GalileanElement<T>,
}

impl<T: Real> AnalyticMotion<T> {
    pub fn new(axes: [Vec<Term<T>>; 3]) -> Self {
        Self { axes, transform: GalileanElement::identity() }
    }

    pub fn polynomial(coeffs: [Vec<T>; 3]) -> Self {
        Self::new(coeffs.map(|c| vec![Term::Poly(c)]))
    }

    /// `(r cos ωt, r sin ωt, 0)`.
    pub fn circle(r: T, omega: T) -> Self {
        Self::helix_like(r, omega, T::zero())
    }

    /// `(r cos ωt, r sin ωt, c t²)`.
    pub fn helix_like(r: T, omega: T, c: T) -> Self {
        let z = T::zero();
        Self::new([
            vec![Term::Sine { amp: r, freq: omega, phase: T::FRAC_PI_2() }],
            vec![Term::Sine { amp: r, freq: omega, phase: z }],
            vec![Term::Poly(vec![z, z, c])],
        ])
    }

    /// `p + t u`.
    pub fn line(p: Vec3<T>, u: Vec3<T>) -> Self {
        Self::polynomial(std::array::from_fn(|i| vec![p[i], u[i]]))
    }

    /// Polynomial of the given degree with coefficients uniform in `±scale`.
    pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize, scale: f64) -> Self {
        Self::polynomial(std::array::from_fn(|_| (0..=degree).map(|_| T::lit(rng.gen_range(-scale..=scale))).collect()))
    }

    /// Cubic polynomial plus one sinusoid per axis; generically regular
    /// with non-constant invariants.
    pub fn random_generic<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        let mut m = Self::random_polynomial(rng, 3, scale);
        for axis in m.axes.iter_mut() {
            axis.push(Term::Sine {
                amp: T::lit(scale * rng.gen_range(0.5..1.5)),
                freq: T::lit(rng.gen_range(0.7..2.0)),
                phase: T::lit(rng.gen_range(-3.0..3.0)),
            });
        }
        m
    }

    /// `g·self`.
    pub fn transformed(&self, g: &GalileanElement<T>) -> Self {
        Self { axes: self.axes.clone(), transform: compose(g, &self.transform) }
    }

    fn base_derivative(&self, tau: T, k: usize) -> Vec3<T> {
        Vec3(std::array::from_fn(|i| self.axes[i].iter().fold(T::zero(), |acc, term| acc + term.derivative(tau, k))))
    }

    /// Exact `x⁽ᵏ⁾(t)`.
    pub fn derivative(&self, t: T, k: usize) -> Vec3<T> {
        let g = &self.transform;
        let tau = t - g.s;
        let d = g.r.apply(&self.base_derivative(tau, k));
        match k {
            0 => d + g.v.scale(tau) + g.y,
            1 => d + g.v,
            _ => d,
        }
    }

    /// Exact jet of order `n ≤ 8`.
    pub fn jet_n(&self, t: T, n: usize) -> JetN<T> {
        JetN { t, derivs: (0..=n.min(MAX_ORDER)).map(|k| self.derivative(t, k)).collect() }
    }
}

impl<T: Real> Motion<T> for AnalyticMotion<T> {
    fn jet(&self, t: T) -> Result<Jet4<T>, MotionError> {
        Ok(Jet4::from_derivs(t, std::array::from_fn(|k| self.derivative(t, k))))
    }

    fn domain(&self) -> (T, T) {
        (T::neg_infinity(), T::infinity())
    }
}

/// A motion with one extra term added to one output coordinate; such a
/// term is generally not a Galilean image of anything.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbedMotion<T> {
    pub base: AnalyticMotion<T>,
    pub axis: usize,
    pub term: Term<T>,
}

impl<T: Real> Motion<T> for PerturbedMotion<T> {
    fn jet(&self, t: T) -> Result<Jet4<T>, MotionError> {
        let mut d: [Vec3<T>; 5] = std::array::from_fn(|k| self.base.derivative(t, k));
        for (k, dk) in d.iter_mut().enumerate() {
            dk[self.axis] += self.term.derivative(t, k);
        }
        Ok(Jet4::from_derivs(t, d))
    }

    fn domain(&self) -> (T, T) {
        self.base.domain()
    }
}

/// Number of grid nodes used to interpolate jets between samples.
const INTERP_NODES: usize = 6;

/// Trajectory given on a time grid; jets by finite differences.
///
/// Between grid points every jet component is interpolated with a local
/// degree-5 Lagrange polynomial through the nearest samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledMotion<T> {
    pub ts: Vec<T>,
    pub sampled: SampledJets<T>,
}

impl<T: Real> SampledMotion<T> {
    pub fn from_samples(
        ts: Vec<T>,
        xs: &[Vec3<T>],
        scheme: DiffScheme,
        smoothing: Option<Smoothing>,
    ) -> Result<Self, MotionError> {
        let sampled = jets_from_samples(&ts, xs, scheme, smoothing)?;
        Ok(Self { ts, sampled })
    }

    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    /// Index of the last node `≤ t`.
    fn locate(&self, t: T) -> usize {
        self.ts.partition_point(|&s| s <= t).saturating_sub(1)
    }

    fn check_domain(&self, t: T) -> Result<(), MotionError> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return Err(MotionError::OutOfDomain { t: t.as_f64(), lo: lo.as_f64(), hi: hi.as_f64() });
        }
        Ok(())
    }

    /// Whether `t` falls in a stretch of boundary-flagged samples.
    pub fn is_boundary(&self, t: T) -> bool {
        let i = self.locate(t);
        self.sampled.boundary[i] || self.sampled.boundary[(i + 1).min(self.len() - 1)]
    }
}

impl<T: Real> Motion<T> for SampledMotion<T> {
    fn jet(&self, t: T) -> Result<Jet4<T>, MotionError> {
        self.check_domain(t)?;
        let n = self.len();
        let i = self.locate(t);
        if self.ts[i] == t {
            return Ok(self.sampled.jets[i]);
        }
        let k = INTERP_NODES.min(n);
        let start = (i + 1).saturating_sub(k / 2).min(n - k);
        let w = fornberg_weights(t, &self.ts[start..start + k], 0);
        let nodes = &self.sampled.jets[start..start + k];
        let d = std::array::from_fn(|order| {
            nodes.iter().zip(&w[0]).fold(Vec3::zero(), |acc, (j, c)| acc + j.derivs()[order].scale(*c))
        });
        Ok(Jet4::from_derivs(t, d))
    }

    fn domain(&self) -> (T, T) {
        (self.ts[0], self.ts[self.len() - 1])
    }

    fn jet_error(&self, t: T) -> [T; 5] {
        let i = self.locate(t);
        if self.ts[i] == t {
            return self.sampled.error[i];
        }
        let j = (i + 1).min(self.len() - 1);
        let (a, b) = (self.sampled.error[i], self.sampled.error[j]);
        std::array::from_fn(|k| a[k].max(b[k]))
    }
}
