//! Prolonged action of SGal(3) on the jet spaces `Jⁿ`, orbit dimensions,
//! and the invariant families `I`, `J`, `K`, `L`.
//!
//! Under `g = (s, v, R, y)` a jet `(t, x, x⁽¹⁾, …, x⁽ⁿ⁾)` maps to
//! `(t + s, Rx + tv + y, Rx⁽¹⁾ + v, Rx⁽²⁾, …, Rx⁽ⁿ⁾)`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{one_parameter_subgroup, AlgebraVector, DIM};
use crate::group::GalileanElement;
use crate::linalg::{numerical_rank, RankInfo, Vec3};
use crate::moving_frame::AnalyticMotion;
use crate::scalar::Real;

pub const MAX_ORDER: usize = 8;

/// Step of the central differences used for prolonged generators.
pub const GENERATOR_STEP: f64 = 1e-5;

/// Relative singular-value cutoff for orbit dimensions.
pub const RANK_CUTOFF: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProlongationError {
    #[error("jet order {0} exceeds the maximum of {MAX_ORDER}")]
    OrderTooHigh(usize),
    #[error("derivative order {order} is outside 2..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("L(l, n, m) needs l > n > m")]
    UnorderedTriple,
}

/// A point of `Jⁿ`: time and the derivatives `x⁽⁰⁾ … x⁽ⁿ⁾`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JetN<T> {
    pub t: T,
    pub derivs: Vec<Vec3<T>>,
}

impl<T: Real> JetN<T> {
    pub fn new(t: T, derivs: Vec<Vec3<T>>) -> Result<Self, ProlongationError> {
        if derivs.is_empty() || derivs.len() > MAX_ORDER + 1 {
            return Err(ProlongationError::OrderTooHigh(derivs.len().saturating_sub(1)));
        }
        Ok(Self { t, derivs })
    }

    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    /// `3n + 4`.
    pub fn ambient_dim(&self) -> usize {
        3 * self.order() + 4
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self { t: self.t, derivs: self.derivs[..=n.min(self.order())].to_vec() }
    }

    /// Coordinates `(t, x, x⁽¹⁾, …)` as a flat vector.
    pub fn flatten(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.ambient_dim());
        out.push(self.t);
        for d in &self.derivs {
            out.extend_from_slice(&d.0);
        }
        out
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        self.flatten().iter().zip(o.flatten()).fold(T::zero(), |m, (a, b)| m.max((*a - b).abs()))
    }

    pub fn deriv(&self, k: usize) -> Result<Vec3<T>, ProlongationError> {
        self.derivs.get(k).copied().ok_or(ProlongationError::OrderOutOfRange { order: k, max: self.order() })
    }
}

pub fn prolong_action<T: Real>(g: &GalileanElement<T>, j: &JetN<T>) -> JetN<T> {
    let derivs = j
        .derivs
        .iter()
        .enumerate()
        .map(|(k, d)| match k {
            0 => g.r.apply(d) + g.v.scale(j.t) + g.y,
            1 => g.r.apply(d) + g.v,
            _ => g.r.apply(d),
        })
        .collect();
    JetN { t: j.t + g.s, derivs }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub n: usize,
    pub s_n: usize,
    pub i_n: usize,
    pub singular_values: Vec<f64>,
    pub warning: Option<String>,
}

/// Rows `d/dε prolong(exp(εXₖ), j)|₀`, `k = 1..10`, by central differences.
pub fn prolonged_generators(j: &JetN<f64>) -> Vec<Vec<f64>> {
    let h = GENERATOR_STEP;
    (1..=DIM)
        .map(|k| {
            let x = AlgebraVector::<f64>::basis(k).expect("index in 1..=10");
            let plus = prolong_action(&one_parameter_subgroup(&x, h), j).flatten();
            let minus = prolong_action(&one_parameter_subgroup(&x, -h), j).flatten();
            plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * h)).collect()
        })
        .collect()
}

/// Orbit dimension of the prolonged action at the order-`n` truncation of `j`.
pub fn orbit_dimension(n: usize, j: &JetN<f64>) -> Result<RankReport, ProlongationError> {
    if n > j.order() {
        return Err(ProlongationError::OrderOutOfRange { order: n, max: j.order() });
    }
    let jn = j.truncate(n);
    let RankInfo { rank, singular_values, cutoff, .. } = numerical_rank(&prolonged_generators(&jn), RANK_CUTOFF);
    let kept_min = singular_values.get(rank.wrapping_sub(1)).copied().unwrap_or(f64::INFINITY);
    let dropped_max = singular_values.get(rank).copied().unwrap_or(0.0);
    let warning = (kept_min < 100.0 * cutoff || dropped_max > 0.01 * cutoff)
        .then(|| format!("rank {rank} is close to the cutoff {cutoff:e} (kept {kept_min:e}, dropped {dropped_max:e})"));
    Ok(RankReport { n, s_n: rank, i_n: jn.ambient_dim() - rank, singular_values, warning })
}

/// Members of the invariant families; orders index `x⁽ᵏ⁾`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvariantKind {
    /// `‖x⁽ⁿ⁾‖`
    I(usize),
    /// `x⁽ⁿ⁾·x⁽ᵐ⁾`
    J(usize, usize),
    /// `‖x⁽ⁿ⁾ × x⁽ᵐ⁾‖`
    K(usize, usize),
    /// `(x⁽ˡ⁾ × x⁽ⁿ⁾)·x⁽ᵐ⁾`, `l > n > m`
    L(usize, usize, usize),
}

impl InvariantKind {
    fn orders(&self) -> Vec<usize> {
        match *self {
            Self::I(n) => vec![n],
            Self::J(n, m) | Self::K(n, m) => vec![n, m],
            Self::L(l, n, m) => vec![l, n, m],
        }
    }

    /// Every member with orders in `2..=max`.
    pub fn all_up_to(max: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 2..=max {
            out.push(Self::I(n));
            for m in 2..n {
                out.push(Self::J(n, m));
                out.push(Self::K(n, m));
                for k in 2..m {
                    out.push(Self::L(n, m, k));
                }
            }
        }
        out
    }
}

pub fn invariant_family<T: Real>(j: &JetN<T>, kind: InvariantKind) -> Result<T, ProlongationError> {
    for &o in &kind.orders() {
        if o < 2 || o > j.order() {
            return Err(ProlongationError::OrderOutOfRange { order: o, max: j.order() });
        }
    }
    let d = |k: usize| j.derivs[k];
    Ok(match kind {
        InvariantKind::I(n) => d(n).norm(),
        InvariantKind::J(n, m) => d(n).dot(&d(m)),
        InvariantKind::K(n, m) => d(n).cross(&d(m)).norm(),
        InvariantKind::L(l, n, m) => {
            if !(l > n && n > m) {
                return Err(ProlongationError::UnorderedTriple);
            }
            d(l).cross(&d(n)).dot(&d(m))
        }
    })
}

/// `det[x⁽ⁱ⁾·x⁽ʲ⁾]` over `i, j ∈ {l, n, m}`; equals `L²`.
pub fn gram_determinant<T: Real>(j: &JetN<T>, l: usize, n: usize, m: usize) -> Result<T, ProlongationError> {
    let vs = [j.deriv(l)?, j.deriv(n)?, j.deriv(m)?];
    let g = crate::linalg::Mat3::from_rows(std::array::from_fn(|a| std::array::from_fn(|b| vs[a].dot(&vs[b]))));
    Ok(g.det())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub t: f64,
    pub i2: f64,
    pub i3: f64,
    pub j32: f64,
    /// `‖x_tt × x_ttt‖`, reported next to `J₃,₂` for comparison.
    pub k32: f64,
    /// Five-point central difference of `½ I₂²`.
    pub half_d_i2_squared: f64,
    pub residual: f64,
}

/// Checks `J₃,₂ = ½ d/dt(I₂²)` at `t` with a fourth-order central
/// difference of step `h` and reports the third-order triple
/// `(I₂, I₃, J₃,₂)`.
pub fn completeness_check(m: &AnalyticMotion<f64>, t: f64, h: f64) -> CompletenessReport {
    let i2_sq = |tt: f64| m.derivative(tt, 2).norm_squared();
    let half_d = (8.0 * (i2_sq(t + h) - i2_sq(t - h)) - (i2_sq(t + 2.0 * h) - i2_sq(t - 2.0 * h))) / (24.0 * h);
    let (x2, x3) = (m.derivative(t, 2), m.derivative(t, 3));
    let j32 = x3.dot(&x2);
    CompletenessReport {
        t,
        i2: x2.norm(),
        i3: x3.norm(),
        j32,
        k32: x3.cross(&x2).norm(),
        half_d_i2_squared: half_d,
        residual: (j32 - half_d).abs(),
    }
}
