//! Jets of sampled trajectories by finite differences on arbitrary grids.

use serde::{Deserialize, Serialize};

use super::jet::Jet4;
use super::motion::MotionError;
use crate::linalg::{solve, Vec3};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiffScheme {
    /// Second-order accurate stencils.
    Central2,
    /// Fourth-order accurate stencils.
    Central4,
}

impl DiffScheme {
    pub fn accuracy(self) -> usize {
        match self {
            Self::Central2 => 2,
            Self::Central4 => 4,
        }
    }

    /// Samples needed for derivatives through order 4.
    pub fn min_samples(self) -> usize {
        match self {
            Self::Central2 => 6,
            Self::Central4 => 9,
        }
    }

    fn other(self) -> Self {
        match self {
            Self::Central2 => Self::Central4,
            Self::Central4 => Self::Central2,
        }
    }

    /// Half width of the centered stencil for derivative order `k`.
    fn half_width(self, k: usize) -> usize {
        (k + 1) / 2 + self.accuracy() / 2 - 1
    }
}

/// Local polynomial least-squares smoothing of positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smoothing {
    pub window: usize,
    pub degree: usize,
}

impl Smoothing {
    pub fn validate(&self, n: usize) -> Result<(), MotionError> {
        if self.window % 2 == 0 || self.window < self.degree + 1 || self.window > n {
            return Err(MotionError::InvalidSmoothing { window: self.window, degree: self.degree });
        }
        Ok(())
    }
}

/// Weights `w[k][j]` such that `f⁽ᵏ⁾(z) ≈ Σⱼ w[k][j] f(xⱼ)` for `k ≤ m`.
pub fn fornberg_weights<T: Real>(z: T, x: &[T], m: usize) -> Vec<Vec<T>> {
    let n = x.len();
    let mut c = vec![vec![T::zero(); n]; m + 1];
    let mut c1 = T::one();
    let mut c4 = x[0] - z;
    c[0][0] = T::one();
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = T::one();
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let kk = T::lit(k as f64);
                    c[k][i] = c1 * (kk * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                let kk = T::lit(k as f64);
                c[k][j] = (c4 * c[k][j] - kk * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

fn check_grid<T: Real>(ts: &[T], xs: &[Vec3<T>], needed: usize) -> Result<(), MotionError> {
    if ts.len() != xs.len() {
        return Err(MotionError::LengthMismatch { times: ts.len(), positions: xs.len() });
    }
    if ts.len() < needed {
        return Err(MotionError::GridTooSmall { needed, got: ts.len() });
    }
    if let Some(i) = ts.iter().chain(xs.iter().flat_map(|v| v.0.iter())).position(|v| !v.is_finite()) {
        return Err(MotionError::NonFinite { index: i % ts.len() });
    }
    if let Some(i) = ts.windows(2).position(|w| w[1] <= w[0]) {
        return Err(MotionError::NonMonotoneGrid { index: i + 1 });
    }
    Ok(())
}

/// Least-squares polynomial smoothing evaluated at every node. The fitting
/// window is centered where possible and shifted inward at the ends.
pub fn savitzky_golay<T: Real>(ts: &[T], xs: &[Vec3<T>], s: Smoothing) -> Result<Vec<Vec3<T>>, MotionError> {
    let n = ts.len();
    s.validate(n)?;
    let half = s.window / 2;
    let p = s.degree + 1;
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(half).min(n - s.window);
            let nodes = &ts[start..start + s.window];
            let scale = (nodes[s.window - 1] - nodes[0]).max(T::min_positive_value());
            let u: Vec<T> = nodes.iter().map(|&t| (t - ts[i]) / scale).collect();
            let vander: Vec<Vec<T>> = u.iter().map(|&x| (0..p).map(|k| x.powi(k as i32)).collect()).collect();
            let normal: Vec<Vec<T>> = (0..p)
                .map(|a| (0..p).map(|b| vander.iter().fold(T::zero(), |acc, r| acc + r[a] * r[b])).collect())
                .collect();
            let mut smoothed = Vec3::zero();
            for axis in 0..3 {
                let rhs: Vec<T> = (0..p)
                    .map(|a| vander.iter().zip(&xs[start..]).fold(T::zero(), |acc, (r, x)| acc + r[a] * x[axis]))
                    .collect();
                let coef = solve(&normal, &rhs, T::lit(1e-14))
                    .ok_or(MotionError::InvalidSmoothing { window: s.window, degree: s.degree })?;
                smoothed[axis] = coef[0];
            }
            Ok(smoothed)
        })
        .collect()
}

/// Finite-difference jets on a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledJets<T> {
    pub scheme: DiffScheme,
    pub jets: Vec<Jet4<T>>,
    /// Sample uses a one-sided stencil for some derivative order.
    pub boundary: Vec<bool>,
    /// Per sample and derivative order: estimated max-norm error. Interior
    /// samples use the Richardson estimate `|D(h) − D(2h)| / (2ᵖ − 1)` at the
    /// nearest node where the doubled centered stencil fits; boundary samples
    /// use the difference to the other scheme. Infinite when neither is
    /// available.
    pub error: Vec<[T; 5]>,
}

fn differentiate<T: Real>(ts: &[T], xs: &[Vec3<T>], scheme: DiffScheme) -> (Vec<[Vec3<T>; 5]>, Vec<bool>) {
    let n = ts.len();
    let mut out = Vec::with_capacity(n);
    let mut boundary = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = [xs[i], Vec3::zero(), Vec3::zero(), Vec3::zero(), Vec3::zero()];
        let mut one_sided = false;
        for k in 1..=4 {
            let r = scheme.half_width(k);
            let (start, len) = if i >= r && i + r < n {
                (i - r, 2 * r + 1)
            } else {
                one_sided = true;
                let len = (2 * r + 2).min(n);
                (i.saturating_sub(r).min(n - len), len)
            };
            let w = fornberg_weights(ts[i], &ts[start..start + len], k);
            d[k] = w[k].iter().zip(&xs[start..start + len]).fold(Vec3::zero(), |acc, (c, x)| acc + x.scale(*c));
        }
        out.push(d);
        boundary.push(one_sided);
    }
    (out, boundary)
}

/// Centered derivative of order `k` at node `i` on every `stride`-th node.
fn centered_at_stride<T: Real>(
    ts: &[T],
    xs: &[Vec3<T>],
    scheme: DiffScheme,
    i: usize,
    k: usize,
    stride: usize,
) -> Option<Vec3<T>> {
    let reach = scheme.half_width(k) * stride;
    if i < reach || i + reach >= ts.len() {
        return None;
    }
    let idx: Vec<usize> = (i - reach..=i + reach).step_by(stride).collect();
    let nodes: Vec<T> = idx.iter().map(|&j| ts[j]).collect();
    let w = fornberg_weights(ts[i], &nodes, k);
    Some(w[k].iter().zip(&idx).fold(Vec3::zero(), |acc, (c, &j)| acc + xs[j].scale(*c)))
}

/// Jets through order 4 at every sample, after optional smoothing.
pub fn jets_from_samples<T: Real>(
    ts: &[T],
    xs: &[Vec3<T>],
    scheme: DiffScheme,
    smoothing: Option<Smoothing>,
) -> Result<SampledJets<T>, MotionError> {
    check_grid(ts, xs, scheme.min_samples())?;
    let positions = match smoothing {
        Some(s) => savitzky_golay(ts, xs, s)?,
        None => xs.to_vec(),
    };
    let (derivs, boundary) = differentiate(ts, &positions, scheme);
    let other = scheme.other();
    let alt = (ts.len() >= other.min_samples()).then(|| differentiate(ts, &positions, other).0);
    let gain = T::lit(((1usize << scheme.accuracy()) - 1) as f64);
    let n = ts.len();
    let rich: Vec<[Option<T>; 5]> = (0..n)
        .map(|i| {
            std::array::from_fn(|k| {
                if k == 0 || boundary[i] {
                    return None;
                }
                centered_at_stride(ts, &positions, scheme, i, k, 2).map(|d| derivs[i][k].max_abs_diff(&d) / gain)
            })
        })
        .collect();
    let error = (0..n)
        .map(|i| {
            std::array::from_fn(|k| {
                if k == 0 {
                    return T::zero();
                }
                // interior nodes too close to the ends for the doubled
                // stencil borrow the nearest estimate
                let nearest = (!boundary[i])
                    .then(|| {
                        (0..n).find_map(|d| {
                            let lo = i.checked_sub(d).and_then(|j| rich[j][k]);
                            lo.or_else(|| rich.get(i + d).and_then(|r| r[k]))
                        })
                    })
                    .flatten();
                match (nearest, &alt) {
                    (Some(e), _) => e,
                    (None, Some(alt)) => derivs[i][k].max_abs_diff(&alt[i][k]),
                    (None, None) => T::infinity(),
                }
            })
        })
        .collect();
    let jets = ts.iter().zip(derivs).map(|(&t, d)| Jet4::from_derivs(t, d)).collect();
    Ok(SampledJets { scheme, jets, boundary, error })
}
