//! Equivalence of motions under SGal(3).
//!
//! Two motions are compared through their invariant signatures
//! `(a₁, a₂, a₃, ȧ₁)`; the time shift is located on the `a₁` curves, a
//! candidate transformation is read off the moving frames at an anchor
//! time, `g = ρ₂(t₀ + s)·ρ₁(t₀)⁻¹`, and the verdict comes from checking
//! `x₂(t + s) = g·x₁(t)` pointwise over the window.

use serde::Serialize;
use thiserror::Error;

use crate::group::{compose, Event, GalileanElement};
use crate::moving_frame::{frame, invariants, FrameError, FrameTolerances, Motion, MotionError};
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquivalenceError {
    #[error("no regular window: {0}")]
    NoRegularWindow(String),
    #[error("frame is degenerate at anchor t = {t}: {source}")]
    DegenerateFrame { t: f64, source: FrameError },
    #[error("window [{0}, {1}] is empty or not finite")]
    InvalidWindow(f64, f64),
    #[error(transparent)]
    Motion(#[from] MotionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignatureRow<T> {
    pub a1: T,
    pub a2: T,
    pub a3: Option<T>,
    /// `d a₁/dt = (x_tt·x_ttt)/a₁`, absent when `a₁` vanishes.
    pub da1: Option<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Signature<T> {
    pub ts: Vec<T>,
    pub rows: Vec<SignatureRow<T>>,
    pub regular_mask: Vec<bool>,
    /// Sine of the angle between `x_tt` and `x_ttt` per sample.
    pub conditioning: Vec<T>,
}

impl<T: Real> Signature<T> {
    pub fn regular_count(&self) -> usize {
        self.regular_mask.iter().filter(|r| **r).count()
    }
}

fn row_of<T: Real>(j: &crate::moving_frame::Jet4<T>, tol: &FrameTolerances<T>) -> (SignatureRow<T>, bool, T) {
    let inv = invariants(j, tol);
    let da1 = (inv.a1 > tol.tol_a).then(|| j.x2.dot(&j.x3) / inv.a1);
    let denom = inv.a1 * j.x3.norm();
    let sine = if denom > T::zero() { inv.a2 / denom } else { T::zero() };
    (SignatureRow { a1: inv.a1, a2: inv.a2, a3: inv.a3, da1 }, inv.regular, sine)
}

/// Invariant rows at every time in `ts`; irregular samples are masked.
pub fn signature<T: Real, M: Motion<T> + ?Sized>(
    m: &M,
    ts: &[T],
    tol: &FrameTolerances<T>,
) -> Result<Signature<T>, EquivalenceError> {
    let mut rows = Vec::with_capacity(ts.len());
    let mut regular_mask = Vec::with_capacity(ts.len());
    let mut conditioning = Vec::with_capacity(ts.len());
    for &t in ts {
        let (row, regular, sine) = row_of(&m.jet(t)?, tol);
        rows.push(row);
        regular_mask.push(regular);
        conditioning.push(sine);
    }
    Ok(Signature { ts: ts.to_vec(), rows, regular_mask, conditioning })
}

/// `n` evenly spaced points covering `[lo, hi]`.
pub fn linspace<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / T::lit((n - 1) as f64);
    (0..n).map(|i| if i == n - 1 { hi } else { lo + step * T::lit(i as f64) }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EquivalenceOptions<T> {
    /// Pointwise tolerance, relative to `max(1, max‖x₂‖)` over the window.
    pub tol: T,
    /// Candidate time shifts; derived from the motions' domains when absent.
    pub shift_range: Option<(T, T)>,
    /// Points of the coarse shift grid.
    pub shift_steps: usize,
    /// Samples of the comparison window.
    pub window_samples: usize,
    /// Fixed anchor time in the first motion's clock.
    pub anchor: Option<T>,
    pub frame_tol: FrameTolerances<T>,
}

impl<T: Real> Default for EquivalenceOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(1e-6),
            shift_range: None,
            shift_steps: 401,
            window_samples: 101,
            anchor: None,
            frame_tol: FrameTolerances::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport<T> {
    pub equivalent: bool,
    pub time_shift: T,
    /// Present iff `equivalent`.
    pub transform: Option<GalileanElement<T>>,
    /// Max over regular samples of `|Δrow| / max(1, |row|)`.
    pub max_signature_residual: T,
    /// Max of `‖x₂(t + s) − g·x₁(t)‖ / max(1, max‖x₂‖)`.
    pub max_pointwise_residual: T,
    /// Tolerance applied to the pointwise residual: `tol` plus the jet
    /// error bound of sampled motions.
    pub effective_tol: T,
    pub anchor: T,
    /// `a₁` is flat on the window, so the shift came from a direct scan.
    pub shift_ambiguous: bool,
    /// Candidate transformation, also when rejected.
    pub candidate: GalileanElement<T>,
    /// Componentwise error bound of `(s, g)` from the jet error estimates;
    /// zero for exact jets.
    pub transform_error_bound: T,
}

/// `ρ₂(t₀ + s)·ρ₁(t₀)⁻¹`.
pub fn recover_transformation<T: Real, M1: Motion<T> + ?Sized, M2: Motion<T> + ?Sized>(
    m1: &M1,
    m2: &M2,
    s: T,
    t0: T,
    tol: &FrameTolerances<T>,
) -> Result<GalileanElement<T>, EquivalenceError> {
    let f = |m: &dyn Fn(T) -> Result<crate::moving_frame::Jet4<T>, MotionError>, t: T| {
        frame(&m(t)?, tol).map_err(|source| EquivalenceError::DegenerateFrame { t: t.as_f64(), source })
    };
    let f1 = f(&|t| m1.jet(t), t0)?;
    let f2 = f(&|t| m2.jet(t), t0 + s)?;
    Ok(compose(&f2.rho, &f1.rho.inverse()))
}

struct Problem<'a, T: Real, M1: ?Sized, M2: ?Sized> {
    m1: &'a M1,
    m2: &'a M2,
    ts: Vec<T>,
    sig1: Signature<T>,
    opts: &'a EquivalenceOptions<T>,
    d2: (T, T),
    min_overlap: usize,
}

impl<'a, T: Real, M1: Motion<T> + ?Sized, M2: Motion<T> + ?Sized> Problem<'a, T, M1, M2> {
    fn in_d2(&self, t: T) -> bool {
        t >= self.d2.0 && t <= self.d2.1
    }

    /// Normalized mean squared `a₁` mismatch, infinite without overlap.
    fn mismatch(&self, s: T) -> T {
        let mut sum = T::zero();
        let mut norm = T::zero();
        let mut count = 0usize;
        for (t, row) in self.ts.iter().zip(&self.sig1.rows) {
            let t2 = *t + s;
            if !self.in_d2(t2) {
                continue;
            }
            let Ok(j) = self.m2.jet(t2) else { continue };
            let d = j.x2.norm() - row.a1;
            sum += d * d;
            norm += row.a1 * row.a1;
            count += 1;
        }
        if count < self.min_overlap {
            return T::infinity();
        }
        sum / norm.max(T::min_positive_value())
    }

    /// Gauss-Newton polish of `s` on the residuals `a₁²(t + s) − a₁¹(t)`.
    fn polish(&self, mut s: T) -> T {
        let mut best = self.mismatch(s);
        for _ in 0..8 {
            let (mut num, mut den) = (T::zero(), T::zero());
            for (t, row) in self.ts.iter().zip(&self.sig1.rows) {
                let t2 = *t + s;
                if !self.in_d2(t2) {
                    continue;
                }
                let Ok(j) = self.m2.jet(t2) else { continue };
                let a1 = j.x2.norm();
                if a1 <= self.opts.frame_tol.tol_a {
                    continue;
                }
                let da1 = j.x2.dot(&j.x3) / a1;
                num += (a1 - row.a1) * da1;
                den += da1 * da1;
            }
            if den <= T::zero() {
                break;
            }
            let cand = s - num / den;
            let m = self.mismatch(cand);
            if !(m <= best) {
                break;
            }
            let done = (cand - s).abs() <= T::epsilon() * (T::one() + s.abs());
            s = cand;
            best = m;
            if done {
                break;
            }
        }
        s
    }

    fn golden(&self, mut lo: T, mut hi: T) -> T {
        let r = (T::lit(5.0).sqrt() - T::one()) / T::two();
        let mut c = hi - r * (hi - lo);
        let mut d = lo + r * (hi - lo);
        let (mut fc, mut fd) = (self.mismatch(c), self.mismatch(d));
        for _ in 0..200 {
            if (hi - lo).abs() <= T::lit(1e-12) * (T::one() + c.abs()) {
                break;
            }
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - r * (hi - lo);
                fc = self.mismatch(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + r * (hi - lo);
                fd = self.mismatch(d);
            }
        }
        (lo + hi) / T::two()
    }

    fn anchor(&self, s: T) -> Option<T> {
        let mut best: Option<(T, T)> = None;
        for (i, &t) in self.ts.iter().enumerate() {
            if !self.sig1.regular_mask[i] || !self.in_d2(t + s) {
                continue;
            }
            let Ok(j2) = self.m2.jet(t + s) else { continue };
            let (_, regular2, sine2) = row_of(&j2, &self.opts.frame_tol);
            if !regular2 {
                continue;
            }
            let q = self.sig1.conditioning[i].min(sine2);
            if best.map_or(true, |(_, bq)| q > bq) {
                best = Some((t, q));
            }
        }
        best.map(|(t, _)| t)
    }

    /// Positions of the first motion, positions of the second at `t + s`,
    /// and the normalization `max(1, max‖x₂‖)`.
    fn pointwise(&self, g: &GalileanElement<T>, s: T) -> Result<T, EquivalenceError> {
        let mut worst = T::zero();
        let mut scale = T::one();
        for &t in &self.ts {
            if !self.in_d2(t + s) {
                continue;
            }
            let x2 = self.m2.position(t + s)?;
            let img = g.act(&Event::new(t, self.m1.position(t)?));
            worst = worst.max(img.x.max_abs_diff(&x2).max((x2 - img.x).norm()));
            scale = scale.max(x2.norm());
        }
        Ok(worst / scale)
    }

    /// First-order propagation of the jet error estimates through the shift
    /// search and the frame quotient, with a safety factor of 10. The shift
    /// term is dropped when `a₁` cannot localize the shift. Zero for exact
    /// jets.
    fn error_bounds(&self, s: T, t0: T, shift_identifiable: bool) -> Result<ErrorBounds<T>, EquivalenceError> {
        let (e1, e2) = (self.m1.jet_error(t0), self.m2.jet_error(t0 + s));
        let mut e: [T; 5] = std::array::from_fn(|k| e1[k].max(e2[k]));
        let (mut x_max, mut v_max, mut t_max, mut scale) = (T::zero(), T::zero(), T::zero(), T::one());
        let mut da1_sq = T::zero();
        let mut n = 0usize;
        for &t in &self.ts {
            let jt = self.m1.jet(t)?;
            let et = self.m1.jet_error(t);
            for k in 0..5 {
                e[k] = e[k].max(et[k]);
            }
            x_max = x_max.max(jt.x.norm());
            v_max = v_max.max(jt.x1.norm());
            t_max = t_max.max((t - t0).abs());
            let a = jt.x2.norm();
            if a > T::zero() {
                let d = jt.x2.dot(&jt.x3) / a;
                da1_sq += d * d;
                n += 1;
            }
            if self.in_d2(t + s) {
                scale = scale.max(self.m2.position(t + s)?.norm());
                let e2 = self.m2.jet_error(t + s);
                for k in 0..5 {
                    e[k] = e[k].max(e2[k]);
                }
            }
        }
        if e.iter().all(|x| *x == T::zero()) {
            return Ok(ErrorBounds { pointwise: T::zero(), transform: T::zero() });
        }
        let j = self.m1.jet(t0)?;
        let (a, b, n3, n4) = (j.x2.norm(), j.x2.cross(&j.x3).norm(), j.x3.norm(), j.x4.norm());
        let da1_rms = (da1_sq / T::lit(n.max(1) as f64)).sqrt();
        let ds = if shift_identifiable && da1_rms > T::zero() { e[2] / da1_rms } else { T::zero() };
        let two = T::two();
        let rate = n3 / a + a * n4 / b;
        let d_rot = two * (e[2] / a + (a * e[3] + n3 * e[2]) / b) + rate * ds;
        let d_v = two * e[1] + d_rot * j.x1.norm() + a * ds;
        let d_y = two * e[0] + d_rot * j.x.norm() + t0.abs() * d_v + j.x1.norm() * ds;
        let ten = T::lit(10.0);
        let transform = ten * ds.max(d_rot).max(d_v).max(d_y);
        let pointwise = ten * (d_rot * (x_max + t_max * v_max) + t_max * d_v + d_y + v_max * ds) / scale;
        Ok(ErrorBounds { pointwise, transform })
    }
}

struct ErrorBounds<T> {
    pointwise: T,
    transform: T,
}

/// Decides whether `m2(t + s) = g·m1(t)` on `window` for some `(g, s)`.
pub fn test_equivalence<T: Real, M1: Motion<T> + ?Sized, M2: Motion<T> + ?Sized>(
    m1: &M1,
    m2: &M2,
    window: (T, T),
    opts: &EquivalenceOptions<T>,
) -> Result<EquivalenceReport<T>, EquivalenceError> {
    let (w0, w1) = window;
    if !(w0.is_finite() && w1.is_finite() && w1 > w0) {
        return Err(EquivalenceError::InvalidWindow(w0.as_f64(), w1.as_f64()));
    }
    let d1 = m1.domain();
    if w0 < d1.0 || w1 > d1.1 {
        return Err(EquivalenceError::NoRegularWindow(format!(
            "window [{}, {}] leaves the first motion's domain",
            w0, w1
        )));
    }
    let ts = linspace(w0, w1, opts.window_samples.max(2));
    let sig1 = signature(m1, &ts, &opts.frame_tol)?;
    if sig1.regular_count() == 0 {
        return Err(EquivalenceError::NoRegularWindow("first motion has no regular sample".into()));
    }
    let d2 = m2.domain();
    let len = w1 - w0;
    let (s_lo, s_hi) = opts.shift_range.unwrap_or_else(|| {
        let lo = if d2.0.is_finite() { d2.0 - w1 } else { -two_len(len) };
        let hi = if d2.1.is_finite() { d2.1 - w0 } else { two_len(len) };
        (lo, hi)
    });
    let p = Problem { m1, m2, ts, sig1, opts, d2, min_overlap: (opts.window_samples / 2).max(2) };

    let a1: Vec<T> = p.sig1.rows.iter().map(|r| r.a1).collect();
    let a1_max = a1.iter().fold(T::zero(), |m, x| m.max(*x));
    let a1_min = a1.iter().fold(T::infinity(), |m, x| m.min(*x));
    let e2 = p.ts.iter().fold(T::zero(), |m, t| m.max(m1.jet_error(*t)[2]));
    let flat = a1_max - a1_min <= T::lit(1e-8) * a1_max.max(T::one()) + T::lit(10.0) * e2;

    let grid = linspace(s_lo, s_hi, opts.shift_steps.max(2));
    let (shift, ambiguous) = if flat {
        // a₁ cannot localize s; scan the candidates directly
        let mut best: Option<(T, T)> = None;
        for s in std::iter::once(T::zero()).chain(grid.iter().copied()) {
            if p.mismatch(s).is_infinite() {
                continue;
            }
            let Some(t0) = opts.anchor.or_else(|| p.anchor(s)) else { continue };
            let Ok(g) = recover_transformation(m1, m2, s, t0, &opts.frame_tol) else { continue };
            let r = p.pointwise(&g, s)?;
            if best.map_or(true, |(_, br)| r < br) {
                best = Some((s, r));
            }
        }
        let (s, _) = best.ok_or_else(|| EquivalenceError::NoRegularWindow("no admissible shift".into()))?;
        (s, true)
    } else {
        let values: Vec<T> = grid.iter().map(|&s| p.mismatch(s)).collect();
        let (k, _) = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .ok_or_else(|| EquivalenceError::NoRegularWindow("windows do not overlap for any shift".into()))?;
        let lo = grid[k.saturating_sub(1)];
        let hi = grid[(k + 1).min(grid.len() - 1)];
        (p.polish(p.golden(lo, hi)), false)
    };

    let t0 = match opts.anchor {
        Some(t) => t,
        None => p
            .anchor(shift)
            .ok_or_else(|| EquivalenceError::NoRegularWindow("no anchor regular in both motions".into()))?,
    };
    let g = recover_transformation(m1, m2, shift, t0, &opts.frame_tol)?;
    let pointwise = p.pointwise(&g, shift)?;

    let mut sig_res = T::zero();
    for (i, &t) in p.ts.iter().enumerate() {
        if !p.sig1.regular_mask[i] || !p.in_d2(t + shift) {
            continue;
        }
        let (r2, regular2, _) = row_of(&m2.jet(t + shift)?, &opts.frame_tol);
        if !regular2 {
            continue;
        }
        let r1 = &p.sig1.rows[i];
        let rel = |a: T, b: T| (a - b).abs() / a.abs().max(T::one());
        sig_res = sig_res.max(rel(r1.a1, r2.a1)).max(rel(r1.a2, r2.a2));
        if let (Some(a), Some(b)) = (r1.a3, r2.a3) {
            sig_res = sig_res.max(rel(a, b));
        }
        if let (Some(a), Some(b)) = (r1.da1, r2.da1) {
            sig_res = sig_res.max(rel(a, b));
        }
    }

    let bounds = p.error_bounds(shift, t0, !ambiguous)?;
    let effective_tol = opts.tol + bounds.pointwise;
    let equivalent = pointwise <= effective_tol && g.is_finite();
    Ok(EquivalenceReport {
        equivalent,
        time_shift: shift,
        transform: equivalent.then_some(g),
        max_signature_residual: sig_res,
        max_pointwise_residual: pointwise,
        effective_tol,
        anchor: t0,
        shift_ambiguous: ambiguous,
        candidate: g,
        transform_error_bound: bounds.transform,
    })
}

fn two_len<T: Real>(len: T) -> T {
    T::two() * len
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{random_element_with, ElementScales};
    use crate::moving_frame::{AnalyticMotion, PerturbedMotion, Term};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scales() -> ElementScales {
        ElementScales { time: 1.0, velocity: 1.0, translation: 2.0 }
    }

    #[test]
    fn circle_signature_is_constant() {
        let m = AnalyticMotion::circle(1.0, 1.0);
        let sig = signature(&m, &linspace(0.0f64, 6.0, 25), &FrameTolerances::default()).unwrap();
        for r in &sig.rows {
            assert!((r.a1 - 1.0).abs() < 1e-15 && (r.a2 - 1.0).abs() < 1e-15);
            assert!(r.a3.unwrap().abs() < 1e-15 && r.da1.unwrap().abs() < 1e-15);
        }
        assert_eq!(sig.regular_count(), 25);
    }

    #[test]
    fn straight_motion_is_irregular() {
        let m = AnalyticMotion::line(Vec3::zero(), Vec3::new(1.0, 0.0, 0.0));
        let sig = signature(&m, &linspace(0.0, 1.0, 10), &FrameTolerances::default()).unwrap();
        assert_eq!(sig.regular_count(), 0);
        let err = test_equivalence(&m, &m, (0.0, 1.0), &EquivalenceOptions::default()).unwrap_err();
        assert!(matches!(err, EquivalenceError::NoRegularWindow(_)));
    }

    use crate::linalg::Vec3;

    #[test]
    fn signature_shift_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let m = AnalyticMotion::<f64>::random_generic(&mut rng, 1.0);
        let g = random_element_with(&mut rng, scales());
        let ts = linspace(-1.0, 1.0, 21);
        let shifted: Vec<f64> = ts.iter().map(|t| t + g.s).collect();
        let tol = FrameTolerances::default();
        let (a, b) = (signature(&m, &ts, &tol).unwrap(), signature(&m.transformed(&g), &shifted, &tol).unwrap());
        for (r1, r2) in a.rows.iter().zip(&b.rows) {
            assert!((r1.a1 - r2.a1).abs() < 1e-9 && (r1.a2 - r2.a2).abs() < 1e-9);
            assert!((r1.a3.unwrap() - r2.a3.unwrap()).abs() < 1e-9);
            assert!((r1.da1.unwrap() - r2.da1.unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn recovers_random_transformations() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let opts = EquivalenceOptions::default();
        for _ in 0..20 {
            let m1 = AnalyticMotion::<f64>::random_generic(&mut rng, 1.0);
            let g = random_element_with(&mut rng, scales());
            let m2 = m1.transformed(&g);
            let rep = test_equivalence(&m1, &m2, (-1.0, 1.0), &opts).unwrap();
            assert!(rep.equivalent, "{rep:?}");
            assert!((rep.time_shift - g.s).abs() < 1e-8);
            assert!(rep.transform.unwrap().max_abs_diff(&g) < 1e-8);
            // symmetry
            let back = test_equivalence(&m2, &m1, (-1.0 + g.s, 1.0 + g.s), &opts).unwrap();
            assert!(back.equivalent && (back.time_shift + g.s).abs() < 1e-8);
            assert!(back.transform.unwrap().max_abs_diff(&g.inverse()) < 1e-7);
        }
    }

    #[test]
    fn identical_motion_gives_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let m = AnalyticMotion::<f64>::random_generic(&mut rng, 1.0);
        let rep = test_equivalence(&m, &m, (-1.0, 1.0), &EquivalenceOptions::default()).unwrap();
        assert!(rep.equivalent && rep.time_shift.abs() < 1e-10);
        assert!(rep.transform.unwrap().max_abs_diff(&GalileanElement::identity()) < 1e-9);
    }

    #[test]
    fn circles_of_different_radius_are_not_equivalent() {
        let (a, b) = (AnalyticMotion::circle(1.0, 1.0), AnalyticMotion::circle(2.0, 1.0));
        let rep = test_equivalence(&a, &b, (0.0, 3.0), &EquivalenceOptions::default()).unwrap();
        assert!(!rep.equivalent && rep.transform.is_none());
        assert!(rep.shift_ambiguous);
    }

    #[test]
    fn congruent_circles_use_the_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let a = AnalyticMotion::circle(1.5, 0.8);
        let g = random_element_with(&mut rng, scales());
        let rep = test_equivalence(&a, &a.transformed(&g), (0.0, 3.0), &EquivalenceOptions::default()).unwrap();
        assert!(rep.equivalent && rep.shift_ambiguous, "{rep:?}");
    }

    #[test]
    fn perturbation_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let opts = EquivalenceOptions::default();
        for _ in 0..10 {
            let m1 = AnalyticMotion::<f64>::random_generic(&mut rng, 1.0);
            let g = random_element_with(&mut rng, scales());
            let m2 = m1.transformed(&g);
            let scale = linspace(-1.0, 1.0, 11).iter().fold(1.0f64, |s, t| s.max(m2.position(t + g.s).unwrap().norm()));
            let bent =
                PerturbedMotion { base: m2, axis: 0, term: Term::Sine { amp: 1e-3 * scale, freq: 3.0, phase: 0.4 } };
            let rep = test_equivalence(&m1, &bent, (-1.0, 1.0), &opts).unwrap();
            assert!(!rep.equivalent && rep.max_pointwise_residual > 10.0 * opts.tol, "{rep:?}");
        }
    }

    #[test]
    fn anchor_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let m1 = AnalyticMotion::<f64>::random_generic(&mut rng, 1.0);
        let g = random_element_with(&mut rng, scales());
        let m2 = m1.transformed(&g);
        let tol = FrameTolerances::default();
        let gs: Vec<_> = linspace(-1.0, 1.0, 9)
            .iter()
            .filter_map(|&t0| recover_transformation(&m1, &m2, g.s, t0, &tol).ok())
            .collect();
        assert!(gs.len() >= 5);
        for h in &gs {
            assert!(h.max_abs_diff(&gs[0]) < 1e-7);
        }
    }
}
