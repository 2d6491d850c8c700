use serde::{Deserialize, Serialize};

use crate::group::GalileanElement;
use crate::linalg::Vec3;
use crate::prolongation::{prolong_action, JetN};
use crate::scalar::Real;

pub const JET4_CSV_HEADER: &str = "t,x,y,z,x',y',z',x'',y'',z'',x''',y''',z''',x'''',y'''',z''''";

/// Time, position and the first four time derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet4<T> {
    pub t: T,
    pub x: Vec3<T>,
    pub x1: Vec3<T>,
    pub x2: Vec3<T>,
    pub x3: Vec3<T>,
    pub x4: Vec3<T>,
}

impl<T: Real> Jet4<T> {
    pub fn from_derivs(t: T, d: [Vec3<T>; 5]) -> Self {
        Self { t, x: d[0], x1: d[1], x2: d[2], x3: d[3], x4: d[4] }
    }

    pub fn derivs(&self) -> [Vec3<T>; 5] {
        [self.x, self.x1, self.x2, self.x3, self.x4]
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.derivs().iter().all(Vec3::is_finite)
    }

    pub fn to_jet_n(&self) -> JetN<T> {
        JetN { t: self.t, derivs: self.derivs().to_vec() }
    }

    /// First five derivatives of an order ≥ 4 jet.
    pub fn from_jet_n(j: &JetN<T>) -> Option<Self> {
        (j.order() >= 4).then(|| Self::from_derivs(j.t, std::array::from_fn(|k| j.derivs[k])))
    }

    /// Prolonged action of `g`.
    pub fn transformed(&self, g: &GalileanElement<T>) -> Self {
        Self::from_jet_n(&prolong_action(g, &self.to_jet_n())).expect("order preserved")
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        self.derivs().iter().zip(o.derivs()).fold((self.t - o.t).abs(), |m, (a, b)| m.max(a.max_abs_diff(&b)))
    }

    /// CSV record in [`JET4_CSV_HEADER`] order.
    pub fn csv_fields(&self) -> Vec<f64> {
        let mut out = vec![self.t.as_f64()];
        for d in self.derivs() {
            out.extend(d.to_f64());
        }
        out
    }
}
