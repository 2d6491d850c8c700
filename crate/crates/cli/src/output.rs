//! Output records. CSV headers and JSON keys are part of the versioned
//! schema documented in the README.

use galinv_core::equivalence::EquivalenceReport;
use galinv_core::group::GalileanElement;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub const INVARIANTS_CSV_HEADER: &str = "t,a1,a2,a3,jcurv,regular,well_conditioned,boundary";

pub const EQUIV_CSV_HEADER: &str = "equivalent,time_shift,s,v1,v2,v3,r11,r12,r13,r21,r22,r23,r31,r32,r33,y1,y2,y3,\
max_signature_residual,max_pointwise_residual,effective_tol,transform_error_bound,anchor,shift_ambiguous";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantRecord {
    pub version: u32,
    pub t: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: Option<f64>,
    pub jcurv: Option<f64>,
    pub regular: bool,
    pub well_conditioned: bool,
    pub boundary: bool,
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

impl InvariantRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.t,
            self.a1,
            self.a2,
            opt(self.a3),
            opt(self.jcurv),
            self.regular,
            self.well_conditioned,
            self.boundary
        )
    }
}

/// `(s, v, R, y)` with `R` row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub version: u32,
    pub s: f64,
    pub v: [f64; 3],
    pub r: [[f64; 3]; 3],
    pub y: [f64; 3],
}

impl TransformRecord {
    pub fn from_element(g: &GalileanElement<f64>) -> Self {
        let m = g.r.matrix();
        Self {
            version: SCHEMA_VERSION,
            s: g.s,
            v: [g.v[0], g.v[1], g.v[2]],
            r: std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j))),
            y: [g.y[0], g.y[1], g.y[2]],
        }
    }

    fn csv_fields(&self) -> Vec<String> {
        let mut f = vec![self.s.to_string()];
        f.extend(self.v.iter().map(f64::to_string));
        f.extend(self.r.iter().flatten().map(f64::to_string));
        f.extend(self.y.iter().map(f64::to_string));
        f
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivRecord {
    pub version: u32,
    pub equivalent: bool,
    pub time_shift: f64,
    /// Present only when `equivalent`.
    pub transform: Option<TransformRecord>,
    pub candidate: TransformRecord,
    pub max_signature_residual: f64,
    pub max_pointwise_residual: f64,
    pub effective_tol: f64,
    pub transform_error_bound: f64,
    pub anchor: f64,
    pub shift_ambiguous: bool,
}

impl EquivRecord {
    pub fn new(r: &EquivalenceReport<f64>) -> Self {
        Self {
            version: SCHEMA_VERSION,
            equivalent: r.equivalent,
            time_shift: r.time_shift,
            transform: r.transform.as_ref().map(TransformRecord::from_element),
            candidate: TransformRecord::from_element(&r.candidate),
            max_signature_residual: r.max_signature_residual,
            max_pointwise_residual: r.max_pointwise_residual,
            effective_tol: r.effective_tol,
            transform_error_bound: r.transform_error_bound,
            anchor: r.anchor,
            shift_ambiguous: r.shift_ambiguous,
        }
    }

    /// One row; the transform columns hold the candidate.
    pub fn csv_line(&self) -> String {
        let mut f = vec![self.equivalent.to_string(), self.time_shift.to_string()];
        f.extend(self.candidate.csv_fields());
        f.extend(
            [
                self.max_signature_residual,
                self.max_pointwise_residual,
                self.effective_tol,
                self.transform_error_bound,
                self.anchor,
            ]
            .iter()
            .map(f64::to_string),
        );
        f.push(self.shift_ambiguous.to_string());
        f.join(",")
    }
}
