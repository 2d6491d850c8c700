//! Infinitesimal generators of the SGal(3) action on `(t, x, y, z)`,
//! their brackets and structure constants, and one-parameter subgroups.
//!
//! Generators are affine vector fields `z ↦ L z + c`. The basis order is
//! fixed globally:
//!
//! | index | field          |
//! |-------|----------------|
//! | 1     | ∂t             |
//! | 2–4   | ∂x, ∂y, ∂z     |
//! | 5–7   | t∂x, t∂y, t∂z  |
//! | 8     | y∂x − x∂y      |
//! | 9     | x∂z − z∂x      |
//! | 10    | z∂y − y∂z      |

use serde::Serialize;
use thiserror::Error;

use crate::group::GalileanElement;
use crate::linalg::expm;
use crate::scalar::{Coefficient, Real};

pub const DIM: usize = 10;

/// Number of scalar slots in an affine field on R⁴ (16 linear + 4 constant).
const SLOTS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("generator index {0} out of range 1..=10")]
    IndexOutOfRange(usize),
    #[error("bracket [X{i}, X{j}] is not in the span of the generators (residual {residual:e})")]
    DecompositionFailure { i: usize, j: usize, residual: f64 },
}

/// The vector field `z ↦ linear·z + constant` on coordinates `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineField<T> {
    pub linear: [[T; 4]; 4],
    pub constant: [T; 4],
}

impl<T: Coefficient> AffineField<T> {
    pub fn zero() -> Self {
        Self { linear: [[T::zero(); 4]; 4], constant: [T::zero(); 4] }
    }

    pub fn is_zero(&self) -> bool {
        self.slots().iter().all(Coefficient::is_negligible)
    }

    pub fn evaluate(&self, z: &[T; 4]) -> [T; 4] {
        let mut out = self.constant;
        for (i, o) in out.iter_mut().enumerate() {
            for (j, zj) in z.iter().enumerate() {
                *o = *o + self.linear[i][j] * *zj;
            }
        }
        out
    }

    pub fn scale(&self, k: T) -> Self {
        Self { linear: self.linear.map(|r| r.map(|x| x * k)), constant: self.constant.map(|x| x * k) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..4 {
            r.constant[i] = r.constant[i] + o.constant[i];
            for j in 0..4 {
                r.linear[i][j] = r.linear[i][j] + o.linear[i][j];
            }
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    /// Flattened `(linear row-major, constant)` coordinates.
    pub fn slots(&self) -> [T; SLOTS] {
        let mut s = [T::zero(); SLOTS];
        for i in 0..4 {
            for j in 0..4 {
                s[4 * i + j] = self.linear[i][j];
            }
            s[16 + i] = self.constant[i];
        }
        s
    }

    /// The generator in the 5×5 representation, acting on `[t, x, 1]ᵀ`.
    pub fn to_matrix5(&self) -> [[T; 5]; 5] {
        let mut m = [[T::zero(); 5]; 5];
        for i in 0..4 {
            m[i][..4].copy_from_slice(&self.linear[i]);
            m[i][4] = self.constant[i];
        }
        m
    }
}

fn basis_field<T: Coefficient>(i: usize) -> Option<AffineField<T>> {
    let one = T::one();
    let mut f = AffineField::zero();
    match i {
        1..=4 => f.constant[i - 1] = one,
        // t∂x, t∂y, t∂z: spatial row, time column
        5..=7 => f.linear[i - 4][0] = one,
        8 => {
            f.linear[1][2] = one;
            f.linear[2][1] = -one;
        }
        9 => {
            f.linear[3][1] = one;
            f.linear[1][3] = -one;
        }
        10 => {
            f.linear[2][3] = one;
            f.linear[3][2] = -one;
        }
        _ => return None,
    }
    Some(f)
}

/// The generator `X̂ᵢ`, `1 ≤ i ≤ 10`.
pub fn generator<T: Coefficient>(i: usize) -> Result<AffineField<T>, AlgebraError> {
    basis_field(i).ok_or(AlgebraError::IndexOutOfRange(i))
}

/// All ten generators in basis order.
pub fn generators<T: Coefficient>() -> [AffineField<T>; DIM] {
    std::array::from_fn(|k| basis_field(k + 1).expect("index in range"))
}

/// Lie bracket of vector fields, `[V, W] = V(W) − W(V)` applied
/// componentwise: `linear = L_W L_V − L_V L_W`, `constant = L_W c_V − L_V c_W`.
///
/// With this sign `[∂t, t∂x] = ∂x`, i.e. `[X̂₁, X̂₅] = X̂₂`.
pub fn bracket<T: Coefficient>(v: &AffineField<T>, w: &AffineField<T>) -> AffineField<T> {
    let mut out = AffineField::zero();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = T::zero();
            for k in 0..4 {
                acc = acc + w.linear[i][k] * v.linear[k][j] - v.linear[i][k] * w.linear[k][j];
            }
            out.linear[i][j] = acc;
        }
        let mut acc = T::zero();
        for k in 0..4 {
            acc = acc + w.linear[i][k] * v.constant[k] - v.linear[i][k] * w.constant[k];
        }
        out.constant[i] = acc;
    }
    out
}

/// Coefficients in the ordered basis `(X̂₁, …, X̂₁₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlgebraVector<T> {
    pub c: [T; DIM],
}

impl<T: Coefficient> AlgebraVector<T> {
    pub fn zero() -> Self {
        Self { c: [T::zero(); DIM] }
    }

    /// Basis vector `eᵢ`, `1 ≤ i ≤ 10`.
    pub fn basis(i: usize) -> Result<Self, AlgebraError> {
        if !(1..=DIM).contains(&i) {
            return Err(AlgebraError::IndexOutOfRange(i));
        }
        let mut v = Self::zero();
        v.c[i - 1] = T::one();
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Coefficient::is_negligible)
    }

    /// `Σ cᵢ X̂ᵢ` for the given generator set.
    pub fn field_with(&self, gens: &[AffineField<T>; DIM]) -> AffineField<T> {
        gens.iter().zip(&self.c).fold(AffineField::zero(), |acc, (g, k)| acc.add(&g.scale(*k)))
    }

    pub fn field(&self) -> AffineField<T> {
        self.field_with(&generators())
    }

    /// Single nonzero entry as `(sign, index)`, if the vector is `±X̂ₖ`.
    pub fn as_signed_basis(&self) -> Option<(i64, usize)> {
        let nz: Vec<usize> = (0..DIM).filter(|&k| !self.c[k].is_negligible()).collect();
        match nz.as_slice() {
            [k] => {
                let x = self.c[*k].to_f64();
                if x == 1.0 {
                    Some((1, k + 1))
                } else if x == -1.0 {
                    Some((-1, k + 1))
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// Expresses `field` in the span of `gens` by row-reducing the 20×10 slot
/// system. Returns the coefficients and the residual of the least
/// consistent row (zero when the field lies in the span).
pub fn decompose_in<T: Coefficient>(
    field: &AffineField<T>,
    gens: &[AffineField<T>; DIM],
) -> (AlgebraVector<T>, Option<f64>) {
    let gslots: Vec<[T; SLOTS]> = gens.iter().map(AffineField::slots).collect();
    let rhs = field.slots();
    // augmented rows: [g_1..g_10 | rhs]
    let mut rows: Vec<[T; DIM + 1]> = (0..SLOTS)
        .map(|r| {
            let mut row = [T::zero(); DIM + 1];
            for (k, gs) in gslots.iter().enumerate() {
                row[k] = gs[r];
            }
            row[DIM] = rhs[r];
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut prow = 0;
    for col in 0..DIM {
        let best = (prow..SLOTS).filter(|&r| !rows[r][col].is_negligible()).max_by(|&a, &b| {
            rows[a][col].to_f64().abs().partial_cmp(&rows[b][col].to_f64().abs()).unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(best) = best else { continue };
        rows.swap(prow, best);
        let p = rows[prow][col];
        for x in rows[prow].iter_mut() {
            *x = *x / p;
        }
        for r in 0..SLOTS {
            if r != prow && !rows[r][col].is_negligible() {
                let f = rows[r][col];
                for c in 0..=DIM {
                    let v = rows[prow][c];
                    rows[r][c] = rows[r][c] - f * v;
                }
            }
        }
        pivot_cols.push(col);
        prow += 1;
    }

    let mut out = AlgebraVector::zero();
    for (r, &col) in pivot_cols.iter().enumerate() {
        out.c[col] = rows[r][DIM];
    }
    let inconsistent = rows[prow..]
        .iter()
        .map(|row| row[DIM])
        .filter(|x| !x.is_negligible())
        .map(|x| x.to_f64().abs())
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    (out, inconsistent)
}

/// `c[i][j]` = coefficients of `[X̂ᵢ, X̂ⱼ]`, stored for all ordered pairs
/// (1-based accessors).
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTable<T> {
    entries: Vec<AlgebraVector<T>>,
}

impl<T: Coefficient> StructureTable<T> {
    /// `[X̂ᵢ, X̂ⱼ]`, `1 ≤ i, j ≤ 10`.
    pub fn entry(&self, i: usize, j: usize) -> &AlgebraVector<T> {
        assert!((1..=DIM).contains(&i) && (1..=DIM).contains(&j), "index out of range");
        &self.entries[(i - 1) * DIM + (j - 1)]
    }

    /// Maximum `|c[i][j] + c[j][i]|` over all pairs.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 1..=DIM {
            for j in 1..=DIM {
                for k in 0..DIM {
                    let s = self.entry(i, j).c[k] + self.entry(j, i).c[k];
                    m = m.max(s.to_f64().abs());
                }
            }
        }
        m
    }

    /// Renders the table with one row per `X̂ᵢ` and one column per `X̂ⱼ`.
    pub fn render(&self) -> String {
        let cell = |v: &AlgebraVector<T>| -> String {
            if v.is_zero() {
                return "0".into();
            }
            match v.as_signed_basis() {
                Some((1, k)) => format!("X{k}"),
                Some((_, k)) => format!("-X{k}"),
                None => {
                    let terms: Vec<String> = (0..DIM)
                        .filter(|&k| !v.c[k].is_negligible())
                        .map(|k| format!("{}*X{}", v.c[k].to_f64(), k + 1))
                        .collect();
                    terms.join("+")
                }
            }
        };
        let mut out = String::new();
        out.push_str(&format!("{:>6}", "[,]"));
        for j in 1..=DIM {
            out.push_str(&format!("{:>6}", format!("X{j}")));
        }
        out.push('\n');
        for i in 1..=DIM {
            out.push_str(&format!("{:>6}", format!("X{i}")));
            for j in 1..=DIM {
                out.push_str(&format!("{:>6}", cell(self.entry(i, j))));
            }
            out.push('\n');
        }
        out
    }
}

/// Structure constants for an arbitrary generator set (used for mutation
/// checks); `structure_table` is the standard basis.
pub fn structure_table_from<T: Coefficient>(gens: &[AffineField<T>; DIM]) -> Result<StructureTable<T>, AlgebraError> {
    let mut entries = Vec::with_capacity(DIM * DIM);
    for i in 0..DIM {
        for j in 0..DIM {
            let b = bracket(&gens[i], &gens[j]);
            let (coeffs, residual) = decompose_in(&b, gens);
            if let Some(residual) = residual {
                return Err(AlgebraError::DecompositionFailure { i: i + 1, j: j + 1, residual });
            }
            entries.push(coeffs);
        }
    }
    Ok(StructureTable { entries })
}

pub fn structure_table<T: Coefficient>() -> Result<StructureTable<T>, AlgebraError> {
    structure_table_from(&generators())
}

/// Reference commutators `[X̂ᵢ, X̂ⱼ] = sign·X̂ₖ` for `i < j`; every pair not
/// listed commutes.
pub const TABULATED_BRACKETS: [(usize, usize, i64, usize); 18] = [
    (1, 5, 1, 2),
    (1, 6, 1, 3),
    (1, 7, 1, 4),
    (2, 8, -1, 3),
    (2, 9, 1, 4),
    (3, 8, 1, 2),
    (3, 10, -1, 4),
    (4, 9, -1, 2),
    (4, 10, 1, 3),
    (5, 8, -1, 6),
    (5, 9, 1, 7),
    (6, 8, 1, 5),
    (6, 10, -1, 7),
    (7, 9, -1, 5),
    (7, 10, 1, 6),
    (8, 9, -1, 10),
    (8, 10, 1, 9),
    (9, 10, -1, 8),
];

/// Expected coefficient vector of `[X̂ᵢ, X̂ⱼ]` for any ordered pair.
pub fn tabulated_entry<T: Coefficient>(i: usize, j: usize) -> AlgebraVector<T> {
    let mut v = AlgebraVector::zero();
    for &(a, b, sign, k) in &TABULATED_BRACKETS {
        if (a, b) == (i, j) {
            v.c[k - 1] = T::from_i64(sign);
        } else if (a, b) == (j, i) {
            v.c[k - 1] = T::from_i64(-sign);
        }
    }
    v
}

/// One pair whose computed bracket differs from the reference table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableMismatch {
    pub i: usize,
    pub j: usize,
    pub computed: Vec<f64>,
    pub expected: Vec<f64>,
}

/// Compares the 45 pairs `i < j` against [`TABULATED_BRACKETS`]; returns
/// the mismatches and the largest coefficient residual.
pub fn compare_with_tabulated<T: Coefficient>(table: &StructureTable<T>) -> (Vec<TableMismatch>, f64) {
    let mut mismatches = Vec::new();
    let mut worst: f64 = 0.0;
    for i in 1..=DIM {
        for j in (i + 1)..=DIM {
            let got = table.entry(i, j);
            let want = tabulated_entry::<T>(i, j);
            let res = (0..DIM).map(|k| (got.c[k] - want.c[k]).to_f64().abs()).fold(0.0, f64::max);
            worst = worst.max(res);
            if res >= 1e-12 {
                mismatches.push(TableMismatch {
                    i,
                    j,
                    computed: got.c.iter().map(Coefficient::to_f64).collect(),
                    expected: want.c.iter().map(Coefficient::to_f64).collect(),
                });
            }
        }
    }
    (mismatches, worst)
}

/// `[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]`.
pub fn jacobiator<T: Coefficient>(x: &AffineField<T>, y: &AffineField<T>, z: &AffineField<T>) -> AffineField<T> {
    bracket(x, &bracket(y, z)).add(&bracket(y, &bracket(z, x))).add(&bracket(z, &bracket(x, y)))
}

/// `exp(ε Σ cᵢ X̂ᵢ)` computed in the 5×5 representation.
pub fn one_parameter_subgroup<T: Real + Coefficient>(c: &AlgebraVector<T>, eps: T) -> GalileanElement<T> {
    let m5 = c.field().scale(eps).to_matrix5();
    let dense: Vec<Vec<T>> = m5.iter().map(|r| r.to_vec()).collect();
    let e = expm(&dense);
    let mut arr = [[T::zero(); 5]; 5];
    for i in 0..5 {
        arr[i].copy_from_slice(&e[i]);
    }
    // the exponential lands in SGal(3) up to rounding of the series
    let tol = T::lit(1e-8) * (T::one() + num_traits::Float::abs(eps));
    GalileanElement::from_matrix(&arr, tol).expect("exponential of a Galilean generator is a Galilean element")
}
