//! Small fixed-size linear algebra plus a few dense helpers.
//!
//! `Vec3`/`Mat3` are generic over [`Real`]; singular values go through
//! nalgebra in `f64` since they are only used for rank decisions.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self([x, y, z])
    }

    #[inline]
    pub fn zero() -> Self {
        Self([T::zero(); 3])
    }

    /// Standard basis vector `e_i`, `i` in `0..3`.
    pub fn unit(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = T::one();
        v
    }

    pub fn from_f64(v: [f64; 3]) -> Self {
        Self(v.map(T::lit))
    }

    pub fn to_f64(self) -> [f64; 3] {
        self.0.map(Real::as_f64)
    }

    #[inline]
    pub fn x(&self) -> T {
        self.0[0]
    }
    #[inline]
    pub fn y(&self) -> T {
        self.0[1]
    }
    #[inline]
    pub fn z(&self) -> T {
        self.0[2]
    }

    #[inline]
    pub fn dot(&self, o: &Self) -> T {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    #[inline]
    pub fn cross(&self, o: &Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Self([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    #[inline]
    pub fn norm_squared(&self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn scale(&self, k: T) -> Self {
        Self(self.0.map(|c| c * k))
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        (*self - *o).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vec3<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl<T: Real> AddAssign for Vec3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl<T: Real> SubAssign for Vec3<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Real> Mat3<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self([[o, z, z], [z, o, z], [z, z, o]])
    }

    pub fn zero() -> Self {
        Self([[T::zero(); 3]; 3])
    }

    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Self(rows)
    }

    pub fn from_cols(c0: Vec3<T>, c1: Vec3<T>, c2: Vec3<T>) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i] = [c0[i], c1[i], c2[i]];
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.0[r][c]
    }

    pub fn col(&self, c: usize) -> Vec3<T> {
        Vec3::new(self.0[0][c], self.0[1][c], self.0[2][c])
    }

    pub fn row(&self, r: usize) -> Vec3<T> {
        Vec3(self.0[r])
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Vec3<T>) -> Vec3<T> {
        Vec3::new(self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v))
    }

    pub fn mul_mat(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = T::zero();
                for k in 0..3 {
                    acc += self.0[i][k] * o.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }

    pub fn scale(&self, k: T) -> Self {
        Self(self.0.map(|r| r.map(|c| c * k)))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += o.0[i][j];
            }
        }
        m
    }

    pub fn det(&self) -> T {
        self.row(0).dot(&self.row(1).cross(&self.row(2)))
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        let mut m = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.0[i][j] - o.0[i][j]).abs());
            }
        }
        m
    }

    /// Largest entry of `|MᵀM - I|`.
    pub fn orthonormality_defect(&self) -> T {
        self.transpose().mul_mat(self).max_abs_diff(&Self::identity())
    }
}

/// Dense row-major square matrix product.
pub fn mat_mul<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    let mut out = vec![vec![T::zero(); m]; n];
    for i in 0..n {
        for k in 0..inner {
            let aik = a[i][k];
            if aik == T::zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn identity<T: Real>(n: usize) -> Vec<Vec<T>> {
    let mut m = vec![vec![T::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn max_abs_diff<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> T {
    a.iter().zip(b).flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (*x - *y).abs())).fold(T::zero(), T::max)
}

/// Gauss-Jordan inverse with partial pivoting. `None` when a pivot falls
/// below `pivot_tol` times the largest entry.
pub fn invert<T: Real>(a: &[Vec<T>], pivot_tol: T) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let scale = a.iter().flatten().fold(T::zero(), |m, x| m.max(x.abs())).max(T::min_positive_value());
    let mut work: Vec<Vec<T>> =
        a.iter().zip(identity::<T>(n)).map(|(r, e)| r.iter().copied().chain(e).collect()).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            work[i][col].abs().partial_cmp(&work[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if work[piv][col].abs() <= pivot_tol * scale {
            return None;
        }
        work.swap(col, piv);
        let p = work[col][col];
        for x in work[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col {
                let f = work[r][col];
                if f != T::zero() {
                    for c in 0..2 * n {
                        let v = work[col][c];
                        work[r][c] -= f * v;
                    }
                }
            }
        }
    }
    Some(work.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `A x = b` for square `A`.
pub fn solve<T: Real>(a: &[Vec<T>], b: &[T], pivot_tol: T) -> Option<Vec<T>> {
    let inv = invert(a, pivot_tol)?;
    Some(inv.iter().map(|row| row.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y)).collect())
}

/// Matrix exponential by scaling and squaring with a truncated Taylor
/// series on the scaled matrix.
pub fn expm<T: Real>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let norm = a.iter().map(|r| r.iter().fold(T::zero(), |s, x| s + x.abs())).fold(T::zero(), T::max);
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > T::half() {
        scaled_norm *= T::half();
        squarings += 1;
    }
    let factor = T::lit(0.5f64.powi(squarings as i32));
    let scaled: Vec<Vec<T>> = a.iter().map(|r| r.iter().map(|x| *x * factor).collect()).collect();

    let mut result = identity::<T>(n);
    let mut term = identity::<T>(n);
    for k in 1..=20 {
        term = mat_mul(&term, &scaled);
        let inv_k = T::one() / T::lit(k as f64);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x *= inv_k;
            }
        }
        let mut biggest = T::zero();
        for (rr, tr) in result.iter_mut().zip(&term) {
            for (x, t) in rr.iter_mut().zip(tr) {
                *x += *t;
                biggest = biggest.max(t.abs());
            }
        }
        if biggest < T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

/// Singular values and numerical rank of a dense matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankInfo {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    /// Absolute cutoff actually used.
    pub cutoff: f64,
    /// Ratio between the smallest kept and largest dropped singular value
    /// (`f64::INFINITY` when nothing was dropped).
    pub gap: f64,
}

/// Numerical rank with cutoff `rel_cutoff * σ_max`.
pub fn numerical_rank(rows: &[Vec<f64>], rel_cutoff: f64) -> RankInfo {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return RankInfo { rank: 0, singular_values: vec![], cutoff: 0.0, gap: f64::INFINITY };
    }
    let m = nalgebra::DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let smax = sv.first().copied().unwrap_or(0.0);
    let cutoff = rel_cutoff * smax;
    let rank = sv.iter().filter(|&&s| s > cutoff).count();
    let gap = match (rank.checked_sub(1).map(|i| sv[i]), sv.get(rank)) {
        (Some(kept), Some(&dropped)) if dropped > 0.0 => kept / dropped,
        _ => f64::INFINITY,
    };
    RankInfo { rank, singular_values: sv, cutoff, gap }
}
