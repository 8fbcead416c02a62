//! Fixed-size 3×3 tensor algebra.
//!
//! [`Mat3`] is a general row-major matrix. [`SymTensor2`] and [`SkewTensor2`]
//! store only their independent entries, so symmetry and skewness cannot be
//! broken after construction.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orthogonality tolerance for `‖QQᵀ − I‖_max`.
pub const TAU_ORTH: f64 = 1e-9;
/// Symmetry/skewness tolerance applied when ingesting full matrices.
pub const TAU_SYM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const I: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const J: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const K: Vec3 = Vec3([0.0, 0.0, 1.0]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        Vec3(rhs.0.map(|x| self * x))
    }
}

/// General 3×3 real matrix, row-major.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub const fn new(rows: [[f64; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Self {
        Mat3([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = f(i, j);
            }
        }
        Mat3(m)
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: f64) -> Self {
        Mat3::from_fn(|i, j| s * self.0[i][j])
    }

    /// Maximum absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat3) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// `‖QQᵀ − I‖_max`.
    pub fn orthogonality_defect(&self) -> f64 {
        (*self * self.transpose()).max_abs_diff(&Mat3::IDENTITY)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonality_defect() <= TAU_ORTH
    }

    /// `Q A Qᵀ` without validating `Q`.
    pub fn conj(&self, a: &Mat3) -> Mat3 {
        *self * *a * self.transpose()
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3([0, 1, 2].map(|i| (0..3).map(|k| self.0[i][k] * v.0[k]).sum()))
    }

    pub fn symmetric_part(&self) -> Mat3 {
        Mat3::from_fn(|i, j| 0.5 * (self.0[i][j] + self.0[j][i]))
    }

    pub fn skew_part(&self) -> Mat3 {
        Mat3::from_fn(|i, j| 0.5 * (self.0[i][j] - self.0[j][i]))
    }

    /// Largest `|A_ij − A_ji|`.
    pub fn asymmetry(&self) -> f64 {
        (*self - self.transpose()).max_abs()
    }

    /// Largest `|A_ij + A_ji|` (diagonal included).
    pub fn non_skewness(&self) -> f64 {
        (*self + self.transpose()).max_abs()
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Mul<Mat3> for f64 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        rhs.scale(self)
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl AddAssign for Mat3 {
    fn add_assign(&mut self, rhs: Mat3) {
        *self = *self + rhs;
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale(-1.0)
    }
}

/// Symmetric 3×3 tensor stored as `[xx, yy, zz, xy, xz, yz]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymTensor2 {
    v: [f64; 6],
}

/// Voigt-style index pairs matching the storage order of [`SymTensor2`].
pub const SYM_INDEX: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

impl SymTensor2 {
    pub const ZERO: SymTensor2 = SymTensor2 { v: [0.0; 6] };
    pub const IDENTITY: SymTensor2 = SymTensor2 {
        v: [1.0, 1.0, 1.0, 0.0, 0.0, 0.0],
    };

    /// Components in the order `C11, C22, C33, C12, C13, C23`.
    pub const fn from_components(v: [f64; 6]) -> Self {
        SymTensor2 { v }
    }

    pub fn components(&self) -> [f64; 6] {
        self.v
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Self {
        SymTensor2 {
            v: [a, b, c, 0.0, 0.0, 0.0],
        }
    }

    /// Symmetric part of `m`, with no validation.
    pub fn from_mat_lossy(m: &Mat3) -> Self {
        let s = m.symmetric_part();
        SymTensor2 {
            v: SYM_INDEX.map(|(i, j)| s.0[i][j]),
        }
    }

    /// Validates `|A_ij − A_ji| ≤ tol·max(1, ‖A‖_max)` and finiteness, then symmetrizes.
    pub fn from_mat_checked(m: &Mat3, tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("tensor entry".into()));
        }
        let scale = m.max_abs().max(1.0);
        let asym = m.asymmetry();
        if asym > tol * scale {
            return Err(Error::NotSymmetric { defect: asym });
        }
        Ok(Self::from_mat_lossy(m))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        match (a, b) {
            (0, 0) => self.v[0],
            (1, 1) => self.v[1],
            (2, 2) => self.v[2],
            (0, 1) => self.v[3],
            (0, 2) => self.v[4],
            (1, 2) => self.v[5],
            _ => panic!("index ({i}, {j}) out of range"),
        }
    }

    pub fn to_mat(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.get(i, j))
    }

    pub fn trace(&self) -> f64 {
        self.v[0] + self.v[1] + self.v[2]
    }

    /// `Q A Qᵀ`, validating `Q`.
    pub fn conjugate(&self, q: &Mat3) -> Result<Self> {
        conjugate(q, &self.to_mat()).map(|m| Self::from_mat_lossy(&m))
    }

    /// `Q A Qᵀ` without validating `Q`.
    pub fn conj_unchecked(&self, q: &Mat3) -> Self {
        Self::from_mat_lossy(&q.conj(&self.to_mat()))
    }

    pub fn max_abs(&self) -> f64 {
        self.v.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &SymTensor2) -> f64 {
        self.v
            .iter()
            .zip(other.v.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Frobenius-isometric 6-vector (off-diagonals weighted by √2).
    pub fn to_mandel(&self) -> [f64; 6] {
        let r = std::f64::consts::SQRT_2;
        [
            self.v[0],
            self.v[1],
            self.v[2],
            r * self.v[3],
            r * self.v[4],
            r * self.v[5],
        ]
    }

    pub fn frobenius(&self) -> f64 {
        self.to_mandel().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.v.iter().all(|x| x.is_finite())
    }

    pub fn scale(&self, s: f64) -> Self {
        SymTensor2 {
            v: self.v.map(|x| s * x),
        }
    }
}

impl Add for SymTensor2 {
    type Output = SymTensor2;
    fn add(self, rhs: SymTensor2) -> SymTensor2 {
        let mut v = self.v;
        v.iter_mut().zip(rhs.v.iter()).for_each(|(a, b)| *a += b);
        SymTensor2 { v }
    }
}

impl Sub for SymTensor2 {
    type Output = SymTensor2;
    fn sub(self, rhs: SymTensor2) -> SymTensor2 {
        self + rhs.scale(-1.0)
    }
}

impl Mul<SymTensor2> for f64 {
    type Output = SymTensor2;
    fn mul(self, rhs: SymTensor2) -> SymTensor2 {
        rhs.scale(self)
    }
}

impl Serialize for SymTensor2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_mat().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymTensor2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Mat3::deserialize(d)?;
        SymTensor2::from_mat_checked(&m, TAU_SYM).map_err(serde::de::Error::custom)
    }
}

/// Skew 3×3 tensor stored as `[w12, w13, w23]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SkewTensor2 {
    w: [f64; 3],
}

impl SkewTensor2 {
    pub const ZERO: SkewTensor2 = SkewTensor2 { w: [0.0; 3] };

    pub const fn from_components(w12: f64, w13: f64, w23: f64) -> Self {
        SkewTensor2 { w: [w12, w13, w23] }
    }

    pub fn components(&self) -> [f64; 3] {
        self.w
    }

    pub fn from_mat_lossy(m: &Mat3) -> Self {
        let s = m.skew_part();
        SkewTensor2 {
            w: [s.0[0][1], s.0[0][2], s.0[1][2]],
        }
    }

    pub fn from_mat_checked(m: &Mat3, tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("tensor entry".into()));
        }
        let scale = m.max_abs().max(1.0);
        let defect = m.non_skewness();
        if defect > tol * scale {
            return Err(Error::NotSkew { defect });
        }
        Ok(Self::from_mat_lossy(m))
    }

    pub fn to_mat(&self) -> Mat3 {
        let [a, b, c] = self.w;
        Mat3([[0.0, a, b], [-a, 0.0, c], [-b, -c, 0.0]])
    }

    pub fn conj_unchecked(&self, q: &Mat3) -> Self {
        Self::from_mat_lossy(&q.conj(&self.to_mat()))
    }

    pub fn scale(&self, s: f64) -> Self {
        SkewTensor2 {
            w: self.w.map(|x| s * x),
        }
    }
}

impl Serialize for SkewTensor2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_mat().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewTensor2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Mat3::deserialize(d)?;
        SkewTensor2::from_mat_checked(&m, TAU_SYM).map_err(serde::de::Error::custom)
    }
}

/// `u ⊗ v`.
pub fn outer(u: &Vec3, v: &Vec3) -> Mat3 {
    Mat3::from_fn(|i, j| u.0[i] * v.0[j])
}

/// `v ⊗ v` as a symmetric tensor.
pub fn outer_sym(v: &Vec3) -> SymTensor2 {
    SymTensor2::from_mat_lossy(&outer(v, v))
}

/// `(ε v)_ij = ε_ijk v_k`.
pub fn eps_contract(v: &Vec3) -> SkewTensor2 {
    // ε_123 v_3 = v_3, ε_132 v_2 = −v_2, ε_231 v_1 = v_1
    SkewTensor2::from_components(v.0[2], -v.0[1], v.0[0])
}

/// `⟨Q⟩A = Q A Qᵀ`, rejecting non-orthogonal `Q`.
pub fn conjugate(q: &Mat3, a: &Mat3) -> Result<Mat3> {
    let defect = q.orthogonality_defect();
    if defect.is_nan() || defect > TAU_ORTH {
        return Err(Error::NotOrthogonal { defect });
    }
    Ok(q.conj(a))
}

/// Trace of the left-to-right product of `factors`.
pub fn trace_of_product(factors: &[Mat3]) -> Result<f64> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    Ok(rest.iter().fold(*first, |acc, m| acc * *m).trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn k_mats() -> [Mat3; 3] {
        [Vec3::I, Vec3::J, Vec3::K].map(|v| eps_contract(&v).to_mat())
    }

    #[test]
    fn eps_contract_reproduces_k_matrices() {
        let [k1, k2, k3] = k_mats();
        assert_eq!(k1.0, [[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]]);
        assert_eq!(k2.0, [[0.0, 0.0, -1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]);
        assert_eq!(k3.0, [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert_eq!(eps_contract(&Vec3::default()).to_mat(), Mat3::ZERO);
    }

    #[test]
    fn k_squares_sum_to_minus_two_identity() {
        let [k1, k2, k3] = k_mats();
        assert_eq!(k1 * k1 + k2 * k2 + k3 * k3, Mat3::IDENTITY.scale(-2.0));
    }

    #[test]
    fn outer_examples() {
        assert_eq!(outer(&Vec3::K, &Vec3::K), Mat3::diag(0.0, 0.0, 1.0));
        assert_eq!(
            outer(&Vec3::default(), &Vec3::new(1.0, 2.0, 3.0)),
            Mat3::ZERO
        );
        let h = 2f64.sqrt() / 2.0;
        let u = Vec3::new(h, h, 1.0);
        let m = outer(&u, &u);
        assert_abs_diff_eq!(m[(0, 0)], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 1)], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 2)], h, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(2, 2)], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn conjugate_examples() {
        let a = Mat3::new([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]);
        assert_eq!(conjugate(&Mat3::IDENTITY, &a).unwrap(), a);
        assert_eq!(conjugate(&Mat3::IDENTITY.scale(-1.0), &a).unwrap(), a);
        let c4 = Mat3::new([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let m1 = outer(&Vec3::I, &Vec3::I);
        let m2 = outer(&Vec3::J, &Vec3::J);
        assert_eq!(conjugate(&c4, &m1).unwrap(), m2);
        assert!(matches!(
            conjugate(&Mat3::diag(1.0, 1.0, 1.1), &a),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn trace_of_product_examples() {
        assert_eq!(trace_of_product(&[Mat3::IDENTITY]).unwrap(), 3.0);
        let k3 = eps_contract(&Vec3::K).to_mat();
        assert_eq!(trace_of_product(&[Mat3::IDENTITY, k3, k3]).unwrap(), -2.0);
        assert_eq!(trace_of_product(&[Mat3::diag(1.0, 2.0, 3.0)]).unwrap(), 6.0);
        assert!(trace_of_product(&[]).is_err());
    }

    #[test]
    fn sym_ingestion_validates_and_averages() {
        let mut m = Mat3::diag(1.0, 2.0, 3.0);
        m.0[0][1] = 0.5;
        m.0[1][0] = 0.5 + 1e-14;
        let s = SymTensor2::from_mat_checked(&m, TAU_SYM).unwrap();
        assert_abs_diff_eq!(s.get(1, 0), 0.5 + 5e-15, epsilon = 1e-16);
        m.0[1][0] = 0.5 + 1e-3;
        assert!(matches!(
            SymTensor2::from_mat_checked(&m, TAU_SYM),
            Err(Error::NotSymmetric { .. })
        ));
        m.0[1][0] = f64::NAN;
        assert!(matches!(
            SymTensor2::from_mat_checked(&m, TAU_SYM),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn tensor_json_is_row_major_nested_array() {
        let s = SymTensor2::from_components([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[[1.0,4.0,5.0],[4.0,2.0,6.0],[5.0,6.0,3.0]]");
        let back: SymTensor2 = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let w: SkewTensor2 = serde_json::from_str("[[0,1,0],[-1,0,0],[0,0,0]]").unwrap();
        assert_eq!(w, eps_contract(&Vec3::K));
        assert!(serde_json::from_str::<SkewTensor2>("[[1,1,0],[-1,0,0],[0,0,0]]").is_err());
    }
}
