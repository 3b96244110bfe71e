use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;

use super::{Float, Scalar, Tolerances};
use crate::error::{Error, Result, Singularity};

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        CMatrix { n, data }
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(CMatrix { n, data })
    }

    pub fn diag(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Direct sum of square blocks.
    pub fn block_diag(blocks: &[CMatrix<S>]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m[(offset + i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.n;
        }
        m
    }

    /// Upper-triangular Toeplitz matrix with `diagonals[j]` on the j-th superdiagonal.
    pub fn upper_toeplitz(n: usize, diagonals: &[S]) -> Self {
        Self::from_fn(n, |i, j| {
            if j >= i && j - i < diagonals.len() {
                diagonals[j - i].clone()
            } else {
                S::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CMatrix<T> {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> CMatrix<Float> {
        self.map(|s| s.to_c64())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s)
    }

    /// `self - lambda * e`
    pub fn shifted(&self, lambda: &S) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] = m[(i, i)].clone() - lambda;
        }
        m
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_c64().norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius norm of `self - other`, computed in double precision.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Singular values in double precision (descending).
    pub fn singular_values(&self) -> Vec<f64> {
        if self.n == 0 {
            return Vec::new();
        }
        let m = DMatrix::from_fn(self.n, self.n, |i, j| self[(i, j)].to_c64());
        let mut sv: Vec<f64> = m.singular_values().iter().cloned().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    pub fn rank_with(&self, tol: &Tolerances) -> usize {
        S::rank(self, tol, 0.0)
    }

    /// Float rank measured against `max(sigma_max, scale)` instead of
    /// `sigma_max` alone. Use this for shifted matrices `a - lambda e`, whose
    /// own norm says nothing about the scale of `a`.
    pub fn rank_scaled(&self, tol: &Tolerances, scale: f64) -> usize {
        S::rank(self, tol, scale)
    }

    pub fn kernel_dim_scaled(&self, tol: &Tolerances, scale: f64) -> usize {
        self.n - self.rank_scaled(tol, scale)
    }

    pub fn rank(&self) -> usize {
        self.rank_with(&Tolerances::default())
    }

    /// Dimension of the kernel: exact elimination for the exact backend,
    /// singular-value thresholding for floats.
    pub fn kernel_dim_with(&self, tol: &Tolerances) -> usize {
        self.n - self.rank_with(tol)
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim_with(&Tolerances::default())
    }

    fn pivot_row(m: &Self, col: usize, from: usize) -> Option<usize> {
        if S::EXACT {
            (from..m.n).find(|&r| !m[(r, col)].is_zero())
        } else {
            (from..m.n)
                .map(|r| (r, m[(r, col)].magnitude()))
                .filter(|(_, mag)| *mag > 0.0)
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(r, _)| r)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.n {
            self.data.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// Upper Hessenberg form by stabilized elementary similarities.
    pub fn hessenberg(&self) -> Self {
        let n = self.n;
        let mut h = self.clone();
        for k in 0..n.saturating_sub(2) {
            let Some(p) = Self::pivot_row(&h, k, k + 1) else {
                continue;
            };
            h.swap_rows(p, k + 1);
            h.swap_cols(p, k + 1);
            let pivot = h[(k + 1, k)].clone();
            for i in k + 2..n {
                if h[(i, k)].is_zero() {
                    continue;
                }
                let m = h[(i, k)].clone() / &pivot;
                for j in k..n {
                    let v = h[(k + 1, j)].clone() * &m;
                    h[(i, j)] = h[(i, j)].clone() - v;
                }
                for r in 0..n {
                    let v = h[(r, i)].clone() * &m;
                    h[(r, k + 1)] = h[(r, k + 1)].clone() + v;
                }
            }
        }
        h
    }

    /// Coefficients of `det(z e - self)`, lowest degree first (monic).
    pub fn characteristic_polynomial(&self) -> Vec<S> {
        let h = self.hessenberg();
        let n = self.n;
        // polys[k] = char poly of the leading k x k block
        let mut polys: Vec<Vec<S>> = vec![vec![S::one()]];
        for k in 1..=n {
            let prev = &polys[k - 1];
            let mut next = vec![S::zero(); k + 1];
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] = next[d + 1].clone() + c;
                next[d] = next[d].clone() - h[(k - 1, k - 1)].clone() * c;
            }
            let mut sub = S::one();
            for i in (1..k).rev() {
                sub = sub * &h[(i, i - 1)];
                if sub.is_zero() {
                    break;
                }
                let coef = h[(i - 1, k - 1)].clone() * &sub;
                if coef.is_zero() {
                    continue;
                }
                for (d, c) in polys[i - 1].iter().enumerate() {
                    next[d] = next[d].clone() - coef.clone() * c;
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap_or_else(|| vec![S::one()])
    }

    /// Row-echelon rank by elimination. Exact for the exact backend; for
    /// floats only meaningful as a structural count.
    pub(crate) fn elimination_rank(&self) -> usize {
        let mut m = self.clone();
        let n = self.n;
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = Self::pivot_row(&m, col, rank) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m[(rank, col)].clone();
            for r in rank + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / &pivot;
                for c in col..n {
                    let v = m[(rank, c)].clone() * &factor;
                    m[(r, c)] = m[(r, c)].clone() - v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse with partial pivoting. Only reports exactly zero
    /// pivots; callers that need a conditioning check use [`CMatrix::inverse`].
    pub fn lu_inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = Self::pivot_row(&m, col, col)
                .ok_or(Error::SingularMatrix(Singularity::Pivot { column: col }))?;
            m.swap_rows(col, p);
            inv.swap_rows(col, p);
            let pivot_inv = S::one() / &m[(col, col)];
            for j in 0..n {
                m[(col, j)] = m[(col, j)].clone() * &pivot_inv;
                inv[(col, j)] = inv[(col, j)].clone() * &pivot_inv;
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in 0..n {
                    let a = m[(col, j)].clone() * &factor;
                    m[(r, j)] = m[(r, j)].clone() - a;
                    let b = inv[(col, j)].clone() * &factor;
                    inv[(r, j)] = inv[(r, j)].clone() - b;
                }
            }
        }
        Ok(inv)
    }

    /// Inverse with a singularity check: exact pivots for the exact backend,
    /// `sigma_min > eps_rank * sigma_max` for floats.
    pub fn inverse_with(&self, tol: &Tolerances) -> Result<Self> {
        if !S::EXACT {
            let sv = self.singular_values();
            let (max, min) = (
                sv.first().copied().unwrap_or(0.0),
                sv.last().copied().unwrap_or(0.0),
            );
            // negated so that a NaN singular value also counts as singular
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(min > tol.rank * max) {
                return Err(Error::SingularMatrix(Singularity::SingularValue {
                    sigma_min: min,
                    sigma_max: max,
                }));
            }
        }
        self.lu_inverse()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with(&Tolerances::default())
    }

    /// `p * self * p^{-1}`
    pub fn conjugate_by(&self, p: &Self) -> Result<Self> {
        let p_inv = p.inverse()?;
        p.checked_mul(self)?.checked_mul(&p_inv)
    }
}

impl<S> Index<(usize, usize)> for CMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for CMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}

impl<S: Scalar> Mul for &CMatrix<S> {
    type Output = CMatrix<S>;

    fn mul(self, rhs: &CMatrix<S>) -> CMatrix<S> {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl<S: Scalar> Add for &CMatrix<S> {
    type Output = CMatrix<S>;

    fn add(self, rhs: &CMatrix<S>) -> CMatrix<S> {
        self.checked_add(rhs)
            .expect("matrix sum dimension mismatch")
    }
}

impl<S: Scalar> Sub for &CMatrix<S> {
    type Output = CMatrix<S>;

    fn sub(self, rhs: &CMatrix<S>) -> CMatrix<S> {
        self.checked_sub(rhs)
            .expect("matrix difference dimension mismatch")
    }
}

impl<S: Scalar> fmt::Display for CMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A left module over the matrix algebra: things a matrix can act on.
pub trait LeftModule<S: Scalar>: Clone {
    fn act(a: &CMatrix<S>, m: &Self) -> Result<Self>;

    fn scaled(&self, s: &S) -> Self;

    fn plus(&self, other: &Self) -> Self;

    fn zero_like(&self) -> Self;
}

impl<S: Scalar> LeftModule<S> for CMatrix<S> {
    fn act(a: &CMatrix<S>, m: &Self) -> Result<Self> {
        a.checked_mul(m)
    }

    fn scaled(&self, s: &S) -> Self {
        self.scale(s)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn zero_like(&self) -> Self {
        CMatrix::zeros(self.n)
    }
}

impl<S: Scalar> LeftModule<S> for Vec<S> {
    fn act(a: &CMatrix<S>, m: &Self) -> Result<Self> {
        a.mul_vec(m)
    }

    fn scaled(&self, s: &S) -> Self {
        self.iter().map(|x| x.clone() * s).collect()
    }

    fn plus(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a.clone() + b).collect()
    }

    fn zero_like(&self) -> Self {
        vec![S::zero(); self.len()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Exact;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn ex(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    fn nilpotent(n: usize) -> CMatrix<Exact> {
        CMatrix::from_fn(n, |i, j| if j == i + 1 { ex(1) } else { ex(0) })
    }

    fn small_exact(entries: &[i64], n: usize) -> CMatrix<Exact> {
        CMatrix::from_fn(n, |i, j| {
            Exact::from_ratio(entries[i * n + j], 1 + (i + j) as i64 % 3)
        })
    }

    #[test]
    fn identity_is_neutral() {
        let a = small_exact(&[1, -2, 3, 0, 5, 7, -1, 2, 4], 3);
        assert_eq!(&CMatrix::identity(3) * &a, a);
        assert_eq!(&a * &CMatrix::identity(3), a);
    }

    #[test]
    fn nilpotent_of_index_two() {
        let n = nilpotent(2);
        assert!((&n * &n).is_zero_matrix());
    }

    #[test]
    fn associativity_on_fixed_matrices() {
        // expanded by hand entrywise in the exact field
        let a = small_exact(&[1, 2, 0, -1, 3, 1, 2, 0, 1], 3);
        let b = small_exact(&[0, 1, 1, 2, -2, 0, 1, 1, 3], 3);
        let c = small_exact(&[4, 0, -1, 1, 1, 1, 0, 2, 5], 3);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mismatched_dims_error() {
        let a = CMatrix::<Exact>::identity(2);
        let b = CMatrix::<Exact>::identity(3);
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
        assert!(CMatrix::from_rows(vec![vec![ex(1), ex(2)], vec![ex(3)]]).is_err());
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(
            CMatrix::<Exact>::identity(3).inverse().unwrap(),
            CMatrix::identity(3)
        );
        let d = CMatrix::diag(&[ex(2), ex(4)]);
        assert_eq!(
            d.inverse().unwrap(),
            CMatrix::diag(&[Exact::from_ratio(1, 2), Exact::from_ratio(1, 4)])
        );
        // (I - N)^{-1} = I + N + N^2 for N = J_3(0)
        let n = nilpotent(3);
        let i = CMatrix::identity(3);
        let expected = &(&i + &n) + &(&n * &n);
        let inv = (&i - &n).inverse().unwrap();
        assert_eq!(inv, expected);
        assert_eq!(&inv * &(&i - &n), i);
    }

    #[test]
    fn singular_inverse_reports_pivot() {
        let err = nilpotent(3).inverse().unwrap_err();
        assert!(matches!(
            err,
            Error::SingularMatrix(Singularity::Pivot { column: 0 })
        ));
        let f = nilpotent(3).to_float();
        assert!(matches!(
            f.inverse().unwrap_err(),
            Error::SingularMatrix(Singularity::SingularValue { .. })
        ));
    }

    #[test]
    fn kernel_dims() {
        assert_eq!(CMatrix::<Exact>::zeros(4).kernel_dim(), 4);
        assert_eq!(nilpotent(3).kernel_dim(), 1);
        let n2 = nilpotent(3).pow(2);
        assert_eq!(n2.rank(), 1);
        assert_eq!(n2.kernel_dim(), 2);
        assert_eq!(n2.to_float().kernel_dim(), 2);
        assert_eq!(CMatrix::<Float>::zeros(3).kernel_dim(), 3);
    }

    #[test]
    fn float_inverse_is_accurate() {
        let a = CMatrix::from_fn(4, |i, j| {
            Float::new(
                ((i * 7 + j * 3) % 5) as f64 * 0.1 + if i == j { 2.0 } else { 0.0 },
                (i as f64 - j as f64) * 0.05,
            )
        });
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).frobenius_distance(&CMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn module_actions() {
        let n = nilpotent(3);
        let e3 = vec![ex(0), ex(0), ex(1)];
        assert_eq!(
            <Vec<Exact> as LeftModule<Exact>>::act(&n, &e3).unwrap(),
            vec![ex(0), ex(1), ex(0)]
        );
    }

    #[test]
    fn characteristic_polynomial_of_conjugated_jordan_matrix() {
        // J_2(1/2) + J_1(-1) conjugated by an integer unimodular P:
        // det(z - a) = (z - 1/2)^2 (z + 1) = z^3 - 3/4 z + 1/4
        let half = Exact::from_ratio(1, 2);
        let j = CMatrix::from_rows(vec![
            vec![half.clone(), ex(1), ex(0)],
            vec![ex(0), half, ex(0)],
            vec![ex(0), ex(0), ex(-1)],
        ])
        .unwrap();
        let p = CMatrix::from_rows(vec![
            vec![ex(1), ex(2), ex(0)],
            vec![ex(0), ex(1), ex(3)],
            vec![ex(1), ex(0), ex(1)],
        ])
        .unwrap();
        let a = j.conjugate_by(&p).unwrap();
        assert_eq!(
            a.characteristic_polynomial(),
            vec![
                Exact::from_ratio(1, 4),
                Exact::from_ratio(-3, 4),
                ex(0),
                ex(1)
            ]
        );
        let f = a.to_float().characteristic_polynomial();
        let want = [0.25, -0.75, 0.0, 1.0];
        for (c, w) in f.iter().zip(want) {
            assert!((c - Float::new(w, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn hessenberg_keeps_zero_pattern() {
        let a = CMatrix::from_fn(5, |i, j| {
            Exact::from_ratio((i * 3 + j * 5) as i64 % 7 - 3, 1 + j as i64)
        });
        let h = a.hessenberg();
        for i in 0..5 {
            for j in 0..5 {
                if i > j + 1 {
                    assert!(h[(i, j)].is_zero());
                }
            }
        }
        assert_eq!(h.characteristic_polynomial(), a.characteristic_polynomial());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-2i64..3, 16)) {
            let a = CMatrix::from_fn(4, |i, j| ex(entries[i * 4 + j]));
            prop_assert_eq!(a.kernel_dim() + a.rank(), 4);
            prop_assert_eq!(a.rank(), a.to_float().rank());
        }

        #[test]
        fn exact_inverse_roundtrip(entries in proptest::collection::vec(-3i64..4, 9)) {
            let a = CMatrix::from_fn(3, |i, j| Exact::from_ratio(entries[i * 3 + j], 1 + i as i64));
            if a.rank() == 3 {
                let inv = a.inverse().unwrap();
                prop_assert_eq!(&inv * &a, CMatrix::identity(3));
            } else {
                prop_assert!(a.inverse().is_err());
            }
        }
    }
}
