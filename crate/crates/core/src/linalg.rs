//! Dense exact linear algebra over ℚ(i).
//!
//! Matrices in this crate are mostly sparse (monomial involutions, block
//! Casimirs), so products and elimination skip zero entries.

use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::scalar::{from_rational, GaussianRational, Rational};

pub type Vector = Vec<GaussianRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn from_rational(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        Self::from_fn(rows, cols, |i, j| from_rational(f(i, j)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "incompatible product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vector {
        assert_eq!(self.cols, v.len());
        let mut out = vec![GaussianRational::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<(usize, GaussianRational)> = (c..m.cols)
                .filter(|&j| !m[(r, j)].is_zero())
                .map(|j| (j, m[(r, j)].clone()))
                .collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, v) in &pivot_row {
                    m[(i, *j)] -= &f * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[f] = GaussianRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// A solution of `self · x = b` with free variables set to zero.
    pub fn solve(&self, b: &[GaussianRational]) -> Option<Vector> {
        assert_eq!(self.rows, b.len());
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| m[(i, n + j)].clone()))
    }

    pub fn determinant(&self) -> GaussianRational {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = GaussianRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.inv();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= d;
                    }
                }
            }
        }
        det
    }

    /// Kronecker-style direct sum.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        Self::from_fn(a.rows + b.rows, a.cols + b.cols, |i, j| {
            if i < a.rows && j < a.cols {
                a[(i, j)].clone()
            } else if i >= a.rows && j >= a.cols {
                b[(i - a.rows, j - a.cols)].clone()
            } else {
                GaussianRational::zero()
            }
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;

    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

pub fn vec_add(a: &[GaussianRational], b: &[GaussianRational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[GaussianRational], b: &[GaussianRational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[GaussianRational], s: &GaussianRational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_conj(a: &[GaussianRational]) -> Vector {
    a.iter().map(|x| x.conj()).collect()
}

pub fn vec_is_zero(a: &[GaussianRational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = vec![GaussianRational::zero(); n];
    v[k] = GaussianRational::one();
    v
}

/// Rank over ℝ of complex vectors, via their `(Re, Im)` realification.
pub fn real_rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|z| from_rational(z.re.clone()))
                .chain(v.iter().map(|z| from_rational(z.im.clone())))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

/// Picks an ℝ-linearly independent subset, keeping the first occurrences.
pub fn real_independent_subset(vectors: &[Vector]) -> Vec<Vector> {
    let mut chosen: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if real_rank(&trial) == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

/// Positive definiteness of a real symmetric rational matrix, by exact
/// symmetric elimination: every pivot must be strictly positive.
pub fn is_positive_definite(m: &Matrix) -> bool {
    if !m.is_square() || !m.is_real() || *m != m.transpose() {
        return false;
    }
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re.clone()).collect()).collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                if !a[k][j].is_zero() {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    true
}
