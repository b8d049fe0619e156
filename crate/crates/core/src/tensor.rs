//! Order-2 and order-3 tensors over an algebra basis, and the classical
//! Yang–Baxter expression.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, parse_scalar, GaussianRational};

/// `Σ x_{ab} e_a ⊗ e_b`, stored row-major at `a·dim + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl Tensor2 {
    pub fn zeros(dim: usize) -> Self {
        Tensor2 { dim, entries: vec![GaussianRational::zero(); dim * dim] }
    }

    pub fn from_entries(dim: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        Ok(Tensor2 { dim, entries })
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        assert!(m.is_square());
        Tensor2 { dim: m.rows(), entries: m.entries().to_vec() }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |a, b| self.get(a, b).clone())
    }

    /// `u ⊗ v`.
    pub fn outer(u: &[GaussianRational], v: &[GaussianRational]) -> Self {
        assert_eq!(u.len(), v.len());
        let dim = u.len();
        let mut t = Self::zeros(dim);
        for (a, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    t.entries[a * dim + b] = x * y;
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize) -> &GaussianRational {
        &self.entries[a * self.dim + b]
    }

    pub fn set(&mut self, a: usize, b: usize, z: GaussianRational) {
        self.entries[a * self.dim + b] = z;
    }

    pub fn add_to(&mut self, a: usize, b: usize, z: &GaussianRational) {
        self.entries[a * self.dim + b] += z;
    }

    /// Non-zero entries `(a, b, x_{ab})` in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        let dim = self.dim;
        self.entries.iter().enumerate().filter(|(_, z)| !z.is_zero()).map(move |(k, z)| (k / dim, k % dim, z))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn zip(&self, other: &Tensor2, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Self {
        assert_eq!(self.dim, other.dim, "tensor dimension mismatch");
        Tensor2 { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &Tensor2) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor2) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Tensor2 { dim: self.dim, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    /// `x²¹`, the flip of the two legs.
    pub fn flip(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for (a, b, z) in self.nonzeros() {
            t.set(b, a, z.clone());
        }
        t
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.add(&self.flip()).is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.flip()
    }

    /// Action of `x_c` on both legs: `[x_c ⊗ 1 + 1 ⊗ x_c, t]`.
    pub fn ad_basis(&self, alg: &StructureConstants, c: usize) -> Self {
        let mut out = Self::zeros(self.dim);
        for (a, b, z) in self.nonzeros() {
            for (k, s) in alg.bracket_basis(c, a) {
                out.add_to(*k, b, &(z * s));
            }
            for (k, s) in alg.bracket_basis(c, b) {
                out.add_to(a, *k, &(z * s));
            }
        }
        out
    }

    pub fn is_invariant(&self, alg: &StructureConstants) -> bool {
        (0..alg.dim()).all(|c| self.ad_basis(alg, c).is_zero())
    }

    /// Contraction `Σ x_{ab} [e_a, e_b]`.
    pub fn bracket_contraction(&self, alg: &StructureConstants) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.dim];
        for (a, b, z) in self.nonzeros() {
            for (k, s) in alg.bracket_basis(a, b) {
                out[*k] += z * s;
            }
        }
        out
    }
}

/// `x − x²¹`.
pub fn wedge(x: &Tensor2) -> Tensor2 {
    x.sub(&x.flip())
}

/// `(x − x²¹)/2`; idempotent.
pub fn antisymmetrize(x: &Tensor2) -> Tensor2 {
    let half = GaussianRational::new(crate::scalar::rat(1, 2), Zero::zero());
    wedge(x).scale(&half)
}

/// `(σ ⊗ σ)(x)` for the semilinear map `σ = linear ∘ conj`.
pub fn apply_semilinear_pair(linear: &Matrix, x: &Tensor2) -> Result<Tensor2> {
    if linear.rows() != x.dim() || linear.cols() != x.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: linear.rows() });
    }
    let m = linear.mul(&x.to_matrix().conj()).mul(&linear.transpose());
    Ok(Tensor2::from_matrix(&m))
}

/// `(φ ⊗ φ)(x)` for a linear map `φ`.
pub fn apply_linear_pair(linear: &Matrix, x: &Tensor2) -> Tensor2 {
    Tensor2::from_matrix(&linear.mul(&x.to_matrix()).mul(&linear.transpose()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 { dim, entries: vec![GaussianRational::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &GaussianRational {
        &self.entries[(a * self.dim + b) * self.dim + c]
    }

    pub fn add_to(&mut self, a: usize, b: usize, c: usize, z: &GaussianRational) {
        let d = self.dim;
        self.entries[(a * d + b) * d + c] += z;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Tensor3 { dim: self.dim, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    pub fn sub(&self, other: &Tensor3) -> Self {
        assert_eq!(self.dim, other.dim);
        Tensor3 { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }
}

pub type SparseTensor3 = HashMap<(usize, usize, usize), GaussianRational>;

fn accumulate(acc: &mut SparseTensor3, key: (usize, usize, usize), z: GaussianRational) {
    let e = acc.entry(key).or_insert_with(GaussianRational::zero);
    *e += z;
}

/// `[r¹², r¹³] + [r¹², r²³] + [r¹³, r²³]`, accumulated over the non-zero
/// entries of `r` only; zero entries are dropped from the result.
pub fn cybe_sparse(r: &Tensor2, alg: &StructureConstants) -> Result<SparseTensor3> {
    if r.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: r.dim() });
    }
    let nz: Vec<(usize, usize, &GaussianRational)> = r.nonzeros().collect();
    let mut acc = SparseTensor3::new();
    for &(a, b, x) in &nz {
        for &(c, d, y) in &nz {
            let xy = x * y;
            for (k, s) in alg.bracket_basis(a, c) {
                accumulate(&mut acc, (*k, b, d), &xy * s);
            }
            for (k, s) in alg.bracket_basis(b, c) {
                accumulate(&mut acc, (a, *k, d), &xy * s);
            }
            for (k, s) in alg.bracket_basis(b, d) {
                accumulate(&mut acc, (a, c, *k), &xy * s);
            }
        }
    }
    acc.retain(|_, z| !z.is_zero());
    Ok(acc)
}

/// Dense `CYB(r)`; intended for small algebras.
pub fn cybe(r: &Tensor2, alg: &StructureConstants) -> Result<Tensor3> {
    let sparse = cybe_sparse(r, alg)?;
    let mut t = Tensor3::zeros(alg.dim());
    for ((a, b, c), z) in sparse {
        t.add_to(a, b, c, &z);
    }
    Ok(t)
}

pub fn satisfies_cybe(r: &Tensor2, alg: &StructureConstants) -> Result<bool> {
    Ok(cybe_sparse(r, alg)?.is_empty())
}

/// `[t¹³, t²³]` for a tensor `t`, sparse.
pub fn bracket_13_23(t: &Tensor2, alg: &StructureConstants) -> SparseTensor3 {
    let nz: Vec<(usize, usize, &GaussianRational)> = t.nonzeros().collect();
    let mut acc = SparseTensor3::new();
    for &(a, b, x) in &nz {
        for &(c, d, y) in &nz {
            for (k, s) in alg.bracket_basis(b, d) {
                accumulate(&mut acc, (a, c, *k), x * y * s);
            }
        }
    }
    acc.retain(|_, z| !z.is_zero());
    acc
}

/// JSON form of a tensor: non-zero entries as `[a, b, "value"]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tensor2Json {
    pub dim: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&Tensor2> for Tensor2Json {
    fn from(t: &Tensor2) -> Self {
        Tensor2Json { dim: t.dim(), entries: t.nonzeros().map(|(a, b, z)| (a, b, format_scalar(z))).collect() }
    }
}

impl TryFrom<&Tensor2Json> for Tensor2 {
    type Error = Error;

    fn try_from(j: &Tensor2Json) -> Result<Self> {
        let mut t = Tensor2::zeros(j.dim);
        for (a, b, z) in &j.entries {
            if *a >= j.dim || *b >= j.dim {
                return Err(Error::Parse(format!("tensor index ({a}, {b}) out of range")));
            }
            t.add_to(*a, *b, &parse_scalar(z)?);
        }
        Ok(t)
    }
}
