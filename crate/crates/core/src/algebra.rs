//! Finite-dimensional Lie algebras given by rational structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{GaussianRational, Rational};

/// Sparse table of `[x_a, x_b] = Σ_k c^k_{ab} x_k`, stored at `a·dim + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    pub fn new(dim: usize, table: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: table.len() });
        }
        if table.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: dim + 1 });
        }
        let mut table = table;
        for row in &mut table {
            row.retain(|(_, c)| !c.is_zero());
            row.sort_by_key(|(k, _)| *k);
        }
        Ok(StructureConstants { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.table[a * self.dim + b]
    }

    pub fn bracket(&self, u: &[GaussianRational], v: &[GaussianRational]) -> Vector {
        let mut out = vec![GaussianRational::zero(); self.dim];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let uv = ua * vb;
                for (k, c) in self.bracket_basis(a, b) {
                    out[*k] += &uv * c;
                }
            }
        }
        out
    }

    /// `[x_a, v]` for a basis vector `x_a`.
    pub fn bracket_with_basis(&self, a: usize, v: &[GaussianRational]) -> Vector {
        let mut out = vec![GaussianRational::zero(); self.dim];
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            for (k, c) in self.bracket_basis(a, b) {
                out[*k] += vb * c;
            }
        }
        out
    }

    /// Matrix of `ad u`; column `b` holds `[u, x_b]`.
    pub fn ad(&self, u: &[GaussianRational]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for b in 0..self.dim {
                for (k, c) in self.bracket_basis(a, b) {
                    m[(*k, b)] += ua * c;
                }
            }
        }
        m
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|a| {
            (a..self.dim).all(|b| {
                let ab = self.bracket_basis(a, b);
                let ba = self.bracket_basis(b, a);
                ab.len() == ba.len() && ab.iter().zip(ba).all(|((k, x), (l, y))| k == l && *x == -y.clone())
            })
        })
    }

    fn bracket_sparse(&self, u: &[(usize, Rational)], b: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (a, ua) in u {
            for (k, c) in self.bracket_basis(*a, b) {
                out[*k] += ua * c;
            }
        }
        out
    }

    /// Exhaustive Jacobi check over basis triples `a < b < c`.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let t1 = self.bracket_sparse(self.bracket_basis(a, b), c);
                    let t2 = self.bracket_sparse(self.bracket_basis(b, c), a);
                    let t3 = self.bracket_sparse(self.bracket_basis(c, a), b);
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `tr(ad x_a ∘ ad x_b)`, accumulated without forming matrices.
    pub fn trace_form_basis(&self, a: usize, b: usize) -> Rational {
        let mut tr = Rational::zero();
        for k in 0..self.dim {
            for (m, c1) in self.bracket_basis(b, k) {
                for (l, c2) in self.bracket_basis(a, *m) {
                    if *l == k {
                        tr += c1 * c2;
                    }
                }
            }
        }
        tr
    }
}
