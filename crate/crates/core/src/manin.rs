//! Manin triples of almost-factorizable bialgebras: the split double
//! `(g₀ ⊕ g₀, diag g₀, g₀^r)` for `t` real and the realification
//! `(g^ℝ, g₀, g₀^r)` for `t` imaginary, with the comparison maps `Ψ`, `Φ`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::involution::{fixed_point_basis, Involution};
use crate::linalg::{vec_scale, Matrix, Vector};
use crate::parameter::matrix_to_strings;
use crate::rmatrix::{BialgebraDatum, TClass};
use crate::rootsystem::RootSystem;
use crate::scalar::{format_scalar, from_rational, imag_unit, rat, GaussianRational, Rational};
use crate::tensor::Tensor2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManinCase {
    Factorizable,
    ImaginaryFactorizable,
}

/// A real Manin triple with rational data.
#[derive(Clone, Debug)]
pub struct ManinTriple {
    pub case: ManinCase,
    pub double_dim: usize,
    pub bracket: StructureConstants,
    pub pairing: Matrix,
    pub sub1_basis: Vec<Vector>,
    pub sub2_basis: Vec<Vector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManinReport {
    pub pairing_symmetric: bool,
    pub pairing_nondegenerate: bool,
    pub pairing_invariant: bool,
    pub sub1_isotropic: bool,
    pub sub2_isotropic: bool,
    pub sub1_subalgebra: bool,
    pub sub2_subalgebra: bool,
    pub half_dimensional: bool,
    pub transversal: bool,
}

impl ManinReport {
    pub fn all(&self) -> bool {
        self.pairing_symmetric
            && self.pairing_nondegenerate
            && self.pairing_invariant
            && self.sub1_isotropic
            && self.sub2_isotropic
            && self.sub1_subalgebra
            && self.sub2_subalgebra
            && self.half_dimensional
            && self.transversal
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ManinTripleJson {
    pub case: ManinCase,
    pub double_dim: usize,
    pub pairing: Vec<Vec<String>>,
    pub sub1_basis: Vec<Vec<String>>,
    pub sub2_basis: Vec<Vec<String>>,
    pub report: ManinReport,
}

fn form(p: &Matrix, u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
    let pv = p.mul_vec(v);
    u.iter().zip(&pv).map(|(a, b)| a * b).sum()
}

fn span_rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_columns(vectors).rank()
    }
}

impl ManinTriple {
    fn is_isotropic(&self, basis: &[Vector]) -> bool {
        basis.iter().all(|u| basis.iter().all(|v| form(&self.pairing, u, v).is_zero()))
    }

    fn is_subalgebra(&self, basis: &[Vector]) -> bool {
        let r = span_rank(basis);
        basis.iter().enumerate().all(|(i, u)| {
            basis[i + 1..].iter().all(|v| {
                let mut with = basis.to_vec();
                with.push(self.bracket.bracket(u, v));
                span_rank(&with) == r
            })
        })
    }

    pub fn verify(&self) -> ManinReport {
        let n = self.double_dim;
        let p = &self.pairing;
        let pairing_invariant = (0..n).all(|a| {
            let ad = self.bracket.ad(&crate::linalg::unit_vector(n, a));
            ad.transpose().mul(p).add(&p.mul(&ad)).is_zero()
        });
        let both: Vec<Vector> = self.sub1_basis.iter().chain(&self.sub2_basis).cloned().collect();
        ManinReport {
            pairing_symmetric: p.transpose() == *p,
            pairing_nondegenerate: !p.determinant().is_zero(),
            pairing_invariant,
            sub1_isotropic: self.is_isotropic(&self.sub1_basis),
            sub2_isotropic: self.is_isotropic(&self.sub2_basis),
            sub1_subalgebra: self.is_subalgebra(&self.sub1_basis),
            sub2_subalgebra: self.is_subalgebra(&self.sub2_basis),
            half_dimensional: n.is_multiple_of(2)
                && span_rank(&self.sub1_basis) == n / 2
                && span_rank(&self.sub2_basis) == n / 2,
            transversal: span_rank(&both) == n,
        }
    }

    pub fn to_json(&self) -> ManinTripleJson {
        let strings = |b: &[Vector]| b.iter().map(|v| v.iter().map(format_scalar).collect()).collect();
        ManinTripleJson {
            case: self.case,
            double_dim: self.double_dim,
            pairing: matrix_to_strings(&self.pairing),
            sub1_basis: strings(&self.sub1_basis),
            sub2_basis: strings(&self.sub2_basis),
            report: self.verify(),
        }
    }
}

/// `r₊`, `r₋` and `I = r₊ − r₋` as matrices `g* → g` in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationMaps {
    pub r_plus: Matrix,
    pub r_minus: Matrix,
    pub i: Matrix,
}

/// `r₊(μ) = (μ⊗id) r`, `r₋(μ) = −(id⊗μ) r`.
pub fn factorization_maps(rs: &RootSystem, r: &Tensor2) -> Result<FactorizationMaps> {
    if r.dim() != rs.dim() {
        return Err(Error::DimensionMismatch { expected: rs.dim(), found: r.dim() });
    }
    let m = r.to_matrix();
    let r_plus = m.transpose();
    let r_minus = m.scale(&-GaussianRational::one());
    let i = r_plus.sub(&r_minus);
    if i.determinant().is_zero() {
        return Err(Error::InvalidParameter("r + r²¹ is degenerate".into()));
    }
    Ok(FactorizationMaps { r_plus, r_minus, i })
}

/// Gram matrix of `( | ) = κ / t`, the form for which `r + r²¹` is the
/// inverse tensor.
pub fn bialgebra_form(rs: &RootSystem, t: &GaussianRational) -> Matrix {
    rs.killing_matrix().scale(&(GaussianRational::one() / t))
}

/// Coordinates `ρ` with `x = Σ ρ_{jk} v_j ⊗ v_k`.
fn tensor_coordinates(vectors: &[Vector], x: &Tensor2) -> Result<Matrix> {
    let v = Matrix::from_columns(vectors);
    let inv = v.inverse().ok_or(Error::Inconsistent)?;
    Ok(inv.mul(&x.to_matrix()).mul(&inv.transpose()))
}

fn combination(coeffs: &[GaussianRational], vectors: &[Vector]) -> Vector {
    let mut out = vec![GaussianRational::zero(); vectors[0].len()];
    for (c, v) in coeffs.iter().zip(vectors) {
        for (o, z) in out.iter_mut().zip(v) {
            *o += c * z;
        }
    }
    out
}

/// `z ↦ (Re z, Im z)`: coordinates in the real basis `e_a, e_a′ = i·e_a`.
pub fn realify(z: &[GaussianRational]) -> Vector {
    let re = z.iter().map(|c| from_rational(c.re.clone()));
    let im = z.iter().map(|c| from_rational(c.im.clone()));
    re.chain(im).collect()
}

fn real_form(m: &Matrix) -> Result<Matrix> {
    if m.is_real() {
        Ok(m.clone())
    } else {
        Err(Error::WrongBranch("real-valued on the real form".into()))
    }
}

/// `r₊(μ_i)` for the dual basis `μ_i` of the real form basis `v_i`.
fn r_plus_images(vectors: &[Vector], r: &Tensor2) -> Result<Vec<Vector>> {
    let rho = tensor_coordinates(vectors, r)?;
    Ok((0..vectors.len()).map(|i| combination(rho.row(i), vectors)).collect())
}

/// `(g₀ ⊕ g₀, diag g₀, {(r₊μ, r₋μ)})` with `⟨(x,u)|(y,v)⟩ = (x|y) − (u|v)`.
pub fn double_factorizable(rs: &RootSystem, datum: &BialgebraDatum) -> Result<ManinTriple> {
    if datum.t_class() != TClass::RealPositive {
        return Err(Error::WrongBranch("factorizable".into()));
    }
    let basis = fixed_point_basis(rs, &datum.sigma)?;
    let sc = basis.structure_constants().ok_or(Error::NotCanonical)?;
    let v = basis.vectors();
    let n = v.len();
    let f = bialgebra_form(rs, &datum.t);
    let gram = real_form(&Matrix::from_fn(n, n, |i, j| form(&f, &v[i], &v[j])))?;
    let mut table = vec![Vec::new(); 4 * n * n];
    for a in 0..n {
        for b in 0..n {
            let entry = sc.bracket_basis(a, b);
            table[a * 2 * n + b] = entry.to_vec();
            table[(a + n) * 2 * n + b + n] = entry.iter().map(|(k, c)| (k + n, c.clone())).collect();
        }
    }
    let mut pairing = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            pairing[(i, j)] = gram[(i, j)].clone();
            pairing[(i + n, j + n)] = -gram[(i, j)].clone();
        }
    }
    let rho = real_form(&tensor_coordinates(v, &datum.r)?)?;
    let one = GaussianRational::one();
    let sub1_basis = (0..n)
        .map(|i| {
            let mut e = vec![GaussianRational::zero(); 2 * n];
            e[i] = one.clone();
            e[i + n] = one.clone();
            e
        })
        .collect();
    let sub2_basis = (0..n)
        .map(|i| {
            let mut e = vec![GaussianRational::zero(); 2 * n];
            for k in 0..n {
                e[k] = rho[(i, k)].clone();
                e[k + n] = -rho[(k, i)].clone();
            }
            e
        })
        .collect();
    Ok(ManinTriple {
        case: ManinCase::Factorizable,
        double_dim: 2 * n,
        bracket: StructureConstants::new(2 * n, table)?,
        pairing,
        sub1_basis,
        sub2_basis,
    })
}

/// Structure constants of `g^ℝ` in the basis `e_a, e_a′`:
/// `[x, y′] = [x, y]′`, `[x′, y′] = −[x, y]`.
pub fn realification(rs: &RootSystem) -> Result<StructureConstants> {
    let sc = rs.structure_constants();
    let n = rs.dim();
    let mut table = vec![Vec::new(); 4 * n * n];
    for a in 0..n {
        for b in 0..n {
            let e = sc.bracket_basis(a, b);
            let shifted: Vec<(usize, Rational)> = e.iter().map(|(k, c)| (k + n, c.clone())).collect();
            table[a * 2 * n + b] = e.to_vec();
            table[a * 2 * n + b + n] = shifted.clone();
            table[(a + n) * 2 * n + b] = shifted;
            table[(a + n) * 2 * n + b + n] = e.iter().map(|(k, c)| (*k, -c.clone())).collect();
        }
    }
    StructureConstants::new(2 * n, table)
}

/// Gram matrix of `2Re( | )` on `g^ℝ`.
pub fn realified_pairing(rs: &RootSystem, t: &GaussianRational) -> Matrix {
    let f = bialgebra_form(rs, t);
    let n = rs.dim();
    let i = imag_unit();
    let two = from_rational(rat(2, 1));
    Matrix::from_fn(2 * n, 2 * n, |a, b| {
        let mut z = f[(a % n, b % n)].clone();
        if a >= n {
            z *= &i;
        }
        if b >= n {
            z *= &i;
        }
        from_rational(z.re) * &two
    })
}

/// `(g^ℝ, g₀, r₊(g₀*))` with the pairing `2Re( | )`.
pub fn double_imaginary(rs: &RootSystem, datum: &BialgebraDatum) -> Result<ManinTriple> {
    if datum.t_class() != TClass::ImaginaryPositive {
        return Err(Error::WrongBranch("imaginary factorizable".into()));
    }
    let basis = fixed_point_basis(rs, &datum.sigma)?;
    let v = basis.vectors();
    Ok(ManinTriple {
        case: ManinCase::ImaginaryFactorizable,
        double_dim: 2 * rs.dim(),
        bracket: realification(rs)?,
        pairing: realified_pairing(rs, &datum.t),
        sub1_basis: v.iter().map(|x| realify(x)).collect(),
        sub2_basis: r_plus_images(v, &datum.r)?.iter().map(|x| realify(x)).collect(),
    })
}

/// The Manin triple of either branch.
pub fn manin_triple(rs: &RootSystem, datum: &BialgebraDatum) -> Result<ManinTriple> {
    match datum.t_class() {
        TClass::RealPositive => double_factorizable(rs, datum),
        TClass::ImaginaryPositive => double_imaginary(rs, datum),
    }
}

/// `⟨δ(x), a⊗b⟩ = ⟨x, [a, b]⟩` for `x` in the first subalgebra and `a, b` in
/// the second, with `δ(x) = [x⊗1 + 1⊗x, r₀]`.
pub fn cobracket_matches(rs: &RootSystem, datum: &BialgebraDatum, triple: &ManinTriple) -> Result<bool> {
    let basis = fixed_point_basis(rs, &datum.sigma)?;
    let v = basis.vectors();
    let r0 = datum.r0.to_matrix();
    let p = &triple.pairing;
    let s1 = &triple.sub1_basis;
    let s2 = &triple.sub2_basis;
    let cross = Matrix::from_fn(s1.len(), s2.len(), |j, a| form(p, &s1[j], &s2[a]));
    for (i, x) in v.iter().enumerate() {
        let ad = rs.structure_constants().ad(x);
        let delta = Tensor2::from_matrix(&ad.mul(&r0).add(&r0.mul(&ad.transpose())));
        let coords = tensor_coordinates(v, &delta)?;
        let lhs = cross.transpose().mul(&coords).mul(&cross);
        for a in 0..s2.len() {
            for b in 0..s2.len() {
                let rhs = form(p, &s1[i], &triple.bracket.bracket(&s2[a], &s2[b]));
                if lhs[(a, b)] != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Ψ: g ⊕ g → (g^ℝ)^ℂ`, `Ψ(x, y) = ½(x + σy) + (i/2)(−x′ + (σy)′)`, and
/// its inverse `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiPhi {
    pub psi: Matrix,
    pub phi: Matrix,
}

pub fn psi_phi(rs: &RootSystem, sigma: &Involution) -> Result<PsiPhi> {
    let n = rs.dim();
    let half = from_rational(rat(1, 2));
    let ihalf = imag_unit() * &half;
    let mut cols = Vec::with_capacity(2 * n);
    for a in 0..n {
        let mut c = vec![GaussianRational::zero(); 2 * n];
        c[a] = half.clone();
        c[a + n] = -ihalf.clone();
        cols.push(c);
    }
    for b in 0..n {
        let z = sigma.linear_part().column(b);
        let zr = realify(&z);
        let zp = realify(&vec_scale(&z, &imag_unit()));
        cols.push(zr.iter().zip(&zp).map(|(u, w)| u * &half + w * &ihalf).collect());
    }
    let psi = Matrix::from_columns(&cols);
    let phi = psi.inverse().ok_or(Error::Inconsistent)?;
    Ok(PsiPhi { psi, phi })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PsiPhiReport {
    pub mutually_inverse: bool,
    pub lie_isomorphism: bool,
    /// `Ψ(diag g) = g₀ ⊕ i g₀`.
    pub diagonal_to_real_form: bool,
    /// `Ψ(g^r) = g₀^r ⊕ i g₀^r`.
    pub lr_to_real_lr: bool,
    /// `⟨Φu | Φw⟩ = 2Re(u | w)`.
    pub pairing_preserved: bool,
}

impl PsiPhiReport {
    pub fn all(&self) -> bool {
        self.mutually_inverse
            && self.lie_isomorphism
            && self.diagonal_to_real_form
            && self.lr_to_real_lr
            && self.pairing_preserved
    }
}

fn same_span(a: &[Vector], b: &[Vector]) -> bool {
    let ra = span_rank(a);
    ra == span_rank(b) && span_rank(&[a, b].concat()) == ra
}

/// Checks the claims relating `(g⊕g, diag g, g^r)` and `(g^ℝ, g₀, g₀^r)`
/// for an imaginary-factorizable datum.
pub fn verify_psi_phi(rs: &RootSystem, datum: &BialgebraDatum) -> Result<PsiPhiReport> {
    let pp = psi_phi(rs, &datum.sigma)?;
    let n = rs.dim();
    let id = Matrix::identity(2 * n);
    let mutually_inverse = pp.psi.mul(&pp.phi) == id && pp.phi.mul(&pp.psi) == id;

    let g = rs.structure_constants();
    let double_bracket = |u: &[GaussianRational], w: &[GaussianRational]| -> Vector {
        let mut x = g.bracket(&u[..n], &w[..n]);
        x.extend(g.bracket(&u[n..], &w[n..]));
        x
    };
    let real = realification(rs)?;
    let cols = pp.psi.columns();
    let lie_isomorphism = (0..2 * n).all(|a| {
        (a + 1..2 * n).all(|b| {
            let ea = crate::linalg::unit_vector(2 * n, a);
            let eb = crate::linalg::unit_vector(2 * n, b);
            pp.psi.mul_vec(&double_bracket(&ea, &eb)) == real.bracket(&cols[a], &cols[b])
        })
    });

    let basis = fixed_point_basis(rs, &datum.sigma)?;
    let v = basis.vectors();
    let diag: Vec<Vector> = v.iter().map(|x| pp.psi.mul_vec(&[x.clone(), x.clone()].concat())).collect();
    let real_v: Vec<Vector> = v.iter().map(|x| realify(x)).collect();
    let diagonal_to_real_form = same_span(&diag, &real_v);

    let maps = factorization_maps(rs, &datum.r)?;
    let lr: Vec<Vector> = (0..n)
        .map(|a| pp.psi.mul_vec(&[maps.r_plus.column(a), maps.r_minus.column(a)].concat()))
        .collect();
    let real_lr: Vec<Vector> = r_plus_images(v, &datum.r)?.iter().map(|x| realify(x)).collect();
    let lr_to_real_lr = same_span(&lr, &real_lr);

    let f = bialgebra_form(rs, &datum.t);
    let split = Matrix::block_diag(&f, &f.scale(&-GaussianRational::one()));
    let pairing_preserved = pp.phi.transpose().mul(&split).mul(&pp.phi) == realified_pairing(rs, &datum.t);
    Ok(PsiPhiReport { mutually_inverse, lie_isomorphism, diagonal_to_real_form, lr_to_real_lr, pairing_preserved })
}
