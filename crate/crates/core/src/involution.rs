//! Sesquilinear Lie algebra involutions `σ = L ∘ conj` of `g`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;
use crate::bdtriple::{diagram_automorphisms, DiagramAutomorphism};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, vec_conj, vec_is_zero, Matrix, Vector};
use crate::rootsystem::RootSystem;
use crate::scalar::{
    format_scalar, from_int, from_rational, gq, imag_unit, sum_of_two_rational_squares, GaussianRational, Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CanonicalKind {
    Varsigma,
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionKind {
    Varsigma { mu: DiagramAutomorphism },
    Omega { mu: DiagramAutomorphism, j: BTreeSet<usize> },
    General,
}

/// The five lines of the classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableRow {
    /// `ς`: split form, all BD triples, `t ∈ ℝ`.
    Split,
    /// `ς_μ`, `μ ≠ id`: μ-stable triples, `t ∈ ℝ`.
    VarsigmaMu,
    /// `ω`: compact form, empty triple, `t ∈ iℝ`.
    Compact,
    /// `ω_J`, `J ≠ Δ`: empty triple, `t ∈ iℝ`.
    OmegaJ,
    /// `ω_{μ,J}`, `μ ≠ id`: μ-antistable triples, `t ∈ iℝ`.
    OmegaMuJ,
}

impl TableRow {
    pub fn number(self) -> usize {
        match self {
            TableRow::Split => 1,
            TableRow::VarsigmaMu => 2,
            TableRow::Compact => 3,
            TableRow::OmegaJ => 4,
            TableRow::OmegaMuJ => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TableRow::Split => "varsigma",
            TableRow::VarsigmaMu => "varsigma-mu",
            TableRow::Compact => "omega",
            TableRow::OmegaJ => "omega-J",
            TableRow::OmegaMuJ => "omega-mu-J",
        }
    }

    /// Whether `t` is real (`ς` kinds) or imaginary (`ω` kinds).
    pub fn t_is_real(self) -> bool {
        matches!(self, TableRow::Split | TableRow::VarsigmaMu)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    linear: Matrix,
    kind: InvolutionKind,
}

impl Involution {
    /// An arbitrary semilinear map; the involution and automorphism axioms
    /// can be checked with [`Self::squares_to_identity`] and
    /// [`Self::is_automorphism`].
    pub fn general(linear: Matrix) -> Self {
        assert!(linear.is_square());
        Involution { linear, kind: InvolutionKind::General }
    }

    pub fn linear_part(&self) -> &Matrix {
        &self.linear
    }

    pub fn kind(&self) -> &InvolutionKind {
        &self.kind
    }

    pub fn is_canonical(&self) -> bool {
        !matches!(self.kind, InvolutionKind::General)
    }

    pub fn mu(&self) -> Option<&DiagramAutomorphism> {
        match &self.kind {
            InvolutionKind::Varsigma { mu } | InvolutionKind::Omega { mu, .. } => Some(mu),
            InvolutionKind::General => None,
        }
    }

    pub fn j(&self) -> Option<&BTreeSet<usize>> {
        match &self.kind {
            InvolutionKind::Omega { j, .. } => Some(j),
            _ => None,
        }
    }

    pub fn canonical_kind(&self) -> Option<CanonicalKind> {
        match &self.kind {
            InvolutionKind::Varsigma { .. } => Some(CanonicalKind::Varsigma),
            InvolutionKind::Omega { .. } => Some(CanonicalKind::Omega),
            InvolutionKind::General => None,
        }
    }

    pub fn table_row(&self) -> Option<TableRow> {
        match &self.kind {
            InvolutionKind::Varsigma { mu } if mu.is_identity() => Some(TableRow::Split),
            InvolutionKind::Varsigma { .. } => Some(TableRow::VarsigmaMu),
            InvolutionKind::Omega { mu, j } if mu.is_identity() => {
                Some(if j.len() == mu.rank() { TableRow::Compact } else { TableRow::OmegaJ })
            }
            InvolutionKind::Omega { .. } => Some(TableRow::OmegaMuJ),
            InvolutionKind::General => None,
        }
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vector {
        self.linear.mul_vec(&vec_conj(v))
    }

    /// Linear part of `self ∘ other`; the composite of two semilinear maps
    /// is linear.
    pub fn compose(&self, other: &Involution) -> Matrix {
        self.linear.mul(&other.linear.conj())
    }

    pub fn squares_to_identity(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// `σ[x_a, x_b] = [σx_a, σx_b]` on all basis pairs.
    pub fn is_automorphism(&self, alg: &StructureConstants) -> bool {
        let n = alg.dim();
        let images: Vec<Vector> = (0..n).map(|a| self.linear.column(a)).collect();
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                let lhs = self.apply(&bracket_basis_vector(alg, a, b));
                lhs == alg.bracket(&images[a], &images[b])
            })
        })
    }

    pub fn to_json(&self) -> Option<InvolutionJson> {
        let (kind, mu, j) = match &self.kind {
            InvolutionKind::Varsigma { mu } => (CanonicalKind::Varsigma, mu, Vec::new()),
            InvolutionKind::Omega { mu, j } => (CanonicalKind::Omega, mu, j.iter().copied().collect()),
            InvolutionKind::General => return None,
        };
        Some(InvolutionJson { kind, mu: mu.permutation().to_vec(), j })
    }

    pub fn from_json(json: &InvolutionJson, rs: &RootSystem) -> Result<Self> {
        let mu = DiagramAutomorphism::new(json.mu.clone(), rs.cartan_matrix())?;
        canonical_involution(rs, json.kind, &mu, &json.j.iter().copied().collect())
    }
}

/// `{"kind": "varsigma"|"omega", "mu": permutation, "J": [...]}`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionJson {
    pub kind: CanonicalKind,
    pub mu: Vec<usize>,
    #[serde(rename = "J", default)]
    pub j: Vec<usize>,
}

fn bracket_basis_vector(alg: &StructureConstants, a: usize, b: usize) -> Vector {
    let mut v = vec![GaussianRational::zero(); alg.dim()];
    for (k, c) in alg.bracket_basis(a, b) {
        v[*k] = from_rational(c.clone());
    }
    v
}

/// Fills in `σ(x_β)` for every root from the images of the simple root
/// vectors `x_{±α_i}`, using `x_ξ = [x_j, x_γ]/c` for extraspecial pairs.
fn extend_from_generators(rs: &RootSystem, cartan_images: Vec<Vector>, pos: Vec<Vector>, neg: Vec<Vector>) -> Matrix {
    let n = rs.rank();
    let np = rs.num_positive();
    let dim = rs.dim();
    let alg = rs.structure_constants();
    let mut cols: Vec<Option<Vector>> = vec![None; dim];
    for (i, v) in cartan_images.into_iter().enumerate() {
        cols[i] = Some(v);
    }
    for (i, (p, m)) in pos.into_iter().zip(neg).enumerate() {
        cols[rs.root_basis(i)] = Some(p);
        cols[rs.root_basis(rs.negative(i))] = Some(m);
    }
    for xi in n..np {
        let (j, gamma) = rs.extraspecial(xi).expect("non-simple root");
        for sign in [false, true] {
            let (jj, gg, target) = if sign {
                (rs.negative(j), rs.negative(gamma), rs.negative(xi))
            } else {
                (j, gamma, xi)
            };
            let (bj, bg, bt) = (rs.root_basis(jj), rs.root_basis(gg), rs.root_basis(target));
            let c = alg
                .bracket_basis(bj, bg)
                .iter()
                .find(|(k, _)| *k == bt)
                .map(|(_, c)| c.clone())
                .expect("extraspecial bracket is nonzero");
            let img = alg.bracket(cols[bj].as_ref().unwrap(), cols[bg].as_ref().unwrap());
            let inv = from_rational(Rational::one() / c);
            cols[bt] = Some(img.into_iter().map(|z| z * &inv).collect());
        }
    }
    let cols: Vec<Vector> = cols.into_iter().map(Option::unwrap).collect();
    Matrix::from_columns(&cols)
}

/// `ς_μ` or `ω_{μ,J}` as defined on the simple root vectors and extended
/// through brackets.
pub fn canonical_involution(
    rs: &RootSystem,
    kind: CanonicalKind,
    mu: &DiagramAutomorphism,
    j: &BTreeSet<usize>,
) -> Result<Involution> {
    let n = rs.rank();
    let dim = rs.dim();
    if mu.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: mu.rank() });
    }
    DiagramAutomorphism::new(mu.permutation().to_vec(), rs.cartan_matrix())?;
    if j.iter().any(|&a| a >= n || mu.apply(a) != a) {
        return Err(Error::JNotFixed);
    }
    if kind == CanonicalKind::Varsigma && !j.is_empty() {
        return Err(Error::JNotFixed);
    }
    let e = |k: usize| unit_vector(dim, rs.root_basis(k));
    let (cartan, pos, neg) = match kind {
        CanonicalKind::Varsigma => (
            (0..n).map(|i| unit_vector(dim, mu.apply(i))).collect::<Vec<_>>(),
            (0..n).map(|i| e(mu.apply(i))).collect::<Vec<_>>(),
            (0..n).map(|i| e(rs.negative(mu.apply(i)))).collect::<Vec<_>>(),
        ),
        CanonicalKind::Omega => {
            let sign = |i: usize| from_int(if j.contains(&i) { -1 } else { 1 });
            (
                (0..n).map(|i| unit_vector(dim, mu.apply(i)).into_iter().map(|z| -z).collect()).collect(),
                (0..n).map(|i| e(rs.negative(mu.apply(i))).into_iter().map(|z| z * sign(i)).collect()).collect(),
                (0..n).map(|i| e(mu.apply(i)).into_iter().map(|z| z * sign(i)).collect()).collect(),
            )
        }
    };
    let linear = extend_from_generators(rs, cartan, pos, neg);
    let kind = match kind {
        CanonicalKind::Varsigma => InvolutionKind::Varsigma { mu: mu.clone() },
        CanonicalKind::Omega => InvolutionKind::Omega { mu: mu.clone(), j: j.clone() },
    };
    Ok(Involution { linear, kind })
}

/// Convenience constructors for the abbreviations `ς`, `ω`, `ω_J`.
pub fn varsigma(rs: &RootSystem) -> Involution {
    canonical_involution(rs, CanonicalKind::Varsigma, &DiagramAutomorphism::identity(rs.rank()), &BTreeSet::new())
        .expect("identity is valid")
}

pub fn omega(rs: &RootSystem) -> Involution {
    omega_j(rs, &(0..rs.rank()).collect()).expect("Δ is μ-fixed")
}

pub fn omega_j(rs: &RootSystem, j: &BTreeSet<usize>) -> Result<Involution> {
    canonical_involution(rs, CanonicalKind::Omega, &DiagramAutomorphism::identity(rs.rank()), j)
}

/// Every canonical involution of the type: for each order-≤2 diagram
/// automorphism `μ`, `ς_μ` and `ω_{μ,J}` for all `J ⊆ Δ^μ`.
pub fn enumerate_canonical(rs: &RootSystem) -> Vec<Involution> {
    let mut out = Vec::new();
    for mu in diagram_automorphisms(rs.cartan_matrix()) {
        out.push(canonical_involution(rs, CanonicalKind::Varsigma, &mu, &BTreeSet::new()).expect("valid"));
        let fixed = mu.fixed_points();
        for mask in 0u32..(1 << fixed.len()) {
            let j: BTreeSet<usize> = fixed.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
            out.push(canonical_involution(rs, CanonicalKind::Omega, &mu, &j).expect("valid"));
        }
    }
    out
}

/// The automorphism `h ↦ h`, `x_β ↦ d^β x_β` with `d^β = Π d_i^{k_i}`.
pub fn torus_rescaling(rs: &RootSystem, d: &[GaussianRational]) -> Matrix {
    let dim = rs.dim();
    let mut m = Matrix::identity(dim);
    for k in 0..rs.roots().len() {
        let mut s = GaussianRational::one();
        for (i, c) in rs.root(k).iter().enumerate() {
            let f = if *c >= 0 { d[i].clone() } else { d[i].inv() };
            for _ in 0..c.unsigned_abs() {
                s *= &f;
            }
        }
        let b = rs.root_basis(k);
        m[(b, b)] = s;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    /// Rescaling factor for each simple root: `x̃_α = d_α x_α`.
    pub d: Vec<GaussianRational>,
    pub kind: CanonicalKind,
    pub mu: DiagramAutomorphism,
    pub j: BTreeSet<usize>,
}

impl Normalization {
    pub fn canonical(&self, rs: &RootSystem) -> Result<Involution> {
        canonical_involution(rs, self.kind, &self.mu, &self.j)
    }
}

/// `σ(x_β) = c·x_γ`, returning `(γ, c)` when the image is a single root vector.
fn root_image(rs: &RootSystem, sigma: &Involution, k: usize) -> Option<(usize, GaussianRational)> {
    let col = sigma.linear_part().column(rs.root_basis(k));
    let nz: Vec<usize> = (0..col.len()).filter(|&a| !col[a].is_zero()).collect();
    match nz.as_slice() {
        [a] => rs.basis_root(*a).map(|g| (g, col[*a].clone())),
        _ => None,
    }
}

/// Rescales the simple root vectors so that `σ` becomes `ς_μ` or
/// `ω_{μ,J}`.
pub fn normalize_involution(rs: &RootSystem, sigma: &Involution) -> Result<Normalization> {
    let n = rs.rank();
    let dim = rs.dim();
    let l = sigma.linear_part();
    if l.rows() != dim || l.cols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: l.rows() });
    }
    let preserves_h = (0..n).all(|c| (n..dim).all(|r| l[(r, c)].is_zero()));
    if !preserves_h {
        return Err(Error::NotCartanPreserving);
    }
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let (g, c) = root_image(rs, sigma, i).ok_or(Error::NotPlusMinusDelta)?;
        let (gm, cm) = root_image(rs, sigma, rs.negative(i)).ok_or(Error::NotPlusMinusDelta)?;
        if gm != rs.negative(g) {
            return Err(Error::NotPlusMinusDelta);
        }
        images.push((g, c, cm));
    }
    let all_pos = images.iter().all(|(g, _, _)| *g < n);
    let all_neg = images.iter().all(|(g, _, _)| rs.negative(*g) < n);
    let (kind, perm) = if all_pos {
        (CanonicalKind::Varsigma, images.iter().map(|(g, _, _)| *g).collect::<Vec<_>>())
    } else if all_neg {
        (CanonicalKind::Omega, images.iter().map(|(g, _, _)| rs.negative(*g)).collect())
    } else {
        return Err(Error::NotPlusMinusDelta);
    };
    let mu = DiagramAutomorphism::new(perm, rs.cartan_matrix())?;
    let mut d = vec![GaussianRational::one(); n];
    let mut j = BTreeSet::new();
    for i in 0..n {
        let c = &images[i].1;
        let m = mu.apply(i);
        match kind {
            CanonicalKind::Varsigma if m == i => {
                // c = d / conj(d) with |c| = 1
                d[i] = if *c == -GaussianRational::one() { imag_unit() } else { GaussianRational::one() + c };
            }
            CanonicalKind::Varsigma if i < m => d[m] = c.clone(),
            CanonicalKind::Omega if m == i => {
                if !c.im.is_zero() {
                    return Err(Error::NotPlusMinusDelta);
                }
                let abs = if c.re < Rational::zero() {
                    j.insert(i);
                    -c.re.clone()
                } else {
                    c.re.clone()
                };
                let target = Rational::one() / abs;
                let (a, b) = sum_of_two_rational_squares(&target)
                    .ok_or_else(|| Error::NoGaussianSolution { root: i, required: format_scalar(&from_rational(target)) })?;
                d[i] = gq(a, b);
            }
            CanonicalKind::Omega if i < m => d[m] = c.inv(),
            _ => {}
        }
    }
    let out = Normalization { d, kind, mu, j };
    let r = torus_rescaling(rs, &out.d);
    let r_inv = r.inverse().expect("diagonal with nonzero entries");
    let conjugated = r_inv.mul(l).mul(&r.conj());
    if conjugated != *out.canonical(rs)?.linear_part() {
        return Err(Error::NotCanonical);
    }
    Ok(out)
}

/// A real basis of `g^σ` and its (real) structure constants.
#[derive(Clone, Debug)]
pub struct RealFormBasis {
    vectors: Vec<Vector>,
    /// Inverse of the column matrix of `vectors`, as sparse columns.
    inverse_columns: Vec<Vec<(usize, GaussianRational)>>,
    structure: Option<StructureConstants>,
    cartan_dim: usize,
}

impl RealFormBasis {
    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// The first `cartan_dim` vectors span `h₀ = g₀ ∩ h`.
    pub fn cartan_dim(&self) -> usize {
        self.cartan_dim
    }

    /// Complex coordinates of any `x ∈ g` in the basis.
    pub fn complex_coordinates(&self, x: &[GaussianRational]) -> Vector {
        let mut out = vec![GaussianRational::zero(); self.vectors.len()];
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (i, c) in &self.inverse_columns[k] {
                out[*i] += c * xk;
            }
        }
        out
    }

    /// Coordinates of `x` in the basis; `None` when `x ∉ g^σ`.
    pub fn coordinates(&self, x: &[GaussianRational]) -> Option<Vec<Rational>> {
        let out = self.complex_coordinates(x);
        out.into_iter().map(|z| if z.im.is_zero() { Some(z.re) } else { None }).collect()
    }

    pub fn structure_constants(&self) -> Option<&StructureConstants> {
        self.structure.as_ref()
    }
}

/// `v + σv` and `i v + σ(i v)` over σ-orbits of basis vectors. Requires
/// `σ` to map each basis vector to a multiple of a basis vector, which holds
/// for the canonical involutions.
pub fn fixed_point_basis(rs: &RootSystem, sigma: &Involution) -> Result<RealFormBasis> {
    fixed_point_basis_impl(rs, sigma, true)
}

/// As [`fixed_point_basis`], skipping the real structure constants.
pub fn fixed_point_vectors(rs: &RootSystem, sigma: &Involution) -> Result<RealFormBasis> {
    fixed_point_basis_impl(rs, sigma, false)
}

fn fixed_point_basis_impl(rs: &RootSystem, sigma: &Involution, with_structure: bool) -> Result<RealFormBasis> {
    let dim = rs.dim();
    let l = sigma.linear_part();
    let mut seen = vec![false; dim];
    let mut vectors = Vec::with_capacity(dim);
    let i = imag_unit();
    let mut cartan_dim = 0;
    for a in 0..dim {
        if seen[a] {
            continue;
        }
        let col = l.column(a);
        let nz: Vec<usize> = (0..dim).filter(|&k| !col[k].is_zero()).collect();
        let [b] = nz.as_slice() else { return Err(Error::NotCanonical) };
        let (b, c) = (*b, col[*b].clone());
        let ea = unit_vector(dim, a);
        if b == a {
            if c.is_one() {
                vectors.push(ea);
            } else if c == -GaussianRational::one() {
                vectors.push(ea.iter().map(|z| z * &i).collect());
            } else {
                vectors.push(ea.iter().map(|z| z * (GaussianRational::one() + &c)).collect());
            }
        } else {
            seen[b] = true;
            let mut v = ea.clone();
            v[b] = c.clone();
            let mut w = ea.iter().map(|z| z * &i).collect::<Vector>();
            w[b] = -(&c * &i);
            vectors.push(v);
            vectors.push(w);
        }
        seen[a] = true;
        if a < rs.rank() {
            cartan_dim = vectors.len();
        }
    }
    for v in &vectors {
        if sigma.apply(v) != *v {
            return Err(Error::NotCanonical);
        }
    }
    let inv = Matrix::from_columns(&vectors).inverse().ok_or(Error::NotCanonical)?;
    let inverse_columns = (0..dim)
        .map(|k| (0..dim).filter(|&r| !inv[(r, k)].is_zero()).map(|r| (r, inv[(r, k)].clone())).collect())
        .collect();
    let mut basis = RealFormBasis { vectors, inverse_columns, structure: None, cartan_dim };
    if with_structure {
        let alg = rs.structure_constants();
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let br = alg.bracket(&basis.vectors[a], &basis.vectors[b]);
                let coords = basis.coordinates(&br).ok_or(Error::NotCanonical)?;
                table.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        basis.structure = Some(StructureConstants::new(dim, table)?);
    }
    debug_assert!(basis.vectors.iter().all(|v| !vec_is_zero(v)));
    Ok(basis)
}
