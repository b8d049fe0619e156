//! Continuous parameters `λ ∈ h ⊗ h` of a BD triple and their reality
//! constraints.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bdtriple::{is_antistable, is_stable, BDTriple, DiagramAutomorphism};
use crate::error::{Error, Result};
use crate::involution::{Involution, TableRow};
use crate::linalg::{real_independent_subset, unit_vector, Matrix, Vector};
use crate::rootsystem::RootSystem;
use crate::scalar::{format_scalar, from_rational, parse_scalar, rat, GaussianRational};

/// `λ` as a `rank × rank` matrix in the `h_{α_i}` basis:
/// `λ = Σ λ_ij h_i ⊗ h_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousParameter {
    lambda: Matrix,
}

impl ContinuousParameter {
    pub fn new(lambda: Matrix) -> Self {
        assert!(lambda.is_square());
        ContinuousParameter { lambda }
    }

    pub fn lambda(&self) -> &Matrix {
        &self.lambda
    }

    /// `λ_{α,β}` with `λ − λ²¹ = Σ_{α,β} λ_{α,β} h_α ∧ h_β` summed over
    /// ordered pairs; this is the antisymmetric half of `λ`.
    pub fn coefficients(&self) -> Matrix {
        antisymmetric_part(&self.lambda)
    }

    pub fn symmetric_part(&self) -> Matrix {
        let half = from_rational(rat(1, 2));
        self.lambda.add(&self.lambda.transpose()).scale(&half)
    }

    /// `λ + λ²¹ = Ω₀`.
    pub fn satisfies_symmetric_condition(&self, rs: &RootSystem) -> bool {
        self.lambda.add(&self.lambda.transpose()) == *rs.killing_h_inverse()
    }

    /// `(T(α) ⊗ 1)λ + (1 ⊗ α)λ` as a vector in `h`.
    pub fn bd_residual(&self, rs: &RootSystem, alpha: usize, t_alpha: usize) -> Vector {
        let k = rs.killing_h();
        let u = k.mul_vec(&unit_vector(rs.rank(), t_alpha));
        let w = k.mul_vec(&unit_vector(rs.rank(), alpha));
        let a = self.lambda.transpose().mul_vec(&u);
        let b = self.lambda.mul_vec(&w);
        a.into_iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn satisfies_bd_condition(&self, rs: &RootSystem, bd: &BDTriple) -> bool {
        bd.tau().iter().all(|(&a, &t)| self.bd_residual(rs, a, t).iter().all(Zero::is_zero))
    }

    pub fn is_valid(&self, rs: &RootSystem, bd: &BDTriple) -> bool {
        self.satisfies_symmetric_condition(rs) && self.satisfies_bd_condition(rs, bd)
    }
}

fn antisymmetric_part(m: &Matrix) -> Matrix {
    let half = from_rational(rat(1, 2));
    m.sub(&m.transpose()).scale(&half)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealityKind {
    /// Complex coefficients, no reality condition imposed.
    Unconstrained,
    /// `λ_{α,β} ∈ ℝ`.
    Real,
    /// `λ_{α,β} = conj(λ_{μα,μβ})`.
    ConjugateMu,
    /// `λ_{α,β} ∈ iℝ`.
    Imaginary,
    /// `λ_{α,β} = −conj(λ_{μα,μβ})`.
    AntiConjugateMu,
}

impl RealityKind {
    pub fn for_row(row: TableRow) -> Self {
        match row {
            TableRow::Split => RealityKind::Real,
            TableRow::VarsigmaMu => RealityKind::ConjugateMu,
            TableRow::Compact | TableRow::OmegaJ => RealityKind::Imaginary,
            TableRow::OmegaMuJ => RealityKind::AntiConjugateMu,
        }
    }
}

/// `base + Σ c_k directions[k]`, with `c_k` complex when the kind is
/// unconstrained and real otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSpace {
    pub base_point: ContinuousParameter,
    pub directions: Vec<Matrix>,
    pub reality_kind: RealityKind,
}

impl ParameterSpace {
    pub fn point(&self, coeffs: &[GaussianRational]) -> Result<ContinuousParameter> {
        if coeffs.len() != self.directions.len() {
            return Err(Error::DimensionMismatch { expected: self.directions.len(), found: coeffs.len() });
        }
        if self.reality_kind != RealityKind::Unconstrained && coeffs.iter().any(|c| !c.im.is_zero()) {
            return Err(Error::InvalidParameter("coefficients must be real".into()));
        }
        let mut m = self.base_point.lambda.clone();
        for (d, c) in self.directions.iter().zip(coeffs) {
            m = m.add(&d.scale(c));
        }
        Ok(ContinuousParameter::new(m))
    }

    pub fn to_json(&self) -> ParameterSpaceJson {
        ParameterSpaceJson {
            base_point: matrix_to_strings(&self.base_point.lambda),
            directions: self.directions.iter().map(matrix_to_strings).collect(),
            reality_kind: self.reality_kind,
        }
    }

    pub fn from_json(json: &ParameterSpaceJson) -> Result<Self> {
        Ok(ParameterSpace {
            base_point: ContinuousParameter::new(matrix_from_strings(&json.base_point)?),
            directions: json.directions.iter().map(|d| matrix_from_strings(d)).collect::<Result<_>>()?,
            reality_kind: json.reality_kind,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterSpaceJson {
    pub base_point: Vec<Vec<String>>,
    pub directions: Vec<Vec<Vec<String>>>,
    pub reality_kind: RealityKind,
}

pub fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(format_scalar).collect()).collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> Result<Matrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("parameter matrix must be square".into()));
    }
    let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<_>>()).collect::<Result<_>>()?;
    Ok(Matrix::from_rows(rows))
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn antisymmetric_from(n: usize, pairs: &[(usize, usize)], coords: &[GaussianRational]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for ((i, j), c) in pairs.iter().zip(coords) {
        m[(*i, *j)] = c.clone();
        m[(*j, *i)] = -c.clone();
    }
    m
}

/// All `λ` with `λ + λ²¹ = Ω₀` and `(T(α)⊗1)λ + (1⊗α)λ = 0` for `α ∈ Γ₁`.
///
/// Writing `λ = K⁻¹/2 + A` with `A` antisymmetric, the second condition is
/// `A·K·(e_α − e_{Tα}) = −(e_α + e_{Tα})/2`.
pub fn solve_parameters(rs: &RootSystem, bd: &BDTriple) -> Result<ParameterSpace> {
    let n = rs.rank();
    let k = rs.killing_h();
    let pairs = pair_index(n);
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vector = Vec::new();
    let half = from_rational(rat(1, 2));
    for (&a, &t) in bd.tau() {
        let diff: Vector =
            unit_vector(n, a).into_iter().zip(unit_vector(n, t)).map(|(x, y)| x - y).collect();
        let v = k.mul_vec(&diff);
        // (A v)_r = Σ_{s} A_rs v_s
        for r in 0..n {
            let row: Vector = pairs
                .iter()
                .map(|&(i, j)| {
                    if i == r {
                        v[j].clone()
                    } else if j == r {
                        -v[i].clone()
                    } else {
                        GaussianRational::zero()
                    }
                })
                .collect();
            let mut b = GaussianRational::zero();
            if r == a {
                b -= &half;
            }
            if r == t {
                b -= &half;
            }
            rows.push(row);
            rhs.push(b);
        }
    }
    let symmetric = rs.killing_h_inverse().scale(&half);
    let (particular, kernel) = if rows.is_empty() {
        let basis = (0..pairs.len()).map(|p| unit_vector(pairs.len(), p)).collect();
        (vec![GaussianRational::zero(); pairs.len()], basis)
    } else {
        let m = Matrix::from_rows(rows);
        (m.solve(&rhs).ok_or(Error::Inconsistent)?, m.kernel())
    };
    let base = ContinuousParameter::new(symmetric.add(&antisymmetric_from(n, &pairs, &particular)));
    let directions = kernel.iter().map(|c| antisymmetric_from(n, &pairs, c)).collect();
    Ok(ParameterSpace { base_point: base, directions, reality_kind: RealityKind::Unconstrained })
}

/// `F(A)_ij = ε·conj(A_{μi,μj})`, with `ε = −1` for the imaginary kinds.
pub fn reality_map(a: &Matrix, kind: RealityKind, mu: &DiagramAutomorphism) -> Matrix {
    let n = a.rows();
    let (sign, twist) = match kind {
        RealityKind::Unconstrained => return a.clone(),
        RealityKind::Real => (1, false),
        RealityKind::ConjugateMu => (1, true),
        RealityKind::Imaginary => (-1, false),
        RealityKind::AntiConjugateMu => (-1, true),
    };
    Matrix::from_fn(n, n, |i, j| {
        let (p, q) = if twist { (mu.apply(i), mu.apply(j)) } else { (i, j) };
        let z = a[(p, q)].conj();
        if sign < 0 {
            -z
        } else {
            z
        }
    })
}

/// Whether `λ_{α,β}` satisfies the reality condition of the kind.
pub fn satisfies_reality(p: &ContinuousParameter, kind: RealityKind, mu: &DiagramAutomorphism) -> bool {
    let a = p.coefficients();
    reality_map(&a, kind, mu) == a
}

/// Checks the BD triple against the σ-kind: any triple for `ς`, μ-stable
/// for `ς_μ`, empty for `ω_J`, μ-antistable for `ω_{μ,J}`.
pub fn check_compatibility(sigma: &Involution, bd: &BDTriple) -> Result<TableRow> {
    let row = sigma.table_row().ok_or_else(|| Error::InvalidAutomorphism("general involution".into()))?;
    let mu = sigma.mu().expect("canonical");
    match row {
        TableRow::Split => Ok(row),
        TableRow::VarsigmaMu if is_stable(bd, mu) => Ok(row),
        TableRow::VarsigmaMu => Err(Error::IncompatibleTriple("triple is not μ-stable".into())),
        TableRow::Compact | TableRow::OmegaJ if bd.is_empty() => Ok(row),
        TableRow::Compact | TableRow::OmegaJ => Err(Error::IncompatibleTriple("Γ₁ = Γ₂ = ∅ required".into())),
        TableRow::OmegaMuJ if is_antistable(bd, mu) => Ok(row),
        TableRow::OmegaMuJ => Err(Error::IncompatibleTriple("triple is not μ-antistable".into())),
    }
}

/// The real-affine subspace of `ps` whose coefficients satisfy the
/// reality condition for `σ`.
pub fn apply_reality(ps: &ParameterSpace, sigma: &Involution, bd: &BDTriple) -> Result<ParameterSpace> {
    let row = check_compatibility(sigma, bd)?;
    let kind = RealityKind::for_row(row);
    let mu = sigma.mu().expect("canonical");
    restrict(ps, kind, mu)
}

/// Fixed points of the semilinear involution `F` on the affine space.
pub fn restrict(ps: &ParameterSpace, kind: RealityKind, mu: &DiagramAutomorphism) -> Result<ParameterSpace> {
    let n = ps.base_point.lambda.rows();
    let half = from_rational(rat(1, 2));
    let sym = ps.base_point.symmetric_part();
    let a0 = ps.base_point.coefficients();
    let a0 = a0.add(&reality_map(&a0, kind, mu)).scale(&half);
    let base = ContinuousParameter::new(sym.add(&a0));
    let i = crate::scalar::imag_unit();
    let mut candidates: Vec<Vector> = Vec::new();
    for d in &ps.directions {
        for c in [GaussianRational::from(rat(1, 1)), i.clone()] {
            let dc = d.scale(&c);
            let f = dc.add(&reality_map(&dc, kind, mu));
            candidates.push(f.entries().to_vec());
        }
    }
    let directions: Vec<Matrix> = real_independent_subset(&candidates)
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
        .collect();
    let out = ParameterSpace { base_point: base, directions, reality_kind: kind };
    // the averaged base point must still solve the linear system
    if reality_map(&out.base_point.coefficients(), kind, mu) != out.base_point.coefficients() {
        return Err(Error::Inconsistent);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdtriple::diagram_automorphisms;
    use crate::involution::{canonical_involution, omega, varsigma, CanonicalKind};
    use crate::rootsystem::build_root_system;
    use crate::scalar::{from_int, imag_unit};
    use std::collections::{BTreeMap, BTreeSet};

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap())
    }

    #[test]
    fn a1_empty() {
        let r = rs("A1");
        let ps = solve_parameters(&r, &BDTriple::empty()).unwrap();
        assert!(ps.directions.is_empty());
        assert_eq!(ps.base_point.lambda()[(0, 0)], from_rational(rat(1, 2)) * r.killing_h_inverse()[(0, 0)].clone());
        assert!(ps.base_point.is_valid(&r, &BDTriple::empty()));
    }

    #[test]
    fn a2_empty_has_one_direction() {
        let r = rs("A2");
        let ps = solve_parameters(&r, &BDTriple::empty()).unwrap();
        assert_eq!(ps.directions.len(), 1);
    }

    #[test]
    fn a2_with_arrow_is_a_point() {
        let r = rs("A2");
        let bd = BDTriple::new(BTreeMap::from([(0, 1)]), &r).unwrap();
        let ps = solve_parameters(&r, &bd).unwrap();
        assert!(ps.directions.is_empty());
        assert!(ps.base_point.is_valid(&r, &bd));
    }

    #[test]
    fn compact_rejects_nonempty() {
        let r = rs("A2");
        let bd = BDTriple::new(BTreeMap::from([(0, 1)]), &r).unwrap();
        let ps = solve_parameters(&r, &bd).unwrap();
        assert!(matches!(apply_reality(&ps, &omega(&r), &bd), Err(Error::IncompatibleTriple(_))));
    }

    #[test]
    fn split_is_real() {
        let r = rs("A3");
        let bd = BDTriple::empty();
        let ps = apply_reality(&solve_parameters(&r, &bd).unwrap(), &varsigma(&r), &bd).unwrap();
        assert_eq!(ps.directions.len(), 3);
        assert!(ps.directions.iter().all(|d| d.is_real()));
    }

    #[test]
    fn steinberg_a2_is_imaginary() {
        let r = rs("A2");
        let mu = diagram_automorphisms(r.cartan_matrix()).pop().unwrap();
        let s = canonical_involution(&r, CanonicalKind::Varsigma, &mu, &BTreeSet::new()).unwrap();
        let bd = BDTriple::empty();
        let ps = apply_reality(&solve_parameters(&r, &bd).unwrap(), &s, &bd).unwrap();
        assert_eq!(ps.directions.len(), 1);
        let c = ps.directions[0][(0, 1)].clone();
        assert!(c.re.is_zero() && !c.im.is_zero());
        let p = ps.point(&[from_int(3)]).unwrap();
        assert!(satisfies_reality(&p, RealityKind::ConjugateMu, &mu));
        let bad = ContinuousParameter::new(p.lambda().add(&ps.directions[0].scale(&imag_unit())));
        assert!(!satisfies_reality(&bad, RealityKind::ConjugateMu, &mu));
    }

    #[test]
    fn json_round_trip() {
        let r = rs("A3");
        let ps = solve_parameters(&r, &BDTriple::empty()).unwrap();
        let js = ps.to_json();
        assert_eq!(ParameterSpace::from_json(&js).unwrap(), ps);
    }
}
