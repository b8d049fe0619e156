//! The r-matrices `r` and `r₀` of a classification datum, their
//! verification and deduplication up to diagram automorphisms.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bdtriple::{diagram_automorphisms, precedence_pairs, span_roots, BDTriple, BDTripleJson, DiagramAutomorphism};
use crate::error::{Error, Result};
use crate::involution::{canonical_involution, Involution, InvolutionJson, RealFormBasis, TableRow};
use crate::linalg::Matrix;
use crate::parameter::{check_compatibility, matrix_from_strings, matrix_to_strings, satisfies_reality, ContinuousParameter, RealityKind};
use crate::rootsystem::{RootSystem, SimpleType};
use crate::scalar::{format_scalar, from_rational, parse_scalar, rat, GaussianRational, Rational};
use crate::tensor::{apply_semilinear_pair, cybe_sparse, Tensor2, Tensor2Json};

/// `T̂` on the positive roots of `Γ̂₁`: `T̂(x_β) = c·x_{Tβ}`, obtained by
/// sending `x_{±α} ↦ x_{±Tα}` for `α ∈ Γ₁` and propagating through brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedT {
    images: BTreeMap<usize, (usize, GaussianRational)>,
    scales: BTreeMap<usize, GaussianRational>,
}

impl ExtendedT {
    pub fn image(&self, beta: usize) -> Option<(usize, &GaussianRational)> {
        self.images.get(&beta).map(|(g, c)| (*g, c))
    }

    pub fn images(&self) -> &BTreeMap<usize, (usize, GaussianRational)> {
        &self.images
    }

    /// Scales `s_β` with `T̂(s_β x_β) = s_{Tβ} x_{Tβ}`, equal to 1 on roots
    /// outside `Γ̂₂`; the family `s_β x_β`, `s_β⁻¹ x_{−β}` satisfies both
    /// normalizations.
    pub fn scales(&self) -> &BTreeMap<usize, GaussianRational> {
        &self.scales
    }

    pub fn scale(&self, beta: usize) -> GaussianRational {
        self.scales.get(&beta).cloned().unwrap_or_else(GaussianRational::one)
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

fn bracket_coefficient(rs: &RootSystem, a: usize, b: usize, target: usize) -> Rational {
    rs.structure_constants()
        .bracket_basis(rs.root_basis(a), rs.root_basis(b))
        .iter()
        .find(|(k, _)| *k == rs.root_basis(target))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::zero)
}

pub fn extend_t(rs: &RootSystem, bd: &BDTriple) -> ExtendedT {
    let mut images: BTreeMap<usize, (usize, GaussianRational)> = BTreeMap::new();
    let mut roots = span_roots(rs, bd.gamma1());
    roots.sort_by_key(|&k| (rs.height(k), k));
    for beta in roots {
        let t_beta = rs.root_index(&bd.apply_t(rs.root(beta)).expect("supported in Γ₁")).expect("T maps roots to roots");
        let c = if beta < rs.rank() {
            GaussianRational::one()
        } else {
            let (j, gamma) = rs.extraspecial(beta).expect("non-simple");
            let (tg, cg) = images[&gamma].clone();
            let tj = bd.tau()[&j];
            let n = bracket_coefficient(rs, j, gamma, beta);
            let n2 = bracket_coefficient(rs, tj, tg, t_beta);
            cg * from_rational(n2 / n)
        };
        images.insert(beta, (t_beta, c));
    }
    let mut scales = BTreeMap::new();
    let targets: BTreeSet<usize> = images.values().map(|(g, _)| *g).collect();
    for (&start, _) in images.iter().filter(|(b, _)| !targets.contains(b)) {
        let mut cur = start;
        let mut s = GaussianRational::one();
        while let Some((next, c)) = images.get(&cur) {
            s *= c;
            scales.insert(*next, s.clone());
            cur = *next;
        }
    }
    ExtendedT { images, scales }
}

/// `C` with `T̂ⁿ(x_α) = C·x_β` for every `α ≺ β`.
pub fn precedence_coefficients(rs: &RootSystem, bd: &BDTriple) -> BTreeMap<(usize, usize), GaussianRational> {
    let ext = extend_t(rs, bd);
    precedence_pairs(rs, bd)
        .into_iter()
        .map(|(a, b)| {
            let mut cur = a;
            let mut c = GaussianRational::one();
            while cur != b {
                let (next, k) = ext.image(cur).expect("chain stays in Γ̂₁ until β");
                c *= k;
                cur = next;
            }
            ((a, b), c)
        })
        .collect()
}

fn check_inputs(rs: &RootSystem, bd: &BDTriple, lambda: &ContinuousParameter, t: &GaussianRational) -> Result<()> {
    if t.is_zero() {
        return Err(Error::ZeroT);
    }
    bd.validate(rs)?;
    if lambda.lambda().rows() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), found: lambda.lambda().rows() });
    }
    if !lambda.satisfies_symmetric_condition(rs) {
        return Err(Error::InvalidParameter("λ + λ²¹ ≠ Ω₀".into()));
    }
    if !lambda.satisfies_bd_condition(rs, bd) {
        return Err(Error::InvalidParameter("(T(α)⊗1)λ + (1⊗α)λ ≠ 0".into()));
    }
    Ok(())
}

fn add_wedge(r: &mut Tensor2, a: usize, b: usize, c: &GaussianRational) {
    r.add_to(a, b, c);
    r.add_to(b, a, &-c.clone());
}

/// Without the factor `t`: `λ_part + Σ w·x_{−α}⊗x_α (+ its flip scaled by
/// `flip`) + Σ C·x_{−α} ∧ x_β`.
fn assemble(
    rs: &RootSystem,
    bd: &BDTriple,
    lambda_part: &Matrix,
    diag: &GaussianRational,
    diag_flip: &GaussianRational,
    twist: Option<&[GaussianRational]>,
) -> Tensor2 {
    let n = rs.rank();
    let mut r = Tensor2::zeros(rs.dim());
    for i in 0..n {
        for j in 0..n {
            if !lambda_part[(i, j)].is_zero() {
                r.set(i, j, lambda_part[(i, j)].clone());
            }
        }
    }
    for a in rs.positive_roots() {
        let (p, m) = (rs.root_basis(a), rs.root_basis(rs.negative(a)));
        r.add_to(m, p, diag);
        r.add_to(p, m, diag_flip);
    }
    for ((a, b), c) in precedence_coefficients(rs, bd) {
        let c = match twist {
            Some(s) => c * character(s, rs.root(b)) / character(s, rs.root(a)),
            None => c,
        };
        add_wedge(&mut r, rs.root_basis(rs.negative(a)), rs.root_basis(b), &c);
    }
    r
}

/// `s^β = Π s_i^{k_i}` for `β = Σ k_i α_i`.
pub(crate) fn character(s: &[GaussianRational], coords: &[i64]) -> GaussianRational {
    let mut out = GaussianRational::one();
    for (si, k) in s.iter().zip(coords) {
        let f = if *k >= 0 { si.clone() } else { si.inv() };
        for _ in 0..k.unsigned_abs() {
            out *= &f;
        }
    }
    out
}

/// `e` with `z = i^e·|z|` for `z` real or purely imaginary.
fn phase_exponent(z: &GaussianRational) -> Option<i64> {
    match (z.re.is_zero(), z.im.is_zero()) {
        (false, true) => Some(if z.re.is_positive() { 0 } else { 2 }),
        (true, false) => Some(if z.im.is_positive() { 1 } else { 3 }),
        _ => None,
    }
}

/// `(s_i)` with `s_i ∈ {±1, ±i}` such that the family `s^β x_β`,
/// `s^{−β} x_{−β}` (with `T̂` sending its simple members to each other)
/// yields a `(σ⊗σ)`-fixed `r₀`. Only the precedence terms depend on the
/// choice. `None` when no such twist exists, which is the case exactly when
/// the triple is incompatible with `σ`.
pub fn sigma_twist(rs: &RootSystem, sigma: &Involution, bd: &BDTriple, t: &GaussianRational) -> Result<Option<Vec<GaussianRational>>> {
    let n = rs.rank();
    let ratio = t.conj() / t;
    let e_t = phase_exponent(&ratio).ok_or_else(|| Error::InvalidParameter("t must be real or imaginary".into()))?;
    let coeffs = precedence_coefficients(rs, bd);
    let l = sigma.linear_part();
    let image = |k: usize| -> Result<(usize, i64)> {
        let col = l.column(rs.root_basis(k));
        let nz: Vec<usize> = (0..col.len()).filter(|&a| !col[a].is_zero()).collect();
        let [a] = nz.as_slice() else { return Err(Error::NotCanonical) };
        let g = rs.basis_root(*a).ok_or(Error::NotCanonical)?;
        Ok((g, phase_exponent(&col[*a]).ok_or(Error::NotCanonical)?))
    };
    // equations Σ v_i k_i ≡ rhs (mod 4)
    let mut equations: Vec<(Vec<i64>, i64)> = Vec::new();
    for ((a, b), c) in &coeffs {
        let (g, qa) = image(rs.negative(*a))?;
        let (d, qb) = image(*b)?;
        let (a2, b2, swap) = if !rs.is_positive(g) && rs.is_positive(d) {
            (rs.negative(g), d, 0)
        } else if rs.is_positive(g) && !rs.is_positive(d) {
            (rs.negative(d), g, 2)
        } else {
            return Ok(None);
        };
        let Some(c2) = coeffs.get(&(a2, b2)) else { return Ok(None) };
        let c_e = phase_exponent(c).ok_or(Error::NotCanonical)?;
        let c2_e = phase_exponent(c2).ok_or(Error::NotCanonical)?;
        let v: Vec<i64> =
            (0..n).map(|i| rs.root(*b)[i] - rs.root(*a)[i] + rs.root(b2)[i] - rs.root(a2)[i]).collect();
        let rhs = (e_t - c_e - c2_e + qa + qb + swap).rem_euclid(4);
        equations.push((v, rhs));
    }
    let vars: Vec<usize> = (0..n).filter(|i| equations.iter().any(|(v, _)| v[*i] != 0)).collect();
    let mut k = vec![0i64; n];
    if solve_mod4(&equations, &vars, 0, &mut k) {
        let i = crate::scalar::imag_unit();
        Ok(Some(k.iter().map(|&e| (0..e).fold(GaussianRational::one(), |acc, _| acc * &i)).collect()))
    } else {
        Ok(None)
    }
}

fn solve_mod4(eqs: &[(Vec<i64>, i64)], vars: &[usize], depth: usize, k: &mut [i64]) -> bool {
    let assigned = |i: usize| vars[..depth].contains(&i) || !vars.contains(&i);
    let consistent = eqs.iter().all(|(v, rhs)| {
        if (0..v.len()).any(|i| v[i] != 0 && !assigned(i)) {
            return true;
        }
        (v.iter().zip(k.iter()).map(|(a, b)| a * b).sum::<i64>() - rhs).rem_euclid(4) == 0
    });
    if !consistent {
        return false;
    }
    if depth == vars.len() {
        return true;
    }
    for e in 0..4 {
        k[vars[depth]] = e;
        if solve_mod4(eqs, vars, depth + 1, k) {
            return true;
        }
    }
    k[vars[depth]] = 0;
    false
}

/// `r = t(λ + Σ x_{−α} ⊗ x_α + Σ_{α≺β} x_{−α} ∧ x_β)`.
pub fn build_r(rs: &RootSystem, bd: &BDTriple, lambda: &ContinuousParameter, t: &GaussianRational) -> Result<Tensor2> {
    build_r_twisted(rs, bd, lambda, t, None)
}

/// [`build_r`] for the root-vector family twisted by `s` (see [`sigma_twist`]).
pub fn build_r_twisted(
    rs: &RootSystem,
    bd: &BDTriple,
    lambda: &ContinuousParameter,
    t: &GaussianRational,
    twist: Option<&[GaussianRational]>,
) -> Result<Tensor2> {
    check_inputs(rs, bd, lambda, t)?;
    let r = assemble(rs, bd, lambda.lambda(), &GaussianRational::one(), &GaussianRational::zero(), twist);
    Ok(r.scale(t))
}

/// `r₀ = t(½(λ − λ²¹) + ½ Σ x_{−α} ∧ x_α + Σ_{α≺β} x_{−α} ∧ x_β)`.
pub fn build_r0(rs: &RootSystem, bd: &BDTriple, lambda: &ContinuousParameter, t: &GaussianRational) -> Result<Tensor2> {
    build_r0_twisted(rs, bd, lambda, t, None)
}

pub fn build_r0_twisted(
    rs: &RootSystem,
    bd: &BDTriple,
    lambda: &ContinuousParameter,
    t: &GaussianRational,
    twist: Option<&[GaussianRational]>,
) -> Result<Tensor2> {
    check_inputs(rs, bd, lambda, t)?;
    let half = from_rational(rat(1, 2));
    let r = assemble(rs, bd, &lambda.coefficients(), &half, &-half.clone(), twist);
    Ok(r.scale(t))
}

/// Coordinates of a tensor in `basis ⊗ basis`; `None` unless all are real,
/// i.e. unless the tensor lies in `g₀ ⊗ g₀`.
pub fn real_coordinates(basis: &RealFormBasis, x: &Tensor2) -> Option<Vec<Vec<Rational>>> {
    let n = x.dim();
    let m = x.to_matrix();
    let half: Vec<Vec<GaussianRational>> = (0..n).map(|b| basis.complex_coordinates(&m.column(b))).collect();
    (0..n)
        .map(|k| {
            let row: Vec<GaussianRational> = (0..n).map(|b| half[b][k].clone()).collect();
            basis
                .complex_coordinates(&row)
                .into_iter()
                .map(|z| if z.im.is_zero() { Some(z.re) } else { None })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TClass {
    RealPositive,
    ImaginaryPositive,
}

pub fn t_class(t: &GaussianRational) -> Option<TClass> {
    let zero = Rational::zero();
    if t.im.is_zero() && t.re > zero {
        Some(TClass::RealPositive)
    } else if t.re.is_zero() && t.im > zero {
        Some(TClass::ImaginaryPositive)
    } else {
        None
    }
}

/// One line of the classification: an almost-factorizable real Lie
/// bialgebra structure on `g^σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraDatum {
    pub simple_type: SimpleType,
    pub sigma: Involution,
    pub bd: BDTriple,
    pub lambda: ContinuousParameter,
    pub t: GaussianRational,
    /// Torus twist `s` of the root-vector family, `s_i ∈ {±1, ±i}`.
    pub twist: Vec<GaussianRational>,
    pub r0: Tensor2,
    pub r: Tensor2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumChecks {
    pub r0_antisymmetric: bool,
    pub r_plus_r21_is_t_omega: bool,
    pub r_is_r0_plus_half_t_omega: bool,
    pub cybe: bool,
    pub sigma_fixed: bool,
    pub reality: bool,
}

impl DatumChecks {
    pub fn all(&self) -> bool {
        self.r0_antisymmetric
            && self.r_plus_r21_is_t_omega
            && self.r_is_r0_plus_half_t_omega
            && self.cybe
            && self.sigma_fixed
            && self.reality
    }
}

impl BialgebraDatum {
    /// Validates the combination against the classification table and
    /// builds `r` and `r₀`.
    pub fn new(
        rs: &RootSystem,
        sigma: Involution,
        bd: BDTriple,
        lambda: ContinuousParameter,
        t: GaussianRational,
    ) -> Result<Self> {
        let row = check_compatibility(&sigma, &bd)?;
        let class = t_class(&t).ok_or_else(|| {
            if t.is_zero() {
                Error::ZeroT
            } else {
                Error::InvalidParameter("t must lie in ℝ>0 ∪ iℝ>0".into())
            }
        })?;
        let expected = if row.t_is_real() { TClass::RealPositive } else { TClass::ImaginaryPositive };
        if class != expected {
            return Err(Error::InvalidParameter(format!("t must be {} for this involution", if row.t_is_real() { "real" } else { "imaginary" })));
        }
        let mu = sigma.mu().expect("canonical");
        if !satisfies_reality(&lambda, RealityKind::for_row(row), mu) {
            return Err(Error::InvalidParameter("λ fails the reality condition".into()));
        }
        let twist = sigma_twist(rs, &sigma, &bd, &t)?
            .ok_or_else(|| Error::IncompatibleTriple("no root-vector family makes r₀ σ-fixed".into()))?;
        let r = build_r_twisted(rs, &bd, &lambda, &t, Some(&twist))?;
        let r0 = build_r0_twisted(rs, &bd, &lambda, &t, Some(&twist))?;
        Ok(BialgebraDatum { simple_type: rs.simple_type(), sigma, bd, lambda, t, twist, r0, r })
    }

    pub fn row(&self) -> TableRow {
        self.sigma.table_row().expect("canonical")
    }

    pub fn t_class(&self) -> TClass {
        t_class(&self.t).expect("validated")
    }

    pub fn verify(&self, rs: &RootSystem) -> Result<DatumChecks> {
        let omega = rs.casimir();
        let half_t = &self.t * from_rational(rat(1, 2));
        let row = self.row();
        Ok(DatumChecks {
            r0_antisymmetric: self.r0.is_antisymmetric(),
            r_plus_r21_is_t_omega: self.r.add(&self.r.flip()) == omega.scale(&self.t),
            r_is_r0_plus_half_t_omega: self.r == self.r0.add(&omega.scale(&half_t)),
            cybe: cybe_sparse(&self.r, rs.structure_constants())?.is_empty(),
            sigma_fixed: apply_semilinear_pair(self.sigma.linear_part(), &self.r0)? == self.r0,
            reality: satisfies_reality(&self.lambda, RealityKind::for_row(row), self.sigma.mu().expect("canonical")),
        })
    }

    /// The datum transported by the lift of a diagram automorphism `ν` of
    /// order at most 2.
    pub fn conjugate(&self, rs: &RootSystem, nu: &DiagramAutomorphism) -> Result<Self> {
        let mu = self.sigma.mu().expect("canonical");
        let perm: Vec<usize> = (0..rs.rank()).map(|i| nu.apply(mu.apply(nu.apply(i)))).collect();
        let new_mu = DiagramAutomorphism::new(perm, rs.cartan_matrix())?;
        let j: BTreeSet<usize> = self.sigma.j().map(|j| j.iter().map(|&a| nu.apply(a)).collect()).unwrap_or_default();
        let sigma = canonical_involution(rs, self.sigma.canonical_kind().expect("canonical"), &new_mu, &j)?;
        let n = rs.rank();
        let l = self.lambda.lambda();
        let lambda = ContinuousParameter::new(Matrix::from_fn(n, n, |i, k| l[(nu.apply(i), nu.apply(k))].clone()));
        BialgebraDatum::new(rs, sigma, self.bd.conjugate(nu), lambda, self.t.clone())
    }

    /// Serialized form compared lexicographically in [`classify`].
    pub fn sort_key(&self) -> String {
        let mu = self.sigma.mu().expect("canonical");
        let j: Vec<usize> = self.sigma.j().map(|j| j.iter().copied().collect()).unwrap_or_default();
        let pairs: Vec<(usize, usize)> = self.bd.tau().iter().map(|(a, b)| (*a, *b)).collect();
        let l = self.lambda.lambda();
        let lam: Vec<String> = l.entries().iter().map(format_scalar).collect();
        format!(
            "{}|{}|{:?}|{:?}|{:?}|{:?}|{}",
            self.row().number(),
            format_scalar(&self.t),
            self.sigma.canonical_kind(),
            mu.permutation(),
            j,
            pairs,
            lam.join(",")
        )
    }

    pub fn to_json(&self) -> BialgebraDatumJson {
        BialgebraDatumJson {
            simple_type: self.simple_type,
            sigma: self.sigma.to_json().expect("canonical"),
            table_row: self.row().number(),
            bd: self.bd.to_json(),
            lambda: matrix_to_strings(self.lambda.lambda()),
            t_class: self.t_class(),
            t: format_scalar(&self.t),
            twist: self.twist.iter().map(format_scalar).collect(),
            r0: Tensor2Json::from(&self.r0),
            r: Tensor2Json::from(&self.r),
        }
    }

    pub fn from_json(json: &BialgebraDatumJson, rs: &RootSystem) -> Result<Self> {
        if json.simple_type != rs.simple_type() {
            return Err(Error::Parse(format!("datum is of type {}, expected {}", json.simple_type, rs.simple_type())));
        }
        let sigma = Involution::from_json(&json.sigma, rs)?;
        let bd = BDTriple::from_json(&json.bd, rs)?;
        let lambda = ContinuousParameter::new(matrix_from_strings(&json.lambda)?);
        let t = parse_scalar(&json.t)?;
        let d = BialgebraDatum::new(rs, sigma, bd, lambda, t)?;
        let r0 = Tensor2::try_from(&json.r0)?;
        let r = Tensor2::try_from(&json.r)?;
        if r0 != d.r0 || r != d.r {
            return Err(Error::Inconsistent);
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraDatumJson {
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub sigma: InvolutionJson,
    pub table_row: usize,
    pub bd: BDTripleJson,
    pub lambda: Vec<Vec<String>>,
    pub t_class: TClass,
    pub t: String,
    pub twist: Vec<String>,
    pub r0: Tensor2Json,
    pub r: Tensor2Json,
}

/// An isomorphism class and the indices of the input data it contains.
#[derive(Clone, Debug)]
pub struct ClassifiedDatum {
    pub representative: BialgebraDatum,
    pub members: Vec<usize>,
}

/// Least element of the orbit of `d` under the group generated by the
/// order-2 diagram automorphisms (all of `S₃` on `D₄`).
pub fn canonical_form(rs: &RootSystem, d: &BialgebraDatum) -> Result<BialgebraDatum> {
    let generators: Vec<DiagramAutomorphism> =
        diagram_automorphisms(rs.cartan_matrix()).into_iter().filter(|m| !m.is_identity()).collect();
    let mut orbit: BTreeMap<String, BialgebraDatum> = BTreeMap::from([(d.sort_key(), d.clone())]);
    let mut frontier = vec![d.clone()];
    while let Some(cur) = frontier.pop() {
        for nu in &generators {
            let c = cur.conjugate(rs, nu)?;
            let k = c.sort_key();
            if let std::collections::btree_map::Entry::Vacant(e) = orbit.entry(k) {
                e.insert(c.clone());
                frontier.push(c);
            }
        }
    }
    Ok(orbit.into_values().next().expect("orbit contains d"))
}

/// Groups data related by a Dynkin diagram automorphism; classes are in
/// order of first appearance.
pub fn classify(rs: &RootSystem, data: &[BialgebraDatum]) -> Result<Vec<ClassifiedDatum>> {
    let mut classes: Vec<ClassifiedDatum> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (i, d) in data.iter().enumerate() {
        if d.simple_type != rs.simple_type() {
            return Err(Error::DimensionMismatch { expected: rs.dim(), found: 0 });
        }
        let c = canonical_form(rs, d)?;
        let key = c.sort_key();
        match index.get(&key) {
            Some(&k) => classes[k].members.push(i),
            None => {
                index.insert(key, classes.len());
                classes.push(ClassifiedDatum { representative: c, members: vec![i] });
            }
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::{omega, varsigma};
    use crate::parameter::solve_parameters;
    use crate::rootsystem::build_root_system;
    use crate::scalar::{from_int, imag_unit};
    use crate::tensor::satisfies_cybe;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap())
    }

    fn base(r: &RootSystem, bd: &BDTriple) -> ContinuousParameter {
        solve_parameters(r, bd).unwrap().base_point
    }

    #[test]
    fn sl2_r_matrix() {
        let r = rs("A1");
        let bd = BDTriple::empty();
        let l = base(&r, &bd);
        let m = build_r(&r, &bd, &l, &from_int(1)).unwrap();
        let mut expected = Tensor2::zeros(3);
        expected.set(0, 0, r.killing_h_inverse()[(0, 0)].clone() * from_rational(rat(1, 2)));
        expected.set(2, 1, from_int(1));
        assert_eq!(m, expected);
        assert!(satisfies_cybe(&m, r.structure_constants()).unwrap());
        let r0 = build_r0(&r, &bd, &l, &from_int(1)).unwrap();
        let mut e0 = Tensor2::zeros(3);
        e0.set(2, 1, from_rational(rat(1, 2)));
        e0.set(1, 2, from_rational(rat(-1, 2)));
        assert_eq!(r0, e0);
    }

    #[test]
    fn zero_t_is_rejected() {
        let r = rs("A1");
        let bd = BDTriple::empty();
        assert_eq!(build_r(&r, &bd, &base(&r, &bd), &from_int(0)), Err(Error::ZeroT));
    }

    #[test]
    fn extend_t_simple() {
        let r = rs("A2");
        let bd = BDTriple::new(BTreeMap::from([(0, 1)]), &r).unwrap();
        let ext = extend_t(&r, &bd);
        assert_eq!(ext.images().len(), 1);
        assert_eq!(ext.image(0), Some((1, &GaussianRational::one())));
        assert!(extend_t(&r, &BDTriple::empty()).is_empty());
    }

    #[test]
    fn cybe_on_a3_shift() {
        let r = rs("A3");
        let bd = BDTriple::new(BTreeMap::from([(0, 1), (1, 2)]), &r).unwrap();
        let l = base(&r, &bd);
        let m = build_r(&r, &bd, &l, &from_int(2)).unwrap();
        assert!(satisfies_cybe(&m, r.structure_constants()).unwrap());
    }

    #[test]
    fn compact_datum() {
        let r = rs("A2");
        let bd = BDTriple::empty();
        let ps = crate::parameter::apply_reality(&solve_parameters(&r, &bd).unwrap(), &omega(&r), &bd).unwrap();
        let l = ps.point(&[from_int(1)]).unwrap();
        let d = BialgebraDatum::new(&r, omega(&r), bd, l, imag_unit()).unwrap();
        assert!(d.verify(&r).unwrap().all());
    }

    #[test]
    fn wrong_t_class() {
        let r = rs("A1");
        let bd = BDTriple::empty();
        let l = base(&r, &bd);
        assert!(matches!(
            BialgebraDatum::new(&r, varsigma(&r), bd, l, imag_unit()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn flip_merges_a2_triples() {
        let r = rs("A2");
        let b1 = BDTriple::new(BTreeMap::from([(0, 1)]), &r).unwrap();
        let b2 = BDTriple::new(BTreeMap::from([(1, 0)]), &r).unwrap();
        let d1 = BialgebraDatum::new(&r, varsigma(&r), b1.clone(), base(&r, &b1), from_int(1)).unwrap();
        let d2 = BialgebraDatum::new(&r, varsigma(&r), b2.clone(), base(&r, &b2), from_int(1)).unwrap();
        let classes = classify(&r, &[d1, d2]).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![0, 1]);
    }
}
