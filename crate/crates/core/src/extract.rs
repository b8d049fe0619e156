//! Recovery of the classification data `(Δ, bd, λ, t)` from an
//! almost-factorizable `r₀` given in an arbitrary Cartan position.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bdtriple::{precedence_pairs, BDTriple};
use crate::error::{Error, Result};
use crate::involution::{normalize_involution, Involution};
use crate::linalg::{vec_is_zero, vec_scale, Matrix, Vector};
use crate::parameter::ContinuousParameter;
use crate::rmatrix::{build_r0, build_r0_twisted, character, BialgebraDatum};
use crate::rootsystem::RootSystem;
use crate::scalar::{format_scalar, from_rational, imag_unit, rat, rational_sqrt, GaussianRational, Rational};
use crate::tensor::{apply_linear_pair, apply_semilinear_pair, cybe_sparse, Tensor2};

#[derive(Clone, Debug)]
pub struct ExtractedData {
    /// Bracket contraction `H` of `r₀`; equals `−t Σ_{α>0} h_α` in the
    /// recovered Cartan subalgebra.
    pub h_element: Vector,
    /// `φ`, columns the images of the standard basis. `(φ⊗φ)·build_r0 = r₀`.
    pub basis_change: Matrix,
    pub bd: BDTriple,
    pub lambda: ContinuousParameter,
    pub t: GaussianRational,
    /// `φ⁻¹ σ φ`.
    pub sigma: Involution,
}

impl ExtractedData {
    /// Images of `h_{α_1}, …, h_{α_n}`, a basis of the centralizer of `H`.
    pub fn cartan_basis(&self, rs: &RootSystem) -> Vec<Vector> {
        (0..rs.rank()).map(|i| self.basis_change.column(i)).collect()
    }

    /// The datum after rescaling the simple root vectors so that `σ` is
    /// canonical.
    pub fn datum(&self, rs: &RootSystem) -> Result<BialgebraDatum> {
        let norm = normalize_involution(rs, &self.sigma)?;
        BialgebraDatum::new(rs, norm.canonical(rs)?, self.bd.clone(), self.lambda.clone(), self.t.clone())
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::NotAlmostFactorizable(msg.into())
}

/// `h_{2ρ} = Σ_{α>0} h_α`.
fn h_two_rho(rs: &RootSystem) -> Vector {
    let mut v = vec![GaussianRational::zero(); rs.dim()];
    for k in rs.positive_roots() {
        for (a, c) in rs.h_vector(k).iter().enumerate() {
            v[a] += c;
        }
    }
    v
}

/// `t ∈ ℝ₊ ∪ iℝ₊` with `t² = κ(H,H) / κ(h_{2ρ}, h_{2ρ})`.
fn recover_t(rs: &RootSystem, h: &[GaussianRational]) -> Result<GaussianRational> {
    let rho = h_two_rho(rs);
    let t2 = rs.killing_form(h, h) / rs.killing_form(&rho, &rho);
    if !t2.im.is_zero() {
        return Err(fail(format!("t² = {} is not real", format_scalar(&t2))));
    }
    let root = rational_sqrt(&t2.re.abs())
        .ok_or_else(|| fail(format!("t² = {} has no rational square root", format_scalar(&t2))))?;
    Ok(if t2.re.is_positive() { from_rational(root) } else { imag_unit() * from_rational(root) })
}

fn rationalize(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = a as i128;
        let (p2, q2) = (ai.checked_mul(p1)?.checked_add(p0)?, ai.checked_mul(q1)?.checked_add(q0)?);
        if (x - p2 as f64 / q2 as f64).abs() <= 1e-9 * x.abs().max(1.0) {
            return Some(Rational::new(BigInt::from(p2), BigInt::from(q2)));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = y - a;
        if frac.abs() < 1e-15 || q2 > 1 << 40 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

fn numeric_eigenvalues(m: &Matrix) -> Vec<Complex<f64>> {
    let k = m.rows();
    let f = |z: &GaussianRational| Complex::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN));
    let dm = DMatrix::from_fn(k, k, |i, j| f(&m[(i, j)]));
    let (_, t) = dm.schur().unpack();
    (0..k).map(|i| t[(i, i)]).collect()
}

/// Splits the `ad H`-eigenspace spanned by `basis` into root lines of the
/// generic element `hg`, guided by floating-point eigenvalues and verified
/// exactly.
fn split_eigenspace(adg: &Matrix, basis: &[Vector]) -> Option<Vec<Vector>> {
    let m = basis.len();
    if m == 1 {
        return Some(basis.to_vec());
    }
    let b = Matrix::from_columns(basis);
    let (_, pivots) = b.transpose().rref();
    let bi = Matrix::from_fn(m, m, |i, j| b[(pivots[i], j)].clone());
    let y = adg.mul(&b);
    let yi = Matrix::from_fn(m, m, |i, j| y[(pivots[i], j)].clone());
    let restricted = bi.inverse()?.mul(&yi);
    let mut values: Vec<GaussianRational> = Vec::new();
    for z in numeric_eigenvalues(&restricted) {
        let v = GaussianRational::new(rationalize(z.re)?, rationalize(z.im)?);
        if !values.contains(&v) {
            values.push(v);
        }
    }
    if values.len() != m {
        return None;
    }
    let mut out = Vec::with_capacity(m);
    for v in values {
        let shifted = restricted.sub(&Matrix::identity(m).scale(&v));
        let ker = shifted.kernel();
        if ker.len() != 1 {
            return None;
        }
        out.push(b.mul_vec(&ker[0]));
    }
    Some(out)
}

/// `f` with `ad(h) y = f·y`, or `None` when `y` is not an eigenvector.
fn eigenvalue(ad: &Matrix, y: &[GaussianRational]) -> Option<GaussianRational> {
    let p = y.iter().position(|z| !z.is_zero())?;
    let image = ad.mul_vec(y);
    let f = &image[p] / &y[p];
    (image == vec_scale(y, &f)).then_some(f)
}

fn match_simple(
    rs: &RootSystem,
    gram: &dyn Fn(usize, usize) -> GaussianRational,
    candidates: &[usize],
    chosen: &mut Vec<usize>,
) -> bool {
    let i = chosen.len();
    if i == rs.rank() {
        return true;
    }
    for &c in candidates {
        if chosen.contains(&c) {
            continue;
        }
        let ok = (0..=i).all(|j| {
            let cj = if j == i { c } else { chosen[j] };
            gram(c, cj) == from_rational(rs.root_inner(i, j))
        });
        if ok {
            chosen.push(c);
            if match_simple(rs, gram, candidates, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Recovers `(H, h, Δ, bd, λ, t)` from an almost-factorizable `r₀` that is
/// `(σ⊗σ)`-fixed. The returned basis change carries the standard form of
/// the recovered datum onto `r₀` exactly.
pub fn extract_data(rs: &RootSystem, sigma: &Involution, r0: &Tensor2) -> Result<ExtractedData> {
    let alg = rs.structure_constants();
    let (n, dim) = (rs.rank(), rs.dim());
    if r0.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: r0.dim() });
    }
    if !r0.is_antisymmetric() {
        return Err(fail("r₀ is not antisymmetric"));
    }
    if apply_semilinear_pair(sigma.linear_part(), r0)? != *r0 {
        return Err(fail("r₀ is not σ⊗σ-fixed"));
    }
    let h = r0.bracket_contraction(alg);
    if vec_is_zero(&h) {
        return if cybe_sparse(r0, alg)?.is_empty() { Err(Error::Triangular) } else { Err(fail("H = 0")) };
    }
    let t = recover_t(rs, &h)?;
    let adh = alg.ad(&h);
    let cartan = adh.kernel();
    if cartan.len() != n {
        return Err(Error::NotRegular(cartan.len()));
    }

    // Eigenvalues of ad H are −t·(β, 2ρ).
    let mut levels: BTreeMap<Rational, usize> = BTreeMap::new();
    for k in 0..rs.roots().len() {
        let q: Rational = rs.positive_roots().map(|p| rs.root_inner(k, p)).sum();
        *levels.entry(q).or_default() += 1;
    }
    let mut spaces = Vec::new();
    for (q, count) in &levels {
        let shift = &t * from_rational(q.clone());
        let op = adh.add(&Matrix::identity(dim).scale(&shift));
        let ker = op.kernel();
        if ker.len() != *count {
            return Err(fail(format!("ad H eigenspace at level {q} has dimension {}", ker.len())));
        }
        spaces.push(ker);
    }

    let ads: Vec<Matrix> = cartan.iter().map(|c| alg.ad(c)).collect();
    const WEIGHTS: [i64; 10] = [1, 3, 7, 13, 29, 53, 97, 191, 383, 769];
    let mut lines = None;
    for attempt in 0..8 {
        let mut hg = vec![GaussianRational::zero(); dim];
        for (j, c) in cartan.iter().enumerate() {
            let w = from_rational(rat(WEIGHTS[(j + attempt) % WEIGHTS.len()] * (attempt as i64 + 1), 1));
            for (a, z) in c.iter().enumerate() {
                hg[a] += &w * z;
            }
        }
        let adg = alg.ad(&hg);
        let split: Option<Vec<Vec<Vector>>> = spaces.iter().map(|s| split_eigenspace(&adg, s)).collect();
        if let Some(split) = split {
            lines = Some(split.into_iter().flatten().collect::<Vec<_>>());
            break;
        }
    }
    let lines = lines.ok_or_else(|| fail("could not split the root spaces over Q(i)"))?;

    let mut functionals: Vec<Vector> = Vec::with_capacity(lines.len());
    for y in &lines {
        let f: Option<Vector> = ads.iter().map(|ad| eigenvalue(ad, y)).collect();
        functionals.push(f.ok_or_else(|| fail("root line is not h-stable"))?);
    }
    let index: HashMap<Vector, usize> = functionals.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let minus_t = -t.clone();
    let positive: Vec<usize> = (0..lines.len())
        .filter(|&i| {
            let q = eigenvalue(&adh, &lines[i]).map(|v| v / &minus_t);
            q.is_some_and(|q| q.re.is_positive())
        })
        .collect();
    if positive.len() * 2 != lines.len() {
        return Err(fail("positive system has the wrong size"));
    }
    let pos_set: BTreeSet<usize> = positive.iter().copied().collect();
    let simple: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&c| {
            !positive.iter().any(|&a| {
                let rest: Vector = functionals[c].iter().zip(&functionals[a]).map(|(x, y)| x - y).collect();
                index.get(&rest).is_some_and(|b| pos_set.contains(b))
            })
        })
        .collect();
    if simple.len() != n {
        return Err(fail("wrong number of simple roots"));
    }

    let gram_h = Matrix::from_fn(n, n, |i, j| rs.killing_form(&cartan[i], &cartan[j]));
    let gram_inv = gram_h.inverse().ok_or_else(|| fail("Killing form degenerate on the centralizer"))?;
    let gram = |a: usize, b: usize| -> GaussianRational {
        let v = gram_inv.mul_vec(&functionals[b]);
        functionals[a].iter().zip(&v).map(|(x, y)| x * y).sum()
    };
    let mut chosen = Vec::new();
    if !match_simple(rs, &gram, &simple, &mut chosen) {
        return Err(fail("simple roots do not match the Cartan matrix"));
    }

    let mut img: Vec<Option<Vector>> = vec![None; dim];
    for (i, &c) in chosen.iter().enumerate() {
        let neg: Vector = functionals[c].iter().map(|z| -z.clone()).collect();
        let e = lines[c].clone();
        let f0 = &lines[index[&neg]];
        let f = vec_scale(f0, &(GaussianRational::one() / rs.killing_form(&e, f0)));
        img[i] = Some(alg.bracket(&e, &f));
        img[rs.root_basis(i)] = Some(e);
        img[rs.root_basis(rs.negative(i))] = Some(f);
    }
    for k in rs.positive_roots().skip(n) {
        let (j, g) = rs.extraspecial(k).ok_or_else(|| fail("missing extraspecial pair"))?;
        for (a, b, target) in [
            (j, g, k),
            (rs.negative(j), rs.negative(g), rs.negative(k)),
        ] {
            let nconst = alg
                .bracket_basis(rs.root_basis(a), rs.root_basis(b))
                .iter()
                .find(|(idx, _)| *idx == rs.root_basis(target))
                .map(|(_, v)| v.clone())
                .ok_or_else(|| fail("extraspecial bracket vanishes"))?;
            let x = alg.bracket(img[rs.root_basis(a)].as_ref().unwrap(), img[rs.root_basis(b)].as_ref().unwrap());
            img[rs.root_basis(target)] = Some(vec_scale(&x, &from_rational(Rational::one() / nconst)));
        }
    }
    let cols: Vec<Vector> = img.into_iter().map(Option::unwrap).collect();
    let phi = Matrix::from_columns(&cols);
    let phi_inv = phi.inverse().ok_or_else(|| fail("basis change is singular"))?;
    let std = apply_linear_pair(&phi_inv, r0);

    let t_inv = GaussianRational::one() / &t;
    let a = Matrix::from_fn(n, n, |i, j| std.get(i, j) * &t_inv);
    let lambda = ContinuousParameter::new(rs.killing_h_inverse().scale(&from_rational(rat(1, 2))).add(&a));
    let coeff = |i: usize, j: usize| std.get(rs.root_basis(rs.negative(i)), rs.root_basis(j)) * &t_inv;
    let s_of = |i: usize| -> BTreeSet<usize> { (0..n).filter(|&j| j != i && !coeff(i, j).is_zero()).collect() };
    let mut tau = BTreeMap::new();
    for i in 0..n {
        let si = s_of(i);
        if si.is_empty() {
            continue;
        }
        let next = si.iter().copied().find(|&j| {
            let mut sj = s_of(j);
            sj.insert(j);
            sj == si
        });
        tau.insert(i, next.ok_or_else(|| fail("precedence terms do not form T-chains"))?);
    }
    let bd = BDTriple::new(tau, rs)?;
    debug_assert!(precedence_pairs(rs, &bd)
        .iter()
        .all(|&(a, b)| alg.bracket_basis(rs.root_basis(rs.negative(a)), rs.root_basis(b)).is_empty()));
    if !lambda.is_valid(rs, &bd) {
        return Err(fail("Cartan part is not a continuous parameter for the recovered triple"));
    }

    let mut s = vec![GaussianRational::one(); n];
    for &start in bd.gamma1() {
        if bd.gamma2().contains(&start) {
            continue;
        }
        let mut cur = start;
        while let Some(&next) = bd.tau().get(&cur) {
            s[next] = &s[cur] * coeff(cur, next);
            cur = next;
        }
    }
    if build_r0_twisted(rs, &bd, &lambda, &t, Some(&s))? != std {
        return Err(fail("r₀ is not of Belavin-Drinfeld form in the recovered basis"));
    }
    let torus = Matrix::from_fn(dim, dim, |i, j| match (i == j, rs.basis_root(i)) {
        (false, _) => GaussianRational::zero(),
        (true, None) => GaussianRational::one(),
        (true, Some(k)) => character(&s, rs.root(k)),
    });
    let torus_inv = Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            GaussianRational::one() / &torus[(i, i)]
        } else {
            GaussianRational::zero()
        }
    });
    let basis_change = phi.mul(&torus);
    let change_inv = torus_inv.mul(&phi_inv);
    debug_assert!(apply_linear_pair(&basis_change, &build_r0(rs, &bd, &lambda, &t)?) == *r0);
    let expected_h = basis_change.mul_vec(&vec_scale(&h_two_rho(rs), &minus_t));
    if expected_h != h {
        return Err(fail("H ≠ −t Σ h_α in the recovered Cartan subalgebra"));
    }
    let sigma = Involution::general(change_inv.mul(sigma.linear_part()).mul(&basis_change.conj()));
    Ok(ExtractedData { h_element: h, basis_change, bd, lambda, t, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdtriple::BDTriple;
    use crate::involution::{omega, varsigma};
    use crate::rootsystem::build_root_system;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap())
    }

    #[test]
    fn rationalize_small_fractions() {
        assert_eq!(rationalize(0.5), Some(rat(1, 2)));
        assert_eq!(rationalize(-7.0 / 3.0), Some(rat(-7, 3)));
        assert_eq!(rationalize(0.0), Some(rat(0, 1)));
    }

    #[test]
    fn sl2_round_trip() {
        let r = rs("A1");
        let half = from_rational(rat(1, 2));
        let lambda = ContinuousParameter::new(r.killing_h_inverse().scale(&half));
        for (sigma, t) in [(varsigma(&r), from_rational(rat(3, 1))), (omega(&r), imag_unit())] {
            let r0 = build_r0(&r, &BDTriple::empty(), &lambda, &t).unwrap();
            let x = extract_data(&r, &sigma, &r0).unwrap();
            assert_eq!(x.t, t);
            assert!(x.bd.is_empty());
            assert_eq!(x.lambda, lambda);
            assert_eq!(x.basis_change, Matrix::identity(r.dim()));
        }
    }

    #[test]
    fn zero_is_triangular() {
        let r = rs("A2");
        let z = Tensor2::zeros(r.dim());
        assert_eq!(extract_data(&r, &varsigma(&r), &z).unwrap_err(), Error::Triangular);
    }
}
