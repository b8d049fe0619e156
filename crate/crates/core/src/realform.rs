//! Identification of `g^σ` through the Cartan involution `θ = σω`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::involution::{fixed_point_vectors, omega, Involution, InvolutionKind, TableRow};
use crate::linalg::{is_positive_definite, Matrix, Vector};
use crate::rootsystem::{RootSystem, Series, SimpleType};
use crate::scalar::{format_scalar, GaussianRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealFormReport {
    pub name: String,
    /// Matrix of `θ`, which is complex linear; serialized as sparse
    /// `(row, column, scalar)` entries.
    #[serde(serialize_with = "sparse_matrix")]
    pub theta: Matrix,
    pub dim_k: usize,
    pub dim_p: usize,
    pub character: i64,
    pub dc: usize,
    pub dnc: usize,
    /// Painted (non-compact imaginary) simple roots, 0-based.
    pub vogan_painted: BTreeSet<usize>,
    pub maximally_compact: bool,
}

fn sparse_matrix<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let entries: Vec<(usize, usize, String)> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !m[(i, j)].is_zero())
        .map(|(i, j)| (i, j, format_scalar(&m[(i, j)])))
        .collect();
    entries.serialize(s)
}

/// `θ = σ ∘ ω`; linear because both factors are semilinear.
pub fn cartan_involution(rs: &RootSystem, sigma: &Involution) -> Matrix {
    sigma.compose(&omega(rs))
}

fn trace(m: &Matrix) -> GaussianRational {
    (0..m.rows()).map(|i| m[(i, i)].clone()).sum()
}

/// `(n + tr θ)/2`: the dimension of the `+1` eigenspace of an involution.
fn plus_dimension(m: &Matrix) -> usize {
    let t = trace(m);
    assert!(t.im.is_zero() && t.re.is_integer());
    let n = m.rows() as i64;
    let t: i64 = t.re.to_integer().try_into().expect("small trace");
    ((n + t) / 2) as usize
}

fn cartan_block(rs: &RootSystem, theta: &Matrix) -> Matrix {
    let n = rs.rank();
    Matrix::from_fn(n, n, |i, j| theta[(i, j)].clone())
}

/// Bases of `t = h^θ` and `a = h^{−θ}`, in `h_{α_i}` coordinates.
pub fn cartan_decomposition(rs: &RootSystem, theta: &Matrix) -> (Vec<Vector>, Vec<Vector>) {
    let th = cartan_block(rs, theta);
    let id = Matrix::identity(rs.rank());
    (th.sub(&id).kernel(), th.add(&id).kernel())
}

/// Roots vanishing on `t` (real roots).
pub fn real_roots(rs: &RootSystem, theta: &Matrix) -> Vec<usize> {
    let (t, _) = cartan_decomposition(rs, theta);
    (0..rs.roots().len()).filter(|&k| t.iter().all(|h| rs.root_value(k, h).is_zero())).collect()
}

/// Roots vanishing on `a` (imaginary roots).
pub fn imaginary_roots(rs: &RootSystem, theta: &Matrix) -> Vec<usize> {
    let (_, a) = cartan_decomposition(rs, theta);
    (0..rs.roots().len()).filter(|&k| a.iter().all(|h| rs.root_value(k, h).is_zero())).collect()
}

/// Simple roots `α` with `θ x_α = −x_α`.
pub fn painted_roots(rs: &RootSystem, theta: &Matrix) -> BTreeSet<usize> {
    rs.simple_roots()
        .filter(|&i| {
            let b = rs.root_basis(i);
            theta[(b, b)] == -GaussianRational::one()
        })
        .collect()
}

/// `B_θ(x, y) = −κ(x, θy)` on the real basis of `g^σ`.
pub fn twisted_form(rs: &RootSystem, sigma: &Involution, theta: &Matrix) -> Result<Matrix> {
    let basis = fixed_point_vectors(rs, sigma)?;
    let v = basis.vectors();
    let w: Vec<Vector> = v.iter().map(|x| theta.mul_vec(x)).collect();
    Ok(Matrix::from_fn(v.len(), v.len(), |a, b| -rs.killing_form(&v[a], &w[b])))
}

/// Whether `θ` restricts to a Cartan involution of `g^σ`.
pub fn is_cartan_involution(rs: &RootSystem, sigma: &Involution, theta: &Matrix) -> Result<bool> {
    Ok(is_positive_definite(&twisted_form(rs, sigma, theta)?))
}

pub fn identify(rs: &RootSystem, sigma: &Involution) -> Result<RealFormReport> {
    let row = sigma.table_row().ok_or_else(|| Error::InvalidAutomorphism("general involution".into()))?;
    let theta = cartan_involution(rs, sigma);
    let dim = rs.dim();
    let dim_k = plus_dimension(&theta);
    let dim_p = dim - dim_k;
    let dc = plus_dimension(&cartan_block(rs, &theta));
    let dnc = rs.rank() - dc;
    let vogan_painted = painted_roots(rs, &theta);
    let maximally_compact = real_roots(rs, &theta).is_empty();
    let name = table_name(rs.simple_type(), row, &vogan_painted).unwrap_or_else(|| "unnormalized".to_string());
    Ok(RealFormReport {
        name,
        theta,
        dim_k,
        dim_p,
        character: dim_p as i64 - dim_k as i64,
        dc,
        dnc,
        vogan_painted,
        maximally_compact,
    })
}

/// Name of `g^σ` for a canonical involution, looked up from the type, the
/// table row and the painted set (0-based vertex indices).
pub fn table_name(t: SimpleType, row: TableRow, painted: &BTreeSet<usize>) -> Option<String> {
    use Series::*;
    let n = t.rank();
    let p: Vec<usize> = painted.iter().map(|i| i + 1).collect();
    let name = match row {
        TableRow::Split => match t.series() {
            A => format!("sl({},R)", n + 1),
            B => format!("so({},{})", n + 1, n),
            C => format!("sp({n},R)"),
            D => format!("so({n},{n})"),
            E => ["EI", "EV", "EVIII"][n - 6].to_string(),
            F => "FI".into(),
            G => "G".into(),
        },
        TableRow::Compact => match t.series() {
            A => format!("su({})", n + 1),
            B => format!("so({})", 2 * n + 1),
            C => format!("sp({n})"),
            D => format!("so({})", 2 * n),
            E => format!("e{n}"),
            F => "f4".into(),
            G => "g2".into(),
        },
        TableRow::VarsigmaMu => match t.series() {
            A if n.is_multiple_of(2) => format!("su({},{})", n / 2, n / 2 + 1),
            A => format!("su({},{})", n.div_ceil(2), n.div_ceil(2)),
            D => format!("so({},{})", n - 1, n + 1),
            E => "EII".into(),
            _ => return None,
        },
        TableRow::OmegaJ => {
            let [j] = p.as_slice() else { return None };
            let j = *j;
            match t.series() {
                A => format!("su({},{})", j, n + 1 - j),
                B => format!("so({},{})", 2 * j, 2 * n + 1 - 2 * j),
                C if j == n => format!("sp({n},R)"),
                C => format!("sp({},{})", j, n - j),
                D if j + 2 <= n => format!("so({},{})", 2 * j, 2 * n - 2 * j),
                D => format!("so*({})", 2 * n),
                E => match (n, j) {
                    (6, 2) => "EII".into(),
                    (6, 1 | 6) => "EIII".into(),
                    (7, 2) => "EV".into(),
                    (7, 1) => "EVI".into(),
                    (7, 7) => "EVII".into(),
                    (8, 1) => "EVIII".into(),
                    (8, 8) => "EIX".into(),
                    _ => return None,
                },
                F => match j {
                    1 => "FI".into(),
                    4 => "FII".into(),
                    _ => return None,
                },
                G => "G".into(),
            }
        }
        TableRow::OmegaMuJ => match (t.series(), p.as_slice()) {
            (A, []) if n.is_multiple_of(2) => format!("sl({},R)", n + 1),
            (A, []) => format!("sl({},H)", n.div_ceil(2)),
            (A, [_]) => format!("sl({},R)", n + 1),
            (D, []) => format!("so(1,{})", 2 * n - 1),
            (D, [j]) => {
                // on D4 a triality relabels the μ-fixed outer vertex as α1
                let j = if n == 4 && *j != 2 { 1 } else { *j };
                format!("so({},{})", 2 * j + 1, 2 * (n - j) - 1)
            }
            (E, []) => "EIV".into(),
            (E, [_]) => "EI".into(),
            _ => return None,
        },
    };
    Some(name)
}

/// `dim k` of a named real form of a complex simple Lie algebra of the
/// given dimension; used to cross-check the table lookup.
pub fn expected_dim_k(name: &str, dim: usize) -> Option<usize> {
    let exceptional = [
        ("EI", 36),
        ("EII", 38),
        ("EIII", 46),
        ("EIV", 52),
        ("EV", 63),
        ("EVI", 69),
        ("EVII", 79),
        ("EVIII", 120),
        ("EIX", 136),
        ("FI", 24),
        ("FII", 36),
        ("G", 6),
    ];
    if let Some((_, d)) = exceptional.iter().find(|(n, _)| *n == name) {
        return Some(*d);
    }
    if ["e6", "e7", "e8", "f4", "g2"].contains(&name) {
        return Some(dim);
    }
    let (head, args) = name.split_once('(')?;
    let args: Vec<&str> = args.strip_suffix(')')?.split(',').collect();
    let num = |k: usize| args.get(k).and_then(|s| s.parse::<usize>().ok());
    let so = |p: usize, q: usize| p * p.saturating_sub(1) / 2 + q * q.saturating_sub(1) / 2;
    match (head, args.len()) {
        ("su", 1) => Some(dim),
        ("so", 1) => Some(dim),
        ("sp", 1) => Some(dim),
        ("su", 2) => {
            let (p, q) = (num(0)?, num(1)?);
            Some(p * p + q * q - 1)
        }
        ("so", 2) => Some(so(num(0)?, num(1)?)),
        ("sp", 2) if args[1] == "R" => Some(num(0)?.pow(2)),
        ("sp", 2) => {
            let (p, q) = (num(0)?, num(1)?);
            Some(p * (2 * p + 1) + q * (2 * q + 1))
        }
        ("sl", 2) if args[1] == "R" => {
            let m = num(0)?;
            Some(m * (m - 1) / 2)
        }
        ("sl", 2) if args[1] == "H" => {
            let m = num(0)?;
            Some(m * (2 * m + 1))
        }
        ("so*", 1) => Some(num(0)?.pow(2) / 4),
        _ => None,
    }
}

/// Whether `θ` commutes with `σ` and squares to the identity.
pub fn theta_is_compatible(sigma: &Involution, theta: &Matrix) -> bool {
    let commutes = sigma.linear_part().mul(&theta.conj()) == theta.mul(sigma.linear_part());
    commutes && theta.mul(theta).is_identity()
}

/// `μ` and the painted set implied by a `J`, for reporting.
pub fn painted_from_j(sigma: &Involution) -> Option<BTreeSet<usize>> {
    match sigma.kind() {
        InvolutionKind::Omega { mu, j } => Some(mu.fixed_points().into_iter().filter(|a| !j.contains(a)).collect()),
        InvolutionKind::Varsigma { .. } => Some(BTreeSet::new()),
        InvolutionKind::General => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdtriple::diagram_automorphisms;
    use crate::involution::{canonical_involution, varsigma, CanonicalKind};
    use crate::rootsystem::build_root_system;
    use crate::scalar::from_int;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap())
    }

    #[test]
    fn compact_form() {
        let r = rs("A2");
        let rep = identify(&r, &omega(&r)).unwrap();
        assert!(rep.theta.is_identity());
        assert_eq!((rep.dim_k, rep.dim_p, rep.character), (8, 0, -8));
        assert_eq!(rep.name, "su(3)");
    }

    #[test]
    fn split_a1() {
        let r = rs("A1");
        let s = varsigma(&r);
        let rep = identify(&r, &s).unwrap();
        assert_eq!((rep.dim_k, rep.dim_p, rep.dc, rep.dnc), (1, 2, 0, 1));
        assert_eq!(rep.name, "sl(2,R)");
        assert!(is_cartan_involution(&r, &s, &rep.theta).unwrap());
    }

    #[test]
    fn steinberg_a2() {
        let r = rs("A2");
        let mu = diagram_automorphisms(r.cartan_matrix()).pop().unwrap();
        let s = canonical_involution(&r, CanonicalKind::Varsigma, &mu, &BTreeSet::new()).unwrap();
        let rep = identify(&r, &s).unwrap();
        assert_eq!((rep.dim_k, rep.dim_p, rep.character), (4, 4, 0));
        assert_eq!(rep.name, "su(1,2)");
        assert_eq!(rep.dc, 1);
    }

    #[test]
    fn dim_k_table() {
        assert_eq!(expected_dim_k("su(1,2)", 8), Some(4));
        assert_eq!(expected_dim_k("sl(3,R)", 8), Some(3));
        assert_eq!(expected_dim_k("so*(8)", 28), Some(16));
        assert_eq!(expected_dim_k("sp(2,R)", 10), Some(4));
        assert_eq!(expected_dim_k("sp(1,1)", 10), Some(6));
        assert_eq!(expected_dim_k("so(3,2)", 10), Some(4));
        assert_eq!(expected_dim_k("sl(2,H)", 15), Some(10));
        assert_eq!(expected_dim_k("su(4)", 15), Some(15));
    }

    #[test]
    fn painted_set_matches_j() {
        let r = rs("B3");
        let j: BTreeSet<usize> = [0, 2].into_iter().collect();
        let s = crate::involution::omega_j(&r, &j).unwrap();
        let rep = identify(&r, &s).unwrap();
        assert_eq!(rep.vogan_painted, painted_from_j(&s).unwrap());
        assert_eq!(rep.name, "so(4,3)");
        assert_eq!((rep.dc, rep.dnc), (3, 0));
        assert!(rep.maximally_compact);
        assert!(theta_is_compatible(&s, &rep.theta));
    }

    #[test]
    fn twisted_form_is_definite_on_small_types() {
        for t in ["A2", "B2", "G2", "A3"] {
            let r = rs(t);
            for s in crate::involution::enumerate_canonical(&r) {
                let th = cartan_involution(&r, &s);
                assert!(is_cartan_involution(&r, &s, &th).unwrap(), "{t} {:?}", s.kind());
            }
        }
    }

    #[test]
    fn unit_trace_helper() {
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { from_int(if i == 0 { 1 } else { -1 }) } else { from_int(0) });
        assert_eq!(plus_dimension(&m), 1);
    }
}
