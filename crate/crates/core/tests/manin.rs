use num_traits::Zero;

use simple_bialgebras::bdtriple::enumerate_bd_triples;
use simple_bialgebras::involution::{enumerate_canonical, fixed_point_basis, omega, varsigma};
use simple_bialgebras::linalg::{unit_vector, Matrix, Vector};
use simple_bialgebras::manin::{
    bialgebra_form, cobracket_matches, double_factorizable, double_imaginary, factorization_maps, manin_triple,
    psi_phi, realification, realify, verify_psi_phi, ManinCase,
};
use simple_bialgebras::parameter::{apply_reality, check_compatibility, solve_parameters, ContinuousParameter};
use simple_bialgebras::bdtriple::BDTriple;
use simple_bialgebras::rmatrix::BialgebraDatum;
use simple_bialgebras::rootsystem::{build_root_system, RootSystem};
use simple_bialgebras::scalar::{from_int, from_rational, imag_unit, rat, GaussianRational};
use simple_bialgebras::tensor::Tensor2;

fn rs(s: &str) -> RootSystem {
    build_root_system(s.parse().unwrap())
}

fn all_data(r: &RootSystem) -> Vec<BialgebraDatum> {
    let mut out = Vec::new();
    for sigma in enumerate_canonical(r) {
        let t = if sigma.table_row().unwrap().t_is_real() { from_int(2) } else { imag_unit() };
        for bd in enumerate_bd_triples(r) {
            if check_compatibility(&sigma, &bd).is_err() {
                continue;
            }
            let ps = apply_reality(&solve_parameters(r, &bd).unwrap(), &sigma, &bd).unwrap();
            let mut probes = vec![ps.base_point.clone()];
            for d in &ps.directions {
                probes.push(ContinuousParameter::new(ps.base_point.lambda().add(d)));
            }
            for lambda in probes {
                out.push(BialgebraDatum::new(r, sigma.clone(), bd.clone(), lambda, t.clone()).unwrap());
            }
        }
    }
    out
}

fn form(p: &Matrix, u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
    p.mul_vec(v).iter().zip(u).map(|(a, b)| a * b).sum()
}

#[test]
fn manin_invariants_sl2_sl3() {
    for t in ["A1", "A2"] {
        let r = rs(t);
        let data = all_data(&r);
        assert!(data.iter().any(|d| d.t.im.is_zero()) && data.iter().any(|d| d.t.re.is_zero()));
        for d in &data {
            let m = manin_triple(&r, d).unwrap();
            let expected = if d.t.im.is_zero() { ManinCase::Factorizable } else { ManinCase::ImaginaryFactorizable };
            assert_eq!(m.case, expected);
            assert_eq!(m.double_dim, 2 * r.dim());
            let report = m.verify();
            assert!(report.all(), "{t} {} {:?}", d.sort_key(), report);
            assert!(cobracket_matches(&r, d, &m).unwrap(), "{t} {}", d.sort_key());
            if m.case == ManinCase::ImaginaryFactorizable {
                assert!(verify_psi_phi(&r, d).unwrap().all(), "{t} {}", d.sort_key());
            }
        }
    }
}

#[test]
fn wrong_branch_is_rejected() {
    let r = rs("A2");
    for d in all_data(&r) {
        if d.t.im.is_zero() {
            assert!(double_imaginary(&r, &d).is_err());
        } else {
            assert!(double_factorizable(&r, &d).is_err());
        }
    }
}

/// `r±` intertwine the dual bracket `⟨[μ,τ], x⟩ = ⟨μ⊗τ, δx⟩` with the bracket of `g`.
#[test]
fn r_plus_minus_are_lie_maps() {
    for t in ["A1", "A2"] {
        let r = rs(t);
        let g = r.structure_constants();
        let n = r.dim();
        for d in all_data(&r) {
            let maps = factorization_maps(&r, &d.r).unwrap();
            let rm = d.r.to_matrix();
            let deltas: Vec<Matrix> = (0..n)
                .map(|c| {
                    let ad = g.ad(&unit_vector(n, c));
                    ad.mul(&rm).add(&rm.mul(&ad.transpose()))
                })
                .collect();
            for a in 0..n {
                for b in 0..n {
                    let dual: Vector = (0..n).map(|c| deltas[c][(a, b)].clone()).collect();
                    for map in [&maps.r_plus, &maps.r_minus] {
                        assert_eq!(map.mul_vec(&dual), g.bracket(&map.column(a), &map.column(b)));
                    }
                }
            }
        }
    }
}

#[test]
fn i_intertwines_pairings() {
    let r = rs("A2");
    for d in all_data(&r) {
        let maps = factorization_maps(&r, &d.r).unwrap();
        let f = bialgebra_form(&r, &d.t);
        assert_eq!(maps.i, r.killing_matrix().inverse().unwrap().scale(&d.t));
        // (I μ | I τ) = ⟨τ, I μ⟩
        assert_eq!(maps.i.transpose().mul(&f).mul(&maps.i), maps.i.transpose());
        assert_eq!(maps.r_plus.sub(&maps.r_minus), maps.i);
    }
}

/// `g^r` for split `sl(2,ℝ)`: `r₊` lands in the upper Borel, `r₋` in the
/// lower one, with opposite Cartan components.
#[test]
fn sl2_lr_is_borel_pairs() {
    let r = rs("A1");
    let lambda = ContinuousParameter::new(r.killing_h_inverse().scale(&from_rational(rat(1, 2))));
    let d = BialgebraDatum::new(&r, varsigma(&r), BDTriple::empty(), lambda, from_int(1)).unwrap();
    let maps = factorization_maps(&r, &d.r).unwrap();
    let (h, e, f) = (0, r.root_basis(0), r.root_basis(r.negative(0)));
    for a in 0..3 {
        let p = maps.r_plus.column(a);
        let m = maps.r_minus.column(a);
        assert!(p[f].re == rat(0, 1) && p[f].im == rat(0, 1));
        assert!(m[e].re == rat(0, 1) && m[e].im == rat(0, 1));
        assert_eq!(p[h], -m[h].clone());
    }
    let m = double_factorizable(&r, &d).unwrap();
    assert_eq!(m.sub2_basis.len(), 3);
    assert!(m.verify().all());
}

#[test]
fn su2_double_is_iwasawa() {
    let r = rs("A1");
    let lambda = ContinuousParameter::new(r.killing_h_inverse().scale(&from_rational(rat(1, 2))));
    let d = BialgebraDatum::new(&r, omega(&r), BDTriple::empty(), lambda, imag_unit()).unwrap();
    let m = double_imaginary(&r, &d).unwrap();
    assert_eq!(m.double_dim, 6);
    // The second subalgebra is solvable: its derived algebra is abelian and nonzero.
    let derived: Vec<Vector> = m
        .sub2_basis
        .iter()
        .flat_map(|u| m.sub2_basis.iter().map(|v| m.bracket.bracket(u, v)).collect::<Vec<_>>())
        .collect();
    let rank = Matrix::from_columns(&derived).rank();
    assert_eq!(rank, 2);
    for u in &derived {
        for v in &derived {
            assert!(m.bracket.bracket(u, v).iter().all(|z| z.re == rat(0, 1) && z.im == rat(0, 1)));
        }
    }
}

#[test]
fn realification_rules() {
    let r = rs("A2");
    let n = r.dim();
    let real = realification(&r).unwrap();
    let g = r.structure_constants();
    let sigma = omega(&r);
    let i = imag_unit();
    let probes: Vec<Vector> = (0..n)
        .map(|a| {
            let mut v = unit_vector(n, a);
            v[(a + 3) % n] = GaussianRational::new(rat(1, 2), rat(-2, 1));
            v
        })
        .collect();
    for x in &probes {
        let xp: Vector = x.iter().map(|z| z * &i).collect();
        for y in &probes {
            let yp: Vector = y.iter().map(|z| z * &i).collect();
            // [x′, y′] = −[x, y]
            let lhs = real.bracket(&realify(&xp), &realify(&yp));
            let rhs: Vector = realify(&g.bracket(x, y)).iter().map(|z| -z.clone()).collect();
            assert_eq!(lhs, rhs);
            assert_eq!(real.bracket(&realify(x), &realify(y)), realify(&g.bracket(x, y)));
        }
        // σ(x′) = −σ(x)′
        let lhs = sigma.apply(&xp);
        let rhs: Vector = sigma.apply(x).iter().map(|z| -(z * &i)).collect();
        assert_eq!(lhs, rhs);
    }
    // 2Re(u|v) = (u|v) − (σu|σv) for t imaginary
    let f = bialgebra_form(&r, &imag_unit());
    for u in &probes {
        for v in &probes {
            let uv = form(&f, u, v);
            let suv = form(&f, &sigma.apply(u), &sigma.apply(v));
            assert_eq!(uv.clone() - suv, GaussianRational::new(uv.re.clone() * rat(2, 1), rat(0, 1)));
        }
    }
}

#[test]
fn psi_on_real_points_and_inverse() {
    let r = rs("A1");
    let sigma = omega(&r);
    let pp = psi_phi(&r, &sigma).unwrap();
    assert_eq!(pp.psi.mul(&pp.phi), Matrix::identity(2 * r.dim()));
    let basis = fixed_point_basis(&r, &sigma).unwrap();
    for x in basis.vectors() {
        assert_eq!(pp.psi.mul_vec(&[x.clone(), x.clone()].concat()), realify(x));
    }
}

#[test]
fn degenerate_r_is_rejected() {
    let r = rs("A1");
    assert!(factorization_maps(&r, &Tensor2::zeros(r.dim())).is_err());
}
