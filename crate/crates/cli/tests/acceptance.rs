//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simple_bialgebras::bdtriple::{diagram_automorphisms, enumerate_bd_triples, BDTriple};
use simple_bialgebras::extract::extract_data;
use simple_bialgebras::involution::{enumerate_canonical, Involution};
use simple_bialgebras::linalg::{vec_scale, Matrix, Vector};
use simple_bialgebras::manin::{cobracket_matches, manin_triple, verify_psi_phi, ManinCase};
use simple_bialgebras::parameter::{
    apply_reality, check_compatibility, satisfies_reality, solve_parameters, ContinuousParameter, RealityKind,
};
use simple_bialgebras::realform::{expected_dim_k, identify, is_cartan_involution, painted_from_j, table_name};
use simple_bialgebras::rmatrix::{
    build_r, build_r0, build_r0_twisted, canonical_form, classify, sigma_twist, t_class, BialgebraDatum, TClass,
};
use simple_bialgebras::rootsystem::{build_root_system, RootSystem};
use simple_bialgebras::scalar::{from_int, from_rational, imag_unit, rat, GaussianRational};
use simple_bialgebras::tensor::{apply_linear_pair, apply_semilinear_pair, satisfies_cybe};
use simple_bialgebras::involution::TableRow;

fn rs(s: &str) -> RootSystem {
    build_root_system(s.parse().unwrap())
}

const RANK_LE_3: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];
const RANK_LE_4: [&str; 12] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"];

fn root_system_correctness() {
    // (type, #positive roots, dim g)
    let table = [
        ("A1", 1, 3),
        ("A2", 3, 8),
        ("A3", 6, 15),
        ("A4", 10, 24),
        ("B2", 4, 10),
        ("B3", 9, 21),
        ("B4", 16, 36),
        ("C3", 9, 21),
        ("C4", 16, 36),
        ("D4", 12, 28),
        ("G2", 6, 14),
        ("F4", 24, 52),
    ];
    for (t, npos, dim) in table {
        let r = rs(t);
        assert_eq!(r.num_positive(), npos, "{t}");
        assert_eq!(r.roots().len(), 2 * npos, "{t}");
        assert_eq!(r.dim(), dim, "{t}");
        let alg = r.structure_constants();
        assert!(alg.is_antisymmetric(), "{t}");
        assert!(alg.satisfies_jacobi(), "{t}");
        assert!(r.casimir().is_invariant(alg), "{t}");
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn bd_oracle(r: &RootSystem) -> Vec<BDTriple> {
    let n = r.rank();
    let kh = r.killing_h();
    let mut out = Vec::new();
    for m1 in 0u32..(1 << n) {
        for m2 in 0u32..(1 << n) {
            if m1.count_ones() != m2.count_ones() {
                continue;
            }
            let g1: Vec<usize> = (0..n).filter(|i| m1 >> i & 1 == 1).collect();
            let g2: Vec<usize> = (0..n).filter(|i| m2 >> i & 1 == 1).collect();
            for img in permutations(&g2) {
                let tau: BTreeMap<usize, usize> = g1.iter().copied().zip(img).collect();
                let iso = tau.iter().all(|(a, ta)| tau.iter().all(|(b, tb)| kh[(*a, *b)] == kh[(*ta, *tb)]));
                let nil = tau.keys().all(|&a| {
                    let mut x = a;
                    (0..=n).any(|_| match tau.get(&x) {
                        Some(&y) => {
                            x = y;
                            false
                        }
                        None => true,
                    })
                });
                if iso && nil {
                    out.push(BDTriple::from_map(tau));
                }
            }
        }
    }
    out.sort();
    out
}

fn bd_triple_oracle() {
    for t in RANK_LE_4 {
        let r = rs(t);
        let mut got = enumerate_bd_triples(&r);
        got.sort();
        assert_eq!(got, bd_oracle(&r), "{t}");
    }
    assert_eq!(enumerate_bd_triples(&rs("A2")).len(), 3);
}

/// Base point plus each direction separately.
fn probes(r: &RootSystem, bd: &BDTriple) -> Vec<ContinuousParameter> {
    let ps = solve_parameters(r, bd).unwrap();
    let mut out = vec![ps.base_point.clone()];
    for d in &ps.directions {
        out.push(ContinuousParameter::new(ps.base_point.lambda().add(d)));
    }
    out
}

fn cybe_and_casimir() {
    for t in RANK_LE_3 {
        let r = rs(t);
        for bd in enumerate_bd_triples(&r) {
            for lambda in probes(&r, &bd) {
                for tval in [from_rational(rat(3, 2)), imag_unit()] {
                    let m = build_r(&r, &bd, &lambda, &tval).unwrap();
                    assert!(satisfies_cybe(&m, r.structure_constants()).unwrap(), "{t} {}", bd.arrows());
                    assert_eq!(m.add(&m.flip()), r.casimir().scale(&tval), "{t} {}", bd.arrows());
                }
            }
        }
    }
}

fn coefficient_probes(k: usize) -> Vec<Vec<GaussianRational>> {
    let vals = [from_int(0), from_int(1), from_int(-1), imag_unit(), -imag_unit()];
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| vals.iter().map(move |x| [v.clone(), vec![x.clone()]].concat())).collect();
    }
    out
}

/// `(σ⊗σ) r₀ = r₀` for some admissible torus twist of the root vectors,
/// compared with the stability, `t` and `λ` predicates.
fn sigma_fixity_equivalence() {
    for t in ["A2", "A3", "B2"] {
        let r = rs(t);
        for sigma in enumerate_canonical(&r) {
            let row = sigma.table_row().unwrap();
            let mu = sigma.mu().unwrap().clone();
            for bd in enumerate_bd_triples(&r) {
                let ps = solve_parameters(&r, &bd).unwrap();
                let base = match apply_reality(&ps, &sigma, &bd) {
                    Ok(real) => real.base_point.clone(),
                    Err(_) => ps.base_point.clone(),
                };
                let compatible = check_compatibility(&sigma, &bd).is_ok();
                for tval in [from_int(1), from_rational(rat(5, 2)), imag_unit(), from_rational(rat(0, 1)) + imag_unit() * from_int(3)] {
                    let t_ok = t_class(&tval) == Some(if row.t_is_real() { TClass::RealPositive } else { TClass::ImaginaryPositive });
                    let twist = sigma_twist(&r, &sigma, &bd, &tval).unwrap();
                    for coeffs in coefficient_probes(ps.directions.len()) {
                        let mut m = base.lambda().clone();
                        for (d, c) in ps.directions.iter().zip(&coeffs) {
                            m = m.add(&d.scale(c));
                        }
                        let lambda = ContinuousParameter::new(m);
                        let fixed = match &twist {
                            Some(s) => {
                                let r0 = build_r0_twisted(&r, &bd, &lambda, &tval, Some(s)).unwrap();
                                apply_semilinear_pair(sigma.linear_part(), &r0).unwrap() == r0
                            }
                            None => false,
                        };
                        let predicate = compatible && t_ok && satisfies_reality(&lambda, RealityKind::for_row(row), &mu);
                        assert_eq!(fixed, predicate, "{t} {:?} {} t={tval} {coeffs:?}", sigma.kind(), bd.arrows());
                    }
                }
            }
        }
    }
}

fn exp_ad(r: &RootSystem, x: &[GaussianRational]) -> Matrix {
    let ad = r.structure_constants().ad(x);
    let mut out = Matrix::identity(r.dim());
    let mut term = Matrix::identity(r.dim());
    for k in 1..=2 * r.num_positive() {
        term = term.mul(&ad).scale(&from_rational(rat(1, k as i64)));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

fn random_inner(r: &RootSystem, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::identity(r.dim());
    for _ in 0..3 {
        let k = rng.gen_range(0..r.roots().len());
        let mut x = vec![from_int(0); r.dim()];
        x[r.root_basis(k)] = from_int(rng.gen_range(-2..=2));
        m = m.mul(&exp_ad(r, &x));
    }
    m
}

fn random_datum(r: &RootSystem, rng: &mut ChaCha8Rng) -> BialgebraDatum {
    let sigmas = enumerate_canonical(r);
    loop {
        let sigma = sigmas[rng.gen_range(0..sigmas.len())].clone();
        let triples: Vec<_> =
            enumerate_bd_triples(r).into_iter().filter(|bd| check_compatibility(&sigma, bd).is_ok()).collect();
        let bd = triples[rng.gen_range(0..triples.len())].clone();
        let ps = apply_reality(&solve_parameters(r, &bd).unwrap(), &sigma, &bd).unwrap();
        let coeffs: Vec<GaussianRational> =
            (0..ps.directions.len()).map(|_| from_rational(rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)))).collect();
        let lambda = ps.point(&coeffs).unwrap();
        let scale = from_rational(rat(rng.gen_range(1..=4), rng.gen_range(1..=3)));
        let t = if sigma.table_row().unwrap().t_is_real() { scale } else { imag_unit() * scale };
        if let Ok(d) = BialgebraDatum::new(r, sigma, bd, lambda, t) {
            return d;
        }
    }
}

fn round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..50 {
        let r = rs(RANK_LE_3[trial % RANK_LE_3.len()]);
        let d = random_datum(&r, &mut rng);
        let psi = random_inner(&r, &mut rng);
        let moved = apply_linear_pair(&psi, &d.r0);
        let sigma = Involution::general(psi.mul(d.sigma.linear_part()).mul(&psi.inverse().unwrap().conj()));
        let x = extract_data(&r, &sigma, &moved).unwrap();

        // H = −t Σ_{β>0} h_β, moved by ψ
        let sum: Vector = r.positive_roots().fold(vec![from_int(0); r.dim()], |acc, k| {
            acc.iter().zip(r.h_vector(k)).map(|(a, b)| a + b).collect()
        });
        assert_eq!(x.h_element, psi.mul_vec(&vec_scale(&sum, &-d.t.clone())), "trial {trial}");
        assert_eq!(r.structure_constants().ad(&x.h_element).kernel().len(), r.rank());
        assert_eq!(x.t, d.t);
        assert_eq!(apply_linear_pair(&x.basis_change, &build_r0(&r, &x.bd, &x.lambda, &x.t).unwrap()), moved);
        let back = x.datum(&r).unwrap();
        assert_eq!(
            canonical_form(&r, &back).unwrap().sort_key(),
            canonical_form(&r, &d).unwrap().sort_key(),
            "trial {trial}"
        );
    }
}

/// `dim k` read off `θ` on the root spaces: fixed basis vectors and swapped pairs.
fn dim_k_by_counting(r: &RootSystem, theta: &Matrix) -> usize {
    let one = from_int(1);
    let mut count = 0;
    for a in 0..r.dim() {
        for b in 0..r.dim() {
            if a == b && theta[(b, a)] == one {
                count += 2;
            } else if a != b && theta[(b, a)] != from_int(0) {
                count += 1;
            }
        }
    }
    count / 2
}

fn identification() {
    for t in ["A1", "A2", "A3", "B2", "G2"] {
        let r = rs(t);
        for s in enumerate_canonical(&r) {
            let rep = identify(&r, &s).unwrap();
            if rep.vogan_painted.len() > 1 {
                continue;
            }
            let row = s.table_row().unwrap();
            let ctx = format!("{t} {:?}", s.kind());
            assert_eq!(Some(rep.vogan_painted.clone()), painted_from_j(&s), "{ctx}");
            assert_eq!(Some(rep.name.clone()), table_name(r.simple_type(), row, &rep.vogan_painted), "{ctx}");
            assert_eq!(expected_dim_k(&rep.name, r.dim()), Some(rep.dim_k), "{ctx}");
            assert_eq!(rep.dim_k, dim_k_by_counting(&r, &rep.theta), "{ctx}");
            assert_eq!(rep.dim_k + rep.dim_p, r.dim(), "{ctx}");
            assert_eq!(rep.character, rep.dim_p as i64 - rep.dim_k as i64, "{ctx}");
            assert_eq!(rep.dc + rep.dnc, r.rank(), "{ctx}");
            assert!(is_cartan_involution(&r, &s, &rep.theta).unwrap(), "{ctx}");
            match row {
                TableRow::Split => assert_eq!((rep.dc, rep.dnc), (0, r.rank()), "{ctx}"),
                TableRow::Compact => assert_eq!(rep.character, -(r.dim() as i64), "{ctx}"),
                _ => {}
            }
        }
    }
    let r = rs("A2");
    let s = enumerate_canonical(&r).into_iter().find(|s| s.table_row() == Some(TableRow::VarsigmaMu)).unwrap();
    let rep = identify(&r, &s).unwrap();
    assert_eq!((rep.name.as_str(), rep.character), ("su(1,2)", 0));
}

fn data_with_probes(r: &RootSystem) -> Vec<BialgebraDatum> {
    let mut out = Vec::new();
    for sigma in enumerate_canonical(r) {
        let t = if sigma.table_row().unwrap().t_is_real() { from_int(2) } else { imag_unit() };
        for bd in enumerate_bd_triples(r) {
            let Ok(ps) = apply_reality(&solve_parameters(r, &bd).unwrap(), &sigma, &bd) else { continue };
            let mut lambdas = vec![ps.base_point.clone()];
            for d in &ps.directions {
                lambdas.push(ContinuousParameter::new(ps.base_point.lambda().add(d)));
            }
            for lambda in lambdas {
                out.push(BialgebraDatum::new(r, sigma.clone(), bd.clone(), lambda, t.clone()).unwrap());
            }
        }
    }
    out
}

fn manin_triples() {
    for t in ["A1", "A2"] {
        let r = rs(t);
        let data = data_with_probes(&r);
        assert!(data.iter().any(|d| d.t_class() == TClass::RealPositive));
        assert!(data.iter().any(|d| d.t_class() == TClass::ImaginaryPositive));
        for d in &data {
            let m = manin_triple(&r, d).unwrap();
            let expected =
                if d.t_class() == TClass::RealPositive { ManinCase::Factorizable } else { ManinCase::ImaginaryFactorizable };
            assert_eq!(m.case, expected);
            assert!(m.verify().all(), "{t} {}", d.sort_key());
            assert!(cobracket_matches(&r, d, &m).unwrap(), "{t} {}", d.sort_key());
            if m.case == ManinCase::ImaginaryFactorizable {
                assert!(verify_psi_phi(&r, d).unwrap().all(), "{t} {}", d.sort_key());
            }
        }
    }
}

/// Classes of `classify` against union-find over the relation
/// "equal, or equal after conjugating by the flip".
fn classification_dedup() {
    for t in ["A2", "A3"] {
        let r = rs(t);
        let flip = diagram_automorphisms(r.cartan_matrix()).into_iter().find(|m| !m.is_identity()).unwrap();
        let mut data = data_with_probes(&r);
        let flipped: Vec<BialgebraDatum> = data.iter().map(|d| d.conjugate(&r, &flip).unwrap()).collect();
        data.extend(flipped);
        let keys: Vec<String> = data.iter().map(|d| d.sort_key()).collect();
        let flip_keys: Vec<String> = data.iter().map(|d| d.conjugate(&r, &flip).unwrap().sort_key()).collect();

        let n = data.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let root = find(p, p[x]);
                p[x] = root;
            }
            p[x]
        }
        for i in 0..n {
            for j in 0..n {
                if keys[i] == keys[j] || flip_keys[i] == keys[j] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut oracle: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            oracle.entry(root).or_default().insert(i);
        }
        let oracle: BTreeSet<BTreeSet<usize>> = oracle.into_values().collect();
        let got: BTreeSet<BTreeSet<usize>> =
            classify(&r, &data).unwrap().into_iter().map(|c| c.members.into_iter().collect()).collect();
        assert_eq!(got, oracle, "{t}");
        assert!(got.iter().any(|c| c.len() > 1), "{t}");
    }
}

fn determinism() {
    let bin = env!("CARGO_BIN_EXE_bialg");
    for args in [
        vec!["enumerate", "--type", "A3", "--what", "bialgebras"],
        vec!["enumerate", "--type", "B3", "--what", "bialgebras", "--format", "csv"],
        vec!["enumerate", "--type", "D4", "--what", "bd-triples"],
    ] {
        let a = Command::new(bin).args(&args).output().unwrap();
        let b = Command::new(bin).args(&args).output().unwrap();
        assert!(a.status.success() && !a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn main() {
    let criteria: [(&str, fn(), u64); 9] = [
        ("root-system correctness", root_system_correctness, 10),
        ("BD-triple oracle equivalence", bd_triple_oracle, 30),
        ("CYBE and r + r21 = tΩ", cybe_and_casimir, 60),
        ("σ-fixity of r0 iff stability/t/λ conditions", sigma_fixity_equivalence, 60),
        ("extract/build round trip", round_trip, 30),
        ("real form identification", identification, 30),
        ("Manin triples", manin_triples, 30),
        ("classification dedup", classification_dedup, 10),
        ("enumerate determinism", determinism, 60),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let verdict = if ok && in_time { "PASS" } else { "FAIL" };
        let note = if ok && !in_time { format!(" (over {limit} s limit)") } else { String::new() };
        println!("criterion {}: {verdict} {name} [{:.2} s]{note}", k + 1, elapsed.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
