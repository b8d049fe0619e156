use std::collections::BTreeSet;

use simple_bialgebras::involution::{enumerate_canonical, omega_j, InvolutionKind, TableRow};
use simple_bialgebras::realform::{
    expected_dim_k, identify, imaginary_roots, is_cartan_involution, painted_from_j, real_roots, theta_is_compatible,
};
use simple_bialgebras::rootsystem::{build_root_system, RootSystem};

fn rs(s: &str) -> RootSystem {
    build_root_system(s.parse().unwrap())
}

/// Dimension of `k` from the `±1` eigenvalue count of `θ` on root spaces,
/// without traces: roots `β` with `θ x_β = ±x_β`, plus pairs swapped by `θ`.
fn dim_k_by_counting(r: &RootSystem, theta: &simple_bialgebras::linalg::Matrix) -> usize {
    let one = simple_bialgebras::scalar::from_int(1);
    let dim = r.dim();
    let mut count = 0;
    for a in 0..dim {
        for b in 0..dim {
            if theta[(b, a)] == one && a == b {
                count += 2;
            } else if a != b && !num_traits::Zero::is_zero(&theta[(b, a)]) {
                count += 1;
            }
        }
    }
    count / 2
}

fn check_type(t: &str) {
    let r = rs(t);
    for s in enumerate_canonical(&r) {
        let rep = identify(&r, &s).unwrap();
        let row = s.table_row().unwrap();
        assert_eq!(rep.dim_k + rep.dim_p, r.dim());
        assert_eq!(rep.dc + rep.dnc, r.rank());
        assert_eq!(rep.dim_k, dim_k_by_counting(&r, &rep.theta), "{t} {:?}", s.kind());
        assert!(theta_is_compatible(&s, &rep.theta));
        assert_eq!(Some(rep.vogan_painted.clone()), painted_from_j(&s));
        if rep.name != "unnormalized" {
            assert_eq!(expected_dim_k(&rep.name, r.dim()), Some(rep.dim_k), "{t} {:?} {}", s.kind(), rep.name);
        }
        let mu = s.mu().unwrap();
        let moved = r.rank() - mu.fixed_points().len();
        match row {
            TableRow::Split => {
                assert_eq!((rep.dc, rep.dnc), (0, r.rank()));
                assert_eq!(rep.character, r.rank() as i64);
            }
            TableRow::VarsigmaMu => {
                assert_eq!(rep.dc, moved / 2);
                assert!(imaginary_roots(&r, &rep.theta).is_empty());
            }
            TableRow::Compact => {
                assert_eq!(rep.character, -(r.dim() as i64));
                assert_eq!(rep.dim_p, 0);
            }
            TableRow::OmegaJ => {
                assert_eq!((rep.dc, rep.dnc), (r.rank(), 0));
                assert!(real_roots(&r, &rep.theta).is_empty());
            }
            TableRow::OmegaMuJ => {
                assert!(real_roots(&r, &rep.theta).is_empty());
                assert!(rep.maximally_compact);
            }
        }
    }
}

#[test]
fn classical_low_rank() {
    for t in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "D6"] {
        check_type(t);
    }
}

#[test]
fn exceptional() {
    for t in ["G2", "F4", "E6", "E7"] {
        check_type(t);
    }
}

#[test]
fn e8_named_forms() {
    let r = rs("E8");
    for p in [0usize, 7] {
        let j: BTreeSet<usize> = (0..8).filter(|&i| i != p).collect();
        let s = omega_j(&r, &j).unwrap();
        let rep = identify(&r, &s).unwrap();
        assert_eq!(expected_dim_k(&rep.name, r.dim()), Some(rep.dim_k), "{}", rep.name);
    }
}

#[test]
fn compact_roots_are_j() {
    let r = rs("C3");
    for s in enumerate_canonical(&r) {
        if let InvolutionKind::Omega { mu, j } = s.kind() {
            if mu.is_identity() {
                let rep = identify(&r, &s).unwrap();
                let compact: BTreeSet<usize> = (0..3).filter(|i| !rep.vogan_painted.contains(i)).collect();
                assert_eq!(&compact, j);
            }
        }
    }
}

#[test]
fn cartan_involution_is_certified() {
    for t in ["A3", "B3", "C3", "G2", "D4"] {
        let r = rs(t);
        for s in enumerate_canonical(&r) {
            let rep = identify(&r, &s).unwrap();
            assert!(is_cartan_involution(&r, &s, &rep.theta).unwrap());
        }
    }
}
