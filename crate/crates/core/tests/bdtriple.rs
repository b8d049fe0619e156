use std::collections::BTreeMap;

use simple_bialgebras::bdtriple::{enumerate_bd_triples, precedence_pairs, BDTriple};
use simple_bialgebras::rootsystem::{build_root_system, RootSystem};

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

/// Brute force over all subset pairs and bijections, with the inner product
/// read from the Killing form and nilpotency checked by iterating τ.
fn oracle(rs: &RootSystem) -> Vec<BDTriple> {
    let n = rs.rank();
    let kh = rs.killing_h();
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

#[test]
fn enumeration_matches_oracle_up_to_rank_four() {
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"] {
        let rs = build_root_system(name.parse().unwrap());
        let mut got = enumerate_bd_triples(&rs);
        for bd in &got {
            bd.validate(&rs).unwrap();
        }
        got.sort();
        assert_eq!(got, oracle(&rs), "{name}");
    }
}

#[test]
fn enumeration_is_canonically_ordered() {
    let rs = build_root_system("A3".parse().unwrap());
    let got = enumerate_bd_triples(&rs);
    let key = |b: &BDTriple| (b.gamma1().len(), b.gamma1().to_vec(), b.gamma2().to_vec(), b.tau().clone());
    assert!(got.windows(2).all(|w| key(&w[0]) < key(&w[1])));
    assert_eq!(got.first(), Some(&BDTriple::empty()));
}

#[test]
fn precedence_is_a_strict_partial_order() {
    for name in ["A3", "A4", "D4"] {
        let rs = build_root_system(name.parse().unwrap());
        for bd in enumerate_bd_triples(&rs) {
            let p = precedence_pairs(&rs, &bd);
            for &(a, b) in &p {
                assert_ne!(a, b);
                assert_eq!(rs.height(a), rs.height(b));
                assert!(!p.contains(&(b, a)));
                for &(c, d) in &p {
                    if c == b {
                        assert!(p.contains(&(a, d)));
                    }
                }
            }
        }
    }
}
