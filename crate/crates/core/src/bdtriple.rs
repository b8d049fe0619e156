//! Dynkin diagram automorphisms, Belavin–Drinfeld triples and the order `≺`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsystem::{root_lengths, RootSystem};

/// A permutation of the simple roots preserving the Cartan matrix, of
/// order at most 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism { perm: (0..rank).collect() }
    }

    pub fn new(perm: Vec<usize>, cartan: &[Vec<i64>]) -> Result<Self> {
        let n = cartan.len();
        let bad = |why: &str| Error::InvalidAutomorphism(format!("{perm:?}: {why}"));
        if perm.len() != n {
            return Err(bad("wrong length"));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(bad("not a permutation"));
            }
        }
        if (0..n).any(|i| perm[perm[i]] != i) {
            return Err(bad("order exceeds 2"));
        }
        if (0..n).any(|i| (0..n).any(|j| cartan[perm[i]][perm[j]] != cartan[i][j])) {
            return Err(bad("does not preserve the Cartan matrix"));
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn order(&self) -> usize {
        if self.is_identity() {
            1
        } else {
            2
        }
    }

    /// `Δ^μ`, the fixed simple roots.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.perm[i] == i).collect()
    }

    /// One representative `i < μ(i)` of each two-element orbit.
    pub fn swapped_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.rank()).filter(|&i| self.perm[i] > i).map(|i| (i, self.perm[i])).collect()
    }

    /// Action on a root in simple-root coordinates.
    pub fn apply_root(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0; coords.len()];
        for (i, c) in coords.iter().enumerate() {
            out[self.perm[i]] = *c;
        }
        out
    }

    pub fn apply_set(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&i| self.perm[i]).collect();
        v.sort_unstable();
        v
    }
}

/// All diagram automorphisms of order ≤ 2, identity first, then sorted by
/// permutation. Triality of `D₄` is excluded automatically.
pub fn diagram_automorphisms(cartan: &[Vec<i64>]) -> Vec<DiagramAutomorphism> {
    let n = cartan.len();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(k: usize, cartan: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = cartan.len();
        if k == n {
            out.push(perm.clone());
            return;
        }
        for p in 0..n {
            if used[p] || cartan[p][p] != cartan[k][k] {
                continue;
            }
            if (0..k).any(|j| cartan[perm[j]][p] != cartan[j][k] || cartan[p][perm[j]] != cartan[k][j]) {
                continue;
            }
            perm[k] = p;
            used[p] = true;
            go(k + 1, cartan, perm, used, out);
            used[p] = false;
        }
        perm[k] = usize::MAX;
    }
    let mut all = Vec::new();
    go(0, cartan, &mut perm, &mut used, &mut all);
    for p in all {
        if let Ok(m) = DiagramAutomorphism::new(p, cartan) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| b.is_identity().cmp(&a.is_identity()).then_with(|| a.cmp(b)));
    out
}

/// `(Γ₁, Γ₂, τ)` with `τ: Γ₁ → Γ₂` stored as its graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BDTriple {
    gamma1: Vec<usize>,
    gamma2: Vec<usize>,
    tau: BTreeMap<usize, usize>,
}

impl BDTriple {
    pub fn empty() -> Self {
        BDTriple { gamma1: Vec::new(), gamma2: Vec::new(), tau: BTreeMap::new() }
    }

    /// Builds from the graph of `τ` without checking the triple axioms.
    pub fn from_map(tau: BTreeMap<usize, usize>) -> Self {
        let gamma1 = tau.keys().copied().collect();
        let mut gamma2: Vec<usize> = tau.values().copied().collect();
        gamma2.sort_unstable();
        BDTriple { gamma1, gamma2, tau }
    }

    pub fn new(tau: BTreeMap<usize, usize>, rs: &RootSystem) -> Result<Self> {
        let bd = Self::from_map(tau);
        bd.validate(rs)?;
        Ok(bd)
    }

    pub fn gamma1(&self) -> &[usize] {
        &self.gamma1
    }

    pub fn gamma2(&self) -> &[usize] {
        &self.gamma2
    }

    pub fn tau(&self) -> &BTreeMap<usize, usize> {
        &self.tau
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn tau_inverse(&self) -> BTreeMap<usize, usize> {
        self.tau.iter().map(|(a, b)| (*b, *a)).collect()
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        let n = rs.rank();
        if self.tau.iter().any(|(a, b)| *a >= n || *b >= n) {
            return Err(Error::InvalidTriple("index out of range".into()));
        }
        if self.gamma2.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTriple("tau is not injective".into()));
        }
        if !preserves_inner_product(rs, &self.tau) {
            return Err(Error::InvalidTriple("tau does not preserve the inner product".into()));
        }
        if !is_nilpotent(&self.tau) {
            return Err(Error::InvalidTriple("nilpotency condition fails".into()));
        }
        Ok(())
    }

    /// `(νΓ₁, νΓ₂, ντν⁻¹)`.
    pub fn conjugate(&self, nu: &DiagramAutomorphism) -> Self {
        Self::from_map(self.tau.iter().map(|(a, b)| (nu.apply(*a), nu.apply(*b))).collect())
    }

    /// Extension of `τ` to `T` on roots supported in `Γ₁`.
    pub fn apply_t(&self, coords: &[i64]) -> Option<Vec<i64>> {
        let mut out = vec![0; coords.len()];
        for (i, c) in coords.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            out[*self.tau.get(&i)?] += c;
        }
        Some(out)
    }

    /// Parses `"1->2,2->3"` with 1-based indices; empty text or `none`
    /// gives the empty triple.
    pub fn parse_arrows(text: &str, rs: &RootSystem) -> Result<Self> {
        let text = text.trim();
        let mut tau = BTreeMap::new();
        if !(text.is_empty() || text.eq_ignore_ascii_case("none")) {
            for part in text.split(',') {
                let (a, b) = part
                    .split_once("->")
                    .ok_or_else(|| Error::Parse(format!("expected i->j, got {part:?}")))?;
                let parse = |s: &str| -> Result<usize> {
                    let k: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad index {s:?}")))?;
                    k.checked_sub(1).ok_or_else(|| Error::Parse("indices are 1-based".into()))
                };
                if tau.insert(parse(a)?, parse(b)?).is_some() {
                    return Err(Error::Parse(format!("duplicate source in {text:?}")));
                }
            }
        }
        Self::new(tau, rs)
    }

    /// Inverse of [`Self::parse_arrows`].
    pub fn arrows(&self) -> String {
        if self.is_empty() {
            return "none".into();
        }
        self.tau.iter().map(|(a, b)| format!("{}->{}", a + 1, b + 1)).collect::<Vec<_>>().join(",")
    }

    pub fn to_json(&self) -> BDTripleJson {
        BDTripleJson {
            gamma1: self.gamma1.clone(),
            gamma2: self.gamma2.clone(),
            tau: self.tau.iter().map(|(a, b)| [*a, *b]).collect(),
        }
    }

    pub fn from_json(j: &BDTripleJson, rs: &RootSystem) -> Result<Self> {
        let bd = Self::new(j.tau.iter().map(|[a, b]| (*a, *b)).collect(), rs)?;
        if bd.gamma1 != sorted(&j.gamma1) || bd.gamma2 != sorted(&j.gamma2) {
            return Err(Error::InvalidTriple("gamma1/gamma2 disagree with tau".into()));
        }
        Ok(bd)
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// JSON encoding with 0-based simple-root indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BDTripleJson {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub tau: Vec<[usize; 2]>,
}

/// `2(α_i, α_j)` in units where short roots have squared length 1.
fn doubled_inner(rs: &RootSystem, i: usize, j: usize) -> i64 {
    rs.cartan_matrix()[i][j] * root_lengths(rs.simple_type())[j]
}

pub fn preserves_inner_product(rs: &RootSystem, tau: &BTreeMap<usize, usize>) -> bool {
    tau.iter().all(|(a, ta)| tau.iter().all(|(b, tb)| doubled_inner(rs, *a, *b) == doubled_inner(rs, *ta, *tb)))
}

/// Every `τ`-orbit starting in `Γ₁` leaves `Γ₁`.
pub fn is_nilpotent(tau: &BTreeMap<usize, usize>) -> bool {
    tau.keys().all(|&a| {
        let mut x = a;
        for _ in 0..=tau.len() {
            match tau.get(&x) {
                Some(&y) => x = y,
                None => return true,
            }
        }
        false
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every BD triple exactly once, ordered by `(|Γ₁|, Γ₁, Γ₂, graph of τ)`.
pub fn enumerate_bd_triples(rs: &RootSystem) -> Vec<BDTriple> {
    let n = rs.rank();
    let mut out = Vec::new();
    for k in 0..=n {
        let subsets = combinations(n, k);
        for g1 in &subsets {
            for g2 in &subsets {
                let mut found = Vec::new();
                sub_isometries(rs, g1, g2, 0, &mut BTreeMap::new(), &mut vec![false; k], &mut found);
                for tau in found {
                    if is_nilpotent(&tau) {
                        out.push(BDTriple::from_map(tau));
                    }
                }
            }
        }
    }
    out.sort_by_key(|a| canonical_key(a));
    out
}

fn canonical_key(bd: &BDTriple) -> (usize, Vec<usize>, Vec<usize>, Vec<(usize, usize)>) {
    (bd.gamma1.len(), bd.gamma1.clone(), bd.gamma2.clone(), bd.tau.iter().map(|(a, b)| (*a, *b)).collect())
}

fn sub_isometries(
    rs: &RootSystem,
    g1: &[usize],
    g2: &[usize],
    k: usize,
    cur: &mut BTreeMap<usize, usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<BTreeMap<usize, usize>>,
) {
    if k == g1.len() {
        out.push(cur.clone());
        return;
    }
    let a = g1[k];
    for (slot, &b) in g2.iter().enumerate() {
        if used[slot] || doubled_inner(rs, a, a) != doubled_inner(rs, b, b) {
            continue;
        }
        if cur.iter().any(|(c, d)| doubled_inner(rs, a, *c) != doubled_inner(rs, b, *d)) {
            continue;
        }
        used[slot] = true;
        cur.insert(a, b);
        sub_isometries(rs, g1, g2, k + 1, cur, used, out);
        cur.remove(&a);
        used[slot] = false;
    }
}

/// Positive roots supported in `set` (the subsystem `Γ̂`), as root indices.
pub fn span_roots(rs: &RootSystem, set: &[usize]) -> Vec<usize> {
    rs.positive_roots()
        .filter(|&k| rs.root(k).iter().enumerate().all(|(i, c)| *c == 0 || set.contains(&i)))
        .collect()
}

/// All `(α, β)` with `α ≺ β`, i.e. `β = Tⁿα` for some `n ≥ 1`.
pub fn precedence_pairs(rs: &RootSystem, bd: &BDTriple) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for a in span_roots(rs, &bd.gamma1) {
        let mut cur = rs.root(a).to_vec();
        while let Some(next) = bd.apply_t(&cur) {
            let b = rs.root_index(&next).expect("T maps roots to roots");
            out.insert((a, b));
            cur = next;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Antistable,
    Both,
    Neither,
}

impl Stability {
    pub fn is_stable(self) -> bool {
        matches!(self, Stability::Stable | Stability::Both)
    }

    pub fn is_antistable(self) -> bool {
        matches!(self, Stability::Antistable | Stability::Both)
    }
}

pub fn is_stable(bd: &BDTriple, mu: &DiagramAutomorphism) -> bool {
    mu.apply_set(&bd.gamma1) == bd.gamma1
        && mu.apply_set(&bd.gamma2) == bd.gamma2
        && bd.tau.iter().all(|(a, b)| bd.tau.get(&mu.apply(*a)) == Some(&mu.apply(*b)))
}

pub fn is_antistable(bd: &BDTriple, mu: &DiagramAutomorphism) -> bool {
    let inv = bd.tau_inverse();
    mu.apply_set(&bd.gamma1) == bd.gamma2
        && mu.apply_set(&bd.gamma2) == bd.gamma1
        && bd.tau.iter().all(|(a, b)| inv.get(&mu.apply(*a)) == Some(&mu.apply(*b)))
}

pub fn stability(bd: &BDTriple, mu: &DiagramAutomorphism) -> Stability {
    match (is_stable(bd, mu), is_antistable(bd, mu)) {
        (true, true) => Stability::Both,
        (true, false) => Stability::Stable,
        (false, true) => Stability::Antistable,
        (false, false) => Stability::Neither,
    }
}
