//! Root systems, Chevalley bases, the Killing form and the Casimir tensors.
//!
//! Simple roots follow the Bourbaki numbering: `Bₙ` has `αₙ` short, `Cₙ` has
//! `αₙ` long, `Dₙ` branches at `αₙ₋₂`, `Eₙ` has `α₂` attached to `α₄`,
//! `F₄` has `α₁, α₂` long, and `G₂` has `α₁` short. Cartan entries are
//! `a_ij = ⟨α_i, α_j^∨⟩ = 2(α_i, α_j)/(α_j, α_j)`.
//!
//! Basis layout for `g` (dimension `rank + |Φ|`):
//! `0..rank` are the Killing duals `h_{α_i}`; then `x_β` for the positive
//! roots ordered by height and, inside a height, by decreasing coordinate
//! vectors (so `α₁, …, αₙ` come first in their natural order); then `x_{−β}`
//! in the same order. Root vectors satisfy `κ(x_β, x_{−β}) = 1` and
//! `[x_β, x_{−β}] = h_β`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{format_scalar, from_rational, int, GaussianRational, Rational};
use crate::tensor::Tensor2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Result<Self> {
        Ok(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return Err(Error::Parse(format!("unknown series {c:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    series: Series,
    rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { series, rank })
        } else {
            Err(Error::InvalidRank { series: series.letter(), rank })
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty type".into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad type {s:?}")))?;
        SimpleType::new(Series::from_letter(letter)?, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Bourbaki Cartan matrix `a_ij = ⟨α_i, α_j^∨⟩`.
pub fn cartan_matrix(t: SimpleType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.series {
        Series::A | Series::B | Series::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Series::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Series::G => link(0, 1),
    }
    match t.series {
        Series::B => a[n - 2][n - 1] = -2,
        Series::C => a[n - 1][n - 2] = -2,
        Series::F => a[1][2] = -2,
        Series::G => a[1][0] = -3,
        _ => {}
    }
    a
}

/// Squared lengths with short roots of length 1 (`G₂`: 1 and 3).
pub fn root_lengths(t: SimpleType) -> Vec<i64> {
    let n = t.rank;
    match t.series {
        Series::A | Series::D | Series::E => vec![2; n],
        Series::B => (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect(),
        Series::C => (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect(),
        Series::F => vec![2, 2, 1, 1],
        Series::G => vec![1, 3],
    }
}

fn pairing(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().enumerate().map(|(j, k)| k * cartan[j][i]).sum()
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let mut all: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut known: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = std::collections::BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                if q - pairing(cartan, beta, i) > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        layer = next.into_iter().collect();
        for r in &layer {
            known.insert(r.clone());
        }
        all.extend(layer.iter().cloned());
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}

type SparseRow = Vec<(usize, i64)>;

fn add_into(acc: &mut HashMap<usize, i64>, v: &[(usize, i64)], f: i64) {
    for (k, c) in v {
        *acc.entry(*k).or_insert(0) += f * c;
    }
}

fn finish(acc: HashMap<usize, i64>) -> SparseRow {
    let mut v: SparseRow = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

/// Integer Chevalley structure constants in the layout
/// `H_1..H_n, e_β (β > 0), f_β (β > 0)`, with `f_β = −ω(e_β)` for the
/// Chevalley involution `ω`. Signs are fixed by `e_ξ = [e_j, e_γ]/(p+1)`
/// for the extraspecial pair `(α_j, γ)` of each non-simple `ξ`.
struct Chevalley {
    rows: Vec<Vec<SparseRow>>,
    extraspecial: Vec<Option<(usize, usize)>>,
}

fn chevalley(cartan: &[Vec<i64>], pos: &[Vec<i64>]) -> Chevalley {
    let n = cartan.len();
    let np = pos.len();
    let dim = n + 2 * np;
    let index: HashMap<&[i64], usize> = pos.iter().enumerate().map(|(k, r)| (r.as_slice(), k)).collect();
    let shifted = |beta: usize, i: usize, d: i64| -> Option<usize> {
        let mut r = pos[beta].clone();
        r[i] += d;
        index.get(r.as_slice()).copied()
    };

    let mut up: HashMap<(usize, usize), i64> = HashMap::new();
    let mut down: HashMap<(usize, usize), i64> = HashMap::new();
    let mut extraspecial = vec![None; np];
    for xi in n..np {
        let j = (0..n).find(|&j| shifted(xi, j, -1).is_some()).expect("non-simple root has a predecessor");
        let gamma = shifted(xi, j, -1).unwrap();
        let mut p = 0;
        let mut probe = pos[gamma].clone();
        loop {
            probe[j] -= 1;
            if index.contains_key(probe.as_slice()) {
                p += 1;
            } else {
                break;
            }
        }
        let np1 = p + 1;
        extraspecial[xi] = Some((j, gamma));
        up.insert((j, gamma), np1);
        for k in 0..n {
            if shifted(xi, k, -1).is_none() {
                continue;
            }
            let mut val = 0;
            if k == j {
                val -= pairing(cartan, &pos[gamma], j);
                if let Some(g1) = shifted(gamma, j, -1) {
                    val += down[&(j, gamma)] * up[&(j, g1)];
                }
            } else if gamma == k {
                val += cartan[j][k];
            } else if let Some(g1) = shifted(gamma, k, -1) {
                val += down[&(k, gamma)] * up[&(j, g1)];
            }
            assert_eq!(val % np1, 0, "non-integral Chevalley constant");
            down.insert((k, xi), val / np1);
        }
        for i in 0..n {
            if i == j {
                continue;
            }
            let Some(beta) = shifted(xi, i, -1) else { continue };
            let x = if beta == j {
                cartan[i][j]
            } else if let Some(b1) = shifted(beta, j, -1) {
                down[&(j, beta)] * up[&(i, b1)]
            } else {
                0
            };
            let d = down[&(j, xi)];
            assert_eq!(x % d, 0, "non-integral Chevalley constant");
            up.insert((i, beta), x / d);
        }
    }

    let e = |k: usize| n + k;
    let f = |k: usize| n + np + k;
    // ω(u_a) = −u_{ω(a)}
    let omega = |a: usize| -> usize {
        if a < n {
            a
        } else if a < n + np {
            a + np
        } else {
            a - np
        }
    };

    let mut rows: Vec<Option<Vec<SparseRow>>> = vec![None; dim];
    for k in 0..n {
        let mut row = vec![Vec::new(); dim];
        for b in 0..np {
            let c = pairing(cartan, &pos[b], k);
            if c != 0 {
                row[e(b)] = vec![(e(b), c)];
                row[f(b)] = vec![(f(b), -c)];
            }
        }
        rows[k] = Some(row);
    }
    for i in 0..n {
        let mut row = vec![Vec::new(); dim];
        for k in 0..n {
            if cartan[i][k] != 0 {
                row[k] = vec![(e(i), -cartan[i][k])];
            }
        }
        for b in 0..np {
            if let Some(t) = shifted(b, i, 1) {
                row[e(b)] = vec![(e(t), up[&(i, b)])];
            }
            if b == i {
                row[f(b)] = vec![(i, 1)];
            } else if let Some(t) = shifted(b, i, -1) {
                row[f(b)] = vec![(f(t), -down[&(i, b)])];
            }
        }
        rows[e(i)] = Some(row);
    }
    let apply = |rows: &Vec<Option<Vec<SparseRow>>>, x: usize, v: &[(usize, i64)]| -> HashMap<usize, i64> {
        let mut acc = HashMap::new();
        let rx = rows[x].as_ref().expect("row computed");
        for (k, c) in v {
            add_into(&mut acc, &rx[*k], *c);
        }
        acc
    };
    for xi in n..np {
        let (j, gamma) = extraspecial[xi].unwrap();
        let np1 = up[&(j, gamma)];
        let mut row = vec![Vec::new(); dim];
        for (y, slot) in row.iter_mut().enumerate() {
            let rj = &rows[e(j)].as_ref().unwrap()[y];
            let rg = &rows[e(gamma)].as_ref().unwrap()[y];
            let mut acc = apply(&rows, e(j), rg);
            for (k, c) in apply(&rows, e(gamma), rj) {
                *acc.entry(k).or_insert(0) -= c;
            }
            let v = finish(acc);
            for (_, c) in &v {
                assert_eq!(c % np1, 0, "non-integral Chevalley constant");
            }
            *slot = v.into_iter().map(|(k, c)| (k, c / np1)).collect();
        }
        rows[e(xi)] = Some(row);
    }
    for b in 0..np {
        let src = rows[e(b)].clone().unwrap();
        let row: Vec<SparseRow> = (0..dim)
            .map(|y| {
                let mut v: SparseRow = src[omega(y)].iter().map(|(k, c)| (omega(*k), -c)).collect();
                v.sort();
                v
            })
            .collect();
        rows[f(b)] = Some(row);
    }
    Chevalley { rows: rows.into_iter().map(Option::unwrap).collect(), extraspecial }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    simple_type: SimpleType,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    n_pos: usize,
    index: HashMap<Vec<i64>, usize>,
    extraspecial: Vec<Option<(usize, usize)>>,
    chevalley: StructureConstants,
    algebra: StructureConstants,
    killing_h: Matrix,
    killing_h_inv: Matrix,
    casimir: Tensor2,
    casimir_h: Tensor2,
}

pub fn build_root_system(t: SimpleType) -> RootSystem {
    let cartan = cartan_matrix(t);
    let n = t.rank;
    let pos = positive_roots(&cartan);
    let np = pos.len();
    let dim = n + 2 * np;
    let chev = chevalley(&cartan, &pos);

    // κ on coroots, then (α_i, α_j)_κ = (A Kc⁻¹ Aᵀ)_ij
    let kc = Matrix::from_rational(n, n, |i, j| {
        int(2 * pos.iter().map(|b| pairing(&cartan, b, i) * pairing(&cartan, b, j)).sum::<i64>())
    });
    let a = Matrix::from_rational(n, n, |i, j| int(cartan[i][j]));
    let killing_h = a.mul(&kc.inverse().expect("Killing form is nondegenerate")).mul(&a.transpose());
    let killing_h_inv = killing_h.inverse().expect("nondegenerate");

    let root_norm = |r: &[i64]| -> Rational {
        let mut s = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                if r[i] != 0 && r[j] != 0 {
                    s += &killing_h[(i, j)].re * int(r[i] * r[j]);
                }
            }
        }
        s
    };
    let half = Rational::new(1.into(), 2.into());
    let mut scale = vec![Rational::one(); dim];
    for i in 0..n {
        scale[i] = &killing_h[(i, i)].re * &half;
    }
    for (b, r) in pos.iter().enumerate() {
        scale[n + np + b] = root_norm(r) * &half;
    }
    let raw: Vec<Vec<(usize, Rational)>> = chev
        .rows
        .iter()
        .flat_map(|row| row.iter().map(|v| v.iter().map(|(k, c)| (*k, int(*c))).collect()))
        .collect();
    let chevalley = StructureConstants::new(dim, raw.clone()).expect("well-formed table");
    let mut table = raw;
    for a_ in 0..dim {
        for b in 0..dim {
            for (k, c) in table[a_ * dim + b].iter_mut() {
                *c = &*c * &scale[a_] * &scale[b] / &scale[*k];
            }
        }
    }
    let algebra = StructureConstants::new(dim, table).expect("well-formed table");

    let mut roots = pos.clone();
    roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<i64>>()));
    let index = roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();

    let mut casimir_h = Tensor2::zeros(dim);
    for i in 0..n {
        for j in 0..n {
            casimir_h.set(i, j, killing_h_inv[(i, j)].clone());
        }
    }
    let mut casimir = casimir_h.clone();
    for b in 0..np {
        casimir.set(n + b, n + np + b, GaussianRational::one());
        casimir.set(n + np + b, n + b, GaussianRational::one());
    }

    RootSystem {
        simple_type: t,
        cartan,
        roots,
        n_pos: np,
        index,
        extraspecial: chev.extraspecial,
        chevalley,
        algebra,
        killing_h,
        killing_h_inv,
        casimir,
        casimir_h,
    }
}

impl RootSystem {
    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: positive ones first, then their negatives in the same order.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.n_pos
    }

    /// Root indices of the simple roots; `α_i` has index `i`.
    pub fn simple_roots(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.n_pos
    }

    pub fn negative(&self, k: usize) -> usize {
        (k + self.n_pos) % (2 * self.n_pos)
    }

    pub fn height(&self, k: usize) -> i64 {
        self.roots[k].iter().sum()
    }

    /// Basis index of `x_β` for the root with index `k`.
    pub fn root_basis(&self, k: usize) -> usize {
        self.rank() + k
    }

    /// Root index of a basis element, `None` for the Cartan part.
    pub fn basis_root(&self, a: usize) -> Option<usize> {
        a.checked_sub(self.rank())
    }

    /// For a non-simple positive root `ξ`: the simple index `j` and positive
    /// root `γ` with `ξ = α_j + γ`, `j` minimal.
    pub fn extraspecial(&self, k: usize) -> Option<(usize, usize)> {
        self.extraspecial.get(k).copied().flatten()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.algebra
    }

    /// The integral table in the unnormalized basis `H_i, e_β, f_β`.
    pub fn chevalley_constants(&self) -> &StructureConstants {
        &self.chevalley
    }

    /// `(h_{α_i} | h_{α_j})`, the Killing form on the simple Killing duals.
    pub fn killing_h(&self) -> &Matrix {
        &self.killing_h
    }

    pub fn killing_h_inverse(&self) -> &Matrix {
        &self.killing_h_inv
    }

    pub fn casimir(&self) -> &Tensor2 {
        &self.casimir
    }

    pub fn casimir_h(&self) -> &Tensor2 {
        &self.casimir_h
    }

    /// Killing inner product of two roots given by index.
    pub fn root_inner(&self, k: usize, l: usize) -> Rational {
        self.coords_inner(&self.roots[k], &self.roots[l])
    }

    pub fn coords_inner(&self, u: &[i64], v: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                if *a != 0 && *b != 0 {
                    s += &self.killing_h[(i, j)].re * int(a * b);
                }
            }
        }
        s
    }

    /// `h_β` in the coordinates `h_{α_1}, …, h_{α_n}`.
    pub fn coroot_vector(&self, k: usize) -> Vec<Rational> {
        self.roots[k].iter().map(|&c| int(c)).collect()
    }

    /// `h_β` as a vector in `g`.
    pub fn h_vector(&self, k: usize) -> Vector {
        let mut v = vec![GaussianRational::zero(); self.dim()];
        for (i, c) in self.roots[k].iter().enumerate() {
            v[i] = from_rational(int(*c));
        }
        v
    }

    /// `β(h)` for `h` given in the `h_{α_i}` coordinates.
    pub fn root_value(&self, k: usize, h: &[GaussianRational]) -> GaussianRational {
        let mut s = GaussianRational::zero();
        for (i, ki) in self.roots[k].iter().enumerate() {
            if *ki == 0 {
                continue;
            }
            for (j, c) in h.iter().enumerate().take(self.rank()) {
                if !c.is_zero() {
                    s += c * (&self.killing_h[(i, j)].re * int(*ki));
                }
            }
        }
        s
    }

    /// Killing form from the closed-form Gram matrix: `κ(h_i, h_j)` from
    /// [`Self::killing_h`] and `κ(x_β, x_{−β}) = 1`.
    pub fn killing_form(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let n = self.rank();
        let np = self.n_pos;
        let mut s = GaussianRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() {
                    s += &x[i] * &y[j] * &self.killing_h[(i, j)];
                }
            }
        }
        for b in 0..np {
            let (p, m) = (n + b, n + np + b);
            s += &x[p] * &y[m] + &x[m] * &y[p];
        }
        s
    }

    /// Killing Gram matrix of the basis.
    pub fn killing_matrix(&self) -> Matrix {
        let n = self.rank();
        let np = self.n_pos;
        let mut g = Matrix::zeros(self.dim(), self.dim());
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.killing_h[(i, j)].clone();
            }
        }
        for b in 0..np {
            g[(n + b, n + np + b)] = GaussianRational::one();
            g[(n + np + b, n + b)] = GaussianRational::one();
        }
        g
    }

    /// Killing form through traces of adjoint maps (slow; an oracle).
    pub fn killing_form_by_trace(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let g = &self.algebra;
        let mut s = GaussianRational::zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() {
                    s += xa * yb * g.trace_form_basis(a, b);
                }
            }
        }
        s
    }

    /// Short label for basis element `a`: `h1`, `x[1,1,0]`, `x[-1,0,0]`.
    pub fn basis_label(&self, a: usize) -> String {
        match self.basis_root(a) {
            None => format!("h{}", a + 1),
            Some(k) => {
                let c: Vec<String> = self.roots[k].iter().map(|x| x.to_string()).collect();
                format!("x[{}]", c.join(","))
            }
        }
    }

    pub fn to_json(&self) -> RootSystemJson {
        let g = &self.algebra;
        let mut sc = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for (k, c) in g.bracket_basis(a, b) {
                    sc.push((a, b, *k, format_scalar(&from_rational(c.clone()))));
                }
            }
        }
        RootSystemJson {
            simple_type: self.simple_type,
            dim: self.dim(),
            cartan_matrix: self.cartan.clone(),
            roots: self.roots.clone(),
            positive_roots: self.positive_roots().collect(),
            simple_roots: self.simple_roots().collect(),
            killing_h: (0..self.rank())
                .map(|i| (0..self.rank()).map(|j| format_scalar(&self.killing_h[(i, j)])).collect())
                .collect(),
            structure_constants: sc,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub dim: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<usize>,
    pub simple_roots: Vec<usize>,
    pub killing_h: Vec<Vec<String>>,
    /// `(a, b, k, c)` for `[x_a, x_b] = … + c·x_k + …`.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;
    use crate::scalar::rat;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap())
    }

    #[test]
    fn rank_bounds() {
        assert!(SimpleType::new(Series::C, 2).is_err());
        assert!(SimpleType::new(Series::D, 3).is_err());
        assert!(SimpleType::new(Series::E, 9).is_err());
        assert!("B2".parse::<SimpleType>().is_ok());
        assert!("Q2".parse::<SimpleType>().is_err());
    }

    #[test]
    fn small_types() {
        let a1 = rs("A1");
        assert_eq!(a1.roots().len(), 2);
        assert_eq!(a1.cartan_matrix(), &[vec![2]]);
        assert_eq!(a1.dim(), 3);
        let a2 = rs("A2");
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.cartan_matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.root(0), &[1, 0]);
        assert_eq!(a2.root(1), &[0, 1]);
    }

    #[test]
    fn sl2_killing_normalization() {
        let a1 = rs("A1");
        let h = unit_vector(3, 0);
        assert_eq!(a1.killing_form_by_trace(&h, &h), from_rational(rat(1, 2)));
        assert_eq!(a1.killing_form(&h, &h), from_rational(rat(1, 2)));
        assert_eq!(*a1.casimir_h().get(0, 0), from_rational(int(2)));
        // α(h_α) = (h_α | h_α)
        assert_eq!(a1.root_value(0, &h), from_rational(rat(1, 2)));
    }

    #[test]
    fn serre_relation_normalized() {
        for t in ["A3", "B2", "C3", "G2"] {
            let r = rs(t);
            let g = r.structure_constants();
            for b in r.positive_roots() {
                let x = unit_vector(r.dim(), r.root_basis(b));
                let y = unit_vector(r.dim(), r.root_basis(r.negative(b)));
                assert_eq!(g.bracket(&x, &y), r.h_vector(b), "{t} root {b}");
            }
        }
    }

    #[test]
    fn chevalley_constants_are_integral_and_coroot_compatible() {
        let r = rs("B3");
        let c = r.chevalley_constants();
        assert!(c.is_antisymmetric());
        assert!(c.satisfies_jacobi());
        for row in 0..r.dim() * r.dim() {
            for (_, v) in c.bracket_basis(row / r.dim(), row % r.dim()) {
                assert!(v.is_integer());
            }
        }
    }

    #[test]
    fn killing_matches_trace_on_g2() {
        let r = rs("G2");
        let n = r.dim();
        for a in 0..n {
            for b in 0..n {
                let x = unit_vector(n, a);
                let y = unit_vector(n, b);
                assert_eq!(r.killing_form(&x, &y), r.killing_form_by_trace(&x, &y));
            }
        }
    }

    #[test]
    fn killing_ratios_follow_root_lengths() {
        for t in ["B3", "C3", "F4", "G2"] {
            let r = rs(t);
            let d = root_lengths(r.simple_type());
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    // (α_i, α_j) ∝ a_ij d_j
                    let lhs = &r.killing_h()[(i, j)].re * int(2 * d[0]);
                    let rhs = &r.killing_h()[(0, 0)].re * int(r.cartan_matrix()[i][j] * d[j]);
                    assert_eq!(lhs, rhs, "{t} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn casimir_is_symmetric_and_invariant() {
        for t in ["A2", "B2", "G2"] {
            let r = rs(t);
            assert!(r.casimir().is_symmetric());
            assert!(r.casimir().is_invariant(r.structure_constants()));
        }
    }

    #[test]
    fn json_lists_structure_constants() {
        let j = rs("A1").to_json();
        assert_eq!(j.dim, 3);
        assert_eq!(j.roots, vec![vec![1], vec![-1]]);
        assert!(j.structure_constants.iter().any(|(a, b, k, _)| (*a, *b, *k) == (1, 2, 0)));
    }
}
