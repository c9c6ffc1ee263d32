//! BKM Cartan matrices, weights, root sums, and the invariant bilinear form.
//!
//! A BKM Cartan matrix is a square rational matrix `A` whose diagonal entries
//! are either `2` or non-positive, whose off-diagonal entries are non-positive
//! (and integral in rows with diagonal `2`), and which has a symmetric zero
//! pattern.  Nodes are partitioned by the sign of the diagonal entry:
//!
//! * `Real`       — `A[i][i] = 2`,
//! * `Heisenberg` — `A[i][i] = 0`,
//! * `Negative`   — `A[i][i] < 0`.
//!
//! Weights are represented purely by their coroot pairings `λ(αᵢ∨)`; the
//! (possibly larger) ambient Cartan subalgebra is never modeled, since every
//! formula in this crate consumes pairings and root differences only.

use crate::error::{Error, Result};
use crate::rat::{format_rat, is_integer, is_nonneg_integer, parse_rat, rat, Rat};
use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Per-node classification by diagonal entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeType {
    Real,
    Heisenberg,
    Negative,
}

/// A validated BKM Cartan matrix with node partition and (optional) symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BkmCartanMatrix {
    n: usize,
    a: Vec<Vec<Rat>>,
    node_types: Vec<NodeType>,
    /// Positive rationals `d` with `d[i]·A[i][j] = d[j]·A[j][i]`, normalized
    /// so that `min d[i] = 1`; absent when no such vector exists.
    symmetrizer: Option<Vec<Rat>>,
}

/// A weight, given by its coroot pairings `λ(αᵢ∨)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub pairings: Vec<Rat>,
}

/// A non-negative integer combination of simple roots (a multidegree).
///
/// The derived order sorts by height first and then lexicographically on the
/// coefficients; this is the canonical enumeration order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RootSum {
    pub coeffs: Vec<u32>,
}

/// A word in real-node reflections (not necessarily reduced).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylWord {
    pub word: Vec<usize>,
}

/// Result of [`BkmCartanMatrix::cone_membership`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeInfo {
    /// `λ(αᵢ∨) ≥ 0` for all nodes, integral at real nodes.
    pub in_p_plus: bool,
    /// `λ(αᵢ∨) ∈ (Aᵢᵢ/2)·ℤ≥0` at all nodes (with `λ(αᵢ∨)=0` required when `Aᵢᵢ=0`).
    pub in_p_pm: bool,
    /// The nodes where the signed-cone condition above holds.
    pub j_lambda: BTreeSet<usize>,
    /// Powers `Mᵢ = (2/Aᵢᵢ)·λ(αᵢ∨) + 1` on real/negative nodes of `j_lambda`,
    /// and `Mᵢ = 1` on its Heisenberg nodes.
    pub powers: BTreeMap<usize, BigInt>,
}

impl RootSum {
    pub fn zero(n: usize) -> Self {
        RootSum { coeffs: vec![0; n] }
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        RootSum { coeffs }
    }

    pub fn height(&self) -> u32 {
        self.coeffs.iter().sum()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &RootSum) -> RootSum {
        RootSum {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference, or `None` when not `⪰ other`.
    pub fn checked_sub(&self, other: &RootSum) -> Option<RootSum> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if a < b {
                return None;
            }
            coeffs.push(a - b);
        }
        Some(RootSum { coeffs })
    }

    pub fn scale(&self, k: u32) -> RootSum {
        RootSum {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `self / k` when every coefficient is divisible by `k`.
    pub fn checked_div(&self, k: u32) -> Option<RootSum> {
        if k == 0 {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            if c % k != 0 {
                return None;
            }
            coeffs.push(c / k);
        }
        Some(RootSum { coeffs })
    }

    /// Componentwise `≥` (the dominance order on root sums).
    pub fn dominates(&self, other: &RootSum) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }

    /// All root sums of the given rank with height at most `cutoff`,
    /// in the canonical (height, lex) order.
    pub fn all_up_to(n: usize, cutoff: u32) -> Vec<RootSum> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for c in 0..=left {
                cur[pos] = c;
                rec(cur, pos + 1, left - c, out);
            }
            cur[pos] = 0;
        }
        let mut raw = Vec::new();
        rec(&mut cur, 0, cutoff, &mut raw);
        for coeffs in raw {
            out.push(RootSum { coeffs });
        }
        out.sort();
        out
    }
}

impl Ord for RootSum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for RootSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight {
            pairings: vec![Rat::zero(); n],
        }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Weight {
            pairings: v.iter().map(|&x| rat(x)).collect(),
        }
    }
}

/// JSON shape for matrices: rationals as `"p/q"` strings.
#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// JSON shape for weights.
#[derive(Serialize, Deserialize)]
pub struct WeightJson {
    pub pairings: Vec<String>,
}

impl BkmCartanMatrix {
    /// Validates a raw rational matrix, classifies its nodes, and computes a
    /// symmetrizer when one exists.
    ///
    /// Rules checked (each failure names the violated rule):
    /// 1. square, non-empty;
    /// 2. `A[i][i] ∈ {2} ∪ ℚ≤0`;
    /// 3. `A[i][j] ≤ 0` for `i ≠ j`, integral whenever `A[i][i] = 2`;
    /// 4. `A[i][j] = 0 ⟺ A[j][i] = 0`.
    pub fn validate(a: Vec<Vec<Rat>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::RejectNotBkm("matrix must be non-empty".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RejectNotBkm(format!(
                    "matrix must be square; row {i} has length {}",
                    row.len()
                )));
            }
        }
        let two = rat(2);
        let mut node_types = Vec::with_capacity(n);
        for i in 0..n {
            let d = &a[i][i];
            if *d == two {
                node_types.push(NodeType::Real);
            } else if d.is_zero() {
                node_types.push(NodeType::Heisenberg);
            } else if d.is_negative() {
                node_types.push(NodeType::Negative);
            } else {
                return Err(Error::RejectNotBkm(format!(
                    "diagonal entry A[{i}][{i}] = {} must be 2 or non-positive",
                    format_rat(d)
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j].is_positive() {
                    return Err(Error::RejectNotBkm(format!(
                        "off-diagonal entry A[{i}][{j}] = {} must be non-positive",
                        format_rat(&a[i][j])
                    )));
                }
                if node_types[i] == NodeType::Real && !is_integer(&a[i][j]) {
                    return Err(Error::RejectNotBkm(format!(
                        "entry A[{i}][{j}] = {} must be an integer because A[{i}][{i}] = 2",
                        format_rat(&a[i][j])
                    )));
                }
                if a[i][j].is_zero() != a[j][i].is_zero() {
                    return Err(Error::RejectNotBkm(format!(
                        "zero pattern must be symmetric: A[{i}][{j}] = 0 but A[{j}][{i}] ≠ 0"
                    )));
                }
            }
        }
        let symmetrizer = compute_symmetrizer(&a);
        Ok(BkmCartanMatrix {
            n,
            a,
            node_types,
            symmetrizer,
        })
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let a = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::validate(a)
    }

    /// Negative type-A matrix of rank `n`: diagonal `-2`, path off-diagonal `-1`.
    pub fn negative_type_a(n: usize) -> Self {
        let mut a = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            a[i][i] = rat(-2);
            if i + 1 < n {
                a[i][i + 1] = rat(-1);
                a[i + 1][i] = rat(-1);
            }
        }
        Self::validate(a).expect("negative type-A matrix is always valid")
    }

    /// Rank-2 matrix `[[-b, -a], [-a, -d]]` (all-imaginary, symmetric).
    pub fn rank2_negative(b: i64, a: i64, d: i64) -> Result<Self> {
        Self::from_i64(&[&[-b, -a], &[-a, -d]])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.a[i][j]
    }

    pub fn node_type(&self, i: usize) -> NodeType {
        self.node_types[i]
    }

    pub fn node_types(&self) -> &[NodeType] {
        &self.node_types
    }

    pub fn has_real_node(&self) -> bool {
        self.node_types.iter().any(|&t| t == NodeType::Real)
    }

    pub fn symmetrizer(&self) -> Result<&[Rat]> {
        self.symmetrizer
            .as_deref()
            .ok_or(Error::NotSymmetrizable)
    }

    pub fn is_symmetrizable(&self) -> bool {
        self.symmetrizer.is_some()
    }

    /// Dynkin-graph adjacency: `i ~ j ⟺ i ≠ j and A[i][j] ≠ 0`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && !self.a[i][j].is_zero()
    }

    /// Letters commute in `U(n⁻)` exactly when they are distinct and orthogonal.
    pub fn commutes(&self, i: usize, j: usize) -> bool {
        i != j && self.a[i][j].is_zero()
    }

    /// The weight `ρ` with `ρ(αᵢ∨) = Aᵢᵢ/2`.
    pub fn weyl_vector(&self) -> Weight {
        Weight {
            pairings: (0..self.n).map(|i| &self.a[i][i] / rat(2)).collect(),
        }
    }

    /// `(λ − β)(αᵢ∨) = λ(αᵢ∨) − Σⱼ βⱼ A[i][j]`, exactly.
    pub fn subtract_roots(&self, lambda: &Weight, beta: &RootSum) -> Weight {
        assert_eq!(lambda.pairings.len(), self.n);
        assert_eq!(beta.coeffs.len(), self.n);
        let pairings = (0..self.n)
            .map(|i| {
                let mut v = lambda.pairings[i].clone();
                for j in 0..self.n {
                    if beta.coeffs[j] != 0 {
                        v -= &self.a[i][j] * rat(beta.coeffs[j] as i64);
                    }
                }
                v
            })
            .collect();
        Weight { pairings }
    }

    /// The invariant pairing `(μ, β) = Σᵢ βᵢ dᵢ μ(αᵢ∨)` of a weight with a root sum.
    pub fn ip_weight_root(&self, mu: &Weight, beta: &RootSum) -> Result<Rat> {
        let d = self.symmetrizer()?;
        let mut v = Rat::zero();
        for i in 0..self.n {
            if beta.coeffs[i] != 0 {
                v += rat(beta.coeffs[i] as i64) * &d[i] * &mu.pairings[i];
            }
        }
        Ok(v)
    }

    /// The invariant pairing `(β, γ) = Σᵢⱼ βᵢ γⱼ dᵢ A[i][j]` of two root sums.
    pub fn ip_root_root(&self, beta: &RootSum, gamma: &RootSum) -> Result<Rat> {
        let d = self.symmetrizer()?;
        let mut v = Rat::zero();
        for i in 0..self.n {
            if beta.coeffs[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if gamma.coeffs[j] == 0 {
                    continue;
                }
                v += rat((beta.coeffs[i] as i64) * (gamma.coeffs[j] as i64)) * &d[i] * &self.a[i][j];
            }
        }
        Ok(v)
    }

    /// `(λ + 2ρ + μ, λ − μ)` for `μ = λ − β`, expanded through the symmetrizer.
    ///
    /// This vanishes exactly when `μ` satisfies the norm equality
    /// `(λ+ρ, λ+ρ) = (μ+ρ, μ+ρ)` — the Casimir-necessary condition for a
    /// maximal vector of weight `μ` in a highest-weight module with top `λ`.
    pub fn bilinear_residual(&self, lambda: &Weight, beta: &RootSum) -> Result<Rat> {
        let d = self.symmetrizer()?;
        // (2λ + 2ρ − β, β) with (αᵢ, αⱼ) = dᵢ·A[i][j] and (λ, αᵢ) = dᵢ·λ(αᵢ∨).
        let mut v = Rat::zero();
        for i in 0..self.n {
            if beta.coeffs[i] == 0 {
                continue;
            }
            let bi = rat(beta.coeffs[i] as i64);
            let mut term = rat(2) * &lambda.pairings[i] + &self.a[i][i];
            for j in 0..self.n {
                if beta.coeffs[j] != 0 {
                    term -= rat(beta.coeffs[j] as i64) * &self.a[i][j];
                }
            }
            v += bi * &d[i] * term;
        }
        Ok(v)
    }

    /// Cone membership of `λ` and the derived integrability data.
    pub fn cone_membership(&self, lambda: &Weight) -> ConeInfo {
        assert_eq!(lambda.pairings.len(), self.n);
        let mut j_lambda = BTreeSet::new();
        let mut powers = BTreeMap::new();
        let mut in_p_plus = true;
        for i in 0..self.n {
            let li = &lambda.pairings[i];
            match self.node_types[i] {
                NodeType::Real => {
                    if !is_nonneg_integer(li) {
                        in_p_plus = false;
                    }
                    // λᵢ ∈ (2/2)·ℤ≥0 = ℤ≥0
                    if is_nonneg_integer(li) {
                        j_lambda.insert(i);
                        let m = li.to_integer() + 1;
                        powers.insert(i, m);
                    }
                }
                NodeType::Heisenberg => {
                    if li.is_negative() {
                        in_p_plus = false;
                    }
                    // (0/2)·ℤ≥0 degenerates to {0}
                    if li.is_zero() {
                        j_lambda.insert(i);
                        powers.insert(i, BigInt::from(1));
                    }
                }
                NodeType::Negative => {
                    if li.is_negative() {
                        in_p_plus = false;
                    }
                    // λᵢ ∈ (Aᵢᵢ/2)·ℤ≥0 ⟺ 2λᵢ/Aᵢᵢ ∈ ℤ≥0
                    let q = rat(2) * li / &self.a[i][i];
                    if is_nonneg_integer(&q) {
                        j_lambda.insert(i);
                        powers.insert(i, q.to_integer() + 1);
                    }
                }
            }
        }
        let in_p_pm = j_lambda.len() == self.n;
        ConeInfo {
            in_p_plus,
            in_p_pm,
            j_lambda,
            powers,
        }
    }

    /// Connected components of `S` under Dynkin-graph adjacency, each sorted;
    /// components are returned ordered by their smallest node.
    pub fn dynkin_components(&self, s: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in s {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in s {
                    if !seen.contains(&v) && self.adjacent(u, v) {
                        seen.insert(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// True iff `S` spans no Dynkin-graph edge (all components are singletons).
    pub fn is_independent(&self, s: &BTreeSet<usize>) -> bool {
        for &i in s {
            for &j in s {
                if i < j && self.adjacent(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// The simple reflection `sᵢ` applied to a weight:
    /// `(sᵢ μ)(αⱼ∨) = μ(αⱼ∨) − μ(αᵢ∨)·A[j][i]`.
    pub fn reflect_weight(&self, mu: &Weight, i: usize) -> Weight {
        let mi = mu.pairings[i].clone();
        Weight {
            pairings: (0..self.n)
                .map(|j| &mu.pairings[j] - &mi * &self.a[j][i])
                .collect(),
        }
    }

    /// Applies a Weyl word to a weight (letters applied right-to-left).
    pub fn apply_weyl_word(&self, w: &WeylWord, mu: &Weight) -> Result<Weight> {
        let mut v = mu.clone();
        for &i in w.word.iter().rev() {
            if self.node_types[i] != NodeType::Real {
                return Err(Error::InvalidInput(format!(
                    "Weyl word letter {i} is not a real node"
                )));
            }
            v = self.reflect_weight(&v, i);
        }
        Ok(v)
    }

    /// Serializes in the external JSON schema.
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            a: self
                .a
                .iter()
                .map(|row| row.iter().map(format_rat).collect())
                .collect(),
            labels: None,
        }
    }

    /// Parses and validates the external JSON schema.
    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        let mut a = Vec::with_capacity(j.a.len());
        for row in &j.a {
            let mut r = Vec::with_capacity(row.len());
            for s in row {
                r.push(parse_rat(s).map_err(Error::InvalidInput)?);
            }
            a.push(r);
        }
        Self::validate(a)
    }
}

impl Weight {
    pub fn to_json(&self) -> WeightJson {
        WeightJson {
            pairings: self.pairings.iter().map(format_rat).collect(),
        }
    }

    pub fn from_json(j: &WeightJson) -> Result<Self> {
        let mut pairings = Vec::with_capacity(j.pairings.len());
        for s in &j.pairings {
            pairings.push(parse_rat(s).map_err(Error::InvalidInput)?);
        }
        Ok(Weight { pairings })
    }
}

/// Solves `dᵢ·A[i][j] = dⱼ·A[j][i]` for positive `d` by spanning-tree
/// propagation on the Dynkin graph, checking consistency on non-tree edges,
/// and normalizing so that `min dᵢ = 1`.
fn compute_symmetrizer(a: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(rat(1));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = d[u].clone().unwrap();
            for v in 0..n {
                if u == v || a[u][v].is_zero() {
                    continue;
                }
                // d_u·A[u][v] = d_v·A[v][u]  ⟹  d_v = d_u·A[u][v]/A[v][u]
                let dv = &du * &a[u][v] / &a[v][u];
                match &d[v] {
                    None => {
                        if !dv.is_positive() {
                            return None;
                        }
                        d[v] = Some(dv);
                        queue.push_back(v);
                    }
                    Some(existing) => {
                        if *existing != dv {
                            return None;
                        }
                    }
                }
            }
        }
    }
    let d: Vec<Rat> = d.into_iter().map(|x| x.unwrap()).collect();
    let min = d.iter().min()?.clone();
    Some(d.iter().map(|x| x / &min).collect())
}
