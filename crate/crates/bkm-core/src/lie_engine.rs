//! Exact models of `U(n⁻)` and highest-weight modules.
//!
//! `U(n⁻)` is presented on generators `f₀,…,f_{n−1}` with two families of
//! relations: `fᵢfⱼ = fⱼfᵢ` whenever `A[i][j] = 0`, and the Serre relations
//! `(ad fᵢ)^{1−A[i][j]} fⱼ = 0` for real `i` and `A[i][j] < 0`.  The
//! commutations are baked into the basis — monomials are words in the trace
//! monoid, stored as the lexicographically least representative of their
//! commutation class — while the Serre relations are swept into an exact
//! row-echelon ideal per multidegree.
//!
//! Highest-weight modules are quotients of the induced module by a kill space
//! per multidegree: nothing (Verma), the left ideal generated by prescribed
//! monomial singular vectors ([`KillSpec::Holes`]), or the maximal proper
//! submodule found by a raising-operator kernel sweep ([`KillSpec::Simple`]).

use crate::cartan::{BkmCartanMatrix, NodeType, RootSum, Weight};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rat::{rat, Rat};
use crate::weights::Hole;
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

/// A monomial `f_{w[0]}·f_{w[1]}⋯` stored as its normal form.
pub type Word = Vec<u8>;

/// Per-multidegree data for `U(n⁻)`.
pub struct Grade {
    /// Normal-form words of this content, sorted; the column order everywhere.
    pub words: Vec<Word>,
    index: HashMap<Word, u32>,
    /// The Serre ideal at this multidegree, in word coordinates.
    pub ui: Echelon,
}

impl Grade {
    pub fn col(&self, w: &Word) -> u32 {
        self.index[w]
    }

    /// `dim U(n⁻)_β = #words − rank(ideal)`.
    pub fn dim(&self) -> u64 {
        (self.words.len() - self.ui.rank()) as u64
    }
}

/// Lazy, grade-by-grade model of `U(n⁻)` for one Cartan matrix.
pub struct Engine {
    matrix: BkmCartanMatrix,
    grades: BTreeMap<RootSum, Grade>,
    budget_bytes: Option<u64>,
    used_bytes: u64,
}

impl Engine {
    pub fn new(matrix: BkmCartanMatrix) -> Self {
        Engine {
            matrix,
            grades: BTreeMap::new(),
            budget_bytes: None,
            used_bytes: 0,
        }
    }

    pub fn with_budget_mb(matrix: BkmCartanMatrix, budget_mb: u64) -> Self {
        Engine {
            matrix,
            grades: BTreeMap::new(),
            budget_bytes: Some(budget_mb.saturating_mul(1 << 20)),
            used_bytes: 0,
        }
    }

    pub fn matrix(&self) -> &BkmCartanMatrix {
        &self.matrix
    }

    /// Lexicographically least representative of the commutation class of `w`:
    /// repeatedly emit the smallest letter that commutes past everything
    /// before it.  (Adjacent-swap rewriting is not confluent here — a letter
    /// may need to move past a smaller commuting letter before it can pass a
    /// larger one — so the normal form is built greedily from the front.)
    pub fn normalize(&self, w: Word) -> Word {
        let mut remaining = w;
        let mut out = Word::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let mut best: Option<usize> = None;
            'cand: for p in 0..remaining.len() {
                for q in 0..p {
                    // equal letters never overtake each other; the earlier
                    // occurrence is the candidate
                    if remaining[q] == remaining[p]
                        || !self.matrix.commutes(remaining[q] as usize, remaining[p] as usize)
                    {
                        continue 'cand;
                    }
                }
                if best.is_none_or(|b| remaining[p] < remaining[b]) {
                    best = Some(p);
                }
            }
            out.push(remaining.remove(best.expect("the first letter is always movable")));
        }
        out
    }

    /// True when appending `j` to the normal-form prefix `cur` keeps it
    /// lexicographically least in its commutation class: scanning backwards,
    /// `j` must hit an equal or non-commuting letter before any larger
    /// commuting one (past which it could still be moved).
    fn extends_normal(&self, cur: &[u8], j: u8) -> bool {
        for &l in cur.iter().rev() {
            if l == j || !self.matrix.commutes(l as usize, j as usize) {
                return true;
            }
            if l > j {
                return false;
            }
        }
        true
    }

    /// All normal-form words of the given content, sorted.
    fn generate_words(&self, beta: &RootSum) -> Vec<Word> {
        let n = self.matrix.size();
        let mut out = Vec::new();
        let mut content: Vec<u32> = beta.coeffs.clone();
        let mut cur: Word = Vec::with_capacity(beta.height() as usize);
        fn dfs(
            eng: &Engine,
            n: usize,
            content: &mut Vec<u32>,
            cur: &mut Word,
            out: &mut Vec<Word>,
        ) {
            if content.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            for j in 0..n {
                if content[j] == 0 {
                    continue;
                }
                if !eng.extends_normal(cur, j as u8) {
                    continue;
                }
                content[j] -= 1;
                cur.push(j as u8);
                dfs(eng, n, content, cur, out);
                cur.pop();
                content[j] += 1;
            }
        }
        dfs(self, n, &mut content, &mut cur, &mut out);
        // DFS emits in lexicographic order already, but sort defensively.
        out.sort();
        out
    }

    /// Number of normal-form words of the given content, without storing
    /// them.  The DFS state is `blocked(j)`: whether the suffix of the prefix
    /// shows `j` a larger commuting letter before any equal or non-commuting
    /// one.  Appending `l` resets `blocked(j)` on a blocker, sets it when
    /// `l > j` commutes, and leaves it untouched when a smaller commuting `l`
    /// is transparent to the backward scan.
    pub fn count_normal_words(&self, beta: &RootSum) -> u64 {
        self.count_normal_words_stats(beta).0
    }

    /// As [`Engine::count_normal_words`], additionally reporting the number of
    /// memo table entries so callers can account the working set.
    fn count_normal_words_stats(&self, beta: &RootSum) -> (u64, u64) {
        let n = self.matrix.size();
        assert!(n <= 64, "blocked-letter bitmask limited to 64 nodes");
        let mut memo: HashMap<(Vec<u32>, u64), u64> = HashMap::new();
        fn rec(
            eng: &Engine,
            n: usize,
            content: &mut Vec<u32>,
            blocked: u64,
            memo: &mut HashMap<(Vec<u32>, u64), u64>,
        ) -> u64 {
            if content.iter().all(|&c| c == 0) {
                return 1;
            }
            let key = (content.clone(), blocked);
            if let Some(&v) = memo.get(&key) {
                return v;
            }
            let mut total = 0;
            for l in 0..n {
                if content[l] == 0 || blocked & (1 << l) != 0 {
                    continue;
                }
                let mut next = blocked;
                for j in 0..n {
                    if j == l || !eng.matrix.commutes(l, j) {
                        next &= !(1 << j);
                    } else if l > j {
                        next |= 1 << j;
                    }
                }
                content[l] -= 1;
                total += rec(eng, n, content, next, memo);
                content[l] += 1;
            }
            memo.insert(key, total);
            total
        }
        let count = rec(self, n, &mut beta.coeffs.clone(), 0, &mut memo);
        (count, memo.len() as u64)
    }

    /// Ensures every grade `γ ≤ β` (componentwise) is built, in height order.
    pub fn ensure(&mut self, beta: &RootSum) -> Result<()> {
        let mut todo: Vec<RootSum> = all_below(beta)
            .into_iter()
            .filter(|g| !self.grades.contains_key(g))
            .collect();
        todo.sort();
        for gamma in todo {
            self.build_grade(&gamma)?;
        }
        Ok(())
    }

    pub fn grade(&mut self, beta: &RootSum) -> Result<&Grade> {
        self.ensure(beta)?;
        Ok(&self.grades[beta])
    }

    /// Immutable access to an already-built grade (after [`Engine::ensure`]).
    pub fn grade_ref(&self, beta: &RootSum) -> &Grade {
        &self.grades[beta]
    }

    /// `dim U(n⁻)_β`, using the counting fast path when there are no Serre
    /// relations to quotient by.
    pub fn dim_u(&mut self, beta: &RootSum) -> Result<u64> {
        if !self.matrix.has_real_node() {
            let (count, memo_entries) = self.count_normal_words_stats(beta);
            if let Some(limit) = self.budget_bytes {
                let n = self.matrix.size() as u64;
                self.used_bytes += memo_entries * (4 * n + 24);
                if self.used_bytes > limit {
                    return Err(Error::CutoffTooLargeForBudget(format!(
                        "estimated working set exceeds budget at multidegree {beta}"
                    )));
                }
            }
            return Ok(count);
        }
        Ok(self.grade(beta)?.dim())
    }

    fn build_grade(&mut self, gamma: &RootSum) -> Result<()> {
        let words = self.generate_words(gamma);
        if let Some(limit) = self.budget_bytes {
            self.used_bytes += words.len() as u64 * (gamma.height() as u64 + 64);
            if self.used_bytes > limit {
                return Err(Error::CutoffTooLargeForBudget(format!(
                    "estimated working set exceeds budget at multidegree {gamma}"
                )));
            }
        }
        let index: HashMap<Word, u32> = words
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k as u32))
            .collect();
        let mut ui = Echelon::new();
        if self.matrix.has_real_node() && !gamma.is_zero() {
            let n = self.matrix.size();
            // propagate the two-sided ideal up from the facets of γ
            for i in 0..n {
                if gamma.coeffs[i] == 0 {
                    continue;
                }
                let lower = gamma
                    .checked_sub(&RootSum::simple(n, i))
                    .expect("facet of gamma");
                let lower_grade = &self.grades[&lower];
                let lower_rows: Vec<SparseVec> = lower_grade.ui.rows().to_vec();
                let lower_words: Vec<Word> = lower_grade.words.clone();
                for row in &lower_rows {
                    for prepend in [true, false] {
                        let mut lifted: SparseVec = Vec::with_capacity(row.len());
                        for (col, c) in row {
                            let mut w = lower_words[*col as usize].clone();
                            if prepend {
                                w.insert(0, i as u8);
                            } else {
                                w.push(i as u8);
                            }
                            let w = self.normalize(w);
                            lifted.push((index[&w], c.clone()));
                        }
                        lifted.sort_by_key(|e| e.0);
                        lifted = merge_duplicates(lifted);
                        ui.insert(lifted);
                    }
                }
            }
            // fresh Serre relators landing exactly at γ
            for i in 0..n {
                if self.matrix.node_type(i) != NodeType::Real {
                    continue;
                }
                for j in 0..n {
                    if j == i || !self.matrix.entry(i, j).is_negative() {
                        continue;
                    }
                    let aij = self.matrix.entry(i, j).to_integer();
                    let nn: u32 = (BigInt::one() - &aij)
                        .try_into()
                        .map_err(|_| Error::InvalidInput("Serre exponent overflow".into()))?;
                    let mut shape = vec![0u32; n];
                    shape[i] = nn;
                    shape[j] = 1;
                    if shape != gamma.coeffs {
                        continue;
                    }
                    let mut row: SparseVec = Vec::new();
                    let mut c = BigInt::one();
                    for k in 0..=nn {
                        // (−1)^k · C(N,k) · f_i^{N−k} f_j f_i^k
                        let mut w: Word = vec![i as u8; (nn - k) as usize];
                        w.push(j as u8);
                        w.extend(std::iter::repeat(i as u8).take(k as usize));
                        let w = self.normalize(w);
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        row.push((index[&w], Rat::from(c.clone() * BigInt::from(sign))));
                        c = c * BigInt::from((nn - k) as i64) / BigInt::from((k + 1) as i64);
                    }
                    row.sort_by_key(|e| e.0);
                    row = merge_duplicates(row);
                    ui.insert(row);
                }
            }
        }
        self.grades.insert(gamma.clone(), Grade { words, index, ui });
        Ok(())
    }

    /// Expands `eᵢ · (f-word) · m_λ` in the induced module: one term per
    /// occurrence of letter `i`, with coefficient
    /// `(λ − suffix content)(αᵢ∨)`, the suffix being the letters after it.
    pub fn apply_e_word(&self, i: usize, word: &Word, lambda: &Weight) -> Vec<(Word, Rat)> {
        let n = self.matrix.size();
        let mut out: Vec<(Word, Rat)> = Vec::new();
        let mut suffix = vec![0u32; n];
        for p in (0..word.len()).rev() {
            let l = word[p] as usize;
            if l == i {
                let mut c = lambda.pairings[i].clone();
                for (j, &s) in suffix.iter().enumerate() {
                    if s != 0 {
                        c -= self.matrix.entry(i, j) * rat(s as i64);
                    }
                }
                if !c.is_zero() {
                    let mut w = word.clone();
                    w.remove(p);
                    out.push((self.normalize(w), c));
                }
            }
            suffix[l] += 1;
        }
        // merge coincident normal forms
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Word, Rat)> = Vec::new();
        for (w, c) in out {
            match merged.last_mut() {
                Some((lw, lc)) if *lw == w => *lc += c,
                _ => merged.push((w, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged
    }

    /// Root multiplicities `m_β` for all `0 < ht(β) ≤ cutoff`, by inverting the
    /// product `Π_γ (1−e^{−γ})^{−m_γ} = Σ_β dim U(n⁻)_β · e^{−β}` height by
    /// height.  Only strictly positive multiplicities are returned.
    pub fn root_multiplicities(&mut self, cutoff: u32) -> Result<BTreeMap<RootSum, u64>> {
        let n = self.matrix.size();
        let mut mults = BTreeMap::new();
        // running product over roots found so far, as coefficients of e^{−β}
        let mut series: BTreeMap<RootSum, BigInt> = BTreeMap::new();
        series.insert(RootSum::zero(n), BigInt::one());
        let all = RootSum::all_up_to(n, cutoff);
        for beta in &all {
            if beta.is_zero() {
                continue;
            }
            let dim = BigInt::from(self.dim_u(beta)?);
            let have = series.get(beta).cloned().unwrap_or_else(BigInt::zero);
            let m = dim - have;
            assert!(!m.is_negative(), "inconsistent multiplicity inversion");
            if m.is_zero() {
                continue;
            }
            let m_u64: u64 = (&m).try_into().expect("multiplicity fits in u64");
            mults.insert(beta.clone(), m_u64);
            // series *= (1 − e^{−β})^{−m} = Σ_k C(m+k−1, k) e^{−kβ}
            let mut factor: Vec<(RootSum, BigInt)> = Vec::new();
            let mut k = 0u32;
            let mut coef = BigInt::one();
            loop {
                let kb = beta.scale(k);
                if kb.height() > cutoff {
                    break;
                }
                factor.push((kb, coef.clone()));
                coef = coef * (&m + BigInt::from(k)) / BigInt::from(k + 1);
                k += 1;
            }
            let mut next: BTreeMap<RootSum, BigInt> = BTreeMap::new();
            for (t, c) in &series {
                for (fb, fc) in &factor {
                    let s = t.add(fb);
                    if s.height() > cutoff {
                        continue;
                    }
                    *next.entry(s).or_insert_with(BigInt::zero) += c * fc;
                }
            }
            series = next;
        }
        Ok(mults)
    }

    /// Shapovalov gram matrix at multidegree `β`, on the monomial basis of the
    /// Verma module (words outside the Serre-ideal pivot columns), computed by
    /// the adjoint recursion `⟨fᵢu, v⟩ = ⟨u, eᵢv⟩` with `⟨m_λ, m_λ⟩ = 1`.
    pub fn shapovalov_gram(&mut self, lambda: &Weight, beta: &RootSum) -> Result<Vec<Vec<Rat>>> {
        self.ensure(beta)?;
        let grade = &self.grades[beta];
        let basis: Vec<Word> = grade
            .words
            .iter()
            .enumerate()
            .filter(|(k, _)| !grade.ui.has_pivot(*k as u32))
            .map(|(_, w)| w.clone())
            .collect();
        let mut memo: HashMap<(Word, Word), Rat> = HashMap::new();
        let mut gram = vec![vec![Rat::zero(); basis.len()]; basis.len()];
        for (r, u) in basis.iter().enumerate() {
            for (c, v) in basis.iter().enumerate().skip(r) {
                let x = self.pairing(u, v, lambda, &mut memo);
                gram[r][c] = x.clone();
                gram[c][r] = x;
            }
        }
        Ok(gram)
    }

    fn pairing(
        &self,
        u: &Word,
        v: &Word,
        lambda: &Weight,
        memo: &mut HashMap<(Word, Word), Rat>,
    ) -> Rat {
        if u.is_empty() {
            return if v.is_empty() { rat(1) } else { Rat::zero() };
        }
        let key = (u.clone(), v.clone());
        if let Some(x) = memo.get(&key) {
            return x.clone();
        }
        let i = u[0] as usize;
        let u_rest: Word = u[1..].to_vec();
        let mut total = Rat::zero();
        for (w, c) in self.apply_e_word(i, v, lambda) {
            total += c * self.pairing(&u_rest, &w, lambda, memo);
        }
        memo.insert(key, total.clone());
        total
    }

    /// Exact Shapovalov determinant on the Verma basis at `β`.
    pub fn shapovalov_det(&mut self, lambda: &Weight, beta: &RootSum) -> Result<Rat> {
        let gram = self.shapovalov_gram(lambda, beta)?;
        Ok(crate::linalg::det_dense(&gram))
    }

    /// Whether the product-formula criterion predicts a singular Shapovalov
    /// form at `β`: some positive root `β′` and `r ≥ 1` with `rβ′ ≤ β`,
    /// `(λ+ρ, β′) = (r/2)(β′, β′)`, and a nonzero partition count `P(β−rβ′)`.
    pub fn shapovalov_product_singular(&mut self, lambda: &Weight, beta: &RootSum) -> Result<bool> {
        let mults = self.root_multiplicities(beta.height())?;
        let rho = self.matrix.weyl_vector();
        let lam_rho = Weight {
            pairings: lambda
                .pairings
                .iter()
                .zip(&rho.pairings)
                .map(|(a, b)| a + b)
                .collect(),
        };
        for (root, _) in mults.iter() {
            let lhs = self.matrix.ip_weight_root(&lam_rho, root)?;
            let norm = self.matrix.ip_root_root(root, root)?;
            let mut r = 1u32;
            loop {
                let rb = root.scale(r);
                let Some(rest) = beta.checked_sub(&rb) else {
                    break;
                };
                if &lhs * rat(2) == rat(r as i64) * &norm && self.dim_u(&rest)? > 0 {
                    return Ok(true);
                }
                r += 1;
            }
        }
        Ok(false)
    }
}

/// Dimension of the multidegree-`(x, y)` component of the free Lie algebra on
/// two generators (the free case: rank 2, both nodes imaginary, joined edge):
/// `(1/(x+y)) Σ_{d | gcd(x,y)} μ(d) · C((x+y)/d, x/d)`.
pub fn witt_multiplicity(x: u64, y: u64) -> Result<u64> {
    if x == 0 && y == 0 {
        return Err(Error::InvalidInput("witt multiplicity needs (x,y) ≠ (0,0)".into()));
    }
    let g = gcd(x, y);
    let mut total = BigInt::zero();
    for d in 1..=g {
        if g % d != 0 {
            continue;
        }
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        total += BigInt::from(mu) * binomial((x + y) / d, x / d);
    }
    let (q, r) = num::Integer::div_rem(&total, &BigInt::from(x + y));
    assert!(r.is_zero(), "Witt formula must divide exactly");
    Ok((&q).try_into().expect("Witt dimension fits in u64"))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn moebius(mut n: u64) -> i64 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for t in 0..k.min(n - k) {
        c = c * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    c
}

/// All multidegrees `γ` with `γ ≤ β` componentwise.
fn all_below(beta: &RootSum) -> Vec<RootSum> {
    let mut out = vec![Vec::new()];
    for &b in &beta.coeffs {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for pre in &out {
            for c in 0..=b {
                let mut v = pre.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(|coeffs| RootSum { coeffs }).collect()
}

fn merge_duplicates(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Which submodule to quotient out of the induced module.
#[derive(Debug, Clone)]
pub enum KillSpec {
    /// No quotient beyond the defining relations: the Verma module `M(λ)`.
    Verma,
    /// Quotient by the left ideal generated by the monomial singular vectors
    /// `Π_{h∈H} f_h^{m_H(h)} · m_λ` of the given hole set.
    Holes(Vec<Hole>),
    /// Quotient by the maximal proper submodule: the simple module `L(λ)`.
    Simple,
}

/// A highest-weight module realized as per-grade quotients of `U(n⁻)`.
pub struct ModuleModel {
    pub lambda: Weight,
    pub spec: KillSpec,
    kill: BTreeMap<RootSum, Echelon>,
}

impl ModuleModel {
    pub fn new(lambda: Weight, spec: KillSpec) -> Self {
        ModuleModel {
            lambda,
            spec,
            kill: BTreeMap::new(),
        }
    }

    /// Finalizes the kill space at every grade `γ ≤ β`, in height order.
    pub fn ensure(&mut self, eng: &mut Engine, beta: &RootSum) -> Result<()> {
        eng.ensure(beta)?;
        let mut todo: Vec<RootSum> = all_below(beta)
            .into_iter()
            .filter(|g| !self.kill.contains_key(g))
            .collect();
        todo.sort();
        for gamma in todo {
            self.build_kill(eng, &gamma)?;
        }
        Ok(())
    }

    fn build_kill(&mut self, eng: &mut Engine, gamma: &RootSum) -> Result<()> {
        eng.ensure(gamma)?;
        let n = eng.matrix().size();
        let mut kill = eng.grade_ref(gamma).ui.clone();
        if !gamma.is_zero() && !matches!(self.spec, KillSpec::Verma) {
            // left-multiply lower-grade kill rows by each generator
            for i in 0..n {
                if gamma.coeffs[i] == 0 {
                    continue;
                }
                let lower = gamma.checked_sub(&RootSum::simple(n, i)).unwrap();
                let lower_rows: Vec<SparseVec> = self.kill[&lower].rows().to_vec();
                let lower_words = &eng.grade_ref(&lower).words;
                let grade = eng.grade_ref(gamma);
                for row in &lower_rows {
                    let mut lifted: SparseVec = row
                        .iter()
                        .map(|(col, c)| {
                            let mut w = lower_words[*col as usize].clone();
                            w.insert(0, i as u8);
                            (grade.col(&eng.normalize(w)), c.clone())
                        })
                        .collect();
                    lifted.sort_by_key(|e| e.0);
                    kill.insert(merge_duplicates(lifted));
                }
            }
        }
        match &self.spec {
            KillSpec::Verma => {}
            KillSpec::Holes(holes) => {
                for hole in holes {
                    if hole.root_sum(n).as_ref() == Some(gamma) {
                        let mut w: Word = Vec::new();
                        for (&h, &m) in &hole.powers {
                            w.extend(std::iter::repeat(h as u8).take(m as usize));
                        }
                        let w = eng.normalize(w);
                        let col = eng.grade_ref(gamma).col(&w);
                        kill.insert(vec![(col, rat(1))]);
                    }
                }
            }
            KillSpec::Simple => {
                if !gamma.is_zero() {
                    let lambda = self.lambda.clone();
                    let vecs = joint_e_kernel(eng, &lambda, gamma, &kill, &self.kill)?;
                    for v in vecs {
                        kill.insert(v);
                    }
                }
            }
        }
        self.kill.insert(gamma.clone(), kill);
        Ok(())
    }

    /// `dim M_{λ−β}` of the modeled module.
    pub fn dim(&mut self, eng: &mut Engine, beta: &RootSum) -> Result<u64> {
        self.ensure(eng, beta)?;
        let words = eng.grade(beta)?.words.len();
        Ok((words - self.kill[beta].rank()) as u64)
    }

    /// Monomial basis of the quotient at `β` (words at non-pivot columns).
    pub fn basis_words(&mut self, eng: &mut Engine, beta: &RootSum) -> Result<Vec<Word>> {
        self.ensure(eng, beta)?;
        let grade = eng.grade(beta)?;
        let kill = &self.kill[beta];
        Ok(grade
            .words
            .iter()
            .enumerate()
            .filter(|(k, _)| !kill.has_pivot(*k as u32))
            .map(|(_, w)| w.clone())
            .collect())
    }

    /// Dimension of the space of maximal (singular) vectors at grade `β`:
    /// the joint kernel of every raising operator out of the quotient.
    pub fn maximal_vector_space_dim(&mut self, eng: &mut Engine, beta: &RootSum) -> Result<usize> {
        Ok(self.maximal_vectors(eng, beta)?.len())
    }

    /// A basis (in word coordinates at `β`) of the maximal vectors at `β`.
    pub fn maximal_vectors(&mut self, eng: &mut Engine, beta: &RootSum) -> Result<Vec<SparseVec>> {
        self.ensure(eng, beta)?;
        if beta.is_zero() {
            return Ok(vec![vec![(0, rat(1))]]);
        }
        let lambda = self.lambda.clone();
        joint_e_kernel(eng, &lambda, beta, &self.kill[beta], &self.kill)
    }

    pub fn kill_rank(&mut self, eng: &mut Engine, beta: &RootSum) -> Result<usize> {
        self.ensure(eng, beta)?;
        Ok(self.kill[beta].rank())
    }
}

/// Joint kernel of all raising operators `eᵢ` on the quotient of `U(n⁻)_β` by
/// `kill_here`, mapping into the quotients at `β − αᵢ` given by `kill_lower`.
/// Returns kernel vectors in word coordinates at `β`.
fn joint_e_kernel(
    eng: &mut Engine,
    lambda: &Weight,
    beta: &RootSum,
    kill_here: &Echelon,
    kill_lower: &BTreeMap<RootSum, Echelon>,
) -> Result<Vec<SparseVec>> {
    let n = eng.matrix().size();
    eng.ensure(beta)?;
    let eng = &*eng;
    let grade = eng.grade_ref(beta);
    let basis_cols: Vec<u32> = (0..grade.words.len() as u32)
        .filter(|c| !kill_here.has_pivot(*c))
        .collect();
    if basis_cols.is_empty() {
        return Ok(Vec::new());
    }
    // output coordinates: (direction i, column at β−αᵢ), flattened
    let mut offsets = vec![0u32; n + 1];
    let mut lowers: Vec<Option<RootSum>> = vec![None; n];
    for i in 0..n {
        let width = if beta.coeffs[i] > 0 {
            let lower = beta.checked_sub(&RootSum::simple(n, i)).unwrap();
            let w = eng.grade_ref(&lower).words.len() as u32;
            lowers[i] = Some(lower);
            w
        } else {
            0
        };
        offsets[i + 1] = offsets[i] + width;
    }
    // transpose of the stacked raising-operator matrix: rows by output coord
    let mut rows: BTreeMap<u32, SparseVec> = BTreeMap::new();
    for (k, &col) in basis_cols.iter().enumerate() {
        let word = &grade.words[col as usize];
        for i in 0..n {
            let Some(lower) = lowers[i].clone() else {
                continue;
            };
            let terms = eng.apply_e_word(i, word, lambda);
            if terms.is_empty() {
                continue;
            }
            let mut image: SparseVec = terms
                .into_iter()
                .map(|(w, c)| (eng.grade_ref(&lower).col(&w), c))
                .collect();
            image.sort_by_key(|e| e.0);
            let image = kill_lower[&lower].reduce(merge_duplicates(image));
            for (c, v) in image {
                rows.entry(offsets[i] + c)
                    .or_default()
                    .push((k as u32, v));
            }
        }
    }
    let mut constraint = Echelon::new();
    for (_, row) in rows {
        constraint.insert(row);
    }
    let kernel = constraint.kernel_basis(basis_cols.len() as u32);
    Ok(kernel
        .into_iter()
        .map(|x| {
            let mut v: SparseVec = x
                .into_iter()
                .map(|(k, c)| (basis_cols[k as usize], c))
                .collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(c: &[u32]) -> RootSum {
        RootSum { coeffs: c.to_vec() }
    }

    #[test]
    fn normal_forms_respect_commutation() {
        let m = BkmCartanMatrix::from_i64(&[&[-2, 0], &[0, -2]]).unwrap();
        let eng = Engine::new(m);
        assert_eq!(eng.normalize(vec![1, 0, 1, 0]), vec![0, 0, 1, 1]);
        assert_eq!(eng.count_normal_words(&rs(&[2, 2])), 1);
        let m = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, -2]]).unwrap();
        let eng = Engine::new(m);
        assert_eq!(eng.normalize(vec![1, 0]), vec![1, 0]);
        assert_eq!(eng.count_normal_words(&rs(&[2, 2])), 6);
    }

    #[test]
    fn free_dims_match_witt_inversion() {
        // rank 2, both imaginary, joined: n⁻ is the free Lie algebra on 2 letters
        let m = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, -2]]).unwrap();
        let mut eng = Engine::new(m);
        let mults = eng.root_multiplicities(7).unwrap();
        assert_eq!(mults[&rs(&[1, 1])], 1);
        assert_eq!(mults[&rs(&[2, 2])], 1);
        assert_eq!(mults[&rs(&[2, 3])], 2);
        assert_eq!(mults[&rs(&[2, 4])], 2);
        assert_eq!(mults[&rs(&[2, 5])], 3);
        for (x, y) in [(1u64, 2u64), (3, 3), (1, 4), (2, 2), (3, 4)] {
            assert_eq!(
                mults.get(&rs(&[x as u32, y as u32])).copied().unwrap_or(0),
                witt_multiplicity(x, y).unwrap()
            );
        }
    }

    #[test]
    fn sl3_dims_via_serre_ideal() {
        // ordinary A₂: dim U(n⁻)_β = number of partitions of β into {α₁, α₂, α₁+α₂}
        let m = BkmCartanMatrix::from_i64(&[&[2, -1], &[-1, 2]]).unwrap();
        let mut eng = Engine::new(m);
        assert_eq!(eng.dim_u(&rs(&[1, 0])).unwrap(), 1);
        assert_eq!(eng.dim_u(&rs(&[1, 1])).unwrap(), 2);
        assert_eq!(eng.dim_u(&rs(&[2, 1])).unwrap(), 2);
        assert_eq!(eng.dim_u(&rs(&[2, 2])).unwrap(), 3);
        assert_eq!(eng.dim_u(&rs(&[3, 1])).unwrap(), 2);
        let mults = eng.root_multiplicities(4).unwrap();
        assert_eq!(mults.len(), 3);
        assert_eq!(mults[&rs(&[1, 1])], 1);
    }

    #[test]
    fn verma_and_simple_dims_sl2() {
        // A₁ with λ = 2: L(λ) is 3-dimensional, Verma is infinite
        let m = BkmCartanMatrix::from_i64(&[&[2]]).unwrap();
        let mut eng = Engine::new(m);
        let lam = Weight::from_i64(&[2]);
        let mut verma = ModuleModel::new(lam.clone(), KillSpec::Verma);
        let mut simple = ModuleModel::new(lam, KillSpec::Simple);
        for k in 0..6u32 {
            let b = rs(&[k]);
            assert_eq!(verma.dim(&mut eng, &b).unwrap(), 1);
            let expect = if k <= 2 { 1 } else { 0 };
            assert_eq!(simple.dim(&mut eng, &b).unwrap(), expect);
        }
        // the singular vector f^3·m_λ is maximal in the Verma module
        assert_eq!(verma.maximal_vector_space_dim(&mut eng, &rs(&[3])).unwrap(), 1);
        assert_eq!(verma.maximal_vector_space_dim(&mut eng, &rs(&[2])).unwrap(), 0);
    }

    #[test]
    fn hole_quotient_matches_simple_in_rank_one() {
        let m = BkmCartanMatrix::from_i64(&[&[2]]).unwrap();
        let mut eng = Engine::new(m);
        let lam = Weight::from_i64(&[2]);
        let hole = Hole {
            powers: BTreeMap::from([(0usize, 3u64)]),
        };
        let mut quot = ModuleModel::new(lam, KillSpec::Holes(vec![hole]));
        let dims: Vec<u64> = (0..6u32)
            .map(|k| quot.dim(&mut eng, &rs(&[k])).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn shapovalov_rank_one() {
        // A₁₁ = −2, λ = −4: the form on f^n·m_λ degenerates first at n = 5,
        // where n(λ + (n−1)) = 0.
        let m = BkmCartanMatrix::from_i64(&[&[-2]]).unwrap();
        let mut eng = Engine::new(m);
        let lam = Weight::from_i64(&[-4]);
        for k in 1..=6u32 {
            let det = eng.shapovalov_det(&lam, &rs(&[k])).unwrap();
            let singular = eng.shapovalov_product_singular(&lam, &rs(&[k])).unwrap();
            assert_eq!(det.is_zero(), singular, "grade {k}");
            assert_eq!(det.is_zero(), k >= 5, "grade {k}");
        }
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_multiplicity(1, 1).unwrap(), 1);
        assert_eq!(witt_multiplicity(2, 2).unwrap(), 1);
        assert_eq!(witt_multiplicity(2, 4).unwrap(), 2);
        assert_eq!(witt_multiplicity(2, 3).unwrap(), 2);
        assert_eq!(witt_multiplicity(2, 5).unwrap(), 3);
        assert_eq!(witt_multiplicity(1, 2).unwrap(), 1);
    }

    #[test]
    fn budget_guard_trips() {
        let m = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, -2]]).unwrap();
        let mut eng = Engine::with_budget_mb(m, 0);
        let err = eng.ensure(&rs(&[4, 4])).unwrap_err();
        assert!(matches!(err, Error::CutoffTooLargeForBudget(_)));
    }
}
