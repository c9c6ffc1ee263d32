//! Height-truncated formal characters.
//!
//! A [`FormalCharacter`] stores integer coefficients indexed by `β = λ − μ`
//! relative to a symbolic top weight `e^λ`, up to a height cutoff.  The
//! ambient weight lattice is never coordinatized; all arithmetic happens on
//! root sums.

use crate::cartan::{BkmCartanMatrix, NodeType, RootSum, Weight};
use crate::error::{Error, Result};
use crate::lie_engine::{Engine, ModuleModel};
use crate::rat::rat;
use crate::solver::{self, Tag22};
use crate::weights::{minimal_holes, HoleSet};
use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Sparse series `Σ_β c_β e^{top−β}` truncated at `ht(β) ≤ cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    pub top: Weight,
    pub coeffs: BTreeMap<RootSum, BigInt>,
    pub cutoff: u32,
}

/// JSON shape for characters.
#[derive(Serialize, Deserialize)]
pub struct CharacterJson {
    pub top: crate::cartan::WeightJson,
    pub coeffs: Vec<CoeffJson>,
    pub cutoff: u32,
}

#[derive(Serialize, Deserialize)]
pub struct CoeffJson {
    pub grade: Vec<u32>,
    pub c: i64,
}

impl FormalCharacter {
    pub fn new(top: Weight, cutoff: u32) -> Self {
        FormalCharacter {
            top,
            coeffs: BTreeMap::new(),
            cutoff,
        }
    }

    pub fn coeff(&self, beta: &RootSum) -> BigInt {
        self.coeffs.get(beta).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, beta: RootSum, c: BigInt) {
        if beta.height() <= self.cutoff && !c.is_zero() {
            self.coeffs.insert(beta, c);
        }
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            top: self.top.to_json(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| CoeffJson {
                    grade: b.coeffs.clone(),
                    c: i64::try_from(c).expect("character coefficient fits in i64"),
                })
                .collect(),
            cutoff: self.cutoff,
        }
    }
}

type Series = BTreeMap<RootSum, BigInt>;

/// Truncated product of two monomial series.
pub fn series_mul(a: &Series, b: &Series, cutoff: u32) -> Series {
    let mut out: Series = BTreeMap::new();
    for (ba, ca) in a {
        if ba.height() > cutoff {
            continue;
        }
        for (bb, cb) in b {
            let s = ba.add(bb);
            if s.height() > cutoff {
                continue;
            }
            *out.entry(s).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Truncated inverse of a series with constant term 1, by height recursion:
/// `inv(β) = −Σ_{0<γ≤β} a(γ)·inv(β−γ)`.
pub fn series_inverse(a: &Series, n: usize, cutoff: u32) -> Series {
    assert!(
        a.get(&RootSum::zero(n)).is_some_and(|c| c.is_one()),
        "series inversion needs constant term 1"
    );
    let mut inv: Series = BTreeMap::new();
    inv.insert(RootSum::zero(n), BigInt::one());
    for beta in RootSum::all_up_to(n, cutoff) {
        if beta.is_zero() {
            continue;
        }
        let mut acc = BigInt::zero();
        for (gamma, c) in a {
            if gamma.is_zero() {
                continue;
            }
            if let Some(rest) = beta.checked_sub(gamma) {
                if let Some(iv) = inv.get(&rest) {
                    acc += c * iv;
                }
            }
        }
        if !acc.is_zero() {
            inv.insert(beta, -acc);
        }
    }
    inv
}

/// The truncated denominator `R = Π_{α∈Δ⁺} (1−e^{−α})^{m_α}`, anchored at
/// `e⁰`.  For matrices without real nodes the independent-subset expansion
/// `Σ_S (−1)^{|S|} e^{−α_S}` is computed as well and asserted equal.
pub fn denominator(eng: &mut Engine, cutoff: u32) -> Result<FormalCharacter> {
    let n = eng.matrix().size();
    let mults = eng.root_multiplicities(cutoff)?;
    let mut series: Series = BTreeMap::from([(RootSum::zero(n), BigInt::one())]);
    for (root, &m) in &mults {
        // (1 − e^{−root})^m
        let mut factor: Series = BTreeMap::new();
        let mut k = 0u64;
        let mut coef = BigInt::one();
        loop {
            let kb = root.scale(k as u32);
            if kb.height() > cutoff || k > m {
                break;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            factor.insert(kb, &coef * BigInt::from(sign));
            coef = coef * BigInt::from(m - k) / BigInt::from(k + 1);
            k += 1;
        }
        series = series_mul(&series, &factor, cutoff);
    }
    if !eng.matrix().has_real_node() {
        let alt = independent_subset_denominator(eng.matrix(), cutoff);
        assert_eq!(
            series, alt,
            "denominator product must match the independent-subset expansion"
        );
    }
    let mut out = FormalCharacter::new(Weight::zero(n), cutoff);
    out.coeffs = series;
    Ok(out)
}

/// `Σ_{independent S} (−1)^{|S|} e^{−α_S}` over subsets of the node set.
pub fn independent_subset_denominator(m: &BkmCartanMatrix, cutoff: u32) -> Series {
    let n = m.size();
    let mut out: Series = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let s: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !m.is_independent(&s) {
            continue;
        }
        let mut coeffs = vec![0u32; n];
        for &i in &s {
            coeffs[i] = 1;
        }
        let beta = RootSum { coeffs };
        if beta.height() > cutoff {
            continue;
        }
        let sign = if s.len() % 2 == 0 { 1 } else { -1 };
        *out.entry(beta).or_insert_with(BigInt::zero) += BigInt::from(sign);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `char M(λ)`: the coefficient at `β` is `dim U(n⁻)_β`, independent of `λ`.
pub fn char_verma(eng: &mut Engine, lambda: &Weight, cutoff: u32) -> Result<FormalCharacter> {
    let n = eng.matrix().size();
    let mut out = FormalCharacter::new(lambda.clone(), cutoff);
    for beta in RootSum::all_up_to(n, cutoff) {
        out.set(beta.clone(), BigInt::from(eng.dim_u(&beta)?));
    }
    Ok(out)
}

/// Character of a modeled module by direct per-grade quotient dimensions.
pub fn char_module(
    eng: &mut Engine,
    module: &mut ModuleModel,
    cutoff: u32,
) -> Result<FormalCharacter> {
    let n = eng.matrix().size();
    let mut out = FormalCharacter::new(module.lambda.clone(), cutoff);
    for beta in RootSum::all_up_to(n, cutoff) {
        out.set(beta.clone(), BigInt::from(module.dim(eng, &beta)?));
    }
    Ok(out)
}

fn numerator_to_character(
    eng: &mut Engine,
    top: &Weight,
    numerator: &Series,
    cutoff: u32,
) -> Result<FormalCharacter> {
    let n = eng.matrix().size();
    let denom = denominator(eng, cutoff)?;
    let inv = series_inverse(&denom.coeffs, n, cutoff);
    let mut out = FormalCharacter::new(top.clone(), cutoff);
    out.coeffs = series_mul(numerator, &inv, cutoff);
    Ok(out)
}

/// The closed-form numerator of `char L(λ)` for the symmetric all-imaginary
/// rank-2 matrices `[[−b,−a],[−a,−b]]` with `λ ∈ P±`, dispatched on which
/// small tuple solves the norm equation; unclassified instances are refused.
pub fn numerator_simple_rank2(m: &BkmCartanMatrix, lambda: &Weight) -> Result<Series> {
    let (b, a) = rank2_symmetric_params(m)?;
    let cone = m.cone_membership(lambda);
    if !cone.in_p_pm {
        return Err(Error::PremiseFails("λ must lie in the signed cone P±".into()));
    }
    let m1 = u32::try_from(&cone.powers[&0]).map_err(|_| power_range())?;
    let m2 = u32::try_from(&cone.powers[&1]).map_err(|_| power_range())?;
    let mut series: Series = BTreeMap::new();
    let mut add = |coeffs: &[u32], c: i64| {
        *series
            .entry(RootSum {
                coeffs: coeffs.to_vec(),
            })
            .or_insert_with(BigInt::zero) += BigInt::from(c);
    };
    add(&[0, 0], 1);
    add(&[m1, 0], -1);
    add(&[0, m2], -1);
    let msum = (m1 + m2) as i64;
    if b * msum == 2 * b + 2 * a {
        // (1,1) solves the norm equation
        if m1.min(m2) >= 2 {
            add(&[1, 1], -1);
        }
    } else if m1 == 2 && m2 == 2 {
        // λ = ρ with a ≠ b: no interior term unless b = 4a, which still has
        // vanishing numerator coefficients at its interior solutions
    } else if b * msum == 4 * b + 4 * a {
        // (2,2) solves the norm equation: dispatch on the solution plot
        let inst = solver::QuadraticInstance::from_matrix(m, lambda)?;
        let cls = solver::classify_22(&inst)?;
        match cls.tag {
            Tag22::A => add(&[2, 2], -2),
            Tag22::B => {
                add(&[2, 2], -2);
                for (x, y) in cls.extras {
                    add(&[x, y], -1);
                }
            }
            Tag22::C | Tag22::D => {}
        }
    } else {
        return Err(Error::CaseNotCovered(format!(
            "instance b={b}, a={a}, M=({m1},{m2}) matches none of the classified cases"
        )));
    }
    series.retain(|_, c| !c.is_zero());
    Ok(series)
}

fn power_range() -> Error {
    Error::InvalidInput("string length out of range".into())
}

fn rank2_symmetric_params(m: &BkmCartanMatrix) -> Result<(i64, i64)> {
    if m.size() != 2 {
        return Err(Error::InvalidInput("expected a rank-2 matrix".into()));
    }
    let get = |i: usize, j: usize| -> Result<i64> {
        let v = m.entry(i, j);
        if !crate::rat::is_integer(v) {
            return Err(Error::InvalidInput("expected integer entries".into()));
        }
        i64::try_from(v.to_integer()).map_err(|_| Error::InvalidInput("entry out of range".into()))
    };
    let b = -get(0, 0)?;
    let d = -get(1, 1)?;
    let a = -get(0, 1)?;
    let a2 = -get(1, 0)?;
    if b <= 0 || d != b || a <= 0 || a2 != a {
        return Err(Error::InvalidInput(
            "expected the symmetric all-imaginary shape [[-b,-a],[-a,-b]] with a,b ≥ 1".into(),
        ));
    }
    Ok((b, a))
}

/// `char L(λ)` via [`numerator_simple_rank2`] divided by the denominator.
pub fn char_simple_rank2(
    eng: &mut Engine,
    lambda: &Weight,
    cutoff: u32,
) -> Result<FormalCharacter> {
    let numerator = numerator_simple_rank2(eng.matrix(), lambda)?;
    numerator_to_character(eng, lambda, &numerator, cutoff)
}

/// Character over negative type-A matrices at `λ = ρ` for a hole quotient
/// whose minimal holes all carry power 2: the numerator is the
/// inclusion–exclusion sum over hole subsets whose support unions stay
/// non-adjacent, with coefficient `(−1)^{#holes}` at twice the union.
pub fn numerator_thm_d(n: usize, hs: &HoleSet) -> Result<Series> {
    let m = BkmCartanMatrix::negative_type_a(n);
    let min = minimal_holes(hs);
    for h in &min.holes {
        if h.powers.values().any(|&p| p != 2) {
            return Err(Error::InvalidInput(
                "negative type-A numerator needs power 2 on every hole node".into(),
            ));
        }
    }
    let mut series: Series = BTreeMap::new();
    let holes = &min.holes;
    for mask in 0u32..(1 << holes.len()) {
        let mut union: BTreeSet<usize> = BTreeSet::new();
        let mut count = 0;
        for (k, h) in holes.iter().enumerate() {
            if mask & (1 << k) != 0 {
                union.extend(h.support());
                count += 1;
            }
        }
        if !m.is_independent(&union) {
            continue;
        }
        let mut coeffs = vec![0u32; n];
        for &i in &union {
            coeffs[i] = 2;
        }
        let sign = if count % 2 == 0 { 1 } else { -1 };
        *series
            .entry(RootSum { coeffs })
            .or_insert_with(BigInt::zero) += BigInt::from(sign);
    }
    series.retain(|_, c| !c.is_zero());
    Ok(series)
}

/// `char 𝕄(ρ, 𝓗)` over negative type-A, by the closed-form numerator.
pub fn char_thm_d(eng: &mut Engine, hs: &HoleSet, cutoff: u32) -> Result<FormalCharacter> {
    let n = eng.matrix().size();
    let numerator = numerator_thm_d(n, hs)?;
    let rho = eng.matrix().weyl_vector();
    numerator_to_character(eng, &rho, &numerator, cutoff)
}

/// Weyl–Kac–Borcherds character of `L(λ)` for dominant integral `λ`:
/// `char L(λ) = Σ_w (−1)^{ℓ(w)} w(S_λ) / (e^ρ R)` with
/// `S_λ = e^{λ+ρ} Σ_T (−1)^{|T|} e^{−α_T}` over independent sets of imaginary
/// nodes with vanishing pairing.  The Weyl sum is walked breadth-first over
/// the orbit of `λ+ρ`, pruned once the defect `τ_w = (λ+ρ) − w(λ+ρ)` exceeds
/// the cutoff (heights grow strictly along reduced words).
pub fn char_wkb(eng: &mut Engine, lambda: &Weight, cutoff: u32) -> Result<FormalCharacter> {
    let m = eng.matrix().clone();
    let n = m.size();
    let cone = m.cone_membership(lambda);
    if !cone.in_p_plus {
        return Err(Error::NotDominant(
            "the character formula needs λ dominant integral".into(),
        ));
    }
    // imaginary nodes with λ(αᵢ∨) = 0 contribute correction terms
    let eligible: Vec<usize> = (0..n)
        .filter(|&i| m.node_type(i) != NodeType::Real && lambda.pairings[i].is_zero())
        .collect();
    let mut indep_sets: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << eligible.len()) {
        let s: BTreeSet<usize> = eligible
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &i)| i)
            .collect();
        if m.is_independent(&s) {
            indep_sets.push(s.into_iter().collect());
        }
    }
    let real: Vec<usize> = (0..n)
        .filter(|&i| m.node_type(i) == NodeType::Real)
        .collect();
    // λ+ρ pairings, integral on real nodes
    let lam_rho: Vec<i64> = (0..n)
        .map(|i| {
            let v = &lambda.pairings[i] + m.entry(i, i) / rat(2);
            if real.contains(&i) {
                i64::try_from(v.to_integer()).expect("pairing fits in i64")
            } else {
                0 // unused for reflections at imaginary nodes
            }
        })
        .collect();
    #[derive(Clone)]
    struct OrbitState {
        tau: Vec<i64>,
        parity: bool,
        images: Vec<Vec<i64>>, // w(αᵢ) in root coordinates, per eligible node
    }
    let start = OrbitState {
        tau: vec![0; n],
        parity: false,
        images: eligible
            .iter()
            .map(|&i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v
            })
            .collect(),
    };
    let mut numerator: Series = BTreeMap::new();
    let mut visited: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    visited.insert(vec![0; n]);
    let a_int = |i: usize, j: usize| -> i64 {
        i64::try_from(m.entry(i, j).to_integer()).expect("integer Cartan entry")
    };
    while let Some(state) = queue.pop_front() {
        // contributions: β = τ_w + w(α_T) for each eligible independent T
        for t in &indep_sets {
            let mut beta = state.tau.clone();
            for &i in t {
                let k = eligible.iter().position(|&x| x == i).unwrap();
                for (j, c) in state.images[k].iter().enumerate() {
                    beta[j] += c;
                }
            }
            if beta.iter().any(|&c| c < 0) {
                continue;
            }
            let ht: i64 = beta.iter().sum();
            if ht > cutoff as i64 {
                continue;
            }
            let sign = if (state.parity as usize + t.len()) % 2 == 0 {
                1
            } else {
                -1
            };
            let rs = RootSum {
                coeffs: beta.iter().map(|&c| c as u32).collect(),
            };
            *numerator.entry(rs).or_insert_with(BigInt::zero) += BigInt::from(sign);
        }
        // extend the word by one reflection
        for &j in &real {
            // μ_j = (w(λ+ρ))(α_j∨) = (λ+ρ)(α_j∨) − Σ_k τ_k·A[j][k]
            let mu_j = lam_rho[j]
                - state
                    .tau
                    .iter()
                    .enumerate()
                    .map(|(k, &t)| t * a_int(j, k))
                    .sum::<i64>();
            if mu_j <= 0 {
                continue;
            }
            let mut tau = state.tau.clone();
            tau[j] += mu_j;
            if tau.iter().sum::<i64>() > cutoff as i64 || !visited.insert(tau.clone()) {
                continue;
            }
            let images = state
                .images
                .iter()
                .map(|c| {
                    let pair: i64 = c.iter().enumerate().map(|(k, &x)| x * a_int(j, k)).sum();
                    let mut nc = c.clone();
                    nc[j] -= pair;
                    nc
                })
                .collect();
            queue.push_back(OrbitState {
                tau,
                parity: !state.parity,
                images,
            });
        }
    }
    numerator.retain(|_, c| !c.is_zero());
    numerator_to_character(eng, lambda, &numerator, cutoff)
}

/// The `6r` candidate numerators of the composition-series analysis for a
/// rank-2 instance with a unique interior norm solution `(M₁, n)`:
/// `e^λ − l·e^{λ−M₁α₁} − i·e^{λ−M₂α₂} − ((j−l)+k)·e^{λ−M₁α₁−nα₂}` with
/// `l,i,j ∈ {0,1}`, `l ≤ j`, `k ∈ {0,…,r−1}`.  When `l = 1` the singular
/// vector `f₂ⁿf₁^{M₁}` already lies inside the submodule generated by
/// `f₁^{M₁}`, so killing it adds nothing beyond the `e^{λ−M₁α₁}` term —
/// hence the `j − l`.  The last one emitted (`l=i=j=1, k=r−1`) is the
/// simple-module numerator `e^λ − e^{λ−M₁α₁} − e^{λ−M₂α₂} −
/// (r−1)·e^{λ−M₁α₁−nα₂}`.
pub fn char_numerators_6r(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    r: u64,
) -> Result<Vec<FormalCharacter>> {
    if m.size() != 2 {
        return Err(Error::InvalidInput("expected a rank-2 matrix".into()));
    }
    let cone = m.cone_membership(lambda);
    if !cone.in_p_pm {
        return Err(Error::HypothesisFails("λ must lie in the signed cone P±".into()));
    }
    let m1 = u32::try_from(&cone.powers[&0]).map_err(|_| power_range())?;
    let m2 = u32::try_from(&cone.powers[&1]).map_err(|_| power_range())?;
    // n is the string length below the maximal vector at λ − M₁α₁
    let mu = m.subtract_roots(lambda, &RootSum {
        coeffs: vec![m1, 0],
    });
    let q = rat(2) * &mu.pairings[1] / m.entry(1, 1);
    if !crate::rat::is_nonneg_integer(&q) {
        return Err(Error::HypothesisFails(
            "the second string length below λ − M₁α₁ is not a non-negative integer".into(),
        ));
    }
    // the relation below λ − M₁α₁ sits at power 2μ₂/A₂₂ + 1
    let nn = u32::try_from(q.to_integer()).map_err(|_| power_range())? + 1;
    let inst = solver::QuadraticInstance::from_matrix(m, lambda)?;
    let sols = solver::enumerate_solutions(&inst, None)?;
    let interior: Vec<(u32, u32)> = sols
        .into_iter()
        .filter(|&(x, y)| {
            (x, y) != (0, 0) && (x, y) != (m1, 0) && (x, y) != (0, m2)
        })
        .collect();
    if interior != vec![(m1, nn)] {
        return Err(Error::HypothesisFails(format!(
            "expected the unique interior norm solution ({m1},{nn}), found {interior:?}"
        )));
    }
    if r == 0 {
        return Err(Error::HypothesisFails("r must be at least 1".into()));
    }
    let cutoff = (m1 + nn).max(m2);
    let mut out = Vec::new();
    for k in 0..r {
        for (l, i, j) in [(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)] {
            let mut ch = FormalCharacter::new(lambda.clone(), cutoff);
            ch.set(RootSum::zero(2), BigInt::one());
            ch.set(
                RootSum {
                    coeffs: vec![m1, 0],
                },
                BigInt::from(-l),
            );
            ch.set(
                RootSum {
                    coeffs: vec![0, m2],
                },
                BigInt::from(-i),
            );
            ch.set(
                RootSum {
                    coeffs: vec![m1, nn],
                },
                BigInt::from(-((j - l) + k as i64)),
            );
            out.push(ch);
        }
    }
    assert_eq!(out.len() as u64, 6 * r);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{simple_hole_set, Hole};

    fn rs(c: &[u32]) -> RootSum {
        RootSum { coeffs: c.to_vec() }
    }

    #[test]
    fn denominator_rank2_imaginary_two_terms() {
        // symmetric all-imaginary rank 2: R = 1 − e^{−α₁} − e^{−α₂} exactly
        let m = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, -2]]).unwrap();
        let mut eng = Engine::new(m);
        let d = denominator(&mut eng, 6).unwrap();
        assert_eq!(d.coeff(&rs(&[0, 0])), BigInt::one());
        assert_eq!(d.coeff(&rs(&[1, 0])), BigInt::from(-1));
        assert_eq!(d.coeff(&rs(&[0, 1])), BigInt::from(-1));
        assert_eq!(d.coeffs.len(), 3);
    }

    #[test]
    fn denominator_rank1_real() {
        let m = BkmCartanMatrix::from_i64(&[&[2]]).unwrap();
        let mut eng = Engine::new(m);
        let d = denominator(&mut eng, 5).unwrap();
        assert_eq!(d.coeffs.len(), 2);
        assert_eq!(d.coeff(&rs(&[1])), BigInt::from(-1));
    }

    #[test]
    fn denominator_negative_a3_independent_subsets() {
        let m = BkmCartanMatrix::negative_type_a(3);
        let mut eng = Engine::new(m);
        let d = denominator(&mut eng, 5).unwrap();
        assert_eq!(d.coeff(&rs(&[1, 0, 1])), BigInt::one());
        assert_eq!(d.coeff(&rs(&[1, 1, 0])), BigInt::zero());
        assert_eq!(d.coeffs.len(), 5);
    }

    #[test]
    fn verma_times_denominator_is_top() {
        for m in [
            BkmCartanMatrix::from_i64(&[&[2, -1], &[-1, 2]]).unwrap(),
            BkmCartanMatrix::from_i64(&[&[2, -1], &[-1, -2]]).unwrap(),
            BkmCartanMatrix::negative_type_a(3),
        ] {
            let n = m.size();
            let mut eng = Engine::new(m);
            let lam = Weight::zero(n);
            let v = char_verma(&mut eng, &lam, 5).unwrap();
            let d = denominator(&mut eng, 5).unwrap();
            let prod = series_mul(&v.coeffs, &d.coeffs, 5);
            assert_eq!(prod, BTreeMap::from([(RootSum::zero(n), BigInt::one())]));
        }
    }

    #[test]
    fn thm_d_numerator_n3_simple() {
        let m = BkmCartanMatrix::negative_type_a(3);
        let rho = m.weyl_vector();
        let hs = simple_hole_set(&m, &rho, 8).unwrap();
        let num = numerator_thm_d(3, &hs).unwrap();
        let expected: Series = BTreeMap::from([
            (rs(&[0, 0, 0]), BigInt::from(1)),
            (rs(&[2, 0, 0]), BigInt::from(-1)),
            (rs(&[0, 2, 0]), BigInt::from(-1)),
            (rs(&[0, 0, 2]), BigInt::from(-1)),
            (rs(&[2, 0, 2]), BigInt::from(1)),
        ]);
        assert_eq!(num, expected);
    }

    #[test]
    fn thm_d_numerator_wide_hole() {
        let hs = HoleSet::new(
            vec![Hole {
                powers: std::collections::BTreeMap::from([(0, 2), (2, 2)]),
            }],
            8,
        );
        let num = numerator_thm_d(3, &hs).unwrap();
        let expected: Series = BTreeMap::from([
            (rs(&[0, 0, 0]), BigInt::from(1)),
            (rs(&[2, 0, 2]), BigInt::from(-1)),
        ]);
        assert_eq!(num, expected);
        let empty = numerator_thm_d(3, &HoleSet::empty(8)).unwrap();
        assert_eq!(empty, BTreeMap::from([(rs(&[0, 0, 0]), BigInt::from(1))]));
    }

    #[test]
    fn wkb_rank1_sl2() {
        let m = BkmCartanMatrix::from_i64(&[&[2]]).unwrap();
        let mut eng = Engine::new(m);
        let lam = Weight::from_i64(&[1]);
        let ch = char_wkb(&mut eng, &lam, 6).unwrap();
        assert_eq!(ch.coeff(&rs(&[0])), BigInt::one());
        assert_eq!(ch.coeff(&rs(&[1])), BigInt::one());
        assert_eq!(ch.coeff(&rs(&[2])), BigInt::zero());
        assert_eq!(ch.coeffs.len(), 2);
    }

    #[test]
    fn wkb_rejects_non_dominant() {
        let m = BkmCartanMatrix::from_i64(&[&[2]]).unwrap();
        let mut eng = Engine::new(m);
        let lam = Weight::from_i64(&[-1]);
        assert!(matches!(
            char_wkb(&mut eng, &lam, 4),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn wkb_strictly_imaginary_dominant_is_verma() {
        // no real nodes and all pairings positive: L(λ) = M(λ)
        let m = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, -2]]).unwrap();
        let mut eng = Engine::new(m);
        let lam = Weight::from_i64(&[1, 1]);
        let ch = char_wkb(&mut eng, &lam, 5).unwrap();
        let v = char_verma(&mut eng, &lam, 5).unwrap();
        assert_eq!(ch, v);
    }

    #[test]
    fn heisenberg_correction_term_present() {
        let m = BkmCartanMatrix::from_i64(&[&[0]]).unwrap();
        let mut eng = Engine::new(m);
        let lam = Weight::zero(1);
        // S_λ carries −e^{λ+ρ−α₁}; L(0) is the trivial module
        let ch = char_wkb(&mut eng, &lam, 5).unwrap();
        assert_eq!(ch.coeffs.len(), 1);
        assert_eq!(ch.coeff(&rs(&[0])), BigInt::one());
    }

    #[test]
    fn six_r_count_and_simple_numerator() {
        // [[−2,−1],[−1,−2]], M = (1,4): unique interior solution (1,3)
        let m = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, -2]]).unwrap();
        let lam = Weight::from_i64(&[0, -3]);
        let nums = char_numerators_6r(&m, &lam, 1).unwrap();
        assert_eq!(nums.len(), 6);
        let last = nums.last().unwrap();
        assert_eq!(last.coeff(&rs(&[0, 0])), BigInt::one());
        assert_eq!(last.coeff(&rs(&[1, 0])), BigInt::from(-1));
        assert_eq!(last.coeff(&rs(&[0, 4])), BigInt::from(-1));
        // simple-module coefficient at the interior solution is −(r−1)
        assert_eq!(last.coeff(&rs(&[1, 3])), BigInt::from(0));
        let nums = char_numerators_6r(&m, &lam, 2).unwrap();
        assert_eq!(nums.len(), 12);
        assert_eq!(nums.last().unwrap().coeff(&rs(&[1, 3])), BigInt::from(-1));
    }
}
