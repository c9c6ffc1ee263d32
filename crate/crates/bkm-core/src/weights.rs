//! Hole-set calculus and closed-form weight-set computations.
//!
//! A *hole* of a highest-weight module `V` with top `λ` is a pair `(H, m_H)`
//! where `H` is an independent set of nodes inside the signed cone support
//! `J_λ`, each power is the forced sl₂-string length on real/negative nodes
//! (arbitrary on Heisenberg nodes), and the monomial `Π f_h^{m_H(h)} · m_λ`
//! vanishes in `V`.  Weight memberships below `λ` reduce to hole domination
//! at independent-support grades, where the Verma weight spaces are lines.

use crate::cartan::{BkmCartanMatrix, NodeType, RootSum, Weight};
use crate::error::{Error, Result};
use crate::lie_engine::Engine;
use crate::rat::{rat, Rat};
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A single hole: support with powers (support = key set, powers ≥ 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hole {
    pub powers: BTreeMap<usize, u64>,
}

impl Hole {
    pub fn singleton(node: usize, power: u64) -> Self {
        Hole {
            powers: BTreeMap::from([(node, power)]),
        }
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.powers.keys().copied().collect()
    }

    /// `Σ m_H(h)·α_h` as a root sum, when the powers fit.
    pub fn root_sum(&self, n: usize) -> Option<RootSum> {
        let mut coeffs = vec![0u32; n];
        for (&h, &m) in &self.powers {
            coeffs[h] = u32::try_from(m).ok()?;
        }
        Some(RootSum { coeffs })
    }

    /// Drops zero powers; a power of zero does not constrain the vanishing
    /// monomial, so `(H, m)` and its zero-stripped version are interchangeable.
    pub fn canonicalize(&self) -> Hole {
        Hole {
            powers: self
                .powers
                .iter()
                .filter(|(_, &m)| m > 0)
                .map(|(&h, &m)| (h, m))
                .collect(),
        }
    }

    /// The hole partial order: `self ⪯ other ⟺ supp(self) ⊆ supp(other)` and
    /// the powers of `self` are ≤ those of `other` on its support.
    pub fn le(&self, other: &Hole) -> bool {
        self.powers
            .iter()
            .all(|(h, m)| other.powers.get(h).is_some_and(|m2| m <= m2))
    }

    /// Whether this hole excludes the independent-support grade `β`:
    /// `H ⊆ supp(β)` and `m_H(h) ≤ β_h` for all `h ∈ H`.
    pub fn dominates(&self, beta: &[i64]) -> bool {
        self.powers
            .iter()
            .all(|(&h, &m)| beta[h] > 0 && beta[h] >= m as i64)
    }
}

/// A finite hole set plus the enumeration cap for Heisenberg powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleSet {
    pub holes: Vec<Hole>,
    pub heisenberg_power_cap: u32,
}

impl HoleSet {
    pub fn empty(cap: u32) -> Self {
        HoleSet {
            holes: Vec::new(),
            heisenberg_power_cap: cap,
        }
    }

    pub fn new(holes: Vec<Hole>, cap: u32) -> Self {
        HoleSet {
            holes,
            heisenberg_power_cap: cap,
        }
    }
}

/// JSON shape for hole sets.
#[derive(Serialize, Deserialize)]
pub struct HoleSetJson {
    pub holes: Vec<HoleJson>,
    pub cap: u32,
}

#[derive(Serialize, Deserialize)]
pub struct HoleJson {
    pub support: Vec<usize>,
    pub powers: BTreeMap<String, u64>,
}

impl HoleSet {
    pub fn to_json(&self) -> HoleSetJson {
        HoleSetJson {
            holes: self
                .holes
                .iter()
                .map(|h| HoleJson {
                    support: h.support().into_iter().collect(),
                    powers: h
                        .powers
                        .iter()
                        .map(|(k, v)| (k.to_string(), *v))
                        .collect(),
                })
                .collect(),
            cap: self.heisenberg_power_cap,
        }
    }

    pub fn from_json(j: &HoleSetJson) -> Result<Self> {
        let mut holes = Vec::with_capacity(j.holes.len());
        for hj in &j.holes {
            let mut powers = BTreeMap::new();
            for (k, &v) in &hj.powers {
                let node: usize = k
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad node index {k:?}")))?;
                powers.insert(node, v);
            }
            for &s in &hj.support {
                powers.entry(s).or_insert(0);
            }
            holes.push(Hole { powers });
        }
        Ok(HoleSet::new(holes, j.cap))
    }
}

/// Checks the defining hole conditions against `λ`: independent support inside
/// `J_λ`, and the forced power `|2/A_hh·λ(α_h∨)| + 1` on real/negative nodes.
pub fn validate_hole_set(m: &BkmCartanMatrix, lambda: &Weight, hs: &HoleSet) -> Result<()> {
    let cone = m.cone_membership(lambda);
    for hole in &hs.holes {
        let supp = hole.support();
        if supp.is_empty() {
            return Err(Error::InvalidInput("hole with empty support".into()));
        }
        if !m.is_independent(&supp) {
            return Err(Error::InvalidInput(format!(
                "hole support {supp:?} is not independent"
            )));
        }
        for (&h, &mh) in &hole.powers {
            if !cone.j_lambda.contains(&h) {
                return Err(Error::InvalidInput(format!(
                    "hole node {h} lies outside the signed-cone support of λ"
                )));
            }
            if m.node_type(h) != NodeType::Heisenberg {
                let forced = forced_power(&cone.powers[&h])?;
                if mh != forced {
                    return Err(Error::InvalidInput(format!(
                        "hole power {mh} at node {h} must be the forced value {forced}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn forced_power(big: &num::bigint::BigInt) -> Result<u64> {
    u64::try_from(big).map_err(|_| Error::InvalidInput("hole power out of range".into()))
}

/// The ⪯-minimal members (after canonicalization), deduplicated.
pub fn minimal_holes(hs: &HoleSet) -> HoleSet {
    let canon: Vec<Hole> = hs.holes.iter().map(Hole::canonicalize).collect();
    let mut min: Vec<Hole> = Vec::new();
    for (k, h) in canon.iter().enumerate() {
        let redundant = canon
            .iter()
            .enumerate()
            .any(|(k2, h2)| h2.le(h) && (h2 != h || k2 < k));
        if !redundant {
            min.push(h.clone());
        }
    }
    min.sort();
    HoleSet::new(min, hs.heisenberg_power_cap)
}

/// The minimal hole set of the simple module `L(λ)`: one singleton per node of
/// `J_λ`, with the forced power on real/negative nodes and power 1 on
/// Heisenberg nodes.
pub fn simple_hole_set(m: &BkmCartanMatrix, lambda: &Weight, cap: u32) -> Result<HoleSet> {
    let cone = m.cone_membership(lambda);
    let mut holes = Vec::new();
    for &i in &cone.j_lambda {
        let power = match m.node_type(i) {
            NodeType::Heisenberg => 1,
            _ => forced_power(&cone.powers[&i])?,
        };
        holes.push(Hole::singleton(i, power));
    }
    Ok(HoleSet::new(holes, cap))
}

/// Whether each minimal hole has support inside `𝓘⁻ ⊔ 𝓘⁰` (any size) or is a
/// real singleton.
pub fn is_nice(m: &BkmCartanMatrix, hs: &HoleSet) -> bool {
    minimal_holes(hs).holes.iter().all(|h| nice_shaped(m, h))
}

fn nice_shaped(m: &BkmCartanMatrix, hole: &Hole) -> bool {
    let supp = hole.support();
    let no_real = supp.iter().all(|&h| m.node_type(h) != NodeType::Real);
    no_real || supp.len() == 1
}

/// The integrability set: real nodes carried by some singleton hole.
pub fn integrability_set(m: &BkmCartanMatrix, hs: &HoleSet) -> BTreeSet<usize> {
    minimal_holes(hs)
        .holes
        .iter()
        .filter_map(|h| {
            let supp = h.support();
            if supp.len() == 1 {
                let i = *supp.iter().next().unwrap();
                (m.node_type(i) == NodeType::Real).then_some(i)
            } else {
                None
            }
        })
        .collect()
}

/// Membership of `μ = λ − β` with independent `supp(β)` in `wt 𝕄(λ, 𝓗)`:
/// false exactly when some hole dominates `β`.  Exact because those weight
/// spaces of the Verma module are one-dimensional.
pub fn independent_weight_in_wt(
    m: &BkmCartanMatrix,
    hs: &HoleSet,
    beta: &RootSum,
) -> Result<bool> {
    if !m.is_independent(&beta.support()) {
        return Err(Error::InvalidInput(format!(
            "support of {beta} is not independent"
        )));
    }
    let signed: Vec<i64> = beta.coeffs.iter().map(|&c| c as i64).collect();
    Ok(!hs.holes.iter().any(|h| h.canonicalize().dominates(&signed)))
}

/// Brings `β` (signed coordinates of `λ − μ`) to the `I_V`-dominant
/// representative of its Weyl orbit, reflecting whenever `μ(αᵢ∨) < 0`,
/// `i ∈ I_V`.  Each step strictly decreases the height of `β`.
fn dominant_representative(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    iv: &BTreeSet<usize>,
    mut beta: Vec<Rat>,
) -> Vec<Rat> {
    let mut steps = 0u32;
    loop {
        let mut reflected = false;
        for &i in iv {
            let mut mu_i = lambda.pairings[i].clone();
            for (j, b) in beta.iter().enumerate() {
                if !b.is_zero() {
                    mu_i -= m.entry(i, j) * b;
                }
            }
            if mu_i.is_negative() {
                // sᵢ(λ − β) = λ − (β + μ(αᵢ∨)·eᵢ)
                beta[i] += mu_i;
                reflected = true;
                break;
            }
        }
        if !reflected {
            return beta;
        }
        steps += 1;
        assert!(steps < 100_000, "dominance reflection failed to terminate");
    }
}

/// Theorem-A membership test for nice hole sets: `λ − β ∈ wt 𝕄(λ, 𝓗)`?
pub fn thm_a_membership(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    hs: &HoleSet,
    beta_signed: &[Rat],
) -> Result<bool> {
    let n = m.size();
    for b in beta_signed {
        if !crate::rat::is_integer(b) {
            return Err(Error::NonIntegralDifference(format!(
                "λ − μ has non-integral coordinate {}",
                crate::rat::format_rat(b)
            )));
        }
    }
    let iv = integrability_set(m, hs);
    let beta = dominant_representative(m, lambda, &iv, beta_signed.to_vec());
    // μ ⪯ λ after moving to the dominant chamber
    if beta.iter().any(|b| b.is_negative()) {
        return Ok(false);
    }
    let beta: Vec<i64> = beta
        .iter()
        .map(|b| {
            i64::try_from(b.to_integer())
                .map_err(|_| Error::InvalidInput("root coordinate out of range".into()))
        })
        .collect::<Result<_>>()?;
    // (C1): μ(αᵢ∨) ∈ ℤ≥0 for i ∈ I_V — guaranteed by dominance + integrality
    for &i in &iv {
        let mut mu_i = lambda.pairings[i].clone();
        for j in 0..n {
            mu_i -= m.entry(i, j) * rat(beta[j]);
        }
        if !crate::rat::is_nonneg_integer(&mu_i) {
            return Ok(false);
        }
    }
    // (C2): some choice of one node per support component passes domination
    let supp: BTreeSet<usize> = (0..n).filter(|&j| beta[j] > 0).collect();
    if supp.is_empty() {
        return Ok(true);
    }
    let comps = m.dynkin_components(&supp);
    let min = minimal_holes(hs);
    let choices: Vec<Vec<(usize, i64)>> = comps
        .iter()
        .map(|comp| {
            if comp.len() == 1 {
                vec![(comp[0], beta[comp[0]])]
            } else {
                comp.iter().map(|&j| (j, 1)).collect()
            }
        })
        .collect();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut reduced = vec![0i64; n];
        for (k, &p) in pick.iter().enumerate() {
            let (j, c) = choices[k][p];
            reduced[j] = c;
        }
        if !min.holes.iter().any(|h| h.dominates(&reduced)) {
            return Ok(true);
        }
        // advance the mixed-radix choice counter
        let mut k = 0;
        loop {
            if k == pick.len() {
                return Ok(false);
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// All `β` with `ht(β) ≤ cutoff` and `λ − β ∈ wt 𝕄(λ, 𝓗)` (nice `𝓗`).
pub fn thm_a_enumerate(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    hs: &HoleSet,
    cutoff: u32,
) -> Result<BTreeSet<RootSum>> {
    use rayon::prelude::*;
    let hits: Vec<Option<RootSum>> = RootSum::all_up_to(m.size(), cutoff)
        .into_par_iter()
        .map(|beta| {
            let signed: Vec<Rat> = beta.coeffs.iter().map(|&c| rat(c as i64)).collect();
            Ok(thm_a_membership(m, lambda, hs, &signed)?.then_some(beta))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// The specialized simple-module membership test (`𝓗 = 𝓗_{L(λ)}`), phrased
/// directly in terms of `J_λ` and the string lengths: after `I_V`-dominance,
/// every multi-node support component must contain a node outside `J_λ` or
/// with nonzero pairing, and every singleton component `{j}` must have
/// coefficient below the string length (free when `j ∉ J_λ`, closed for
/// Heisenberg nodes of `J_λ`).
pub fn simple_membership(m: &BkmCartanMatrix, lambda: &Weight, beta_signed: &[Rat]) -> Result<bool> {
    let n = m.size();
    for b in beta_signed {
        if !crate::rat::is_integer(b) {
            return Err(Error::NonIntegralDifference(
                "λ − μ is not an integral root combination".into(),
            ));
        }
    }
    let cone = m.cone_membership(lambda);
    let iv: BTreeSet<usize> = cone
        .j_lambda
        .iter()
        .copied()
        .filter(|&i| m.node_type(i) == NodeType::Real)
        .collect();
    let beta = dominant_representative(m, lambda, &iv, beta_signed.to_vec());
    if beta.iter().any(|b| b.is_negative()) {
        return Ok(false);
    }
    let beta: Vec<i64> = beta.iter().map(|b| i64::try_from(b.to_integer()).unwrap()).collect();
    for &i in &iv {
        let mut mu_i = lambda.pairings[i].clone();
        for j in 0..n {
            mu_i -= m.entry(i, j) * rat(beta[j]);
        }
        if !crate::rat::is_nonneg_integer(&mu_i) {
            return Ok(false);
        }
    }
    let supp: BTreeSet<usize> = (0..n).filter(|&j| beta[j] > 0).collect();
    for comp in m.dynkin_components(&supp) {
        if comp.len() > 1 {
            let ok = comp.iter().any(|&j| {
                !cone.j_lambda.contains(&j) || !lambda.pairings[j].is_zero()
            });
            if !ok {
                return Ok(false);
            }
        } else {
            let j = comp[0];
            let c = beta[j];
            let ok = if !cone.j_lambda.contains(&j) {
                true
            } else {
                match m.node_type(j) {
                    NodeType::Heisenberg => false,
                    _ => {
                        let forced = forced_power(&cone.powers[&j])? as i64;
                        c < forced
                    }
                }
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Theorem-B weight set for an arbitrary capped hole set, by both formulas
/// (union of simple-module weight sets over non-holes, and union of nice
/// extensions); the two are asserted equal and the common value returned.
pub fn thm_b_weights(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    hs: &HoleSet,
    cutoff: u32,
) -> Result<BTreeSet<RootSum>> {
    let by_simples = thm_b_by_simples(m, lambda, hs, cutoff)?;
    let by_nice = thm_b_by_nice_extensions(m, lambda, hs, cutoff)?;
    assert_eq!(
        by_simples, by_nice,
        "the two closed-form weight-set expansions disagree"
    );
    Ok(by_simples)
}

/// Second expansion: `wt V = ⋃ wt L(λ − Σ f_H(h)·α_h)` over the independent
/// power assignments that are *not* holes of `V`; the empty assignment always
/// qualifies and contributes `wt L(λ)`.
fn thm_b_by_simples(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    hs: &HoleSet,
    cutoff: u32,
) -> Result<BTreeSet<RootSum>> {
    let n = m.size();
    let cone = m.cone_membership(lambda);
    let min = minimal_holes(hs);
    let cap = hs.heisenberg_power_cap.max(1);
    let jl: Vec<usize> = cone.j_lambda.iter().copied().collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << jl.len()) {
        let supp: BTreeSet<usize> = jl
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &i)| i)
            .collect();
        if !m.is_independent(&supp) {
            continue;
        }
        // forced powers on real/negative nodes; all caps on Heisenberg nodes
        let nodes: Vec<usize> = supp.iter().copied().collect();
        let ranges: Vec<Vec<u64>> = nodes
            .iter()
            .map(|&h| match m.node_type(h) {
                NodeType::Heisenberg => (1..=cap as u64).collect(),
                _ => vec![forced_power(&cone.powers[&h]).expect("string length fits u64")],
            })
            .collect();
        let mut pick = vec![0usize; nodes.len()];
        // the empty assignment (mask 0) runs once and contributes wt L(λ)
        'assign: loop {
            let hole = Hole {
                powers: nodes
                    .iter()
                    .enumerate()
                    .map(|(k, &h)| (h, ranges[k][pick[k]]))
                    .collect(),
            };
            let is_hole_of_v = min.holes.iter().any(|h0| h0.le(&hole));
            if !is_hole_of_v {
                if let Some(delta) = hole.root_sum(n) {
                    if delta.height() <= cutoff {
                        let mu = m.subtract_roots(lambda, &delta);
                        let rest = cutoff - delta.height();
                        for gamma in RootSum::all_up_to(n, rest) {
                            let signed: Vec<Rat> =
                                gamma.coeffs.iter().map(|&c| rat(c as i64)).collect();
                            if simple_membership(m, &mu, &signed)? {
                                out.insert(delta.add(&gamma));
                            }
                        }
                    }
                }
            }
            // advance the mixed-radix power assignment
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break 'assign;
                }
                pick[k] += 1;
                if pick[k] < ranges[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
    Ok(out)
}

/// First expansion: union of `wt 𝕄(λ, 𝓗′)` over the minimal nice hole sets
/// `𝓗′` refining `𝓗` — each non-nice minimal hole is replaced by one of its
/// nice sub-holes, over all choice functions.
fn thm_b_by_nice_extensions(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    hs: &HoleSet,
    cutoff: u32,
) -> Result<BTreeSet<RootSum>> {
    let min = minimal_holes(hs);
    let (nice, ugly): (Vec<Hole>, Vec<Hole>) = min
        .holes
        .iter()
        .cloned()
        .partition(|h| nice_shaped(m, h));
    if ugly.is_empty() {
        return thm_a_enumerate(m, lambda, &min, cutoff);
    }
    let candidate_sets: Vec<Vec<Hole>> = ugly.iter().map(|h| nice_sub_holes(m, h)).collect();
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; candidate_sets.len()];
    loop {
        let mut holes = nice.clone();
        for (k, &p) in pick.iter().enumerate() {
            holes.push(candidate_sets[k][p].clone());
        }
        let ext = HoleSet::new(holes, hs.heisenberg_power_cap);
        out.extend(thm_a_enumerate(m, lambda, &ext, cutoff)?);
        let mut k = 0;
        loop {
            if k == pick.len() {
                return Ok(out);
            }
            pick[k] += 1;
            if pick[k] < candidate_sets[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// All nice-shaped holes `⪯ (H, m)`: nonempty subsets of the support that are
/// real singletons or real-free, keeping real/negative powers and lowering
/// Heisenberg powers arbitrarily (zero powers drop out of the support).
fn nice_sub_holes(m: &BkmCartanMatrix, hole: &Hole) -> Vec<Hole> {
    let nodes: Vec<usize> = hole.support().into_iter().collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << nodes.len()) {
        let sub: Vec<usize> = nodes
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &h)| h)
            .collect();
        let shape_ok = sub.iter().all(|&h| m.node_type(h) != NodeType::Real)
            || sub.len() == 1;
        if !shape_ok {
            continue;
        }
        // enumerate Heisenberg power reductions
        let ranges: Vec<Vec<u64>> = sub
            .iter()
            .map(|&h| match m.node_type(h) {
                NodeType::Heisenberg => (0..=hole.powers[&h]).collect(),
                _ => vec![hole.powers[&h]],
            })
            .collect();
        let mut pick = vec![0usize; sub.len()];
        loop {
            let cand = Hole {
                powers: sub
                    .iter()
                    .enumerate()
                    .map(|(k, &h)| (h, ranges[k][pick[k]]))
                    .collect(),
            }
            .canonicalize();
            if !cand.powers.is_empty() {
                out.insert(cand);
            }
            let mut k = 0;
            loop {
                if k == pick.len() {
                    break;
                }
                pick[k] += 1;
                if pick[k] < ranges[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if pick.iter().all(|&p| p == 0) {
                break;
            }
        }
    }
    out.into_iter().collect()
}

/// Verifies the Minkowski-difference factorization of the weight set within
/// the cutoff: `wt V = (wt V ∩ [λ − ℤ≥0 Π_{J_V}]) − ℤ≥0·(Δ⁺ ∖ Δ⁺_{J_V})`,
/// where `J_V` is the union of the minimal hole supports and `Δ⁺` is read off
/// the root multiplicities.
pub fn minkowski_check(
    eng: &mut Engine,
    lambda: &Weight,
    hs: &HoleSet,
    cutoff: u32,
) -> Result<bool> {
    let m = eng.matrix().clone();
    let left = thm_a_enumerate(&m, lambda, hs, cutoff)?;
    let jv: BTreeSet<usize> = minimal_holes(hs)
        .holes
        .iter()
        .flat_map(|h| h.support())
        .collect();
    let outside: Vec<RootSum> = eng
        .root_multiplicities(cutoff)?
        .into_keys()
        .filter(|r| !r.support().is_subset(&jv))
        .collect();
    let seeds: Vec<RootSum> = left
        .iter()
        .filter(|b| b.support().is_subset(&jv))
        .cloned()
        .collect();
    let mut right: BTreeSet<RootSum> = seeds.iter().cloned().collect();
    let mut frontier: Vec<RootSum> = seeds;
    while let Some(b) = frontier.pop() {
        for g in &outside {
            let nb = b.add(g);
            if nb.height() <= cutoff && right.insert(nb.clone()) {
                frontier.push(nb);
            }
        }
    }
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(c: &[u32]) -> RootSum {
        RootSum { coeffs: c.to_vec() }
    }

    fn signed(c: &[i64]) -> Vec<Rat> {
        c.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn minimal_holes_filters_dominated() {
        let hs = HoleSet::new(
            vec![
                Hole::singleton(0, 2),
                Hole {
                    powers: BTreeMap::from([(0, 2), (2, 2)]),
                },
            ],
            4,
        );
        let min = minimal_holes(&hs);
        assert_eq!(min.holes, vec![Hole::singleton(0, 2)]);
        assert!(minimal_holes(&HoleSet::empty(4)).holes.is_empty());
    }

    #[test]
    fn simple_hole_set_negative_a3_rho() {
        let m = BkmCartanMatrix::negative_type_a(3);
        let rho = m.weyl_vector();
        let hs = simple_hole_set(&m, &rho, 4).unwrap();
        assert_eq!(
            hs.holes,
            vec![
                Hole::singleton(0, 2),
                Hole::singleton(1, 2),
                Hole::singleton(2, 2)
            ]
        );
        assert!(is_nice(&m, &hs));
    }

    #[test]
    fn niceness_shapes() {
        let m = BkmCartanMatrix::negative_type_a(3);
        assert!(is_nice(
            &m,
            &HoleSet::new(vec![Hole::singleton(0, 2)], 4)
        ));
        let two_real = BkmCartanMatrix::from_i64(&[&[2, 0, -1], &[0, 2, -1], &[-1, -1, -2]])
            .unwrap();
        let wide = HoleSet::new(
            vec![Hole {
                powers: BTreeMap::from([(0, 1), (1, 1)]),
            }],
            4,
        );
        assert!(!is_nice(&two_real, &wide));
    }

    #[test]
    fn independent_weight_examples() {
        let m = BkmCartanMatrix::negative_type_a(3);
        let rho = m.weyl_vector();
        let hs = simple_hole_set(&m, &rho, 4).unwrap();
        assert!(independent_weight_in_wt(&m, &hs, &rs(&[1, 0, 1])).unwrap());
        assert!(!independent_weight_in_wt(&m, &hs, &rs(&[2, 0, 0])).unwrap());
        assert!(independent_weight_in_wt(&m, &HoleSet::empty(4), &rs(&[2, 0, 0])).unwrap());
        // a dominating hole on part of the support still excludes the weight
        assert!(!independent_weight_in_wt(&m, &hs, &rs(&[2, 0, 1])).unwrap());
    }

    #[test]
    fn thm_a_membership_examples() {
        // μ = λ is always a weight
        let m = BkmCartanMatrix::from_i64(&[&[2, -1], &[-1, -2]]).unwrap();
        let lam = Weight::from_i64(&[0, -1]);
        let hs = simple_hole_set(&m, &lam, 8).unwrap();
        assert!(thm_a_membership(&m, &lam, &hs, &signed(&[0, 0])).unwrap());
        // along α₂ the string stops after one step
        assert!(thm_a_membership(&m, &lam, &hs, &signed(&[0, 1])).unwrap());
        assert!(!thm_a_membership(&m, &lam, &hs, &signed(&[0, 2])).unwrap());
        // a free direction: node 0 outside J_λ keeps the whole ray
        let m2 = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, -2]]).unwrap();
        let lam2 = Weight::from_i64(&[1, 0]);
        let hs2 = simple_hole_set(&m2, &lam2, 8).unwrap();
        assert!(thm_a_membership(&m2, &lam2, &hs2, &signed(&[5, 0])).unwrap());
    }

    #[test]
    fn heisenberg_string_truncates_at_power() {
        let m = BkmCartanMatrix::from_i64(&[&[0]]).unwrap();
        let lam = Weight::zero(1);
        let hs = HoleSet::new(vec![Hole::singleton(0, 3)], 8);
        let wt = thm_a_enumerate(&m, &lam, &hs, 8).unwrap();
        assert_eq!(
            wt,
            BTreeSet::from([rs(&[0]), rs(&[1]), rs(&[2])])
        );
    }

    #[test]
    fn empty_hole_set_gives_full_cone() {
        let m = BkmCartanMatrix::negative_type_a(2);
        let rho = m.weyl_vector();
        let wt = thm_a_enumerate(&m, &rho, &HoleSet::empty(4), 3).unwrap();
        assert_eq!(wt.len(), RootSum::all_up_to(2, 3).len());
    }

    #[test]
    fn thm_b_reduces_to_simple_for_its_own_holes() {
        let m = BkmCartanMatrix::negative_type_a(3);
        let rho = m.weyl_vector();
        let hs = simple_hole_set(&m, &rho, 4).unwrap();
        let a = thm_a_enumerate(&m, &rho, &hs, 4).unwrap();
        let b = thm_b_weights(&m, &rho, &hs, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn thm_b_empty_holes_gives_verma() {
        let m = BkmCartanMatrix::negative_type_a(2);
        let rho = m.weyl_vector();
        let wt = thm_b_weights(&m, &rho, &HoleSet::empty(3), 3).unwrap();
        assert_eq!(wt.len(), RootSum::all_up_to(2, 3).len());
    }

    #[test]
    fn hole_set_json_round_trip() {
        let hs = HoleSet::new(
            vec![Hole {
                powers: BTreeMap::from([(0, 2), (2, 1)]),
            }],
            6,
        );
        let j = hs.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let back = HoleSet::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(hs, back);
    }
}
