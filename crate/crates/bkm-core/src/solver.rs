//! Bounded Diophantine analysis of the norm equations attached to rank-2
//! matrices and to negative type-A instances, plus the Kac–Kazhdan linkage
//! search and the number-theoretic uniqueness predicate.

use crate::cartan::{BkmCartanMatrix, NodeType, RootSum, Weight};
use crate::error::{Error, Result};
use crate::lie_engine::Engine;
use crate::rat::{rat, Rat};
use num::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// Which rank-2 norm equation applies, by the type of the second node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// Both nodes negative: `bX² + dY² + 2aXY − bM₁X − dM₂Y = 0`, finite.
    N,
    /// Second node Heisenberg: `X(bX + 2aY − bM₁) = 0`, two lines.
    H,
    /// Second node real: `bX² − 2Y² + 2aXY − bM₁X + 2M₂Y = 0`, may be Pell-like.
    R,
}

/// A rank-2 norm-equality instance, evaluated exactly through the bilinear
/// residual of the underlying matrix.
#[derive(Debug, Clone)]
pub struct QuadraticInstance {
    pub variant: Variant,
    matrix: BkmCartanMatrix,
    lambda: Weight,
    pub b: Rat,
    pub a: Rat,
    pub d: Rat,
    pub m1: Rat,
    pub m2: Rat,
}

impl QuadraticInstance {
    /// Builds the instance for a rank-2 matrix `[[−b,−a],[−a′,A₂₂]]` with
    /// negative first node and `λ ∈ P±`.
    pub fn from_matrix(m: &BkmCartanMatrix, lambda: &Weight) -> Result<Self> {
        if m.size() != 2 {
            return Err(Error::InvalidInput("expected a rank-2 matrix".into()));
        }
        if m.node_type(0) != NodeType::Negative {
            return Err(Error::InvalidInput(
                "the first node must be negative for the norm-equation case table".into(),
            ));
        }
        let cone = m.cone_membership(lambda);
        if !cone.in_p_pm {
            return Err(Error::PremiseFails("λ must lie in the signed cone P±".into()));
        }
        let b = -m.entry(0, 0).clone();
        let a = -m.entry(0, 1).clone();
        let (variant, d, m2) = match m.node_type(1) {
            NodeType::Negative => {
                let d = -m.entry(1, 1).clone();
                let m2 = Rat::from(cone.powers[&1].clone());
                (Variant::N, d, m2)
            }
            NodeType::Heisenberg => (Variant::H, Rat::zero(), Rat::zero()),
            NodeType::Real => {
                let m2 = Rat::from(cone.powers[&1].clone());
                (Variant::R, rat(-2), m2)
            }
        };
        let m1 = Rat::from(cone.powers[&0].clone());
        Ok(QuadraticInstance {
            variant,
            matrix: m.clone(),
            lambda: lambda.clone(),
            b,
            a,
            d,
            m1,
            m2,
        })
    }

    /// Exact evaluation at `(X, Y)` via the bilinear residual — zero exactly
    /// when `(X, Y)` solves the instance's norm equation.
    pub fn eval(&self, x: u32, y: u32) -> Rat {
        self.matrix
            .bilinear_residual(&self.lambda, &RootSum { coeffs: vec![x, y] })
            .expect("rank-2 matrices are symmetrizable")
    }

    /// The boundedness square for variant (N):
    /// `max(b/2a, d/2a, 1) · max(M₁, M₂)`, rounded up.
    pub fn n_bound(&self) -> u32 {
        let max_m = if self.m1 >= self.m2 {
            self.m1.clone()
        } else {
            self.m2.clone()
        };
        let factor = if self.a.is_positive() {
            let two_a = rat(2) * &self.a;
            let mut f = rat(1);
            for c in [&self.b / &two_a, &self.d / &two_a] {
                if c > f {
                    f = c;
                }
            }
            f
        } else {
            rat(1)
        };
        let bound = factor * max_m;
        bound.ceil().to_integer().to_u32().unwrap_or(u32::MAX)
    }
}

/// Every non-negative integer solution: exhaustive over the boundedness
/// square for (N); variants (H)/(R) demand an explicit box because their
/// solution sets can be infinite.
pub fn enumerate_solutions(
    inst: &QuadraticInstance,
    bbox: Option<(u32, u32)>,
) -> Result<BTreeSet<(u32, u32)>> {
    let (bx, by) = match (inst.variant, bbox) {
        (Variant::N, None) => {
            let b = inst.n_bound();
            (b, b)
        }
        (_, Some(b)) => b,
        (Variant::H | Variant::R, None) => return Err(Error::UnboundedWithoutBox),
    };
    let mut out = BTreeSet::new();
    for x in 0..=bx {
        for y in 0..=by {
            if inst.eval(x, y).is_zero() {
                out.insert((x, y));
            }
        }
    }
    Ok(out)
}

/// Closed form of variant (H): the line `X = 0` together with
/// `X = M₁ − (2a/b)·Y`.
pub fn closed_form_h(inst: &QuadraticInstance) -> Result<(Rat, Rat)> {
    if inst.variant != Variant::H {
        return Err(Error::InvalidInput("closed form applies to variant H only".into()));
    }
    Ok((inst.m1.clone(), rat(2) * &inst.a / &inst.b))
}

/// Tag of the solution plot when `(2,2)` solves the (N) instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tag22 {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone)]
pub struct Classification22 {
    pub tag: Tag22,
    /// Interior solutions other than `(2,2)`, in the instance's orientation.
    pub extras: Vec<(u32, u32)>,
}

/// Classifies the solution plot of an (N) instance on which `(2,2)` solves.
pub fn classify_22(inst: &QuadraticInstance) -> Result<Classification22> {
    if inst.variant != Variant::N {
        return Err(Error::PremiseFails("the (2,2) classification needs variant N".into()));
    }
    if !inst.eval(2, 2).is_zero() {
        return Err(Error::PremiseFails("(2,2) does not solve this instance".into()));
    }
    let m1 = rat_to_u32(&inst.m1)?;
    let m2 = rat_to_u32(&inst.m2)?;
    let (hi, lo) = (m1.max(m2), m1.min(m2));
    let sols = enumerate_solutions(inst, None)?;
    let extras: Vec<(u32, u32)> = sols
        .into_iter()
        .filter(|&(x, y)| {
            x > 0 && y > 0 && (x, y) != (m1, 0) && (x, y) != (0, m2) && (x, y) != (2, 2)
        })
        .collect();
    let tag = if lo == 1 {
        if hi % 2 == 0 {
            Tag22::C
        } else {
            Tag22::D
        }
    } else if extras.is_empty() {
        Tag22::A
    } else {
        // the lemma's remaining shape: boundary solutions (k₁,1) and (1,k₂)
        if !extras.iter().all(|&(x, y)| x == 1 || y == 1) {
            return Err(Error::CaseNotCovered(format!(
                "unexpected interior solutions {extras:?} for M=({m1},{m2})"
            )));
        }
        Tag22::B
    };
    // converse clauses of the classification lemma
    if lo == hi && is_square(lo as u64) && lo >= 4 {
        assert_eq!(tag, Tag22::B, "M₁ = M₂ = k² must plot as case B");
    }
    if lo >= 2 && lo % 3 == 0 && hi == lo + 2 {
        assert_eq!(tag, Tag22::A, "(M₂,M₁) = (3k,3k+2) must plot as case A");
    }
    Ok(Classification22 { tag, extras })
}

fn rat_to_u32(r: &Rat) -> Result<u32> {
    if !crate::rat::is_nonneg_integer(r) {
        return Err(Error::PremiseFails("string length is not a non-negative integer".into()));
    }
    r.to_integer()
        .to_u32()
        .ok_or_else(|| Error::InvalidInput("string length out of range".into()))
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    r * r == n
}

/// The negative type-A norm form at `λ = ρ`:
/// `d⁽ⁿ⁾(X) = Σ_{i=0}^{n} (Xᵢ + Xᵢ₊₁ − 1)² − (n+1)` with `X₀ = Xₙ₊₁ = 0`.
pub fn d_fn(x: &[i64]) -> i64 {
    let n = x.len();
    let get = |i: isize| -> i64 {
        if i < 0 || i as usize >= n {
            0
        } else {
            x[i as usize]
        }
    };
    let mut total = -(n as i64 + 1);
    for i in 0..=n as isize {
        let t = get(i - 1) + get(i) - 1;
        total += t * t;
    }
    total
}

/// A `d⁽ⁿ⁾ = 0` solution, annotated with its run decomposition and whether it
/// is a hole-type solution (entries in `{0,2}` with non-adjacent support).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DnSolution {
    pub tuple: Vec<u32>,
    pub blocks: Vec<Vec<u32>>,
    pub is_hole: bool,
}

/// Maximal runs of positive entries.
pub fn block_decompose(tuple: &[u32]) -> Vec<Vec<u32>> {
    let mut blocks = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    for &x in tuple {
        if x > 0 {
            cur.push(x);
        } else if !cur.is_empty() {
            blocks.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        blocks.push(cur);
    }
    blocks
}

fn is_hole_pattern(tuple: &[u32]) -> bool {
    tuple.iter().all(|&x| x == 0 || x == 2)
        && tuple.windows(2).all(|w| !(w[0] == 2 && w[1] == 2))
}

/// All solutions of `d⁽ⁿ⁾ = 0` inside the proof box `Xᵢ ≤ √(n+1) + 1`,
/// each annotated; the zero tuple is reported only when asked for.
pub fn enumerate_dn(n: usize, include_zero: bool) -> Vec<DnSolution> {
    let bound = (1..).find(|&r| r * r > n as u64 + 1).unwrap() as u32; // ⌊√(n+1)⌋ + 1
    let mut out = Vec::new();
    let mut tuple = vec![0u32; n];
    loop {
        let signed: Vec<i64> = tuple.iter().map(|&x| x as i64).collect();
        if d_fn(&signed) == 0 && (include_zero || tuple.iter().any(|&x| x > 0)) {
            out.push(DnSolution {
                tuple: tuple.clone(),
                blocks: block_decompose(&tuple),
                is_hole: is_hole_pattern(&tuple),
            });
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| a.tuple.cmp(&b.tuple));
                return out;
            }
            tuple[k] += 1;
            if tuple[k] <= bound {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
}

/// Block-structure check for non-hole solutions: at least two blocks, one of
/// which is all ones and one of which contains an entry larger than 1.
pub fn block_lemma_check(tuple: &[u32]) -> Result<bool> {
    let signed: Vec<i64> = tuple.iter().map(|&x| x as i64).collect();
    if d_fn(&signed) != 0 {
        return Err(Error::NotASolution(format!("{tuple:?} does not solve d⁽ⁿ⁾ = 0")));
    }
    if is_hole_pattern(tuple) {
        return Ok(true);
    }
    let blocks = block_decompose(tuple);
    Ok(blocks.len() >= 2
        && blocks.iter().any(|b| b.iter().all(|&x| x == 1))
        && blocks.iter().any(|b| b.iter().any(|&x| x > 1)))
}

/// One step of a Kac–Kazhdan chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KkStep {
    pub beta: RootSum,
    pub n: u32,
}

pub type KkChain = Vec<KkStep>;

/// Searches for a Kac–Kazhdan chain from `λ` down through `β`: positive roots
/// `β₁,…,β_r` and multiplicities `n₁,…,n_r` with `Σ nₜβₜ = β` and
/// `(λ+ρ − Σ_{t≤i} nₜβₜ, 2β_{i+1}) = n_{i+1}·(β_{i+1}, β_{i+1})` at every
/// step.  Returns the lexicographically least witness, or `None`.
pub fn kk_linked(eng: &mut Engine, lambda: &Weight, beta: &RootSum) -> Result<Option<KkChain>> {
    let m = eng.matrix().clone();
    let mults: Vec<RootSum> = eng
        .root_multiplicities(beta.height())?
        .into_keys()
        .filter(|r| beta.dominates(r))
        .collect();
    let rho = m.weyl_vector();
    let top = Weight {
        pairings: lambda
            .pairings
            .iter()
            .zip(&rho.pairings)
            .map(|(a, b)| a + b)
            .collect(),
    };
    let mut failed: BTreeSet<RootSum> = BTreeSet::new();
    fn dfs(
        m: &BkmCartanMatrix,
        roots: &[RootSum],
        cur: &Weight,
        remaining: &RootSum,
        failed: &mut BTreeSet<RootSum>,
        chain: &mut KkChain,
    ) -> Result<bool> {
        if remaining.is_zero() {
            return Ok(true);
        }
        if failed.contains(remaining) {
            return Ok(false);
        }
        for root in roots {
            let norm = m.ip_root_root(root, root)?;
            let mut nt = 1u32;
            loop {
                let used = root.scale(nt);
                let Some(rest) = remaining.checked_sub(&used) else {
                    break;
                };
                // (cur, 2β') = n'·(β', β')
                if rat(2) * m.ip_weight_root(cur, root)? == rat(nt as i64) * &norm {
                    chain.push(KkStep {
                        beta: root.clone(),
                        n: nt,
                    });
                    let next = m.subtract_roots(cur, &used);
                    if dfs(m, roots, &next, &rest, failed, chain)? {
                        return Ok(true);
                    }
                    chain.pop();
                }
                nt += 1;
            }
        }
        failed.insert(remaining.clone());
        Ok(false)
    }
    let mut chain = Vec::new();
    let found = dfs(&m, &mults, &top, beta, &mut failed, &mut chain)?;
    Ok(found.then_some(chain))
}

/// Condition-based uniqueness predicate for the equation
/// `X² + Y² + XY − M₁X − M₂Y = 0` over `ℕ²` (nontrivial solutions):
/// with `d = gcd(M₁, M₂)` and `M₁ ≤ M₂`, uniqueness holds iff
/// (1) every prime factor of `d` is 2, 3, or ≡ 5 (mod 6);
/// (2) `M₁ = M₂` forces `3 | d`; and
/// (3) when `M₂ ∉ {M₁, 2M₁}`: `3 ∤ d` and `(M₁²+M₂²−M₁M₂)/d²` is a prime
/// ≡ 1 (mod 6).
pub fn unique_solution_predicate(m1: u64, m2: u64) -> bool {
    let (m1, m2) = (m1.min(m2), m1.max(m2));
    if m1 == 0 {
        return false;
    }
    let d = gcd(m1, m2);
    // (1) prime factors of d restricted to {2, 3} ∪ {p ≡ 5 mod 6}
    for p in prime_factors(d) {
        if p != 2 && p != 3 && p % 6 != 5 {
            return false;
        }
    }
    // (2)
    if m1 == m2 && d % 3 != 0 {
        return false;
    }
    // (3)
    if m2 != m1 && m2 != 2 * m1 {
        if d % 3 == 0 {
            return false;
        }
        let a = (m1 * m1 + m2 * m2 - m1 * m2) / (d * d);
        if !(is_prime(a) && a % 6 == 1) {
            return false;
        }
    }
    true
}

/// Brute-force ground truth for the predicate, inside the boundedness box
/// `X, Y ≤ 2·max(M₁, M₂)`, excluding the trivial solutions
/// `(0,0), (M₁,0), (0,M₂)`.
pub fn unique_solution_bruteforce(m1: u64, m2: u64) -> bool {
    let bound = 2 * m1.max(m2);
    let mut count = 0u32;
    for x in 0..=bound {
        for y in 0..=bound {
            if (x, y) == (0, 0) || (x, y) == (m1, 0) || (x, y) == (0, m2) {
                continue;
            }
            let v = x as i128 * x as i128 + y as i128 * y as i128 + x as i128 * y as i128
                - m1 as i128 * x as i128
                - m2 as i128 * y as i128;
            if v == 0 {
                count += 1;
                if count > 1 {
                    return false;
                }
            }
        }
    }
    count == 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Deterministic trial division, adequate for the desk scale of the predicate.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(c: &[u32]) -> RootSum {
        RootSum { coeffs: c.to_vec() }
    }

    fn n_instance(b: i64, a: i64, lambda: &[i64]) -> QuadraticInstance {
        let m = BkmCartanMatrix::from_i64(&[&[-b, -a], &[-a, -b]]).unwrap();
        QuadraticInstance::from_matrix(&m, &Weight::from_i64(lambda)).unwrap()
    }

    #[test]
    fn rho_solutions_when_a_equals_b() {
        // b = a = 1, λ = ρ: the equation degenerates to (X+Y)(X+Y−2) = 0
        let m = BkmCartanMatrix::from_i64(&[&[-1, -1], &[-1, -1]]).unwrap();
        let inst = QuadraticInstance::from_matrix(&m, &m.weyl_vector()).unwrap();
        let sols = enumerate_solutions(&inst, None).unwrap();
        assert_eq!(
            sols,
            BTreeSet::from([(0, 0), (2, 0), (0, 2), (1, 1)])
        );
    }

    #[test]
    fn unique_interior_solution_m1_1_m2_4() {
        let inst = n_instance(2, 1, &[0, -3]);
        assert_eq!(inst.m1, rat(1));
        assert_eq!(inst.m2, rat(4));
        let sols = enumerate_solutions(&inst, None).unwrap();
        let interior: Vec<_> = sols
            .into_iter()
            .filter(|&(x, y)| (x, y) != (0, 0) && (x, y) != (1, 0) && (x, y) != (0, 4))
            .collect();
        assert_eq!(interior, vec![(1, 3)]);
    }

    #[test]
    fn two_interior_solutions_m1_1_m2_5() {
        let inst = n_instance(2, 1, &[0, -4]);
        let sols = enumerate_solutions(&inst, None).unwrap();
        let interior: Vec<_> = sols
            .into_iter()
            .filter(|&(x, y)| (x, y) != (0, 0) && (x, y) != (1, 0) && (x, y) != (0, 5))
            .collect();
        assert_eq!(interior, vec![(1, 4), (2, 1), (2, 2)]);
    }

    #[test]
    fn variant_r_refuses_without_box() {
        let m = BkmCartanMatrix::from_i64(&[&[-2, -2], &[-2, 2]]).unwrap();
        let lam = Weight::from_i64(&[-1, 0]);
        let inst = QuadraticInstance::from_matrix(&m, &lam).unwrap();
        assert_eq!(inst.variant, Variant::R);
        assert!(matches!(
            enumerate_solutions(&inst, None),
            Err(Error::UnboundedWithoutBox)
        ));
        assert!(enumerate_solutions(&inst, Some((10, 10))).is_ok());
    }

    #[test]
    fn variant_h_closed_form() {
        let m = BkmCartanMatrix::from_i64(&[&[-2, -1], &[-1, 0]]).unwrap();
        let lam = Weight::from_i64(&[-1, 0]);
        let inst = QuadraticInstance::from_matrix(&m, &lam).unwrap();
        assert_eq!(inst.variant, Variant::H);
        let (m1, slope) = closed_form_h(&inst).unwrap();
        assert_eq!(m1, rat(2));
        assert_eq!(slope, rat(1));
        // every boxed solution lies on one of the two lines
        for (x, y) in enumerate_solutions(&inst, Some((8, 8))).unwrap() {
            assert!(x == 0 || rat(x as i64) == &m1 - &slope * rat(y as i64));
        }
    }

    #[test]
    fn classify_square_case_b() {
        // M₁ = M₂ = 4 = 2², 2a/b = (M₁+M₂)/2 − 2 = 2 → b=2, a=2
        let inst = n_instance(2, 2, &[-3, -3]);
        assert_eq!(inst.m1, rat(4));
        let cls = classify_22(&inst).unwrap();
        assert_eq!(cls.tag, Tag22::B);
        assert_eq!(cls.extras, vec![(1, 3), (3, 1)]);
    }

    #[test]
    fn classify_case_a() {
        // (M₂, M₁) = (3, 5): 2a/b = 2 → b=1, a=1
        let inst = n_instance(1, 1, &[-2, -1]);
        assert_eq!((inst.m1.clone(), inst.m2.clone()), (rat(5), rat(3)));
        let cls = classify_22(&inst).unwrap();
        assert_eq!(cls.tag, Tag22::A);
        assert!(cls.extras.is_empty());
    }

    #[test]
    fn classify_cases_c_and_d() {
        // (C): M = (4,1), 2a/b = 1/2 → b=4, a=1
        let m = BkmCartanMatrix::from_i64(&[&[-4, -1], &[-1, -4]]).unwrap();
        let inst = QuadraticInstance::from_matrix(&m, &Weight::from_i64(&[-6, 0])).unwrap();
        assert_eq!((inst.m1.clone(), inst.m2.clone()), (rat(4), rat(1)));
        assert_eq!(classify_22(&inst).unwrap().tag, Tag22::C);
        // (D): M = (5,1), 2a/b = 1 → b=2, a=1
        let inst = n_instance(2, 1, &[-4, 0]);
        assert_eq!((inst.m1.clone(), inst.m2.clone()), (rat(5), rat(1)));
        let cls = classify_22(&inst).unwrap();
        assert_eq!(cls.tag, Tag22::D);
        assert!(cls.extras.contains(&(4, 1)));
    }

    #[test]
    fn classify_rejects_when_22_fails() {
        let inst = n_instance(2, 1, &[0, -3]);
        assert!(matches!(classify_22(&inst), Err(Error::PremiseFails(_))));
    }

    #[test]
    fn dn_values_and_splitting() {
        assert_eq!(d_fn(&[0, 0, 0]), 0);
        assert_eq!(d_fn(&[1, 1, 1]), -2);
        assert_eq!(d_fn(&[1, 1]), -2);
        assert_eq!(d_fn(&[2, 0, 2]), 0);
        // splitting at a zero coordinate
        assert_eq!(d_fn(&[2, 1, 0, 1]), d_fn(&[2, 1]) + d_fn(&[1]));
    }

    #[test]
    fn dn_matches_bilinear_residual() {
        let m = BkmCartanMatrix::negative_type_a(4);
        let rho = m.weyl_vector();
        for tuple in [[0, 0, 0, 0], [2, 1, 0, 1], [1, 2, 3, 0], [2, 2, 2, 2]] {
            let signed: Vec<i64> = tuple.iter().map(|&x| x as i64).collect();
            let beta = RootSum {
                coeffs: tuple.to_vec(),
            };
            let res = m.bilinear_residual(&rho, &beta).unwrap();
            assert_eq!(res, rat(d_fn(&signed)));
        }
    }

    #[test]
    fn dn_solutions_n1_n3() {
        let n1: Vec<Vec<u32>> = enumerate_dn(1, true).into_iter().map(|s| s.tuple).collect();
        assert_eq!(n1, vec![vec![0], vec![2]]);
        let n3: Vec<Vec<u32>> = enumerate_dn(3, false).into_iter().map(|s| s.tuple).collect();
        assert_eq!(
            n3,
            vec![vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0], vec![2, 0, 2]]
        );
        assert!(enumerate_dn(3, false).iter().all(|s| s.is_hole));
    }

    #[test]
    fn dn_n5_contains_observed_tuples() {
        let n5: BTreeSet<Vec<u32>> = enumerate_dn(5, false).into_iter().map(|s| s.tuple).collect();
        assert!(n5.contains(&vec![0, 1, 0, 1, 2]));
        assert!(n5.contains(&vec![2, 1, 1, 0, 1]));
    }

    #[test]
    fn blocks_and_lemma() {
        assert_eq!(block_decompose(&[2, 1, 0, 1]), vec![vec![2, 1], vec![1]]);
        assert_eq!(block_decompose(&[2, 0, 2]), vec![vec![2], vec![2]]);
        assert_eq!(block_decompose(&[0, 1, 0, 1, 2]), vec![vec![1], vec![1, 2]]);
        assert!(block_lemma_check(&[2, 1, 0, 1]).unwrap());
        assert!(block_lemma_check(&[2, 0, 2]).unwrap());
        assert!(matches!(
            block_lemma_check(&[1, 1, 1]),
            Err(Error::NotASolution(_))
        ));
    }

    #[test]
    fn kk_linked_examples() {
        // the pinned regression: (2,1,0,1) solves d⁽⁴⁾ = 0 but is not linked
        let m = BkmCartanMatrix::negative_type_a(4);
        let mut eng = Engine::new(m.clone());
        let rho = m.weyl_vector();
        assert_eq!(d_fn(&[2, 1, 0, 1]), 0);
        assert!(kk_linked(&mut eng, &rho, &rs(&[2, 1, 0, 1]))
            .unwrap()
            .is_none());
        // single-root linkage through α₁+α₂ at rank 2 with b = a
        let m2 = BkmCartanMatrix::from_i64(&[&[-1, -1], &[-1, -1]]).unwrap();
        let mut eng2 = Engine::new(m2.clone());
        let rho2 = m2.weyl_vector();
        let chain = kk_linked(&mut eng2, &rho2, &rs(&[1, 1])).unwrap().unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].beta, rs(&[1, 1]));
        assert_eq!(chain[0].n, 1);
        // rank-1 relation: β = M₁α₁ is linked in one step
        let chain = kk_linked(&mut eng2, &rho2, &rs(&[2, 0])).unwrap().unwrap();
        assert_eq!(chain, vec![KkStep { beta: rs(&[1, 0]), n: 2 }]);
    }

    #[test]
    fn uniqueness_examples() {
        assert!(unique_solution_predicate(1, 4));
        assert!(unique_solution_predicate(3, 3));
        assert!(!unique_solution_predicate(1, 5));
        assert!(unique_solution_bruteforce(1, 4));
        assert!(unique_solution_bruteforce(3, 3));
        assert!(!unique_solution_bruteforce(1, 5));
    }
}
