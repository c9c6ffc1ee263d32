//! Shared helpers for the integration test targets.

use bkm_core::cartan::{BkmCartanMatrix, RootSum, Weight};
use bkm_core::lie_engine::{Engine, KillSpec, ModuleModel};
use bkm_core::rat::{rat, Rat};
use bkm_core::weights::HoleSet;
use std::collections::BTreeSet;

/// Deterministic xorshift generator for reproducible "random" instances.
pub struct Rng(pub u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    /// A rational with numerator in `-num..=num` and denominator in `1..=den`.
    pub fn rat(&mut self, num: u64, den: u64) -> Rat {
        let p = self.below(2 * num + 1) as i64 - num as i64;
        let q = 1 + self.below(den) as i64;
        bkm_core::rat::ratio(p, q)
    }
}

pub fn rs(c: &[u32]) -> RootSum {
    RootSum { coeffs: c.to_vec() }
}

pub fn weight(v: &[i64]) -> Weight {
    Weight::from_i64(v)
}

/// A random valid BKM Cartan matrix of the given size: symmetric zero
/// pattern, mixed node types, integral rows at real nodes.
pub fn random_matrix(rng: &mut Rng, n: usize) -> BkmCartanMatrix {
    loop {
        let mut a = vec![vec![rat(0); n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = match rng.below(3) {
                0 => rat(2),
                1 => rat(0),
                _ => -rat(1 + rng.below(4) as i64) / rat(1 + rng.below(2) as i64),
            };
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.below(2) == 0 {
                    continue; // keep the symmetric zero pattern
                }
                let (p, q) = (1 + rng.below(3) as i64, 1 + rng.below(3) as i64);
                // integral entries keep real rows valid and the pair symmetrizable
                a[i][j] = rat(-p);
                a[j][i] = rat(-q);
            }
        }
        // off-diagonal entries are integral, so real rows are always valid
        if let Ok(m) = BkmCartanMatrix::validate(a) {
            if m.symmetrizer().is_ok() {
                return m;
            }
        }
    }
}

/// A random weight in the signed cone `P±` of `m` (so hole machinery applies).
pub fn random_p_pm_weight(rng: &mut Rng, m: &BkmCartanMatrix) -> Weight {
    let pairings = (0..m.size())
        .map(|i| {
            let k = rat(rng.below(4) as i64);
            m.entry(i, i) / rat(2) * k
        })
        .collect();
    Weight { pairings }
}

/// Support set of the per-grade quotient dimensions — the exact-engine oracle
/// for the closed-form weight sets.
pub fn oracle_weight_support(
    m: &BkmCartanMatrix,
    lambda: &Weight,
    spec: KillSpec,
    cutoff: u32,
) -> BTreeSet<RootSum> {
    let mut eng = Engine::new(m.clone());
    let mut model = ModuleModel::new(lambda.clone(), spec);
    let mut out = BTreeSet::new();
    for beta in RootSum::all_up_to(m.size(), cutoff) {
        if model.dim(&mut eng, &beta).unwrap() > 0 {
            out.insert(beta);
        }
    }
    out
}

/// The full uniqueness-predicate grid check `1 ≤ M₁ ≤ M₂ ≤ bound`.
pub fn unique_grid_agrees(bound: u64) -> bool {
    for m1 in 1..=bound {
        for m2 in m1..=bound {
            if bkm_core::solver::unique_solution_predicate(m1, m2)
                != bkm_core::solver::unique_solution_bruteforce(m1, m2)
            {
                return false;
            }
        }
    }
    true
}

/// Simple-hole-set based quotient spec for a weight, shared by several tests.
pub fn simple_holes(m: &BkmCartanMatrix, lambda: &Weight, cap: u32) -> HoleSet {
    bkm_core::weights::simple_hole_set(m, lambda, cap).unwrap()
}
