//! Sparse exact linear algebra over the rationals.
//!
//! The central structure is [`Echelon`], an incrementally maintained reduced
//! row-echelon form.  Rows are sparse `(column, value)` lists sorted by column;
//! the pivot of a row is its first nonzero column (deterministic pivoting).
//! Inserting a row reduces it against existing rows, and — when it survives —
//! back-substitutes it into them, so the echelon is fully reduced at all times.

use crate::rat::{rat, Rat};
use num::{One, Zero};

/// A sparse vector: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseVec = Vec<(u32, Rat)>;

/// `a + c·b`, dropping zeros.
pub fn axpy(a: &SparseVec, c: &Rat, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = c * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Scales a sparse vector in place.
pub fn scale(a: &mut SparseVec, c: &Rat) {
    for (_, v) in a.iter_mut() {
        *v *= c;
    }
}

/// An incrementally built reduced row-echelon form.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    /// Rows sorted by pivot column; each row is monic at its pivot.
    rows: Vec<SparseVec>,
    /// Pivot columns, parallel to `rows`.
    pivots: Vec<u32>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn has_pivot(&self, col: u32) -> bool {
        self.pivots.binary_search(&col).is_ok()
    }

    /// Reduces `v` against the echelon without inserting it; the result is the
    /// canonical representative of `v` modulo the row space (supported on
    /// non-pivot columns only).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut i = 0;
        while i < v.len() {
            match self.pivots.binary_search(&v[i].0) {
                Ok(r) => {
                    let c = -v[i].1.clone();
                    v = axpy(&v, &c, &self.rows[r]);
                    // entries before position i are untouched (their columns
                    // precede every pivot≥v[i].0 eliminated so far)
                }
                Err(_) => i += 1,
            }
        }
        v
    }

    /// Reduces `v` and, if nonzero, inserts it (made monic, back-substituted
    /// into the existing rows).  Returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let inv = rat(1) / v[0].1.clone();
        scale(&mut v, &inv);
        let piv = v[0].0;
        // back-substitute into existing rows
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&piv, |e| e.0) {
                let c = -row[k].1.clone();
                *row = axpy(row, &c, &v);
            }
        }
        let pos = self.pivots.binary_search(&piv).unwrap_err();
        self.pivots.insert(pos, piv);
        self.rows.insert(pos, v);
        true
    }

    /// Inserts every row of `other`.
    pub fn absorb(&mut self, other: &Echelon) {
        for row in &other.rows {
            self.insert(row.clone());
        }
    }

    /// A basis of the kernel of the matrix whose *rows* span this space — i.e.
    /// of `{x ∈ ℚⁿ : row·x = 0 ∀ rows}` — via the standard non-pivot-column
    /// construction on the RREF.  One basis vector per non-pivot column `f`:
    /// `x_f = 1`, `x_p = −row_p[f]` for each pivot column `p`.
    pub fn kernel_basis(&self, n: u32) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..n {
            if self.has_pivot(f) {
                continue;
            }
            let mut x: SparseVec = vec![(f, rat(1))];
            for (r, &p) in self.pivots.iter().enumerate() {
                if let Ok(k) = self.rows[r].binary_search_by_key(&f, |e| e.0) {
                    x.push((p, -self.rows[r][k].1.clone()));
                }
            }
            x.sort_by_key(|e| e.0);
            out.push(x);
        }
        out
    }
}

/// Determinant of a dense rational matrix by Gaussian elimination.
pub fn det_dense(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return rat(1);
    }
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det *= &piv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &piv;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn sv(entries: &[(u32, i64)]) -> SparseVec {
        entries.iter().map(|&(c, v)| (c, rat(v))).collect()
    }

    #[test]
    fn echelon_rank_and_reduce() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(sv(&[(1, 1), (2, 1)])));
        // dependent row
        assert!(!e.insert(sv(&[(0, 2), (1, 6), (2, 2)])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        // reduced representative lives on non-pivot columns
        let r = e.reduce(sv(&[(0, 1)]));
        assert_eq!(r, sv(&[(2, 2)]));
    }

    #[test]
    fn kernel_basis_annihilates_rows() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(sv(&[(1, 1), (3, -1)]));
        let ker = e.kernel_basis(4);
        assert_eq!(ker.len(), 2);
        for x in &ker {
            for row in e.rows() {
                let mut dot = Rat::zero();
                for (c, v) in row {
                    if let Ok(k) = x.binary_search_by_key(c, |e| e.0) {
                        dot += v * &x[k].1;
                    }
                }
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_dense(&[vec![rat(2), rat(1)], vec![rat(1), rat(2)]]), rat(3));
        assert_eq!(det_dense(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]), rat(0));
        assert_eq!(
            det_dense(&[vec![ratio(1, 2), rat(0)], vec![rat(7), ratio(1, 3)]]),
            ratio(1, 6)
        );
        assert_eq!(det_dense(&[]), rat(1));
    }

    #[test]
    fn axpy_merges_and_cancels() {
        let a = sv(&[(0, 1), (2, 3)]);
        let b = sv(&[(0, -1), (1, 5)]);
        let r = axpy(&a, &rat(1), &b);
        assert_eq!(r, sv(&[(1, 5), (2, 3)]));
    }
}
