//! Dense matrices over exact rationals.
//!
//! This is the linear-algebra kernel for the whole crate: rank, kernel and
//! image bases, and linear solves, all via fraction-exact Gauss-Jordan
//! elimination. Matrices here are small (a few dozen rows at most), so a
//! dense row-major layout is the right trade-off.

use crate::rational::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Columns are the given vectors; `rows` fixes the height even when
    /// the list is empty.
    pub fn from_cols(rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column of wrong height");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.at(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut m = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let cur = m.at(r, c).clone();
                        m.set(r, c, cur + a * b);
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        let rows = parts.first().map_or(0, |m| m.rows);
        assert!(parts.iter().all(|m| m.rows == rows), "hstack height mismatch");
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set(r, off + c, m.at(r, c).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = {
                let pv = m.at(row, col).clone();
                pv.recip()
            };
            for c in col..m.cols {
                let v = m.at(row, c).clone() * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).clone() - &f * m.at(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Ax = 0}`, one vector per free column, in ascending
    /// free-column order. The first vector is the deterministic "first"
    /// kernel witness used throughout the crate.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.at(prow, free).clone();
            }
            out.push(v);
        }
        out
    }

    /// A particular solution of `Ax = b` with free variables set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "rhs of wrong height");
        let rhs = Mat::from_cols(self.rows, &[b.to_vec()]);
        let aug = Mat::hstack(&[self, &rhs]);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Indices of a maximal independent subset of columns (the pivots).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

/// Greedily extends the span of `fixed` by vectors from `candidates`,
/// returning indices of the chosen candidates. Selection is deterministic:
/// the pivot columns of `[fixed | candidates]` that land in the candidate
/// block.
pub fn extend_basis(dim: usize, fixed: &[Vec<Rat>], candidates: &[Vec<Rat>]) -> Vec<usize> {
    let f = Mat::from_cols(dim, fixed);
    let c = Mat::from_cols(dim, candidates);
    let stacked = Mat::hstack(&[&f, &c]);
    stacked
        .independent_columns()
        .into_iter()
        .filter(|&i| i >= fixed.len())
        .map(|i| i - fixed.len())
        .collect()
}
