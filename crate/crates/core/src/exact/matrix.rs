use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rat::Rat;

/// Dense row-major matrix of rationals.
///
/// Zero-row and zero-column shapes are valid and have rank 0.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        RatMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Build from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        RatMatrix {
            rows: n_rows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        Self::new(rows, cols, vals.iter().map(|&v| Rat::from(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> RatMatrix {
        let rows = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        Self::from_rows(cols.len(), rows)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        bareiss_rank(self.integer_rows())
    }

    /// Dimension of the space of linear relations among the rows.
    pub fn left_nullity(&self) -> usize {
        self.rows - self.rank()
    }

    /// Basis of the right kernel `{z : M z = 0}`, one vector per free column
    /// of the reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let e = rref.get(r, free);
                if !e.is_zero() {
                    v[pc] = -e;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the row space (nonzero rows of the RREF).
    pub fn row_space_basis(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect()
    }

    /// Reduced row echelon form over the rationals with first-nonzero
    /// pivoting; returns the reduced matrix and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..a.cols {
            if prow == a.rows {
                break;
            }
            let Some(sel) = (prow..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(prow, sel);
            let inv = a.get(prow, col).recip();
            for c in col..a.cols {
                let v = a.get(prow, c) * &inv;
                a.set(prow, c, v);
            }
            for r in 0..a.rows {
                if r == prow || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in col..a.cols {
                    let v = a.get(r, c) - &factor * a.get(prow, c);
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect()
    }
}

/// Fraction-free (Bareiss) elimination. Every intermediate entry is a minor of
/// the input, so the division by the previous pivot is exact.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(sel) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, sel);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for c in col + 1..cols {
                let num = pivot * &row[c] - &lead * &pivot_row[c];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                row[c] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally built basis of a subspace, kept in echelon form so that
/// membership tests are a single reduction pass.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, Vec<Rat>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&factor * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Rat::is_zero)
    }

    /// Add `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((pivot, r));
        true
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(cols: usize, vectors: &[Vec<Rat>]) -> usize {
    RatMatrix::from_rows(cols, vectors.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn identity_rank() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(RatMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(RatMatrix::zeros(0, 5).left_nullity(), 0);
        assert_eq!(RatMatrix::zeros(4, 0).rank(), 0);
        assert_eq!(RatMatrix::zeros(4, 0).left_nullity(), 4);
        assert_eq!(RatMatrix::zeros(0, 3).kernel().len(), 3);
    }

    #[test]
    fn rational_entries() {
        let m = RatMatrix::new(
            2,
            2,
            vec![rat(1, 2), rat(1, 3), rat(3, 2), Rat::one()],
        );
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let dot: Rat = m.row(0).iter().zip(&k[0]).map(|(a, b)| a * b).sum();
        assert!(dot.is_zero());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = RatMatrix::from_i64(3, 5, &[1, 2, 0, -1, 3, 2, 4, 1, 0, 0, 3, 6, 1, -1, 3]);
        let k = m.kernel();
        assert_eq!(k.len(), 5 - m.rank());
        for v in &k {
            for r in 0..m.rows() {
                let dot: Rat = m.row(r).iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(rank_of(5, &k), k.len());
    }

    #[test]
    fn echelon_tracks_rank() {
        let m = RatMatrix::from_i64(4, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1, 1, 3, 4]);
        let mut basis = EchelonBasis::new(3);
        let grew: Vec<bool> = m.row_vecs().iter().map(|r| basis.insert(r)).collect();
        assert_eq!(grew, vec![true, false, true, false]);
        assert_eq!(basis.rank(), m.rank());
        assert!(basis.contains(&[Rat::from(1), Rat::from(1), Rat::from(2)]));
        assert!(!basis.contains(&[Rat::from(0), Rat::from(0), Rat::from(1)]));
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        // The first column is zero, forcing a column skip before the first pivot.
        let m = RatMatrix::from_i64(3, 4, &[0, 1, 2, 3, 0, 2, 4, 6, 0, 1, 0, 1]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }
}
