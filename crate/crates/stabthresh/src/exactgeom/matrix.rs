//! Exact rational linear algebra and integer lattice kernels.

use super::vector::RationalVector;
use crate::rat::{Int, Rat};
use num::traits::{One, Signed, Zero};

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[RationalVector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, RationalVector::dim);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.dim(), c, "ragged rows");
            for (j, v) in row.coords().iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    /// Columns of the matrix are the given vectors.
    pub fn from_columns(cols: &[RationalVector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, RationalVector::dim);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.dim(), r, "ragged columns");
            for (i, v) in col.coords().iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
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

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim());
        RationalVector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| self.at(i, j) * v.coord(j))
                        .sum::<Rat>()
                })
                .collect(),
        )
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                *m.at_mut(i, j) = (0..self.cols)
                    .map(|k| self.at(i, k) * other.at(k, j))
                    .sum();
            }
        }
        m
    }

    /// Row echelon form in place; returns pivot column per eliminated row.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let inv = self.at(row, col).recip();
            for j in col..self.cols {
                let v = self.at(row, j) * &inv;
                *self.at_mut(row, j) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let v = self.at(r, j) - &factor * self.at(row, j);
                        *self.at_mut(r, j) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            det *= m.at(col, col).clone();
            let inv = m.at(col, col).recip();
            for r in col + 1..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col) * &inv;
                    for j in col..n {
                        let v = m.at(r, j) - &factor * m.at(col, j);
                        *m.at_mut(r, j) = v;
                    }
                }
            }
        }
        det
    }

    /// Solves `self * x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &RationalVector) -> Option<RationalVector> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.dim());
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n) = rhs.coord(i).clone();
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        Some(RationalVector::new(
            (0..n).map(|i| aug.at(i, n).clone()).collect(),
        ))
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Rat::one();
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(inv)
    }

    /// Basis of the rational kernel `{x : self * x = 0}`, deterministic order.
    pub fn kernel_basis(&self) -> Vec<RationalVector> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.at(r, f).clone();
                }
                RationalVector::new(v)
            })
            .collect()
    }

    /// Greedy maximal linearly independent subset of the rows, by row order.
    pub fn independent_row_indices(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut basis: Vec<RationalVector> = Vec::new();
        for i in 0..self.rows {
            let mut candidate = basis.clone();
            candidate.push(self.row(i));
            if Self::from_rows(&candidate).rank() == candidate.len() {
                basis = candidate;
                chosen.push(i);
            }
        }
        chosen
    }
}

/// Column-style Hermite reduction: returns unimodular `U` with `A * U = [H | 0]`.
///
/// The last `cols - rank` columns of `U` form a basis of the integer kernel
/// of `A`, which is automatically saturated.
pub fn integer_kernel(rows: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    let mut u: Vec<Vec<Int>> = (0..cols)
        .map(|j| {
            (0..cols)
                .map(|i| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    // u is column major: u[j] is the j-th column of U.
    let nrows = a.len();
    let mut lead = 0usize;
    for r in 0..nrows {
        if lead == cols {
            break;
        }
        loop {
            // Clear row r to a single nonzero entry among columns lead..cols
            // using exact extended-gcd style column operations.
            let nonzero: Vec<usize> = (lead..cols).filter(|&j| !a[r][j].is_zero()).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    let j = nonzero[0];
                    a.iter_mut().for_each(|row| row.swap(lead, j));
                    u.swap(lead, j);
                    if a[r][lead].is_negative() {
                        for row in a.iter_mut() {
                            row[lead] = -row[lead].clone();
                        }
                        for v in u[lead].iter_mut() {
                            *v = -v.clone();
                        }
                    }
                    lead += 1;
                    break;
                }
                _ => {
                    // Reduce every other column by the one with smallest |entry|.
                    let j_min = nonzero
                        .iter()
                        .copied()
                        .min_by_key(|&j| a[r][j].abs())
                        .unwrap();
                    let pivot = a[r][j_min].clone();
                    for &j in &nonzero {
                        if j == j_min {
                            continue;
                        }
                        let q = &a[r][j] / &pivot;
                        if q.is_zero() {
                            continue;
                        }
                        for row in a.iter_mut() {
                            let delta = &q * &row[j_min];
                            row[j] -= delta;
                        }
                        let col_min = u[j_min].clone();
                        for (dst, src) in u[j].iter_mut().zip(col_min.iter()) {
                            *dst -= &q * src;
                        }
                    }
                }
            }
        }
    }
    u[lead..].to_vec()
}
