use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::ExactScalar;

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<ExactScalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ExactScalar::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(ExactScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled to integers; every intermediate entry stays
    /// an integer because the Bareiss update divides exactly by the previous
    /// pivot.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|r| integer_row(self.row(r))).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                    m[r][c] = v;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form with pivot bookkeeping.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<ExactScalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = reduce_rows(&mut rows, self.cols);
        rows.truncate(pivots.len());
        Rref { cols: self.cols, rows, pivots }
    }

    /// Basis of the right null space in reduced-echelon canonical form:
    /// one vector per free column, with a 1 in that column and 0 in every
    /// other free column, ordered by free column.
    pub fn kernel_basis(&self) -> Vec<Vec<ExactScalar>> {
        self.rref().kernel_basis()
    }

    /// Solves `self * x = b`. Returns `None` when `b` is outside the image.
    /// The particular solution has every free variable set to zero.
    pub fn solve_affine(&self, b: &[ExactScalar]) -> Option<AffineSolution> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let mut rows: Vec<Vec<ExactScalar>> = (0..self.rows)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.push(b[r].clone());
                v
            })
            .collect();
        let pivots = reduce_rows(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = vec![ExactScalar::zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            particular[p] = row[self.cols].clone();
        }
        rows.truncate(pivots.len());
        for row in rows.iter_mut() {
            row.pop();
        }
        let homogeneous = Rref { cols: self.cols, rows, pivots }.kernel_basis();
        Some(AffineSolution { particular, homogeneous })
    }
}

fn integer_row(row: &[ExactScalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// In-place Gauss-Jordan elimination over the first `width` columns.
/// Returns pivot columns; rows are permuted so pivots come first.
fn reduce_rows(rows: &mut [Vec<ExactScalar>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip();
        let support: Vec<usize> = (col..rows[next].len()).filter(|&c| !rows[next][c].is_zero()).collect();
        for &c in &support {
            rows[next][c] = &rows[next][c] * &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &c in &support {
                row[c] = &row[c] - &factor * &pivot_row[c];
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// A matrix in reduced row echelon form (zero rows dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    cols: usize,
    rows: Vec<Vec<ExactScalar>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<ExactScalar>] {
        &self.rows
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<ExactScalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[f] = ExactScalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// The solution set of an affine system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<ExactScalar>,
    pub homogeneous: Vec<Vec<ExactScalar>>,
}

/// Row-reduced spanning set of a subspace, used to test membership and to
/// compute canonical normal forms modulo the subspace.
#[derive(Clone, Debug)]
pub struct SpanReducer {
    dim: usize,
    rref: Rref,
}

impl SpanReducer {
    pub fn new(dim: usize, vectors: &[Vec<ExactScalar>]) -> Self {
        let m = if vectors.is_empty() { ExactMatrix::zeros(0, dim) } else { ExactMatrix::from_rows(vectors.to_vec()) };
        assert_eq!(m.cols(), dim);
        SpanReducer { dim, rref: m.rref() }
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    /// Normal form of `v` modulo the span: every pivot coordinate cleared.
    pub fn reduce(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.dim);
        let mut out = v.to_vec();
        for (row, &p) in self.rref.rows.iter().zip(&self.rref.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out[c] = &out[c] - &factor * x;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` against the reduced basis rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rref.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn basis(&self) -> &[Vec<ExactScalar>] {
        self.rref.rows()
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }
}
