//! Interval matrices, point matrices, and exact rational elimination.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{format_rational, int, Rational};

/// A `rows x cols` grid of intervals, stored row-major.
///
/// Zero-sized matrices are allowed; reduction can delete every row and column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Interval>,
}

/// A `rows x cols` grid of rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

fn check_grid<T>(rows: &[Vec<T>]) -> Result<(usize, usize)> {
    let p = rows.len();
    let q = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != q) {
        return Err(Error::DimensionMismatch {
            expected: format!("{q} columns in every row"),
            found: format!("a row with {} columns", bad.len()),
        });
    }
    Ok((p, q))
}

impl IntervalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Interval>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(IntervalMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Interval>>) -> Result<Self> {
        let (p, q) = check_grid(&rows)?;
        Self::new(p, q, rows.into_iter().flatten().collect())
    }

    /// Builds the matrix from separate grids of lower and upper endpoints.
    pub fn from_bounds(min: Vec<Vec<Rational>>, max: Vec<Vec<Rational>>) -> Result<Self> {
        let (p, q) = check_grid(&min)?;
        let (p2, q2) = check_grid(&max)?;
        if (p, q) != (p2, q2) {
            return Err(Error::DimensionMismatch {
                expected: format!("{p}x{q} maxima"),
                found: format!("{p2}x{q2}"),
            });
        }
        let entries = min
            .into_iter()
            .flatten()
            .zip(max.into_iter().flatten())
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, q, entries)
    }

    /// Integer endpoint pairs. Panics on ragged input or reversed pairs.
    pub fn from_int_pairs(rows: &[&[(i64, i64)]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&(lo, hi)| Interval::of(lo, hi)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix literal")
    }

    /// Every entry is the degenerate interval of the corresponding entry of `a`.
    pub fn degenerate(a: &PointMatrix) -> Self {
        IntervalMatrix {
            rows: a.rows,
            cols: a.cols,
            entries: a.entries.iter().cloned().map(Interval::point).collect(),
        }
    }

    pub fn filled(rows: usize, cols: usize, value: Interval) -> Self {
        IntervalMatrix {
            rows,
            cols,
            entries: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Interval {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Interval) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Interval] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Interval] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Iterates `(i, j, entry)` in row-major order.
    pub fn iter_indexed(&self) -> impl Iterator<Item = (usize, usize, &Interval)> {
        let q = self.cols;
        self.entries.iter().enumerate().map(move |(k, e)| (k / q, k % q, e))
    }

    pub fn transpose(&self) -> IntervalMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntervalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntervalMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        IntervalMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let k = i * self.cols + j;
            self.entries[k] = -&self.entries[k];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let k = i * self.cols + j;
            self.entries[k] = -&self.entries[k];
        }
    }

    /// True iff every entry of `a` lies in the corresponding interval.
    pub fn contains(&self, a: &PointMatrix) -> Result<bool> {
        if (a.rows, a.cols) != (self.rows, self.cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", a.rows, a.cols),
            });
        }
        Ok(self.entries.iter().zip(&a.entries).all(|(iv, x)| iv.contains(x)))
    }

    /// Like [`contains`](Self::contains) but names the first offending entry.
    pub fn check_member(&self, a: &PointMatrix) -> Result<()> {
        if !self.contains(a)? {
            let k = self
                .entries
                .iter()
                .zip(&a.entries)
                .position(|(iv, x)| !iv.contains(x))
                .unwrap();
            return Err(Error::NotMember {
                row: k / self.cols,
                col: k % self.cols,
            });
        }
        Ok(())
    }

    pub fn lower(&self) -> PointMatrix {
        self.map_points(|iv| iv.lo().clone())
    }

    pub fn upper(&self) -> PointMatrix {
        self.map_points(|iv| iv.hi().clone())
    }

    pub fn midpoints(&self) -> PointMatrix {
        self.map_points(Interval::midpoint)
    }

    pub fn map_points(&self, f: impl FnMut(&Interval) -> Rational) -> PointMatrix {
        PointMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Row-major positions of entries with `lo < hi`.
    pub fn nonconstant_positions(&self) -> Vec<(usize, usize)> {
        self.iter_indexed()
            .filter(|(_, _, e)| !e.is_constant())
            .map(|(i, j, _)| (i, j))
            .collect()
    }
}

impl PointMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(PointMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let (p, q) = check_grid(&rows)?;
        Self::new(p, q, rows.into_iter().flatten().collect())
    }

    /// Panics on ragged input; meant for literals.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_rows(rows).expect("ragged integer matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PointMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn transpose(&self) -> PointMatrix {
        let mut t = PointMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let k = i * self.cols + j;
            self.entries[k] = -&self.entries[k];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let k = i * self.cols + j;
            self.entries[k] = -&self.entries[k];
        }
    }

    pub fn rank(&self) -> usize {
        exact_rank(self)
    }
}

/// Rank over the rationals by fraction-exact Gaussian elimination.
pub fn exact_rank(a: &PointMatrix) -> usize {
    let mut m = a.to_rows();
    row_echelon(&mut m, a.cols)
}

/// Reduces `m` in place to row echelon form and returns the number of pivots.
fn row_echelon(m: &mut [Vec<Rational>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            eliminate(m, rank, r, col);
        }
        rank += 1;
    }
    rank
}

/// Subtracts a multiple of row `pivot` from row `target > pivot` to clear `col`.
fn eliminate(m: &mut [Vec<Rational>], pivot: usize, target: usize, col: usize) {
    let (top, bottom) = m.split_at_mut(target);
    let (pivot_row, row) = (&top[pivot], &mut bottom[0]);
    let factor = &row[col] / &pivot_row[col];
    for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
        *x -= &factor * y;
    }
}

/// Exact determinant of a square point matrix (1 for the empty matrix).
pub fn determinant(a: &PointMatrix) -> Result<Rational> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut m = a.to_rows();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            eliminate(&mut m, col, r, col);
        }
    }
    Ok(det)
}

fn write_grid<T>(
    f: &mut fmt::Formatter<'_>,
    rows: usize,
    cols: usize,
    cell: impl Fn(usize, usize) -> T,
) -> fmt::Result
where
    T: fmt::Display,
{
    for i in 0..rows {
        let line: Vec<String> = (0..cols).map(|j| cell(i, j).to_string()).collect();
        writeln!(f, "{}", line.join("  "))?;
    }
    Ok(())
}

impl fmt::Display for IntervalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, |i, j| self.get(i, j))
    }
}

impl fmt::Display for PointMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, |i, j| format_rational(self.get(i, j)))
    }
}
