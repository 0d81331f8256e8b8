//! Reduction, sign splitting, sign normalization and clamping.
//!
//! These transformations preserve the question "does the interval matrix
//! contain a point matrix of rank r" and are shared by the rank-one and the
//! three-column deciders:
//!
//! * rows and columns whose every entry contains 0 can be deleted without
//!   changing the minimal rank ([`reduce`]);
//! * an entry `[a, b]` with `a < 0 < b` can be replaced by either `[a, 0]` or
//!   `[0, b]`, and a rank is attained iff it is attained in one of the two
//!   ([`sign_split_cases`]);
//! * negating a row or a column preserves the whole rank range
//!   ([`normalize_first_line`]);
//! * once the first row and column are nonnegative, a rank-one member must be
//!   entrywise nonnegative ([`clamp_nonneg`]).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::interval::{Interval, SignClass};
use crate::matrix::{IntervalMatrix, PointMatrix};

/// The result of deleting all-zero-containing rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub matrix: IntervalMatrix,
    /// Original indices of the surviving rows, ascending.
    pub kept_rows: Vec<usize>,
    /// Original indices of the surviving columns, ascending.
    pub kept_cols: Vec<usize>,
    source_rows: usize,
    source_cols: usize,
}

impl ReducedForm {
    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    /// Places a point matrix of the reduced shape back into the original shape,
    /// with zeros in every deleted row and column (those entries all contain 0).
    pub fn embed(&self, a: &PointMatrix) -> PointMatrix {
        assert_eq!((a.rows(), a.cols()), (self.kept_rows.len(), self.kept_cols.len()));
        let mut out = PointMatrix::zeros(self.source_rows, self.source_cols);
        for (ri, &i) in self.kept_rows.iter().enumerate() {
            for (cj, &j) in self.kept_cols.iter().enumerate() {
                out.set(i, j, a.get(ri, cj).clone());
            }
        }
        out
    }
}

/// Deletes, in one pass against the input, every row and every column all of
/// whose entries contain 0.
///
/// The result is reduced: a surviving column has an entry excluding 0, and
/// that entry's row survives too.
pub fn reduce(mu: &IntervalMatrix) -> ReducedForm {
    let kept_rows: Vec<usize> = (0..mu.rows())
        .filter(|&i| mu.row(i).iter().any(|e| !e.contains_zero()))
        .collect();
    let kept_cols: Vec<usize> = (0..mu.cols())
        .filter(|&j| (0..mu.rows()).any(|i| !mu.get(i, j).contains_zero()))
        .collect();
    let (kept_rows, kept_cols) = if kept_rows.is_empty() || kept_cols.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        (kept_rows, kept_cols)
    };
    ReducedForm {
        matrix: mu.submatrix(&kept_rows, &kept_cols),
        kept_rows,
        kept_cols,
        source_rows: mu.rows(),
        source_cols: mu.cols(),
    }
}

/// True iff every row and every column has an entry not containing 0.
pub fn is_reduced(mu: &IntervalMatrix) -> bool {
    (0..mu.rows()).all(|i| mu.row(i).iter().any(|e| !e.contains_zero()))
        && (0..mu.cols()).all(|j| (0..mu.rows()).any(|i| !mu.get(i, j).contains_zero()))
}

/// Which half of a split entry a case keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitChoice {
    /// `[lo, 0]`
    Lower,
    /// `[0, hi]`
    Upper,
}

/// Which straddling entries get split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitScope {
    /// Every entry with `lo < 0 < hi`.
    All,
    /// Only entries in the first row or the first column.
    FirstLine,
    /// Only entries in the first column.
    FirstColumn,
}

/// A sign-split, sign-normalized variant of a source matrix, with the
/// bookkeeping needed to replay it or to map members back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCase {
    pub matrix: IntervalMatrix,
    pub row_flips: Vec<bool>,
    pub col_flips: Vec<bool>,
    pub split_choices: BTreeMap<(usize, usize), SplitChoice>,
}

impl SignCase {
    fn unchanged(mu: &IntervalMatrix) -> Self {
        SignCase {
            matrix: mu.clone(),
            row_flips: vec![false; mu.rows()],
            col_flips: vec![false; mu.cols()],
            split_choices: BTreeMap::new(),
        }
    }

    /// Applies the recorded splits, then the recorded flips, to `source`.
    pub fn replay(&self, source: &IntervalMatrix) -> IntervalMatrix {
        let mut m = source.clone();
        for (&(i, j), &choice) in &self.split_choices {
            m.set(i, j, split_half(source.get(i, j), choice));
        }
        for (i, _) in self.row_flips.iter().enumerate().filter(|(_, &f)| f) {
            m.negate_row(i);
        }
        for (j, _) in self.col_flips.iter().enumerate().filter(|(_, &f)| f) {
            m.negate_col(j);
        }
        m
    }

    /// Undoes the flips on a member of `self.matrix`, giving a member of the
    /// split (unflipped) matrix and hence of the source.
    pub fn unflip(&self, a: &PointMatrix) -> PointMatrix {
        let mut out = a.clone();
        for (i, _) in self.row_flips.iter().enumerate().filter(|(_, &f)| f) {
            out.negate_row(i);
        }
        for (j, _) in self.col_flips.iter().enumerate().filter(|(_, &f)| f) {
            out.negate_col(j);
        }
        out
    }

    fn flip_row(&mut self, i: usize) {
        self.matrix.negate_row(i);
        self.row_flips[i] = !self.row_flips[i];
    }

    fn flip_col(&mut self, j: usize) {
        self.matrix.negate_col(j);
        self.col_flips[j] = !self.col_flips[j];
    }
}

fn split_half(e: &Interval, choice: SplitChoice) -> Interval {
    match choice {
        SplitChoice::Lower => Interval::new(e.lo().clone(), num_traits::Zero::zero()),
        SplitChoice::Upper => Interval::new(num_traits::Zero::zero(), e.hi().clone()),
    }
    .expect("split of a zero-straddling interval")
}

/// Row-major positions of the straddling entries a scope splits.
pub fn straddling_positions(mu: &IntervalMatrix, scope: SplitScope) -> Vec<(usize, usize)> {
    mu.iter_indexed()
        .filter(|&(i, j, _)| match scope {
            SplitScope::All => true,
            SplitScope::FirstLine => i == 0 || j == 0,
            SplitScope::FirstColumn => j == 0,
        })
        .filter(|(_, _, e)| e.classify().contains(SignClass::STRADDLES_ZERO))
        .map(|(i, j, _)| (i, j))
        .collect()
}

/// Every way of splitting all straddling entries.
pub fn sign_split_cases(mu: &IntervalMatrix) -> SplitCases<'_> {
    sign_split_cases_in(mu, SplitScope::All)
}

/// Every way of splitting the straddling entries selected by `scope`.
///
/// Cases come in binary-counter order over the row-major positions, with the
/// first position most significant and `Lower` before `Upper`.
pub fn sign_split_cases_in(mu: &IntervalMatrix, scope: SplitScope) -> SplitCases<'_> {
    let positions = straddling_positions(mu, scope);
    SplitCases {
        source: mu,
        total: 1u128.checked_shl(positions.len() as u32).unwrap_or(0),
        positions,
        next: 0,
    }
}

/// Lazy iterator over split cases; see [`sign_split_cases_in`].
#[derive(Clone, Debug)]
pub struct SplitCases<'a> {
    source: &'a IntervalMatrix,
    positions: Vec<(usize, usize)>,
    next: u128,
    total: u128,
}

impl SplitCases<'_> {
    /// Number of straddling entries being split.
    pub fn split_count(&self) -> usize {
        self.positions.len()
    }

    /// Fails with [`Error::CapExceeded`] when more than `cap` entries would be split.
    pub fn capped(self, cap: usize) -> Result<Self> {
        if self.positions.len() > cap {
            return Err(Error::CapExceeded {
                what: "straddling entries to split",
                limit: cap,
                actual: self.positions.len(),
            });
        }
        Ok(self)
    }
}

impl Iterator for SplitCases<'_> {
    type Item = SignCase;

    fn next(&mut self) -> Option<SignCase> {
        if self.next >= self.total {
            return None;
        }
        let code = self.next;
        self.next += 1;
        let z = self.positions.len();
        let mut case = SignCase::unchanged(self.source);
        for (k, &(i, j)) in self.positions.iter().enumerate() {
            let choice = if code >> (z - 1 - k) & 1 == 0 {
                SplitChoice::Lower
            } else {
                SplitChoice::Upper
            };
            case.matrix.set(i, j, split_half(self.source.get(i, j), choice));
            case.split_choices.insert((i, j), choice);
        }
        Some(case)
    }
}

fn needs_flip(e: &Interval) -> bool {
    let c = e.classify();
    c.contains(SignClass::NONPOS) && !c.contains(SignClass::ZERO)
}

/// Negates rows and columns so that the first row and first column become
/// nonnegative.
///
/// Order: row 0 by entry (0, 0); rows `i >= 1` by entry (i, 0); then columns
/// `j >= 1` by entry (0, j). `[0, 0]` entries never trigger a flip.
pub fn normalize_first_line(mu: &IntervalMatrix) -> Result<SignCase> {
    normalize_case(SignCase::unchanged(mu))
}

/// [`normalize_first_line`] applied on top of an existing case, composing the flips.
pub fn normalize_case(mut case: SignCase) -> Result<SignCase> {
    let m = &case.matrix;
    if m.is_empty() {
        return Ok(case);
    }
    if let Some((i, j, e)) = m
        .iter_indexed()
        .find(|&(i, j, e)| (i == 0 || j == 0) && !e.is_sign_definite())
    {
        return Err(Error::Precondition(format!(
            "entry ({i}, {j}) = {e} in the first row or column straddles 0"
        )));
    }
    if needs_flip(case.matrix.get(0, 0)) {
        case.flip_row(0);
    }
    for i in 1..case.matrix.rows() {
        if needs_flip(case.matrix.get(i, 0)) {
            case.flip_row(i);
        }
    }
    for j in 1..case.matrix.cols() {
        if needs_flip(case.matrix.get(0, j)) {
            case.flip_col(j);
        }
    }
    Ok(case)
}

/// Negates rows so that the first column becomes nonnegative.
pub fn normalize_first_column(mut case: SignCase) -> Result<SignCase> {
    for i in 0..case.matrix.rows() {
        let e = case.matrix.get(i, 0);
        if !e.is_sign_definite() {
            return Err(Error::Precondition(format!("entry ({i}, 0) = {e} straddles 0")));
        }
        if needs_flip(e) {
            case.flip_row(i);
        }
    }
    Ok(case)
}

/// Outcome of [`clamp_nonneg`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clamped {
    /// `[max(0, lo), hi]` entrywise; contains a rank-one member iff the input does.
    Matrix(IntervalMatrix),
    /// This entry lies strictly below 0, so no rank-one member exists.
    NoRankOne { row: usize, col: usize },
}

/// Clamps a reduced matrix with nonnegative first row and column to the
/// nonnegative orthant, or reports an entry that rules out rank one.
pub fn clamp_nonneg(mu: &IntervalMatrix) -> Clamped {
    if let Some((row, col, _)) = mu
        .iter_indexed()
        .find(|(_, _, e)| e.classify().contains(SignClass::STRICT_NEG))
    {
        return Clamped::NoRankOne { row, col };
    }
    let entries = mu.entries().iter().map(Interval::clamp_below_at_zero).collect();
    Clamped::Matrix(IntervalMatrix::new(mu.rows(), mu.cols(), entries).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_everything_containing_zero() {
        let r = reduce(&IntervalMatrix::filled(3, 2, Interval::of(-1, 1)));
        assert!(r.is_empty());
        assert!(r.kept_rows.is_empty() && r.kept_cols.is_empty());
    }

    #[test]
    fn reduce_already_reduced_is_identity() {
        let mu = IntervalMatrix::from_int_pairs(&[&[(1, 2), (-1, 1)], &[(-1, 1), (-3, -2)]]);
        let r = reduce(&mu);
        assert_eq!(r.matrix, mu);
        assert_eq!(r.kept_rows, vec![0, 1]);
        assert_eq!(r.kept_cols, vec![0, 1]);
    }

    #[test]
    fn reduce_single_pass_example() {
        let mu = IntervalMatrix::from_int_pairs(&[&[(1, 2), (-1, 1)], &[(-1, 0), (-1, 1)]]);
        let r = reduce(&mu);
        assert_eq!(r.matrix, IntervalMatrix::from_int_pairs(&[&[(1, 2)]]));
        assert_eq!(r.kept_rows, vec![0]);
        assert_eq!(r.kept_cols, vec![0]);
        assert!(is_reduced(&r.matrix));
    }

    #[test]
    fn embed_restores_shape_with_zeros() {
        let mu = IntervalMatrix::from_int_pairs(&[&[(1, 2), (-1, 1)], &[(-1, 0), (-1, 1)]]);
        let r = reduce(&mu);
        let a = r.embed(&PointMatrix::from_ints(&[&[2]]));
        assert_eq!(a, PointMatrix::from_ints(&[&[2, 0], &[0, 0]]));
        assert!(mu.contains(&a).unwrap());
    }

    #[test]
    fn split_counts() {
        let plain = IntervalMatrix::from_int_pairs(&[&[(1, 2), (0, 3)]]);
        let cases: Vec<_> = sign_split_cases(&plain).collect();
        assert_eq!(cases.len(), 1);
        assert_eq!(cases[0].matrix, plain);

        let one = IntervalMatrix::from_int_pairs(&[&[(-1, 2)]]);
        let cases: Vec<_> = sign_split_cases(&one).collect();
        assert_eq!(cases.len(), 2);
        assert_eq!(cases[0].matrix.get(0, 0), &Interval::of(-1, 0));
        assert_eq!(cases[1].matrix.get(0, 0), &Interval::of(0, 2));
    }

    #[test]
    fn split_scope_and_cap() {
        let mu = IntervalMatrix::from_int_pairs(&[&[(1, 2), (-1, 1)], &[(-1, 1), (-1, 1)]]);
        assert_eq!(straddling_positions(&mu, SplitScope::All).len(), 3);
        assert_eq!(straddling_positions(&mu, SplitScope::FirstLine), vec![(0, 1), (1, 0)]);
        assert_eq!(straddling_positions(&mu, SplitScope::FirstColumn), vec![(1, 0)]);
        assert!(sign_split_cases(&mu).capped(2).is_err());
        assert_eq!(sign_split_cases(&mu).capped(3).unwrap().count(), 8);
    }

    #[test]
    fn normalize_examples() {
        let pos = IntervalMatrix::from_int_pairs(&[&[(1, 2), (0, 1)], &[(0, 0), (-5, 3)]]);
        let case = normalize_first_line(&pos).unwrap();
        assert_eq!(case.matrix, pos);
        assert!(case.row_flips.iter().chain(&case.col_flips).all(|f| !f));

        let neg = IntervalMatrix::from_int_pairs(&[&[(-2, -1)]]);
        let case = normalize_first_line(&neg).unwrap();
        assert_eq!(case.row_flips, vec![true]);
        assert_eq!(case.matrix, IntervalMatrix::from_int_pairs(&[&[(1, 2)]]));

        let straddle = IntervalMatrix::from_int_pairs(&[&[(1, 2), (-1, 1)]]);
        assert!(normalize_first_line(&straddle).is_err());
    }

    #[test]
    fn clamp_examples() {
        let mu = IntervalMatrix::from_int_pairs(&[&[(1, 2), (0, 1)], &[(0, 3), (-4, 5)]]);
        assert_eq!(
            clamp_nonneg(&mu),
            Clamped::Matrix(IntervalMatrix::from_int_pairs(&[&[(1, 2), (0, 1)], &[(0, 3), (0, 5)]]))
        );
        let bad = IntervalMatrix::from_int_pairs(&[&[(1, 2), (0, 1)], &[(0, 3), (-4, -3)]]);
        assert_eq!(clamp_nonneg(&bad), Clamped::NoRankOne { row: 1, col: 1 });
    }

    #[test]
    fn replay_and_unflip() {
        let mu = IntervalMatrix::from_int_pairs(&[&[(-2, 1), (-3, -1)], &[(1, 2), (-1, 4)]]);
        for case in sign_split_cases(&mu) {
            let case = normalize_case(case).unwrap();
            assert_eq!(case.replay(&mu), case.matrix);
            let member = case.matrix.lower();
            assert!(mu.contains(&case.unflip(&member)).unwrap());
        }
    }
}
