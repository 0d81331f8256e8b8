//! Rank-zero and rank-one containment.
//!
//! For a reduced interval matrix with nonnegative entries `[m_ij, M_ij]`, a
//! rank-one member exists iff for every `h` in `2..=2^(min(p,q)-1)`, all row
//! indices `i_1..i_h`, column indices `j_1..j_h` and permutations `s` of
//! `1..h`:
//!
//! ```text
//! m[i_1, j_1] * ... * m[i_h, j_h]  <=  M[i_1, j_s(1)] * ... * M[i_h, j_s(h)]
//! ```
//!
//! Read the pair `(tuple, s)` as a closed walk that alternates column `j_k`,
//! row `i_k` (entering on a lower bound), column `j_s(k)` (leaving on an
//! upper bound). Every row and column is entered as often as it is left, so
//! the walk splits into simple cycles with pairwise distinct rows and
//! pairwise distinct columns, and the two products split multiplicatively
//! along the cycles. A violated inequality therefore has a violated simple
//! cycle no longer than the walk, and simple cycles have at most
//! `min(p, q)` steps. [`rank_one_nonneg_reduced`] enumerates exactly those
//! tuples; [`product_condition_exhaustive`] enumerates all tuples literally
//! and serves as its reference.
//!
//! General matrices go through [`crate::preprocess`] first: reduce, split the
//! zero-straddling entries of the first row and column, normalize signs, and
//! clamp to the nonnegative orthant.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{combinations, multiset_permutations, multisets, next_permutation, permutations};
use crate::error::{Error, Result};
use crate::interval::{interval_mul, Interval, SignClass};
use crate::matrix::{IntervalMatrix, PointMatrix};
use crate::oracle;
use crate::preprocess::{
    clamp_nonneg, is_reduced, normalize_case, reduce, sign_split_cases_in, Clamped, SplitChoice,
    SplitScope,
};
use crate::rational::Rational;

/// `mrk = 0` iff every entry contains 0.
pub fn mrk_is_zero(mu: &IntervalMatrix) -> bool {
    mu.entries().iter().all(Interval::contains_zero)
}

/// The tuple-size bound `2^(min(p,q) - 1)`, saturating at `usize::MAX`.
pub fn exact_h_bound(p: usize, q: usize) -> usize {
    let e = p.min(q).saturating_sub(1);
    1usize.checked_shl(e as u32).unwrap_or(usize::MAX)
}

/// A tuple for which the product of lower bounds exceeds the product of upper bounds.
///
/// Position `k` contributes `m[rows[k], lower_cols[k]]` on the left and
/// `M[rows[k], upper_cols[k]]` on the right; `upper_cols` is a rearrangement
/// of `lower_cols`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductViolation {
    pub rows: Vec<usize>,
    pub lower_cols: Vec<usize>,
    pub upper_cols: Vec<usize>,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub lower_product: Rational,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub upper_product: Rational,
}

/// Both sides of the product inequality for one tuple.
pub fn product_sides(
    mu: &IntervalMatrix,
    rows: &[usize],
    lower_cols: &[usize],
    upper_cols: &[usize],
) -> (Rational, Rational) {
    let lhs = rows
        .iter()
        .zip(lower_cols)
        .fold(Rational::one(), |acc, (&i, &j)| acc * mu.get(i, j).lo());
    let rhs = rows
        .iter()
        .zip(upper_cols)
        .fold(Rational::one(), |acc, (&i, &j)| acc * mu.get(i, j).hi());
    (lhs, rhs)
}

fn check_nonneg_reduced(mu: &IntervalMatrix) -> Result<()> {
    if mu.rows() < 2 || mu.cols() < 2 {
        return Err(Error::Precondition(format!(
            "need at least 2 rows and 2 columns, got {}x{}",
            mu.rows(),
            mu.cols()
        )));
    }
    if let Some((i, j, e)) = mu.iter_indexed().find(|(_, _, e)| !e.classify().contains(SignClass::NONNEG)) {
        return Err(Error::Precondition(format!("entry ({i}, {j}) = {e} is not nonnegative")));
    }
    if !is_reduced(mu) {
        return Err(Error::Precondition("matrix is not reduced".into()));
    }
    Ok(())
}

/// Visits every violating tuple with pairwise distinct rows and pairwise
/// distinct columns, of size `2..=min(h_max, p, q)`.
///
/// Rows are taken in increasing order; columns range over injective
/// sequences and the rearrangement over all of `S_h`.
pub fn for_each_violation<B>(
    mu: &IntervalMatrix,
    h_max: usize,
    mut visit: impl FnMut(ProductViolation) -> ControlFlow<B>,
) -> Result<Option<B>> {
    check_nonneg_reduced(mu)?;
    let top = h_max.min(mu.rows()).min(mu.cols());
    for h in 2..=top {
        let sigmas = permutations(h);
        for rows in combinations(mu.rows(), h) {
            for col_set in combinations(mu.cols(), h) {
                let mut cols = col_set.clone();
                loop {
                    if let ControlFlow::Break(b) = visit_tuple(mu, &rows, &cols, &sigmas, &mut visit) {
                        return Ok(Some(b));
                    }
                    if !next_permutation(&mut cols) {
                        break;
                    }
                }
            }
        }
    }
    Ok(None)
}

fn visit_tuple<B>(
    mu: &IntervalMatrix,
    rows: &[usize],
    cols: &[usize],
    sigmas: &[Vec<usize>],
    visit: &mut impl FnMut(ProductViolation) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let mut lhs = Rational::one();
    for (&i, &j) in rows.iter().zip(cols) {
        let m = mu.get(i, j).lo();
        if m.is_zero() {
            return ControlFlow::Continue(());
        }
        lhs *= m;
    }
    for sigma in sigmas {
        let mut rhs = Rational::one();
        for (k, &i) in rows.iter().enumerate() {
            rhs *= mu.get(i, cols[sigma[k]]).hi();
            if rhs.is_zero() {
                break;
            }
        }
        if lhs > rhs {
            visit(ProductViolation {
                rows: rows.to_vec(),
                lower_cols: cols.to_vec(),
                upper_cols: sigma.iter().map(|&s| cols[s]).collect(),
                lower_product: lhs.clone(),
                upper_product: rhs,
            })?;
        }
    }
    ControlFlow::Continue(())
}

/// First violating tuple found by [`for_each_violation`], if any.
pub fn find_product_violation(mu: &IntervalMatrix, h_max: usize) -> Result<Option<ProductViolation>> {
    for_each_violation(mu, h_max, ControlFlow::Break)
}

/// Decides rank-one containment for a reduced matrix with nonnegative
/// entries and at least two rows and columns.
///
/// `h_max = exact_h_bound(p, q)` (or anything `>= min(p, q)`) gives the exact
/// answer. A smaller cap can only miss violations: `false` stays sound,
/// `true` may not be.
pub fn rank_one_nonneg_reduced(mu: &IntervalMatrix, h_max: usize) -> Result<bool> {
    Ok(find_product_violation(mu, h_max)?.is_none())
}

/// The product condition enumerated literally: every multiset of
/// `(row, column)` positions of size `2..=h_max`, against every distinct
/// rearrangement of its column multiset. Cost grows like `(pq)^h * h!`.
pub fn product_condition_exhaustive(
    mu: &IntervalMatrix,
    h_max: usize,
) -> Result<Option<ProductViolation>> {
    check_nonneg_reduced(mu)?;
    let q = mu.cols();
    for h in 2..=h_max {
        for pairs in multisets(mu.rows() * q, h) {
            let rows: Vec<usize> = pairs.iter().map(|&k| k / q).collect();
            let cols: Vec<usize> = pairs.iter().map(|&k| k % q).collect();
            let (lhs, _) = product_sides(mu, &rows, &cols, &cols);
            if lhs.is_zero() {
                continue;
            }
            for upper in multiset_permutations(&cols) {
                let (_, rhs) = product_sides(mu, &rows, &cols, &upper);
                if lhs > rhs {
                    return Ok(Some(ProductViolation {
                        rows,
                        lower_cols: cols,
                        upper_cols: upper,
                        lower_product: lhs,
                        upper_product: rhs,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The interval-product intersection condition over all tuples of size
/// `2..=h_max`. Necessary for rank-one containment but not sufficient.
pub fn intersection_condition(mu: &IntervalMatrix, h_max: usize) -> bool {
    let q = mu.cols();
    if q == 0 {
        return true;
    }
    for h in 2..=h_max {
        for pairs in multisets(mu.rows() * q, h) {
            let rows: Vec<usize> = pairs.iter().map(|&k| k / q).collect();
            let cols: Vec<usize> = pairs.iter().map(|&k| k % q).collect();
            let product = |cs: &[usize]| {
                rows.iter()
                    .zip(cs)
                    .fold(Interval::point(Rational::one()), |acc, (&i, &j)| interval_mul(&acc, mu.get(i, j)))
            };
            let left = product(&cols);
            for upper in multiset_permutations(&cols) {
                if left.intersect(&product(&upper)).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

/// Knobs for [`analyze_rank_one`].
#[derive(Clone, Debug, Default)]
pub struct RankOneOptions {
    /// Tuple-size cap; `None` uses the exact bound for every case.
    pub h_max: Option<usize>,
    /// Maximum number of straddling entries to split; `None` is unlimited.
    pub split_cap: Option<usize>,
    /// Produce a rank-one member when one exists.
    pub witness: bool,
}

/// Outcome for one sign case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CaseVerdict {
    /// An entry lies below 0 after normalization.
    StrictlyNegative { row: usize, col: usize },
    /// The product condition fails on this tuple.
    Violation(ProductViolation),
    /// The product condition holds up to the exact bound.
    RankOne,
    /// The product condition holds up to a cap below the exact bound.
    RankOneUnverified { h_max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub split_choices: Vec<((usize, usize), SplitChoice)>,
    pub row_flips: Vec<usize>,
    pub col_flips: Vec<usize>,
    pub verdict: CaseVerdict,
}

/// How the rank-one question was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankOneRoute {
    /// Every entry contains 0; rank one iff some entry is not `[0, 0]`.
    AllContainZero,
    /// The reduced matrix has a single row or column.
    Vector,
    /// Sign cases were examined with the product condition.
    Cases,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneReport {
    pub contains: bool,
    /// False when the answer `true` rests on a capped tuple size.
    pub conclusive: bool,
    pub route: RankOneRoute,
    pub kept_rows: Vec<usize>,
    pub kept_cols: Vec<usize>,
    pub split_count: usize,
    /// Examined cases, in enumeration order, up to the deciding one.
    pub cases: Vec<CaseReport>,
    pub witness: Option<PointMatrix>,
}

/// True iff some member of `mu` has rank exactly one.
pub fn contains_rank_one(mu: &IntervalMatrix) -> bool {
    analyze_rank_one(mu, &RankOneOptions::default())
        .expect("uncapped analysis cannot fail")
        .contains
}

/// A rank-one member of `mu`, if one exists.
pub fn rank_one_witness(mu: &IntervalMatrix) -> Option<PointMatrix> {
    let opts = RankOneOptions {
        witness: true,
        ..Default::default()
    };
    analyze_rank_one(mu, &opts).expect("uncapped analysis cannot fail").witness
}

/// Full rank-one pipeline with a trace of every examined case.
pub fn analyze_rank_one(mu: &IntervalMatrix, opts: &RankOneOptions) -> Result<RankOneReport> {
    let reduced = reduce(mu);
    let mut report = RankOneReport {
        contains: false,
        conclusive: true,
        route: RankOneRoute::Cases,
        kept_rows: reduced.kept_rows.clone(),
        kept_cols: reduced.kept_cols.clone(),
        split_count: 0,
        cases: Vec::new(),
        witness: None,
    };

    if reduced.is_empty() {
        report.route = RankOneRoute::AllContainZero;
        let nonzero = mu.iter_indexed().find(|(_, _, e)| !e.classify().contains(SignClass::ZERO));
        if let Some((i, j, e)) = nonzero {
            report.contains = true;
            if opts.witness {
                let mut w = PointMatrix::zeros(mu.rows(), mu.cols());
                let v = if e.lo().is_zero() { e.hi() } else { e.lo() };
                w.set(i, j, v.clone());
                report.witness = Some(w);
            }
        }
        return Ok(report);
    }

    let red = &reduced.matrix;
    if red.rows() == 1 || red.cols() == 1 {
        report.route = RankOneRoute::Vector;
        report.contains = true;
        if opts.witness {
            // entries excluding 0 get a nonzero endpoint, the rest 0
            let w = red.map_points(|e| if e.contains_zero() { Rational::zero() } else { e.lo().clone() });
            report.witness = Some(reduced.embed(&w));
        }
        return Ok(report);
    }

    let mut cases = sign_split_cases_in(red, SplitScope::FirstLine);
    report.split_count = cases.split_count();
    if let Some(cap) = opts.split_cap {
        cases = cases.capped(cap)?;
    }
    let exact = exact_h_bound(red.rows(), red.cols());
    let needed = red.rows().min(red.cols());
    let h_max = opts.h_max.unwrap_or(exact);

    for case in cases {
        let case = normalize_case(case)?;
        let (verdict, clamped) = match clamp_nonneg(&case.matrix) {
            Clamped::NoRankOne { row, col } => (CaseVerdict::StrictlyNegative { row, col }, None),
            Clamped::Matrix(m) => match find_product_violation(&m, h_max)? {
                Some(v) => (CaseVerdict::Violation(v), None),
                None if h_max >= needed => (CaseVerdict::RankOne, Some(m)),
                None => (CaseVerdict::RankOneUnverified { h_max }, Some(m)),
            },
        };
        let settled = verdict == CaseVerdict::RankOne;
        report.cases.push(CaseReport {
            split_choices: case.split_choices.iter().map(|(&k, &v)| (k, v)).collect(),
            row_flips: flagged(&case.row_flips),
            col_flips: flagged(&case.col_flips),
            verdict,
        });
        if let Some(m) = clamped {
            report.contains = true;
            if opts.witness && report.witness.is_none() {
                if let Some(w) = oracle::rank1_feasible_log(&m)? {
                    report.witness = Some(reduced.embed(&case.unflip(&w)));
                }
            }
            if settled {
                report.conclusive = true;
                return Ok(report);
            }
            report.conclusive = false;
        }
    }
    Ok(report)
}

fn flagged(flags: &[bool]) -> Vec<usize> {
    flags.iter().enumerate().filter(|(_, &f)| f).map(|(k, _)| k).collect()
}

/// Split choices of a case as a map, for callers that want lookups.
pub fn split_map(case: &CaseReport) -> BTreeMap<(usize, usize), SplitChoice> {
    case.split_choices.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn reference_clamped() -> IntervalMatrix {
        IntervalMatrix::from_int_pairs(&[
            &[(2, 3), (1, 6), (0, 2), (1, 3)],
            &[(1, 2), (2, 3), (0, 3), (0, 2)],
            &[(1, 4), (0, 2), (3, 4), (0, 1)],
        ])
    }

    #[test]
    fn zero_rank_detection() {
        assert!(mrk_is_zero(&IntervalMatrix::filled(2, 3, Interval::of(-1, 1))));
        let mut mu = IntervalMatrix::filled(2, 2, Interval::of(-1, 1));
        mu.set(1, 1, Interval::of(1, 2));
        assert!(!mrk_is_zero(&mu));
    }

    #[test]
    fn h_bound() {
        assert_eq!(exact_h_bound(2, 2), 2);
        assert_eq!(exact_h_bound(3, 4), 4);
        assert_eq!(exact_h_bound(4, 4), 8);
        assert_eq!(exact_h_bound(1, 9), 1);
        assert_eq!(exact_h_bound(200, 200), usize::MAX);
    }

    #[test]
    fn clamped_example_has_the_triple_violation() {
        let mu = reference_clamped();
        let (lhs, rhs) = product_sides(&mu, &[0, 1, 2], &[0, 1, 2], &[2, 0, 1]);
        assert_eq!((lhs, rhs), (int(12), int(8)));
        assert!(!rank_one_nonneg_reduced(&mu, 4).unwrap());
        assert!(product_condition_exhaustive(&mu, 3).unwrap().is_some());
    }

    #[test]
    fn unit_boxes_always_pass() {
        let mu = IntervalMatrix::filled(3, 3, Interval::of(0, 1));
        // every row has an entry excluding 0 only if we make one positive
        let mut mu = mu;
        for k in 0..3 {
            mu.set(k, k, Interval::new(frac(1, 2), int(1)).unwrap());
        }
        assert!(rank_one_nonneg_reduced(&mu, 4).unwrap());
    }

    #[test]
    fn precondition_errors() {
        let neg = IntervalMatrix::from_int_pairs(&[&[(1, 2), (-1, 2)], &[(1, 2), (1, 2)]]);
        assert!(rank_one_nonneg_reduced(&neg, 2).is_err());
        let thin = IntervalMatrix::from_int_pairs(&[&[(1, 2), (1, 2)]]);
        assert!(rank_one_nonneg_reduced(&thin, 2).is_err());
        let unreduced = IntervalMatrix::from_int_pairs(&[&[(1, 2), (0, 2)], &[(0, 2), (0, 2)]]);
        assert!(rank_one_nonneg_reduced(&unreduced, 2).is_err());
    }

    #[test]
    fn point_rank_one_matrix() {
        let a = PointMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let mu = IntervalMatrix::degenerate(&a);
        assert!(contains_rank_one(&mu));
        assert_eq!(rank_one_witness(&mu), Some(a));
    }

    #[test]
    fn all_zero_containing() {
        let zero = IntervalMatrix::filled(2, 2, Interval::zero());
        assert!(!contains_rank_one(&zero));
        let mut mu = zero.clone();
        mu.set(1, 0, Interval::of(-2, 0));
        let w = rank_one_witness(&mu).unwrap();
        assert_eq!(w.rank(), 1);
        assert!(mu.contains(&w).unwrap());
    }

    #[test]
    fn vector_shaped_reduction() {
        let mu = IntervalMatrix::from_int_pairs(&[&[(-1, 1), (2, 3), (-1, 1)], &[(-1, 1), (-1, 1), (-1, 1)]]);
        let report = analyze_rank_one(&mu, &RankOneOptions { witness: true, ..Default::default() }).unwrap();
        assert_eq!(report.route, RankOneRoute::Vector);
        let w = report.witness.unwrap();
        assert_eq!(w.rank(), 1);
        assert!(mu.contains(&w).unwrap());
    }

    #[test]
    fn intersection_condition_on_clamped_example() {
        assert!(!intersection_condition(&reference_clamped(), 4));
    }

    #[test]
    fn capped_tuple_size_is_flagged() {
        // a 3x3 matrix that fails only at a 3-cycle
        let mu = IntervalMatrix::from_int_pairs(&[
            &[(2, 2), (1, 1), (0, 16)],
            &[(0, 16), (2, 2), (1, 1)],
            &[(1, 1), (0, 16), (2, 2)],
        ]);
        assert!(find_product_violation(&mu, 2).unwrap().is_none());
        assert!(find_product_violation(&mu, 3).unwrap().is_some());
        let capped = analyze_rank_one(&mu, &RankOneOptions { h_max: Some(2), ..Default::default() }).unwrap();
        assert!(capped.contains && !capped.conclusive);
        assert!(!contains_rank_one(&mu));
    }
}
