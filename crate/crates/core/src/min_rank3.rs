//! Minimal rank of matrices with at most three columns, and rank ranges.
//!
//! Once ranks 0 and 1 are excluded, a reduced `p x 3` matrix has minimal
//! rank 2 iff some member has one of its last two columns in the span of the
//! first column and the other one. Writing that column as
//! `lambda * col_0 + gamma * col_v`, each sign pattern of `(lambda, gamma)`
//! turns into a [`TwoVarSystem`] over the entry bounds.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{Interval, SignClass};
use crate::matrix::{IntervalMatrix, PointMatrix};
use crate::max_rank::{max_rank, max_rank_witness};
use crate::preprocess::{is_reduced, normalize_first_column, reduce, sign_split_cases_in, SplitScope};
use crate::rank_one::{mrk_is_zero, rank_one_witness};
use crate::rational::Rational;
use crate::two_var::{two_var_feasible, LowerRow, TwoVarSystem, UpperRow};

/// Column pairs `(v, w)` in the order they are tried.
pub const SPAN_PAIRS: [(usize, usize); 2] = [(1, 2), (2, 1)];

/// Sign pattern of the coefficients in `col_w = lambda * col_0 + gamma * col_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignPattern {
    /// `lambda >= 0`, `gamma >= 0`
    BothNonneg,
    /// `lambda >= 0`, `gamma <= 0`
    GammaNonpos,
    /// `lambda <= 0`, `gamma >= 0`
    LambdaNonpos,
    /// `lambda <= 0`, `gamma <= 0`
    BothNonpos,
}

impl SignPattern {
    pub const ALL: [SignPattern; 4] = [
        SignPattern::BothNonneg,
        SignPattern::GammaNonpos,
        SignPattern::LambdaNonpos,
        SignPattern::BothNonpos,
    ];

    fn lambda_negated(self) -> bool {
        matches!(self, SignPattern::LambdaNonpos | SignPattern::BothNonpos)
    }

    fn gamma_negated(self) -> bool {
        matches!(self, SignPattern::GammaNonpos | SignPattern::BothNonpos)
    }
}

/// The system whose nonnegative solutions `(lambda, gamma)` give members
/// with `col_w = (+-lambda) * col_0 + (+-gamma) * col_v`.
///
/// A negated coefficient swaps which bound of its column enters each row.
pub fn rank_two_system(mu: &IntervalMatrix, v: usize, w: usize, pattern: SignPattern) -> TwoVarSystem {
    let pick = |e: &Interval, negated: bool| -> (Rational, Rational) {
        if negated {
            (-e.hi().clone(), -e.lo().clone())
        } else {
            (e.lo().clone(), e.hi().clone())
        }
    };
    let mut sys = TwoVarSystem::default();
    for i in 0..mu.rows() {
        let (first_lo, first_hi) = pick(mu.get(i, 0), pattern.lambda_negated());
        let (span_lo, span_hi) = pick(mu.get(i, v), pattern.gamma_negated());
        let target = mu.get(i, w);
        sys.lower_rows.push(LowerRow {
            a: first_lo,
            b: span_lo,
            z: target.hi().clone(),
        });
        sys.upper_rows.push(UpperRow {
            c: first_hi,
            d: span_hi,
            u: target.lo().clone(),
        });
    }
    sys
}

/// A member of rank at most 2 and how it was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankTwoWitness {
    pub v: usize,
    pub w: usize,
    pub pattern: SignPattern,
    /// Signed coefficients of the realized combination.
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub gamma: Rational,
    #[serde(skip)]
    pub matrix: PointMatrix,
}

/// Picks, row by row, entries `x`, `y`, `t` with `t = lambda * x + gamma * y`.
fn realize(mu: &IntervalMatrix, v: usize, w: usize, lambda: &Rational, gamma: &Rational) -> PointMatrix {
    let mut out = PointMatrix::zeros(mu.rows(), 3);
    let corners = |e: &Interval, coeff: &Rational| {
        if coeff.is_negative() {
            (e.hi().clone(), e.lo().clone())
        } else {
            (e.lo().clone(), e.hi().clone())
        }
    };
    for i in 0..mu.rows() {
        let (x0, x1) = corners(mu.get(i, 0), lambda);
        let (y0, y1) = corners(mu.get(i, v), gamma);
        let f0 = lambda * &x0 + gamma * &y0;
        let f1 = lambda * &x1 + gamma * &y1;
        let target = std::cmp::max(f0.clone(), mu.get(i, w).lo().clone());
        let s = if f1 == f0 {
            Rational::zero()
        } else {
            (&target - &f0) / (&f1 - &f0)
        };
        out.set(i, 0, &x0 + &s * (&x1 - &x0));
        out.set(i, v, &y0 + &s * (&y1 - &y0));
        out.set(i, w, target);
    }
    out
}

/// Decides `mrk <= 2` for a reduced `p x 3` matrix whose first column is
/// nonnegative, returning a realizing member.
pub fn mrk_le_2(mu: &IntervalMatrix) -> Result<Option<RankTwoWitness>> {
    if mu.cols() != 3 {
        return Err(Error::Precondition(format!("need 3 columns, got {}", mu.cols())));
    }
    if !is_reduced(mu) {
        return Err(Error::Precondition("matrix is not reduced".into()));
    }
    if let Some(i) = (0..mu.rows()).find(|&i| !mu.get(i, 0).classify().contains(SignClass::NONNEG)) {
        return Err(Error::Precondition(format!("entry ({i}, 0) is not nonnegative")));
    }
    for (v, w) in SPAN_PAIRS {
        for pattern in SignPattern::ALL {
            let sys = rank_two_system(mu, v, w, pattern);
            if let Some((lambda, gamma)) = two_var_feasible(&sys) {
                let lambda = if pattern.lambda_negated() { -lambda } else { lambda };
                let gamma = if pattern.gamma_negated() { -gamma } else { gamma };
                let matrix = realize(mu, v, w, &lambda, &gamma);
                return Ok(Some(RankTwoWitness {
                    v,
                    w,
                    pattern,
                    lambda,
                    gamma,
                    matrix,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Default)]
pub struct MinRankOptions {
    /// Maximum number of first-column entries to split; `None` is unlimited.
    pub split_cap: Option<usize>,
}

/// How the minimal rank was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinRankRoute {
    AllContainZero,
    RankOne,
    /// The reduced matrix has at most two rows or columns.
    Narrow,
    /// A sign case admits a member with dependent columns.
    SpanCase,
    /// No sign case admits one.
    NoSpanCase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinRankReport {
    pub value: usize,
    pub route: MinRankRoute,
    /// A member of rank `value`.
    pub witness: PointMatrix,
    pub split_count: usize,
    pub cases_examined: usize,
    pub rank_two: Option<RankTwoWitness>,
}

fn require_three_columns(mu: &IntervalMatrix) -> Result<()> {
    if mu.cols() > 3 {
        return Err(Error::OutOfScope(format!(
            "minimal rank is only decided for at most 3 columns, got {}",
            mu.cols()
        )));
    }
    Ok(())
}

/// Exact minimal rank of a matrix with at most 3 columns.
pub fn mrk_3col(mu: &IntervalMatrix) -> Result<usize> {
    Ok(min_rank_3col(mu, &MinRankOptions::default())?.value)
}

/// Minimal rank with a witness and a trace.
pub fn min_rank_3col(mu: &IntervalMatrix, opts: &MinRankOptions) -> Result<MinRankReport> {
    require_three_columns(mu)?;
    let mut report = MinRankReport {
        value: 0,
        route: MinRankRoute::AllContainZero,
        witness: PointMatrix::zeros(mu.rows(), mu.cols()),
        split_count: 0,
        cases_examined: 0,
        rank_two: None,
    };
    if mrk_is_zero(mu) {
        return Ok(report);
    }
    if let Some(w) = rank_one_witness(mu) {
        report.value = 1;
        report.route = MinRankRoute::RankOne;
        report.witness = w;
        return Ok(report);
    }

    report.value = 2;
    let reduced = reduce(mu);
    let red = &reduced.matrix;
    if red.rows().min(red.cols()) <= 2 {
        report.route = MinRankRoute::Narrow;
        report.witness = reduced.embed(&red.midpoints());
        return Ok(report);
    }

    let mut cases = sign_split_cases_in(red, SplitScope::FirstColumn);
    report.split_count = cases.split_count();
    if let Some(cap) = opts.split_cap {
        cases = cases.capped(cap)?;
    }
    for case in cases {
        let case = normalize_first_column(case)?;
        report.cases_examined += 1;
        if let Some(found) = mrk_le_2(&case.matrix)? {
            report.route = MinRankRoute::SpanCase;
            report.witness = reduced.embed(&case.unflip(&found.matrix));
            report.rank_two = Some(found);
            return Ok(report);
        }
    }
    report.value = 3;
    report.route = MinRankRoute::NoSpanCase;
    report.witness = mu.midpoints();
    Ok(report)
}

/// The set of attained ranks, `min..=max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankRange {
    pub min: usize,
    pub max: usize,
}

impl RankRange {
    pub fn contains(&self, r: usize) -> bool {
        (self.min..=self.max).contains(&r)
    }
}

/// Rank range of a matrix with at most 3 columns.
pub fn rk_range(mu: &IntervalMatrix) -> Result<RankRange> {
    Ok(RankRange {
        min: mrk_3col(mu)?,
        max: max_rank(mu),
    })
}

/// Members of minimal and maximal rank.
pub fn rank_range_witnesses(mu: &IntervalMatrix, opts: &MinRankOptions) -> Result<(PointMatrix, PointMatrix)> {
    Ok((min_rank_3col(mu, opts)?.witness, max_rank_witness(mu)))
}
