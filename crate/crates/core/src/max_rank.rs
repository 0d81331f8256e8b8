//! Maximal rank.
//!
//! A square interval matrix contains a nonsingular member iff it has a
//! partial generalized diagonal (positions with pairwise distinct rows and
//! columns, possibly empty) made of nonconstant entries whose complementary
//! submatrix has nonzero constant determinant `det^c`: the signed sum over
//! permutations that only use constant entries. The maximal rank of a
//! rectangular matrix is the largest order of a square submatrix with that
//! property.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matrix::{determinant, IntervalMatrix, PointMatrix};
use crate::rational::Rational;

/// Default order limit for [`rohn_full_rank_square`].
pub const DEFAULT_ROHN_CAP: usize = 8;

/// Positions with pairwise distinct rows and pairwise distinct columns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PgDiagonal {
    pub positions: Vec<(usize, usize)>,
}

impl PgDiagonal {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

fn require_square(mu: &IntervalMatrix) -> Result<()> {
    if mu.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: mu.rows(),
            cols: mu.cols(),
        })
    }
}

fn constant_part(mu: &IntervalMatrix) -> PointMatrix {
    mu.map_points(|e| if e.is_constant() { e.lo().clone() } else { Rational::zero() })
}

/// Constant determinant: the determinant with every nonconstant entry
/// replaced by 0. The empty matrix has `det^c = 1`.
pub fn detc(mu: &IntervalMatrix) -> Result<Rational> {
    require_square(mu)?;
    determinant(&constant_part(mu))
}

/// Every partial generalized diagonal of nonconstant entries, the empty one
/// included.
pub fn totally_nonconstant_diagonals(mu: &IntervalMatrix) -> Result<Vec<PgDiagonal>> {
    require_square(mu)?;
    let mut out = Vec::new();
    let mut used = vec![false; mu.cols()];
    let mut current = Vec::new();
    collect_diagonals(mu, 0, &mut used, &mut current, &mut out);
    Ok(out)
}

fn collect_diagonals(
    mu: &IntervalMatrix,
    row: usize,
    used: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<PgDiagonal>,
) {
    if row == mu.rows() {
        out.push(PgDiagonal {
            positions: current.clone(),
        });
        return;
    }
    collect_diagonals(mu, row + 1, used, current, out);
    for col in 0..mu.cols() {
        if !used[col] && !mu.get(row, col).is_constant() {
            used[col] = true;
            current.push((row, col));
            collect_diagonals(mu, row + 1, used, current, out);
            current.pop();
            used[col] = false;
        }
    }
}

/// The submatrix left after deleting the rows and columns of `diag`.
pub fn complementary_matrix(mu: &IntervalMatrix, diag: &PgDiagonal) -> IntervalMatrix {
    let rows: Vec<usize> = (0..mu.rows()).filter(|i| diag.positions.iter().all(|p| p.0 != *i)).collect();
    let cols: Vec<usize> = (0..mu.cols()).filter(|j| diag.positions.iter().all(|p| p.1 != *j)).collect();
    mu.submatrix(&rows, &cols)
}

/// Searches square submatrices of one interval matrix, remembering which
/// constant determinants vanish.
struct FullRankSearch<'a> {
    mu: &'a IntervalMatrix,
    detc_nonzero: HashMap<(Vec<usize>, Vec<usize>), bool>,
}

impl<'a> FullRankSearch<'a> {
    fn new(mu: &'a IntervalMatrix) -> Self {
        FullRankSearch {
            mu,
            detc_nonzero: HashMap::new(),
        }
    }

    fn detc_nonzero(&mut self, rows: Vec<usize>, cols: Vec<usize>) -> bool {
        let mu = self.mu;
        *self.detc_nonzero.entry((rows, cols)).or_insert_with_key(|(r, c)| {
            let sub = constant_part(&mu.submatrix(r, c));
            !determinant(&sub).expect("square by construction").is_zero()
        })
    }

    /// A diagonal certifying that the submatrix on `rows x cols` has a
    /// nonsingular member.
    fn certificate(&mut self, rows: &[usize], cols: &[usize]) -> Option<PgDiagonal> {
        let mut used = vec![false; cols.len()];
        let mut skipped = Vec::new();
        let mut picked = Vec::new();
        self.search(rows, cols, 0, &mut used, &mut skipped, &mut picked)
    }

    fn search(
        &mut self,
        rows: &[usize],
        cols: &[usize],
        k: usize,
        used: &mut [bool],
        skipped: &mut Vec<usize>,
        picked: &mut Vec<(usize, usize)>,
    ) -> Option<PgDiagonal> {
        if k == rows.len() {
            let rest: Vec<usize> = cols.iter().zip(used.iter()).filter(|(_, &u)| !u).map(|(&c, _)| c).collect();
            return self.detc_nonzero(skipped.clone(), rest).then(|| PgDiagonal {
                positions: picked.clone(),
            });
        }
        let row = rows[k];
        for (slot, &col) in cols.iter().enumerate() {
            if !used[slot] && !self.mu.get(row, col).is_constant() {
                used[slot] = true;
                picked.push((row, col));
                let found = self.search(rows, cols, k + 1, used, skipped, picked);
                picked.pop();
                used[slot] = false;
                if found.is_some() {
                    return found;
                }
            }
        }
        skipped.push(row);
        let found = self.search(rows, cols, k + 1, used, skipped, picked);
        skipped.pop();
        found
    }
}

/// True iff the square matrix `mu` contains a nonsingular member.
pub fn square_max_rank_is_full(mu: &IntervalMatrix) -> Result<bool> {
    Ok(full_rank_certificate(mu)?.is_some())
}

/// A totally nonconstant diagonal whose complement has nonzero `det^c`.
pub fn full_rank_certificate(mu: &IntervalMatrix) -> Result<Option<PgDiagonal>> {
    require_square(mu)?;
    let all: Vec<usize> = (0..mu.rows()).collect();
    Ok(FullRankSearch::new(mu).certificate(&all, &all))
}

/// A square submatrix of maximal order that contains a nonsingular member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxRankCertificate {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// In coordinates of the whole matrix.
    pub diagonal: PgDiagonal,
}

/// Maximal rank with the submatrix and diagonal that realize it.
pub fn max_rank_certificate(mu: &IntervalMatrix) -> MaxRankCertificate {
    let mut search = FullRankSearch::new(mu);
    for t in (1..=mu.rows().min(mu.cols())).rev() {
        for rows in crate::combinatorics::combinations(mu.rows(), t) {
            for cols in crate::combinatorics::combinations(mu.cols(), t) {
                if let Some(diagonal) = search.certificate(&rows, &cols) {
                    return MaxRankCertificate {
                        rank: t,
                        rows,
                        cols,
                        diagonal,
                    };
                }
            }
        }
    }
    MaxRankCertificate {
        rank: 0,
        rows: Vec::new(),
        cols: Vec::new(),
        diagonal: PgDiagonal::default(),
    }
}

/// The largest rank of a member of `mu`.
pub fn max_rank(mu: &IntervalMatrix) -> usize {
    max_rank_certificate(mu).rank
}

/// A member of `mu` of maximal rank.
///
/// Inside the certifying submatrix each nonconstant entry is pinned to an
/// endpoint while a nonsingular member remains; elsewhere entries take their
/// midpoints.
pub fn max_rank_witness(mu: &IntervalMatrix) -> PointMatrix {
    let cert = max_rank_certificate(mu);
    let mut out = mu.midpoints();
    let mut sub = mu.submatrix(&cert.rows, &cert.cols);
    for (i, j) in sub.nonconstant_positions() {
        let entry = sub.get(i, j).clone();
        sub.set(i, j, Interval::point(entry.lo().clone()));
        if !square_max_rank_is_full(&sub).expect("square") {
            sub.set(i, j, Interval::point(entry.hi().clone()));
        }
    }
    for (a, &i) in cert.rows.iter().enumerate() {
        for (b, &j) in cert.cols.iter().enumerate() {
            out.set(i, j, sub.get(a, b).lo().clone());
        }
    }
    out
}

/// Midpoint and radius matrices.
pub fn center_radius(mu: &IntervalMatrix) -> (PointMatrix, PointMatrix) {
    let two = Rational::from_integer(2.into());
    (mu.midpoints(), mu.map_points(|e| e.width() / &two))
}

/// True iff every member of the square matrix `mu` is nonsingular.
///
/// Checks `det(C) * det(C - T_x D T_y) > 0` over all sign vectors `x`, `y`,
/// where `C` and `D` are the center and radius and `T_x = diag(x)`. The
/// order is limited to `cap` since the check takes `4^n` determinants.
pub fn rohn_full_rank_square(mu: &IntervalMatrix, cap: usize) -> Result<bool> {
    require_square(mu)?;
    let n = mu.rows();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "order for the sign-vector nonsingularity check",
            limit: cap,
            actual: n,
        });
    }
    let (center, radius) = center_radius(mu);
    let base = determinant(&center)?;
    if base.is_zero() {
        return Ok(false);
    }
    let sign = |bits: usize, k: usize| if bits >> k & 1 == 1 { -Rational::one() } else { Rational::one() };
    for xs in 0..1usize << n {
        for ys in 0..1usize << n {
            let mut shifted = center.clone();
            for i in 0..n {
                for j in 0..n {
                    let d = radius.get(i, j);
                    if !d.is_zero() {
                        let v = center.get(i, j) - sign(xs, i) * d * sign(ys, j);
                        shifted.set(i, j, v);
                    }
                }
            }
            let det = determinant(&shifted)?;
            if !(det.is_positive() == base.is_positive() && !det.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
