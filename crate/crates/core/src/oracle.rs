//! Brute-force referees.
//!
//! None of these share code with the deciders they check beyond the matrix
//! and rational types.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{Interval, SignClass};
use crate::matrix::{IntervalMatrix, PointMatrix};
use crate::preprocess::is_reduced;
use crate::rational::Rational;
use crate::two_var::TwoVarSystem;

/// Default limit on nonconstant entries for [`vertex_max_rank`].
pub const DEFAULT_VERTEX_CAP: usize = 20;

/// Up to this many nonconstant entries, sampling includes every vertex.
pub const SAMPLE_ALL_VERTICES: usize = 12;

fn vertex(mu: &IntervalMatrix, free: &[(usize, usize)], bits: u64) -> PointMatrix {
    let mut a = mu.lower();
    for (k, &(i, j)) in free.iter().enumerate() {
        if bits >> k & 1 == 1 {
            a.set(i, j, mu.get(i, j).hi().clone());
        }
    }
    a
}

/// Largest rank over all endpoint matrices.
pub fn vertex_max_rank(mu: &IntervalMatrix, cap: usize) -> Result<usize> {
    let free = mu.nonconstant_positions();
    if free.len() > cap.min(63) {
        return Err(Error::CapExceeded {
            what: "nonconstant entries for vertex enumeration",
            limit: cap.min(63),
            actual: free.len(),
        });
    }
    let full = mu.rows().min(mu.cols());
    let mut best = 0;
    for bits in 0..1u64 << free.len() {
        best = best.max(vertex(mu, &free, bits).rank());
        if best == full {
            break;
        }
    }
    Ok(best)
}

/// A rank-one member `x c^T` with positive `x`, `c`, found by negative-cycle
/// detection on the constraints `x_i <= M_ij / c_j` and `1 / c_j <= x_i / m_ij`.
///
/// Runs Bellman-Ford on products instead of sums of logarithms: a cycle is
/// negative when its weight product is below 1.
pub fn rank1_feasible_log(mu: &IntervalMatrix) -> Result<Option<PointMatrix>> {
    let (p, q) = (mu.rows(), mu.cols());
    if p == 0 || q == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    if mu.entries().iter().any(|e| !e.classify().contains(SignClass::NONNEG)) {
        return Err(Error::Precondition("entries must be nonnegative".into()));
    }
    if !is_reduced(mu) {
        return Err(Error::Precondition("matrix is not reduced".into()));
    }
    if mu.entries().iter().any(|e| e.hi().is_zero()) {
        return Ok(None);
    }

    // nodes 0..p are rows, p..p+q are columns (holding 1 / c_j)
    let mut arcs: Vec<(usize, usize, Rational)> = Vec::new();
    for (i, j, e) in mu.iter_indexed() {
        arcs.push((p + j, i, e.hi().clone()));
        if !e.lo().is_zero() {
            arcs.push((i, p + j, e.lo().recip()));
        }
    }
    let n = p + q;
    let mut dist = vec![Rational::one(); n];
    for _ in 0..n {
        let mut changed = false;
        for (from, to, w) in &arcs {
            let candidate = &dist[*from] * w;
            if candidate < dist[*to] {
                dist[*to] = candidate;
                changed = true;
            }
        }
        if !changed {
            let mut a = PointMatrix::zeros(p, q);
            for i in 0..p {
                for j in 0..q {
                    a.set(i, j, &dist[i] / &dist[p + j]);
                }
            }
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Rank extremes seen over a sample of members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleBounds {
    /// An upper bound on the minimal rank.
    pub min_rank: usize,
    /// A lower bound on the maximal rank.
    pub max_rank: usize,
    pub samples: usize,
}

/// Ranks of the midpoint matrix, of vertices (all of them when there are at
/// most [`SAMPLE_ALL_VERTICES`] nonconstant entries, otherwise `n` random
/// ones) and of `n` random members on a grid of step `width / 64`.
pub fn sample_rank_bounds(mu: &IntervalMatrix, n: usize, seed: u64) -> SampleBounds {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = mu.nonconstant_positions();
    let mut bounds = SampleBounds {
        min_rank: usize::MAX,
        max_rank: 0,
        samples: 0,
    };
    let mut record = |a: PointMatrix| {
        let r = a.rank();
        bounds.min_rank = bounds.min_rank.min(r);
        bounds.max_rank = bounds.max_rank.max(r);
        bounds.samples += 1;
    };
    record(mu.midpoints());
    if free.len() <= SAMPLE_ALL_VERTICES {
        for bits in 0..1u64 << free.len() {
            record(vertex(mu, &free, bits));
        }
    } else {
        for _ in 0..n {
            let mut a = mu.lower();
            for &(i, j) in &free {
                if rng.gen::<bool>() {
                    a.set(i, j, mu.get(i, j).hi().clone());
                }
            }
            record(a);
        }
    }
    for _ in 0..n {
        record(random_member(mu, &mut rng));
    }
    bounds
}

/// A member with each entry at `lo + k * width / 64`, `k` uniform in `0..=64`.
pub fn random_member(mu: &IntervalMatrix, rng: &mut impl Rng) -> PointMatrix {
    let steps = Rational::from_integer(64.into());
    mu.map_points(|e: &Interval| {
        let k = Rational::from_integer(rng.gen_range(0..=64).into());
        e.lo() + e.width() * k / &steps
    })
}

/// Ranks along the chain from `a` to `b` that swaps one differing entry at a
/// time, in row-major order. Both ends are included.
pub fn rank_path(mu: &IntervalMatrix, a: &PointMatrix, b: &PointMatrix) -> Result<Vec<usize>> {
    mu.check_member(a)?;
    mu.check_member(b)?;
    let mut current = a.clone();
    let mut ranks = vec![current.rank()];
    for i in 0..mu.rows() {
        for j in 0..mu.cols() {
            if current.get(i, j) != b.get(i, j) {
                current.set(i, j, b.get(i, j).clone());
                ranks.push(current.rank());
            }
        }
    }
    Ok(ranks)
}

/// Feasibility by eliminating `lambda`, then intersecting bounds on `gamma`.
pub fn fm_two_var_feasible(sys: &TwoVarSystem) -> bool {
    // alpha * lambda + beta * gamma <= rho
    let mut rows: Vec<(Rational, Rational, Rational)> = vec![
        (-Rational::one(), Rational::zero(), Rational::zero()),
        (Rational::zero(), -Rational::one(), Rational::zero()),
    ];
    rows.extend(sys.lower_rows.iter().map(|r| (r.a.clone(), r.b.clone(), r.z.clone())));
    rows.extend(sys.upper_rows.iter().map(|r| (-&r.c, -&r.d, -&r.u)));

    let mut gamma_rows: Vec<(Rational, Rational)> = Vec::new();
    for (alpha, beta, rho) in &rows {
        if alpha.is_zero() {
            gamma_rows.push((beta.clone(), rho.clone()));
        }
    }
    for (ap, bp, rp) in rows.iter().filter(|r| r.0.is_positive()) {
        for (an, bn, rn) in rows.iter().filter(|r| r.0.is_negative()) {
            let scale_p = -an;
            gamma_rows.push((bp * &scale_p + bn * ap, rp * &scale_p + rn * ap));
        }
    }

    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for (beta, rho) in gamma_rows {
        if beta.is_zero() {
            if rho.is_negative() {
                return false;
            }
        } else if beta.is_positive() {
            let bound = rho / beta;
            upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
        } else {
            let bound = rho / beta;
            lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
        }
    }
    match (lower, upper) {
        (Some(l), Some(u)) => l <= u,
        _ => true,
    }
}
