//! Feasibility of small linear systems in two nonnegative unknowns.
//!
//! A [`TwoVarSystem`] asks for `lambda, gamma >= 0` with
//!
//! ```text
//! lambda * a_i + gamma * b_i <= z_i     (lower rows)
//! lambda * c_j + gamma * d_j >= u_j     (upper rows)
//! ```
//!
//! Everything here is generic over the scalar so the same code runs on
//! exact rationals and, for bulk enumeration over small integers, on `i64`.
//! No division is performed.

use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Scalars the solvers accept.
pub trait Scalar: Num + Signed + Ord + Clone {}
impl<T: Num + Signed + Ord + Clone> Scalar for T {}

/// `lambda * a + gamma * b <= z`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LowerRow<T = Rational> {
    pub a: T,
    pub b: T,
    pub z: T,
}

/// `lambda * c + gamma * d >= u`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpperRow<T = Rational> {
    pub c: T,
    pub d: T,
    pub u: T,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwoVarSystem<T = Rational> {
    pub lower_rows: Vec<LowerRow<T>>,
    pub upper_rows: Vec<UpperRow<T>>,
}

impl<T: Scalar> TwoVarSystem<T> {
    pub fn new(lower_rows: Vec<LowerRow<T>>, upper_rows: Vec<UpperRow<T>>) -> Self {
        TwoVarSystem { lower_rows, upper_rows }
    }

    /// Every constraint, nonnegativity included, as `alpha*lambda + beta*gamma <= rho`.
    fn half_planes(&self) -> Vec<(T, T, T)> {
        let mut out = Vec::with_capacity(self.lower_rows.len() + self.upper_rows.len() + 2);
        out.push((-T::one(), T::zero(), T::zero()));
        out.push((T::zero(), -T::one(), T::zero()));
        for r in &self.lower_rows {
            out.push((r.a.clone(), r.b.clone(), r.z.clone()));
        }
        for r in &self.upper_rows {
            out.push((-r.c.clone(), -r.d.clone(), -r.u.clone()));
        }
        out
    }

    /// True iff `(lambda, gamma)` satisfies every constraint.
    pub fn satisfied_by(&self, lambda: &T, gamma: &T) -> bool {
        self.half_planes()
            .iter()
            .all(|(alpha, beta, rho)| alpha.clone() * lambda.clone() + beta.clone() * gamma.clone() <= *rho)
    }
}

/// A feasible vertex as `[lambda * s, gamma * s, s]` with `s > 0`, if the
/// system is feasible.
///
/// The feasible region lies in the nonnegative quadrant, so it contains no
/// line; when it is nonempty it has a vertex, and vertices are intersections
/// of two constraint boundaries.
pub fn two_var_vertex<T: Scalar>(sys: &TwoVarSystem<T>) -> Option<[T; 3]> {
    let planes = sys.half_planes();
    for (k, (a1, b1, r1)) in planes.iter().enumerate() {
        for (a2, b2, r2) in &planes[k + 1..] {
            let mut det = a1.clone() * b2.clone() - a2.clone() * b1.clone();
            if det.is_zero() {
                continue;
            }
            let mut x = r1.clone() * b2.clone() - r2.clone() * b1.clone();
            let mut y = a1.clone() * r2.clone() - a2.clone() * r1.clone();
            if det.is_negative() {
                det = -det;
                x = -x;
                y = -y;
            }
            let inside = planes
                .iter()
                .all(|(a, b, r)| a.clone() * x.clone() + b.clone() * y.clone() <= r.clone() * det.clone());
            if inside {
                return Some([x, y, det]);
            }
        }
    }
    None
}

/// A feasible point `(lambda, gamma)`, if any.
pub fn two_var_feasible(sys: &TwoVarSystem) -> Option<(Rational, Rational)> {
    two_var_vertex(sys).map(|[x, y, s]| (x / &s, y / s))
}

/// True iff some `gamma >= 0` has `gamma * x_i >= y_i` for every `i`.
pub fn gamma_feasible<T: Scalar>(xs: &[T], ys: &[T]) -> Result<bool> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} values", xs.len()),
            found: format!("{} values", ys.len()),
        });
    }
    let pairs: Vec<(&T, &T)> = xs.iter().zip(ys).collect();
    let sign_ok = pairs.iter().all(|(x, y)| x.is_positive() || !y.is_positive());
    let cross_ok = pairs.iter().filter(|(x, _)| x.is_negative()).all(|(xi, yi)| {
        pairs
            .iter()
            .filter(|(x, _)| x.is_positive())
            .all(|(xj, yj)| (*yj).clone() * (*xi).clone() >= (*yi).clone() * (*xj).clone())
    });
    Ok(sign_ok && cross_ok)
}

/// Closed-form feasibility test from pairwise sign conditions.
///
/// Returns `None` when the test does not apply: some `a` or `c` is
/// negative, or every `a` or every `c` is zero (an empty side counts as all
/// zero). Row counts may differ.
pub fn pairwise_sign_conditions<T: Scalar>(sys: &TwoVarSystem<T>) -> Option<bool> {
    let lower = &sys.lower_rows;
    let upper = &sys.upper_rows;
    if lower.iter().any(|r| r.a.is_negative()) || upper.iter().any(|r| r.c.is_negative()) {
        return None;
    }
    if lower.iter().all(|r| r.a.is_zero()) || upper.iter().all(|r| r.c.is_zero()) {
        return None;
    }

    for li in lower {
        if !li.b.is_negative() && li.z.is_negative() {
            return Some(false);
        }
        for lj in lower {
            if li.b.is_positive() && lj.b.is_negative() && li.b.clone() * lj.z.clone() < lj.b.clone() * li.z.clone() {
                return Some(false);
            }
        }
    }

    // one (slope, offset) pair per (lower, upper) combination:
    // slope = a_i d_r - b_i c_r, offset = a_i u_r - c_r z_i
    let mut pairs = Vec::with_capacity(lower.len() * upper.len());
    for li in lower {
        for ur in upper {
            let slope = li.a.clone() * ur.d.clone() - li.b.clone() * ur.c.clone();
            let offset = li.a.clone() * ur.u.clone() - ur.c.clone() * li.z.clone();
            if !slope.is_positive() && offset.is_positive() {
                return Some(false);
            }
            pairs.push((slope, offset));
        }
    }

    for (s1, o1) in pairs.iter().filter(|(s, _)| s.is_negative()) {
        for (s2, o2) in pairs.iter().filter(|(s, _)| s.is_positive()) {
            if s1.clone() * o2.clone() < s2.clone() * o1.clone() {
                return Some(false);
            }
        }
        for lj in lower.iter().filter(|r| r.b.is_negative()) {
            if lj.z.clone() * s1.clone() > lj.b.clone() * o1.clone() {
                return Some(false);
            }
        }
    }
    for (s, o) in pairs.iter().filter(|(s, _)| s.is_positive()) {
        for lj in lower.iter().filter(|r| r.b.is_positive()) {
            if lj.z.clone() * s.clone() < lj.b.clone() * o.clone() {
                return Some(false);
            }
        }
    }
    Some(true)
}
