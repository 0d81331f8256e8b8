#![allow(dead_code)]

use interval_rank::{Interval, IntervalMatrix, Rational};
use rand::Rng;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Integer endpoints in `lo..=hi`; each entry is constant with probability `constant`.
pub fn integer_matrix(rng: &mut impl Rng, p: usize, q: usize, lo: i64, hi: i64, constant: f64) -> IntervalMatrix {
    let rows = (0..p)
        .map(|_| {
            (0..q)
                .map(|_| {
                    if rng.gen_bool(constant) {
                        Interval::point(int(rng.gen_range(lo..=hi)))
                    } else {
                        let a = rng.gen_range(lo..hi);
                        let b = rng.gen_range(a + 1..=hi);
                        Interval::new(int(a), int(b)).unwrap()
                    }
                })
                .collect()
        })
        .collect();
    IntervalMatrix::from_rows(rows).unwrap()
}

/// Integer centers in `-3..=3` plus an optional rank-deficient pattern, with
/// radii drawn from `{0, 1/2, 1}`.
pub fn centered_matrix(rng: &mut impl Rng, p: usize, q: usize) -> IntervalMatrix {
    let low_rank = rng.gen_bool(0.5);
    let k = rng.gen_range(1..=2);
    let xs: Vec<Vec<i64>> = (0..k).map(|_| (0..p).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    let cs: Vec<Vec<i64>> = (0..k).map(|_| (0..q).map(|_| rng.gen_range(-2..=2)).collect()).collect();
    let radii = [rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 2), int(1)];
    let rows = (0..p)
        .map(|i| {
            (0..q)
                .map(|j| {
                    let c = if low_rank {
                        int((0..k).map(|t| xs[t][i] * cs[t][j]).sum())
                    } else {
                        int(rng.gen_range(-3..=3))
                    };
                    let r = radii[rng.gen_range(0..radii.len())].clone();
                    Interval::new(&c - &r, &c + &r).unwrap()
                })
                .collect()
        })
        .collect();
    IntervalMatrix::from_rows(rows).unwrap()
}

const GRID: [(i64, i64); 7] = [(0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (5, 2), (3, 1)];

fn grid_value(rng: &mut impl Rng) -> Rational {
    let (n, d) = GRID[rng.gen_range(0..GRID.len())];
    rat(n, d)
}

/// A reduced matrix with nonnegative grid endpoints: either random grid
/// intervals or a fattened outer product.
pub fn nonneg_reduced(rng: &mut impl Rng, p: usize, q: usize) -> IntervalMatrix {
    loop {
        let outer = rng.gen_bool(0.5);
        let xs: Vec<Rational> = (0..p).map(|_| rat(rng.gen_range(1..=4), 2)).collect();
        let cs: Vec<Rational> = (0..q).map(|_| rat(rng.gen_range(1..=4), 2)).collect();
        let rows: Vec<Vec<Interval>> = (0..p)
            .map(|i| {
                (0..q)
                    .map(|j| {
                        if outer {
                            let mut center = &xs[i] * &cs[j];
                            if rng.gen_bool(0.3) {
                                center += rat(rng.gen_range(-1..=1), 2);
                                center = std::cmp::max(center, int(0));
                            }
                            let below = rat(rng.gen_range(0..=2), 4);
                            let above = rat(rng.gen_range(0..=2), 4);
                            let lo = std::cmp::max(&center - below, int(0));
                            Interval::new(lo, center + above).unwrap()
                        } else {
                            let a = grid_value(rng);
                            let b = grid_value(rng);
                            Interval::new(a.clone().min(b.clone()), a.max(b)).unwrap()
                        }
                    })
                    .collect()
            })
            .collect();
        let mu = IntervalMatrix::from_rows(rows).unwrap();
        if interval_rank::preprocess::is_reduced(&mu) {
            return mu;
        }
    }
}
