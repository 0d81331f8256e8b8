mod common;

use std::collections::BTreeSet;

use common::{int, rat};
use interval_rank::combinatorics::{permutation_sign, permutations};
use interval_rank::max_rank::{detc, max_rank_witness, rohn_full_rank_square, square_max_rank_is_full};
use interval_rank::min_rank3::{min_rank_3col, rank_two_system, MinRankOptions, SignPattern, SPAN_PAIRS};
use interval_rank::oracle::{fm_two_var_feasible, rank_path, sample_rank_bounds, vertex_max_rank};
use interval_rank::preprocess::{is_reduced, reduce};
use interval_rank::rank_one::{
    intersection_condition, contains_rank_one, exact_h_bound, product_condition_exhaustive, rank_one_nonneg_reduced,
    rank_one_witness,
};
use interval_rank::two_var::{gamma_feasible, two_var_feasible, LowerRow, TwoVarSystem, UpperRow};
use interval_rank::{
    interval_add, interval_mul, max_rank, mrk_3col, parse_matrix_json, scalar_mul, to_matrix_json, Interval,
    IntervalMatrix, Rational,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn interval(lo: i64, width: i64) -> Interval {
    Interval::new(int(lo), int(lo + width)).unwrap()
}

fn entry() -> impl Strategy<Value = Interval> {
    prop_oneof![
        (-3i64..=3).prop_map(|c| interval(c, 0)),
        (-3i64..=3, 1i64..=3).prop_map(|(lo, w)| interval(lo, w)),
    ]
}

fn matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = IntervalMatrix> {
    (rows, cols).prop_flat_map(|(p, q)| {
        prop::collection::vec(entry(), p * q).prop_map(move |e| IntervalMatrix::new(p, q, e).unwrap())
    })
}

fn nonneg_entry() -> impl Strategy<Value = Interval> {
    (0i64..=6, 0i64..=6).prop_map(|(a, b)| Interval::new(rat(a.min(b), 2), rat(a.max(b), 2)).unwrap())
}

fn nonneg_reduced(max: usize) -> impl Strategy<Value = IntervalMatrix> {
    (2..=max, 2..=max)
        .prop_flat_map(|(p, q)| {
            prop::collection::vec(nonneg_entry(), p * q).prop_map(move |e| IntervalMatrix::new(p, q, e).unwrap())
        })
        .prop_filter("reduced", is_reduced)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn ordered_interval() -> impl Strategy<Value = Interval> {
    (rational(), rational()).prop_map(|(a, b)| Interval::new(a.clone().min(b.clone()), a.max(b)).unwrap())
}

fn system() -> impl Strategy<Value = TwoVarSystem> {
    let lower = (rational(), rational(), rational()).prop_map(|(a, b, z)| LowerRow { a, b, z });
    let upper = (rational(), rational(), rational()).prop_map(|(c, d, u)| UpperRow { c, d, u });
    (prop::collection::vec(lower, 0..=3), prop::collection::vec(upper, 0..=3))
        .prop_map(|(l, u)| TwoVarSystem::new(l, u))
}

/// Rank-one members `x c^T` with positive `x`, `c` inside a nonnegative box matrix.
fn positive_rank_one(m: &[Vec<Rational>], big: &[Vec<Rational>]) -> bool {
    let (p, q) = (m.len(), m[0].len());
    let n = p + q;
    let mut arcs = Vec::new();
    for i in 0..p {
        for j in 0..q {
            if big[i][j] <= Rational::zero() {
                return false;
            }
            arcs.push((p + j, i, big[i][j].clone()));
            if m[i][j] > Rational::zero() {
                arcs.push((i, p + j, m[i][j].recip()));
            }
        }
    }
    let mut dist = vec![Rational::one(); n];
    for _ in 0..=n {
        let mut changed = false;
        for (a, b, w) in &arcs {
            let c = &dist[*a] * w;
            if c < dist[*b] {
                dist[*b] = c;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

/// Rank-one containment by brute force over supports and sign patterns.
fn rank_one_brute_force(mu: &IntervalMatrix) -> bool {
    let (p, q) = (mu.rows(), mu.cols());
    for rows in 1u32..1 << p {
        for cols in 1u32..1 << q {
            let inside = |i: usize, j: usize| rows >> i & 1 == 1 && cols >> j & 1 == 1;
            if (0..p).any(|i| (0..q).any(|j| !inside(i, j) && !mu.get(i, j).contains_zero())) {
                continue;
            }
            let r: Vec<usize> = (0..p).filter(|i| rows >> i & 1 == 1).collect();
            let c: Vec<usize> = (0..q).filter(|j| cols >> j & 1 == 1).collect();
            for signs in 0u32..1 << (r.len() + c.len() - 1) {
                let sign = |k: usize| if signs >> k & 1 == 1 { -Rational::one() } else { Rational::one() };
                let mut lo = Vec::new();
                let mut hi = Vec::new();
                for (a, &i) in r.iter().enumerate() {
                    let mut lrow = Vec::new();
                    let mut hrow = Vec::new();
                    for (b, &j) in c.iter().enumerate() {
                        let col_sign = if b == 0 { Rational::one() } else { sign(r.len() + b - 1) };
                        let e = mu.get(i, j).scale(&(sign(a) * col_sign));
                        lrow.push(std::cmp::max(e.lo().clone(), Rational::zero()));
                        hrow.push(e.hi().clone());
                    }
                    lo.push(lrow);
                    hi.push(hrow);
                }
                if positive_rank_one(&lo, &hi) {
                    return true;
                }
            }
        }
    }
    false
}

fn detc_by_permutations(mu: &IntervalMatrix) -> Rational {
    let n = mu.rows();
    let mut total = Rational::zero();
    for sigma in permutations(n) {
        if (0..n).all(|i| mu.get(i, sigma[i]).is_constant()) {
            let product = (0..n).fold(Rational::one(), |acc, i| acc * mu.get(i, sigma[i]).lo());
            total += product * int(permutation_sign(&sigma) as i64);
        }
    }
    total
}

fn widen(mu: &IntervalMatrix, i: usize, j: usize) -> IntervalMatrix {
    let mut wide = mu.clone();
    let e = mu.get(i, j);
    wide.set(i, j, Interval::new(e.lo() - int(1), e.hi() + int(1)).unwrap());
    wide
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sums_products_and_scalings_contain_pointwise_results(
        a in ordered_interval(), b in ordered_interval(), s in 0i64..=8, t in 0i64..=8, k in rational()
    ) {
        let x = a.lo() + a.width() * rat(s, 8);
        let y = b.lo() + b.width() * rat(t, 8);
        prop_assert!(interval_add(&a, &b).contains(&(&x + &y)));
        prop_assert!(interval_mul(&a, &b).contains(&(&x * &y)));
        prop_assert!(scalar_mul(&k, &a).contains(&(&k * &x)));
        prop_assert!((-&a).contains(&-x));
    }

    #[test]
    fn product_endpoints_are_attained(a in ordered_interval(), b in ordered_interval()) {
        let ends = [
            a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi(),
        ];
        let product = interval_mul(&a, &b);
        prop_assert!(ends.contains(product.lo()) && ends.contains(product.hi()));
    }

    #[test]
    fn cycle_restricted_products_match_literal_enumeration(mu in nonneg_reduced(3)) {
        let h = exact_h_bound(mu.rows(), mu.cols());
        let fast = rank_one_nonneg_reduced(&mu, h).unwrap();
        let literal = product_condition_exhaustive(&mu, h).unwrap().is_none();
        prop_assert_eq!(fast, literal);
    }

    #[test]
    fn capped_tuple_size_never_hides_a_violation(mu in nonneg_reduced(4), h in 2usize..=3) {
        if !rank_one_nonneg_reduced(&mu, h).unwrap() {
            prop_assert!(!rank_one_nonneg_reduced(&mu, exact_h_bound(mu.rows(), mu.cols())).unwrap());
        }
    }

    #[test]
    fn rank_one_matches_brute_force(mu in matrix(1..=3, 1..=3)) {
        let expected = rank_one_brute_force(&mu);
        prop_assert_eq!(contains_rank_one(&mu), expected);
        match rank_one_witness(&mu) {
            Some(w) => {
                prop_assert!(mu.contains(&w).unwrap());
                prop_assert_eq!(w.rank(), 1);
            }
            None => prop_assert!(!expected),
        }
    }

    #[test]
    fn intersection_condition_is_necessary(mu in matrix(1..=2, 1..=3)) {
        if contains_rank_one(&mu) {
            prop_assert!(intersection_condition(&mu, 3));
        }
    }

    #[test]
    fn rank_questions_are_transpose_invariant(mu in matrix(1..=3, 1..=3)) {
        let t = mu.transpose();
        prop_assert_eq!(contains_rank_one(&mu), contains_rank_one(&t));
        prop_assert_eq!(max_rank(&mu), max_rank(&t));
        prop_assert_eq!(mrk_3col(&mu).unwrap(), mrk_3col(&t).unwrap());
    }

    #[test]
    fn reduction_output_is_reduced_and_embeds(mu in matrix(1..=4, 1..=4)) {
        let r = reduce(&mu);
        prop_assert!(r.is_empty() || is_reduced(&r.matrix));
        prop_assert!(mu.contains(&r.embed(&r.matrix.midpoints())).unwrap());
    }

    #[test]
    fn constant_determinant_matches_permutation_sum(mu in matrix(1..=4, 0..=0).prop_flat_map(|m| {
        let n = m.rows();
        prop::collection::vec(entry(), n * n).prop_map(move |e| IntervalMatrix::new(n, n, e).unwrap())
    })) {
        prop_assert_eq!(detc(&mu).unwrap(), detc_by_permutations(&mu));
    }

    #[test]
    fn max_rank_matches_vertices(mu in matrix(1..=4, 1..=4)) {
        let r = max_rank(&mu);
        prop_assert_eq!(r, vertex_max_rank(&mu, 20).unwrap());
        let w = max_rank_witness(&mu);
        prop_assert!(mu.contains(&w).unwrap());
        prop_assert_eq!(w.rank(), r);
    }

    #[test]
    fn widening_never_lowers_max_rank(mu in matrix(1..=3, 1..=3), i in 0usize..3, j in 0usize..3) {
        let (i, j) = (i % mu.rows(), j % mu.cols());
        let wide = widen(&mu, i, j);
        prop_assert!(vertex_max_rank(&wide, 20).unwrap() >= vertex_max_rank(&mu, 20).unwrap());
        prop_assert!(max_rank(&wide) >= max_rank(&mu));
    }

    #[test]
    fn regular_squares_have_full_max_rank(mu in matrix(1..=3, 0..=0).prop_flat_map(|m| {
        let n = m.rows();
        prop::collection::vec(entry(), n * n).prop_map(move |e| IntervalMatrix::new(n, n, e).unwrap())
    })) {
        if rohn_full_rank_square(&mu, 8).unwrap() {
            prop_assert!(square_max_rank_is_full(&mu).unwrap());
            prop_assert_eq!(mrk_3col(&mu).unwrap(), mu.rows());
        }
    }

    #[test]
    fn vertex_solver_matches_elimination(sys in system()) {
        let found = two_var_feasible(&sys);
        prop_assert_eq!(found.is_some(), fm_two_var_feasible(&sys));
        if let Some((l, g)) = found {
            prop_assert!(l >= Rational::zero() && g >= Rational::zero());
            prop_assert!(sys.satisfied_by(&l, &g));
        }
    }

    #[test]
    fn span_systems_match_elimination(mu in matrix(1..=4, 3..=3)) {
        for (v, w) in SPAN_PAIRS {
            for pattern in SignPattern::ALL {
                let sys = rank_two_system(&mu, v, w, pattern);
                prop_assert_eq!(two_var_feasible(&sys).is_some(), fm_two_var_feasible(&sys));
            }
        }
    }

    #[test]
    fn minimal_rank_is_sound(mu in matrix(1..=4, 1..=3), seed in 0u64..1000) {
        let report = min_rank_3col(&mu, &MinRankOptions::default()).unwrap();
        prop_assert!(mu.contains(&report.witness).unwrap());
        prop_assert_eq!(report.witness.rank(), report.value);
        let bounds = sample_rank_bounds(&mu, 20, seed);
        prop_assert!(bounds.min_rank >= report.value);
        prop_assert!(bounds.max_rank <= max_rank(&mu));
    }

    #[test]
    fn rank_paths_move_one_step_at_a_time(mu in matrix(1..=4, 1..=4), seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = interval_rank::oracle::random_member(&mu, &mut rng);
        let b = interval_rank::oracle::random_member(&mu, &mut rng);
        let path = rank_path(&mu, &a, &b).unwrap();
        prop_assert!(path.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1));
        prop_assert_eq!(path[0], a.rank());
        prop_assert_eq!(*path.last().unwrap(), b.rank());
    }

    #[test]
    fn sampling_is_reproducible(mu in matrix(1..=3, 1..=3), seed in 0u64..1000) {
        prop_assert_eq!(sample_rank_bounds(&mu, 15, seed), sample_rank_bounds(&mu, 15, seed));
    }

    #[test]
    fn matrix_files_round_trip(mu in matrix(1..=4, 1..=4)) {
        let text = to_matrix_json(&mu);
        let back = parse_matrix_json(&text).unwrap();
        prop_assert_eq!(&back, &mu);
        prop_assert_eq!(to_matrix_json(&back), text);
    }
}

#[test]
fn gamma_condition_matches_interval_intersection() {
    let values: Vec<i64> = (-2..=2).collect();
    for k in 1..=3usize {
        let total = values.len().pow(2 * k as u32);
        for code in 0..total {
            let mut c = code;
            let mut digit = || {
                let d = values[c % values.len()];
                c /= values.len();
                d
            };
            let xs: Vec<Rational> = (0..k).map(|_| int(digit())).collect();
            let ys: Vec<Rational> = (0..k).map(|_| int(digit())).collect();
            // gamma in [low, high] from each constraint, starting at [0, inf)
            let mut low = Rational::zero();
            let mut high: Option<Rational> = None;
            let mut ok = true;
            for (x, y) in xs.iter().zip(&ys) {
                if x.is_zero() {
                    ok &= *y <= Rational::zero();
                } else if *x > Rational::zero() {
                    low = low.max(y / x);
                } else {
                    let bound = y / x;
                    high = Some(high.map_or(bound.clone(), |h: Rational| h.min(bound)));
                }
            }
            let expected = ok && high.is_none_or(|h| low <= h);
            assert_eq!(gamma_feasible(&xs, &ys).unwrap(), expected, "xs {xs:?} ys {ys:?}");
        }
    }
}

#[test]
fn exhaustive_two_by_two_boxes_agree_with_brute_force() {
    let choices = [interval(0, 1), interval(-1, 1), interval(1, 1), interval(-2, 1), interval(0, 0)];
    let mut seen = BTreeSet::new();
    for code in 0..choices.len().pow(4) {
        let mut c = code;
        let entries: Vec<Interval> = (0..4)
            .map(|_| {
                let e = choices[c % choices.len()].clone();
                c /= choices.len();
                e
            })
            .collect();
        let mu = IntervalMatrix::new(2, 2, entries).unwrap();
        let answer = contains_rank_one(&mu);
        assert_eq!(answer, rank_one_brute_force(&mu), "{mu}");
        seen.insert(answer);
    }
    assert_eq!(seen.len(), 2);
}
