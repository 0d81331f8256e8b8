//! Rank questions for interval matrices over exact rationals.
//!
//! An interval matrix stands for every real matrix whose entries lie in the
//! given intervals. This crate decides the smallest and largest rank among
//! those members:
//!
//! * whether the minimal rank is 0 or 1, for any shape ([`rank_one`]);
//! * the maximal rank, for any shape ([`max_rank`]);
//! * the minimal rank for matrices with at most three columns
//!   ([`min_rank3`]), and with it the full rank range.
//!
//! ```
//! use interval_rank::{IntervalMatrix, contains_rank_one, max_rank, mrk_3col};
//!
//! let mu = IntervalMatrix::from_int_pairs(&[
//!     &[(1, 2), (0, 1), (3, 3)],
//!     &[(2, 4), (-1, 1), (6, 6)],
//! ]);
//! assert!(contains_rank_one(&mu));
//! assert_eq!(max_rank(&mu), 2);
//! assert_eq!(mrk_3col(&mu).unwrap(), 1);
//! ```

pub mod combinatorics;
pub mod error;
pub mod interval;
pub mod matrix;
pub mod matrix_file;
pub mod max_rank;
pub mod min_rank3;
pub mod oracle;
pub mod preprocess;
pub mod rank_one;
pub mod rational;
pub mod two_var;

pub use error::{Error, Result};
pub use interval::{interval_add, interval_mul, scalar_mul, Interval, SignClass};
pub use matrix::{determinant, exact_rank, IntervalMatrix, PointMatrix};
pub use matrix_file::{parse_matrix_json, to_matrix_json, MatrixFile};
pub use max_rank::{max_rank, max_rank_witness, rohn_full_rank_square, square_max_rank_is_full};
pub use min_rank3::{mrk_3col, rk_range, RankRange};
pub use preprocess::reduce;
pub use rank_one::{contains_rank_one, mrk_is_zero, rank_one_witness};
pub use rational::{parse_rational, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/preprocessing.md")]
    mod preprocessing {}
    #[doc = include_str!("../../../book/src/rank-one.md")]
    mod rank_one {}
    #[doc = include_str!("../../../book/src/maximal-rank.md")]
    mod maximal_rank {}
    #[doc = include_str!("../../../book/src/three-columns.md")]
    mod three_columns {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
}
