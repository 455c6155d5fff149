//! Constructors for the named examples: spheres, Moore spaces, tori,
//! wedge-free building blocks, and Cuntz-Krieger algebras from 0/1
//! matrices. Spaces enter through reduced K-theory (the algebra of
//! functions vanishing at a basepoint).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::fgab::FgAbGroup;
use crate::intlin::{self, IntMatrix};
use crate::kkobj::{self, GradedGroup, Parity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuilderError {
    #[error("Moore space parameter must be >= 2, got {0}")]
    MooreParameter(BigInt),
    #[error("Cuntz-Krieger matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Cuntz-Krieger matrix entries must be 0 or 1, found {value} at ({row}, {col})")]
    NotZeroOne {
        row: usize,
        col: usize,
        value: BigInt,
    },
    #[error("Cuntz-Krieger matrix has a zero row at index {0}")]
    ZeroRow(usize),
    #[error("Cuntz-Krieger matrix has a zero column at index {0}")]
    ZeroColumn(usize),
}

/// Reduced K-theory of the n-sphere: `(Z, 0)` in even dimensions,
/// `(0, Z)` in odd ones.
pub fn sphere(n: u32) -> GradedGroup {
    if n % 2 == 0 {
        GradedGroup::new(FgAbGroup::free(1), FgAbGroup::trivial())
    } else {
        GradedGroup::new(FgAbGroup::trivial(), FgAbGroup::free(1))
    }
}

/// Reduced K-theory of the mod-p Moore space: `(Z/p, 0)`.
pub fn moore(p: &BigInt) -> Result<GradedGroup, BuilderError> {
    if *p < BigInt::from(2) {
        return Err(BuilderError::MooreParameter(p.clone()));
    }
    Ok(GradedGroup::new(
        FgAbGroup::cyclic(p.clone()),
        FgAbGroup::trivial(),
    ))
}

/// K-theory of the n-torus: `(Z^(2^(n-1)), Z^(2^(n-1)))` for `n >= 1`,
/// the point `(Z, 0)` for `n = 0`. The ranks are the exterior-algebra
/// binomial sums split by parity.
pub fn torus(n: u32) -> GradedGroup {
    if n == 0 {
        return GradedGroup::new(FgAbGroup::free(1), FgAbGroup::trivial());
    }
    let rank = 1usize
        .checked_shl(n - 1)
        .expect("torus rank exceeds addressable size");
    GradedGroup::new(FgAbGroup::free(rank), FgAbGroup::free(rank))
}

fn validate_ck(a: &IntMatrix) -> Result<(), BuilderError> {
    if a.rows() != a.cols() {
        return Err(BuilderError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = a.at(i, j);
            if !e.is_zero() && !e.is_one() {
                return Err(BuilderError::NotZeroOne {
                    row: i,
                    col: j,
                    value: e.clone(),
                });
            }
        }
    }
    for i in 0..a.rows() {
        if (0..a.cols()).all(|j| a.at(i, j).is_zero()) {
            return Err(BuilderError::ZeroRow(i));
        }
    }
    for j in 0..a.cols() {
        if (0..a.rows()).all(|i| a.at(i, j).is_zero()) {
            return Err(BuilderError::ZeroColumn(j));
        }
    }
    Ok(())
}

/// K-theory of the Cuntz-Krieger algebra of a 0/1 matrix:
/// `K0 = coker(I - A^t)` and `K1 = ker(I - A^t)` (a free group).
pub fn cuntz_krieger(a: &IntMatrix) -> Result<GradedGroup, BuilderError> {
    validate_ck(a)?;
    let n = a.rows();
    let b = IntMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { BigInt::one() } else { BigInt::zero() };
        delta - a.at(j, i)
    });
    let k0 = intlin::cokernel(&b);
    let k1 = FgAbGroup::free(b.cols() - intlin::rank(&b));
    Ok(GradedGroup::new(k0, k1))
}

/// Checks that the transposed matrix realizes the odd-parity dual:
/// `K(O_{A^t})` against `dual(K(O_A), Odd)`. True for every valid input;
/// at this level the content is the transpose-invariance of the Smith
/// normal form.
pub fn ck_duality_check(a: &IntMatrix) -> Result<bool, BuilderError> {
    let direct = cuntz_krieger(a)?;
    let transposed = cuntz_krieger(&a.transpose())?;
    Ok(transposed == kkobj::dual(&direct, Parity::Odd))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixReadError {
    #[error("empty input")]
    Empty,
    #[error("header must be `n` or `rows cols`, got {0:?}")]
    BadHeader(String),
    #[error("line {line}: expected {expected} entries, got {got}")]
    BadRow {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: {token:?} is not an integer")]
    BadEntry { line: usize, token: String },
    #[error("expected {expected} rows, got {got}")]
    MissingRows { expected: usize, got: usize },
}

/// Reads the plain text matrix format: a header line `n` (square) or
/// `rows cols`, then one line per row of space-separated integers.
pub fn read_matrix(text: &str) -> Result<IntMatrix, MatrixReadError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or(MatrixReadError::Empty)?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (rows, cols) = match dims.as_slice() {
        [n] => {
            let n: usize = n
                .parse()
                .map_err(|_| MatrixReadError::BadHeader(header.to_string()))?;
            (n, n)
        }
        [r, c] => {
            let r: usize = r
                .parse()
                .map_err(|_| MatrixReadError::BadHeader(header.to_string()))?;
            let c: usize = c
                .parse()
                .map_err(|_| MatrixReadError::BadHeader(header.to_string()))?;
            (r, c)
        }
        _ => return Err(MatrixReadError::BadHeader(header.to_string())),
    };
    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen = 0usize;
    for (lineno, line) in lines.by_ref().take(rows) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(MatrixReadError::BadRow {
                line: lineno + 1,
                expected: cols,
                got: tokens.len(),
            });
        }
        for t in tokens {
            let v: BigInt = t.parse().map_err(|_| MatrixReadError::BadEntry {
                line: lineno + 1,
                token: t.to_string(),
            })?;
            entries.push(v);
        }
        seen += 1;
    }
    if seen != rows {
        return Err(MatrixReadError::MissingRows {
            expected: rows,
            got: seen,
        });
    }
    Ok(IntMatrix::new(rows, cols, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kkobj::suspend;

    #[test]
    fn sphere_conventions() {
        assert_eq!(sphere(0), GradedGroup::unit());
        assert_eq!(
            sphere(1),
            GradedGroup::new(FgAbGroup::trivial(), FgAbGroup::free(1))
        );
        assert_eq!(sphere(2), GradedGroup::unit());
        // periodicity: suspension of the (n+1)-sphere
        for n in 0..6 {
            assert_eq!(sphere(n), suspend(&sphere(n + 1)));
        }
    }

    #[test]
    fn moore_examples() {
        assert_eq!(
            moore(&BigInt::from(2)).unwrap(),
            GradedGroup::new(FgAbGroup::cyclic(2), FgAbGroup::trivial())
        );
        assert_eq!(
            moore(&BigInt::from(6)).unwrap(),
            GradedGroup::new(FgAbGroup::cyclic(6), FgAbGroup::trivial())
        );
        assert!(moore(&BigInt::from(1)).is_err());
        // Künneth square of the Moore object
        let m = moore(&BigInt::from(7)).unwrap();
        assert_eq!(
            kkobj::kunneth(&m, &m),
            GradedGroup::new(FgAbGroup::cyclic(7), FgAbGroup::cyclic(7))
        );
    }

    #[test]
    fn moore_duality_round_trip() {
        let m = moore(&BigInt::from(5)).unwrap();
        assert_eq!(suspend(&kkobj::dual(&m, Parity::Even)), m);
    }

    #[test]
    fn torus_ranks_match_binomial_sums() {
        fn choose(n: u32, k: u32) -> u64 {
            (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
        }
        for n in 1..=8u32 {
            let even: u64 = (0..=n).filter(|k| k % 2 == 0).map(|k| choose(n, k)).sum();
            let odd: u64 = (0..=n).filter(|k| k % 2 == 1).map(|k| choose(n, k)).sum();
            let t = torus(n);
            assert_eq!(t.k0().rank() as u64, even, "n = {}", n);
            assert_eq!(t.k1().rank() as u64, odd, "n = {}", n);
        }
        assert_eq!(torus(0), GradedGroup::unit());
        assert_eq!(torus(1).k0().rank(), 1);
        assert_eq!(torus(2).k0().rank(), 2);
    }

    #[test]
    fn cuntz_krieger_small_shifts() {
        let full2 = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(cuntz_krieger(&full2).unwrap(), GradedGroup::zero());
        let fib = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(cuntz_krieger(&fib).unwrap(), GradedGroup::zero());
        let single = IntMatrix::from_rows(&[vec![1]]);
        assert_eq!(
            cuntz_krieger(&single).unwrap(),
            GradedGroup::new(FgAbGroup::free(1), FgAbGroup::free(1))
        );
    }

    #[test]
    fn cuntz_krieger_full_shift_on_three() {
        // the 3x3 all-ones matrix gives K0 = Z/2, K1 = 0
        let a = IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
        assert_eq!(
            cuntz_krieger(&a).unwrap(),
            GradedGroup::new(FgAbGroup::cyclic(2), FgAbGroup::trivial())
        );
    }

    #[test]
    fn cuntz_krieger_rejects_bad_input() {
        assert!(matches!(
            cuntz_krieger(&IntMatrix::from_rows(&[vec![1, 1]])),
            Err(BuilderError::NotSquare { .. })
        ));
        assert!(matches!(
            cuntz_krieger(&IntMatrix::from_rows(&[vec![2]])),
            Err(BuilderError::NotZeroOne { .. })
        ));
        assert!(matches!(
            cuntz_krieger(&IntMatrix::from_rows(&[vec![0, 0], vec![1, 1]])),
            Err(BuilderError::ZeroRow(0))
        ));
        assert!(matches!(
            cuntz_krieger(&IntMatrix::from_rows(&[vec![1, 0], vec![1, 0]])),
            Err(BuilderError::ZeroColumn(1))
        ));
    }

    #[test]
    fn duality_check_examples() {
        let cases = [
            IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]),
            IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]),
            IntMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]),
        ];
        for a in &cases {
            assert!(ck_duality_check(a).unwrap());
        }
    }

    #[test]
    fn duality_check_exhaustive_small() {
        // all 0/1 matrices without zero rows/columns, sizes 2 and 3
        for n in 2..=3usize {
            let rows_max = 1usize << n;
            let mut counts = 0;
            let mut stack = vec![Vec::<usize>::new()];
            while let Some(rows) = stack.pop() {
                if rows.len() == n {
                    let has_zero_col = (0..n).any(|j| rows.iter().all(|r| r & (1 << j) == 0));
                    if has_zero_col {
                        continue;
                    }
                    let a = IntMatrix::from_fn(n, n, |i, j| {
                        BigInt::from(((rows[i] >> j) & 1) as u32)
                    });
                    assert!(ck_duality_check(&a).unwrap(), "failed for {:?}", a);
                    counts += 1;
                    continue;
                }
                for r in 1..rows_max {
                    let mut next = rows.clone();
                    next.push(r);
                    stack.push(next);
                }
            }
            assert!(counts > 0);
        }
    }

    #[test]
    fn read_matrix_formats() {
        let square = read_matrix("2\n1 1\n1 0\n").unwrap();
        assert_eq!(square, IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]));
        let rect = read_matrix("2 3\n1 2 3\n4 -5 6\n").unwrap();
        assert_eq!(rect.rows(), 2);
        assert_eq!(rect.cols(), 3);
        assert_eq!(rect.at(1, 1), &BigInt::from(-5));
        assert!(read_matrix("").is_err());
        assert!(read_matrix("2\n1 1\n").is_err());
        assert!(read_matrix("2\n1 x\n1 0\n").is_err());
    }
}
