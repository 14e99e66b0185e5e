//! Exact Gaussian elimination over the coefficient field, for the small
//! (often overdetermined but consistent) systems that arise when
//! decomposing kernels and projecting onto symmetric polynomials.

use crate::scalar::{QtScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("system is inconsistent (nonzero residual row)")]
    Inconsistent,
    #[error("system is underdetermined (no pivot for column {0})")]
    Underdetermined(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Solves A x = b for the unique exact solution. The system may have more
/// rows than columns; every non-pivot row must reduce to zero.
#[allow(clippy::needless_range_loop)]
pub fn solve_unique<C: QtScalar>(
    mut a: Vec<Vec<C>>,
    mut b: Vec<C>,
) -> Result<Vec<C>, LinalgError> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), nrows);
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(ncols);
    let mut used = vec![false; nrows];
    for col in 0..ncols {
        let Some(p) = (0..nrows).find(|&r| !used[r] && !a[r][col].is_zero()) else {
            return Err(LinalgError::Underdetermined(col));
        };
        used[p] = true;
        pivot_rows.push(p);
        let inv = C::one().try_div(&a[p][col])?;
        for c in col..ncols {
            a[p][c] = a[p][c].mul(&inv);
        }
        b[p] = b[p].mul(&inv);
        for r in 0..nrows {
            if r == p || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..ncols {
                a[r][c] = a[r][c].sub(&factor.mul(&a[p][c]));
            }
            b[r] = b[r].sub(&factor.mul(&b[p]));
        }
    }
    for r in 0..nrows {
        if !used[r] && !b[r].is_zero() {
            return Err(LinalgError::Inconsistent);
        }
    }
    Ok(pivot_rows.iter().map(|&p| b[p].clone()).collect())
}

/// Determinant of a square matrix by elimination with exact division.
#[allow(clippy::needless_range_loop)]
pub fn determinant<C: QtScalar>(mut a: Vec<Vec<C>>) -> Result<C, LinalgError> {
    let n = a.len();
    let mut det = C::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(C::zero());
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        let inv = C::one().try_div(&a[col][col])?;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..n {
                a[r][c] = a[r][c].sub(&factor.mul(&a[col][c]));
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt_field::QTRat;

    fn r(n: i64) -> QTRat {
        QTRat::from_int(n)
    }

    #[test]
    fn solves_overdetermined_consistent() {
        // x = 2, y = 3 with a redundant third row
        let a = vec![
            vec![r(1), r(0)],
            vec![r(0), r(1)],
            vec![r(1), r(1)],
        ];
        let b = vec![r(2), r(3), r(5)];
        assert_eq!(solve_unique(a, b).unwrap(), vec![r(2), r(3)]);
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![r(1)], vec![r(1)]];
        let b = vec![r(1), r(2)];
        assert_eq!(solve_unique(a, b), Err(LinalgError::Inconsistent));
    }

    #[test]
    fn detects_underdetermined() {
        let a = vec![vec![r(1), r(1)]];
        let b = vec![r(1)];
        assert!(matches!(
            solve_unique(a, b),
            Err(LinalgError::Underdetermined(_))
        ));
    }

    #[test]
    fn determinant_with_q_entries() {
        let q = QTRat::monomial(1, 0);
        let a = vec![vec![QTRat::one(), q.clone()], vec![q.clone(), QTRat::one()]];
        let want = QTRat::one().sub(&q.mul(&q));
        assert_eq!(determinant(a).unwrap(), want);
    }
}
