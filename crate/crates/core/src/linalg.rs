//! Exact dense linear algebra over [`Rational`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

fn check_rect(a: &[Vec<Rational>]) -> Result<usize> {
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged matrix rows".into()));
    }
    Ok(cols)
}

/// Pivot cost: bit length of numerator plus denominator. Smaller entries keep
/// intermediate growth down; any nonzero pivot is exact.
fn pivot_cost(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// Solves `A·x = b` exactly by Gaussian elimination with full pivoting.
pub fn solve_linear_system(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    let cols = check_rect(a)?;
    if cols != n {
        return Err(Error::DimensionMismatch(format!("matrix is {n}x{cols}, not square")));
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, expected {n}",
            b.len()
        )));
    }
    let mut m: Matrix = a.to_vec();
    let mut rhs = b.to_vec();
    // col_perm[j] = original column stored at position j
    let mut col_perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        let mut best: Option<(usize, usize, u64)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, v) in row.iter().enumerate().skip(k) {
                if v.is_zero() {
                    continue;
                }
                let cost = pivot_cost(v);
                if best.is_none_or(|(_, _, c)| cost < c) {
                    best = Some((i, j, cost));
                }
            }
        }
        let (pi, pj, _) = best.ok_or(Error::Singular)?;
        m.swap(k, pi);
        rhs.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            col_perm.swap(k, pj);
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            let (upper, lower) = m.split_at_mut(i);
            let src = &upper[k];
            for (dst, s) in lower[0][k..].iter_mut().zip(&src[k..]) {
                *dst -= &factor * s;
            }
            let delta = &factor * &rhs[k];
            rhs[i] -= delta;
        }
    }

    let mut y = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = rhs[k].clone();
        for j in k + 1..n {
            acc -= &m[k][j] * &y[j];
        }
        y[k] = acc / &m[k][k];
    }
    let mut x = vec![Rational::zero(); n];
    for (j, &orig) in col_perm.iter().enumerate() {
        x[orig] = y[j].clone();
    }
    Ok(x)
}

/// Inverse of a square matrix, column by column.
pub fn inverse(a: &[Vec<Rational>]) -> Result<Matrix> {
    let n = a.len();
    let cols = (0..n)
        .map(|j| {
            let e: Vec<Rational> = (0..n)
                .map(|i| if i == j { Rational::one() } else { Rational::zero() })
                .collect();
            solve_linear_system(a, &e)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
}

/// Row-reduces a copy of `a`; returns the echelon form and pivot columns.
fn row_echelon(a: &[Vec<Rational>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    row_echelon(a).1.len()
}

/// Basis of the right null space `{x : A·x = 0}`, with `cols` columns.
pub fn nullspace(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (m, pivots) = row_echelon(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Determinant of a square matrix.
pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            let (upper, lower) = m.split_at_mut(i);
            for (d, s) in lower[0][k..].iter_mut().zip(&upper[k][k..]) {
                *d -= &f * s;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn identity_solve() {
        let a = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = vec![int(3), frac(-1, 2), int(7)];
        assert_eq!(solve_linear_system(&a, &b).unwrap(), b);
    }

    #[test]
    fn diagonal_solve() {
        let a = mat(&[&[2, 0], &[0, 4]]);
        let x = solve_linear_system(&a, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![frac(1, 2), frac(1, 4)]);
    }

    #[test]
    fn round_trip_five_by_five() {
        let a = mat(&[
            &[3, -1, 4, 1, -5],
            &[9, 2, -6, 5, 3],
            &[5, -8, 9, 7, 9],
            &[-3, 2, 3, 8, -4],
            &[6, 2, -6, 4, 3],
        ]);
        let x = vec![int(1), frac(-2, 3), int(0), frac(5, 7), int(-4)];
        let b: Vec<Rational> = a
            .iter()
            .map(|row| row.iter().zip(&x).map(|(r, v)| r * v).sum())
            .collect();
        assert_eq!(solve_linear_system(&a, &b).unwrap(), x);
    }

    #[test]
    fn singular_is_distinct_from_mismatch() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_linear_system(&a, &[int(1), int(2)]), Err(Error::Singular));
        let rect = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(
            solve_linear_system(&rect, &[int(1), int(2)]),
            Err(Error::DimensionMismatch(_))
        ));
        let sq = mat(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            solve_linear_system(&sq, &[int(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rank_det_nullspace() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(determinant(&a), int(0));
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(r, v)| r * v).sum();
            assert_eq!(dot, int(0));
        }
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&mat(&[&[2, 1], &[1, 1]])), int(1));
        let inv = inverse(&mat(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(inv, mat(&[&[1, -1], &[-1, 2]]));
        assert_eq!(inverse(&mat(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }
}
