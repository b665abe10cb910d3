//! Small exact linear-algebra helpers: integer determinants by
//! fraction-free elimination and ranks over the rationals. Matrices here
//! are tiny (at most ~10×10), so clarity beats asymptotics.

use crate::exact::Rat;
use num::{BigInt, One, Signed, Zero};

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination; every division is exact.
pub fn det_int(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(matrix.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let lead = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &lead;
            let scaled: Vec<Rat> = m[rank][col..cols].iter().map(|v| &factor * v).collect();
            for (cell, delta) in m[r][col..cols].iter_mut().zip(scaled) {
                *cell -= delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of an integer matrix.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let rational: Vec<Vec<Rat>> = rows
        .iter()
        .map(|row| row.iter().map(|c| Rat::from_integer(c.clone())).collect())
        .collect();
    rank_rat(&rational)
}

/// Signed cofactor expansion normal of a (d−1)×d integer matrix of edge
/// vectors: coordinate `c` is `(−1)^c` times the minor omitting column
/// `c`. The result is orthogonal to every row.
pub fn cross_normal(edges: &[Vec<BigInt>]) -> Vec<BigInt> {
    let d = edges.first().map_or(0, |r| r.len());
    debug_assert_eq!(edges.len() + 1, d);
    (0..d)
        .map(|omit| {
            let minor: Vec<Vec<BigInt>> = edges
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != omit)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let det = det_int(&minor);
            if omit % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// True when `value` is negative; tiny convenience for sign fiddling in
/// callers that already hold a `BigInt`.
#[allow(dead_code)]
pub fn is_negative(value: &BigInt) -> bool {
    value.is_negative()
}
