//! Exact Gaussian elimination over Q.

use num_traits::{One, Zero};

use crate::numtheory::Rational;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn row_reduce(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n_cols {
        if row == n_rows {
            break;
        }
        let Some(p) = (row..n_rows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = Rational::one() / &rows[row][col];
        for v in rows[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[row].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solve `sum_j x_j * columns[j] = rhs`. Returns `None` when `rhs` is not in
/// the column span; free variables are set to zero.
pub fn solve(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = columns.len();
    let mut rows: Vec<Vec<Rational>> = (0..rhs.len())
        .map(|i| {
            let mut r: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Some(x)
}

pub fn rank(columns: &[Vec<Rational>]) -> usize {
    let Some(first) = columns.first() else {
        return 0;
    };
    let mut rows: Vec<Vec<Rational>> = (0..first.len())
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    row_reduce(&mut rows).len()
}
