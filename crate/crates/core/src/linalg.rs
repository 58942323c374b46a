//! Exact Gaussian elimination over the rationals.

use std::collections::HashMap;
use std::hash::Hash;

use num_traits::Zero;

use crate::kernel::{LinComb, Scalar};

/// Row-reduces `rows` in place and returns the rank.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Dimension of the span of a family of linear combinations.
pub fn span_rank<T: Clone + Eq + Hash + Ord>(family: &[LinComb<T>]) -> usize {
    let mut index: HashMap<T, usize> = HashMap::new();
    for c in family {
        for (t, _) in c.iter() {
            let n = index.len();
            index.entry(t.clone()).or_insert(n);
        }
    }
    let rows = family
        .iter()
        .map(|c| {
            let mut row = vec![Scalar::zero(); index.len()];
            for (t, s) in c.iter() {
                row[index[t]] = s.clone();
            }
            row
        })
        .collect();
    rank(rows)
}

/// Some solution of `a·x = b`, if the system is consistent.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for j in c..=n {
            m[r][j] = &m[r][j] / &pivot;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| scalar(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(vec![v(&[1, 2]), v(&[2, 4]), v(&[0, 1])]), 2);
        assert_eq!(rank(vec![v(&[0, 0])]), 0);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn solves_consistent_systems() {
        let a = vec![v(&[1, 1]), v(&[1, -1])];
        assert_eq!(solve(&a, &v(&[3, 1])).unwrap(), v(&[2, 1]));
        assert!(solve(&[v(&[1, 1]), v(&[2, 2])], &v(&[1, 3])).is_none());
    }
}
