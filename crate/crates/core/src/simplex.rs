//! Dense tableau simplex for `max c·y` subject to `A y <= b`, `y >= 0` with
//! `b >= 0`, generic over the scalar type. Bland's rule, so it terminates
//! in exact arithmetic.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    pub primal: Vec<T>,
    /// Optimal multipliers of the constraints (a solution of the dual).
    pub dual: Vec<T>,
}

/// Solves the LP; fails if it is unbounded or needs more than
/// `max_pivots` pivots.
pub fn maximize<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T], max_pivots: u64) -> Result<LpSolution<T>> {
    let rows = a.len();
    let cols = c.len();
    if b.len() != rows || a.iter().any(|row| row.len() != cols) {
        return Err(Error::Contract("LP dimensions do not match".into()));
    }
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::Contract("right-hand side must be nonnegative".into()));
    }
    let width = cols + rows;
    // Row r holds constraint r: [A | I | b]. The objective row holds -c.
    let mut tab: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut line = row.clone();
            line.extend((0..rows).map(|k| if k == r { T::one() } else { T::zero() }));
            line.push(b[r].clone());
            line
        })
        .collect();
    let mut obj: Vec<T> = c.iter().map(|x| -x.clone()).collect();
    obj.extend((0..=rows).map(|_| T::zero()));
    let mut basis: Vec<usize> = (cols..width).collect();
    let tol = T::tolerance();

    let mut pivots = 0u64;
    loop {
        let Some(enter) = (0..width).find(|&j| obj[j] < -tol.clone()) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for (r, line) in tab.iter().enumerate() {
            if line[enter] > tol {
                let ratio = line[width].clone() / line[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((best, q)) => ratio < *q || (ratio == *q && basis[r] < basis[*best]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Error::Contract("LP is unbounded".into()));
        };
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::SearchAborted {
                nodes: pivots,
                cap: max_pivots,
            });
        }
        let p = tab[pr][enter].clone();
        for x in tab[pr].iter_mut() {
            *x = x.clone() / p.clone();
        }
        let pivot_row = tab[pr].clone();
        for (r, line) in tab.iter_mut().enumerate() {
            if r != pr && !line[enter].is_zero() {
                let f = line[enter].clone();
                for (x, y) in line.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let f = obj[enter].clone();
        for (x, y) in obj.iter_mut().zip(&pivot_row) {
            *x = x.clone() - f.clone() * y.clone();
        }
        basis[pr] = enter;
    }

    let mut primal = vec![T::zero(); cols];
    for (r, &var) in basis.iter().enumerate() {
        if var < cols {
            primal[var] = tab[r][width].clone();
        }
    }
    let dual = (cols..width).map(|j| obj[j].clone()).collect();
    Ok(LpSolution {
        value: obj[width].clone(),
        primal,
        dual,
    })
}
