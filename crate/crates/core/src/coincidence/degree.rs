//! Exact rational linear algebra and ray-crossing degrees of PL maps into `R^n ∖ 0`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub(crate) fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

/// Solution set of a rational linear system.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Solution {
    None,
    Unique(Vec<Q>),
    /// Consistent with a solution space of the given dimension.
    Many(usize),
}

/// Solve `A x = b` for `A` given as rows.
pub(crate) fn solve(a: &[Vec<Q>], b: &[Q], unknowns: usize) -> Solution {
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip();
        rows[rank].iter_mut().for_each(|x| *x *= &inv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[unknowns].is_zero()) {
        return Solution::None;
    }
    if rank < unknowns {
        return Solution::Many(unknowns - rank);
    }
    let mut x = vec![Q::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][unknowns].clone();
    }
    Solution::Unique(x)
}

pub(crate) fn determinant(cols: &[Vec<Q>]) -> Q {
    let n = cols.len();
    let mut m: Vec<Vec<Q>> = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
    let mut det = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x -= &f * y);
            }
        }
    }
    det
}

/// Number of moment-curve directions tried before giving up.
const DIRECTIONS: i64 = 64;

/// Degree of the PL map from an oriented `(n-1)`-cycle to `R^n ∖ 0`. Each face
/// is a coefficient and the images of its `n` vertices, in stored order.
pub fn ray_degree(faces: &[(i64, Vec<Vec<Q>>)], n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::DimensionMismatch("ray crossing needs a target of dimension at least 1".into()));
    }
    'direction: for t in 1..=DIRECTIONS {
        let d: Vec<Q> = (0..n as u32).map(|k| q(t.pow(k))).collect();
        let mut total = 0i64;
        for (c, h) in faces {
            if *c == 0 {
                continue;
            }
            if h.iter().any(|v| v.iter().all(Zero::is_zero)) {
                return Err(Error::BoundaryTouchesCoincidence(format!("face with image {h:?}")));
            }
            let rows: Vec<Vec<Q>> = (0..n).map(|r| (0..n).map(|k| h[k][r].clone()).collect()).collect();
            match solve(&rows, &d, n) {
                Solution::None => {}
                Solution::Many(_) => continue 'direction,
                Solution::Unique(mu) => {
                    if mu.iter().any(Zero::is_zero) {
                        continue 'direction;
                    }
                    if mu.iter().all(Signed::is_positive) {
                        total += c * if determinant(h).is_positive() { 1 } else { -1 };
                    }
                }
            }
        }
        return Ok(total);
    }
    Err(Error::NoSolution("every probe direction hit a degenerate face".into()))
}
