//! Exact Gauss-Jordan elimination over complex rationals.

use crate::expr::Cx;

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row.
pub fn rref(m: &mut [Vec<Cx>]) -> Vec<usize> {
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
        let inv = m[r][c].inv().expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert(m: &[Vec<Cx>]) -> Option<Vec<Vec<Cx>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Cx>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Cx::one() } else { Cx::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
