use num_traits::{One, Zero};

use crate::scalar_series::Rational;

/// Dense rational matrix as rows.
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> RatMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn cols(m: &RatMatrix) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let mut out = zeros(a.len(), cols(b));
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                out[i][j] += x * y;
            }
        }
    }
    out
}

pub fn mat_sub(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn is_zero(m: &RatMatrix) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}

/// Rank by Gaussian elimination.
pub fn rank(mut m: RatMatrix) -> usize {
    let ncols = cols(&m);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        let pivot: Vec<Rational> = m[r].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        m[r] = pivot;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
