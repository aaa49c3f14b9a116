use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{common_denominator, content, BigRat};

/// Basis of the right nullspace of `matrix` (rows of equal length).
///
/// Gauss-Jordan elimination over the rationals, pivoting on the first nonzero
/// entry of each column. Every basis vector is scaled to integer entries with
/// content 1 and a positive first nonzero entry. An empty result means the
/// nullspace is trivial.
pub fn solve_homogeneous(matrix: &[Vec<BigRat>]) -> Vec<Vec<BigRat>> {
    let Some(cols) = matrix.first().map(Vec::len) else {
        return Vec::new();
    };
    debug_assert!(matrix.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut a: Vec<Vec<BigRat>> = matrix.to_vec();
    let rows = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRat::zero(); cols];
            v[f] = BigRat::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            normalize_vector(v)
        })
        .collect()
}

/// Integer entries, content 1, first nonzero entry positive.
pub fn normalize_vector(v: Vec<BigRat>) -> Vec<BigRat> {
    let d = BigRat::from_integer(common_denominator(v.iter()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &d).to_integer()).collect();
    let mut g = content(ints.iter());
    if g.is_zero() {
        return v;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter()
        .map(|x| BigRat::from_integer(x / &g))
        .collect()
}

/// `matrix * v`.
pub fn mat_vec(matrix: &[Vec<BigRat>], v: &[BigRat]) -> Vec<BigRat> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
