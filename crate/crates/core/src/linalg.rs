//! Dense Gaussian elimination over a coefficient field.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::Coeff;

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref<C: Coeff>(rows: &mut Vec<Vec<C>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !pv.is_zero() {
                    *v = v.sub_mul(&f, pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank<C: Coeff>(rows: &[Vec<C>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{v : A v = 0}` for the matrix with the given rows.
pub(crate) fn kernel<C: Coeff>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![C::zero(); ncols];
        v[free] = C::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = row[free].neg();
        }
        out.push(v);
    }
    out
}

/// Inverse of an invertible square matrix.
pub(crate) fn inverse<C: Coeff>(m: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = m.len();
    let mut aug: Vec<Vec<C>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { C::one() } else { C::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() != n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        use crate::coeff::Rational;
        let m = vec![vec![Rational::new(2, 1), Rational::new(1, 1)], vec![Rational::new(7, 1), Rational::new(4, 1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], Rational::new(4, 1));
        assert_eq!(inv[1][0], Rational::new(-7, 1));
        assert!(inverse(&[vec![Rational::new(1, 1), Rational::new(2, 1)], vec![Rational::new(2, 1), Rational::new(4, 1)]]).is_none());
    }
    use crate::coeff::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank(&rows, 3), 1);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let s = r.iter().zip(v).fold(q(0), |acc, (a, b)| acc.add(&a.mul(b)));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let rows = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert!(kernel(&rows, 2).is_empty());
    }
}
