//! Dense exact linear algebra over the rationals.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

/// Row-reduces in place and returns the rank.
pub fn row_reduce(rows: &mut [Vec<BigRational>]) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let r = rank(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == r
}

/// Coordinates of `v` in a linearly independent `basis`, if it lies in the
/// span.
pub fn coordinates(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = basis.len();
    let dim = v.len();
    // Solve sum_j c_j basis[j] = v: augmented rows indexed by ambient coordinates.
    let mut rows: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            let mut r: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let rk = row_reduce(&mut rows);
    let mut sol = alloc::vec![BigRational::zero(); n];
    for row in rows.iter().take(rk) {
        let lead = row.iter().position(|x| !x.is_zero()).unwrap();
        if lead == n {
            return None;
        }
        sol[lead] = row[n].clone();
    }
    Some(sol)
}

/// Dimension of the kernel of the matrix with the given rows and
/// `ncols` columns.
pub fn nullity(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    if rows.is_empty() {
        return ncols;
    }
    ncols - rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn basics() {
        let rows = alloc::vec![
            alloc::vec![rat(1), rat(2), rat(3)],
            alloc::vec![rat(2), rat(4), rat(6)],
            alloc::vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(nullity(&rows, 3), 1);
        assert!(in_span(&rows, &[rat(1), rat(3), rat(4)]));
        assert!(!in_span(&rows, &[rat(0), rat(0), rat(1)]));
        let basis = alloc::vec![alloc::vec![rat(1), rat(0), rat(1)], alloc::vec![rat(0), rat(1), rat(1)]];
        assert_eq!(coordinates(&basis, &[rat(2), rat(3), rat(5)]), Some(alloc::vec![rat(2), rat(3)]));
        assert_eq!(coordinates(&basis, &[rat(2), rat(3), rat(4)]), None);
    }
}
