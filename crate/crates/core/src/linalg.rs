//! Exact integer and rational linear algebra: integer kernels in Hermite
//! normal form and ranks over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Basis of `{x in Z^n : A x = 0}` for `A` given by rows of length `n`,
/// returned in row Hermite normal form.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // columns of the augmented matrix [A; I], manipulated by unimodular
    // column operations until the A-part is in column echelon form
    let m = a.len();
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c: Vec<BigInt> = a.iter().map(|row| row[j].clone()).collect();
            c.extend((0..n).map(|k| BigInt::from((k == j) as i64)));
            c
        })
        .collect();
    let mut pivot = 0;
    for i in 0..m {
        if pivot == n {
            break;
        }
        loop {
            // smallest nonzero |entry| in row i among the free columns
            let best = (pivot..n)
                .filter(|&j| !cols[j][i].is_zero())
                .min_by(|&x, &y| cols[x][i].abs().cmp(&cols[y][i].abs()));
            let Some(b) = best else { break };
            cols.swap(pivot, b);
            let mut done = true;
            for j in pivot + 1..n {
                if cols[j][i].is_zero() {
                    continue;
                }
                let q = cols[j][i].div_floor(&cols[pivot][i]);
                let (head, tail) = cols.split_at_mut(j);
                for (x, y) in tail[0].iter_mut().zip(&head[pivot]) {
                    *x -= &q * y;
                }
                if !cols[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let kernel: Vec<Vec<BigInt>> = cols[pivot..].iter().map(|c| c[m..].to_vec()).collect();
    hermite_normal_form(kernel)
}

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&x, &y| rows[x][c].abs().cmp(&rows[y][c].abs()));
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(r);
                    for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Rank over `Q` by exact Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            let (head, tail) = m.split_at_mut(i);
            for (x, y) in tail[0].iter_mut().zip(&head[rank]) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mat_vec(a: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
        a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
    }

    #[test]
    fn kernel_of_simple_matrix() {
        let a = big(&[&[1, 1, 1]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(k, big(&[&[1, 0, -1], &[0, 1, -1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel spanned by (2, 1), not (4, 2)
        let a = big(&[&[2, -4]]);
        assert_eq!(integer_kernel(&a, 2), big(&[&[2, 1]]));
        // empty constraint set: the whole lattice
        assert_eq!(integer_kernel(&[], 2), big(&[&[1, 0], &[0, 1]]));
        // full rank: trivial kernel
        assert!(integer_kernel(&big(&[&[1, 2], &[3, 4]]), 2).is_empty());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let h = hermite_normal_form(a);
        assert_eq!(h, big(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]));
    }

    #[test]
    fn ranks() {
        let r = |rows: &[&[i64]]| -> Vec<Vec<BigRational>> {
            rows.iter()
                .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect()
        };
        assert_eq!(rational_rank(&r(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rational_rank(&r(&[&[1, 2], &[2, 5]])), 2);
        assert_eq!(rational_rank(&r(&[])), 0);
    }
}
