//! Small exact linear-algebra helpers: dense matrices over arbitrary-
//! precision rationals, and Hermite normal form over the integers.
//!
//! Matrix sizes here are tiny (≤ ~20), so simple Gaussian elimination with
//! exact rationals is entirely adequate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;
pub type RMat = Vec<Vec<Rat>>;

pub fn rat_int(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

pub fn rmat_zero(rows: usize, cols: usize) -> RMat {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn rmat_identity(n: usize) -> RMat {
    let mut m = rmat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn rmat_mul(a: &RMat, b: &RMat) -> RMat {
    let (n, k) = (a.len(), b.len());
    assert!(a.is_empty() || a[0].len() == k, "shape mismatch");
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = rmat_zero(n, cols);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[l][j].is_zero() {
                    let add = &a[i][l] * &b[l][j];
                    out[i][j] += add;
                }
            }
        }
    }
    out
}

pub fn rmat_add(a: &RMat, b: &RMat) -> RMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn rmat_sub(a: &RMat, b: &RMat) -> RMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn rmat_scale(a: &RMat, c: &Rat) -> RMat {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn rmat_apply(a: &RMat, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn rmat_is_zero(a: &RMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Gauss–Jordan inverse; `None` if singular.
pub fn rmat_inverse(a: &RMat) -> Option<RMat> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(rmat_identity(n))
        .map(|(row, id_row)| row.iter().cloned().chain(id_row).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solve the square system `A x = b`; `None` if singular.
pub fn rmat_solve(a: &RMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let inv = rmat_inverse(a)?;
    Some(rmat_apply(&inv, b))
}

/// Rank by Gaussian elimination.
pub fn rmat_rank(a: &RMat) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for r in rank + 1..rows {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for c in col..cols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Row-style Hermite normal form of the row space of `m` (entries BigInt):
/// returns a canonical basis of the generated lattice with positive pivots
/// and rows sorted by pivot column.
pub fn hnf_rows(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = m
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivot_rows: Vec<usize> = Vec::new(); // pivot column per basis row
    for col in 0..cols {
        loop {
            // Reduce all non-basis rows against each other in this column
            // by gcd steps.
            let active: Vec<usize> = (0..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if active.len() <= 1 {
                break;
            }
            // Pick the row with the smallest nonzero |entry| and reduce the
            // others by it.
            let &best = active
                .iter()
                .min_by_key(|&&r| rows[r][col].magnitude().clone())
                .unwrap();
            // Every other active entry has magnitude ≥ the pivot's, so each
            // truncated quotient is nonzero and magnitudes strictly drop.
            let pivot_val = rows[best][col].clone();
            for &r in &active {
                if r == best {
                    continue;
                }
                let q = &rows[r][col] / &pivot_val;
                for c in 0..cols {
                    let sub = &q * &rows[best][c];
                    rows[r][c] -= sub;
                }
            }
        }
        if let Some(r) = (0..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            let mut row = rows.remove(r);
            if row[col].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            basis.push(row);
            pivot_rows.push(col);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // Reduce entries above pivots to canonical range [0, pivot).
    for i in (0..basis.len()).rev() {
        let col = pivot_rows[i];
        let pivot = basis[i][col].clone();
        let lower = basis[i].clone();
        for j in 0..i {
            let q = num_integer::Integer::div_floor(&basis[j][col], &pivot);
            if !q.is_zero() {
                for c in 0..lower.len() {
                    let sub = &q * &lower[c];
                    basis[j][c] -= sub;
                }
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(v: &[&[i64]]) -> RMat {
        v.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = rm(&[&[2, 1], &[1, 1]]);
        let inv = rmat_inverse(&a).unwrap();
        assert_eq!(rmat_mul(&a, &inv), rmat_identity(2));
    }

    #[test]
    fn rank_of_deficient_matrix() {
        let a = rm(&[&[1, 2], &[2, 4], &[0, 1]]);
        assert_eq!(rmat_rank(&a), 2);
    }

    #[test]
    fn hnf_canonicalizes_lattice() {
        let m: Vec<Vec<BigInt>> = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(4), BigInt::from(2)],
        ];
        let h = hnf_rows(&m);
        assert_eq!(h.len(), 2);
        // Lattice index |det| must be preserved: |2·2 − 4·4| = 12.
        let det = &h[0][0] * &h[1][1];
        assert_eq!(det, BigInt::from(12));
    }
}
