//! Dense eigensolver wrappers and exact rank modulo word-sized primes.

use faer::{Mat, Side};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("matrix data has length {got}, expected {expected}")]
    Shape { got: usize, expected: usize },
}

fn to_mat(n: usize, a: &[f64]) -> Result<Mat<f64>, LinalgError> {
    if a.len() != n * n {
        return Err(LinalgError::Shape { got: a.len(), expected: n * n });
    }
    Ok(Mat::from_fn(n, n, |i, j| a[i * n + j]))
}

/// Eigenvalues of a symmetric row-major matrix, ascending.
pub fn sym_eigenvalues(n: usize, a: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let m = to_mat(n, a)?;
    m.self_adjoint_eigenvalues(Side::Lower).map_err(|_| LinalgError::NoConvergence)
}

/// Eigenpairs of a symmetric row-major matrix, ascending. Vectors are unit columns.
pub fn sym_eigen(n: usize, a: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>), LinalgError> {
    let m = to_mat(n, a)?;
    let evd = m.self_adjoint_eigen(Side::Lower).map_err(|_| LinalgError::NoConvergence)?;
    let s = evd.S();
    let u = evd.U();
    let vals = (0..n).map(|i| s[i]).collect();
    let vecs = (0..n).map(|j| (0..n).map(|i| u[(i, j)]).collect()).collect();
    Ok((vals, vecs))
}

/// Eigenvalues of a general real row-major matrix.
pub fn general_eigenvalues(n: usize, a: &[f64]) -> Result<Vec<Complex64>, LinalgError> {
    let m = to_mat(n, a)?;
    m.eigenvalues().map_err(|_| LinalgError::NoConvergence)
}

pub fn is_prime(n: u64) -> bool {
    crate::rings::is_prime(n)
}

/// The `count` largest primes strictly below `bound`.
pub fn primes_below(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = bound.saturating_sub(1);
    while out.len() < count && c >= 2 {
        if is_prime(c) {
            out.push(c);
        }
        c -= 1;
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Largest modulus accepted by [`rank_mod_p`]: residues fit in u32.
pub const MAX_RANK_PRIME: u64 = 1 << 32;

/// The `count` smallest primes strictly above `bound`.
pub fn primes_above(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = bound + 1;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Rank over F_p of a row-major integer matrix, p < 2^32.
///
/// Entries are kept unreduced in u64: each elimination step adds at most (p−1)²,
/// and the trailing block is reduced before the sum could overflow.
pub fn rank_mod_p(rows: usize, cols: usize, a: &[i64], p: u64) -> usize {
    assert!((2..MAX_RANK_PRIME).contains(&p));
    assert_eq!(a.len(), rows * cols);
    let mut m: Vec<u64> = a.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    let step_max = (p - 1) * (p - 1);
    let budget = if step_max == 0 { u64::MAX } else { (u64::MAX - (p - 1)) / step_max };
    let mut pending = 0u64;
    let mut pivot = vec![0u32; cols];
    let mut rank = 0;
    for col in 0..cols {
        for r in rank..rows {
            m[r * cols + col] %= p;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for c in col..cols {
                m.swap(piv * cols + c, rank * cols + c);
            }
        }
        if pending >= budget {
            for x in m[rank * cols..].iter_mut() {
                *x %= p;
            }
            pending = 0;
        }
        let inv = pow_mod(m[rank * cols + col], p - 2, p);
        for c in col..cols {
            pivot[c] = (m[rank * cols + c] % p * inv % p) as u32;
        }
        let prow = &pivot[col..];
        let tail = &mut m[(rank + 1) * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let c = p - f;
            for (x, &y) in row[col..].iter_mut().zip(prow) {
                *x += c * y as u64;
            }
        }
        pending += 1;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Minimum-cost perfect assignment on a square row-major cost matrix
/// (Hungarian method with potentials). Returns `col_of_row`.
pub fn min_cost_assignment(n: usize, cost: &[f64]) -> Vec<usize> {
    assert_eq!(cost.len(), n * n);
    // 1-based arrays; column 0 is the virtual start
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of_col[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            let crow = &cost[(i0 - 1) * n..i0 * n];
            for j in 1..=n {
                if !used[j] {
                    let cur = crow[j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of_row = vec![0; n];
    for j in 1..=n {
        col_of_row[row_of_col[j] - 1] = j - 1;
    }
    col_of_row
}
