//! Exact rational Gaussian elimination and nullspace computation.

use num::traits::{One, Zero};
use num::BigRational;

/// Reduce `rows` (each of width `cols`) to reduced row echelon form in
/// place; returns the pivot columns.
fn rref(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|r| !rows[*r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].clone();
        for v in rows[rank][col..].iter_mut() {
            *v /= inv.clone();
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *v -= factor.clone() * p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    pivot_cols
}

/// Basis of the right nullspace of the matrix, one vector per free
/// column, in column order. Rank + returned dimension = `cols`.
pub fn nullspace_basis(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let mut m = rows.to_vec();
    let pivot_cols = rref(&mut m, cols);
    let mut is_pivot = vec![false; cols];
    for c in &pivot_cols {
        is_pivot[*c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (r, pc) in pivot_cols.iter().enumerate() {
            v[*pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank(rows: &[Vec<BigRational>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}
