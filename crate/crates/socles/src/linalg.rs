//! Exact Gaussian elimination over the rationals.

use crate::poly::Coeff;
use num_traits::{One, Zero};

/// A basis of the right kernel of the matrix, found by reduced row
/// echelon form. The matrix is consumed as scratch space; `cols` is the
/// row width (rows may be empty when the matrix has no rows).
pub(crate) fn nullspace(mut mat: Vec<Vec<Coeff>>, cols: usize) -> Vec<Vec<Coeff>> {
    let rows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].recip();
        for c in col..cols {
            let v = &mat[rank][c] * &inv;
            mat[rank][c] = v;
        }
        for r in 0..rows {
            if r == rank || mat[r][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut mat[r][col], Coeff::zero());
            for c in (col + 1)..cols {
                let sub = &mat[rank][c] * &factor;
                let v = &mat[r][c] - &sub;
                mat[r][c] = v;
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for col in 0..cols {
        if pivot_of_col[col].is_some() {
            continue;
        }
        let mut v = vec![Coeff::zero(); cols];
        v[col] = Coeff::one();
        for (c2, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(pr) = pivot {
                v[c2] = -mat[*pr][col].clone();
            }
        }
        basis.push(v);
    }
    basis
}
