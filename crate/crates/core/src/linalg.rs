//! Exact Gauss-Jordan elimination over `Q(i)`.

use crate::exact_arith::GR;

/// Dense matrix stored row-major.
pub type Matrix = Vec<Vec<GR>>;

/// Reduced row echelon form in place; returns pivot columns. The pivot in
/// each column is the first remaining row with a nonzero entry.
pub fn rref(mat: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == mat.len() {
            break;
        }
        let Some(p) = (row..mat.len()).find(|r| !mat[*r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].inv().expect("pivot is nonzero");
        for v in mat[row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = mat[row].clone();
        for (r, other) in mat.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the right kernel, one vector per free column, in column order.
pub fn nullspace(mat: &Matrix, ncols: usize) -> Vec<Vec<GR>> {
    let mut m = mat.clone();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![GR::zero(); ncols];
        v[free] = GR::one();
        for (r, pc) in pivots.iter().enumerate() {
            v[*pc] = -&m[r][free];
        }
        basis.push(v);
    }
    basis
}

pub fn rank(mat: &Matrix, ncols: usize) -> usize {
    let mut m = mat.clone();
    rref(&mut m, ncols).len()
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert(mat: &Matrix) -> Option<Matrix> {
    let n = mat.len();
    let mut aug: Matrix = mat
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| if c == r { GR::one() } else { GR::zero() }));
            v
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec(mat: &Matrix, v: &[GR]) -> Vec<GR> {
    mat.iter()
        .map(|row| {
            let mut acc = GR::zero();
            for (a, b) in row.iter().zip(v) {
                acc += &(a * b);
            }
            acc
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut acc = GR::zero();
                    for (k, x) in row.iter().enumerate() {
                        acc += &(x * &b[k][c]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
