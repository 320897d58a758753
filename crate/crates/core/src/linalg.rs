//! Dense complex linear algebra helpers on top of `nalgebra`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::Phase;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Relative cutoff for numerical rank decisions.
pub const RANK_TOLERANCE: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn scalar_phase(p: Phase) -> Complex64 {
    p.embed()
}

/// Largest entrywise modulus of `a - b`; infinite on a shape mismatch.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn cutoff(singular: &[f64]) -> f64 {
    let top = singular.iter().copied().fold(0.0, f64::max);
    RANK_TOLERANCE * top.max(1.0)
}

/// Orthonormal basis of `{x : a x = 0}` as the columns of the result.
pub fn nullspace(a: &CMatrix) -> CMatrix {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return zeros(0, 0);
    }
    // Pad with zero rows so the thin SVD returns all right singular vectors.
    let padded = if rows < cols {
        let mut p = zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let s: Vec<f64> = svd.singular_values.iter().copied().collect();
    let tol = cutoff(&s);
    let kept: Vec<usize> = (0..s.len()).filter(|&i| s[i] <= tol).collect();
    let mut out = zeros(cols, kept.len());
    for (k, &i) in kept.iter().enumerate() {
        for j in 0..cols {
            out[(j, k)] = v_t[(i, j)].conj();
        }
    }
    out
}

pub fn rank(a: &CMatrix) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s: Vec<f64> = a.singular_values().iter().copied().collect();
    let tol = cutoff(&s);
    s.iter().filter(|&&x| x > tol).count()
}

pub fn inverse(a: &CMatrix) -> Option<CMatrix> {
    if a.nrows() != a.ncols() {
        return None;
    }
    if a.nrows() == 0 {
        return Some(zeros(0, 0));
    }
    if rank(a) < a.nrows() {
        return None;
    }
    a.clone().try_inverse()
}

/// Left inverse of a matrix with independent columns.
pub fn left_inverse(a: &CMatrix) -> Option<CMatrix> {
    if a.ncols() == 0 {
        return Some(zeros(0, a.nrows()));
    }
    let gram = a.adjoint() * a;
    inverse(&gram).map(|g| g * a.adjoint())
}

/// Block-diagonal sum.
pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let (mut r, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r, c0), b.shape()).copy_from(b);
        r += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let a = CMatrix::from_row_slice(2, 3, &[c(1., 0.), c(2., 0.), c(3., 0.), c(2., 0.), c(4., 0.), c(6., 0.)]);
        let k = nullspace(&a);
        assert_eq!(k.ncols(), 2);
        assert!(max_abs(&(&a * &k)) < 1e-12);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn nullspace_of_wide_and_empty() {
        let a = zeros(0, 3);
        assert_eq!(nullspace(&a).ncols(), 3);
        let b = identity(3);
        assert_eq!(nullspace(&b).ncols(), 0);
    }

    #[test]
    fn left_inverse_of_embedding() {
        let a = CMatrix::from_row_slice(3, 1, &[c(1., 0.), c(0., 1.), c(0., 0.)]);
        let l = left_inverse(&a).unwrap();
        assert!(max_abs_diff(&(l * a), &identity(1)) < 1e-12);
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(inverse(&zeros(2, 2)).is_none());
        assert!(inverse(&identity(2)).is_some());
    }
}
