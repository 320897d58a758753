//! Smith and Hermite normal forms of integer matrices.
//!
//! Matrices are dense `Vec<Vec<i64>>` in row-major order. Entries in this
//! crate stay small (bounded by a few multiples of `N`), so `i64` with
//! checked growth is enough.

use alloc::vec;
use alloc::vec::Vec;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix, rows: usize, cols: usize) -> IntMatrix {
    (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect()
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`,
/// diagonal entries nonnegative. `u_inv` and `v_inv` are the inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<i64> {
        let n = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..n).map(|i| self.d[i][i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: i64) {
        for c in 0..self.cols {
            self.a[i][c] += k * self.a[j][c];
        }
        for c in 0..self.rows {
            self.u[i][c] += k * self.u[j][c];
        }
        // Inverse: col_j -= k * col_i.
        for r in 0..self.rows {
            self.u_inv[r][j] -= k * self.u_inv[r][i];
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i64) {
        for r in 0..self.rows {
            self.a[r][i] += k * self.a[r][j];
        }
        for r in 0..self.cols {
            self.v[r][i] += k * self.v[r][j];
        }
        for c in 0..self.cols {
            self.v_inv[j][c] -= k * self.v_inv[i][c];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i];
        }
    }
}

/// Smith normal form of a `rows x cols` matrix.
pub fn smith(a: &IntMatrix, rows: usize, cols: usize) -> Smith {
    let mut w = Work {
        a: a.clone(),
        u: int_identity(rows),
        u_inv: int_identity(rows),
        v: int_identity(cols),
        v_inv: int_identity(cols),
        rows,
        cols,
    };
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = w.a[i][j];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[i][t].div_euclid(p);
                if q != 0 {
                    w.add_row(i, t, -q);
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_euclid(p);
                if q != 0 {
                    w.add_col(j, t, -q);
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    Smith {
        d: w.a,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Column Hermite normal form of the lattice spanned by the columns of a
/// full-rank `g x g` matrix: lower triangular, positive diagonal, and each
/// row's entries left of the diagonal reduced into `[0, diagonal)`.
pub fn column_hnf(a: &IntMatrix) -> IntMatrix {
    let g = a.len();
    // Work on columns as vectors.
    let mut cols: Vec<Vec<i64>> = transpose(a, g, g);
    for r in 0..g {
        // Euclid across columns r..g on row r.
        loop {
            let nonzero: Vec<usize> = (r..g).filter(|&c| cols[c][r] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    cols.swap(r, c);
                }
                break;
            }
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&c| cols[c][r].abs())
                .expect("nonempty");
            for &c in &nonzero {
                if c != pivot {
                    let q = cols[c][r].div_euclid(cols[pivot][r]);
                    let src = cols[pivot].clone();
                    for (x, y) in cols[c].iter_mut().zip(&src) {
                        *x -= q * y;
                    }
                }
            }
        }
        if cols[r][r] < 0 {
            for x in cols[r].iter_mut() {
                *x = -*x;
            }
        }
    }
    for r in 0..g {
        let p = cols[r][r];
        if p == 0 {
            continue;
        }
        for c in 0..r {
            let q = cols[c][r].div_euclid(p);
            if q != 0 {
                let src = cols[r].clone();
                for (x, y) in cols[c].iter_mut().zip(&src) {
                    *x -= q * y;
                }
            }
        }
    }
    transpose(&cols, g, g)
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(a: &IntMatrix) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

pub fn zero_matrix(rows: usize, cols: usize) -> IntMatrix {
    vec![vec![0; cols]; rows]
}
