//! Dense matrices over a [`Field`] and Gauss-Jordan elimination.
//!
//! Pivots are chosen column by column, taking the lowest-indexed row with a
//! nonzero entry, so every basis produced here is reproducible.

use std::fmt;

use crate::gf::{Fe, Field};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.code()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    /// Builds a matrix from rows of equal length; `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(rows: Vec<Vec<Fe>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn push_row(&mut self, row: &[Fe]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c));
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[dst] += factor * row[src]`
    fn axpy_rows(&mut self, f: &Field, dst: usize, src: usize, factor: Fe, from: usize) {
        if factor.is_zero() {
            return;
        }
        let cols = self.cols;
        for c in from..cols {
            let s = self.data[src * cols + c];
            if !s.is_zero() {
                let d = &mut self.data[dst * cols + c];
                *d = f.add(*d, f.mul(factor, s));
            }
        }
    }

    fn scale_row(&mut self, f: &Field, r: usize, factor: Fe) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            *v = f.mul(*v, factor);
        }
    }
}

/// Reduces `m` to reduced row echelon form in place and returns the pivot
/// columns. Nonzero rows come first.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        m.scale_row(f, r, inv);
        for i in 0..m.rows {
            if i != r {
                let factor = f.neg(m.get(i, c));
                m.axpy_rows(f, i, r, factor, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

/// Basis of the row space, in reduced echelon form.
pub fn row_basis(f: &Field, m: &Matrix) -> Matrix {
    let mut w = m.clone();
    let r = rref(f, &mut w).len();
    w.data.truncate(r * w.cols);
    w.rows = r;
    w
}

/// Basis (as rows) of the right null space `{v : m v = 0}`.
pub fn kernel(f: &Field, m: &Matrix) -> Matrix {
    let mut w = m.clone();
    let pivots = rref(f, &mut w);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Matrix::zeros(0, m.cols);
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Fe::ZERO; m.cols];
        v[free] = Fe::ONE;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(w.get(i, free));
        }
        out.push_row(&v);
    }
    out
}

/// `a * b^T`
pub fn mul_transpose(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols, b.cols);
    let mut out = Matrix::zeros(a.rows, b.rows);
    for i in 0..a.rows {
        for j in 0..b.rows {
            out.set(i, j, dot(f, a.row(i), b.row(j)));
        }
    }
    out
}

pub fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Row space of `small` is contained in the row space of `big`.
pub fn row_space_contains(f: &Field, big: &Matrix, small: &Matrix) -> bool {
    assert_eq!(big.cols, small.cols);
    let rb = rank(f, big);
    let mut stacked = big.clone();
    for r in 0..small.rows {
        stacked.push_row(small.row(r));
    }
    rank(f, &stacked) == rb
}

pub fn same_row_space(f: &Field, a: &Matrix, b: &Matrix) -> bool {
    rank(f, a) == rank(f, b) && row_space_contains(f, a, b)
}

/// Multiplies column `j` by `x[j]`.
pub fn scale_columns(f: &Field, m: &Matrix, x: &[Fe]) -> Matrix {
    assert_eq!(m.cols, x.len());
    let mut out = m.clone();
    for r in 0..m.rows {
        for (c, &s) in x.iter().enumerate() {
            out.set(r, c, f.mul(m.get(r, c), s));
        }
    }
    out
}

/// Scales `v` so that its first nonzero entry is one. Returns `false` for the
/// zero vector.
pub fn normalize(f: &Field, v: &mut [Fe]) -> bool {
    let Some(&lead) = v.iter().find(|e| !e.is_zero()) else {
        return false;
    };
    if lead != Fe::ONE {
        let inv = f.inv(lead).unwrap();
        for e in v.iter_mut() {
            *e = f.mul(*e, inv);
        }
    }
    true
}
