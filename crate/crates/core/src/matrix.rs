//! Dense matrices over a finite field: echelon forms, rank, kernels.

use std::fmt;

use crate::field::{Elem, Field, FieldError};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.field.same(&other.field)?;
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let c = self.get(r, k);
                if !c.is_zero() {
                    // dst += c * other[k]
                    f.sub_scaled_row(dst, other.row(k), f.neg(c));
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (first, second) = self.data.split_at_mut(hi * cols);
        first[lo * cols..(lo + 1) * cols].swap_with_slice(&mut second[..cols]);
    }

    /// In-place reduced row echelon form. Zero rows are dropped; returns the
    /// pivot columns, one per remaining row.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            self.swap_rows(r, piv);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            f.scale_row(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            let pivot_row: Vec<Elem> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if !factor.is_zero() {
                    f.sub_scaled_row(&mut self.data[i * cols + c..(i + 1) * cols], &pivot_row, factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows = r;
        self.data.truncate(r * cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel {v : M v^T = 0}, as rows in reduced echelon form.
    pub fn kernel(&self) -> Matrix {
        let mut red = self.clone();
        let pivots = red.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Matrix::zeros(f, 0, self.cols);
        let mut v = vec![Elem::ZERO; self.cols];
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            v.iter_mut().for_each(|e| *e = Elem::ZERO);
            v[free] = Elem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(red.get(row, free));
            }
            out.push_row(&v);
        }
        out.rref();
        out
    }
}
