use std::fmt;

use super::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
///
/// Only the nonzero rows are kept; `pivots[i]` is the pivot column of row `i`.
#[derive(Clone, PartialEq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        Self::from_rows_with_cols(rows, None)
    }

    /// Builds a matrix from rows; `cols` fixes the width for an empty row list.
    pub fn from_rows_with_cols(rows: Vec<Vec<F>>, cols: Option<usize>) -> Self {
        let ncols = cols.unwrap_or_else(|| rows.first().map_or(0, Vec::len));
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix rows");
            data.extend(r);
        }
        Self { rows: nrows, cols: ncols, data }
    }

    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn rref(&self) -> Rref<F> {
        F::echelon(self)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one column per free column of the RREF
    /// in increasing column order.
    pub fn kernel_basis(&self) -> Matrix<F> {
        self.rref().kernel_basis()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return F::zero();
            };
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            let piv = a[c][c].clone();
            det = det.mul(&piv);
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].div(&piv);
                let (top, bottom) = a.split_at_mut(r);
                for (x, p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        det
    }
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols()).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn kernel_basis(&self) -> Matrix<F> {
        let n = self.cols();
        let free = self.free_columns();
        let mut basis = Matrix::zeros(n, free.len());
        for (j, &f) in free.iter().enumerate() {
            basis.set(f, j, F::one());
            for (i, &p) in self.pivots.iter().enumerate() {
                let v = self.matrix.get(i, f);
                if !v.is_zero() {
                    basis.set(p, j, v.neg());
                }
            }
        }
        basis
    }

    /// Reduces `v` modulo the row space; the result vanishes on every pivot
    /// column.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (c, e) in self.matrix.row(i).iter().enumerate() {
                if !e.is_zero() {
                    out[c] = out[c].sub(&f.mul(e));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }
}

/// Gauss-Jordan elimination with leftmost-column, lowest-row pivoting.
pub fn gauss_jordan<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let cols = m.cols();
    let mut rows: Vec<Vec<F>> = m
        .to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(p, next);
        let inv = F::one().div(&rows[next][c]);
        if !inv.is_one() {
            for e in rows[next][c..].iter_mut() {
                if !e.is_zero() {
                    *e = e.mul(&inv);
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&k| !rows[next][k].is_zero()).collect();
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &support {
                row[k] = row[k].sub(&f.mul(&pivot_row[k]));
            }
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    Rref { matrix: Matrix::from_rows_with_cols(rows, Some(cols)), pivots }
}

impl<F: Field> fmt::Debug for Rref<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rref").field("matrix", &self.matrix).field("pivots", &self.pivots).finish()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
