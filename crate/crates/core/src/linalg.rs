//! Dense exact matrices over a number field.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, NumberField};

/// Row-major matrix with entries in a fixed number field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
    field: Arc<NumberField>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![FieldElem::zero(field); rows * cols],
            field: Arc::clone(field),
        }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::one(field));
        }
        m
    }

    pub fn from_fn(
        field: &Arc<NumberField>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            data,
            field: Arc::clone(field),
        }
    }

    pub fn from_rows(field: &Arc<NumberField>, rows: Vec<Vec<FieldElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
            field: Arc::clone(field),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<FieldElem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).sub(other.get(i, j))
        })
    }

    pub fn scale(&self, s: &FieldElem) -> Mat {
        Mat::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).mul(s)
        })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Mat::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![FieldElem::zero(&self.field); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(&v[j]));
            }
        }
        out
    }

    /// Kronecker product, with the row-major index convention
    /// (i1*rows2+i2, j1*cols2+j2).
    pub fn kronecker(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(
            &self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            a.mul(b),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot invertible");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, echelonized deterministically: one vector
    /// per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        let piv_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if piv_set.contains(&free) {
                continue;
            }
            let mut v = vec![FieldElem::zero(&self.field); self.cols];
            v[free] = FieldElem::one(&self.field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(row, free).neg();
            }
            out.push(v);
        }
        out
    }

    pub fn det(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = FieldElem::one(&self.field);
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return FieldElem::zero(&self.field);
            };
            if p != c {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, c * m.cols + j);
                }
                det = det.neg();
            }
            let pivot = m.get(c, c).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot invertible");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).mul(&inv);
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElem::one(&self.field));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(&self.field, n, n, |i, j| {
            r.get(i, n + j).clone()
        }))
    }

    /// Stack rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: Arc::clone(&self.field),
        }
    }
}

/// Solves A x = b for matrices with full column rank; `None` when
/// inconsistent. Intended for expressing vectors in a basis.
pub struct ColumnSolver {
    mat: Mat,
    pivot_rows: Vec<usize>,
    inv: Mat,
}

impl ColumnSolver {
    pub fn new(mat: Mat) -> Result<Self> {
        let (r, pivots) = mat.transpose().rref();
        if pivots.len() != mat.cols() {
            return Err(Error::DimensionMismatch(
                "columns are not linearly independent".into(),
            ));
        }
        // pivots of the transpose are row indices of a full-rank square block
        let pivot_rows = pivots;
        let field = Arc::clone(mat.field());
        let block = Mat::from_fn(&field, mat.cols(), mat.cols(), |i, j| {
            mat.get(pivot_rows[i], j).clone()
        });
        let inv = block.inverse().expect("full rank block");
        let _ = r;
        Ok(ColumnSolver {
            mat,
            pivot_rows,
            inv,
        })
    }

    /// The unique candidate solution, verified against every row.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.mat.rows());
        let rhs: Vec<FieldElem> = self.pivot_rows.iter().map(|&i| b[i].clone()).collect();
        let x = self.inv.mul_vec(&rhs);
        let check = self.mat.mul_vec(&x);
        if check
            .iter()
            .zip(b)
            .all(|(c, bb)| c.sub(bb).is_zero())
        {
            Some(x)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::rational::rat_from_i64;

    fn qmat(rows: Vec<Vec<i64>>) -> Mat {
        let f = NumberField::rationals();
        Mat::from_rows(
            &f,
            rows.into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| FieldElem::from_integer(&f, x))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn rref_and_kernel() {
        let m = qmat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for row in 0..3 {
            let mut acc = FieldElem::zero(m.field());
            for j in 0..3 {
                acc = acc.add(&m.get(row, j).mul(&k[0][j]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn det_and_inverse() {
        let m = qmat(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det(), FieldElem::from_integer(m.field(), 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(m.field(), 2));
        let sing = qmat(vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.det().is_zero());
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn column_solver() {
        let m = qmat(vec![vec![1, 0], vec![1, 1], vec![0, 2]]);
        let s = ColumnSolver::new(m.clone()).unwrap();
        let f = m.field();
        let b = vec![
            FieldElem::from_integer(f, 3),
            FieldElem::from_integer(f, 5),
            FieldElem::from_integer(f, 4),
        ];
        let x = s.solve(&b).unwrap();
        assert_eq!(x[0], FieldElem::from_integer(f, 3));
        assert_eq!(x[1], FieldElem::from_integer(f, 2));
        let bad = vec![
            FieldElem::from_integer(f, 1),
            FieldElem::from_integer(f, 0),
            FieldElem::from_integer(f, 0),
        ];
        assert!(s.solve(&bad).is_none());
    }

    #[test]
    fn kronecker_shape() {
        let a = qmat(vec![vec![1, 2], vec![3, 4]]);
        let b = qmat(vec![vec![0, 1], vec![1, 0]]);
        let k = a.kronecker(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.get(0, 1), FieldElem::from_integer(a.field(), 1));
        assert_eq!(*k.get(0, 3), FieldElem::from_integer(a.field(), 2));
        let _ = rat_from_i64(0);
    }
}
