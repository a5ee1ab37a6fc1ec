//! Dense exact matrices and the elimination-based operations every Hom and
//! Ext computation is built from.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Column vectors are plain element vectors.
pub type Vector<F> = Vec<<F as Field>::Elem>;

impl<F: Field> Mat<F> {
    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Mat::from_vec(field, rows, cols, data)
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat::from_vec(field, rows, cols, data)
    }

    /// Builds a matrix from integer entries given row by row.
    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Mat::from_fn(field.clone(), r, c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: F, rows: usize, columns: &[Vector<F>]) -> Self {
        Mat::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Mat<F>) -> Result<Mat<F>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Mat::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    /// Product with shapes already known to agree.
    pub(crate) fn dot(&self, other: &Mat<F>) -> Mat<F> {
        self.mul(other).expect("matrix shapes agree")
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vector<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(self.get(i, j), &v[j])))
            })
            .collect())
    }

    pub fn add(&self, other: &Mat<F>) -> Result<Mat<F>> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat<F>) -> Result<Mat<F>> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Mat<F>, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Mat<F>> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| op(&self.field, a, b))
            .collect();
        Ok(Mat::from_vec(self.field.clone(), self.rows, self.cols, data))
    }

    pub fn scale(&self, c: &F::Elem) -> Mat<F> {
        let data = self.data.iter().map(|x| self.field.mul(c, x)).collect();
        Mat::from_vec(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn pow(&self, mut e: u32) -> Mat<F> {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.dot(&base);
            }
            base = base.dot(&base);
            e >>= 1;
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Block matrix from a grid of blocks with consistent row/column sizes.
    pub fn block(field: F, row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<Mat<F>>>]) -> Mat<F> {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = &blocks[bi][bj] {
                    assert_eq!(b.shape(), (rs, cs), "block shape");
                    for i in 0..rs {
                        for j in 0..cs {
                            out.set(r0 + i, c0 + j, b.get(i, j).clone());
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(field: F, blocks: &[&Mat<F>]) -> Mat<F> {
        let rs: Vec<usize> = blocks.iter().map(|b| b.rows).collect();
        let cs: Vec<usize> = blocks.iter().map(|b| b.cols).collect();
        let grid: Vec<Vec<Option<Mat<F>>>> = (0..blocks.len())
            .map(|i| {
                (0..blocks.len())
                    .map(|j| (i == j).then(|| blocks[i].clone()))
                    .collect()
            })
            .collect();
        Mat::block(field, &rs, &cs, &grid)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat<F> {
        Mat::from_fn(self.field.clone(), self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn rref(&self) -> Rref<F> {
        self.field.rref(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        if self.rows != self.cols {
            return None;
        }
        let id = Mat::identity(self.field.clone(), self.rows);
        solve_many(self, &id).ok().flatten()
    }

    /// A basis of the column space, as a matrix with independent columns
    /// (the pivot columns of `self`).
    pub fn column_space(&self) -> Mat<F> {
        let r = self.rref();
        self.select_columns(r.pivots())
    }
}

/// The reduced row echelon form of a matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    mat: Mat<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub(crate) fn new(mat: Mat<F>, pivots: Vec<usize>) -> Self {
        Rref { mat, pivots }
    }
    pub fn matrix(&self) -> &Mat<F> {
        &self.mat
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    m.rref().rank()
}

/// Basis of the right null space, one vector per non-pivot column.
pub fn kernel_basis<F: Field>(m: &Mat<F>) -> Vec<Vector<F>> {
    let f = m.field();
    let r = m.rref();
    let pivots = r.pivots();
    let mut is_pivot = vec![false; m.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(m.cols - pivots.len());
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(r.matrix().get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(m: &Mat<F>, b: &[F::Elem]) -> Result<Option<Vector<F>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let rhs = Mat::from_vec(m.field().clone(), m.rows, 1, b.to_vec());
    Ok(solve_many(m, &rhs)?.map(|x| x.column(0)))
}

/// Some `X` with `m X = b`, or `None` when some column is inconsistent.
pub fn solve_many<F: Field>(m: &Mat<F>, b: &Mat<F>) -> Result<Option<Mat<F>>> {
    if b.rows != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.rows,
        });
    }
    let f = m.field().clone();
    let aug = m.hstack(b);
    let r = aug.rref();
    if r.pivots().iter().any(|&p| p >= m.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(f, m.cols, b.cols);
    for (i, &p) in r.pivots().iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.matrix().get(i, m.cols + j).clone());
        }
    }
    Ok(Some(x))
}

pub fn cokernel_dim<F: Field>(m: &Mat<F>) -> usize {
    m.rows - rank(m)
}

/// Indices of standard basis vectors `e_i` that complete the column space of
/// `m` to the whole space, chosen greedily in increasing `i`.
pub fn complement_indices<F: Field>(m: &Mat<F>) -> Vec<usize> {
    let id = Mat::identity(m.field().clone(), m.rows);
    let r = m.hstack(&id).rref();
    r.pivots()
        .iter()
        .filter(|&&p| p >= m.cols)
        .map(|&p| p - m.cols)
        .collect()
}

/// Basis of the column space in reduced form: the transposed nonzero rows of
/// the RREF of `m^T`. Keeps entries small under repeated application.
pub fn reduced_column_basis<F: Field>(m: &Mat<F>) -> Mat<F> {
    if m.rows == 0 || m.cols == 0 {
        return Mat::zeros(m.field().clone(), m.rows, 0);
    }
    let r = m.transpose().rref();
    let k = r.rank();
    Mat::from_fn(m.field().clone(), m.rows, k, |i, j| r.matrix().get(j, i).clone())
}

/// `Im m^N` for `N` large: the stable member of the chain `Im m ⊇ Im m² ⊇ ...`.
pub fn stable_image<F: Field>(m: &Mat<F>) -> Mat<F> {
    assert_eq!(m.rows, m.cols);
    let mut img = Mat::identity(m.field().clone(), m.rows);
    loop {
        let next = reduced_column_basis(&m.dot(&img));
        if next.cols == img.cols {
            return next;
        }
        img = next;
    }
}

/// `Ker m^N` for `N` large, as the stable preimage chain
/// `0 ⊆ Ker m ⊆ m^{-1}(Ker m) ⊆ ...`.
pub fn generalized_kernel<F: Field>(m: &Mat<F>) -> Mat<F> {
    assert_eq!(m.rows, m.cols);
    let f = m.field().clone();
    let n = m.rows;
    let mut ker = Mat::zeros(f.clone(), n, 0);
    loop {
        let neg = ker.scale(&f.neg(&f.one()));
        let pairs = kernel_basis(&m.hstack(&neg));
        let pre = Mat::from_fn(f.clone(), n, pairs.len(), |i, j| pairs[j][i].clone());
        let next = reduced_column_basis(&pre);
        if next.cols == ker.cols {
            return next;
        }
        ker = next;
    }
}

pub fn is_nilpotent<F: Field>(m: &Mat<F>) -> bool {
    stable_image(m).cols == 0
}

/// Characteristic polynomial `det(x I - m)`, coefficients lowest degree first.
///
/// Reduces to upper Hessenberg form by elimination similarities, then runs the
/// standard three-term recurrence on the leading principal minors.
pub fn char_poly<F: Field>(m: &Mat<F>) -> Vector<F> {
    assert_eq!(m.rows, m.cols);
    let f = m.field().clone();
    let n = m.rows;
    let mut h = m.clone();
    for k in 1..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&i| !f.is_zero(h.get(i, k - 1))) else {
            continue;
        };
        if piv != k {
            for j in 0..n {
                h.data.swap(piv * n + j, k * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + piv, i * n + k);
            }
        }
        let pinv = f.inv(h.get(k, k - 1)).expect("pivot is nonzero");
        for i in k + 1..n {
            let u = f.mul(h.get(i, k - 1), &pinv);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let t = f.mul(&u, h.get(k, j));
                let v = f.sub(h.get(i, j), &t);
                h.set(i, j, v);
            }
            for r in 0..n {
                let t = f.mul(&u, h.get(r, i));
                let v = f.add(h.get(r, k), &t);
                h.set(r, k, v);
            }
        }
    }
    // polys[m] = char poly of the leading m x m block
    let mut polys: Vec<Vector<F>> = vec![vec![f.one()]];
    for mm in 1..=n {
        let d = mm - 1;
        // (x - h[d][d]) * p_{mm-1}
        let prev = &polys[mm - 1];
        let mut next = vec![f.zero(); mm + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], c);
            let t = f.mul(h.get(d, d), c);
            next[i] = f.sub(&next[i], &t);
        }
        let mut prod = f.one();
        for i in (0..d).rev() {
            prod = f.mul(&prod, h.get(i + 1, i));
            let coef = f.mul(&prod, h.get(i, d));
            if f.is_zero(&coef) {
                continue;
            }
            for (k, c) in polys[i].iter().enumerate() {
                let t = f.mul(&coef, c);
                next[k] = f.sub(&next[k], &t);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}
