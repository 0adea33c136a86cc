//! Dense linear algebra over small prime fields.
//!
//! Vectors are row vectors throughout the crate: a linear map `V -> W` is a
//! `dim V x dim W` matrix acting on the right, so composition "first `f`,
//! then `g`" is the product `F * G`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest algebra or module dimension accepted by the constructors.
pub const MAX_DIM: usize = 512;

/// A prime field `F_p` with `p` in `{2, 3, 5, 7}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u8,
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.p)
    }
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        match p {
            2 | 3 | 5 | 7 => Ok(Fp { p: p as u8 }),
            _ => Err(Error::UnsupportedPrime(p)),
        }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && a < self.p);
        (1..self.p).find(|&x| self.mul(a, x) == 1).expect("nonzero element of a prime field")
    }

    /// `dst += c * src`, entrywise.
    #[inline]
    pub fn axpy(self, dst: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        if self.p == 2 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
        } else {
            let p = self.p as u16;
            for (d, s) in dst.iter_mut().zip(src) {
                *d = ((*d as u16 + c as u16 * *s as u16) % p) as u8;
            }
        }
    }

    #[inline]
    pub fn scale(self, v: &mut [u8], c: u8) {
        if c == 1 {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Number of vectors in `F_p^n`, saturating.
    pub fn count(self, n: usize) -> u128 {
        (self.p as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
    }
}

/// An element of a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    value: u8,
    field: Fp,
}

impl Scalar {
    pub fn new(field: Fp, value: i64) -> Self {
        Scalar { value: field.reduce(value), field }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn field(self) -> Fp {
        self.field
    }

    pub fn inv(self) -> Option<Scalar> {
        (self.value != 0).then(|| Scalar { value: self.field.inv(self.value), field: self.field })
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.field, rhs.field, "modulus mismatch");
        Scalar { value: self.field.add(self.value, rhs.value), field: self.field }
    }
}

impl std::ops::Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.field, rhs.field, "modulus mismatch");
        Scalar { value: self.field.sub(self.value, rhs.value), field: self.field }
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        assert_eq!(self.field, rhs.field, "modulus mismatch");
        Scalar { value: self.field.mul(self.value, rhs.value), field: self.field }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { value: self.field.neg(self.value), field: self.field }
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(field: Fp, rows: &[R]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("ragged rows: expected {cols} entries, found {}", r.len())));
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(Mat { field, rows: rows.len(), cols, data })
    }

    /// Wraps already-reduced data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u8>) -> Mat {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        debug_assert!(data.iter().all(|&x| x < field.p()));
        Mat { field, rows, cols, data }
    }

    /// Matrix whose rows are the given vectors, all of length `cols`.
    pub fn from_row_vecs<V: AsRef<[u8]>>(field: Fp, cols: usize, vecs: &[V]) -> Mat {
        let mut data = Vec::with_capacity(vecs.len() * cols);
        for v in vecs {
            let v = v.as_ref();
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        Mat { field, rows: vecs.len(), cols, data }
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.field.p());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u8] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == (r == c) as u8))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let (lhs, dst) = (self.row(r), &mut out.data[r * other.cols..(r + 1) * other.cols]);
            for (k, &c) in lhs.iter().enumerate() {
                if c != 0 {
                    self.field.axpy(dst, c, other.row(k));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows, "vector length does not match matrix rows");
        let mut out = vec![0; self.cols];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                self.field.axpy(&mut out, c, self.row(k));
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        let m1 = self.field.neg(1);
        self.field.axpy(&mut out.data, m1, &other.data);
        out
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: u8, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn scaled(&self, c: u8) -> Mat {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Mat { field: self.field, rows: self.rows, cols, data }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
        }
        for r in 0..other.rows {
            out.row_mut(self.rows + r)[self.cols..].copy_from_slice(other.row(r));
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let rows: Vec<&[u8]> = idx.iter().map(|&i| self.row(i)).collect();
        Mat::from_row_vecs(self.field, self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Canonical reduced row-echelon form. Zero rows are dropped.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            f.scale(m.row_mut(r), inv);
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let x = m.get(i, c);
                    if x != 0 {
                        f.axpy(m.row_mut(i), f.neg(x), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis (reduced echelon rows) of the row space.
    pub fn row_basis(&self) -> Mat {
        self.rref().mat
    }

    /// Some `x` with `A x = b` (column convention), free variables set to 0.
    pub fn solve(&self, b: &[u8]) -> Result<Option<Vec<u8>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: matrix has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let bcol = Mat::from_vec(self.field, self.rows, 1, b.to_vec());
        let Rref { mat, pivots } = self.hstack(&bcol).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = mat.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Some row vector `x` with `x A = b`.
    pub fn solve_left(&self, b: &[u8]) -> Result<Option<Vec<u8>>> {
        self.transpose().solve(b)
    }

    /// Basis (as rows) of `{x : A x = 0}`, one vector per free column of the
    /// reduced form, with a 1 in that column.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field;
        let Rref { mat, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(mat.get(r, fc)));
            }
        }
        out
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let Rref { mat, pivots } = self.hstack(&Mat::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(mat.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// Basis of `{v : v A = 0}`.
    pub fn left_kernel(&self) -> Mat {
        self.transpose().kernel_basis()
    }
}

/// A subspace of `F_p^n` stored as a canonical reduced echelon basis.
///
/// Equality of subspaces is equality of this representation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, n: usize) -> Subspace {
        Subspace { basis: Mat::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: Fp, n: usize) -> Subspace {
        Subspace { basis: Mat::identity(field, n), pivots: (0..n).collect() }
    }

    /// Span of the rows of `m`.
    pub fn span(m: &Mat) -> Subspace {
        let Rref { mat, pivots } = m.rref();
        Subspace { basis: mat, pivots }
    }

    pub fn span_vecs<V: AsRef<[u8]>>(field: Fp, n: usize, vecs: &[V]) -> Subspace {
        Subspace::span(&Mat::from_row_vecs(field, n, vecs))
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Residue of `v` modulo the subspace: zero at every pivot column.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            let x = out[c];
            if x != 0 {
                f.axpy(&mut out, f.neg(x), self.basis.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.row_iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // a U = b W  <=>  (a, -b) in left kernel of [U; W] after negation
        let stacked = self.basis.vstack(&other.basis.scaled(self.field().neg(1)));
        let k = stacked.left_kernel();
        let coeffs = k.select_cols(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::span(&coeffs.mul(&self.basis))
    }

    /// Columns not used as pivots; their unit vectors span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image of the subspace under the linear map `m`.
    pub fn image(&self, m: &Mat) -> Subspace {
        Subspace::span(&self.basis.mul(m))
    }
}

/// Incrementally built semi-echelon basis, for fast membership tests while
/// a span grows one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: Fp,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: Fp, n: usize) -> Self {
        EchelonBuilder { field, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let x = out[p];
            if x != 0 {
                f.axpy(&mut out, f.neg(x), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(r[p]);
        self.field.scale(&mut r, inv);
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::span_vecs(self.field, self.n, &self.rows)
    }
}

/// Iterates over every vector of `F_p^n` in lexicographic order.
pub fn all_vectors(field: Fp, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let p = field.p();
    let mut cur = Some(vec![0u8; n]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = n;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < p {
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// All linear combinations of the rows of `basis`.
pub fn span_elements(basis: &Mat) -> impl Iterator<Item = Vec<u8>> + '_ {
    all_vectors(basis.field(), basis.rows()).map(move |c| basis.apply(&c))
}
