//! Finite-dimensional associative unital algebras over `F_p`, given by
//! structure constants on a fixed basis `b_0, ..., b_{n-1}`.

mod build;
mod idempotent;
mod radical;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

pub use build::{
    direct_product, field, matrix_algebra, opposite_algebra, product, quotient_algebra, truncated_polynomial,
    upper_triangular,
};
pub use idempotent::{primitive_idempotents, primitive_idempotents_bounded};
pub use radical::{ideal_product, is_nilpotent_ideal, two_sided_ideal, AlgebraExt};

use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat, Subspace, MAX_DIM};

/// Default bound on the number of elements an exhaustive scan may visit.
pub const DEFAULT_SCAN_BOUND: u128 = 1 << 20;

/// Structural knowledge used by the radical and idempotent shortcuts.
#[derive(Clone, Debug)]
pub enum Shape {
    Generic,
    /// Full matrix algebra `M_n(F_p)` on matrix units, row-major.
    Matrix(usize),
    /// Direct product of the factors, coordinates concatenated in order.
    Product(Vec<Arc<Algebra>>),
}

pub struct Algebra {
    field: Fp,
    dim: usize,
    /// `table[(i * dim + j) * dim + k]` is the `b_k` coordinate of `b_i b_j`.
    table: Vec<u8>,
    unit: Vec<u8>,
    shape: Shape,
    name: String,
    radical: OnceLock<Subspace>,
    primitives: OnceLock<Vec<Vec<u8>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.dim)
    }
}

/// Structural equality: same field, dimension, table and unit.
impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.unit == other.unit && self.table == other.table
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Builds an algebra from structure constants, checking associativity on
    /// all basis triples and the two-sided unit law on every basis vector.
    pub fn from_table(
        field: Fp,
        dim: usize,
        table: Vec<u8>,
        unit: Vec<u8>,
        name: impl Into<String>,
    ) -> Result<Arc<Algebra>> {
        Self::with_shape(field, dim, table, unit, name.into(), Shape::Generic)
    }

    pub(crate) fn with_shape(
        field: Fp,
        dim: usize,
        table: Vec<u8>,
        unit: Vec<u8>,
        name: String,
        shape: Shape,
    ) -> Result<Arc<Algebra>> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("algebras must be unital with dimension at least 1".into()));
        }
        if dim > MAX_DIM {
            return Err(Error::DimensionCap { dim, cap: MAX_DIM });
        }
        if table.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants and a unit of length {dim}",
                dim * dim * dim
            )));
        }
        if table.iter().chain(&unit).any(|&x| x >= field.p()) {
            return Err(Error::InvalidAlgebra(format!("entries must be reduced mod {}", field.p())));
        }
        let alg =
            Algebra { field, dim, table, unit, shape, name, radical: OnceLock::new(), primitives: OnceLock::new() };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        let basis: Vec<Vec<u8>> = (0..n).map(|i| unit_vec(n, i)).collect();
        for (i, bi) in basis.iter().enumerate() {
            if self.mul_coords(&self.unit, bi) != *bi || self.mul_coords(bi, &self.unit) != *bi {
                return Err(Error::InvalidAlgebra(format!("unit law fails on basis vector {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let bij = self.basis_product(i, j);
                for l in 0..n {
                    let left = self.mul_coords(bij, &basis[l]);
                    let right = self.mul_coords(&basis[i], self.basis_product(j, l));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({i}, {j}, {l})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.field.p()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn unit_coords(&self) -> &[u8] {
        &self.unit
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Coordinates of `b_i b_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[u8] {
        let n = self.dim;
        &self.table[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Bilinear product on coordinate vectors.
    pub fn mul_coords(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let n = self.dim;
        let f = self.field;
        let mut out = vec![0; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                f.axpy(&mut out, f.mul(ai, bj), self.basis_product(i, j));
            }
        }
        out
    }

    /// Matrix `L` with `coords(a x) = coords(x) L`.
    pub fn left_mul_matrix(&self, a: &[u8]) -> Mat {
        let rows: Vec<Vec<u8>> = (0..self.dim).map(|k| self.mul_coords(a, &unit_vec(self.dim, k))).collect();
        Mat::from_row_vecs(self.field, self.dim, &rows)
    }

    /// Matrix `R` with `coords(x a) = coords(x) R`; the action of `a` on
    /// the right regular module.
    pub fn right_mul_matrix(&self, a: &[u8]) -> Mat {
        let rows: Vec<Vec<u8>> = (0..self.dim).map(|k| self.mul_coords(&unit_vec(self.dim, k), a)).collect();
        Mat::from_row_vecs(self.field, self.dim, &rows)
    }

    /// Same table without structural shortcuts, forcing the generic
    /// (exhaustive) code paths.
    pub fn forget_structure(&self) -> Arc<Algebra> {
        Arc::new(Algebra {
            field: self.field,
            dim: self.dim,
            table: self.table.clone(),
            unit: self.unit.clone(),
            shape: Shape::Generic,
            name: format!("{} (generic)", self.name),
            radical: OnceLock::new(),
            primitives: OnceLock::new(),
        })
    }

    pub(crate) fn radical_cache(&self) -> &OnceLock<Subspace> {
        &self.radical
    }

    pub(crate) fn primitives_cache(&self) -> &OnceLock<Vec<Vec<u8>>> {
        &self.primitives
    }

    /// Offsets of the factors when `self` is a product.
    pub fn factor_offsets(&self) -> Option<Vec<usize>> {
        match &self.shape {
            Shape::Product(fs) => {
                let mut acc = 0;
                Some(
                    fs.iter()
                        .map(|f| {
                            let o = acc;
                            acc += f.dim();
                            o
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }
}

pub(crate) fn unit_vec(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of an [`Algebra`].
#[derive(Clone)]
pub struct AlgElement {
    alg: Arc<Algebra>,
    coords: Vec<u8>,
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && same_algebra(&self.alg, &other.alg)
    }
}

impl Eq for AlgElement {}

impl AlgElement {
    pub fn new(alg: &Arc<Algebra>, coords: Vec<u8>) -> Result<AlgElement> {
        if coords.len() != alg.dim() {
            return Err(Error::ShapeMismatch(format!(
                "element has {} coordinates, algebra has dimension {}",
                coords.len(),
                alg.dim()
            )));
        }
        if coords.iter().any(|&x| x >= alg.p()) {
            return Err(Error::InvalidAlgebra("coordinates must be reduced".into()));
        }
        Ok(AlgElement { alg: alg.clone(), coords })
    }

    pub(crate) fn from_coords(alg: &Arc<Algebra>, coords: Vec<u8>) -> AlgElement {
        debug_assert_eq!(coords.len(), alg.dim());
        AlgElement { alg: alg.clone(), coords }
    }

    pub fn from_ints(alg: &Arc<Algebra>, coords: &[i64]) -> Result<AlgElement> {
        let f = alg.field();
        AlgElement::new(alg, coords.iter().map(|&x| f.reduce(x)).collect())
    }

    pub fn zero(alg: &Arc<Algebra>) -> AlgElement {
        AlgElement { alg: alg.clone(), coords: vec![0; alg.dim()] }
    }

    pub fn one(alg: &Arc<Algebra>) -> AlgElement {
        AlgElement { alg: alg.clone(), coords: alg.unit.clone() }
    }

    pub fn basis(alg: &Arc<Algebra>, i: usize) -> AlgElement {
        AlgElement { alg: alg.clone(), coords: unit_vec(alg.dim(), i) }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u8> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords == self.alg.unit
    }

    fn check(&self, other: &AlgElement) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check(other)?;
        let mut c = self.coords.clone();
        self.alg.field.axpy(&mut c, 1, &other.coords);
        Ok(AlgElement { alg: self.alg.clone(), coords: c })
    }

    pub fn try_sub(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check(other)?;
        let f = self.alg.field;
        let mut c = self.coords.clone();
        f.axpy(&mut c, f.neg(1), &other.coords);
        Ok(AlgElement { alg: self.alg.clone(), coords: c })
    }

    pub fn try_mul(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check(other)?;
        Ok(AlgElement { alg: self.alg.clone(), coords: self.alg.mul_coords(&self.coords, &other.coords) })
    }

    pub fn scale(&self, c: u8) -> AlgElement {
        let mut coords = self.coords.clone();
        self.alg.field.scale(&mut coords, c % self.alg.p());
        AlgElement { alg: self.alg.clone(), coords }
    }

    pub fn pow(&self, mut e: u32) -> AlgElement {
        let mut acc = AlgElement::one(&self.alg);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        self.alg.mul_coords(&self.coords, &self.coords) == self.coords
    }

    /// Two-sided inverse, found by solving `a x = 1` and checking `x a = 1`.
    pub fn try_inverse(&self) -> Option<AlgElement> {
        let l = self.alg.left_mul_matrix(&self.coords);
        let x = l.solve_left(&self.alg.unit).expect("square system")?;
        let x = AlgElement { alg: self.alg.clone(), coords: x };
        (&x * self).is_one().then_some(x)
    }

    pub fn is_unit(&self) -> bool {
        self.try_inverse().is_some()
    }

    /// Some `x` with `a x a = a`, found by solving the linear system in `x`.
    pub fn regular_witness(&self) -> Option<AlgElement> {
        let n = self.alg.dim();
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|k| self.alg.mul_coords(&self.alg.mul_coords(&self.coords, &unit_vec(n, k)), &self.coords))
            .collect();
        let m = Mat::from_row_vecs(self.alg.field, n, &rows);
        let x = m.solve_left(&self.coords).expect("square system")?;
        Some(AlgElement { alg: self.alg.clone(), coords: x })
    }
}

impl<'a> Add for &'a AlgElement {
    type Output = AlgElement;
    /// Panics when the operands live in different algebras.
    fn add(self, rhs: &'a AlgElement) -> AlgElement {
        self.try_add(rhs).expect("algebra mismatch")
    }
}

impl<'a> Sub for &'a AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &'a AlgElement) -> AlgElement {
        self.try_sub(rhs).expect("algebra mismatch")
    }
}

impl<'a> Mul for &'a AlgElement {
    type Output = AlgElement;
    fn mul(self, rhs: &'a AlgElement) -> AlgElement {
        self.try_mul(rhs).expect("algebra mismatch")
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        self.scale(self.alg.field.neg(1))
    }
}

/// A unital algebra homomorphism, stored as the matrix sending basis
/// coordinates of the source to coordinates of the target (row convention).
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: Mat,
}

impl AlgebraMap {
    /// Checks unit preservation and multiplicativity on every basis pair.
    pub fn new(source: &Arc<Algebra>, target: &Arc<Algebra>, matrix: Mat) -> Result<AlgebraMap> {
        if source.field() != target.field() {
            return Err(Error::ModulusMismatch(source.p(), target.p()));
        }
        if matrix.rows() != source.dim() || matrix.cols() != target.dim() {
            return Err(Error::InvalidAlgebraMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let map = AlgebraMap { source: source.clone(), target: target.clone(), matrix };
        if map.apply_coords(source.unit_coords()) != target.unit_coords() {
            return Err(Error::InvalidAlgebraMap("unit is not preserved".into()));
        }
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = map.apply_coords(source.basis_product(i, j));
                let rhs = target.mul_coords(map.matrix.row(i), map.matrix.row(j));
                if lhs != rhs {
                    return Err(Error::InvalidAlgebraMap(format!("not multiplicative on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(alg: &Arc<Algebra>) -> AlgebraMap {
        AlgebraMap { source: alg.clone(), target: alg.clone(), matrix: Mat::identity(alg.field(), alg.dim()) }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply_coords(&self, a: &[u8]) -> Vec<u8> {
        self.matrix.apply(a)
    }

    pub fn apply(&self, a: &AlgElement) -> Result<AlgElement> {
        if !same_algebra(a.algebra(), &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AlgElement::from_coords(&self.target, self.apply_coords(a.coords())))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &AlgebraMap) -> Result<AlgebraMap> {
        if !same_algebra(&self.target, &next.source) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AlgebraMap {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: self.matrix.mul(&next.matrix),
        })
    }
}
