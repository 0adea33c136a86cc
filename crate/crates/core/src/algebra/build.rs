//! Standard constructions: matrix algebras, upper triangular algebras,
//! truncated polynomial rings, products, opposites and quotients.

use std::sync::Arc;

use super::{Algebra, AlgebraMap, Shape};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat, Subspace};

fn set(table: &mut [u8], n: usize, i: usize, j: usize, k: usize, v: u8) {
    table[(i * n + j) * n + k] = v;
}

/// `M_n(F_p)` on the matrix units `e_ij`, row-major (`e_ij` has index `i n + j`).
pub fn matrix_algebra(field: Fp, n: usize) -> Result<Arc<Algebra>> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix size must be at least 1".into()));
    }
    let d = n * n;
    let mut table = vec![0u8; d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // e_ij e_jl = e_il
                set(&mut table, d, i * n + j, j * n + l, i * n + l, 1);
            }
        }
    }
    let mut unit = vec![0u8; d];
    for i in 0..n {
        unit[i * n + i] = 1;
    }
    let name = format!("M{n}(F{})", field.p());
    Algebra::with_shape(field, d, table, unit, name, Shape::Matrix(n))
}

/// The field `F_p` itself.
pub fn field(field: Fp) -> Result<Arc<Algebra>> {
    matrix_algebra(field, 1)
}

/// Upper triangular matrices on the units `e_ij`, `i <= j`, in lexicographic
/// order, together with the inclusion into `M_n(F_p)`.
pub fn upper_triangular(field: Fp, n: usize) -> Result<(Arc<Algebra>, AlgebraMap)> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix size must be at least 1".into()));
    }
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let d = units.len();
    let index = |i: usize, j: usize| units.iter().position(|&u| u == (i, j)).expect("upper unit");
    let mut table = vec![0u8; d * d * d];
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                set(&mut table, d, a, b, index(i, l), 1);
            }
        }
    }
    let mut unit = vec![0u8; d];
    for i in 0..n {
        unit[index(i, i)] = 1;
    }
    let name = format!("UT{n}(F{})", field.p());
    let ut = if n == 1 {
        matrix_algebra(field, 1)?
    } else {
        Algebra::with_shape(field, d, table, unit, name, Shape::Generic)?
    };
    let full = matrix_algebra(field, n)?;
    let mut m = Mat::zeros(field, d, n * n);
    for (a, &(i, j)) in units.iter().enumerate() {
        m.set(a, i * n + j, 1);
    }
    let inc = AlgebraMap::new(&ut, &full, m)?;
    Ok((ut, inc))
}

/// `F_p[x]/(x^n)` on the basis `1, x, ..., x^{n-1}`.
pub fn truncated_polynomial(field: Fp, n: usize) -> Result<Arc<Algebra>> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("F_p[x]/(x^0) is the zero ring".into()));
    }
    let mut table = vec![0u8; n * n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                set(&mut table, n, i, j, i + j, 1);
            }
        }
    }
    let mut unit = vec![0u8; n];
    unit[0] = 1;
    let name = format!("F{}[x]/(x^{n})", field.p());
    let shape = if n == 1 { Shape::Matrix(1) } else { Shape::Generic };
    Algebra::with_shape(field, n, table, unit, name, shape)
}

/// Direct product of the factors with componentwise operations.
pub fn product(factors: &[Arc<Algebra>]) -> Result<Arc<Algebra>> {
    let first = factors.first().ok_or_else(|| Error::InvalidAlgebra("a product needs at least one factor".into()))?;
    let field = first.field();
    for f in factors {
        if f.field() != field {
            return Err(Error::ModulusMismatch(field.p(), f.p()));
        }
    }
    let d: usize = factors.iter().map(|f| f.dim()).sum();
    let mut table = vec![0u8; d * d * d];
    let mut unit = Vec::with_capacity(d);
    let mut off = 0;
    for f in factors {
        let n = f.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, &c) in f.basis_product(i, j).iter().enumerate() {
                    set(&mut table, d, off + i, off + j, off + k, c);
                }
            }
        }
        unit.extend_from_slice(f.unit_coords());
        off += n;
    }
    let name = factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join(" x ");
    Algebra::with_shape(field, d, table, unit, name, Shape::Product(factors.to_vec()))
}

/// `A x B`.
pub fn direct_product(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    product(&[a.clone(), b.clone()])
}

/// Same basis with the product reversed.
pub fn opposite_algebra(a: &Arc<Algebra>) -> Result<Arc<Algebra>> {
    let n = a.dim();
    let mut table = vec![0u8; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for (k, &c) in a.basis_product(j, i).iter().enumerate() {
                set(&mut table, n, i, j, k, c);
            }
        }
    }
    // Matrix units stay orthogonal primitive idempotents and the radical
    // is unchanged, so the structural shortcuts remain valid.
    let shape = match a.shape() {
        Shape::Generic => Shape::Generic,
        Shape::Matrix(m) => Shape::Matrix(*m),
        Shape::Product(fs) => Shape::Product(fs.iter().map(opposite_algebra).collect::<Result<_>>()?),
    };
    let name = format!("{}^op", a.name());
    Algebra::with_shape(a.field(), n, table, a.unit_coords().to_vec(), name, shape)
}

/// `A / I` for a two-sided ideal `I`, on the basis of unit vectors outside
/// the pivot columns of `I`, with the projection.
pub fn quotient_algebra(a: &Arc<Algebra>, ideal: &Subspace) -> Result<(Arc<Algebra>, AlgebraMap)> {
    if ideal.ambient() != a.dim() {
        return Err(Error::ShapeMismatch("ideal lives in a different space".into()));
    }
    if ideal.is_full() {
        return Err(Error::InvalidAlgebra("quotient by the whole algebra is the zero ring".into()));
    }
    for v in ideal.basis().row_iter() {
        for k in 0..a.dim() {
            let bk = super::unit_vec(a.dim(), k);
            if !ideal.contains(&a.mul_coords(v, &bk)) || !ideal.contains(&a.mul_coords(&bk, v)) {
                return Err(Error::InvalidAlgebra("subspace is not a two-sided ideal".into()));
            }
        }
    }
    let comp = ideal.complement_columns();
    let d = comp.len();
    let project = |v: &[u8]| -> Vec<u8> {
        let r = ideal.reduce(v);
        comp.iter().map(|&c| r[c]).collect()
    };
    let mut table = vec![0u8; d * d * d];
    for (i, &ci) in comp.iter().enumerate() {
        for (j, &cj) in comp.iter().enumerate() {
            for (k, c) in project(a.basis_product(ci, cj)).into_iter().enumerate() {
                set(&mut table, d, i, j, k, c);
            }
        }
    }
    let unit = project(a.unit_coords());
    let q = Algebra::from_table(a.field(), d, table, unit, format!("{}/I", a.name()))?;
    let rows: Vec<Vec<u8>> = (0..a.dim()).map(|k| project(&super::unit_vec(a.dim(), k))).collect();
    let proj = AlgebraMap::new(a, &q, Mat::from_row_vecs(a.field(), d, &rows))?;
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgElement;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(matrix_algebra(f2(), 2).unwrap().dim(), 4);
        assert_eq!(matrix_algebra(f2(), 1).unwrap().dim(), 1);
        assert_eq!(matrix_algebra(Fp::new(3).unwrap(), 2).unwrap().dim(), 4);
        let (ut2, inc) = upper_triangular(f2(), 2).unwrap();
        assert_eq!(ut2.dim(), 3);
        assert_eq!(inc.target().dim(), 4);
        assert_eq!(upper_triangular(f2(), 1).unwrap().0.dim(), 1);
        assert_eq!(upper_triangular(f2(), 3).unwrap().0.dim(), 6);
    }

    #[test]
    fn products() {
        let k = field(f2()).unwrap();
        let kk = direct_product(&k, &k).unwrap();
        assert_eq!(kk.dim(), 2);
        let e0 = AlgElement::basis(&kk, 0);
        let e1 = AlgElement::basis(&kk, 1);
        assert!(e0.is_idempotent() && e1.is_idempotent());
        assert!((&e0 * &e1).is_zero());
        let m2 = matrix_algebra(f2(), 2).unwrap();
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        assert_eq!(direct_product(&m2, &ut2).unwrap().dim(), 7);
        let f3 = field(Fp::new(3).unwrap()).unwrap();
        assert!(matches!(direct_product(&k, &f3), Err(Error::ModulusMismatch(2, 3))));
    }

    #[test]
    fn opposite_examples() {
        let poly = truncated_polynomial(f2(), 3).unwrap();
        assert_eq!(*opposite_algebra(&poly).unwrap(), *poly);
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        let op = opposite_algebra(&ut2).unwrap();
        assert_eq!(*opposite_algebra(&op).unwrap(), *ut2);
        let e11 = AlgElement::basis(&op, 0);
        let e12 = AlgElement::basis(&op, 1);
        assert!((&e11 * &e12).is_zero());
        assert_eq!(&e12 * &e11, e12);
    }

    #[test]
    fn quotient_by_radical_of_ut2() {
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        let j = Subspace::span_vecs(f2(), 3, &[[0u8, 1, 0]]);
        let (q, proj) = quotient_algebra(&ut2, &j).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(proj.is_surjective());
        let not_ideal = Subspace::span_vecs(f2(), 3, &[[1u8, 0, 0]]);
        assert!(quotient_algebra(&ut2, &not_ideal).is_err());
    }
}
