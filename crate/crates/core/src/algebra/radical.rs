//! Jacobson radical, nilpotent ideals and von Neumann regularity.

use std::sync::Arc;

use super::{unit_vec, AlgElement, Algebra, Shape, DEFAULT_SCAN_BOUND};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Subspace};

/// Two-sided ideal generated by the given vectors.
pub fn two_sided_ideal(alg: &Algebra, gens: &Subspace) -> Subspace {
    let n = alg.dim();
    let mut cur = gens.clone();
    loop {
        let mut rows: Vec<Vec<u8>> = cur.basis().row_iter().map(|r| r.to_vec()).collect();
        for v in cur.basis().row_iter() {
            for k in 0..n {
                let bk = unit_vec(n, k);
                rows.push(alg.mul_coords(&bk, v));
                rows.push(alg.mul_coords(v, &bk));
            }
        }
        let next = Subspace::span_vecs(alg.field(), n, &rows);
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// Span of all products `x y` with `x` in `a`, `y` in `b`.
pub fn ideal_product(alg: &Algebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut rows = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis().row_iter() {
        for y in b.basis().row_iter() {
            rows.push(alg.mul_coords(x, y));
        }
    }
    Subspace::span_vecs(alg.field(), alg.dim(), &rows)
}

/// Whether the two-sided ideal generated by `v` is nilpotent.
pub fn is_nilpotent_ideal(alg: &Algebra, v: &Subspace) -> bool {
    let ideal = two_sided_ideal(alg, v);
    let mut power = ideal.clone();
    for _ in 0..=alg.dim() {
        if power.is_zero() {
            return true;
        }
        let next = ideal_product(alg, &power, &ideal);
        if next == power {
            return false;
        }
        power = next;
    }
    power.is_zero()
}

impl Algebra {
    /// The Jacobson radical, using the default scan bound.
    pub fn jacobson_radical(&self) -> Result<Subspace> {
        self.jacobson_radical_bounded(DEFAULT_SCAN_BOUND)
    }

    /// The Jacobson radical: the largest nilpotent two-sided ideal.
    ///
    /// Matrix algebras are semisimple and products split factorwise. Other
    /// algebras are scanned: `x` lies in the radical iff the ideal it
    /// generates is nilpotent.
    pub fn jacobson_radical_bounded(&self, bound: u128) -> Result<Subspace> {
        if let Some(j) = self.radical_cache().get() {
            return Ok(j.clone());
        }
        let j = match self.shape() {
            Shape::Matrix(_) => Subspace::zero(self.field(), self.dim()),
            Shape::Product(factors) => {
                let mut rows: Vec<Vec<u8>> = Vec::new();
                let mut off = 0;
                for f in factors {
                    let jf = f.jacobson_radical_bounded(bound)?;
                    for r in jf.basis().row_iter() {
                        let mut v = vec![0; self.dim()];
                        v[off..off + f.dim()].copy_from_slice(r);
                        rows.push(v);
                    }
                    off += f.dim();
                }
                Subspace::span_vecs(self.field(), self.dim(), &rows)
            }
            Shape::Generic => self.radical_by_scan(bound)?,
        };
        let _ = self.radical_cache().set(j.clone());
        Ok(j)
    }

    fn radical_by_scan(&self, bound: u128) -> Result<Subspace> {
        let needed = self.field().count(self.dim());
        if needed > bound {
            return Err(Error::ScanBoundExceeded { needed, bound });
        }
        let mut j = Subspace::zero(self.field(), self.dim());
        for x in all_vectors(self.field(), self.dim()) {
            if j.contains(&x) {
                continue;
            }
            let gen = Subspace::span_vecs(self.field(), self.dim(), &[x]);
            if is_nilpotent_ideal(self, &gen) {
                j = j.sum(&two_sided_ideal(self, &gen));
            }
        }
        Ok(j)
    }

    /// For finite-dimensional algebras, von Neumann regular iff semisimple.
    pub fn is_von_neumann_regular(&self) -> Result<bool> {
        Ok(self.jacobson_radical()?.is_zero())
    }

    pub fn is_semiprimitive(&self) -> Result<bool> {
        self.is_von_neumann_regular()
    }
}

/// Extension methods that need the shared handle.
pub trait AlgebraExt {
    fn radical_quotient(&self) -> Result<Option<(Arc<Algebra>, super::AlgebraMap)>>;
}

impl AlgebraExt for Arc<Algebra> {
    /// `A / J(A)`, or `None` when the radical is zero.
    fn radical_quotient(&self) -> Result<Option<(Arc<Algebra>, super::AlgebraMap)>> {
        let j = self.jacobson_radical()?;
        if j.is_zero() {
            return Ok(None);
        }
        super::quotient_algebra(self, &j).map(Some)
    }
}

impl AlgElement {
    pub fn in_radical(&self) -> Result<bool> {
        Ok(self.algebra().jacobson_radical()?.contains(self.coords()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, matrix_algebra, truncated_polynomial, upper_triangular};
    use crate::linalg::Fp;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn radical_examples() {
        let m2 = matrix_algebra(f2(), 2).unwrap();
        assert!(m2.jacobson_radical().unwrap().is_zero());
        assert!(m2.forget_structure().jacobson_radical().unwrap().is_zero());
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        let j = ut2.jacobson_radical().unwrap();
        assert_eq!(j, Subspace::span_vecs(f2(), 3, &[[0u8, 1, 0]]));
        let dual = truncated_polynomial(f2(), 2).unwrap();
        assert_eq!(dual.jacobson_radical().unwrap(), Subspace::span_vecs(f2(), 2, &[[0u8, 1]]));
    }

    #[test]
    fn scan_bound_is_enforced() {
        let ut3 = upper_triangular(f2(), 3).unwrap().0;
        let err = ut3.forget_structure().jacobson_radical_bounded(32).unwrap_err();
        assert!(matches!(err, Error::ScanBoundExceeded { needed: 64, bound: 32 }));
    }

    #[test]
    fn product_shortcut_matches_scan() {
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        let poly = truncated_polynomial(f2(), 3).unwrap();
        let prod = direct_product(&ut2, &poly).unwrap();
        let shortcut = prod.jacobson_radical().unwrap();
        let scanned = prod.forget_structure().jacobson_radical().unwrap();
        assert_eq!(shortcut, scanned);
        assert_eq!(shortcut.dim(), 3);
    }

    #[test]
    fn nilpotent_ideal_examples() {
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        assert!(is_nilpotent_ideal(&ut2, &Subspace::zero(f2(), 3)));
        assert!(is_nilpotent_ideal(&ut2, &Subspace::span_vecs(f2(), 3, &[[0u8, 1, 0]])));
        assert!(!is_nilpotent_ideal(&ut2, &Subspace::full(f2(), 3)));
    }

    #[test]
    fn von_neumann_regularity() {
        assert!(matrix_algebra(f2(), 2).unwrap().is_von_neumann_regular().unwrap());
        assert!(!upper_triangular(f2(), 2).unwrap().0.is_von_neumann_regular().unwrap());
        assert!(matrix_algebra(f2(), 1).unwrap().is_von_neumann_regular().unwrap());
    }

    #[test]
    fn regular_witnesses() {
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        let e11 = AlgElement::basis(&ut2, 0);
        let w = e11.regular_witness().unwrap();
        assert_eq!(&(&e11 * &w) * &e11, e11);
        assert!(AlgElement::basis(&ut2, 1).regular_witness().is_none());
        let m2 = matrix_algebra(f2(), 2).unwrap();
        for v in all_vectors(f2(), 4) {
            let a = AlgElement::new(&m2, v).unwrap();
            let x = a.regular_witness().expect("semisimple algebras are regular");
            assert_eq!(&(&a * &x) * &a, a);
        }
    }

    #[test]
    fn quotient_by_radical_is_semiprimitive() {
        let ut3 = upper_triangular(f2(), 3).unwrap().0;
        let (q, _) = ut3.radical_quotient().unwrap().unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.jacobson_radical().unwrap().is_zero());
    }
}
