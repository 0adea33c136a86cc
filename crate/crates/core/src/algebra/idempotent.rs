//! Idempotent lifting and complete sets of primitive idempotents.

use std::sync::Arc;

use super::{AlgElement, Algebra, Shape, DEFAULT_SCAN_BOUND};
use crate::error::{Error, Result};
use crate::linalg::{span_elements, Subspace};

impl AlgElement {
    /// Lifts `self`, idempotent modulo the nilpotent ideal `n`, to an
    /// idempotent `e` with `e - self` in `n` by iterating `t -> 3t^2 - 2t^3`.
    ///
    /// The iteration stays in the commutative subalgebra generated by `self`,
    /// so it works in every characteristic.
    pub fn lift_idempotent(&self, n: &Subspace) -> Result<AlgElement> {
        let alg = self.algebra();
        if n.ambient() != alg.dim() {
            return Err(Error::ShapeMismatch("ideal lives in a different space".into()));
        }
        let sq = self * self;
        if !n.contains((&sq - self).coords()) {
            return Err(Error::Verification("element is not idempotent modulo the ideal".into()));
        }
        let f = alg.field();
        let three = f.reduce(3);
        let two = f.reduce(2);
        let mut t = self.clone();
        for _ in 0..=alg.dim() {
            let t2 = &t * &t;
            if t2 == t {
                if !n.contains((&t - self).coords()) {
                    return Err(Error::Verification("lift left the coset".into()));
                }
                return Ok(t);
            }
            let t3 = &t2 * &t;
            t = &t2.scale(three) - &t3.scale(two);
        }
        Err(Error::LiftFailed(alg.dim()))
    }
}

impl Algebra {
    /// The corner `e A e` as a subspace.
    pub fn corner(&self, e: &[u8]) -> Subspace {
        let n = self.dim();
        let rows: Vec<Vec<u8>> =
            (0..n).map(|k| self.mul_coords(&self.mul_coords(e, &super::unit_vec(n, k)), e)).collect();
        Subspace::span_vecs(self.field(), n, &rows)
    }

    /// Some idempotent of `e A e` other than `0` and `e`, found by
    /// exhaustive scan of the corner.
    fn split_idempotent(&self, e: &[u8], bound: u128) -> Result<Option<Vec<u8>>> {
        let corner = self.corner(e);
        let needed = self.field().count(corner.dim());
        if needed > bound {
            return Err(Error::ScanBoundExceeded { needed, bound });
        }
        for x in span_elements(corner.basis()) {
            if x.iter().all(|&c| c == 0) || x == e {
                continue;
            }
            if self.mul_coords(&x, &x) == x {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// Whether `e` is a primitive idempotent, by scanning `e A e`.
    pub fn is_primitive_idempotent(&self, e: &[u8], bound: u128) -> Result<bool> {
        if e.iter().all(|&c| c == 0) || self.mul_coords(e, e) != e {
            return Ok(false);
        }
        Ok(self.split_idempotent(e, bound)?.is_none())
    }

    fn primitives_raw(&self, bound: u128) -> Result<Vec<Vec<u8>>> {
        if let Some(v) = self.primitives_cache().get() {
            return Ok(v.clone());
        }
        let n = self.dim();
        let out = match self.shape() {
            Shape::Matrix(m) => (0..*m).map(|i| super::unit_vec(n, i * m + i)).collect(),
            Shape::Product(factors) => {
                let mut out = Vec::new();
                let mut off = 0;
                for f in factors {
                    for e in f.primitives_raw(bound)? {
                        let mut v = vec![0; n];
                        v[off..off + f.dim()].copy_from_slice(&e);
                        out.push(v);
                    }
                    off += f.dim();
                }
                out
            }
            Shape::Generic => {
                let mut done = Vec::new();
                let mut stack = vec![self.unit_coords().to_vec()];
                while let Some(e) = stack.pop() {
                    match self.split_idempotent(&e, bound)? {
                        None => done.push(e),
                        Some(f) => {
                            let mut rest = e.clone();
                            self.field().axpy(&mut rest, self.field().neg(1), &f);
                            stack.push(rest);
                            stack.push(f);
                        }
                    }
                }
                done
            }
        };
        let _ = self.primitives_cache().set(out.clone());
        Ok(out)
    }
}

/// Complete set of pairwise orthogonal primitive idempotents summing to 1.
///
/// Matrix algebras and products use their known idempotents; everything
/// else is split recursively by scanning corners. Every returned idempotent
/// is re-checked for primitivity when its corner is within the scan bound.
pub fn primitive_idempotents(alg: &Arc<Algebra>) -> Result<Vec<AlgElement>> {
    primitive_idempotents_bounded(alg, DEFAULT_SCAN_BOUND)
}

pub fn primitive_idempotents_bounded(alg: &Arc<Algebra>, bound: u128) -> Result<Vec<AlgElement>> {
    let raw = alg.primitives_raw(bound)?;
    let f = alg.field();
    let mut sum = vec![0; alg.dim()];
    for (i, e) in raw.iter().enumerate() {
        f.axpy(&mut sum, 1, e);
        for (j, g) in raw.iter().enumerate() {
            let prod = alg.mul_coords(e, g);
            let expected = if i == j { e.clone() } else { vec![0; alg.dim()] };
            if prod != expected {
                return Err(Error::Verification(format!("idempotents {i} and {j} are not orthogonal")));
            }
        }
        let corner = alg.corner(e);
        if f.count(corner.dim()) <= bound && !alg.is_primitive_idempotent(e, bound)? {
            return Err(Error::Verification(format!("idempotent {i} is not primitive")));
        }
    }
    if sum != alg.unit_coords() {
        return Err(Error::Verification("idempotents do not sum to 1".into()));
    }
    Ok(raw.into_iter().map(|e| AlgElement::from_coords(alg, e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field, matrix_algebra, truncated_polynomial, upper_triangular};
    use crate::linalg::Fp;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn lifting_examples() {
        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        let j = ut2.jacobson_radical().unwrap();
        let e11 = AlgElement::basis(&ut2, 0);
        assert_eq!(e11.lift_idempotent(&j).unwrap(), e11);
        let t = AlgElement::from_ints(&ut2, &[1, 1, 0]).unwrap();
        assert_eq!(t.lift_idempotent(&j).unwrap(), t);

        let cubic = truncated_polynomial(f2(), 3).unwrap();
        let n = cubic.jacobson_radical().unwrap();
        let t = AlgElement::from_ints(&cubic, &[1, 1, 0]).unwrap();
        assert_eq!(t.lift_idempotent(&n).unwrap(), AlgElement::one(&cubic));
    }

    #[test]
    fn lifting_rejects_non_idempotent_class() {
        let cubic = truncated_polynomial(Fp::new(3).unwrap(), 3).unwrap();
        let n = cubic.jacobson_radical().unwrap();
        let two = AlgElement::from_ints(&cubic, &[2, 0, 0]).unwrap();
        assert!(two.lift_idempotent(&n).is_err());
    }

    #[test]
    fn primitive_sets() {
        let k = field(f2()).unwrap();
        let ps = primitive_idempotents(&k).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].is_one());

        let ut2 = upper_triangular(f2(), 2).unwrap().0;
        assert_eq!(primitive_idempotents(&ut2).unwrap().len(), 2);

        let m2 = matrix_algebra(f2(), 2).unwrap().forget_structure();
        let ps = primitive_idempotents(&m2).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(!m2.is_primitive_idempotent(m2.unit_coords(), DEFAULT_SCAN_BOUND).unwrap());
    }
}
