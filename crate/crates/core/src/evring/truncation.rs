use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{same_ring, EvElement, EvRing};
use crate::algebra::{product, AlgElement, Algebra, AlgebraMap};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// `R_k = T^k x S`, the quotient of `R` that forgets slots beyond `k`.
pub struct TruncationRing {
    ring: Arc<EvRing>,
    k: usize,
    algebra: Arc<Algebra>,
    s_projection: AlgebraMap,
}

impl fmt::Debug for TruncationRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncationRing(k = {}, dim {})", self.k, self.algebra.dim())
    }
}

impl TruncationRing {
    pub(super) fn new(ring: &Arc<EvRing>, k: usize) -> Result<TruncationRing> {
        let mut factors = vec![ring.t().clone(); k];
        factors.push(ring.s().clone());
        let algebra = product(&factors)?;
        let (dt, ds) = (ring.t().dim(), ring.s().dim());
        let mut proj = Mat::zeros(ring.t().field(), algebra.dim(), ds);
        for j in 0..ds {
            proj.set(k * dt + j, j, 1);
        }
        let s_projection = AlgebraMap::new(&algebra, ring.s(), proj)?;
        let tr = TruncationRing { ring: ring.clone(), k, algebra, s_projection };
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        for _ in 0..16 {
            let a = EvElement::random(ring, k + 2, &mut rng);
            let b = EvElement::random(ring, k + 2, &mut rng);
            let lhs = tr.rho(&(&a * &b))?;
            let rhs = tr.algebra.mul_coords(&tr.rho(&a)?, &tr.rho(&b)?);
            if lhs != rhs {
                return Err(Error::Verification(format!("truncation to level {k} is not multiplicative")));
            }
        }
        Ok(tr)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ring(&self) -> &Arc<EvRing> {
        &self.ring
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// The projection `R_k -> S` onto the last factor.
    pub fn s_projection(&self) -> &AlgebraMap {
        &self.s_projection
    }

    /// Offset of the `S` factor in product coordinates.
    pub fn s_offset(&self) -> usize {
        self.k * self.ring.t().dim()
    }

    /// `(x_1, .., x_k, phi(x))`.
    pub fn rho(&self, a: &EvElement) -> Result<Vec<u8>> {
        if !same_ring(a.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = Vec::with_capacity(self.algebra.dim());
        for i in 1..=self.k {
            out.extend(a.slot_value(i));
        }
        out.extend_from_slice(a.tail());
        Ok(out)
    }

    pub fn rho_element(&self, a: &EvElement) -> Result<AlgElement> {
        AlgElement::new(&self.algebra, self.rho(a)?)
    }

    /// The central idempotent `1_T` in slot `i` (1-based).
    pub fn slot_idempotent(&self, i: usize) -> Vec<u8> {
        assert!((1..=self.k).contains(&i), "slot {i} outside 1..={}", self.k);
        let dt = self.ring.t().dim();
        let mut v = vec![0; self.algebra.dim()];
        v[(i - 1) * dt..i * dt].copy_from_slice(self.ring.t().unit_coords());
        v
    }

    /// The sum of all slot idempotents: the image of the ideal of finitely
    /// supported sequences is `R_k E`.
    pub fn slot_sum(&self) -> Vec<u8> {
        let f = self.algebra.field();
        let mut v = vec![0; self.algebra.dim()];
        for i in 1..=self.k {
            f.axpy(&mut v, 1, &self.slot_idempotent(i));
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::upper_triangular;
    use crate::linalg::Fp;

    fn example_ring() -> Arc<EvRing> {
        EvRing::new(upper_triangular(Fp::new(2).unwrap(), 2).unwrap().1).unwrap()
    }

    #[test]
    fn truncation_examples() {
        let r = example_ring();
        let r2 = r.truncation(2).unwrap();
        assert_eq!(r2.algebra().dim(), 11);
        assert_eq!(r2.algebra().jacobson_radical().unwrap().dim(), 1);
        assert_eq!(r2.rho(&EvElement::e(&r, 1).unwrap()).unwrap(), r2.slot_idempotent(1));
        assert_eq!(r2.rho(&EvElement::e(&r, 2).unwrap()).unwrap(), r2.slot_idempotent(2));
        assert!(r2.rho(&EvElement::e(&r, 3).unwrap()).unwrap().iter().all(|&x| x == 0));
        assert_eq!(r2.rho(&EvElement::one(&r)).unwrap(), r2.algebra().unit_coords());
        assert!(Arc::ptr_eq(&r2, &r.truncation(2).unwrap()));
        assert!(r.truncation(0).is_err());
    }
}
