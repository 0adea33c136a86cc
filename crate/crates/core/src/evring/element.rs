use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{same_ring, EvRing};
use crate::algebra::AlgElement;
use crate::error::{Error, Result};
use crate::linalg::all_vectors;

/// Largest family enumerated outright by [`jacobson_refutation`].
const REFUTATION_SCAN_LIMIT: u128 = 1 << 12;

/// An element of `R(T, S)`: explicit values at slots `1..=head.len()`, then
/// `iota(tail)` forever. Trailing head entries equal to `iota(tail)` are
/// trimmed, so equal elements have equal representations.
#[derive(Clone)]
pub struct EvElement {
    ring: Arc<EvRing>,
    head: Vec<Vec<u8>>,
    tail: Vec<u8>,
}

impl PartialEq for EvElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.head == other.head && self.tail == other.tail
    }
}

impl Eq for EvElement {}

impl fmt::Debug for EvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvElement(head {:?}, tail {:?})", self.head, self.tail)
    }
}

impl EvElement {
    /// From `T`-coordinates for the head and `S`-coordinates for the tail.
    pub fn new(ring: &Arc<EvRing>, head: Vec<Vec<u8>>, tail: Vec<u8>) -> Result<EvElement> {
        let (t, s) = (ring.t(), ring.s());
        let p = t.p();
        if tail.len() != s.dim() || tail.iter().any(|&x| x >= p) {
            return Err(Error::ShapeMismatch(format!("tail must be {} reduced scalars", s.dim())));
        }
        for (i, h) in head.iter().enumerate() {
            if h.len() != t.dim() || h.iter().any(|&x| x >= p) {
                return Err(Error::ShapeMismatch(format!("head entry {} must be {} reduced scalars", i + 1, t.dim())));
            }
        }
        Ok(EvElement::from_parts(ring, head, tail))
    }

    pub(crate) fn from_parts(ring: &Arc<EvRing>, mut head: Vec<Vec<u8>>, tail: Vec<u8>) -> EvElement {
        let generic = ring.embed(&tail);
        while head.last() == Some(&generic) {
            head.pop();
        }
        EvElement { ring: ring.clone(), head, tail }
    }

    pub fn from_algebra_elements(ring: &Arc<EvRing>, head: &[AlgElement], tail: &AlgElement) -> Result<EvElement> {
        let head = head.iter().map(|h| h.coords().to_vec()).collect();
        EvElement::new(ring, head, tail.coords().to_vec())
    }

    pub fn zero(ring: &Arc<EvRing>) -> EvElement {
        EvElement::from_parts(ring, Vec::new(), vec![0; ring.s().dim()])
    }

    pub fn one(ring: &Arc<EvRing>) -> EvElement {
        EvElement::from_parts(ring, Vec::new(), ring.s().unit_coords().to_vec())
    }

    /// The constant sequence `(iota(s), iota(s), ..)`.
    pub fn constant(ring: &Arc<EvRing>, s: &[u8]) -> Result<EvElement> {
        EvElement::new(ring, Vec::new(), s.to_vec())
    }

    /// `1_T` at slot `i` (1-based), zero elsewhere.
    pub fn e(ring: &Arc<EvRing>, i: usize) -> Result<EvElement> {
        EvElement::slot(ring, i, ring.t().unit_coords())
    }

    /// `t` at slot `i` (1-based), zero elsewhere.
    pub fn slot(ring: &Arc<EvRing>, i: usize, t: &[u8]) -> Result<EvElement> {
        if i == 0 {
            return Err(Error::ShapeMismatch("slots are numbered from 1".into()));
        }
        let mut head = vec![vec![0; ring.t().dim()]; i];
        head[i - 1] = t.to_vec();
        EvElement::new(ring, head, vec![0; ring.s().dim()])
    }

    pub fn ring(&self) -> &Arc<EvRing> {
        &self.ring
    }

    pub fn head(&self) -> &[Vec<u8>] {
        &self.head
    }

    pub fn tail(&self) -> &[u8] {
        &self.tail
    }

    /// Number of explicit slots; every later slot holds `iota(tail)`.
    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    /// Value at slot `i` (1-based) as `T`-coordinates.
    pub fn slot_value(&self, i: usize) -> Vec<u8> {
        assert!(i >= 1, "slots are numbered from 1");
        match self.head.get(i - 1) {
            Some(h) => h.clone(),
            None => self.ring.embed(&self.tail),
        }
    }

    /// The canonical projection to slot `i`.
    pub fn pi(&self, i: usize) -> AlgElement {
        AlgElement::new(self.ring.t(), self.slot_value(i)).expect("slot values are reduced")
    }

    /// The eventual value, a ring homomorphism onto `S`.
    pub fn phi(&self) -> AlgElement {
        AlgElement::new(self.ring.s(), self.tail.clone()).expect("tails are reduced")
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_empty() && self.tail.iter().all(|&x| x == 0)
    }

    fn check_ring(&self, other: &EvElement) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn zip(
        &self,
        other: &EvElement,
        tf: impl Fn(&[u8], &[u8]) -> Vec<u8>,
        sf: impl Fn(&[u8], &[u8]) -> Vec<u8>,
    ) -> EvElement {
        let n = self.head.len().max(other.head.len());
        let head = (1..=n).map(|i| tf(&self.slot_value(i), &other.slot_value(i))).collect();
        EvElement::from_parts(&self.ring, head, sf(&self.tail, &other.tail))
    }

    pub fn try_add(&self, other: &EvElement) -> Result<EvElement> {
        self.check_ring(other)?;
        let f = self.ring.t().field();
        let add = |a: &[u8], b: &[u8]| a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect();
        Ok(self.zip(other, add, add))
    }

    pub fn try_sub(&self, other: &EvElement) -> Result<EvElement> {
        self.check_ring(other)?;
        let f = self.ring.t().field();
        let sub = |a: &[u8], b: &[u8]| a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect();
        Ok(self.zip(other, sub, sub))
    }

    pub fn try_mul(&self, other: &EvElement) -> Result<EvElement> {
        self.check_ring(other)?;
        let (t, s) = (self.ring.t().clone(), self.ring.s().clone());
        Ok(self.zip(other, |a, b| t.mul_coords(a, b), |a, b| s.mul_coords(a, b)))
    }

    pub fn scale(&self, c: u8) -> EvElement {
        let f = self.ring.t().field();
        let sc = |v: &[u8]| v.iter().map(|&x| f.mul(x, c)).collect::<Vec<u8>>();
        EvElement::from_parts(&self.ring, self.head.iter().map(|h| sc(h)).collect(), sc(&self.tail))
    }

    /// Componentwise inverse: every head entry a unit of `T` and the tail a
    /// unit of `S`.
    pub fn try_inverse(&self) -> Option<EvElement> {
        let tail = self.phi().try_inverse()?;
        let mut head = Vec::with_capacity(self.head.len());
        for i in 1..=self.head.len() {
            head.push(self.pi(i).try_inverse()?.into_coords());
        }
        Some(EvElement::from_parts(&self.ring, head, tail.into_coords()))
    }

    pub fn is_unit(&self) -> bool {
        self.try_inverse().is_some()
    }

    /// Membership in `J(R)`: every head entry in `J(T)`, the tail in `J(S)`
    /// and its image `iota(tail)` in `J(T)`.
    pub fn in_jacobson(&self) -> Result<bool> {
        let jt = self.ring.t().jacobson_radical()?;
        let js = self.ring.s().jacobson_radical()?;
        Ok(self.head.iter().all(|h| jt.contains(h))
            && js.contains(&self.tail)
            && jt.contains(&self.ring.embed(&self.tail)))
    }

    /// Some `x` with `a x a = a`, solved slot by slot; the tail witness also
    /// serves every later slot because `iota` is multiplicative.
    pub fn regular_witness(&self) -> Option<EvElement> {
        let tail = self.phi().regular_witness()?;
        let mut head = Vec::with_capacity(self.head.len());
        for i in 1..=self.head.len() {
            head.push(self.pi(i).regular_witness()?.into_coords());
        }
        let x = EvElement::from_parts(&self.ring, head, tail.into_coords());
        debug_assert!(&(self * &x) * self == *self);
        Some(x)
    }

    /// A random element with at most `max_head` explicit slots.
    pub fn random<R: Rng>(ring: &Arc<EvRing>, max_head: usize, rng: &mut R) -> EvElement {
        let p = ring.t().p();
        let len = rng.gen_range(0..=max_head);
        let head = (0..len).map(|_| (0..ring.t().dim()).map(|_| rng.gen_range(0..p)).collect()).collect();
        let tail = (0..ring.s().dim()).map(|_| rng.gen_range(0..p)).collect();
        EvElement::from_parts(ring, head, tail)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr for &EvElement {
            type Output = EvElement;
            fn $m(self, rhs: &EvElement) -> EvElement {
                self.$f(rhs).expect("elements of different rings")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &EvElement {
    type Output = EvElement;
    fn neg(self) -> EvElement {
        self.scale(self.ring.t().field().neg(1))
    }
}

/// Outcome of a search for `b` with `1 - a b` not a unit.
#[derive(Clone, Debug)]
pub struct Refutation {
    pub witness: Option<EvElement>,
    /// Candidates tried, structured and random.
    pub tried: u64,
}

/// Looks for a proof that `a` is outside `J(R)`: some `b` with `1 - a b` not
/// invertible. Tries `b = 1`, the constants, every `t` placed at a single
/// slot up to one past the head (enumerated when small, sampled otherwise),
/// then `trials` seeded random elements.
pub fn jacobson_refutation(a: &EvElement, trials: u64, seed: u64) -> Refutation {
    let ring = a.ring();
    let one = EvElement::one(ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = 0u64;
    let test = |b: EvElement, tried: &mut u64| -> Option<EvElement> {
        *tried += 1;
        (!(&one - &(a * &b)).is_unit()).then_some(b)
    };
    let t = ring.t();
    let s = ring.s();
    let small = |dim: usize| t.field().count(dim) <= REFUTATION_SCAN_LIMIT;
    let pick = |rng: &mut ChaCha8Rng, dim: usize| -> Vec<u8> { (0..dim).map(|_| rng.gen_range(0..t.p())).collect() };

    if let Some(w) = test(one.clone(), &mut tried) {
        return Refutation { witness: Some(w), tried };
    }
    let constants: Vec<Vec<u8>> = if small(s.dim()) {
        all_vectors(s.field(), s.dim()).collect()
    } else {
        (0..256).map(|_| pick(&mut rng, s.dim())).collect()
    };
    for c in constants {
        if let Some(w) = test(EvElement::from_parts(ring, Vec::new(), c), &mut tried) {
            return Refutation { witness: Some(w), tried };
        }
    }
    for k in 1..=a.head_len() + 1 {
        let values: Vec<Vec<u8>> = if small(t.dim()) {
            all_vectors(t.field(), t.dim()).collect()
        } else {
            (0..256).map(|_| pick(&mut rng, t.dim())).collect()
        };
        for v in values {
            let b = EvElement::slot(ring, k, &v).expect("slot index is positive");
            if let Some(w) = test(b, &mut tried) {
                return Refutation { witness: Some(w), tried };
            }
        }
    }
    for _ in 0..trials {
        let b = EvElement::random(ring, a.head_len() + 2, &mut rng);
        if let Some(w) = test(b, &mut tried) {
            return Refutation { witness: Some(w), tried };
        }
    }
    Refutation { witness: None, tried }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field, upper_triangular, AlgebraMap};
    use crate::linalg::{Fp, Mat};

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    /// `R(M2(F2), UT2(F2))`.
    fn example_ring() -> Arc<EvRing> {
        EvRing::new(upper_triangular(f2(), 2).unwrap().1).unwrap()
    }

    /// `R(UT2(F2), F2 . 1)`.
    fn battery_ring() -> Arc<EvRing> {
        let (ut2, _) = upper_triangular(f2(), 2).unwrap();
        let k = field(f2()).unwrap();
        EvRing::new(AlgebraMap::new(&k, &ut2, Mat::from_rows(f2(), &[[1, 0, 1]]).unwrap()).unwrap()).unwrap()
    }

    const E12_S: [u8; 3] = [0, 1, 0];

    #[test]
    fn canonical_form() {
        let r = example_ring();
        let one_t = r.t().unit_coords().to_vec();
        let padded = EvElement::new(&r, vec![one_t.clone(), one_t], r.s().unit_coords().to_vec()).unwrap();
        assert_eq!(padded, EvElement::one(&r));
        assert_eq!(padded.head_len(), 0);
        assert!(EvElement::e(&r, 0).is_err());
        assert!(EvElement::new(&r, vec![vec![0; 3]], vec![0; 3]).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let r = example_ring();
        let e1 = EvElement::e(&r, 1).unwrap();
        let e2 = EvElement::e(&r, 2).unwrap();
        let one = EvElement::one(&r);
        assert!((&e1 * &e2).is_zero());
        assert_eq!(&(&one - &e1) + &e1, one);
        assert_eq!(&e1 * &e1, e1);
        let c = EvElement::constant(&r, &E12_S).unwrap();
        let d = EvElement::constant(&r, &[1, 1, 0]).unwrap();
        let prod = r.s().mul_coords(&E12_S, &[1, 1, 0]);
        assert_eq!(&c * &d, EvElement::constant(&r, &prod).unwrap());
        assert!(e1.phi().is_zero());
        assert!(e1.pi(1).is_one());
        assert!(e1.pi(2).is_zero());
        assert_eq!(c.pi(5).coords(), r.embed(&E12_S).as_slice());
    }

    #[test]
    fn inverses() {
        let r = example_ring();
        assert_eq!(EvElement::one(&r).try_inverse().unwrap(), EvElement::one(&r));
        assert!(EvElement::e(&r, 1).unwrap().try_inverse().is_none());
        // head 1 + e12 in M2 (coordinates e11, e12, e21, e22), tail 1
        let a = EvElement::new(&r, vec![vec![1, 1, 0, 1]], r.s().unit_coords().to_vec()).unwrap();
        let inv = a.try_inverse().unwrap();
        assert_eq!(&a * &inv, EvElement::one(&r));
    }

    #[test]
    fn jacobson_membership() {
        let r = example_ring();
        assert!(EvElement::zero(&r).in_jacobson().unwrap());
        let c = EvElement::constant(&r, &E12_S).unwrap();
        assert!(!c.in_jacobson().unwrap());
        let refuted = jacobson_refutation(&c, 100, 1);
        let b = refuted.witness.expect("constant e12 is outside J(R)");
        assert!(!(&EvElement::one(&r) - &(&c * &b)).is_unit());
        let one = jacobson_refutation(&EvElement::one(&r), 100, 1);
        assert_eq!(one.tried, 1);

        let rb = battery_ring();
        let a = EvElement::slot(&rb, 1, &E12_S).unwrap();
        assert!(a.in_jacobson().unwrap());
        assert!(jacobson_refutation(&a, 200, 3).witness.is_none());
    }

    #[test]
    fn regular_elements() {
        let r = example_ring();
        assert_eq!(EvElement::one(&r).regular_witness().unwrap(), EvElement::one(&r));
        let a = EvElement::slot(&r, 1, &[1, 0, 0, 0]).unwrap();
        let x = a.regular_witness().unwrap();
        assert_eq!(&(&a * &x) * &a, a);
        assert!(EvElement::constant(&r, &E12_S).unwrap().regular_witness().is_none());
    }
}
