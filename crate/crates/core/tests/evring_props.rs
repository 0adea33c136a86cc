use std::sync::Arc;

use gperfect::algebra::{field, upper_triangular, AlgebraMap};
use gperfect::evring::{jacobson_refutation, EvElement, EvRing};
use gperfect::linalg::{Fp, Mat};
use gperfect::scenarios::example_ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `R(UT2(F2), F2)`: the only ring here with a nonzero radical.
fn scalar_ring() -> Arc<EvRing> {
    let f2 = Fp::new(2).unwrap();
    let ut2 = upper_triangular(f2, 2).unwrap().0;
    let k = field(f2).unwrap();
    let unit = Mat::from_row_vecs(f2, ut2.dim(), &[ut2.unit_coords()]);
    EvRing::new(AlgebraMap::new(&k, &ut2, unit).unwrap()).unwrap()
}

fn rings() -> Vec<Arc<EvRing>> {
    vec![example_ring().unwrap(), scalar_ring()]
}

/// A random element of `J(R)` for the scalar ring: heads in `span{e12}`.
fn radical_element(ring: &Arc<EvRing>, rng: &mut ChaCha8Rng) -> EvElement {
    let len = rng.gen_range(0..5);
    let head = (0..len).map(|_| vec![0, rng.gen_range(0..2), 0]).collect();
    EvElement::new(ring, head, vec![0]).unwrap()
}

#[test]
fn ring_axioms_on_ten_thousand_triples() {
    for ring in rings() {
        let one = EvElement::one(&ring);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let a = EvElement::random(&ring, 4, &mut rng);
            let b = EvElement::random(&ring, 4, &mut rng);
            let c = EvElement::random(&ring, 4, &mut rng);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            assert_eq!(&one * &a, a);
            assert_eq!(&a * &one, a);
            assert!((&a + &-&a).is_zero());
        }
    }
}

#[test]
fn slot_idempotents_and_sections() {
    let ring = example_ring().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let es: Vec<EvElement> = (1..=4).map(|i| EvElement::e(&ring, i).unwrap()).collect();
    for (i, e) in es.iter().enumerate() {
        assert_eq!(&(e * e), e);
        for (j, f) in es.iter().enumerate() {
            if i != j {
                assert!((e * f).is_zero());
            }
        }
        for _ in 0..200 {
            let a = EvElement::random(&ring, 6, &mut rng);
            assert_eq!(&(e * &a), &(&a * e));
        }
    }
    for _ in 0..200 {
        let s: Vec<u8> = (0..ring.s().dim()).map(|_| rng.gen_range(0..2)).collect();
        assert_eq!(EvElement::constant(&ring, &s).unwrap().phi().coords(), &s[..]);
        let t: Vec<u8> = (0..ring.t().dim()).map(|_| rng.gen_range(0..2)).collect();
        let i = rng.gen_range(1..6);
        assert_eq!(EvElement::slot(&ring, i, &t).unwrap().pi(i).coords(), &t[..]);
    }
}

#[test]
fn radical_is_an_ideal_and_refutation_is_sound() {
    let ring = scalar_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..300 {
        let a = radical_element(&ring, &mut rng);
        let b = radical_element(&ring, &mut rng);
        let r = EvElement::random(&ring, 5, &mut rng);
        assert!(a.in_jacobson().unwrap() && b.in_jacobson().unwrap());
        assert!((&a + &b).in_jacobson().unwrap());
        assert!((&r * &a).in_jacobson().unwrap());
        assert!((&a * &r).in_jacobson().unwrap());
        assert!(!(&a + &EvElement::one(&ring)).in_jacobson().unwrap());
        let refutation = jacobson_refutation(&a, 30, trial);
        assert!(refutation.witness.is_none(), "{a:?} refuted by {:?}", refutation.witness);
    }
}

#[test]
fn nonzero_radical_elements_are_refuted_when_the_radical_is_zero() {
    let ring = example_ring().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..300 {
        let a = EvElement::random(&ring, 4, &mut rng);
        let member = a.in_jacobson().unwrap();
        assert_eq!(member, a.is_zero());
        if !member {
            assert!(jacobson_refutation(&a, 100, trial).witness.is_some(), "{a:?}");
        }
    }
}

#[test]
fn radical_elements_meet_the_finite_part() {
    // every nonzero a in J(R) has a nonzero multiple a e(i) in the direct sum
    let ring = scalar_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let a = radical_element(&ring, &mut rng);
        assert!(a.in_jacobson().unwrap());
        if a.is_zero() {
            continue;
        }
        let hit = (1..=a.head_len()).map(|i| &a * &EvElement::e(&ring, i).unwrap()).find(|x| !x.is_zero());
        let x = hit.expect("a nonzero element has a nonzero slot");
        assert!(x.in_jacobson().unwrap() && x.tail().iter().all(|&v| v == 0));
    }
}

#[test]
fn units_are_exactly_the_componentwise_units() {
    for ring in rings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let a = EvElement::random(&ring, 4, &mut rng);
            let componentwise = a.phi().is_unit() && (1..=a.head_len()).all(|i| a.pi(i).is_unit());
            match a.try_inverse() {
                Some(inv) => {
                    assert!(componentwise);
                    assert_eq!(&a * &inv, EvElement::one(&ring));
                    assert_eq!(&inv * &a, EvElement::one(&ring));
                }
                None => assert!(!componentwise),
            }
        }
    }
}

#[test]
fn truncations_are_surjective_homomorphisms() {
    let ring = example_ring().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 1..=3 {
        let rk = ring.truncation(k).unwrap();
        assert_eq!(rk.algebra().dim(), k * ring.t().dim() + ring.s().dim());
        assert_eq!(rk.rho(&EvElement::one(&ring)).unwrap(), rk.algebra().unit_coords());
        for _ in 0..500 {
            let a = EvElement::random(&ring, 5, &mut rng);
            let b = EvElement::random(&ring, 5, &mut rng);
            let (ra, rb) = (rk.rho_element(&a).unwrap(), rk.rho_element(&b).unwrap());
            assert_eq!(rk.rho_element(&(&a * &b)).unwrap(), &ra * &rb);
            assert_eq!(rk.rho_element(&(&a + &b)).unwrap(), &ra + &rb);
        }
        // every element of T^k x S is hit by a head of length k
        for _ in 0..200 {
            let v: Vec<u8> = (0..rk.algebra().dim()).map(|_| rng.gen_range(0..2)).collect();
            let dt = ring.t().dim();
            let head = (0..k).map(|i| v[i * dt..(i + 1) * dt].to_vec()).collect();
            let a = EvElement::new(&ring, head, v[k * dt..].to_vec()).unwrap();
            assert_eq!(rk.rho(&a).unwrap(), v);
        }
    }
}
