use std::sync::{Arc, LazyLock};

use gperfect::algebra::{
    direct_product, is_nilpotent_ideal, primitive_idempotents, AlgElement, Algebra, AlgebraExt as _,
};
use gperfect::linalg::all_vectors;
use gperfect::scenarios::radical_battery;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static BATTERY: LazyLock<Vec<Arc<Algebra>>> = LazyLock::new(|| radical_battery().unwrap());

fn random(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> AlgElement {
    AlgElement::new(alg, (0..alg.dim()).map(|_| rng.gen_range(0..alg.p())).collect()).unwrap()
}

fn algebra() -> impl Strategy<Value = Arc<Algebra>> {
    (0..BATTERY.len()).prop_map(|i| BATTERY[i].clone())
}

proptest! {
    #[test]
    fn ring_axioms(alg in algebra(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random(&alg, &mut rng), random(&alg, &mut rng), random(&alg, &mut rng));
        let one = AlgElement::one(&alg);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&one * &a, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn units_are_regular(alg in algebra(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random(&alg, &mut rng);
        if let Some(inv) = a.try_inverse() {
            prop_assert!((&a * &inv).is_one() && (&inv * &a).is_one());
            prop_assert!(a.regular_witness().is_some());
        }
        if let Some(x) = a.regular_witness() {
            prop_assert_eq!(&(&a * &x) * &a, a.clone());
        }
    }

    #[test]
    fn radical_of_products_splits(i in 0..7usize, j in 0..7usize) {
        let (a, b) = (&BATTERY[i], &BATTERY[j]);
        prop_assume!(a.p() == b.p());
        let ab = direct_product(a, b).unwrap();
        let direct = ab.forget_structure().jacobson_radical().unwrap();
        prop_assert_eq!(&direct, &ab.jacobson_radical().unwrap());
        prop_assert_eq!(direct.dim(), a.jacobson_radical().unwrap().dim() + b.jacobson_radical().unwrap().dim());
    }
}

#[test]
fn radicals_are_nilpotent_with_semiprimitive_quotient() {
    for alg in BATTERY.iter() {
        let j = alg.jacobson_radical().unwrap();
        assert!(is_nilpotent_ideal(alg, &j), "{}", alg.name());
        if let Some((q, _)) = alg.radical_quotient().unwrap() {
            assert!(q.jacobson_radical().unwrap().is_zero(), "{}", alg.name());
            assert_eq!(q.dim() + j.dim(), alg.dim());
        }
    }
}

#[test]
fn von_neumann_regular_iff_every_element_has_a_witness() {
    for alg in BATTERY.iter().filter(|a| a.field().count(a.dim()) <= 1 << 10) {
        let all =
            all_vectors(alg.field(), alg.dim()).all(|v| AlgElement::new(alg, v).unwrap().regular_witness().is_some());
        assert_eq!(alg.is_von_neumann_regular().unwrap(), all, "{}", alg.name());
    }
}

#[test]
fn primitive_idempotents_are_complete_and_orthogonal() {
    for alg in BATTERY.iter() {
        let es = primitive_idempotents(alg).unwrap();
        let mut sum = AlgElement::zero(alg);
        for (i, e) in es.iter().enumerate() {
            assert!(e.is_idempotent() && !e.is_zero(), "{}", alg.name());
            for (k, f) in es.iter().enumerate() {
                if i != k {
                    assert!((e * f).is_zero(), "{}", alg.name());
                }
            }
            sum = &sum + e;
        }
        assert!(sum.is_one(), "{}", alg.name());
        assert_eq!(primitive_idempotents(alg).unwrap().len(), es.len());
    }
}
