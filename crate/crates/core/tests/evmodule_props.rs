use std::sync::Arc;

use gperfect::evmodule::{flat_from_parts, g_flat_cover, random_fp_module, FpRModule, PullbackModule};
use gperfect::evring::EvRing;
use gperfect::module::{ext1, random_module, restrict, FdModule};
use gperfect::scenarios::{example_ring, s1_avatar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn presented(ring: &Arc<EvRing>, seed: u64) -> Arc<FpRModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = rng.gen_range(1..=3);
    let rels = rng.gen_range(1..=3);
    random_fp_module(ring, gens, rels, 3, rng.gen())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn components_stabilize(seed in any::<u64>()) {
        let ring = example_ring().unwrap();
        let n = presented(&ring, seed);
        let s = n.stable_index();
        let base = n.component(s + 1).unwrap();
        let top = base.top().unwrap().0.dim();
        for i in s + 2..=s + 5 {
            let c = n.component(i).unwrap();
            prop_assert_eq!(c.dim(), base.dim());
            prop_assert_eq!(c.top().unwrap().0.dim(), top);
        }
    }

    #[test]
    fn truncations_split_into_components_and_tail(seed in any::<u64>()) {
        let ring = example_ring().unwrap();
        let n = presented(&ring, seed);
        let tail = n.tail_quotient().unwrap().0.dim();
        for k in 1..=n.stable_index() + 2 {
            let parts: usize = (1..=k).map(|i| n.component(i).unwrap().dim()).sum();
            prop_assert_eq!(n.truncate(k).unwrap().0.dim(), parts + tail);
        }
    }

    #[test]
    fn passing_certificates_satisfy_the_pullback_identities(seed in any::<u64>()) {
        let ring = example_ring().unwrap();
        let n = presented(&ring, seed);
        let cert = g_flat_cover(&n, 2, seed).unwrap();
        prop_assert!(cert.passing(), "{:?}", cert.checks);
        let pb = &cert.pullback;
        for &k in &cert.levels {
            let t = pb.truncation(k).unwrap();
            prop_assert_eq!(t.pi1.kernel().dim(), pb.x.dim());
            prop_assert_eq!(t.l_prime.dim(), n.truncate(k).unwrap().0.dim() + pb.x.dim());
            prop_assert!(t.pi1.is_onto() && t.pi2.is_onto());
            let comps: Vec<Arc<FdModule>> = (1..=k).map(|i| n.component(i).unwrap()).collect();
            prop_assert!(flat_from_parts(&ring, &pb.l, &comps).unwrap());
        }
    }

    #[test]
    fn ext_over_truncations_matches_ext_over_s(seed in any::<u64>()) {
        let ring = example_ring().unwrap();
        let s = ring.s();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| {
            let gens = rng.gen_range(1..=2);
            let rels = rng.gen_range(0..=4);
            random_module(s, gens, rels, rng).unwrap().0
        };
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        prop_assume!(!x.is_zero() && !y.is_zero());
        let over_s = ext1(&x, &y).unwrap();
        for k in 1..=2 {
            let rk = ring.truncation(k).unwrap();
            let xk = restrict(&x, rk.s_projection()).unwrap();
            let yk = restrict(&y, rk.s_projection()).unwrap();
            prop_assert_eq!(ext1(&xk, &yk).unwrap(), over_s);
        }
    }
}

#[test]
fn s_is_flat_with_zero_components() {
    let ring = example_ring().unwrap();
    let zero = FdModule::zero(ring.t());
    assert!(flat_from_parts(&ring, &FdModule::regular(ring.s()), &[zero]).unwrap());
}

#[test]
fn avatar_pullback_is_built_from_the_cover() {
    let ring = example_ring().unwrap();
    let pb = PullbackModule::from_cover(&s1_avatar(&ring).unwrap()).unwrap();
    assert!(pb.g.is_onto() && pb.g.kernel() == pb.x);
    assert!(pb.truncation(2).unwrap().commutes());
    assert_eq!((pb.v.dim(), pb.l.dim(), pb.x.dim()), (1, 2, 1));
}
