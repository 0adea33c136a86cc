use std::sync::{Arc, LazyLock};

use gperfect::algebra::{field, product, truncated_polynomial, upper_triangular, Algebra};
use gperfect::linalg::{Fp, Mat};
use gperfect::module::{
    brute_small, ext1, hom_space, hom_space_naive, induce_right, is_projective, is_small, projective_cover,
    random_module, scan_right_minimal, tops_look_isomorphic, FdModule,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static ALGEBRAS: LazyLock<Vec<Arc<Algebra>>> = LazyLock::new(|| {
    let f2 = Fp::new(2).unwrap();
    let ut2 = upper_triangular(f2, 2).unwrap().0;
    vec![
        ut2.clone(),
        truncated_polynomial(f2, 3).unwrap(),
        upper_triangular(f2, 3).unwrap().0,
        product(&[truncated_polynomial(f2, 2).unwrap(), ut2]).unwrap(),
        upper_triangular(Fp::new(3).unwrap(), 2).unwrap().0,
    ]
});

/// A seeded random module of dimension `1..=cap`, or `None`.
fn module(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng, cap: usize) -> Option<Arc<FdModule>> {
    for _ in 0..32 {
        let gens = rng.gen_range(1..=2);
        let rels = rng.gen_range(0..=2 * alg.dim());
        let (m, _) = random_module(alg, gens, rels, rng).unwrap();
        if !m.is_zero() && m.dim() <= cap {
            return Some(m);
        }
    }
    None
}

fn random_vec(m: &FdModule, rng: &mut ChaCha8Rng) -> Vec<u8> {
    (0..m.dim()).map(|_| rng.gen_range(0..m.field().p())).collect()
}

/// `m` written in a random basis.
fn rebased(m: &Arc<FdModule>, rng: &mut ChaCha8Rng) -> Arc<FdModule> {
    let f = m.field();
    let n = m.dim();
    let (q, qi) = loop {
        let q = Mat::from_vec(f, n, n, (0..n * n).map(|_| rng.gen_range(0..f.p())).collect());
        if let Some(qi) = q.inverse() {
            break (q, qi);
        }
    };
    let action = m.action().iter().map(|a| q.mul(a).mul(&qi)).collect();
    FdModule::new(m.algebra(), n, action).unwrap()
}

fn case() -> impl Strategy<Value = (Arc<Algebra>, u64)> {
    (0..ALGEBRAS.len(), any::<u64>()).prop_map(|(i, s)| (ALGEBRAS[i].clone(), s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smallness_agrees_with_enumeration((alg, seed) in case()) {
        prop_assume!(alg.p() == 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(m) = module(&alg, &mut rng, 6) else { return Ok(()) };
        let x = m.generated_by(&[random_vec(&m, &mut rng)]);
        prop_assert_eq!(is_small(&x, &m).unwrap(), brute_small(&x, &m).unwrap());
        let rad = m.radical().unwrap();
        prop_assert!(brute_small(&rad, &m).unwrap());
    }

    #[test]
    fn projective_covers_have_their_defining_properties((alg, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(m) = module(&alg, &mut rng, 8) else { return Ok(()) };
        let cover = projective_cover(&m).unwrap();
        prop_assert!(cover.map.is_onto() && cover.map.is_homomorphism());
        prop_assert!(is_projective(&cover.module).unwrap());
        prop_assert!(cover.module.radical().unwrap().contains_subspace(&cover.map.kernel()));
        prop_assert_eq!(cover.module.top().unwrap().0.dim(), m.top().unwrap().0.dim());
        let min = scan_right_minimal(&cover.map, seed).unwrap();
        prop_assert!(min.minimal);
        prop_assert!(tops_look_isomorphic(&cover.module, &m).unwrap());
    }

    #[test]
    fn covers_of_isomorphic_modules_agree((alg, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(m) = module(&alg, &mut rng, 8) else { return Ok(()) };
        let m2 = rebased(&m, &mut rng);
        let (c1, c2) = (projective_cover(&m).unwrap(), projective_cover(&m2).unwrap());
        prop_assert_eq!(c1.module.dim(), c2.module.dim());
        prop_assert!(tops_look_isomorphic(&c1.module, &c2.module).unwrap());
        prop_assert_eq!(hom_space(&c1.module, &m).unwrap().len(), hom_space(&c2.module, &m2).unwrap().len());
    }

    #[test]
    fn hom_space_matches_naive((alg, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (Some(m), Some(n)) = (module(&alg, &mut rng, 5), module(&alg, &mut rng, 5)) else { return Ok(()) };
        let fast = hom_space(&m, &n).unwrap();
        let naive = hom_space_naive(&m, &n).unwrap();
        prop_assert_eq!(fast.len(), naive.len());
        for h in &fast {
            prop_assert!(h.is_homomorphism());
            prop_assert!(m.is_closed(&h.kernel()) && n.is_closed(&h.image()));
        }
        for (g, h) in fast.iter().zip(hom_space(&n, &m).unwrap().iter()) {
            prop_assert!(g.then(h).unwrap().is_homomorphism());
        }
    }

    #[test]
    fn ext_vanishes_on_projectives((alg, seed) in case()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(y) = module(&alg, &mut rng, 6) else { return Ok(()) };
        let Some(x) = module(&alg, &mut rng, 6) else { return Ok(()) };
        let p = projective_cover(&x).unwrap().module;
        prop_assert_eq!(ext1(&p, &y).unwrap(), 0);
        prop_assert_eq!(ext1(&FdModule::regular(&alg), &y).unwrap(), 0);
    }

    #[test]
    fn minimality_of_covers_is_smallness((alg, seed) in case()) {
        prop_assume!(alg.p() == 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(m) = module(&alg, &mut rng, 4) else { return Ok(()) };
        let cover = projective_cover(&m).unwrap();
        // P + e A, the extra summand mapped to zero, is a non-minimal epimorphism
        let extra = projective_cover(&m.top().unwrap().0).unwrap().module;
        let p = FdModule::direct_sum(&[cover.module.clone(), extra.clone()], &alg);
        prop_assume!(p.dim() <= 6);
        let mat = cover.map.matrix().vstack(&Mat::zeros(alg.field(), extra.dim(), m.dim()));
        let f = gperfect::module::ModuleMap::new(&p, &m, mat).unwrap();
        let minimal = scan_right_minimal(&f, seed).unwrap().minimal;
        prop_assert_eq!(minimal, brute_small(&f.kernel(), &p).unwrap());
        prop_assert!(!minimal);
    }
}

#[test]
fn induction_is_additive_and_sends_s_to_t() {
    let f2 = Fp::new(2).unwrap();
    let (ut2, iota) = upper_triangular(f2, 2).unwrap();
    let s = FdModule::regular(&ut2);
    let (st, unit) = induce_right(&s, &iota).unwrap();
    assert_eq!(st.dim(), iota.target().dim());
    assert_eq!(unit.rank(), s.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (Some(a), Some(b)) = (module(&ut2, &mut rng, 4), module(&ut2, &mut rng, 4)) else { continue };
        let sum = FdModule::direct_sum(&[a.clone(), b.clone()], &ut2);
        let d = |m: &Arc<FdModule>| induce_right(m, &iota).unwrap().0.dim();
        assert_eq!(d(&sum), d(&a) + d(&b));
    }
    let f = field(f2).unwrap();
    assert_eq!(induce_right(&FdModule::regular(&f), &gperfect::algebra::AlgebraMap::identity(&f)).unwrap().0.dim(), 1);
}
