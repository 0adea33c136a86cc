//! The pullback of `N -> N/NI` along a cover `L -> N/NI`, realized on the
//! finite truncations `T^k x S`.

use std::sync::Arc;

use super::FpRModule;
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::evring::TruncationRing;
use crate::linalg::{Mat, Subspace};
use crate::module::{descend, projective_cover, restrict, FdModule, ModuleMap, Pullback};

/// `L' = {(x, y) in N + L : f(x) = g(y)}` for `f: N -> V = N/NI` and an
/// epimorphism `g: L -> V` of `S`-modules with kernel `X`.
#[derive(Clone, Debug)]
pub struct PullbackModule {
    pub n: Arc<FpRModule>,
    /// The tail quotient `V`.
    pub v: Arc<FdModule>,
    /// `S^m -> V`, generator `i` to the class of generator `i`.
    pub v_projection: ModuleMap,
    pub l: Arc<FdModule>,
    pub g: ModuleMap,
    /// `ker g` inside `L`.
    pub x: Subspace,
}

/// The pullback over `R_k`, where `V` and `L` are restricted along the
/// projection `R_k -> S`.
#[derive(Clone, Debug)]
pub struct TruncatedPullback {
    pub ring: Arc<TruncationRing>,
    pub n_k: Arc<FdModule>,
    pub v_k: Arc<FdModule>,
    pub l_k: Arc<FdModule>,
    pub f_k: ModuleMap,
    pub g_k: ModuleMap,
    pub l_prime: Arc<FdModule>,
    pub pi1: ModuleMap,
    pub pi2: ModuleMap,
    /// `ker f_k`, the torsion part `N_k E`.
    pub m_k: Arc<FdModule>,
    pub eps1: ModuleMap,
    pub x_k: Arc<FdModule>,
    pub eps2: ModuleMap,
}

impl PullbackModule {
    /// The pullback along the projective cover of the tail quotient.
    pub fn from_cover(n: &Arc<FpRModule>) -> Result<PullbackModule> {
        let (v, _) = n.tail_quotient()?;
        let cover = projective_cover(&v)?;
        PullbackModule::with_precover(n, cover.map)
    }

    /// The pullback along any epimorphism `g: L -> N/NI`.
    pub fn with_precover(n: &Arc<FpRModule>, g: ModuleMap) -> Result<PullbackModule> {
        let (v, v_projection) = n.tail_quotient()?;
        if g.target().dim() != v.dim() || !same_algebra(g.target().algebra(), v.algebra()) {
            return Err(Error::InvalidModuleMap("precover does not land in the tail quotient".into()));
        }
        if g.target().action() != v.action() {
            return Err(Error::InvalidModuleMap("precover target differs from the tail quotient".into()));
        }
        let g = ModuleMap::new(g.source(), &v, g.matrix().clone())?;
        if !g.is_onto() {
            return Err(Error::InvalidModuleMap("precover is not onto".into()));
        }
        let x = g.kernel();
        Ok(PullbackModule { n: n.clone(), v, v_projection, l: g.source().clone(), g, x })
    }

    /// The same construction with `L` replaced by `L + extra`, mapping
    /// `extra` to zero: a precover that is never minimal when `extra != 0`.
    pub fn with_extra_summand(&self, extra: &Arc<FdModule>) -> Result<PullbackModule> {
        let l = FdModule::direct_sum(&[self.l.clone(), extra.clone()], self.l.algebra());
        let m = self.g.matrix().vstack(&Mat::zeros(self.l.field(), extra.dim(), self.v.dim()));
        PullbackModule::with_precover(&self.n, ModuleMap::new(&l, &self.v, m)?)
    }

    pub fn truncation(&self, k: usize) -> Result<TruncatedPullback> {
        let ring = self.n.ring().truncation(k)?;
        let alg = ring.algebra();
        let s = ring.ring().s();
        let (n_k, q_k) = self.n.truncate(k)?;
        let proj = ring.s_projection();
        let v_k = restrict(&self.v, proj)?;
        let l_k = restrict(&self.l, proj)?;
        let f = self.n.ring().t().field();

        // R_k^m -> S^m keeps the S-block of each generator
        let (dr, ds, m) = (alg.dim(), s.dim(), self.n.gens());
        let mut free_to_s = Mat::zeros(f, m * dr, m * ds);
        for r in 0..m {
            for j in 0..ds {
                free_to_s.set(r * dr + ring.s_offset() + j, r * ds + j, 1);
            }
        }
        let f_mat = descend(q_k.matrix(), &free_to_s, self.v_projection.matrix())?;
        let f_k = ModuleMap::new(&n_k, &v_k, f_mat)?;
        let g_k = ModuleMap::new(&l_k, &v_k, self.g.matrix().clone())?;

        let pb = Pullback::new(&f_k, &g_k)?;
        let (m_k, m_inc) = f_k.kernel_module()?;
        let eps1 = pb.first_inclusion(&m_inc)?;
        let (x_k, x_inc) = l_k.submodule(&self.x)?;
        let eps2 = pb.second_inclusion(&x_inc)?;
        let Pullback { module: l_prime, pi1, pi2, .. } = pb;
        Ok(TruncatedPullback { ring, n_k, v_k, l_k, f_k, g_k, l_prime, pi1, pi2, m_k, eps1, x_k, eps2 })
    }
}

impl TruncatedPullback {
    /// `pi1 f = pi2 g` on every basis vector of `L'`.
    pub fn commutes(&self) -> bool {
        self.pi1.matrix().mul(self.f_k.matrix()) == self.pi2.matrix().mul(self.g_k.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::upper_triangular;
    use crate::evmodule::EvMatrix;
    use crate::evring::{EvElement, EvRing};
    use crate::linalg::Fp;

    fn example_ring() -> Arc<EvRing> {
        EvRing::new(upper_triangular(Fp::new(2).unwrap(), 2).unwrap().1).unwrap()
    }

    #[test]
    fn free_module_pullback_is_trivial() {
        let r = example_ring();
        let pb = PullbackModule::from_cover(&FpRModule::free(&r, 1)).unwrap();
        assert_eq!((pb.v.dim(), pb.l.dim(), pb.x.dim()), (3, 3, 0));
        for k in 1..4 {
            let t = pb.truncation(k).unwrap();
            assert!(t.pi1.is_bijective());
            assert!(t.commutes());
        }
    }

    #[test]
    fn s1_avatar_pullback() {
        let r = example_ring();
        let c = |s: &[u8]| EvElement::constant(&r, s).unwrap();
        let n = FpRModule::new(EvMatrix::from_rows(&r, vec![vec![c(&[0, 1, 0]), c(&[0, 0, 1])]]).unwrap());
        let pb = PullbackModule::from_cover(&n).unwrap();
        assert_eq!((pb.v.dim(), pb.l.dim(), pb.x.dim()), (1, 2, 1));
        assert!(pb.l.radical().unwrap().contains_subspace(&pb.x));
        for k in 1..4 {
            let t = pb.truncation(k).unwrap();
            assert_eq!(t.l_prime.dim(), t.n_k.dim() + pb.x.dim());
            assert_eq!(t.l_prime.dim(), 2);
            assert!(t.commutes());
            assert!(t.pi1.is_onto());
            assert_eq!(t.pi1.kernel(), t.eps2.image());
        }
        let bad = pb.with_extra_summand(&FdModule::regular(r.s())).unwrap();
        assert_eq!(bad.x.dim(), 4);
    }
}
