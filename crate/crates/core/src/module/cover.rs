//! Projective covers, smallness, right minimality and `Ext^1`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::{family_rank, hom_space};
use super::{FdModule, ModuleMap};
use crate::algebra::{primitive_idempotents, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, EchelonBuilder, Mat, Subspace};
use crate::oracle::all_subspaces;
use crate::verdict::Mode;

/// Largest endomorphism family scanned exhaustively by
/// [`scan_right_minimal`]; larger families are sampled.
pub const MINIMALITY_EXHAUSTIVE_LIMIT: u128 = 1 << 12;
/// Number of random endomorphisms tried when sampling.
pub const MINIMALITY_SAMPLES: u64 = 10_000;

/// An indecomposable projective `eA`, one per isomorphism class.
struct Pim {
    idem: Vec<u8>,
    module: Arc<FdModule>,
    /// Module basis as algebra elements.
    basis: Mat,
    /// `dim S e` for the simple top `S`.
    top_rank: usize,
}

fn pims(alg: &Arc<Algebra>) -> Result<Vec<Pim>> {
    let reg = FdModule::regular(alg);
    let mut out: Vec<(Pim, Arc<FdModule>)> = Vec::new();
    for e in primitive_idempotents(alg)? {
        let e = e.into_coords();
        // a simple top S_j is killed by e unless e A has the same top
        if out.iter().any(|(_, s)| !s.action_of(&e).is_zero()) {
            continue;
        }
        let sub = Subspace::span(&alg.left_mul_matrix(&e));
        let (module, _) = reg.submodule(&sub)?;
        let (simple, _) = module.top()?;
        let top_rank = simple.action_of(&e).rank();
        out.push((Pim { idem: e, module, basis: sub.basis().clone(), top_rank }, simple));
    }
    Ok(out.into_iter().map(|(p, _)| p).collect())
}

/// A projective cover `P -> M` with `P` a sum of indecomposable projectives.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: Arc<FdModule>,
    pub map: ModuleMap,
    /// Idempotent generating each summand `eA`, in order.
    pub summands: Vec<Vec<u8>>,
}

/// A projective cover of `m`, with its three defining properties checked:
/// the map is onto, its kernel lies in `rad P`, and `P` and `M` have tops of
/// equal dimension.
pub fn projective_cover(m: &Arc<FdModule>) -> Result<ProjectiveCover> {
    let alg = m.algebra();
    let rad = m.radical()?;
    let (top, _) = m.top()?;
    let mut span = EchelonBuilder::new(m.field(), m.dim());
    for r in rad.basis().row_iter() {
        span.insert(r);
    }
    let mut parts = Vec::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut summands = Vec::new();
    for pim in pims(alg)? {
        let top_e = top.action_of(&pim.idem).rank();
        if top_e % pim.top_rank != 0 {
            return Err(Error::Verification("top is not a sum of simples".into()));
        }
        let mult = top_e / pim.top_rank;
        let me = m.action_of(&pim.idem);
        let mut chosen = 0;
        for v in me.row_iter() {
            if chosen == mult {
                break;
            }
            if span.contains(v) {
                continue;
            }
            for a in m.action() {
                span.insert(&a.apply(v));
            }
            for u in pim.basis.row_iter() {
                rows.push(m.act(v, u));
            }
            parts.push(pim.module.clone());
            summands.push(pim.idem.clone());
            chosen += 1;
        }
        if chosen < mult {
            return Err(Error::Verification("could not choose generators for the top".into()));
        }
    }
    let module = FdModule::direct_sum(&parts, alg);
    let map = ModuleMap::new_unchecked(&module, m, Mat::from_row_vecs(m.field(), m.dim(), &rows));
    debug_assert!(map.is_homomorphism());
    if !map.is_onto() {
        return Err(Error::Verification("cover map is not onto".into()));
    }
    if !module.radical()?.contains_subspace(&map.kernel()) {
        return Err(Error::Verification("cover kernel is not small".into()));
    }
    if module.top()?.0.dim() != top.dim() {
        return Err(Error::Verification("cover top differs from the module top".into()));
    }
    Ok(ProjectiveCover { module, map, summands })
}

/// `M` is projective iff its projective cover is an isomorphism.
pub fn is_projective(m: &Arc<FdModule>) -> Result<bool> {
    Ok(projective_cover(m)?.module.dim() == m.dim())
}

/// Whether the submodule `x` of `m` is small: `x + U = M` forces `U = M`.
/// For finite-dimensional modules this is `x` inside `rad M`.
pub fn is_small(x: &Subspace, m: &FdModule) -> Result<bool> {
    Ok(m.radical()?.contains_subspace(x))
}

/// Every submodule of `m`, by filtering all subspaces. Needs a tiny module.
pub fn all_submodules(m: &FdModule) -> Result<Vec<Subspace>> {
    let p = m.field().p() as u32;
    let n = m.dim();
    let bits = (n * n / 4) as u32;
    let estimate = (p as u128).checked_pow(bits).unwrap_or(u128::MAX).saturating_mul(n as u128 + 1);
    if estimate > 1 << 16 {
        return Err(Error::GuardExceeded(format!("submodule enumeration of a {n}-dimensional module over F{p}")));
    }
    Ok(all_subspaces(m.field(), n).into_iter().map(|b| Subspace::span(&b)).filter(|s| m.is_closed(s)).collect())
}

/// Smallness of `x` from the definition, over every submodule of `m`.
/// Only for `F_2` and dimension at most 6.
pub fn brute_small(x: &Subspace, m: &FdModule) -> Result<bool> {
    if m.field().p() != 2 || m.dim() > 6 {
        return Err(Error::GuardExceeded(format!(
            "brute-force smallness needs F2 and dimension <= 6, got F{} and {}",
            m.field().p(),
            m.dim()
        )));
    }
    if !m.is_closed(x) {
        return Err(Error::InvalidModule("subspace is not a submodule".into()));
    }
    Ok(all_submodules(m)?.iter().all(|u| u.is_full() || !x.sum(u).is_full()))
}

/// Outcome of a right-minimality test.
#[derive(Clone, Debug)]
pub struct Minimality {
    pub minimal: bool,
    pub mode: Mode,
    /// Endomorphisms examined (zero for a proven verdict).
    pub checked: u64,
    pub seed: Option<u64>,
    /// A non-invertible `h` with `h f = f`, when one was found.
    pub witness: Option<Mat>,
}

/// Whether `f` is right minimal: every `h` with `h f = f` is invertible.
///
/// An epimorphism from a projective module is right minimal exactly when its
/// kernel is small; that case is decided outright. Otherwise the
/// endomorphisms `1 + k`, `k` with image in `ker f`, are scanned.
pub fn is_right_minimal(f: &ModuleMap, seed: u64) -> Result<Minimality> {
    if f.is_onto() && is_projective(f.source())? {
        let minimal = is_small(&f.kernel(), f.source())?;
        return Ok(Minimality { minimal, mode: Mode::Proven, checked: 0, seed: None, witness: None });
    }
    scan_right_minimal(f, seed)
}

/// The endomorphism scan behind [`is_right_minimal`], exhaustive up to
/// [`MINIMALITY_EXHAUSTIVE_LIMIT`] candidates and sampled beyond.
pub fn scan_right_minimal(f: &ModuleMap, seed: u64) -> Result<Minimality> {
    let src = f.source();
    let fp = src.field();
    let (ker, inc) = f.kernel_module()?;
    let homs: Vec<Mat> = if ker.is_zero() {
        Vec::new()
    } else {
        hom_space(src, &ker)?.into_iter().map(|h| h.matrix().clone()).collect()
    };
    // 1 + k is the identity on src / ker f, so it is invertible exactly when
    // its restriction 1 + k|ker to ker f is
    let on_ker: Vec<Mat> = homs.iter().map(|h| inc.matrix().mul(h)).collect();
    let id_ker = Mat::identity(fp, ker.dim());
    let combine = |base: &Mat, parts: &[Mat], c: &[u8]| -> Mat {
        let mut h = base.clone();
        for (k, &x) in parts.iter().zip(c) {
            if x != 0 {
                h.axpy(x, k);
            }
        }
        h
    };
    let witness = |c: &[u8]| -> Mat {
        let full: Vec<Mat> = homs.iter().map(|h| h.mul(inc.matrix())).collect();
        combine(&Mat::identity(fp, src.dim()), &full, c)
    };
    let check = |c: &[u8]| -> Option<Mat> { (combine(&id_ker, &on_ker, c).rank() < ker.dim()).then(|| witness(c)) };
    let family = &homs;
    let total = fp.count(family.len());
    if total <= MINIMALITY_EXHAUSTIVE_LIMIT {
        let mut checked = 0;
        for c in all_vectors(fp, family.len()) {
            checked += 1;
            if let Some(h) = check(&c) {
                return Ok(Minimality {
                    minimal: false,
                    mode: Mode::Exhaustive,
                    checked,
                    seed: None,
                    witness: Some(h),
                });
            }
        }
        return Ok(Minimality { minimal: true, mode: Mode::Exhaustive, checked, seed: None, witness: None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=MINIMALITY_SAMPLES {
        let c: Vec<u8> = (0..family.len()).map(|_| rng.gen_range(0..fp.p())).collect();
        if let Some(h) = check(&c) {
            return Ok(Minimality {
                minimal: false,
                mode: Mode::Sampled,
                checked: t,
                seed: Some(seed),
                witness: Some(h),
            });
        }
    }
    Ok(Minimality { minimal: true, mode: Mode::Sampled, checked: MINIMALITY_SAMPLES, seed: Some(seed), witness: None })
}

/// `dim Ext^1(X, Y)`, from `0 -> K -> P -> X` with `P` a projective cover:
/// the cokernel of `Hom(P, Y) -> Hom(K, Y)`.
pub fn ext1(x: &Arc<FdModule>, y: &Arc<FdModule>) -> Result<usize> {
    let cover = projective_cover(x)?;
    let (k, inc) = cover.map.kernel_module()?;
    let hom_ky = hom_space(&k, y)?.len();
    if hom_ky == 0 {
        return Ok(0);
    }
    let restricted: Vec<Mat> = hom_space(&cover.module, y)?.iter().map(|h| inc.matrix().mul(h.matrix())).collect();
    Ok(hom_ky - family_rank(&restricted))
}

/// Whether `X` and `Y` have isomorphic tops. Tops are semisimple, so this is
/// `dim Hom(tX, tY) = dim End(tX) = dim End(tY)`.
pub fn tops_look_isomorphic(x: &Arc<FdModule>, y: &Arc<FdModule>) -> Result<bool> {
    let (tx, _) = x.top()?;
    let (ty, _) = y.top()?;
    if tx.dim() != ty.dim() {
        return Ok(false);
    }
    let hxy = hom_space(&tx, &ty)?.len();
    Ok(hxy == hom_space(&tx, &tx)?.len() && hxy == hom_space(&ty, &ty)?.len())
}
