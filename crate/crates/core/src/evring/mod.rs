//! The ring `R(T, S)` of sequences `(x_1, .., x_n, x, x, ..)` with `x_i` in
//! `T` and the eventual value `x` in `S`, embedded in `T` along `iota`.

mod element;
mod truncation;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub use element::{jacobson_refutation, EvElement, Refutation};
pub use truncation::TruncationRing;

use crate::algebra::{opposite_algebra, unit_vec, Algebra, AlgebraMap};
use crate::error::{Error, Result};
use crate::module::{is_projective, FdModule};

pub struct EvRing {
    t: Arc<Algebra>,
    s: Arc<Algebra>,
    iota: AlgebraMap,
    left_flat: Option<bool>,
    truncations: Mutex<BTreeMap<usize, Arc<TruncationRing>>>,
}

impl fmt::Debug for EvRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvRing(T = {}, S = {})", self.t.name(), self.s.name())
    }
}

impl EvRing {
    /// Builds `R(T, S)` from an injective unital algebra map `iota: S -> T`.
    pub fn new(iota: AlgebraMap) -> Result<Arc<EvRing>> {
        if !iota.is_injective() {
            return Err(Error::InvalidAlgebraMap("the embedding S -> T is not injective".into()));
        }
        let t = iota.target().clone();
        let s = iota.source().clone();
        let left_flat = left_flatness(&iota).ok();
        Ok(Arc::new(EvRing { t, s, iota, left_flat, truncations: Mutex::new(BTreeMap::new()) }))
    }

    pub fn t(&self) -> &Arc<Algebra> {
        &self.t
    }

    pub fn s(&self) -> &Arc<Algebra> {
        &self.s
    }

    pub fn iota(&self) -> &AlgebraMap {
        &self.iota
    }

    /// Whether `T` is projective as a left `S`-module; `None` when the test
    /// could not be run within the scan bounds.
    pub fn left_flat_cert(&self) -> Option<bool> {
        self.left_flat
    }

    pub(crate) fn embed(&self, s: &[u8]) -> Vec<u8> {
        self.iota.apply_coords(s)
    }

    /// The finite quotient `T^k x S`, cached per `k`.
    pub fn truncation(self: &Arc<Self>, k: usize) -> Result<Arc<TruncationRing>> {
        if k == 0 {
            return Err(Error::ShapeMismatch("truncation level must be at least 1".into()));
        }
        if let Some(r) = self.truncations.lock().expect("truncation cache poisoned").get(&k) {
            return Ok(r.clone());
        }
        let r = Arc::new(TruncationRing::new(self, k)?);
        self.truncations.lock().expect("truncation cache poisoned").insert(k, r.clone());
        Ok(r)
    }
}

pub(crate) fn same_ring(a: &Arc<EvRing>, b: &Arc<EvRing>) -> bool {
    Arc::ptr_eq(a, b) || (a.t == b.t && a.s == b.s && a.iota.matrix() == b.iota.matrix())
}

/// `T` as a right `S^op`-module, `t . s = iota(s) t`, tested for projectivity.
fn left_flatness(iota: &AlgebraMap) -> Result<bool> {
    let s = iota.source();
    let t = iota.target();
    let sop = opposite_algebra(s)?;
    let action = (0..s.dim()).map(|k| t.left_mul_matrix(&iota.apply_coords(&unit_vec(s.dim(), k)))).collect();
    let m = FdModule::new(&sop, t.dim(), action)?;
    is_projective(&m)
}
