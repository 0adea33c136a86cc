//! Pullbacks of module maps with a common target.

use std::sync::Arc;

use super::{FdModule, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};

/// `P = {(x, y) in A + B : f(x) = g(y)}` for `f: A -> C`, `g: B -> C`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: Arc<FdModule>,
    pub pi1: ModuleMap,
    pub pi2: ModuleMap,
    /// `P` inside `A + B`.
    pub inside: Subspace,
}

impl Pullback {
    pub fn new(f: &ModuleMap, g: &ModuleMap) -> Result<Pullback> {
        if !Arc::ptr_eq(f.target(), g.target()) && f.target().action() != g.target().action() {
            return Err(Error::InvalidModuleMap("pullback of maps with different targets".into()));
        }
        let (a, b) = (f.source(), g.source());
        let fp = a.field();
        let sum = FdModule::direct_sum(&[a.clone(), b.clone()], a.algebra());
        let h = f.matrix().vstack(&g.matrix().scaled(fp.neg(1)));
        let inside = Subspace::span(&h.left_kernel());
        let (module, inc) = sum.submodule(&inside)?;
        let first: Vec<usize> = (0..a.dim()).collect();
        let second: Vec<usize> = (a.dim()..a.dim() + b.dim()).collect();
        let pi1 = ModuleMap::new_unchecked(&module, a, inc.matrix().select_cols(&first));
        let pi2 = ModuleMap::new_unchecked(&module, b, inc.matrix().select_cols(&second));
        Ok(Pullback { module, pi1, pi2, inside })
    }

    /// Coordinates in `P` of a vector `(x, y)` known to lie in it.
    pub fn coords(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let w: Vec<u8> = x.iter().chain(y).copied().collect();
        debug_assert!(self.inside.contains(&w));
        self.inside.pivots().iter().map(|&c| w[c]).collect()
    }

    /// `u -> (u, 0)` for `u` in the kernel of `f`, given by its inclusion.
    pub fn first_inclusion(&self, inc: &ModuleMap) -> Result<ModuleMap> {
        let zero = vec![0u8; self.pi2.target().dim()];
        let rows: Vec<Vec<u8>> = inc.matrix().row_iter().map(|x| self.coords(x, &zero)).collect();
        ModuleMap::new(inc.source(), &self.module, Mat::from_row_vecs(self.module.field(), self.module.dim(), &rows))
    }

    /// `v -> (0, v)` for `v` in the kernel of `g`, given by its inclusion.
    pub fn second_inclusion(&self, inc: &ModuleMap) -> Result<ModuleMap> {
        let zero = vec![0u8; self.pi1.target().dim()];
        let rows: Vec<Vec<u8>> = inc.matrix().row_iter().map(|y| self.coords(&zero, y)).collect();
        ModuleMap::new(inc.source(), &self.module, Mat::from_row_vecs(self.module.field(), self.module.dim(), &rows))
    }
}
