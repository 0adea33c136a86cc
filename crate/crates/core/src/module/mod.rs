//! Finite-dimensional right modules over an [`Algebra`].
//!
//! A module of dimension `m` stores one `m x m` action matrix per algebra
//! basis vector; with row vectors, `v . a = v * rho(a)` and
//! `rho(ab) = rho(a) rho(b)`.

mod change;
mod cover;
mod hom;
mod pullback;

use std::fmt;
use std::sync::Arc;

pub use change::{induce_right, random_module, restrict};
pub use cover::{
    all_submodules, brute_small, ext1, is_projective, is_right_minimal, is_small, projective_cover, scan_right_minimal,
    tops_look_isomorphic, Minimality, ProjectiveCover, MINIMALITY_EXHAUSTIVE_LIMIT, MINIMALITY_SAMPLES,
};
pub(crate) use hom::family_rank;
pub use hom::{hom_space, hom_space_naive};
pub use pullback::Pullback;

use crate::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, Fp, Mat, Subspace, MAX_DIM};

pub struct FdModule {
    alg: Arc<Algebra>,
    dim: usize,
    action: Vec<Mat>,
}

impl fmt::Debug for FdModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdModule(dim {} over {})", self.dim, self.alg.name())
    }
}

impl FdModule {
    /// Builds a module from action matrices, checking
    /// `rho(b_i) rho(b_j) = sum_k c_ijk rho(b_k)` on every basis pair and
    /// that the unit acts as the identity.
    pub fn new(alg: &Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Result<Arc<FdModule>> {
        if dim > MAX_DIM {
            return Err(Error::DimensionCap { dim, cap: MAX_DIM });
        }
        if action.len() != alg.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, found {}",
                alg.dim(),
                action.len()
            )));
        }
        for (i, a) in action.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim || a.field() != alg.field() {
                return Err(Error::InvalidModule(format!("action matrix {i} is not {dim}x{dim} over F{}", alg.p())));
            }
        }
        let m = FdModule { alg: alg.clone(), dim, action };
        if !m.action_of(alg.unit_coords()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = m.action[i].mul(&m.action[j]);
                if lhs != m.action_of(alg.basis_product(i, j)) {
                    return Err(Error::InvalidModule(format!("action is not multiplicative on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(Arc::new(m))
    }

    /// For constructions whose validity follows from their inputs.
    pub(crate) fn new_unchecked(alg: &Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Arc<FdModule> {
        debug_assert_eq!(action.len(), alg.dim());
        Arc::new(FdModule { alg: alg.clone(), dim, action })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Arc<FdModule> {
        let action = (0..alg.dim()).map(|_| Mat::zeros(alg.field(), 0, 0)).collect();
        FdModule::new_unchecked(alg, 0, action)
    }

    /// The right regular module `A_A`.
    pub fn regular(alg: &Arc<Algebra>) -> Arc<FdModule> {
        let action = (0..alg.dim()).map(|k| alg.right_mul_matrix(&crate::algebra::unit_vec(alg.dim(), k))).collect();
        FdModule::new_unchecked(alg, alg.dim(), action)
    }

    /// `A^rank`, generator `j` occupying coordinates `j*dim A .. (j+1)*dim A`.
    pub fn free(alg: &Arc<Algebra>, rank: usize) -> Arc<FdModule> {
        let reg = FdModule::regular(alg);
        FdModule::direct_sum(&vec![reg; rank], alg)
    }

    pub fn direct_sum(parts: &[Arc<FdModule>], alg: &Arc<Algebra>) -> Arc<FdModule> {
        let f = alg.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..alg.dim())
            .map(|k| parts.iter().fold(Mat::zeros(f, 0, 0), |acc, p| acc.block_diag(&p.action[k])))
            .collect();
        FdModule::new_unchecked(alg, dim, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Fp {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    /// `rho(a)` for an algebra element given by coordinates.
    pub fn action_of(&self, a: &[u8]) -> Mat {
        let mut out = Mat::zeros(self.field(), self.dim, self.dim);
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                out.axpy(c, &self.action[k]);
            }
        }
        out
    }

    pub fn act(&self, v: &[u8], a: &[u8]) -> Vec<u8> {
        self.action_of(a).apply(v)
    }

    pub fn is_closed(&self, sub: &Subspace) -> bool {
        sub.basis().row_iter().all(|v| self.action.iter().all(|a| sub.contains(&a.apply(v))))
    }

    /// Submodule generated by the given vectors: `sum_v v A`.
    pub fn generated_by<V: AsRef<[u8]>>(&self, vecs: &[V]) -> Subspace {
        let mut ech = EchelonBuilder::new(self.field(), self.dim);
        for v in vecs {
            for a in &self.action {
                ech.insert(&a.apply(v.as_ref()));
            }
        }
        ech.to_subspace()
    }

    pub fn closure(&self, sub: &Subspace) -> Subspace {
        let rows: Vec<&[u8]> = sub.basis().row_iter().collect();
        self.generated_by(&rows)
    }

    /// The submodule as a module in its own right, with the inclusion.
    pub fn submodule(self: &Arc<Self>, sub: &Subspace) -> Result<(Arc<FdModule>, ModuleMap)> {
        if sub.ambient() != self.dim {
            return Err(Error::ShapeMismatch("submodule lives in a different space".into()));
        }
        if !self.is_closed(sub) {
            return Err(Error::InvalidModule("subspace is not closed under the action".into()));
        }
        let basis = sub.basis();
        let pivots = sub.pivots();
        let action = self.action.iter().map(|a| basis.mul(a).select_cols(pivots)).collect();
        let m = FdModule::new_unchecked(&self.alg, sub.dim(), action);
        let inc = ModuleMap::new_unchecked(&m, self, basis.clone());
        Ok((m, inc))
    }

    /// `M / U` on the unit vectors outside the pivots of `U`, with the
    /// projection.
    pub fn quotient(self: &Arc<Self>, sub: &Subspace) -> Result<(Arc<FdModule>, ModuleMap)> {
        if sub.ambient() != self.dim {
            return Err(Error::ShapeMismatch("submodule lives in a different space".into()));
        }
        if !self.is_closed(sub) {
            return Err(Error::InvalidModule("subspace is not closed under the action".into()));
        }
        let comp = sub.complement_columns();
        let f = self.field();
        let mut proj = Mat::zeros(f, self.dim, comp.len());
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            let r = sub.reduce(&e);
            for (j, &c) in comp.iter().enumerate() {
                proj.set(i, j, r[c]);
            }
        }
        let action = self.action.iter().map(|a| a.select_rows(&comp).mul(&proj)).collect();
        let q = FdModule::new_unchecked(&self.alg, comp.len(), action);
        let map = ModuleMap::new_unchecked(self, &q, proj);
        Ok((q, map))
    }

    /// `M . J(A)`.
    pub fn radical(&self) -> Result<Subspace> {
        let j = self.alg.jacobson_radical()?;
        let mut ech = EchelonBuilder::new(self.field(), self.dim);
        for r in j.basis().row_iter() {
            let a = self.action_of(r);
            for v in a.row_iter() {
                ech.insert(v);
            }
        }
        Ok(ech.to_subspace())
    }

    /// `M / M J(A)`.
    pub fn top(self: &Arc<Self>) -> Result<(Arc<FdModule>, ModuleMap)> {
        let rad = self.radical()?;
        self.quotient(&rad)
    }

    /// A generating set chosen greedily among the standard basis vectors.
    pub fn generators(&self) -> Vec<Vec<u8>> {
        let mut ech = EchelonBuilder::new(self.field(), self.dim);
        let mut gens = Vec::new();
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            if ech.contains(&e) {
                continue;
            }
            for a in &self.action {
                ech.insert(&a.apply(&e));
            }
            gens.push(e);
        }
        gens
    }
}

/// A module homomorphism, `dim source x dim target`, row convention.
#[derive(Clone)]
pub struct ModuleMap {
    source: Arc<FdModule>,
    target: Arc<FdModule>,
    matrix: Mat,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {})", self.source.dim, self.target.dim)
    }
}

impl ModuleMap {
    /// Checks that the matrix intertwines every basis action.
    pub fn new(source: &Arc<FdModule>, target: &Arc<FdModule>, matrix: Mat) -> Result<ModuleMap> {
        if !same_algebra(&source.alg, &target.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != source.dim || matrix.cols() != target.dim {
            return Err(Error::InvalidModuleMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        let map = ModuleMap { source: source.clone(), target: target.clone(), matrix };
        if let Some(k) = map.first_non_intertwined() {
            return Err(Error::InvalidModuleMap(format!("does not commute with basis action {k}")));
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: &Arc<FdModule>, target: &Arc<FdModule>, matrix: Mat) -> ModuleMap {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (source.dim, target.dim));
        ModuleMap { source: source.clone(), target: target.clone(), matrix }
    }

    fn first_non_intertwined(&self) -> Option<usize> {
        (0..self.source.alg.dim())
            .find(|&k| self.source.action[k].mul(&self.matrix) != self.matrix.mul(&self.target.action[k]))
    }

    pub fn is_homomorphism(&self) -> bool {
        self.first_non_intertwined().is_none()
    }

    pub fn identity(m: &Arc<FdModule>) -> ModuleMap {
        ModuleMap::new_unchecked(m, m, Mat::identity(m.field(), m.dim))
    }

    pub fn zero(source: &Arc<FdModule>, target: &Arc<FdModule>) -> ModuleMap {
        ModuleMap::new_unchecked(source, target, Mat::zeros(source.field(), source.dim, target.dim))
    }

    pub fn source(&self) -> &Arc<FdModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FdModule> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        self.matrix.apply(v)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(&self.matrix.left_kernel())
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(&self.matrix)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_onto(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim == self.target.dim && self.is_onto()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> Result<ModuleMap> {
        if self.target.dim != next.source.dim || !same_algebra(&self.target.alg, &next.source.alg) {
            return Err(Error::InvalidModuleMap("maps are not composable".into()));
        }
        Ok(ModuleMap::new_unchecked(&self.source, &next.target, self.matrix.mul(&next.matrix)))
    }

    /// The kernel as a module, with its inclusion into the source.
    pub fn kernel_module(&self) -> Result<(Arc<FdModule>, ModuleMap)> {
        self.source.submodule(&self.kernel())
    }
}

/// Matrix of the map `Q1 -> Q2` induced by `map: F1 -> F2` between
/// quotients with projection matrices `src_proj` and `tgt_proj`; fails if
/// `map` does not send the kernel of `src_proj` into that of `tgt_proj`.
pub(crate) fn descend(src_proj: &Mat, map: &Mat, tgt_proj: &Mat) -> Result<Mat> {
    let through = map.mul(tgt_proj);
    let ker = Mat::left_kernel(src_proj);
    if !ker.mul(&through).is_zero() {
        return Err(Error::InvalidModuleMap("map does not descend to the quotients".into()));
    }
    // a section of the source projection: rows equal to unit vectors
    let mut rows = vec![None; src_proj.cols()];
    for i in 0..src_proj.rows() {
        let r = src_proj.row(i);
        let mut nz = r.iter().enumerate().filter(|(_, &x)| x != 0);
        if let (Some((j, &1)), None) = (nz.next(), nz.next()) {
            rows[j].get_or_insert(i);
        }
    }
    let sel: Option<Vec<usize>> = rows.into_iter().collect();
    let sel = sel.ok_or_else(|| Error::Verification("quotient map has no coordinate section".into()))?;
    Ok(through.select_rows(&sel))
}
