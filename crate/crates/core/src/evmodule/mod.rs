//! Finitely presented right modules over `R(T, S)`, the torsion classes
//! they fall into, flatness, and the cover construction.

mod certificate;
mod pullback;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use certificate::{g_flat_cover, verify_certificate, CoverCertificate, BRUTE_SMALL_MAX_DIM, DEFAULT_DEPTH};
pub use pullback::{PullbackModule, TruncatedPullback};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::evring::{same_ring, EvElement, EvRing};
use crate::linalg::Mat;
use crate::module::{induce_right, is_projective, FdModule, ModuleMap};

/// An `m x n` matrix over `R(T, S)`, row-major.
#[derive(Clone)]
pub struct EvMatrix {
    ring: Arc<EvRing>,
    rows: usize,
    cols: usize,
    entries: Vec<EvElement>,
}

impl PartialEq for EvMatrix {
    fn eq(&self, other: &EvMatrix) -> bool {
        same_ring(&self.ring, &other.ring)
            && (self.rows, self.cols) == (other.rows, other.cols)
            && self.entries == other.entries
    }
}

impl Eq for EvMatrix {}

impl fmt::Debug for EvMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvMatrix {}x{} {:?}", self.rows, self.cols, self.entries)
    }
}

impl EvMatrix {
    pub fn new(ring: &Arc<EvRing>, rows: usize, cols: usize, entries: Vec<EvElement>) -> Result<EvMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(EvMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_rows(ring: &Arc<EvRing>, rows: Vec<Vec<EvElement>>) -> Result<EvMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("rows of different lengths".into()));
        }
        let m = rows.len();
        EvMatrix::new(ring, m, cols, rows.into_iter().flatten().collect())
    }

    pub fn identity(ring: &Arc<EvRing>, n: usize) -> EvMatrix {
        let entries =
            (0..n * n).map(|k| if k / n == k % n { EvElement::one(ring) } else { EvElement::zero(ring) }).collect();
        EvMatrix { ring: ring.clone(), rows: n, cols: n, entries }
    }

    pub fn ring(&self) -> &Arc<EvRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &EvElement {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[EvElement] {
        &self.entries
    }

    /// Largest head length among the entries; every slot beyond it sees the
    /// same matrix.
    pub fn stable_index(&self) -> usize {
        self.entries.iter().map(EvElement::head_len).max().unwrap_or(0)
    }

    /// Columns as free-module vectors over `alg`, entry `(i, j)` mapped by
    /// `coords`.
    fn columns(&self, alg: &Algebra, coords: impl Fn(&EvElement) -> Vec<u8>) -> Vec<Vec<u8>> {
        let d = alg.dim();
        (0..self.cols)
            .map(|j| {
                let mut v = vec![0u8; self.rows * d];
                for i in 0..self.rows {
                    v[i * d..(i + 1) * d].copy_from_slice(&coords(self.get(i, j)));
                }
                v
            })
            .collect()
    }
}

/// `A^m` modulo the right submodule generated by `columns`.
fn coker(alg: &Arc<Algebra>, m: usize, columns: &[Vec<u8>]) -> Result<(Arc<FdModule>, ModuleMap)> {
    let free = FdModule::free(alg, m);
    let rel = free.generated_by(columns);
    free.quotient(&rel)
}

/// The right module `R^m / (columns of A) R`.
pub struct FpRModule {
    presentation: EvMatrix,
    generic: OnceLock<Arc<FdModule>>,
    tail: OnceLock<(Arc<FdModule>, ModuleMap)>,
    truncations: Mutex<BTreeMap<usize, (Arc<FdModule>, ModuleMap)>>,
}

impl fmt::Debug for FpRModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpRModule({} generators, {} relations)", self.presentation.rows, self.presentation.cols)
    }
}

/// Where a module sits in the TTF triple
/// attached to the ideal of finitely supported sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    /// `M = M I`: the tail quotient vanishes.
    pub in_x: bool,
    /// `M I = 0`: every component vanishes.
    pub in_y: bool,
    /// No nonzero element is killed by `I`: the map `V -> V (x)_S T` from
    /// the tail quotient to the generic component is injective.
    pub in_z: bool,
}

impl FpRModule {
    pub fn new(presentation: EvMatrix) -> Arc<FpRModule> {
        Arc::new(FpRModule {
            presentation,
            generic: OnceLock::new(),
            tail: OnceLock::new(),
            truncations: Mutex::new(BTreeMap::new()),
        })
    }

    /// `R^m` (no relations).
    pub fn free(ring: &Arc<EvRing>, m: usize) -> Arc<FpRModule> {
        FpRModule::new(EvMatrix { ring: ring.clone(), rows: m, cols: 0, entries: Vec::new() })
    }

    pub fn ring(&self) -> &Arc<EvRing> {
        &self.presentation.ring
    }

    pub fn presentation(&self) -> &EvMatrix {
        &self.presentation
    }

    pub fn gens(&self) -> usize {
        self.presentation.rows
    }

    pub fn stable_index(&self) -> usize {
        self.presentation.stable_index()
    }

    fn slot_module(&self, i: usize) -> Result<Arc<FdModule>> {
        let t = self.ring().t();
        let cols = self.presentation.columns(t, |e| e.slot_value(i));
        Ok(coker(t, self.gens(), &cols)?.0)
    }

    /// `M e_i` as a `T`-module (slots are 1-based).
    pub fn component(&self, i: usize) -> Result<Arc<FdModule>> {
        if i == 0 {
            return Err(Error::ShapeMismatch("slots are numbered from 1".into()));
        }
        if i > self.stable_index() {
            return self.generic_component();
        }
        self.slot_module(i)
    }

    /// The component shared by every slot beyond the stable index.
    pub fn generic_component(&self) -> Result<Arc<FdModule>> {
        if let Some(m) = self.generic.get() {
            return Ok(m.clone());
        }
        let m = self.slot_module(self.stable_index() + 1)?;
        Ok(self.generic.get_or_init(|| m).clone())
    }

    /// `M / M I = M (x)_R S`, with the projection from `S^m`.
    pub fn tail_quotient(&self) -> Result<(Arc<FdModule>, ModuleMap)> {
        if let Some(v) = self.tail.get() {
            return Ok(v.clone());
        }
        let s = self.ring().s();
        let cols = self.presentation.columns(s, |e| e.tail().to_vec());
        let v = coker(s, self.gens(), &cols)?;
        Ok(self.tail.get_or_init(|| v).clone())
    }

    /// `M (x)_R R_k` over `T^k x S`, with the projection from `R_k^m`.
    pub fn truncate(&self, k: usize) -> Result<(Arc<FdModule>, ModuleMap)> {
        if let Some(v) = self.truncations.lock().expect("truncation cache poisoned").get(&k) {
            return Ok(v.clone());
        }
        let rk = self.ring().truncation(k)?;
        let cols = self.presentation.columns(rk.algebra(), |e| rk.rho(e).expect("entries share the ring"));
        let v = coker(rk.algebra(), self.gens(), &cols)?;
        self.truncations.lock().expect("truncation cache poisoned").insert(k, v.clone());
        Ok(v)
    }

    pub fn membership(&self) -> Result<Membership> {
        let (v, _) = self.tail_quotient()?;
        let in_x = v.is_zero();
        let mut in_y = self.generic_component()?.is_zero();
        for i in 1..=self.stable_index() {
            in_y &= self.component(i)?.is_zero();
        }
        let (_, unit) = induce_right(&v, self.ring().iota())?;
        let in_z = unit.rank() == v.dim();
        Ok(Membership { in_x, in_y, in_z })
    }

    /// Flat iff the tail quotient is flat over `S` and every component is
    /// flat over `T`.
    pub fn is_flat(&self) -> Result<bool> {
        let mut comps = Vec::with_capacity(self.stable_index() + 1);
        for i in 1..=self.stable_index() + 1 {
            comps.push(self.component(i)?);
        }
        flat_from_parts(self.ring(), &self.tail_quotient()?.0, &comps)
    }
}

/// The flatness test on realized data: the tail `M (x)_R S` and the distinct
/// components `M e_i`. Over these artinian algebras flat means projective;
/// the `T`-side is automatic when `T` is semisimple.
pub fn flat_from_parts(ring: &EvRing, tail: &Arc<FdModule>, components: &[Arc<FdModule>]) -> Result<bool> {
    if !is_projective(tail)? {
        return Ok(false);
    }
    if ring.t().is_von_neumann_regular()? {
        return Ok(true);
    }
    for c in components {
        if !is_projective(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves `A x = b` over `R`: slot by slot over `T` up to the joint stable
/// index, then once over `S` for the tail, whose solution also covers every
/// later slot.
pub fn solve_over_r(a: &EvMatrix, b: &[EvElement]) -> Result<Option<Vec<EvElement>>> {
    let ring = a.ring();
    if ring.left_flat_cert() != Some(true) {
        return Err(Error::FlatnessCertificateMissing);
    }
    if b.len() != a.rows {
        return Err(Error::ShapeMismatch(format!("right-hand side has {} entries, expected {}", b.len(), a.rows)));
    }
    if b.iter().any(|e| !same_ring(e.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    let stable = a.stable_index().max(b.iter().map(EvElement::head_len).max().unwrap_or(0));
    let solve = |alg: &Arc<Algebra>, coef: &dyn Fn(&EvElement) -> Vec<u8>| -> Result<Option<Vec<Vec<u8>>>> {
        let d = alg.dim();
        // x (row of unknown blocks) times the block matrix of left multiplications
        let mut big = Mat::zeros(alg.field(), a.cols * d, a.rows * d);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let l = alg.left_mul_matrix(&coef(a.get(i, j)));
                for r in 0..d {
                    big.row_mut(j * d + r)[i * d..(i + 1) * d].copy_from_slice(l.row(r));
                }
            }
        }
        let rhs: Vec<u8> = b.iter().flat_map(coef).collect();
        Ok(big.solve_left(&rhs)?.map(|x| x.chunks(d.max(1)).map(<[u8]>::to_vec).collect()))
    };
    let Some(tail) = solve(ring.s(), &|e: &EvElement| e.tail().to_vec())? else {
        return Ok(None);
    };
    let tail = if a.cols == 0 { Vec::new() } else { tail };
    let mut heads: Vec<Vec<Vec<u8>>> = vec![Vec::new(); a.cols];
    for i in 1..=stable {
        let Some(x) = solve(ring.t(), &|e: &EvElement| e.slot_value(i))? else {
            return Ok(None);
        };
        for (j, xj) in x.into_iter().enumerate().take(a.cols) {
            heads[j].push(xj);
        }
    }
    let out: Vec<EvElement> = (0..a.cols)
        .map(|j| EvElement::new(ring, std::mem::take(&mut heads[j]), tail[j].clone()))
        .collect::<Result<_>>()?;
    for (i, bi) in b.iter().enumerate() {
        let mut acc = EvElement::zero(ring);
        for (j, x) in out.iter().enumerate() {
            acc = &acc + &(a.get(i, j) * x);
        }
        if acc != *bi {
            return Err(Error::Verification("slotwise solution does not solve the system".into()));
        }
    }
    Ok(Some(out))
}

/// A seeded random presentation with `gens` rows and `rels` columns; entries
/// are single-slot, constant or mixed elements with heads of length at most
/// `max_head`.
pub fn random_fp_module(ring: &Arc<EvRing>, gens: usize, rels: usize, max_head: usize, seed: u64) -> Arc<FpRModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t, s) = (ring.t(), ring.s());
    let p = t.p();
    let entries = (0..gens * rels)
        .map(|_| {
            let family = if max_head == 0 { 1 } else { rng.gen_range(0..4) };
            match family {
                0 => {
                    let k = rng.gen_range(1..=max_head);
                    let v: Vec<u8> = (0..t.dim()).map(|_| rng.gen_range(0..p)).collect();
                    EvElement::slot(ring, k, &v).expect("slot index is positive")
                }
                1 => {
                    let c: Vec<u8> = (0..s.dim()).map(|_| rng.gen_range(0..p)).collect();
                    EvElement::constant(ring, &c).expect("constant has the right length")
                }
                2 => EvElement::zero(ring),
                _ => EvElement::random(ring, max_head, &mut rng),
            }
        })
        .collect();
    FpRModule::new(EvMatrix { ring: ring.clone(), rows: gens, cols: rels, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::upper_triangular;
    use crate::linalg::Fp;

    const E12_S: [u8; 3] = [0, 1, 0];
    const E22_S: [u8; 3] = [0, 0, 1];

    fn example_ring() -> Arc<EvRing> {
        EvRing::new(upper_triangular(Fp::new(2).unwrap(), 2).unwrap().1).unwrap()
    }

    fn constant(r: &Arc<EvRing>, s: &[u8]) -> EvElement {
        EvElement::constant(r, s).unwrap()
    }

    /// `coker [e12, e22]`, the simple `S1` seen through the tail.
    fn s1_avatar(r: &Arc<EvRing>) -> Arc<FpRModule> {
        FpRModule::new(EvMatrix::from_rows(r, vec![vec![constant(r, &E12_S), constant(r, &E22_S)]]).unwrap())
    }

    #[test]
    fn components_and_tails() {
        let r = example_ring();
        let free = FpRModule::free(&r, 1);
        assert_eq!(free.component(3).unwrap().dim(), 4);
        assert_eq!(free.tail_quotient().unwrap().0.dim(), 3);
        assert_eq!(free.truncate(2).unwrap().0.dim(), 11);

        let e1 = FpRModule::new(EvMatrix::from_rows(&r, vec![vec![EvElement::e(&r, 1).unwrap()]]).unwrap());
        assert_eq!(e1.component(1).unwrap().dim(), 0);
        assert_eq!(e1.component(2).unwrap().dim(), 4);
        assert_eq!(e1.tail_quotient().unwrap().0.dim(), 3);

        let s1 = s1_avatar(&r);
        for i in 1..4 {
            assert_eq!(s1.component(i).unwrap().dim(), 0);
        }
        assert_eq!(s1.tail_quotient().unwrap().0.dim(), 1);
        for k in 1..4 {
            assert_eq!(s1.truncate(k).unwrap().0.dim(), 1);
        }
    }

    #[test]
    fn truncations_stabilize() {
        let r = example_ring();
        for seed in 0..10 {
            let m = random_fp_module(&r, 2, 2, 2, seed);
            let st = m.stable_index().max(1);
            let g = m.generic_component().unwrap().dim();
            for k in st..st + 3 {
                let a = m.truncate(k).unwrap().0.dim();
                let b = m.truncate(k + 1).unwrap().0.dim();
                assert_eq!(b - a, g, "seed {seed} level {k}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let r = example_ring();
        let free = FpRModule::free(&r, 1).membership().unwrap();
        assert_eq!(free, Membership { in_x: false, in_y: false, in_z: true });
        let s1 = s1_avatar(&r).membership().unwrap();
        assert!(s1.in_y && !s1.in_x && !s1.in_z);
        // coker [1 - e(1)] is T at slot 1 only
        let one = EvElement::one(&r);
        let a = &one - &EvElement::e(&r, 1).unwrap();
        let m = FpRModule::new(EvMatrix::from_rows(&r, vec![vec![a]]).unwrap());
        let mm = m.membership().unwrap();
        assert!(mm.in_x && !mm.in_y && mm.in_z);
    }

    #[test]
    fn flatness_examples() {
        let r = example_ring();
        assert!(FpRModule::free(&r, 2).is_flat().unwrap());
        assert!(!s1_avatar(&r).is_flat().unwrap());
        // S itself: tail S, every component zero
        let s = FdModule::regular(r.s());
        assert!(flat_from_parts(&r, &s, &[]).unwrap());
        // tail S, zero first slot
        let avatar = FpRModule::new(EvMatrix::from_rows(&r, vec![vec![EvElement::e(&r, 1).unwrap()]]).unwrap());
        assert!(avatar.is_flat().unwrap());
    }

    #[test]
    fn solving_over_r() {
        let r = example_ring();
        let b = vec![EvElement::e(&r, 1).unwrap(), constant(&r, &E12_S)];
        assert_eq!(solve_over_r(&EvMatrix::identity(&r, 2), &b).unwrap().unwrap(), b);
        let a = EvMatrix::from_rows(&r, vec![vec![EvElement::e(&r, 1).unwrap()]]).unwrap();
        let x = solve_over_r(&a, &[EvElement::e(&r, 1).unwrap()]).unwrap().unwrap();
        assert!(x[0].pi(1).is_one());
        let a = EvMatrix::from_rows(&r, vec![vec![constant(&r, &E12_S)]]).unwrap();
        assert!(solve_over_r(&a, &[EvElement::one(&r)]).unwrap().is_none());
    }

    #[test]
    fn random_presentations_are_deterministic() {
        let r = example_ring();
        let a = random_fp_module(&r, 2, 3, 2, 9);
        let b = random_fp_module(&r, 2, 3, 2, 9);
        assert_eq!(a.presentation(), b.presentation());
        assert_eq!(random_fp_module(&r, 2, 0, 2, 9).truncate(1).unwrap().0.dim(), 14);
        assert_eq!(random_fp_module(&r, 2, 3, 0, 4).stable_index(), 0);
    }
}
