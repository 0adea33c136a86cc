//! Change of rings and random modules.

use std::sync::Arc;

use rand::Rng;

use super::{FdModule, ModuleMap};
use crate::algebra::{same_algebra, unit_vec, AlgebraMap};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// A `B`-module viewed as an `A`-module along `phi: A -> B`.
pub fn restrict(m: &Arc<FdModule>, phi: &AlgebraMap) -> Result<Arc<FdModule>> {
    if !same_algebra(phi.target(), m.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let action = phi.matrix().row_iter().map(|r| m.action_of(r)).collect();
    Ok(FdModule::new_unchecked(phi.source(), m.dim(), action))
}

/// `V (x)_S T` for `iota: S -> T`, with the `S`-linear map `v -> v (x) 1`
/// as a `dim V x dim (V (x) T)` matrix.
///
/// The tensor is the quotient of `V (x)_F T` (coordinate `i * dim T + k` for
/// `v_i (x) t_k`) by the `T`-submodule generated by
/// `v_i s (x) 1 - v_i (x) iota(s)`.
pub fn induce_right(v: &Arc<FdModule>, iota: &AlgebraMap) -> Result<(Arc<FdModule>, Mat)> {
    if !same_algebra(iota.source(), v.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let t = iota.target();
    let f = v.field();
    let (dv, dt) = (v.dim(), t.dim());
    let action: Vec<Mat> = (0..dt)
        .map(|b| {
            let r = t.right_mul_matrix(&unit_vec(dt, b));
            let mut out = Mat::zeros(f, dv * dt, dv * dt);
            for i in 0..dv {
                for k in 0..dt {
                    out.row_mut(i * dt + k)[i * dt..(i + 1) * dt].copy_from_slice(r.row(k));
                }
            }
            out
        })
        .collect();
    let big = FdModule::new_unchecked(t, dv * dt, action);
    let tensor = |x: &[u8], y: &[u8]| -> Vec<u8> {
        let mut out = vec![0u8; dv * dt];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                f.axpy(&mut out[i * dt..(i + 1) * dt], xi, y);
            }
        }
        out
    };
    let one = t.unit_coords();
    let mut rels = Vec::new();
    for i in 0..dv {
        let vi = unit_vec(dv, i);
        for l in 0..iota.source().dim() {
            let mut r = tensor(&v.action()[l].apply(&vi), one);
            let rhs = tensor(&vi, iota.matrix().row(l));
            f.axpy(&mut r, f.neg(1), &rhs);
            rels.push(r);
        }
    }
    let sub = big.generated_by(&rels);
    let (q, proj) = big.quotient(&sub)?;
    let unit_rows: Vec<Vec<u8>> = (0..dv).map(|i| proj.apply(&tensor(&unit_vec(dv, i), one))).collect();
    let unit = Mat::from_row_vecs(f, q.dim(), &unit_rows);
    Ok((q, unit))
}

/// A seeded random module: `A^gens` modulo the submodule generated by
/// `relations` random vectors.
pub fn random_module<R: Rng>(
    alg: &Arc<crate::algebra::Algebra>,
    gens: usize,
    relations: usize,
    rng: &mut R,
) -> Result<(Arc<FdModule>, ModuleMap)> {
    let free = FdModule::free(alg, gens);
    let p = alg.p();
    let rels: Vec<Vec<u8>> = (0..relations).map(|_| (0..free.dim()).map(|_| rng.gen_range(0..p)).collect()).collect();
    let sub = free.generated_by(&rels);
    free.quotient(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{upper_triangular, AlgElement};
    use crate::linalg::Fp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn induction_examples() {
        let (s, iota) = upper_triangular(f2(), 2).unwrap();
        let reg = FdModule::regular(&s);
        let (p1, _) = reg.submodule(&reg.generated_by(&[AlgElement::basis(&s, 0).coords()])).unwrap();
        let (s1, _) = p1.top().unwrap();
        // S1 (x) M2 = 0, S_S (x) M2 = M2
        let (ind, unit) = induce_right(&s1, &iota).unwrap();
        assert_eq!(ind.dim(), 0);
        assert_eq!(unit.rank(), 0);
        let (ind, unit) = induce_right(&reg, &iota).unwrap();
        assert_eq!(ind.dim(), 4);
        assert_eq!(unit.rank(), 3);
        assert_eq!(ind.algebra().dim(), 4);
    }

    #[test]
    fn restriction_of_regular() {
        let (s, iota) = upper_triangular(f2(), 2).unwrap();
        let t = iota.target().clone();
        let reg_t = FdModule::regular(&t);
        let res = restrict(&reg_t, &iota).unwrap();
        assert!(FdModule::new(&s, 4, res.action().to_vec()).is_ok());
        assert!(crate::module::is_projective(&res).unwrap());
    }

    #[test]
    fn random_modules_are_valid() {
        let (s, _) = upper_triangular(f2(), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let (m, proj) = random_module(&s, 2, 2, &mut rng).unwrap();
            assert!(FdModule::new(&s, m.dim(), m.action().to_vec()).is_ok());
            assert!(proj.is_homomorphism() && proj.is_onto());
        }
    }
}
