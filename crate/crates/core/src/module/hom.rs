//! Bases of homomorphism spaces.

use std::sync::Arc;

use super::{FdModule, ModuleMap};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// A basis of `Hom_A(M, N)`.
///
/// A homomorphism is fixed by the images `y_j` of a generating set `g_j` of
/// `M`; the `y_j` range over the solutions of the linear relations among the
/// `g_j b_l`, transported to `N`.
pub fn hom_space(m: &Arc<FdModule>, n: &Arc<FdModule>) -> Result<Vec<ModuleMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn, d) = (m.dim(), n.dim(), m.algebra().dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let gens = m.generators();
    let r = gens.len();
    // row j*d + l of phi is g_j b_l
    let mut phi = Mat::zeros(f, r * d, dm);
    for (j, g) in gens.iter().enumerate() {
        for l in 0..d {
            phi.row_mut(j * d + l).copy_from_slice(&m.action()[l].apply(g));
        }
    }
    let relations = phi.left_kernel();

    // solutions y = (y_1, .., y_r) in N^r, kept as the rows of `sol`
    let mut sol = Mat::identity(f, r * dn);
    for kappa in relations.row_iter() {
        if sol.rows() == 0 {
            break;
        }
        // constraint matrix: block j is sum_l kappa_{jl} rho_N(b_l)
        let mut c = Mat::zeros(f, r * dn, dn);
        for j in 0..r {
            let coeffs = &kappa[j * d..(j + 1) * d];
            if coeffs.iter().all(|&x| x == 0) {
                continue;
            }
            let block = n.action_of(coeffs);
            for i in 0..dn {
                c.row_mut(j * dn + i).copy_from_slice(block.row(i));
            }
        }
        let k = sol.mul(&c).left_kernel();
        sol = k.mul(&sol);
    }
    if sol.rows() == 0 {
        return Ok(Vec::new());
    }

    // an invertible selection of rows of phi
    let rref = phi.transpose().rref();
    let sel: Vec<usize> = rref.pivots.clone();
    debug_assert_eq!(sel.len(), dm);
    let b_inv = phi
        .select_rows(&sel)
        .inverse()
        .ok_or_else(|| Error::Verification("generator images do not span the module".into()))?;

    let mut out = Vec::with_capacity(sol.rows());
    for y in sol.row_iter() {
        let mut psi = Mat::zeros(f, dm, dn);
        for (t, &row) in sel.iter().enumerate() {
            let (j, l) = (row / d, row % d);
            psi.row_mut(t).copy_from_slice(&n.action()[l].apply(&y[j * dn..(j + 1) * dn]));
        }
        let map = ModuleMap::new_unchecked(m, n, b_inv.mul(&psi));
        debug_assert!(map.is_homomorphism());
        out.push(map);
    }
    Ok(out)
}

/// `Hom_A(M, N)` as the solution space of `rho_M(b) F = F rho_N(b)` in all
/// `dim M * dim N` unknowns. Slow; a referee for [`hom_space`].
pub fn hom_space_naive(m: &Arc<FdModule>, n: &Arc<FdModule>) -> Result<Vec<ModuleMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let vars = dm * dn;
    let mut eqs: Vec<Vec<u8>> = Vec::new();
    for (rm, rn) in m.action().iter().zip(n.action()) {
        for i in 0..dm {
            for c in 0..dn {
                let mut e = vec![0u8; vars];
                for t in 0..dm {
                    let x = rm.get(i, t);
                    e[t * dn + c] = f.add(e[t * dn + c], x);
                }
                for t in 0..dn {
                    let x = rn.get(t, c);
                    e[i * dn + t] = f.sub(e[i * dn + t], x);
                }
                if e.iter().any(|&x| x != 0) {
                    eqs.push(e);
                }
            }
        }
    }
    let kernel = Mat::from_row_vecs(f, vars, &eqs).kernel_basis();
    Ok(kernel.row_iter().map(|v| ModuleMap::new_unchecked(m, n, Mat::from_vec(f, dm, dn, v.to_vec()))).collect())
}

/// Rank of a family of maps with a common source and target, as vectors.
pub(crate) fn family_rank(maps: &[Mat]) -> usize {
    let Some(first) = maps.first() else {
        return 0;
    };
    let len = first.rows() * first.cols();
    let rows: Vec<&[u8]> = maps.iter().map(|m| m.data()).collect();
    Mat::from_row_vecs(first.field(), len, &rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, upper_triangular};
    use crate::linalg::Fp;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn endomorphisms_of_regular_module() {
        // End(A_A) is A acting on the left
        let (s, _) = upper_triangular(f2(), 2).unwrap();
        let reg = FdModule::regular(&s);
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 3);
        let m2 = matrix_algebra(f2(), 2).unwrap();
        let reg = FdModule::regular(&m2);
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), 4);
        assert_eq!(hom_space_naive(&reg, &reg).unwrap().len(), 4);
    }

    #[test]
    fn simples_of_ut2() {
        let (s, _) = upper_triangular(f2(), 2).unwrap();
        let reg = FdModule::regular(&s);
        let (top, _) = reg.top().unwrap();
        // top = S1 + S2, End = F2 x F2
        assert_eq!(hom_space(&top, &top).unwrap().len(), 2);
        assert_eq!(hom_space(&reg, &top).unwrap().len(), 2);
        // the socle of S_S is S2 + S2
        assert_eq!(hom_space(&top, &reg).unwrap().len(), 2);
        assert_eq!(hom_space_naive(&top, &reg).unwrap().len(), 2);
    }
}
