//! Brute-force referees for the structural algorithms.
//!
//! Nothing here calls the code it referees: radical membership is decided
//! from the definition (`1 - y x` invertible for every `y`), regularity by
//! scanning candidate witnesses, smallness by enumerating submodules.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Fp, Mat, Subspace};

fn encode(field: Fp, v: &[u8]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * field.p() as usize + x as usize)
}

/// Units of `alg` as a lookup table indexed by the base-`p` encoding of the
/// coordinates. An element is a unit iff left multiplication by it is
/// bijective (finite dimension).
fn unit_table(alg: &Algebra) -> Vec<bool> {
    all_vectors(alg.field(), alg.dim()).map(|a| alg.left_mul_matrix(&a).rank() == alg.dim()).collect()
}

/// `J(A)` from the definition: `x` lies in the radical iff `1 - y x` is a
/// unit for every `y`. Visits `p^(2 dim)` pairs in the worst case.
pub fn radical_by_quasi_regularity(alg: &Algebra, bound: u128) -> Result<Subspace> {
    let f = alg.field();
    let n = alg.dim();
    let needed = f.count(n);
    if needed > bound {
        return Err(Error::ScanBoundExceeded { needed, bound });
    }
    let units = unit_table(alg);
    let one = alg.unit_coords().to_vec();
    let mut members = Vec::new();
    for x in all_vectors(f, n) {
        // y -> y x
        let rx = alg.right_mul_matrix(&x);
        let mut digits = vec![0u8; n];
        let mut yx = vec![0u8; n];
        let mut quasi_regular = true;
        loop {
            let mut w = one.clone();
            f.axpy(&mut w, f.neg(1), &yx);
            if !units[encode(f, &w)] {
                quasi_regular = false;
                break;
            }
            // odometer step; every touched digit changes y by +e_i mod p
            let mut i = n;
            let mut wrapped = true;
            while i > 0 {
                i -= 1;
                f.axpy(&mut yx, 1, rx.row(i));
                digits[i] += 1;
                if digits[i] < f.p() {
                    wrapped = false;
                    break;
                }
                digits[i] = 0;
            }
            if wrapped {
                break;
            }
        }
        if quasi_regular {
            members.push(x);
        }
    }
    let span = Subspace::span_vecs(f, n, &members);
    if f.count(span.dim()) != members.len() as u128 {
        return Err(Error::Verification("quasi-regular elements do not form a subspace".into()));
    }
    Ok(span)
}

/// Some `x` with `a x a = a`, by trying every `x`.
pub fn brute_regular_witness(alg: &Algebra, a: &[u8]) -> Option<Vec<u8>> {
    all_vectors(alg.field(), alg.dim()).find(|x| alg.mul_coords(&alg.mul_coords(a, x), a) == a)
}

/// Whether every element of `alg` has a regular witness, by brute force.
pub fn brute_is_von_neumann_regular(alg: &Algebra) -> bool {
    all_vectors(alg.field(), alg.dim()).all(|a| brute_regular_witness(alg, &a).is_some())
}

/// All idempotents of `alg`, by scanning.
pub fn brute_idempotents(alg: &Algebra) -> Vec<Vec<u8>> {
    all_vectors(alg.field(), alg.dim()).filter(|x| alg.mul_coords(x, x) == *x).collect()
}

/// Every subspace of `F_p^n`, each given by its reduced echelon basis.
pub fn all_subspaces(field: Fp, n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for r in 0..=n {
        for pivots in combinations(n, r) {
            // free entries: positions (row i, col c) with c > pivots[i], c not a pivot
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    (pivots[i] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            for fill in all_vectors(field, free.len()) {
                let mut m = Mat::zeros(field, r, n);
                for (i, &c) in pivots.iter().enumerate() {
                    m.set(i, c, 1);
                }
                for (&(i, c), &v) in free.iter().zip(&fill) {
                    m.set(i, c, v);
                }
                out.push(m);
            }
        }
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}
