//! The ring `R(M2(F2), UT2(F2))`: `S` has a one-dimensional radical, `T` is
//! semisimple, and `R` is semiprimitive without being regular.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{example_ring, Params};
use crate::algebra::{Algebra, DEFAULT_SCAN_BOUND};
use crate::error::Result;
use crate::evring::{jacobson_refutation, EvElement};
use crate::linalg::Subspace;
use crate::oracle::{brute_is_von_neumann_regular, brute_regular_witness, radical_by_quasi_regularity};
use crate::report::CheckRecord;
use crate::verdict::Mode;

/// Coordinates of `e12` on the basis `e11, e12, e22` of `UT2`.
const E12: [u8; 3] = [0, 1, 0];

fn basis_string(j: &Subspace) -> String {
    let rows: Vec<String> =
        j.basis().row_iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")).collect();
    format!("[{}]", rows.join(", "))
}

fn radical_check(name: &str, alg: &Algebra, expected_dim: usize, must_contain: Option<&[u8]>) -> Result<CheckRecord> {
    let j = alg.jacobson_radical()?;
    let oracle = radical_by_quasi_regularity(alg, DEFAULT_SCAN_BOUND)?;
    let ok = j == oracle && j.dim() == expected_dim && must_contain.is_none_or(|v| j.contains(v));
    Ok(CheckRecord::from_bool(name, ok, Mode::Exhaustive)
        .with("dim", j.dim())
        .with("basis", basis_string(&j))
        .with("oracle_agrees", j == oracle))
}

pub(super) fn run(params: &Params, trials: u64) -> Result<Vec<CheckRecord>> {
    let ring = example_ring()?;
    let (s, t) = (ring.s(), ring.t());
    let mut checks = vec![radical_check("J(S) = span{e12}", s, 1, Some(&E12))?, radical_check("J(T) = 0", t, 0, None)?];

    let (t_vnr, t_brute) = (t.is_von_neumann_regular()?, brute_is_von_neumann_regular(t));
    checks.push(
        CheckRecord::from_bool("T von Neumann regular", t_vnr && t_brute, Mode::Exhaustive)
            .with("structural", t_vnr)
            .with("witness_scan", t_brute),
    );
    let (s_vnr, s_brute) = (s.is_von_neumann_regular()?, brute_is_von_neumann_regular(s));
    checks.push(
        CheckRecord::from_bool("S not von Neumann regular", !s_vnr && !s_brute, Mode::Exhaustive)
            .with("structural", s_vnr)
            .with("witness_scan", s_brute),
    );

    // a spanning family: the constants on a basis of S, e_i, and basis
    // elements of T in single slots
    let mut family = Vec::new();
    for k in 0..s.dim() {
        let mut c = vec![0; s.dim()];
        c[k] = 1;
        family.push(EvElement::constant(&ring, &c)?);
    }
    for i in 1..=3 {
        family.push(EvElement::e(&ring, i)?);
        for k in 0..t.dim() {
            let mut v = vec![0; t.dim()];
            v[k] = 1;
            family.push(EvElement::slot(&ring, i, &v)?);
        }
    }
    let mut accepted_nonzero = 0u64;
    let mut unrefuted = 0u64;
    for (n, a) in family.iter().enumerate() {
        if a.in_jacobson()? != a.is_zero() {
            accepted_nonzero += 1;
        }
        if jacobson_refutation(a, 64, super::trial_seed(params.seed, n as u64)).witness.is_none() {
            unrefuted += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut random_nonzero = 0u64;
    for _ in 0..trials {
        let a = EvElement::random(&ring, 3, &mut rng);
        if !a.is_zero() {
            random_nonzero += 1;
        }
        if a.in_jacobson()? != a.is_zero() {
            accepted_nonzero += 1;
        }
    }
    checks.push(
        CheckRecord::from_bool("in_jacobson accepts only 0", accepted_nonzero == 0 && unrefuted == 0, Mode::Sampled)
            .with("family", family.len() as u64)
            .with("family_refuted", family.len() as u64 - unrefuted)
            .with("trials", trials)
            .with("random_nonzero", random_nonzero)
            .with("seed", params.seed)
            .with("accepted_nonzero", accepted_nonzero)
            .with("membership_criterion", "derived: heads in J(T), tail in J(S) with iota(tail) in J(T)"),
    );

    let c = EvElement::constant(&ring, &E12)?;
    let witness = c.regular_witness();
    let oracle = brute_regular_witness(s, &E12);
    checks.push(
        CheckRecord::from_bool("constant(e12) not regular", witness.is_none() && oracle.is_none(), Mode::Proven)
            .with("tail_witness_scan", oracle.is_some()),
    );

    let cert = ring.left_flat_cert();
    checks.push(
        CheckRecord::from_bool("T flat as a left S-module", cert == Some(true), Mode::Proven)
            .with("certificate", cert.map_or("unavailable", |b| if b { "true" } else { "false" })),
    );
    Ok(checks)
}
