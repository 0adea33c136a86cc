//! Module-level suites: projective covers over `S`, the torsion theory of
//! the truncations, and `Ext^1` under restriction.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{example_ring, trial_seed, Params};
use crate::algebra::Algebra;
use crate::error::Result;
use crate::evmodule::random_fp_module;
use crate::linalg::{Mat, Subspace};
use crate::module::family_rank;
use crate::module::{
    ext1, hom_space, hom_space_naive, is_right_minimal, projective_cover, random_module, restrict, scan_right_minimal,
    FdModule, ModuleMap,
};
use crate::report::CheckRecord;
use crate::verdict::Mode;

/// Largest `dim M * dim N` for which the naive Hom solver referees.
const NAIVE_HOM_VARS: usize = 400;

/// The simple `UT2`-module on which `e_ii` acts as the identity.
pub fn simple_ut2(s: &Arc<Algebra>, i: usize) -> Result<Arc<FdModule>> {
    let f = s.field();
    let one = Mat::identity(f, 1);
    let zero = Mat::zeros(f, 1, 1);
    let action = if i == 1 { vec![one, zero.clone(), zero] } else { vec![zero.clone(), zero, one] };
    FdModule::new(s, 1, action)
}

/// `Ext^1(X, Y)` from the free presentation on the generators of `X`,
/// without projective covers.
pub fn ext1_via_free(x: &Arc<FdModule>, y: &Arc<FdModule>) -> Result<usize> {
    let alg = x.algebra();
    let gens = x.generators();
    let free = FdModule::free(alg, gens.len());
    let unit_rows: Vec<Vec<u8>> = (0..alg.dim())
        .map(|b| {
            let mut e = vec![0; alg.dim()];
            e[b] = 1;
            e
        })
        .collect();
    let rows: Vec<Vec<u8>> = gens.iter().flat_map(|g| unit_rows.iter().map(move |b| x.act(g, b))).collect();
    let onto = ModuleMap::new(&free, x, Mat::from_row_vecs(x.field(), x.dim(), &rows))?;
    let (k, inc) = onto.kernel_module()?;
    let hom_ky = hom_space(&k, y)?.len();
    if hom_ky == 0 {
        return Ok(0);
    }
    let restricted: Vec<Mat> = hom_space(&free, y)?.iter().map(|h| inc.matrix().mul(h.matrix())).collect();
    Ok(hom_ky - family_rank(&restricted))
}

struct CoverTally {
    modules: u64,
    failures: Vec<String>,
    scans: u64,
}

fn check_cover(label: &str, m: &Arc<FdModule>, seed: u64, tally: &mut CoverTally) -> Result<()> {
    let cover = projective_cover(m)?;
    let map = &cover.map;
    let onto = map.is_onto();
    let small = cover.module.radical()?.contains_subspace(&map.kernel());
    let tops = cover.module.top()?.0.dim() == m.top()?.0.dim();
    let proven = is_right_minimal(map, seed)?;
    let scanned = scan_right_minimal(map, seed)?;
    tally.modules += 1;
    tally.scans += scanned.checked;
    if !(onto && small && tops && proven.minimal && scanned.minimal) {
        tally.failures.push(label.to_string());
    }
    Ok(())
}

pub(super) fn projective_covers(params: &Params, trials: u64) -> Result<Vec<CheckRecord>> {
    let ring = example_ring()?;
    let s = ring.s();
    let s1 = simple_ut2(s, 1)?;
    let s2 = simple_ut2(s, 2)?;
    let mut checks = Vec::new();

    let p1 = projective_cover(&s1)?.module.dim();
    let sum = FdModule::direct_sum(&[s1.clone(), s2.clone()], s);
    let p12 = projective_cover(&sum)?.module.dim();
    checks.push(
        CheckRecord::from_bool("dim P(S1) = 2, dim P(S1 + S2) = 3", p1 == 2 && p12 == 3, Mode::Exhaustive)
            .with("dim_p_s1", p1)
            .with("dim_p_s1_s2", p12),
    );

    let mut tally = CoverTally { modules: 0, failures: Vec::new(), scans: 0 };
    check_cover("S1", &s1, params.seed, &mut tally)?;
    check_cover("S2", &s2, params.seed, &mut tally)?;
    check_cover("S1 + S2", &sum, params.seed, &mut tally)?;
    let reg = FdModule::regular(s);
    let (rad, _) = reg.submodule(&reg.radical()?)?;
    check_cover("rad S", &rad, params.seed, &mut tally)?;

    let mut random = 0u64;
    let mut skipped = 0u64;
    for i in 0..trials {
        let seed = trial_seed(params.seed, i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = None;
        for _ in 0..64 {
            let gens = rng.gen_range(1..=2);
            let rels = rng.gen_range(0..=3);
            let (m, _) = random_module(s, gens, rels, &mut rng)?;
            if (1..=4).contains(&m.dim()) {
                found = Some(m);
                break;
            }
        }
        let Some(m) = found else {
            skipped += 1;
            continue;
        };
        check_cover(&format!("random {i}"), &m, seed, &mut tally)?;
        let (r, _) = m.submodule(&m.radical()?)?;
        if !r.is_zero() {
            check_cover(&format!("rad of random {i}"), &r, seed, &mut tally)?;
        }
        random += 1;
    }
    let mut rec = CheckRecord::from_bool(
        "covers onto, small kernel, equal tops, right minimal",
        tally.failures.is_empty() && skipped == 0,
        Mode::Exhaustive,
    )
    .with("modules", tally.modules)
    .with("random_modules", random)
    .with("endomorphisms_scanned", tally.scans)
    .with("failures", tally.failures.iter().take(10).cloned().collect::<Vec<_>>());
    if skipped > 0 {
        rec.set("skipped_trials", skipped);
        rec.set("skip_reason", "no random module of dimension 1..=4 in 64 draws");
    }
    checks.push(rec);
    Ok(checks)
}

/// `M E`, the torsion part for the idempotent `E` summing the slots.
fn torsion(m: &FdModule, e: &[u8]) -> Subspace {
    Subspace::span(&m.action_of(e))
}

pub(super) fn ttf(params: &Params, trials: u64) -> Result<Vec<CheckRecord>> {
    let ring = example_ring()?;
    let mut exact_failures = Vec::new();
    let mut radical_failures = Vec::new();
    let mut largest = 0usize;
    for i in 0..trials {
        let seed = trial_seed(params.seed, i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_fp_module(&ring, rng.gen_range(1..=2), rng.gen_range(1..=2), 2, rng.gen());
        let k = n.stable_index().max(1) + rng.gen_range(0..=1);
        let rk = ring.truncation(k)?;
        let e = rk.slot_sum();
        let (b, _) = n.truncate(k)?;
        largest = largest.max(b.dim());
        let vecs: Vec<Vec<u8>> =
            (0..rng.gen_range(1..=2)).map(|_| (0..b.dim()).map(|_| rng.gen_range(0..2)).collect()).collect();
        let (a, inc) = b.submodule(&b.generated_by(&vecs))?;
        let (c, proj) = b.quotient(&inc.image())?;
        let (ta, tb, tc) = (torsion(&a, &e), torsion(&b, &e), torsion(&c, &e));
        let a_in_b = inc.image();
        let exact = tb.dim() == ta.dim() + tc.dim()
            && ta.image(inc.matrix()) == tb.intersection(&a_in_b)
            && tb.image(proj.matrix()) == tc;
        if !exact {
            exact_failures.push(i);
        }
        // t is idempotent and M / t(M) is torsion-free
        let (tm, _) = b.submodule(&tb)?;
        let (free_part, _) = b.quotient(&tb)?;
        if torsion(&tm, &e).dim() != tm.dim() || !torsion(&free_part, &e).is_zero() {
            radical_failures.push(i);
        }
    }

    let pairs = (trials / 2).max(1);
    let mut nonzero = Vec::new();
    let mut naive_runs = 0u64;
    let mut naive_disagree = 0u64;
    let mut nontrivial = 0u64;
    for i in 0..pairs {
        let seed = trial_seed(params.seed ^ 0x5EED, i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_fp_module(&ring, rng.gen_range(1..=2), rng.gen_range(1..=2), 2, rng.gen());
        let n2 = random_fp_module(&ring, rng.gen_range(1..=2), rng.gen_range(0..=2), 2, rng.gen());
        let k = n.stable_index().max(1);
        let rk = ring.truncation(k)?;
        let (nk, _) = n.truncate(k)?;
        let (x, _) = nk.submodule(&torsion(&nk, &rk.slot_sum()))?;
        let y = restrict(&n2.tail_quotient()?.0, rk.s_projection())?;
        let homs = hom_space(&x, &y)?.len();
        if x.dim() * y.dim() <= NAIVE_HOM_VARS {
            naive_runs += 1;
            naive_disagree += u64::from(hom_space_naive(&x, &y)?.len() != homs);
        }
        if !x.is_zero() && !y.is_zero() {
            nontrivial += 1;
        }
        if homs != 0 {
            nonzero.push(i);
        }
    }

    Ok(vec![
        CheckRecord::from_bool(
            "torsion radical exact on short exact sequences",
            exact_failures.is_empty(),
            Mode::Exhaustive,
        )
        .with("sequences", trials)
        .with("largest_dim", largest)
        .with("failing_trials", exact_failures.iter().take(10).copied().collect::<Vec<_>>()),
        CheckRecord::from_bool("t(t(M)) = t(M), t(M / t(M)) = 0", radical_failures.is_empty(), Mode::Exhaustive)
            .with("modules", trials)
            .with("failing_trials", radical_failures.iter().take(10).copied().collect::<Vec<_>>()),
        CheckRecord::from_bool(
            "Hom(torsion, torsion-free) = 0",
            nonzero.is_empty() && naive_disagree == 0,
            Mode::Exhaustive,
        )
        .with("pairs", pairs)
        .with("nontrivial_pairs", nontrivial)
        .with("naive_solver_runs", naive_runs)
        .with("naive_solver_disagreements", naive_disagree)
        .with("failing_pairs", nonzero.iter().take(10).copied().collect::<Vec<_>>()),
    ])
}

pub(super) fn ext_shadow(_: &Params, _: u64) -> Result<Vec<CheckRecord>> {
    let ring = example_ring()?;
    let s = ring.s();
    let simples = [simple_ut2(s, 1)?, simple_ut2(s, 2)?];
    let mut table = Vec::new();
    let mut oracle_ok = true;
    for x in &simples {
        let mut row = Vec::new();
        for y in &simples {
            let e = ext1(x, y)?;
            oracle_ok &= ext1_via_free(x, y)? == e;
            row.push(e);
        }
        table.push(row);
    }
    let expected = vec![vec![0, 1], vec![0, 0]];
    let mut checks = vec![CheckRecord::from_bool(
        "Ext1_S(S1,S2) = 1, Ext1_S(S2,-) = 0, Ext1_S(S1,S1) = 0",
        table == expected && oracle_ok,
        Mode::Exhaustive,
    )
    .with("ext_table", table.clone())
    .with("free_presentation_agrees", oracle_ok)];

    for k in 1..=3 {
        let rk = ring.truncation(k)?;
        let res: Vec<Arc<FdModule>> = simples.iter().map(|m| restrict(m, rk.s_projection())).collect::<Result<_>>()?;
        let mut over_rk = Vec::new();
        for x in &res {
            over_rk.push(res.iter().map(|y| ext1(x, y)).collect::<Result<Vec<_>>>()?);
        }
        checks.push(
            CheckRecord::from_bool(format!("Ext1 over S = Ext1 over T^{k} x S"), over_rk == table, Mode::Exhaustive)
                .with("ext_table", over_rk)
                .with("dim_ring", rk.algebra().dim()),
        );
    }
    Ok(checks)
}
