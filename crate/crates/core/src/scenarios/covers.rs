//! Cover certificates: named instances and seeded random modules.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{example_ring, trial_seed, weakest, Params};
use crate::error::Result;
use crate::evmodule::{
    g_flat_cover, random_fp_module, verify_certificate, CoverCertificate, EvMatrix, FpRModule, BRUTE_SMALL_MAX_DIM,
};
use crate::evring::{EvElement, EvRing};
use crate::module::FdModule;
use crate::report::CheckRecord;
use crate::verdict::Mode;

const E12: [u8; 3] = [0, 1, 0];
const E22: [u8; 3] = [0, 0, 1];

/// Upper bounds for the random presentations.
const MAX_GENS: usize = 3;
const MAX_RELS: usize = 3;
const MAX_HEAD: usize = 3;

fn statuses(cert: &CoverCertificate) -> Value {
    json!(cert.checks.iter().map(|c| format!("{}:{}", &c.name[..2], c.status.as_str())).collect::<Vec<_>>().join(","))
}

fn dims_l_prime(cert: &CoverCertificate) -> Vec<u64> {
    cert.check("C4")
        .and_then(|c| c.details.get("dims_l_prime"))
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

fn dims_n(cert: &CoverCertificate) -> Vec<u64> {
    cert.check("C3")
        .and_then(|c| c.details.get("dims_n"))
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

fn dimension_identity(cert: &CoverCertificate) -> bool {
    let x = cert.pullback.x.dim() as u64;
    let (lp, n) = (dims_l_prime(cert), dims_n(cert));
    lp.len() == cert.levels.len() && lp.len() == n.len() && lp.iter().zip(&n).all(|(a, b)| *a == b + x)
}

fn depth_stable(cert: &CoverCertificate) -> bool {
    cert.checks.iter().all(|c| c.details.get("depth_stable").is_none_or(|v| v == &json!(true)))
}

/// `coker [e12, e22]`: the simple `S1` seen through the tail.
pub fn s1_avatar(ring: &Arc<EvRing>) -> Result<Arc<FpRModule>> {
    let c = |s: &[u8]| EvElement::constant(ring, s);
    Ok(FpRModule::new(EvMatrix::from_rows(ring, vec![vec![c(&E12)?, c(&E22)?]])?))
}

/// `coker` of the column `(e12, e22)` on two generators.
pub fn column_module(ring: &Arc<EvRing>) -> Result<Arc<FpRModule>> {
    let c = |s: &[u8]| EvElement::constant(ring, s);
    Ok(FpRModule::new(EvMatrix::from_rows(ring, vec![vec![c(&E12)?], vec![c(&E22)?]])?))
}

/// `e22 S`, the simple projective `S`-module.
pub fn e22_s(ring: &Arc<EvRing>) -> Result<Arc<FdModule>> {
    let reg = FdModule::regular(ring.s());
    Ok(reg.submodule(&reg.generated_by(&[E22]))?.0)
}

fn instance_record(name: &str, cert: &CoverCertificate, expected: (usize, usize, usize)) -> CheckRecord {
    let pb = &cert.pullback;
    let got = (pb.v.dim(), pb.l.dim(), pb.x.dim());
    let ok = cert.passing() && got == expected && dimension_identity(cert) && depth_stable(cert);
    let mode = weakest(cert.checks.iter().map(|c| c.mode));
    let mut r = CheckRecord::from_bool(name, ok, mode)
        .with("dim_v", got.0)
        .with("dim_l", got.1)
        .with("dim_x", got.2)
        .with("expected_v_l_x", vec![expected.0, expected.1, expected.2])
        .with("levels", cert.levels.clone())
        .with("dims_l_prime", dims_l_prime(cert))
        .with("checks", statuses(cert));
    if let Some(c6) = cert.check("C6") {
        r.set("minimality_scans", c6.details.get("truncation_scans").cloned().unwrap_or(Value::Null));
    }
    r
}

pub(super) fn battery(params: &Params, _: u64) -> Result<Vec<CheckRecord>> {
    let ring = example_ring()?;
    let mut checks = Vec::new();

    let free = g_flat_cover(&FpRModule::free(&ring, 1), params.depth, params.seed)?;
    checks.push(instance_record("free module R", &free, (3, 3, 0)));

    let avatar = g_flat_cover(&s1_avatar(&ring)?, params.depth, params.seed)?;
    let mut r = instance_record("S1 avatar coker[e12, e22]", &avatar, (1, 2, 1));
    if dims_l_prime(&avatar).iter().any(|&d| d != 2) {
        r.status = crate::report::Status::Fail;
    }
    checks.push(r);

    let column = g_flat_cover(&column_module(&ring)?, params.depth, params.seed)?;
    checks.push(instance_record("column module coker[e12; e22]", &column, (5, 5, 0)));

    let control = verify_certificate(avatar.pullback.with_extra_summand(&e22_s(&ring)?)?, params.depth, params.seed)?;
    let front = ["C1", "C2", "C3", "C4"].iter().all(|n| control.check(n).is_some_and(CheckRecord::passed));
    let c5 = control.check("C5").is_some_and(CheckRecord::passed);
    let c6 = control.check("C6").is_some_and(CheckRecord::passed);
    checks.push(
        CheckRecord::from_bool("non-minimal control L + e22 S", front && !c6, Mode::Proven)
            .with("dim_l", control.pullback.l.dim())
            .with("dim_x", control.pullback.x.dim())
            .with("checks", statuses(&control))
            .with("c1_to_c4_pass", front)
            .with("c5_rejects", !c5)
            .with("c6_rejects", !c6),
    );
    Ok(checks)
}

/// Per-trial presentation shape and certificate.
fn random_trial(ring: &Arc<EvRing>, params: &Params, i: u64) -> Result<CoverCertificate> {
    let seed = trial_seed(params.seed, i);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = rng.gen_range(1..=MAX_GENS);
    let rels = rng.gen_range(1..=MAX_RELS);
    let n = random_fp_module(ring, gens, rels, MAX_HEAD, rng.gen());
    g_flat_cover(&n, params.depth, seed)
}

pub(super) fn random_covers(params: &Params, trials: u64) -> Result<Vec<CheckRecord>> {
    let ring = example_ring()?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8) as u64;
    // trials are seeded by index, so the split across threads cannot change them
    let certs: Vec<Result<CoverCertificate>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let ring = ring.clone();
                scope.spawn(move || {
                    (w..trials)
                        .step_by(workers as usize)
                        .map(|i| (i, random_trial(&ring, params, i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all: Vec<(u64, Result<CoverCertificate>)> =
            handles.into_iter().flat_map(|h| h.join().expect("trial thread panicked")).collect();
        all.sort_by_key(|(i, _)| *i);
        all.into_iter().map(|(_, c)| c).collect()
    });
    let certs: Vec<CoverCertificate> = certs.into_iter().collect::<Result<_>>()?;

    let mut checks = Vec::new();
    let names: Vec<String> =
        certs.first().map(|c| c.checks.iter().map(|r| r.name.clone()).collect()).unwrap_or_default();
    for (j, name) in names.iter().enumerate() {
        let failing: Vec<u64> = (0..trials).filter(|&i| !certs[i as usize].checks[j].passed()).collect();
        let mode = weakest(certs.iter().map(|c| c.checks[j].mode));
        let mut r = CheckRecord::from_bool(name.clone(), failing.is_empty(), mode)
            .with("trials", trials)
            .with("passed", trials - failing.len() as u64)
            .with("failing_trials", failing.iter().take(10).copied().collect::<Vec<_>>());
        if mode == Mode::Sampled {
            r.set("seed", params.seed);
        }
        checks.push(r);
    }

    let sampled_scans: u64 = certs
        .iter()
        .filter_map(|c| c.check("C6")?.details.get("truncation_scans")?.as_array().cloned())
        .flatten()
        .filter(|s| s["mode"] == json!("sampled"))
        .count() as u64;
    if let Some(c6) = checks.iter_mut().find(|c| c.name.starts_with("C6")) {
        c6.set("sampled_truncation_scans", sampled_scans);
        if sampled_scans > 0 {
            c6.set("seed", params.seed);
            c6.set("samples_per_scan", crate::module::MINIMALITY_SAMPLES);
        }
    }

    let identity: Vec<bool> = certs.iter().map(dimension_identity).collect();
    checks.push(
        CheckRecord::from_bool("dim L'_k = dim N_k + dim X", identity.iter().all(|&b| b), Mode::Exhaustive)
            .with("trials", trials)
            .with("nonzero_x", certs.iter().filter(|c| !c.pullback.x.is_zero()).count() as u64)
            .with("levels_checked", certs.iter().map(|c| c.levels.len() as u64).sum::<u64>()),
    );

    let mut runs = 0u64;
    let mut agree = true;
    for c in &certs {
        if let Some(c5) = c.check("C5") {
            runs += c5.details.get("brute_force_runs").and_then(Value::as_u64).unwrap_or(0);
            agree &= c5.details.get("brute_force_agrees") == Some(&json!(true));
        }
    }
    checks.push(
        CheckRecord::from_bool("brute force confirms smallness", agree, Mode::Exhaustive)
            .with("brute_force_runs", runs)
            .with("max_dim", BRUTE_SMALL_MAX_DIM as u64),
    );

    let stable = certs.iter().all(depth_stable);
    checks.push(
        CheckRecord::from_bool("verdicts depth-stable", stable, Mode::Exhaustive)
            .with("depth", params.depth)
            .with("max_stable_index", certs.iter().map(|c| c.pullback.n.stable_index() as u64).max().unwrap_or(0)),
    );
    Ok(checks)
}
