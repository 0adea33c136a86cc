//! The six checks certifying that `pi1: L' -> N` is a G-flat cover.

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use super::pullback::{PullbackModule, TruncatedPullback};
use super::{flat_from_parts, FpRModule};
use crate::error::Result;
use crate::module::{brute_small, is_projective, is_right_minimal, is_small, scan_right_minimal};
use crate::report::CheckRecord;
use crate::verdict::Mode;

/// Truncation levels checked beyond the stable index.
pub const DEFAULT_DEPTH: usize = 3;

/// Largest truncated `L'` handed to the brute-force smallness oracle.
pub const BRUTE_SMALL_MAX_DIM: usize = 6;

#[derive(Clone, Debug)]
pub struct CoverCertificate {
    pub pullback: PullbackModule,
    /// Truncation levels examined.
    pub levels: Vec<usize>,
    pub checks: Vec<CheckRecord>,
}

impl CoverCertificate {
    pub fn passing(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    /// The check whose name starts with `prefix`, e.g. `"C5"`.
    pub fn check(&self, prefix: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name.starts_with(prefix))
    }
}

/// Covers the tail quotient of `n` projectively, forms the pullback and
/// evaluates every check at levels `stable ..= stable + depth`.
pub fn g_flat_cover(n: &Arc<FpRModule>, depth: usize, seed: u64) -> Result<CoverCertificate> {
    verify_certificate(PullbackModule::from_cover(n)?, depth, seed)
}

fn per_level(levels: &[usize], ok: &[bool]) -> Value {
    json!(levels.iter().zip(ok).map(|(k, b)| json!({"level": k, "ok": b})).collect::<Vec<_>>())
}

fn stable(ok: &[bool]) -> bool {
    ok.windows(2).all(|w| w[0] == w[1])
}

/// Evaluates the checks:
///
/// * C1 premises: `g` onto, `X = ker g`, `L` projective over `S`;
/// * C2 flatness of `L'`: its components agree with those of `N` and are flat
///   over `T`, its tail is `L`;
/// * C3 `pi1` onto at every level;
/// * C4 `ker pi1 = eps2(X)` at every level, so `dim L'_k = dim N_k + dim X`;
/// * C5 `eps2(X)` small in `L'`: proven from `X` small in `L`, and checked
///   by radical containment and, on tiny levels, by brute force;
/// * C6 `g` right minimal, which transfers to `pi1`; endomorphisms of each
///   truncated `L'` fixing `pi1` are scanned as well.
pub fn verify_certificate(pb: PullbackModule, depth: usize, seed: u64) -> Result<CoverCertificate> {
    let stable_index = pb.n.stable_index();
    let levels: Vec<usize> = (stable_index.max(1)..=stable_index + depth).collect();
    let truncs: Vec<TruncatedPullback> = levels.iter().map(|&k| pb.truncation(k)).collect::<Result<_>>()?;
    let dim_x = pb.x.dim();
    let mut checks = Vec::with_capacity(6);

    let t0 = Instant::now();
    let g_onto = pb.g.is_onto();
    let kernel_ok = pb.x == pb.g.kernel() && dim_x + pb.v.dim() == pb.l.dim();
    let l_projective = is_projective(&pb.l)?;
    let mut c1 = CheckRecord::from_bool("C1 premises", g_onto && kernel_ok && l_projective, Mode::Proven)
        .with("g_onto", g_onto)
        .with("x_is_kernel", kernel_ok)
        .with("l_projective", l_projective)
        .with("dim_l", pb.l.dim())
        .with("dim_v", pb.v.dim())
        .with("dim_x", dim_x);
    c1.duration = Some(t0.elapsed());
    checks.push(c1);

    let t0 = Instant::now();
    let mut comps = Vec::new();
    for i in 1..=stable_index + 1 {
        comps.push(pb.n.component(i)?);
    }
    let flat = flat_from_parts(pb.n.ring(), &pb.l, &comps)?;
    let level_ok: Vec<bool> = truncs
        .iter()
        .map(|t| {
            let slots = (1..=t.ring.k()).all(|i| {
                let e = t.ring.slot_idempotent(i);
                t.l_prime.action_of(&e).rank() == t.n_k.action_of(&e).rank()
            });
            let torsion = t.l_prime.action_of(&t.ring.slot_sum()).rank();
            slots && t.l_prime.dim() - torsion == pb.l.dim() && t.pi2.is_onto()
        })
        .collect();
    let mut c2 = CheckRecord::from_bool("C2 flatness of L'", flat && level_ok.iter().all(|&b| b), Mode::Proven)
        .with("flat_by_components", flat)
        .with("levels", per_level(&levels, &level_ok))
        .with("depth_stable", stable(&level_ok));
    c2.duration = Some(t0.elapsed());
    checks.push(c2);

    let t0 = Instant::now();
    let level_ok: Vec<bool> = truncs.iter().map(|t| t.pi1.is_onto()).collect();
    let mut c3 = CheckRecord::from_bool("C3 pi1 onto", g_onto && level_ok.iter().all(|&b| b), Mode::Exhaustive)
        .with("levels", per_level(&levels, &level_ok))
        .with("dims_n", truncs.iter().map(|t| t.n_k.dim()).collect::<Vec<_>>())
        .with("depth_stable", stable(&level_ok));
    c3.duration = Some(t0.elapsed());
    checks.push(c3);

    let t0 = Instant::now();
    let level_ok: Vec<bool> = truncs
        .iter()
        .map(|t| {
            t.eps2.is_injective()
                && t.pi1.kernel() == t.eps2.image()
                && t.pi2.kernel() == t.eps1.image()
                && t.l_prime.dim() == t.n_k.dim() + dim_x
                && t.commutes()
        })
        .collect();
    let mut c4 = CheckRecord::from_bool("C4 kernel of pi1", level_ok.iter().all(|&b| b), Mode::Exhaustive)
        .with("levels", per_level(&levels, &level_ok))
        .with("dims_l_prime", truncs.iter().map(|t| t.l_prime.dim()).collect::<Vec<_>>())
        .with("dim_x", dim_x)
        .with("depth_stable", stable(&level_ok));
    c4.duration = Some(t0.elapsed());
    checks.push(c4);

    let t0 = Instant::now();
    let premise = is_small(&pb.x, &pb.l)?;
    let mut brute_runs = 0u64;
    let mut brute_agree = true;
    let mut level_ok = Vec::with_capacity(truncs.len());
    for t in &truncs {
        let image = t.eps2.image();
        let mut ok = t.l_prime.radical()?.contains_subspace(&image);
        if t.l_prime.field().p() == 2 && t.l_prime.dim() <= BRUTE_SMALL_MAX_DIM {
            brute_runs += 1;
            let brute = brute_small(&image, &t.l_prime)?;
            brute_agree &= brute;
            ok &= brute;
        }
        level_ok.push(ok);
    }
    let c5_mode = if premise { Mode::Proven } else { Mode::Exhaustive };
    let mut c5 = CheckRecord::from_bool("C5 eps2(X) small in L'", premise && level_ok.iter().all(|&b| b), c5_mode)
        .with("x_small_in_l", premise)
        .with("levels", per_level(&levels, &level_ok))
        .with("brute_force_runs", brute_runs)
        .with("brute_force_agrees", brute_agree)
        .with("depth_stable", stable(&level_ok));
    c5.duration = Some(t0.elapsed());
    checks.push(c5);

    let t0 = Instant::now();
    let g_min = is_right_minimal(&pb.g, seed)?;
    let mut scans = Vec::with_capacity(truncs.len());
    let mut level_ok = Vec::with_capacity(truncs.len());
    for (t, &k) in truncs.iter().zip(&levels) {
        let scan_seed = seed.wrapping_add(k as u64);
        let v = scan_right_minimal(&t.pi1, scan_seed)?;
        level_ok.push(v.minimal);
        let mut entry = json!({"level": k, "mode": v.mode, "minimal": v.minimal, "trials": v.checked});
        if v.mode == Mode::Sampled {
            entry["seed"] = json!(scan_seed);
        }
        scans.push(entry);
    }
    let mut c6 = CheckRecord::from_bool("C6 minimality", g_min.minimal && level_ok.iter().all(|&b| b), g_min.mode)
        .with("g_minimal", g_min.minimal)
        .with("g_mode", g_min.mode.as_str())
        .with("truncation_scans", scans)
        .with("depth_stable", stable(&level_ok));
    c6.duration = Some(t0.elapsed());
    checks.push(c6);

    Ok(CoverCertificate { pullback: pb, levels, checks })
}
