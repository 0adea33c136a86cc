//! Named, seeded verification scenarios producing [`Report`]s.

mod battery;
mod covers;
mod example;
mod smallness;
mod suites;

use std::sync::Arc;
use std::time::Instant;

use crate::algebra::upper_triangular;
use crate::error::{Error, Result};
use crate::evmodule::{BRUTE_SMALL_MAX_DIM, DEFAULT_DEPTH};
use crate::evring::EvRing;
use crate::linalg::Fp;
use crate::report::{CheckRecord, Report};
use crate::verdict::Mode;

pub use battery::radical_battery;
pub use covers::{column_module, e22_s, s1_avatar};
pub use suites::{ext1_via_free, simple_ut2};

/// Run parameters; `trials` falls back to the scenario's default.
#[derive(Clone, Debug)]
pub struct Params {
    pub seed: u64,
    pub trials: Option<u64>,
    pub depth: usize,
    /// Largest module handed to a brute-force enumeration.
    pub brute_dim: usize,
}

impl Default for Params {
    fn default() -> Params {
        Params { seed: 0, trials: None, depth: DEFAULT_DEPTH, brute_dim: BRUTE_SMALL_MAX_DIM }
    }
}

pub struct ScenarioInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub default_trials: u64,
    run: fn(&Params, u64) -> Result<Vec<CheckRecord>>,
}

const SCENARIOS: &[ScenarioInfo] = &[
    ScenarioInfo {
        name: "example-a",
        summary: "R(M2(F2), UT2(F2)): radicals, regularity, J(R) = 0 evidence, flatness of T over S",
        default_trials: 10_000,
        run: example::run,
    },
    ScenarioInfo {
        name: "random-covers",
        summary: "seeded random presented modules, each with a verified G-flat cover certificate",
        default_trials: 100,
        run: covers::random_covers,
    },
    ScenarioInfo {
        name: "lemma-smallness-brute",
        summary: "pullbacks over truncation rings: eps2(X) + Y = L' forces Y = L', by enumeration",
        default_trials: 500,
        run: smallness::run,
    },
    ScenarioInfo {
        name: "radical-oracle",
        summary: "Jacobson radicals against the quasi-regularity oracle on the algebra battery",
        default_trials: 1,
        run: battery::run,
    },
    ScenarioInfo {
        name: "ttf-properties",
        summary: "exactness of the torsion radical and Hom-orthogonality of torsion and torsion-free samples",
        default_trials: 200,
        run: suites::ttf,
    },
    ScenarioInfo {
        name: "ext-shadow",
        summary: "Ext^1 between simple S-modules agrees over S and over the truncation rings",
        default_trials: 1,
        run: suites::ext_shadow,
    },
    ScenarioInfo {
        name: "covers-battery",
        summary: "named presented modules with expected cover dimensions, plus a non-minimal control",
        default_trials: 1,
        run: covers::battery,
    },
    ScenarioInfo {
        name: "projective-covers",
        summary: "projective covers of simple, radical and random UT2(F2)-modules",
        default_trials: 50,
        run: suites::projective_covers,
    },
];

pub fn scenarios() -> &'static [ScenarioInfo] {
    SCENARIOS
}

pub fn run(name: &str, params: &Params) -> Result<Report> {
    let info = SCENARIOS.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownScenario {
        name: name.to_string(),
        registered: SCENARIOS.iter().map(|s| s.name).collect::<Vec<_>>().join(", "),
    })?;
    let trials = params.trials.unwrap_or(info.default_trials);
    let start = Instant::now();
    let checks = (info.run)(params, trials)?;
    Ok(Report {
        scenario: name.to_string(),
        seed: params.seed,
        trials,
        depth: params.depth,
        checks,
        elapsed: Some(start.elapsed()),
    })
}

/// The seed of trial `i`, independent of how trials are scheduled.
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `R(M2(F2), UT2(F2))` with the inclusion of upper triangular matrices.
pub fn example_ring() -> Result<Arc<EvRing>> {
    let (_, iota) = upper_triangular(Fp::new(2)?, 2)?;
    EvRing::new(iota)
}

/// The weakest of the modes: proven, then exhaustive, then sampled.
fn weakest(modes: impl IntoIterator<Item = Mode>) -> Mode {
    let rank = |m: Mode| match m {
        Mode::Proven => 0,
        Mode::Exhaustive => 1,
        Mode::Sampled => 2,
    };
    modes.into_iter().max_by_key(|&m| rank(m)).unwrap_or(Mode::Proven)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario_lists_the_registry() {
        let err = run("nope", &Params::default()).unwrap_err().to_string();
        for s in scenarios() {
            assert!(err.contains(s.name), "{err}");
        }
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|i| trial_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }

    #[test]
    fn weakest_mode() {
        assert_eq!(weakest([Mode::Proven, Mode::Sampled, Mode::Exhaustive]), Mode::Sampled);
        assert_eq!(weakest([]), Mode::Proven);
    }
}
