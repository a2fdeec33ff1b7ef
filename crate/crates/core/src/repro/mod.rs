//! Named, self-contained scenarios that rebuild the worked examples,
//! counterexamples and equivalence audits, each with a machine-checkable
//! outcome.
//!
//! Every scenario builds its own groups, so scenarios are independent and
//! [`run_all`] evaluates them concurrently. Results other than `elapsed_ms`
//! are deterministic.

mod audits;
mod examples;
mod pool;
mod structure;
mod suites;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::construct::GroupSpec;
use crate::engine::{Caps, GroupRecord, Permutation, PermutationGroup};
use crate::error::{GroupError, Result};

pub use pool::{
    lattice_pool, pool_group, pool_spec, LatticeGroup, PoolGroup, AGREEMENT_POOL, HALL_POOL,
    LATTICE_POOL, SUPPLEMENT_POOL, TRANSITIVE_POOL,
};

/// Seed of the randomized suites.
pub const REPRO_SEED: u64 = 20_240_917;

/// Instances drawn by each randomized suite.
pub const SUITE_INSTANCES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproConfig {
    pub seed: u64,
    pub caps: Caps,
    /// Runs the off-by-default scenarios.
    pub optional: bool,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            seed: REPRO_SEED,
            caps: Caps::default(),
            optional: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioStatus {
    Pass,
    Fail,
    Skipped,
}

/// Minimal reproduction of a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub spec: Option<GroupSpec>,
    pub group: GroupRecord,
    pub subgroup: GroupRecord,
    pub element: Option<Permutation>,
}

impl Witness {
    pub fn new(
        spec: Option<&GroupSpec>,
        g: &PermutationGroup,
        h: &PermutationGroup,
        element: Option<&Permutation>,
    ) -> Self {
        Witness {
            spec: spec.cloned(),
            group: g.to_record(),
            subgroup: h.to_record(),
            element: element.cloned(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub name: String,
    pub status: ScenarioStatus,
    /// Computed values next to the expected ones.
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
}

/// What a scenario body reports.
pub(crate) struct Outcome {
    status: ScenarioStatus,
    details: Value,
    witness: Option<Witness>,
}

impl Outcome {
    pub(crate) fn check(pass: bool, details: Value) -> Self {
        Outcome {
            status: if pass {
                ScenarioStatus::Pass
            } else {
                ScenarioStatus::Fail
            },
            details,
            witness: None,
        }
    }

    pub(crate) fn skipped(details: Value) -> Self {
        Outcome {
            status: ScenarioStatus::Skipped,
            details,
            witness: None,
        }
    }

    /// Attaches the witness; it is kept only on failure.
    pub(crate) fn with_witness(mut self, witness: Option<Witness>) -> Self {
        if self.status == ScenarioStatus::Fail {
            self.witness = witness;
        }
        self
    }
}

struct Scenario {
    name: &'static str,
    claim: &'static str,
    run: fn(&ReproConfig) -> Result<Outcome>,
}

const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "frobenius_product",
        claim: "the diagonal of the two order-7 kernels in (C7:C3)^2 has index 63 and is not pronormal; its join with a conjugate is abelian of order 49",
        run: examples::frobenius_product,
    },
    Scenario {
        name: "cpwrsn_grid",
        claim: "for A cyclic of order 2..6 and n in 2..4 the top Sym(n) of A wr Sym(n) is pronormal iff gcd(|A|, n) = 1",
        run: examples::cpwrsn_grid,
    },
    Scenario {
        name: "counterexample_core",
        claim: "in L = Sp2(3) wr Sym(3) <= Sp6(3) the preimage of the top Sym(3) over O2(L) has odd index 27 and is not pronormal; |Sp6(3):L| is odd",
        run: examples::counterexample_core,
    },
    Scenario {
        name: "overgroup_transfer",
        claim: "pronormality in G passes to intermediate subgroups, and returns from M when M contains the normalizer of a Sylow subgroup of G lying in H",
        run: audits::overgroup_transfer,
    },
    Scenario {
        name: "hall_audit",
        claim: "H is pronormal iff N_G(H) is transitive on fix(H) in every transitive action",
        run: audits::hall_audit,
    },
    Scenario {
        name: "praeger_suite",
        claim: "a nontrivial pronormal subgroup of a transitive group of degree n fixes at most (n-1)/2 points; equality in Alt(5) and GL3(2)",
        run: audits::praeger_suite,
    },
    Scenario {
        name: "frattini_suite",
        claim: "for H <= A normal in G: H pronormal in G iff H pronormal in A and G = A N_G(H) iff H pronormal in A and H^A = H^G",
        run: suites::frattini_suite,
    },
    Scenario {
        name: "quot_suite",
        claim: "pronormality passes to quotients, and H is pronormal iff HN/N is pronormal in G/N and H is pronormal in N_G(HN)",
        run: suites::quot_suite,
    },
    Scenario {
        name: "supl_suite",
        claim: "U = C_U(H)[H,U] for coprime H and U = N_U(H)[H,U] for pronormal H, for every H-invariant U in a normal V",
        run: suites::supl_suite,
    },
    Scenario {
        name: "suffcriteria_suite",
        claim: "for V abelian normal and G = HV, H is pronormal iff U = N_U(H)[H,U] for every H-invariant U <= V",
        run: suites::suffcriteria_suite,
    },
    Scenario {
        name: "normsyl_agreement",
        claim: "the definition, Sylow-normalizer and reduction deciders agree on every odd-index subgroup",
        run: audits::normsyl_agreement,
    },
    Scenario {
        name: "ngs_profiles",
        claim: "|N_G(S):S| for a Sylow 2-subgroup S matches the arithmetic prediction for PSL2(5), PSL2(7), PSL2(11), PSL2(13), PSp4(3)",
        run: audits::ngs_profiles,
    },
    Scenario {
        name: "awrsn_probe",
        claim: "odd-index pronormality in A wr Sym(n) against the strict and non-strict digit conditions",
        run: structure::awrsn_probe,
    },
    Scenario {
        name: "prodsympl_small",
        claim: "every odd-index subgroup of SL2(3)^2 and of SL2(3) x SL2(5) is pronormal",
        run: structure::prodsympl_small,
    },
    Scenario {
        name: "dirprod_injection",
        claim: "an odd-index Q in a direct product projecting onto an almost simple factor with 2-group outer part contains that factor",
        run: structure::dirprod_injection,
    },
    Scenario {
        name: "pspwreath_structure",
        claim: "every odd-index K of Alt(5) wr Sym(2) lies in a conjugate of M1 wr Sym(2) whenever M1 contains N_{L1}(K0^pi1)",
        run: structure::pspwreath_structure,
    },
    Scenario {
        name: "critexten_suite",
        claim: "the extension criteria agree instance-wise on qualifying pool pairs",
        run: audits::critexten_suite,
    },
    Scenario {
        name: "nonpron_product_of_pronormal",
        claim: "AGammaL(1,8) = 2^3:(7:3) has all odd-index subgroups pronormal, but its direct square does not",
        run: examples::nonpron_product_of_pronormal,
    },
    Scenario {
        name: "sp6_direct",
        claim: "optional: the odd-index counterexample is checked directly inside Sp6(3)",
        run: examples::sp6_direct,
    },
];

pub fn list_scenarios() -> Vec<&'static str> {
    SCENARIOS.iter().map(|s| s.name).collect()
}

/// One-line statement of what a scenario checks.
pub fn scenario_claim(name: &str) -> Result<&'static str> {
    find(name).map(|s| s.claim)
}

fn find(name: &str) -> Result<&'static Scenario> {
    SCENARIOS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| GroupError::UnknownScenario(name.to_string()))
}

pub fn run_scenario(name: &str) -> Result<ScenarioResult> {
    run_scenario_with(name, &ReproConfig::default())
}

/// Runs one scenario. Errors inside the scenario (including caps) are a
/// failure of that scenario, not of the call.
pub fn run_scenario_with(name: &str, config: &ReproConfig) -> Result<ScenarioResult> {
    let scenario = find(name)?;
    let start = Instant::now();
    let outcome = (scenario.run)(config)
        .unwrap_or_else(|e| Outcome::check(false, serde_json::json!({ "error": e.to_string() })));
    Ok(ScenarioResult {
        name: scenario.name.to_string(),
        status: outcome.status,
        details: outcome.details,
        witness: outcome.witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub results: Vec<ScenarioResult>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} scenarios: {} passed, {} failed, {} skipped",
            self.results.len(),
            self.summary.passed,
            self.summary.failed,
            self.summary.skipped
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Runs every scenario whose name contains `filter`, in registry order.
pub fn run_all(filter: Option<&str>, config: &ReproConfig) -> Report {
    let selected: Vec<&Scenario> = SCENARIOS
        .iter()
        .filter(|s| filter.is_none_or(|f| s.name.contains(f)))
        .collect();
    let results: Vec<ScenarioResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|s| scope.spawn(move || run_scenario_with(s.name, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .expect("scenario thread panicked")
                    .expect("registered names resolve")
            })
            .collect()
    });
    let count = |st| results.iter().filter(|r| r.status == st).count();
    let summary = Summary {
        passed: count(ScenarioStatus::Pass),
        failed: count(ScenarioStatus::Fail),
        skipped: count(ScenarioStatus::Skipped),
    };
    Report { results, summary }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let names = list_scenarios();
        assert!(names.len() >= 15);
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert_eq!(
            run_scenario("no_such").unwrap_err(),
            GroupError::UnknownScenario("no_such".into())
        );
    }

    #[test]
    fn frobenius_product_passes() {
        let r = run_scenario("frobenius_product").unwrap();
        assert_eq!(r.status, ScenarioStatus::Pass, "{}", r.details);
        assert!(r.witness.is_none());
        assert_eq!(r.details["index"], 63);
    }

    #[test]
    fn optional_scenario_is_skipped_by_default() {
        let r = run_scenario("sp6_direct").unwrap();
        assert_eq!(r.status, ScenarioStatus::Skipped);
    }

    #[test]
    fn filter_selects_by_substring() {
        let report = run_all(Some("frobenius"), &ReproConfig::default());
        assert_eq!(report.results.len(), 1);
        assert!(report.all_passed());
        assert_eq!(
            report.summary_line(),
            "1 scenarios: 1 passed, 0 failed, 0 skipped"
        );
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back.results[0].name, "frobenius_product");
    }

    #[test]
    fn results_are_repeatable() {
        let a = run_scenario("nonpron_product_of_pronormal").unwrap();
        let b = run_scenario("nonpron_product_of_pronormal").unwrap();
        assert_eq!(a.status, b.status);
        assert_eq!(a.details, b.details);
    }
}
