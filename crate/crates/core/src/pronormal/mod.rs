//! Pronormality deciders and the criteria and transfer principles built on them.
//!
//! `H` is pronormal in `G` when, for every `g` in `G`, the subgroups `H` and
//! `H^g` are conjugate inside their join `<H, H^g>`. The deciders here test a
//! reduced set of elements `g` and record a conjugator for each, or the first
//! failing `g` together with the size of the exhausted search.

mod abelian;
mod critexten;
mod hall;
mod praeger;
mod transfer;

#[cfg(test)]
mod tests;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::engine::{
    conjugator_within, coset_reps, double_coset_reps, intersection, normalizer, sylow, Caps,
    Permutation, PermutationGroup,
};
use crate::error::{GroupError, Result};

pub use abelian::{abelian_criterion, decompose_check, AbelianOutcome, Decomposition};
pub use critexten::{critexten_check, critexten_ext_check, CritExtenExtReport, CritExtenReport};
pub use hall::{hall_equivalence_audit, hall_fixpoint_criterion, HallAudit, HallClass};
pub use praeger::{praeger_audit, PraegerCase, PraegerReport};
pub use transfer::{
    frattini_equivalence, quot_transfer, reduction_pronormal, FrattiniReport, QuotReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pronormal,
    NotPronormal,
}

impl Status {
    pub fn from_bool(pronormal: bool) -> Self {
        if pronormal {
            Status::Pronormal
        } else {
            Status::NotPronormal
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Definition,
    Normsyl,
    AbelianCriterion,
    Reduction,
}

/// Outcome of a pronormality test, with its certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub method: Method,
    /// First element of the tested set for which `H` and `H^g` are not
    /// conjugate in their join.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_g: Option<Permutation>,
    /// Order of `<H, H^g>` for the failing `g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub join_order: Option<u64>,
    /// Number of conjugates of `H` under the join that were searched, all of
    /// them different from `H^g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub searched: Option<u64>,
    /// Pairs `(g, c)` with `c` in `<H, H^g>` and `H^c = H^g`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conjugators: Vec<(Permutation, Permutation)>,
    pub tested_set: String,
}

impl Verdict {
    pub fn is_pronormal(&self) -> bool {
        self.status == Status::Pronormal
    }

    pub(crate) fn summary(status: Status, method: Method, tested_set: impl Into<String>) -> Self {
        Verdict {
            status,
            method,
            failing_g: None,
            join_order: None,
            searched: None,
            conjugators: Vec::new(),
            tested_set: tested_set.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

pub(crate) fn check_sub(g: &PermutationGroup, h: &PermutationGroup) -> Result<()> {
    if h.degree() != g.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    if !g.contains_group(h) {
        return Err(GroupError::NotSubgroup);
    }
    Ok(())
}

fn join_generators(h: &PermutationGroup, x: &Permutation) -> Vec<Permutation> {
    let mut gens = h.generators().to_vec();
    gens.extend(h.generators().iter().map(|y| y.conjugate(x)));
    gens
}

enum WitnessOutcome {
    Conjugate(Permutation),
    Fails { join_order: u64, searched: u64 },
}

/// Tests one witness `g`, where `n = N_G(H)`.
fn test_witness(
    h: &PermutationGroup,
    n: &PermutationGroup,
    g: &Permutation,
    caps: &Caps,
) -> Result<WitnessOutcome> {
    if n.contains(g) {
        return Ok(WitnessOutcome::Conjugate(Permutation::identity(h.degree())));
    }
    let gens = join_generators(h, g);
    let join = PermutationGroup::new(h.degree(), gens.clone())?;
    if join.order() > &BigUint::from(caps.join_order) {
        return Err(GroupError::cap("join order", caps.join_order));
    }
    let (found, searched) = conjugator_within(n, &gens, g, caps.search)?;
    Ok(match found {
        Some(c) => WitnessOutcome::Conjugate(c),
        None => WitnessOutcome::Fails {
            join_order: join.order_u64(),
            searched: searched as u64,
        },
    })
}

/// Runs the witness tests in order and stops at the first failure.
fn decide(
    h: &PermutationGroup,
    n: &PermutationGroup,
    witnesses: &[Permutation],
    method: Method,
    tested_set: String,
    caps: &Caps,
) -> Result<Verdict> {
    let mut verdict = Verdict::summary(Status::Pronormal, method, tested_set);
    for g in witnesses {
        match test_witness(h, n, g, caps)? {
            WitnessOutcome::Conjugate(c) => verdict.conjugators.push((g.clone(), c)),
            WitnessOutcome::Fails {
                join_order,
                searched,
            } => {
                verdict.status = Status::NotPronormal;
                verdict.failing_g = Some(g.clone());
                verdict.join_order = Some(join_order);
                verdict.searched = Some(searched);
                verdict.conjugators.clear();
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

/// Decides pronormality of `h` in `g` from the definition.
///
/// Witnesses are representatives of the double cosets `HgH`. This suffices:
/// for `a, b` in `H`, `H^{agb} = (H^g)^b` and `<H, H^{agb}> = <H, H^g>^b`, so
/// conjugation by `b` carries a conjugator for `g` to one for `agb` and back.
pub fn is_pronormal(g: &PermutationGroup, h: &PermutationGroup, caps: &Caps) -> Result<Verdict> {
    check_sub(g, h)?;
    if g.normalizes(h) {
        return Ok(Verdict::summary(
            Status::Pronormal,
            Method::Definition,
            "H is normal in G",
        ));
    }
    let n = normalizer(g, h, caps)?;
    let reps: Vec<Permutation> = double_coset_reps(g, h, h, caps)?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let tested = format!(
        "{} representatives of the (H,H)-double cosets of G",
        reps.len()
    );
    decide(h, &n, &reps, Method::Definition, tested, caps)
}

/// Decides pronormality of an odd-index subgroup through the normalizer of a
/// Sylow 2-subgroup.
///
/// With `S` a Sylow 2-subgroup of `G` inside `H`, only `g` in `N_G(S)` need
/// testing. Within `N_G(S)` the test depends only on the coset `(N_G(S) ∩ H)g`,
/// since `H^{hg} = H^g` for `h` in `H`.
pub fn is_pronormal_odd(
    g: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
) -> Result<Verdict> {
    check_sub(g, h)?;
    let index = g.order() / h.order();
    if !index.bit(0) {
        return Err(GroupError::Precondition(format!(
            "index {index} of H in G is even"
        )));
    }
    let s = sylow(h, 2)?;
    let two_part_g = crate::engine::p_part_big(g.order(), 2);
    if s.order() != &two_part_g {
        return Err(GroupError::Precondition(
            "Sylow 2-subgroup of H is not Sylow in G".into(),
        ));
    }
    if g.normalizes(h) {
        return Ok(Verdict::summary(
            Status::Pronormal,
            Method::Normsyl,
            "H is normal in G",
        ));
    }
    let ns = normalizer(g, &s, caps)?;
    let k = intersection(&ns, h, caps)?;
    let reps = coset_reps(&ns, &k, caps)?;
    let n = normalizer(g, h, caps)?;
    let tested = format!(
        "{} representatives of the cosets of N_G(S) ∩ H in N_G(S), |N_G(S)| = {}",
        reps.len(),
        ns.order()
    );
    decide(h, &n, &reps, Method::Normsyl, tested, caps)
}

/// Independently replays a verdict's certificates.
///
/// Each recorded conjugator must lie in its join and carry `H` to `H^g`. For a
/// negative verdict whose join has at most `caps.audit_order` elements, every
/// element of the join is tried as a conjugator.
pub fn verify_verdict(
    g: &PermutationGroup,
    h: &PermutationGroup,
    verdict: &Verdict,
    caps: &Caps,
) -> Result<bool> {
    check_sub(g, h)?;
    for (x, c) in &verdict.conjugators {
        if !g.is_member(x)? {
            return Ok(false);
        }
        let join = PermutationGroup::new(h.degree(), join_generators(h, x))?;
        if !join.contains(c) || !h.conjugate(c).same_group(&h.conjugate(x)) {
            return Ok(false);
        }
    }
    if let Some(x) = &verdict.failing_g {
        if verdict.status != Status::NotPronormal || !g.is_member(x)? {
            return Ok(false);
        }
        let join = PermutationGroup::new(h.degree(), join_generators(h, x))?;
        if Some(join.order_u64()) != verdict.join_order {
            return Ok(false);
        }
        if join.order_u64() <= caps.audit_order {
            let target = h.conjugate(x);
            let conjugate_found = join.elements().any(|c| {
                h.generators()
                    .iter()
                    .all(|y| target.contains(&y.conjugate(&c)))
            });
            if conjugate_found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
