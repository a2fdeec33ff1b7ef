//! Randomized audits over `(G, normal subgroup, H)` triples drawn from the
//! lattices of the pool groups with the published seed.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::pool::{lattice_pool, LatticeGroup, LATTICE_POOL, SUPPLEMENT_POOL};
use super::{Outcome, ReproConfig, Witness, SUITE_INSTANCES};
use crate::engine::{intersection, Caps, PermutationGroup};
use crate::error::Result;
use crate::pronormal::{
    abelian_criterion, decompose_check, frattini_equivalence, is_pronormal, quot_transfer,
};

/// `(pool entry, normal subgroup, H)` as lattice positions.
type Triple = (usize, usize, usize);

fn shuffled(mut triples: Vec<Triple>, config: &ReproConfig, salt: u64) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ salt);
    triples.shuffle(&mut rng);
    triples
}

/// Triples with `N` normal and `H` arbitrary, or contained in `N` when `inside`.
fn triples(pool: &[LatticeGroup], inside: bool) -> Vec<Triple> {
    let mut out = Vec::new();
    for (e, entry) in pool.iter().enumerate() {
        for &n in &entry.normals {
            let hs = if inside {
                entry.below(n)
            } else {
                (0..entry.lattice.len()).collect()
            };
            out.extend(hs.into_iter().map(|h| (e, n, h)));
        }
    }
    out
}

/// Runs `check(entry, n, N, H)` on triples until `SUITE_INSTANCES` were
/// applicable; `check` returns `None` for an inapplicable triple and
/// `Some(holds)` otherwise.
fn audit<F>(
    pool: &[LatticeGroup],
    candidates: Vec<Triple>,
    mut check: F,
) -> Result<(Value, bool, Option<Witness>)>
where
    F: FnMut(&LatticeGroup, usize, &PermutationGroup, &PermutationGroup) -> Result<Option<bool>>,
{
    let available = candidates.len();
    let (mut instances, mut violations, mut drawn) = (0, 0, 0);
    let mut witness = None;
    for (e, n, h) in candidates {
        if instances == SUITE_INSTANCES {
            break;
        }
        drawn += 1;
        let entry = &pool[e];
        let (nn, hh) = (entry.lattice.group(n), entry.lattice.group(h));
        match check(entry, n, &nn, &hh)? {
            None => {}
            Some(holds) => {
                instances += 1;
                if !holds {
                    violations += 1;
                    if witness.is_none() {
                        witness = Some(Witness::new(
                            Some(&entry.pool.spec),
                            entry.group(),
                            &hh,
                            None,
                        ));
                    }
                }
            }
        }
    }
    let pass = instances >= SUITE_INSTANCES && violations == 0;
    Ok((
        json!({
            "candidates": available,
            "drawn": drawn,
            "instances": instances,
            "required_instances": SUITE_INSTANCES,
            "violations": violations,
        }),
        pass,
        witness,
    ))
}

fn finish(
    config: &ReproConfig,
    (mut details, pass, witness): (Value, bool, Option<Witness>),
) -> Outcome {
    details["seed"] = json!(config.seed);
    Outcome::check(pass, details).with_witness(witness)
}

pub(crate) fn frattini_suite(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let pool = lattice_pool(LATTICE_POOL, caps)?;
    let candidates = shuffled(triples(&pool, true), config, 1);
    let result = audit(&pool, candidates, |entry, _, a, h| {
        Ok(Some(frattini_equivalence(entry.group(), a, h, caps)?.agree))
    })?;
    Ok(finish(config, result))
}

pub(crate) fn quot_suite(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let pool = lattice_pool(LATTICE_POOL, caps)?;
    let candidates = shuffled(triples(&pool, false), config, 2);
    let result = audit(&pool, candidates, |entry, _, n, h| {
        Ok(Some(quot_transfer(entry.group(), n, h, caps)?.all_hold()))
    })?;
    Ok(finish(config, result))
}

/// Subgroups of `v` normalized by `h`, from the lattice.
fn invariant_subgroups(
    entry: &LatticeGroup,
    v: usize,
    h: &PermutationGroup,
) -> Vec<PermutationGroup> {
    entry
        .below(v)
        .into_iter()
        .map(|u| entry.lattice.group(u))
        .filter(|u| h.normalizes(u))
        .collect()
}

fn supl_holds(
    entry: &LatticeGroup,
    v: usize,
    h: &PermutationGroup,
    coprime: bool,
    pronormal: bool,
    caps: &Caps,
) -> Result<bool> {
    for u in invariant_subgroups(entry, v, h) {
        let d = decompose_check(h, &u, caps)?;
        // coprime: N_U(H) = C_U(H), so the product is C_U(H)[H,U]
        if coprime && !(d.equal && d.centralizer_agrees == Some(true)) {
            return Ok(false);
        }
        if pronormal && !d.equal {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn supl_suite(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let pool = lattice_pool(LATTICE_POOL, caps)?;
    let candidates = shuffled(triples(&pool, false), config, 3);
    let (mut coprime_count, mut pronormal_count) = (0, 0);
    let result = audit(&pool, candidates, |entry, vi, v, h| {
        let coprime = h.order().gcd(v.order()) == 1u32.into();
        let pronormal = is_pronormal(entry.group(), h, caps)?.is_pronormal();
        if !coprime && !pronormal {
            return Ok(None);
        }
        coprime_count += usize::from(coprime);
        pronormal_count += usize::from(pronormal);
        Ok(Some(supl_holds(entry, vi, h, coprime, pronormal, caps)?))
    })?;
    let mut outcome = finish(config, result);
    outcome.details["coprime_instances"] = json!(coprime_count);
    outcome.details["pronormal_instances"] = json!(pronormal_count);
    Ok(outcome)
}

pub(crate) fn suffcriteria_suite(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let pool = lattice_pool(SUPPLEMENT_POOL, caps)?;
    let mut eligible = Vec::new();
    for (e, entry) in pool.iter().enumerate() {
        let g_order = entry.group().order_u64() as usize;
        for &v in &entry.normals {
            let vg = entry.lattice.group(v);
            if vg.is_trivial() || !vg.is_abelian() {
                continue;
            }
            for h in 0..entry.lattice.len() {
                let hg = entry.lattice.group(h);
                let meet = intersection(&hg, &vg, caps)?.order_u64() as usize;
                if entry.lattice.order(h) * entry.lattice.order(v) == g_order * meet {
                    eligible.push((e, v, h));
                }
            }
        }
    }
    let candidates = shuffled(eligible, config, 4);
    let (mut pronormal_count, mut failing_u) = (0, 0);
    let result = audit(&pool, candidates, |entry, _, v, h| {
        let criterion = abelian_criterion(entry.group(), v, h, caps)?;
        let def = is_pronormal(entry.group(), h, caps)?;
        pronormal_count += usize::from(def.is_pronormal());
        failing_u += usize::from(criterion.failing_u.is_some());
        Ok(Some(criterion.verdict.status == def.status))
    })?;
    let mut outcome = finish(config, result);
    outcome.details["pronormal_instances"] = json!(pronormal_count);
    outcome.details["failing_u_reported"] = json!(failing_u);
    Ok(outcome)
}
