use serde_json::json;

use super::{Outcome, ReproConfig, Witness};
use crate::construct::{realize, GroupSpec};
use crate::engine::{
    all_subgroups, coset_reps, intersection, minimal_normal_subgroups, normalizer, Epimorphism,
    PermutationGroup,
};
use crate::error::Result;
use crate::oracle::{all_odd_index_pronormal, awrsn_condition, odd_index_subgroups};

fn wreath(base: GroupSpec, n: usize) -> GroupSpec {
    GroupSpec::Wreath {
        base: Box::new(base),
        top_degree: n,
    }
}

pub(crate) fn awrsn_probe(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let mut cells = Vec::new();
    let (mut strict_ok, mut loose_ok) = (true, true);
    let mut c3_wr_s3 = None;
    for a in 2..=6u64 {
        for n in 2..=4u64 {
            let g = realize(&wreath(GroupSpec::Cyclic(a as usize), n as usize))?.group;
            let truth = all_odd_index_pronormal(&g, caps)?.all_pronormal;
            let strict = awrsn_condition(a, &[n], true);
            let loose = awrsn_condition(a, &[n], false);
            strict_ok &= strict == truth;
            loose_ok &= loose == truth;
            if (a, n) == (3, 3) {
                c3_wr_s3 = Some(truth);
            }
            cells.push(json!({
                "a": a,
                "n": n,
                "all_odd_index_pronormal": truth,
                "strict": strict,
                "non_strict": loose,
            }));
        }
    }
    let matching = match (strict_ok, loose_ok) {
        (true, true) => "both",
        (true, false) => "strict",
        (false, true) => "non_strict",
        (false, false) => "neither",
    };
    Ok(Outcome::check(
        (strict_ok || loose_ok) && c3_wr_s3 == Some(false),
        json!({
            "cells": cells,
            "c3_wr_sym3_all_odd_index_pronormal": c3_wr_s3,
            "matching_variant": matching,
        }),
    ))
}

pub(crate) fn prodsympl_small(config: &ReproConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut pass = true;
    let mut witness = None;
    for (name, spec) in [
        (
            "SL2(3)^2",
            GroupSpec::Product(vec![GroupSpec::Sl2 { q: 3 }, GroupSpec::Sl2 { q: 3 }]),
        ),
        (
            "SL2(3) x SL2(5)",
            GroupSpec::Product(vec![GroupSpec::Sl2 { q: 3 }, GroupSpec::Sl2 { q: 5 }]),
        ),
    ] {
        let g = realize(&spec)?.group;
        let summary = all_odd_index_pronormal(&g, &config.caps)?;
        pass &= summary.all_pronormal;
        if let (None, Some(r)) = (&witness, summary.counterexamples.first()) {
            witness = Some(Witness::new(Some(&spec), &g, &r.to_group()?, None));
        }
        rows.push(json!({
            "group": name,
            "order": g.order_u64(),
            "classes": summary.classes,
            "all_odd_index_pronormal": summary.all_pronormal,
        }));
    }
    Ok(Outcome::check(pass, json!({ "groups": rows })).with_witness(witness))
}

/// Factors that are almost simple with a 2-group on top of the socle, read
/// from the `factor{i}.socle` handles.
fn eligible_factors(
    built: &crate::construct::BuiltGroup,
    caps: &crate::engine::Caps,
) -> Result<Vec<bool>> {
    let mut out = Vec::new();
    for i in 0..built.factor_domains.len() {
        let factor = built.handle(&format!("factor{i}"))?;
        let ok = match built.handles.get(&format!("factor{i}.socle")) {
            Some(socle) => {
                let outer = factor.order_u64() / socle.order_u64();
                let minimal = minimal_normal_subgroups(factor, caps)?;
                !socle.is_abelian()
                    && outer.is_power_of_two()
                    && minimal.len() == 1
                    && minimal[0].same_group(socle)
            }
            None => false,
        };
        out.push(ok);
    }
    Ok(out)
}

pub(crate) fn dirprod_injection(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let mut rows = Vec::new();
    let mut pass = true;
    let mut witness = None;
    for (name, spec) in [
        (
            "Alt(5)^2",
            GroupSpec::Product(vec![GroupSpec::Alt(5), GroupSpec::Alt(5)]),
        ),
        (
            "Sym(5) x Alt(5)",
            GroupSpec::Product(vec![GroupSpec::Sym(5), GroupSpec::Alt(5)]),
        ),
    ] {
        let built = realize(&spec)?;
        let g = &built.group;
        let eligible = eligible_factors(&built, caps)?;
        let projections = (0..eligible.len())
            .map(|i| built.projection(i))
            .collect::<Result<Vec<Epimorphism>>>()?;
        let (mut subgroups, mut full_projections, mut violations) = (0, 0, 0);
        for q in odd_index_subgroups(g, caps)?.subgroups {
            subgroups += 1;
            for (i, pi) in projections.iter().enumerate() {
                if !eligible[i] || pi.image(&q.group)?.order() != pi.target().order() {
                    continue;
                }
                full_projections += 1;
                if !q.group.contains_group(built.handle(&format!("factor{i}"))?) {
                    violations += 1;
                    if witness.is_none() {
                        witness = Some(Witness::new(Some(&spec), g, &q.group, None));
                    }
                }
            }
        }
        pass &= violations == 0 && full_projections > 0;
        rows.push(json!({
            "group": name,
            "eligible_factors": eligible,
            "odd_index_subgroups": subgroups,
            "full_projections": full_projections,
            "violations": violations,
        }));
    }
    Ok(Outcome::check(pass, json!({ "groups": rows })).with_witness(witness))
}

pub(crate) fn pspwreath_structure(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let spec = wreath(GroupSpec::Alt(5), 2);
    let w = realize(&spec)?;
    let g = &w.group;
    let base = w.handle("base")?;
    let top = w.handle("top")?;
    let pi1 = Epimorphism::restriction(base, 0, 5)?;
    let l1 = pi1.target();
    let lattice = all_subgroups(l1, caps)?;
    let (mut pairs, mut violations, mut subgroups) = (0, 0, 0);
    let mut witness = None;
    for k in odd_index_subgroups(g, caps)?.subgroups {
        subgroups += 1;
        let k0 = intersection(&k.group, base, caps)?;
        let n = normalizer(l1, &pi1.image(&k0)?, caps)?;
        let ni = lattice.locate(&n).expect("every subgroup is listed");
        for m in (0..lattice.len()).filter(|&j| lattice.is_subgroup(ni, j)) {
            let m1 = lattice.group(m);
            // M1 in both blocks together with the block swap
            let mut gens: Vec<_> = m1.generators().iter().map(|x| x.shifted(0, 10)).collect();
            gens.extend(m1.generators().iter().map(|x| x.shifted(5, 10)));
            gens.extend(top.generators().iter().cloned());
            let u = PermutationGroup::new(10, gens)?;
            // K <= U^r iff K^{r^-1} <= U, over right cosets Ur
            let inside = coset_reps(g, &u, caps)?
                .iter()
                .any(|r| u.contains_group(&k.group.conjugate(&r.inverse())));
            pairs += 1;
            if !inside {
                violations += 1;
                if witness.is_none() {
                    witness = Some(Witness::new(Some(&spec), g, &k.group, None));
                }
            }
        }
    }
    Ok(Outcome::check(
        violations == 0 && pairs > 0,
        json!({
            "group_order": g.order_u64(),
            "odd_index_subgroups": subgroups,
            "pairs": pairs,
            "violations": violations,
        }),
    )
    .with_witness(witness))
}
