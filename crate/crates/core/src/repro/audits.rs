use serde_json::json;

use super::pool::{lattice_pool, pool_group, AGREEMENT_POOL, HALL_POOL, TRANSITIVE_POOL};
use super::{Outcome, ReproConfig, Witness};
use crate::construct::{realize, GroupSpec};
use crate::engine::{normalizer, p_part_big, prime_factors, sylow, PermutationGroup};
use crate::error::Result;
use crate::oracle::{odd_index_subgroups, sylow2_normalizer_prediction, SimpleGroupId};
use crate::pronormal::{
    critexten_check, critexten_ext_check, hall_equivalence_audit, is_pronormal, is_pronormal_odd,
    praeger_audit, reduction_pronormal, PraegerCase,
};

/// Groups small enough that every pair `H <= M` is decided.
const OVERGROUP_POOL: &[&str] = &[
    "Sym(4)",
    "SL2(3)",
    "Alt(5)",
    "D12",
    "C7:C3",
    "C3 wr Sym(2)",
    "Sym(3)^2",
];

pub(crate) fn overgroup_transfer(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let mut rows = Vec::new();
    let mut witness = None;
    let mut pass = true;
    for entry in lattice_pool(OVERGROUP_POOL, caps)? {
        let g = entry.group();
        let lat = &entry.lattice;
        let (mut triples, mut item2_applicable, mut violations) = (0, 0, 0);
        for hi in lat.class_reps() {
            let h = lat.group(hi);
            let in_g = is_pronormal(g, &h, caps)?.is_pronormal();
            // normalizers of the Sylow subgroups of G that lie in H
            let mut sylow_normalizers = Vec::new();
            for (p, _) in prime_factors(g.order_u64()) {
                let s = sylow(&h, p)?;
                if s.order() == &p_part_big(g.order(), p) {
                    sylow_normalizers.push(normalizer(g, &s, caps)?);
                }
            }
            for mi in (0..lat.len()).filter(|&j| lat.is_subgroup(hi, j)) {
                let m = lat.group(mi);
                let in_m = is_pronormal(&m, &h, caps)?.is_pronormal();
                triples += 1;
                let item1 = !in_g || in_m;
                let applies = in_m && sylow_normalizers.iter().any(|n| m.contains_group(n));
                item2_applicable += usize::from(applies);
                let item2 = !applies || in_g;
                if !(item1 && item2) {
                    violations += 1;
                    if witness.is_none() {
                        witness = Some(Witness::new(Some(&entry.pool.spec), &m, &h, None));
                    }
                }
            }
        }
        pass &= violations == 0;
        rows.push(json!({
            "group": entry.pool.name,
            "triples": triples,
            "item2_applicable": item2_applicable,
            "violations": violations,
        }));
    }
    Ok(Outcome::check(pass, json!({ "groups": rows })).with_witness(witness))
}

pub(crate) fn hall_audit(config: &ReproConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut total = 0;
    for name in HALL_POOL {
        let pg = pool_group(name)?;
        let audit = hall_equivalence_audit(pg.group(), &config.caps)?;
        total += audit.mismatches;
        rows.push(json!({
            "group": name,
            "order": audit.group_order,
            "classes": audit.classes.len(),
            "actions": audit.actions,
            "non_pronormal_classes": audit.classes.iter().filter(|c| !c.pronormal).count(),
            "mismatches": audit.mismatches,
        }));
    }
    Ok(Outcome::check(
        total == 0,
        json!({ "groups": rows, "mismatches": total, "expected_mismatches": 0 }),
    ))
}

pub(crate) fn praeger_suite(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let mut rows = Vec::new();
    let mut witness = None;
    let mut bound_ok = true;
    let (mut alt_equality, mut linear_equality) = (false, false);
    for entry in lattice_pool(TRANSITIVE_POOL, caps)? {
        let g = entry.group();
        let lat = &entry.lattice;
        let (mut audited, mut equalities, mut failures) = (0, 0, 0);
        for ki in lat.class_reps() {
            let k = lat.group(ki);
            if k.is_trivial() || !is_pronormal(g, &k, caps)?.is_pronormal() {
                continue;
            }
            let r = praeger_audit(g, &k, caps)?;
            audited += 1;
            equalities += usize::from(r.equality);
            if !r.bound_holds {
                failures += 1;
                if witness.is_none() {
                    witness = Some(Witness::new(Some(&entry.pool.spec), g, &k, None));
                }
            }
            match (entry.pool.name, r.case) {
                ("Alt(5)", Some(PraegerCase::ContainsAlternating))
                    if r.n == 5 && r.f == 2 && k.order_u64() == 3 =>
                {
                    alt_equality = true
                }
                ("GL3(2)", Some(PraegerCase::LinearHyperplane)) if r.n == 7 && r.f == 3 => {
                    linear_equality = true
                }
                _ => {}
            }
        }
        bound_ok &= failures == 0;
        rows.push(json!({
            "group": entry.pool.name,
            "degree": g.degree(),
            "audited": audited,
            "equality_cases": equalities,
            "bound_failures": failures,
        }));
    }
    Ok(Outcome::check(
        bound_ok && alt_equality && linear_equality,
        json!({
            "groups": rows,
            "bound_holds": bound_ok,
            "alt5_three_cycle_equality": alt_equality,
            "gl32_hyperplane_equality": linear_equality,
        }),
    )
    .with_witness(witness))
}

pub(crate) fn normsyl_agreement(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let mut rows = Vec::new();
    let mut witness = None;
    let mut pass = true;
    for name in AGREEMENT_POOL {
        let pg = pool_group(name)?;
        let g = pg.group();
        let list = odd_index_subgroups(g, caps)?;
        let mut disagreements = 0;
        let mut nonpronormal = 0;
        for s in &list.subgroups {
            let def = is_pronormal(g, &s.group, caps)?;
            let odd = is_pronormal_odd(g, &s.group, caps)?;
            let red = reduction_pronormal(g, &s.group, caps)?;
            nonpronormal += usize::from(!def.is_pronormal());
            if def.status != odd.status || def.status != red.status {
                disagreements += 1;
                if witness.is_none() {
                    witness = Some(Witness::new(
                        Some(&pg.spec),
                        g,
                        &s.group,
                        def.failing_g.as_ref(),
                    ));
                }
            }
        }
        pass &= disagreements == 0;
        rows.push(json!({
            "group": name,
            "odd_index_subgroups": list.subgroups.len(),
            "not_pronormal": nonpronormal,
            "disagreements": disagreements,
        }));
    }
    Ok(Outcome::check(pass, json!({ "groups": rows })).with_witness(witness))
}

pub(crate) fn ngs_profiles(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let cases: Vec<(&str, GroupSpec, SimpleGroupId, u64)> = vec![
        (
            "PSL2(5)",
            GroupSpec::Psl2 { q: 5 },
            SimpleGroupId::Psl2 { q: 5 },
            3,
        ),
        (
            "PSL2(7)",
            GroupSpec::Psl2 { q: 7 },
            SimpleGroupId::Psl2 { q: 7 },
            1,
        ),
        (
            "PSL2(11)",
            GroupSpec::Psl2 { q: 11 },
            SimpleGroupId::Psl2 { q: 11 },
            3,
        ),
        (
            "PSL2(13)",
            GroupSpec::Psl2 { q: 13 },
            SimpleGroupId::Psl2 { q: 13 },
            3,
        ),
        (
            "PSp4(3)",
            GroupSpec::Psp { n: 2, q: 3 },
            SimpleGroupId::Psp { n: 2, q: 3 },
            3,
        ),
    ];
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, spec, id, expected) in cases {
        let g = realize(&spec)?.group;
        let s = sylow(&g, 2)?;
        let n = normalizer(&g, &s, caps)?;
        let index = n.order_u64() / s.order_u64();
        let prediction = sylow2_normalizer_prediction(&id)?;
        let ok = prediction.index == Some(index) && index == expected;
        pass &= ok;
        rows.push(json!({
            "group": name,
            "order": g.order_u64(),
            "sylow_order": s.order_u64(),
            "computed_index": index,
            "predicted_index": prediction.index,
            "predicted_structure": prediction.structure,
            "expected": expected,
            "match": ok,
        }));
    }
    // in PSL2(5) the normalizer is Alt(4): non-abelian of order 12 with S normal
    let g = realize(&GroupSpec::Psl2 { q: 5 })?.group;
    let s = sylow(&g, 2)?;
    let n = normalizer(&g, &s, caps)?;
    let alt4_shape = n.order_u64() == 12 && !n.is_abelian() && sylow(&n, 3)?.order_u64() == 3;
    Ok(Outcome::check(
        pass && alt4_shape,
        json!({ "groups": rows, "psl2_5_normalizer_alt4_shape": alt4_shape }),
    ))
}

fn handle_group(spec: &GroupSpec, handle: &str) -> Result<(PermutationGroup, PermutationGroup)> {
    let b = realize(spec)?;
    let a = b.handle(handle)?.clone();
    Ok((b.group, a))
}

pub(crate) fn critexten_suite(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let wreath = |base: GroupSpec, n| GroupSpec::Wreath {
        base: Box::new(base),
        top_degree: n,
    };
    let pairs: Vec<(&str, GroupSpec, &str)> = vec![
        ("Sym(4) over V4", GroupSpec::Sym(4), "socle"),
        ("Sym(5) over Alt(5)", GroupSpec::Sym(5), "socle"),
        ("SL2(3) over Q8", GroupSpec::Sl2 { q: 3 }, "q8"),
        (
            "C3 wr Sym(3) over base",
            wreath(GroupSpec::Cyclic(3), 3),
            "base",
        ),
        (
            "C3 wr Sym(2) over base",
            wreath(GroupSpec::Cyclic(3), 2),
            "base",
        ),
        (
            "SL2(3) wr Sym(2) over base",
            wreath(GroupSpec::Sl2 { q: 3 }, 2),
            "base",
        ),
    ];
    let mut rows = Vec::new();
    let mut witness = None;
    let mut pass = true;
    let mut evaluated = 0;
    for (name, spec, handle) in pairs {
        let (g, a) = if handle == "q8" {
            let g = realize(&spec)?.group;
            let q8 = sylow(&g, 2)?;
            (g, q8)
        } else {
            handle_group(&spec, handle)?
        };
        let r = critexten_check(&g, &a, caps)?;
        let mut ext = (0, 0, 0);
        for h in odd_index_subgroups(&g, caps)?.subgroups {
            let e = critexten_ext_check(&g, &a, &h.group, caps)?;
            match e.agree {
                None => ext.1 += 1,
                Some(true) => ext.0 += 1,
                Some(false) => {
                    ext.2 += 1;
                    if witness.is_none() {
                        witness = Some(Witness::new(Some(&spec), &g, &h.group, None));
                    }
                }
            }
        }
        let ok = r.agree != Some(false) && ext.2 == 0;
        pass &= ok;
        evaluated += usize::from(r.agree.is_some()) + ext.0;
        rows.push(json!({
            "pair": name,
            "criterion": r,
            "ext_agree": ext.0,
            "ext_skipped": ext.1,
            "ext_disagree": ext.2,
        }));
    }
    Ok(Outcome::check(
        pass && evaluated > 0,
        json!({ "pairs": rows, "evaluated": evaluated }),
    )
    .with_witness(witness))
}
