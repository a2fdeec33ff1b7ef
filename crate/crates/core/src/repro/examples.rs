use num_integer::Integer;
use serde_json::json;

use super::{Outcome, ReproConfig, Witness};
use crate::construct::{
    diagonal_subgroup, direct_product, realize, symplectic_order, symplectic_wreath_embedding,
    BuiltGroup, GroupSpec,
};
use crate::engine::{p_radical, quotient, Permutation, PermutationGroup};
use crate::error::Result;
use crate::oracle::all_odd_index_pronormal;
use crate::pronormal::{is_pronormal, is_pronormal_odd, verify_verdict, Status};

pub(crate) fn frobenius_product(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let spec = GroupSpec::Product(vec![GroupSpec::Frobenius73 {}, GroupSpec::Frobenius73 {}]);
    let p = realize(&spec)?;
    let g = &p.group;
    let d = diagonal_subgroup(&p, "factor0.kernel", "factor1.kernel")?;
    let index = g.order_u64() / d.order_u64();
    let v = is_pronormal(g, &d, caps)?;
    let verified = verify_verdict(g, &d, &v, caps)?;
    let (join_abelian, in_first_factor) = match &v.failing_g {
        Some(x) => {
            let mut gens = d.generators().to_vec();
            gens.extend(d.conjugate(x).generators().iter().cloned());
            let join = PermutationGroup::new(g.degree(), gens)?;
            (join.is_abelian(), p.handle("factor0")?.contains(x))
        }
        None => (false, false),
    };
    let pass = index == 63
        && v.status == Status::NotPronormal
        && v.join_order == Some(49)
        && join_abelian
        && in_first_factor
        && verified;
    Ok(Outcome::check(
        pass,
        json!({
            "group_order": g.order_u64(),
            "index": index,
            "index_odd": index % 2 == 1,
            "status": v.status,
            "join_order": v.join_order,
            "join_abelian": join_abelian,
            "failing_g": v.failing_g,
            "failing_g_in_first_factor": in_first_factor,
            "certificate_verified": verified,
            "expected": {"index": 63, "status": "not_pronormal", "join_order": 49},
        }),
    )
    .with_witness(Some(Witness::new(Some(&spec), g, &d, v.failing_g.as_ref()))))
}

pub(crate) fn cpwrsn_grid(config: &ReproConfig) -> Result<Outcome> {
    let mut cells = Vec::new();
    let mut witness = None;
    let mut pass = true;
    for a in 2..=6usize {
        for n in 2..=4usize {
            let spec = GroupSpec::Wreath {
                base: Box::new(GroupSpec::Cyclic(a)),
                top_degree: n,
            };
            let w = realize(&spec)?;
            let top = w.handle("top")?;
            let v = is_pronormal(&w.group, top, &config.caps)?;
            let expected = a.gcd(&n) == 1;
            let ok = v.is_pronormal() == expected;
            if !ok && witness.is_none() {
                witness = Some(Witness::new(
                    Some(&spec),
                    &w.group,
                    top,
                    v.failing_g.as_ref(),
                ));
            }
            pass &= ok;
            cells.push(json!({
                "a": a,
                "n": n,
                "group_order": w.group.order_u64(),
                "pronormal": v.is_pronormal(),
                "expected": expected,
                "match": ok,
            }));
        }
    }
    Ok(Outcome::check(pass, json!({ "cells": cells })).with_witness(witness))
}

/// `L = Sp2(3) wr Sym(3)`, `O2(L)` and the preimage `H` of the top group.
struct Core {
    spec: GroupSpec,
    l: BuiltGroup,
    o2: PermutationGroup,
    quotient_order: u64,
    top_image: PermutationGroup,
    quotient_group: PermutationGroup,
    h: PermutationGroup,
}

fn core(config: &ReproConfig) -> Result<Core> {
    let spec = GroupSpec::Wreath {
        base: Box::new(GroupSpec::Sp { n: 1, q: 3 }),
        top_degree: 3,
    };
    let l = realize(&spec)?;
    let o2 = p_radical(&l.group, 2, &config.caps)?;
    let q = quotient(&l.group, &o2, &config.caps)?;
    let top_image = q.image(l.handle("top")?)?;
    let h = q.preimage(&top_image)?;
    Ok(Core {
        spec,
        quotient_order: q.target().order_u64(),
        quotient_group: q.target().clone(),
        top_image,
        o2,
        h,
        l,
    })
}

pub(crate) fn counterexample_core(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let c = core(config)?;
    let l = &c.l.group;
    let embedding = symplectic_wreath_embedding(1, 3, 3)?;
    let index = l.order_u64() / c.h.order_u64();
    let v = is_pronormal_odd(l, &c.h, caps)?;
    let verified = verify_verdict(l, &c.h, &v, caps)?;
    let top_in_quotient = is_pronormal(&c.quotient_group, &c.top_image, caps)?;
    let sp6_order = symplectic_order(3, 3);
    let l_index = &sp6_order / l.order();
    let pass = l.order_u64() == 82_944
        && c.o2.order_u64() == 512
        && c.quotient_order == 162
        && c.h.order_u64() == 3072
        && index == 27
        && v.status == Status::NotPronormal
        && verified
        && !top_in_quotient.is_pronormal()
        && embedding.image.order() == l.order()
        && embedding.ambient.group.order() == &sp6_order
        && l_index == embedding.index
        && l_index.is_odd();
    Ok(Outcome::check(
        pass,
        json!({
            "l_order": l.order_u64(),
            "o2_order": c.o2.order_u64(),
            "quotient_order": c.quotient_order,
            "h_order": c.h.order_u64(),
            "h_index": index,
            "status": v.status,
            "method": v.method,
            "failing_g": v.failing_g,
            "join_order": v.join_order,
            "certificate_verified": verified,
            "top_pronormal_in_quotient": top_in_quotient.is_pronormal(),
            "sp6_order": sp6_order.to_string(),
            "sp6_index_of_l": l_index.to_string(),
            "sp6_index_of_l_odd": l_index.is_odd(),
            "block_image_order": embedding.image.order().to_string(),
            "expected": {
                "l_order": 82944, "o2_order": 512, "quotient_order": 162,
                "h_order": 3072, "h_index": 27, "status": "not_pronormal",
            },
        }),
    )
    .with_witness(Some(Witness::new(
        Some(&c.spec),
        l,
        &c.h,
        v.failing_g.as_ref(),
    ))))
}

/// The preimage of the top group, checked inside the full `Sp6(3)` on 728
/// vectors. Off by default.
pub(crate) fn sp6_direct(config: &ReproConfig) -> Result<Outcome> {
    if !config.optional {
        return Ok(Outcome::skipped(json!({
            "reason": "off by default; enable optional scenarios to run",
        })));
    }
    let c = core(config)?;
    let embedding = symplectic_wreath_embedding(1, 3, 3)?;
    let h = embedding.isomorphism.preimage(&c.h)?;
    let g = &embedding.ambient.group;
    let v = is_pronormal_odd(g, &h, &config.caps)?;
    let index = g.order() / h.order();
    Ok(Outcome::check(
        v.status == Status::NotPronormal && index.is_odd(),
        json!({
            "group_order": g.order().to_string(),
            "h_order": h.order().to_string(),
            "index": index.to_string(),
            "status": v.status,
            "failing_g": v.failing_g,
        }),
    )
    .with_witness(Some(Witness::new(None, g, &h, v.failing_g.as_ref()))))
}

/// Multiplication in GF(8) = GF(2)[x]/(x^3 + x + 1).
fn gf8_mul(mut a: u32, mut b: u32) -> u32 {
    let mut r = 0;
    while b > 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & 8 != 0 {
            a ^= 0b1011;
        }
    }
    r
}

fn on_gf8(f: impl Fn(u32) -> u32) -> Permutation {
    Permutation::from_images((0..8).map(f).collect()).expect("field maps are bijective")
}

/// `x -> a x^s + b` on GF(8): translations, multiplication by a primitive
/// element, and the Frobenius map.
fn affine_semilinear_1_8() -> Result<BuiltGroup> {
    let gens = vec![
        on_gf8(|x| x ^ 1),
        on_gf8(|x| gf8_mul(2, x)),
        on_gf8(|x| gf8_mul(x, x)),
    ];
    Ok(BuiltGroup::plain(PermutationGroup::new(8, gens)?, None))
}

pub(crate) fn nonpron_product_of_pronormal(config: &ReproConfig) -> Result<Outcome> {
    let caps = &config.caps;
    let factor = affine_semilinear_1_8()?;
    let f = &factor.group;
    let s = p_radical(f, 2, caps)?;
    let section = quotient(&crate::engine::normalizer(f, &s, caps)?, &s, caps)?;
    let section_nonabelian = !section.target().is_abelian();
    let factor_all = all_odd_index_pronormal(f, caps)?;

    let p = direct_product(&[factor.clone(), factor.clone()])?;
    let g = &p.group;
    // S1 x S2 with the diagonal of the two order-7 multiplications
    let shift = |x: &Permutation, i: usize| x.shifted(8 * i, 16);
    let mult = on_gf8(|x| gf8_mul(2, x));
    let mut images: Vec<u32> = mult.images().to_vec();
    images.extend(mult.images().iter().map(|&x| x + 8));
    let mut gens: Vec<Permutation> = s.generators().iter().map(|x| shift(x, 0)).collect();
    gens.extend(s.generators().iter().map(|x| shift(x, 1)));
    gens.push(Permutation::from_images(images)?);
    let h = PermutationGroup::new(16, gens)?;
    let index = g.order_u64() / h.order_u64();
    let v = is_pronormal_odd(g, &h, caps)?;
    let verified = verify_verdict(g, &h, &v, caps)?;
    let product_all = all_odd_index_pronormal(g, caps)?;
    let pass = f.order_u64() == 168
        && s.order_u64() == 8
        && section.target().order_u64() == 21
        && section_nonabelian
        && factor_all.all_pronormal
        && index % 2 == 1
        && v.status == Status::NotPronormal
        && verified
        && !product_all.all_pronormal;
    Ok(Outcome::check(
        pass,
        json!({
            "factor_order": f.order_u64(),
            "sylow_order": s.order_u64(),
            "normalizer_section_order": section.target().order_u64(),
            "normalizer_section_nonabelian": section_nonabelian,
            "factor_all_odd_index_pronormal": factor_all.all_pronormal,
            "product_all_odd_index_pronormal": product_all.all_pronormal,
            "product_nonpronormal_classes": product_all.counterexamples.len(),
            "h_order": h.order_u64(),
            "h_index": index,
            "status": v.status,
            "failing_g": v.failing_g,
            "certificate_verified": verified,
        }),
    )
    .with_witness(Some(Witness::new(None, g, &h, v.failing_g.as_ref()))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_multiplication() {
        // x * x^2 = x^3 = x + 1
        assert_eq!(gf8_mul(2, 4), 3);
        for a in 1..8 {
            assert!((1..8).any(|b| gf8_mul(a, b) == 1), "{a} has an inverse");
        }
    }

    #[test]
    fn affine_group_order() {
        let g = affine_semilinear_1_8().unwrap();
        assert_eq!(g.group.order_u64(), 168);
        assert!(g.group.is_transitive());
    }
}
