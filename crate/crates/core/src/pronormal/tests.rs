use std::sync::OnceLock;

use proptest::prelude::*;

use super::*;
use crate::construct::{diagonal_subgroup, direct_product, realize, GroupSpec};
use crate::engine::{all_subgroups, quotient, SubgroupLattice};

/// Brute force from the definition: every `g` in `G`, every `x` in the join.
fn brute_pronormal(g: &PermutationGroup, h: &PermutationGroup) -> bool {
    g.elements().all(|x| {
        let target = h.conjugate(&x);
        let join = PermutationGroup::new(h.degree(), join_generators(h, &x)).unwrap();
        join.elements().any(|c| {
            h.generators()
                .iter()
                .all(|y| target.contains(&y.conjugate(&c)))
        })
    })
}

struct PoolEntry {
    group: PermutationGroup,
    lattice: SubgroupLattice,
}

fn pool() -> &'static [PoolEntry] {
    static POOL: OnceLock<Vec<PoolEntry>> = OnceLock::new();
    POOL.get_or_init(|| {
        let caps = Caps::default();
        [
            GroupSpec::Sym(4),
            GroupSpec::Alt(5),
            GroupSpec::Sl2 { q: 3 },
            GroupSpec::Dihedral(6),
            GroupSpec::Frobenius73 {},
            GroupSpec::Wreath {
                base: Box::new(GroupSpec::Cyclic(3)),
                top_degree: 2,
            },
            GroupSpec::Product(vec![GroupSpec::Sym(3), GroupSpec::Sym(3)]),
        ]
        .iter()
        .map(|s| {
            let group = realize(s).unwrap().group;
            let lattice = all_subgroups(&group, &caps).unwrap();
            PoolEntry { group, lattice }
        })
        .collect()
    })
}

fn pick(
    entry: usize,
    sub: usize,
) -> (
    &'static PermutationGroup,
    PermutationGroup,
    &'static SubgroupLattice,
) {
    let e = &pool()[entry % pool().len()];
    let i = sub % e.lattice.len();
    (&e.group, e.lattice.group(i), &e.lattice)
}

fn frobenius_product() -> (PermutationGroup, PermutationGroup) {
    let f = realize(&GroupSpec::Frobenius73 {}).unwrap();
    let p = direct_product(&[f.clone(), f]).unwrap();
    let d = diagonal_subgroup(&p, "factor0.kernel", "factor1.kernel").unwrap();
    (p.group, d)
}

#[test]
fn normal_subgroup_is_pronormal() {
    let caps = Caps::default();
    let s4 = PermutationGroup::symmetric(4);
    let v4 = PermutationGroup::new(
        4,
        vec![
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ],
    )
    .unwrap();
    assert!(is_pronormal(&s4, &v4, &caps).unwrap().is_pronormal());
}

#[test]
fn diagonal_of_frobenius_product() {
    let caps = Caps::default();
    let (g, d) = frobenius_product();
    assert_eq!(g.order_u64() / d.order_u64(), 63);
    let v = is_pronormal(&g, &d, &caps).unwrap();
    assert_eq!(v.status, Status::NotPronormal);
    assert_eq!(v.join_order, Some(49));
    let x = v.failing_g.clone().unwrap();
    let join = PermutationGroup::new(g.degree(), join_generators(&d, &x)).unwrap();
    assert!(join.is_abelian());
    // the failing element acts only on the first factor
    assert!(x.images()[7..]
        .iter()
        .enumerate()
        .all(|(i, &p)| p as usize == i + 7));
    assert!(verify_verdict(&g, &d, &v, &caps).unwrap());
}

#[test]
fn double_transposition_in_alt5() {
    let caps = Caps::default();
    let a5 = PermutationGroup::alternating(5);
    let k = PermutationGroup::new(
        5,
        vec![Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap()],
    )
    .unwrap();
    let v = is_pronormal(&a5, &k, &caps).unwrap();
    assert_eq!(v.status, Status::NotPronormal);
    assert!(!brute_pronormal(&a5, &k));
    assert_eq!(v.join_order, Some(4));
    assert!(verify_verdict(&a5, &k, &v, &caps).unwrap());
}

#[test]
fn sylow_normalizer_method() {
    let caps = Caps::default();
    let sl = realize(&GroupSpec::Sl2 { q: 3 }).unwrap().group;
    let q8 = crate::engine::sylow(&sl, 2).unwrap();
    assert!(is_pronormal_odd(&sl, &q8, &caps).unwrap().is_pronormal());

    let w = realize(&GroupSpec::Wreath {
        base: Box::new(GroupSpec::Cyclic(3)),
        top_degree: 3,
    })
    .unwrap();
    let top = w.handle("top").unwrap();
    assert_eq!(w.group.order_u64() / top.order_u64(), 27);
    let v = is_pronormal_odd(&w.group, top, &caps).unwrap();
    assert_eq!(v.status, Status::NotPronormal);
    assert_eq!(v.method, Method::Normsyl);
    assert!(verify_verdict(&w.group, top, &v, &caps).unwrap());
    assert_eq!(
        is_pronormal(&w.group, top, &caps).unwrap().status,
        Status::NotPronormal
    );
}

#[test]
fn even_index_is_rejected_by_normsyl() {
    let caps = Caps::default();
    let s4 = PermutationGroup::symmetric(4);
    let a4 = PermutationGroup::alternating(4);
    assert!(matches!(
        is_pronormal_odd(&s4, &a4, &caps),
        Err(GroupError::Precondition(_))
    ));
}

#[test]
fn join_cap_withholds_the_verdict() {
    let caps = Caps {
        join_order: 10,
        ..Caps::default()
    };
    let (g, d) = frobenius_product();
    let err = is_pronormal(&g, &d, &caps).unwrap_err();
    assert!(err.is_cap());
}

#[test]
fn verdict_json_fields() {
    let caps = Caps::default();
    let (g, d) = frobenius_product();
    let v = is_pronormal(&g, &d, &caps).unwrap();
    let json: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
    assert_eq!(json["status"], "not_pronormal");
    assert_eq!(json["method"], "definition");
    assert_eq!(json["join_order"], 49);
    assert!(json["failing_g"].is_array());
    let back: Verdict = serde_json::from_str(&v.to_json()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn definition_matches_brute_force_on_pool() {
    let caps = Caps::default();
    for e in pool().iter().filter(|e| e.group.order_u64() <= 72) {
        for i in e.lattice.class_reps() {
            let h = e.lattice.group(i);
            let v = is_pronormal(&e.group, &h, &caps).unwrap();
            assert_eq!(v.is_pronormal(), brute_pronormal(&e.group, &h));
            assert!(verify_verdict(&e.group, &h, &v, &caps).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_invariance(entry in 0usize..16, sub in 0usize..1000, seed in 0u64..1000) {
        let caps = Caps::default();
        let (g, h, _) = pick(entry, sub);
        let x = g.elements().nth((seed % g.order_u64()) as usize).unwrap();
        let a = is_pronormal(g, &h, &caps).unwrap().status;
        let b = is_pronormal(g, &h.conjugate(&x), &caps).unwrap().status;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn methods_agree(entry in 0usize..16, sub in 0usize..1000) {
        let caps = Caps::default();
        let (g, h, _) = pick(entry, sub);
        let def = is_pronormal(g, &h, &caps).unwrap();
        prop_assert!(verify_verdict(g, &h, &def, &caps).unwrap());
        let red = reduction_pronormal(g, &h, &caps).unwrap();
        prop_assert_eq!(def.status, red.status, "{}", red.tested_set);
        if (g.order_u64() / h.order_u64()) % 2 == 1 {
            let odd = is_pronormal_odd(g, &h, &caps).unwrap();
            prop_assert_eq!(def.status, odd.status);
            prop_assert!(verify_verdict(g, &h, &odd, &caps).unwrap());
        }
    }

    #[test]
    fn overgroups_inherit_pronormality(entry in 0usize..16, sub in 0usize..1000, over in 0usize..1000) {
        let caps = Caps::default();
        let (g, h, lattice) = pick(entry, sub);
        let hi = lattice.locate(&h).unwrap();
        let overs: Vec<usize> = (0..lattice.len()).filter(|&j| lattice.is_subgroup(hi, j)).collect();
        let m = lattice.group(overs[over % overs.len()]);
        let in_g = is_pronormal(g, &h, &caps).unwrap().is_pronormal();
        let in_m = is_pronormal(&m, &h, &caps).unwrap().is_pronormal();
        if in_g {
            prop_assert!(in_m);
        }
        // item (2), for each prime whose Sylow subgroup lies in H
        for (p, _) in crate::engine::prime_factors(g.order_u64()) {
            let s = crate::engine::sylow(&h, p).unwrap();
            if s.order() != &crate::engine::p_part_big(g.order(), p) {
                continue;
            }
            let ns = normalizer(g, &s, &caps).unwrap();
            if m.contains_group(&ns) && in_m {
                prop_assert!(in_g);
            }
        }
    }

    #[test]
    fn quotients_preserve_pronormality(entry in 0usize..16, sub in 0usize..1000, pick_n in 0usize..100) {
        let caps = Caps::default();
        let (g, h, _) = pick(entry, sub);
        let normals = crate::engine::normal_subgroups(g, &caps).unwrap();
        let n = &normals[pick_n % normals.len()];
        if is_pronormal(g, &h, &caps).unwrap().is_pronormal() {
            let q = quotient(g, n, &caps).unwrap();
            let image = q.image(&h).unwrap();
            prop_assert!(is_pronormal(q.target(), &image, &caps).unwrap().is_pronormal());
        }
        let r = quot_transfer(g, n, &h, &caps).unwrap();
        prop_assert!(r.all_hold());
    }

    #[test]
    fn pronormal_subgroups_decompose(entry in 0usize..16, sub in 0usize..1000, pick_n in 0usize..100) {
        let caps = Caps::default();
        let (g, h, lattice) = pick(entry, sub);
        let normals = crate::engine::normal_subgroups(g, &caps).unwrap();
        let v = &normals[pick_n % normals.len()];
        if !is_pronormal(g, &h, &caps).unwrap().is_pronormal() {
            return Ok(());
        }
        for j in 0..lattice.len() {
            let u = lattice.group(j);
            if v.contains_group(&u) && h.normalizes(&u) {
                prop_assert!(decompose_check(&h, &u, &caps).unwrap().equal);
            }
        }
    }

    #[test]
    fn abelian_criterion_matches_definition(entry in 0usize..16, sub in 0usize..1000, pick_n in 0usize..100) {
        let caps = Caps::default();
        let (g, h, _) = pick(entry, sub);
        let normals: Vec<PermutationGroup> = crate::engine::normal_subgroups(g, &caps)
            .unwrap()
            .into_iter()
            .filter(|v| v.is_abelian())
            .collect();
        let v = &normals[pick_n % normals.len()];
        match abelian_criterion(g, v, &h, &caps) {
            Ok(out) => {
                let def = is_pronormal(g, &h, &caps).unwrap();
                prop_assert_eq!(out.verdict.status, def.status);
            }
            Err(GroupError::Precondition(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
