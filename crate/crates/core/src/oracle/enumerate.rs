use num_bigint::BigUint;
use serde::Serialize;

use crate::engine::{
    coset_reps, is_conjugate_subgroups, sylow, Caps, GroupRecord, PermutationGroup,
};
use crate::error::{GroupError, Result};
use crate::pronormal::is_pronormal_odd;

/// One overgroup of the fixed Sylow 2-subgroup.
#[derive(Clone, Debug)]
pub struct OddIndexSubgroup {
    pub group: PermutationGroup,
    pub index: BigUint,
    /// Position of the first listed subgroup conjugate to this one.
    pub class: usize,
}

/// All overgroups of one Sylow 2-subgroup `S` of `G`.
#[derive(Clone, Debug)]
pub struct OddIndexSubgroups {
    pub sylow: PermutationGroup,
    /// Sorted by order, then by discovery.
    pub subgroups: Vec<OddIndexSubgroup>,
}

impl OddIndexSubgroups {
    pub fn class_reps(&self) -> impl Iterator<Item = &OddIndexSubgroup> {
        self.subgroups
            .iter()
            .enumerate()
            .filter(|(i, s)| s.class == *i)
            .map(|(_, s)| s)
    }
}

/// Every subgroup of odd index contains a Sylow 2-subgroup, and all of those
/// are conjugate, so the overgroups of one fixed `S` meet every class of
/// odd-index subgroups.
///
/// The overgroups are found breadth-first: each `K` is extended by one
/// representative of every right coset of `K` outside `K`.
pub fn odd_index_subgroups(g: &PermutationGroup, caps: &Caps) -> Result<OddIndexSubgroups> {
    let s = sylow(g, 2)?;
    let mut found: Vec<PermutationGroup> = vec![s.clone()];
    let mut i = 0;
    while i < found.len() {
        let k = found[i].clone();
        i += 1;
        for x in coset_reps(g, &k, caps)?.iter().skip(1) {
            let mut gens = k.generators().to_vec();
            gens.push(x.clone());
            let j = PermutationGroup::new(g.degree(), gens)?.with_parent(g);
            if !found.iter().any(|m| m.same_group(&j)) {
                if found.len() as u64 >= caps.subgroups {
                    return Err(GroupError::cap("odd-index subgroup count", caps.subgroups));
                }
                found.push(j);
            }
        }
    }
    found.sort_by(|a, b| a.order().cmp(b.order()));
    let mut subgroups: Vec<OddIndexSubgroup> = Vec::with_capacity(found.len());
    for h in found {
        let mut class = subgroups.len();
        for (j, other) in subgroups.iter().enumerate() {
            if other.class == j
                && other.group.order() == h.order()
                && is_conjugate_subgroups(g, &other.group, &h, caps)?.is_some()
            {
                class = j;
                break;
            }
        }
        subgroups.push(OddIndexSubgroup {
            index: g.order() / h.order(),
            group: h,
            class,
        });
    }
    Ok(OddIndexSubgroups {
        sylow: s,
        subgroups,
    })
}

/// Whether every odd-index subgroup is pronormal, with the non-pronormal class
/// representatives.
#[derive(Clone, Debug, Serialize)]
pub struct OddIndexSummary {
    pub all_pronormal: bool,
    pub classes: usize,
    pub counterexamples: Vec<GroupRecord>,
}

/// Tests one subgroup per conjugacy class; pronormality is invariant under
/// conjugation.
pub fn all_odd_index_pronormal(g: &PermutationGroup, caps: &Caps) -> Result<OddIndexSummary> {
    let list = odd_index_subgroups(g, caps)?;
    let mut classes = 0;
    let mut counterexamples = Vec::new();
    for s in list.class_reps() {
        classes += 1;
        if !is_pronormal_odd(g, &s.group, caps)?.is_pronormal() {
            counterexamples.push(s.group.to_record());
        }
    }
    Ok(OddIndexSummary {
        all_pronormal: counterexamples.is_empty(),
        classes,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{realize, GroupSpec};
    use crate::engine::all_subgroups;

    fn orders(g: &PermutationGroup) -> Vec<u64> {
        odd_index_subgroups(g, &Caps::default())
            .unwrap()
            .subgroups
            .iter()
            .map(|s| s.group.order_u64())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(orders(&PermutationGroup::symmetric(4)), vec![8, 24]);
        assert_eq!(
            orders(&realize(&GroupSpec::Sl2 { q: 3 }).unwrap().group),
            vec![8, 24]
        );
        let a5 = PermutationGroup::alternating(5);
        let list = odd_index_subgroups(&a5, &Caps::default()).unwrap();
        let indices: Vec<u64> = list
            .subgroups
            .iter()
            .map(|s| u64::try_from(&s.index).unwrap())
            .collect();
        assert_eq!(indices, vec![15, 5, 1]);
    }

    /// Brute force: odd-index classes of the full lattice.
    fn lattice_odd_classes(g: &PermutationGroup) -> usize {
        let caps = Caps::default();
        let lattice = all_subgroups(g, &caps).unwrap();
        let order = g.order_u64() as usize;
        lattice
            .class_reps()
            .into_iter()
            .filter(|&i| (order / lattice.order(i)) % 2 == 1)
            .count()
    }

    #[test]
    fn class_count_matches_lattice() {
        let caps = Caps::default();
        for spec in [
            GroupSpec::Sym(4),
            GroupSpec::Sym(5),
            GroupSpec::Alt(5),
            GroupSpec::Wreath {
                base: Box::new(GroupSpec::Cyclic(3)),
                top_degree: 3,
            },
        ] {
            let g = realize(&spec).unwrap().group;
            let list = odd_index_subgroups(&g, &caps).unwrap();
            assert_eq!(
                list.class_reps().count(),
                lattice_odd_classes(&g),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn all_odd_index_examples() {
        let caps = Caps::default();
        assert!(
            all_odd_index_pronormal(&PermutationGroup::alternating(5), &caps)
                .unwrap()
                .all_pronormal
        );
        let w = realize(&GroupSpec::Wreath {
            base: Box::new(GroupSpec::Cyclic(3)),
            top_degree: 3,
        })
        .unwrap();
        let summary = all_odd_index_pronormal(&w.group, &caps).unwrap();
        assert!(!summary.all_pronormal);
        let top = w.handle("top").unwrap();
        assert!(summary
            .counterexamples
            .iter()
            .any(
                |r| is_conjugate_subgroups(&w.group, top, &r.to_group().unwrap(), &caps)
                    .unwrap()
                    .is_some()
            ));
    }
}
