use super::group::PermutationGroup;
use super::hom::Epimorphism;
use super::lattice::conjugacy_classes;
use super::subgroup::{centralizer, normal_closure};
use super::sylow::sylow;
use super::Caps;
use crate::error::{GroupError, Result};

/// The natural map `G -> G/N`, realized as the action on the cosets of `N`.
pub fn quotient(g: &PermutationGroup, n: &PermutationGroup, caps: &Caps) -> Result<Epimorphism> {
    if !g.contains_group(n) {
        return Err(GroupError::NotSubgroup);
    }
    if !g.normalizes(n) {
        return Err(GroupError::NotNormal);
    }
    Epimorphism::coset_action(g, n, caps)
}

/// `O_p(G)`: the core of a Sylow `p`-subgroup, i.e. the kernel of the action
/// on its cosets.
pub fn p_radical(g: &PermutationGroup, p: u64, caps: &Caps) -> Result<PermutationGroup> {
    let s = sylow(g, p)?;
    if g.normalizes(&s) {
        return Ok(s);
    }
    Ok(Epimorphism::coset_action(g, &s, caps)?.kernel().clone())
}

pub fn center(g: &PermutationGroup, caps: &Caps) -> Result<PermutationGroup> {
    centralizer(g, g, caps)
}

/// Normal closures of the class representatives, deduplicated, in class order.
fn class_closures(g: &PermutationGroup, caps: &Caps) -> Result<Vec<PermutationGroup>> {
    let mut out: Vec<PermutationGroup> = Vec::new();
    for (x, _) in conjugacy_classes(g, caps)? {
        if x.is_identity() {
            continue;
        }
        let n = normal_closure(g, &[x])?;
        if !out.iter().any(|m| m.same_group(&n)) {
            out.push(n);
        }
    }
    Ok(out)
}

/// Every normal subgroup, sorted by order. Each one is a join of normal
/// closures of conjugacy class representatives.
pub fn normal_subgroups(g: &PermutationGroup, caps: &Caps) -> Result<Vec<PermutationGroup>> {
    let mut all = vec![PermutationGroup::trivial(g.degree()).with_parent(g)];
    let generators = class_closures(g, caps)?;
    let mut i = 0;
    while i < all.len() {
        for c in &generators {
            if all[i].contains_group(c) {
                continue;
            }
            let mut gens = all[i].generators().to_vec();
            gens.extend(c.generators().iter().cloned());
            let j = PermutationGroup::new(g.degree(), gens)?.with_parent(g);
            if !all.iter().any(|m| m.same_group(&j)) {
                if all.len() as u64 >= caps.subgroups {
                    return Err(GroupError::cap("normal subgroup count", caps.subgroups));
                }
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| a.order().cmp(b.order()));
    Ok(all)
}

/// Minimal normal subgroups: the minimal nontrivial normal closures of single
/// elements.
pub fn minimal_normal_subgroups(
    g: &PermutationGroup,
    caps: &Caps,
) -> Result<Vec<PermutationGroup>> {
    let closures = class_closures(g, caps)?;
    Ok(closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && n.contains_group(m))
        })
        .cloned()
        .collect())
}

/// `O_{2'}(G)`, the largest normal subgroup of odd order: the join of the odd
/// normal closures of single elements.
pub fn odd_radical(g: &PermutationGroup, caps: &Caps) -> Result<PermutationGroup> {
    let mut gens = Vec::new();
    for n in class_closures(g, caps)? {
        if n.order().bit(0) {
            gens.extend(n.generators().iter().cloned());
        }
    }
    Ok(PermutationGroup::new(g.degree(), gens)?.with_parent(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radicals_of_s4() {
        let caps = Caps::default();
        let s4 = PermutationGroup::symmetric(4);
        assert_eq!(p_radical(&s4, 2, &caps).unwrap().order_u64(), 4);
        assert_eq!(p_radical(&s4, 3, &caps).unwrap().order_u64(), 1);
        assert_eq!(odd_radical(&s4, &caps).unwrap().order_u64(), 1);
        let orders: Vec<u64> = normal_subgroups(&s4, &caps)
            .unwrap()
            .iter()
            .map(|n| n.order_u64())
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let mins = minimal_normal_subgroups(&s4, &caps).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order_u64(), 4);
        assert_eq!(center(&s4, &caps).unwrap().order_u64(), 1);
        let q = quotient(&s4, &mins[0], &caps).unwrap();
        assert_eq!(q.target().order_u64(), 6);
    }
}
