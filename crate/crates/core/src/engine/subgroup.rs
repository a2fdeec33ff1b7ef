use std::collections::BTreeMap;

use super::coset::{CosetSpace, CosetTable};
use super::group::PermutationGroup;
use super::orbit::{Domain, Orbit};
use super::perm::Permutation;
use super::Caps;
use crate::error::{GroupError, Result};

/// Largest `|H| * degree` for which conjugates are fingerprinted by their element sets.
const ELEMENT_HASH_BUDGET: u64 = 4_000_000;

/// Conjugates `H^x`, represented by the conjugating element `x`.
pub(crate) struct ConjugateSubgroups<'a> {
    sub: &'a PermutationGroup,
    elements: Option<Vec<Permutation>>,
    orbits: Vec<Vec<u32>>,
}

impl<'a> ConjugateSubgroups<'a> {
    pub(crate) fn new(sub: &'a PermutationGroup) -> Self {
        let budget = sub.order_u64().saturating_mul(sub.degree() as u64);
        let elements = (budget <= ELEMENT_HASH_BUDGET).then(|| sub.elements().collect());
        ConjugateSubgroups {
            sub,
            elements,
            orbits: sub.orbits(),
        }
    }
}

impl Domain for ConjugateSubgroups<'_> {
    type Point = Permutation;

    fn act(&self, x: &Permutation, g: &Permutation) -> Permutation {
        x.mul(g)
    }

    fn hash(&self, x: &Permutation) -> u64 {
        match &self.elements {
            Some(elems) => elems.iter().fold(0u64, |acc, e| {
                acc.wrapping_add(e.conjugate(x).fingerprint())
            }),
            None => {
                let mut moved: Vec<Vec<u32>> = self
                    .orbits
                    .iter()
                    .map(|o| {
                        let mut m: Vec<u32> = o.iter().map(|&p| x.image(p)).collect();
                        m.sort_unstable();
                        m
                    })
                    .collect();
                moved.sort_unstable();
                let flat: Vec<u32> = moved
                    .iter()
                    .flat_map(|o| std::iter::once(u32::MAX).chain(o.iter().copied()))
                    .collect();
                let mut h: u64 = 0xcbf2_9ce4_8422_2325;
                for v in flat {
                    h ^= v as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
                h
            }
        }
    }

    fn same(&self, a: &Permutation, b: &Permutation) -> bool {
        let z = a.mul(&b.inverse());
        self.sub
            .generators()
            .iter()
            .all(|h| self.sub.contains(&h.conjugate(&z)))
    }
}

struct ConjugateElements;

impl Domain for ConjugateElements {
    type Point = Permutation;

    fn act(&self, p: &Permutation, g: &Permutation) -> Permutation {
        p.conjugate(g)
    }

    fn hash(&self, p: &Permutation) -> u64 {
        p.fingerprint()
    }

    fn same(&self, a: &Permutation, b: &Permutation) -> bool {
        a == b
    }
}

/// Right cosets of a subgroup, represented by canonical representatives.
pub(crate) struct Cosets {
    pub(crate) space: CosetSpace,
}

impl Domain for Cosets {
    type Point = Permutation;

    fn act(&self, c: &Permutation, g: &Permutation) -> Permutation {
        self.space.canonical(&c.mul(g))
    }

    fn hash(&self, c: &Permutation) -> u64 {
        c.fingerprint()
    }

    fn same(&self, a: &Permutation, b: &Permutation) -> bool {
        a == b
    }
}

/// The smallest subgroup of `ambient` containing `elements`.
pub fn subgroup_closure(
    ambient: &PermutationGroup,
    elements: &[Permutation],
) -> Result<PermutationGroup> {
    for e in elements {
        if !ambient.is_member(e)? {
            return Err(GroupError::NotMember);
        }
    }
    Ok(PermutationGroup::new(ambient.degree(), elements.to_vec())?.with_parent(ambient))
}

fn check_sub(ambient: &PermutationGroup, sub: &PermutationGroup) -> Result<()> {
    if sub.degree() != ambient.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: ambient.degree(),
            found: sub.degree(),
        });
    }
    if !ambient.contains_group(sub) {
        return Err(GroupError::NotSubgroup);
    }
    Ok(())
}

/// `N_G(H)`: stabilizer of `H` under conjugation, via the orbit of conjugates.
pub fn normalizer(
    ambient: &PermutationGroup,
    sub: &PermutationGroup,
    caps: &Caps,
) -> Result<PermutationGroup> {
    check_sub(ambient, sub)?;
    if ambient.normalizes(sub) {
        return Ok(ambient.clone());
    }
    let domain = ConjugateSubgroups::new(sub);
    let orbit = Orbit::compute(
        ambient.generators(),
        ambient.degree(),
        &domain,
        Permutation::identity(ambient.degree()),
        caps.search,
    )?;
    Ok(orbit.stabilizer(ambient, &domain))
}

/// An element `x` of `<gens>` with `H^x = H^g`, given `n = N_G(H)` for some
/// `G` containing `g` and `gens`.
///
/// `H^x = H^g` exactly when `Nx = Ng`, so the search walks the orbit of the
/// trivial coset `N` under right multiplication by `<gens>`. Returns the
/// element (if any) and the orbit length, which is `|J : N_J(H)|` for
/// `J = <gens>`.
pub fn conjugator_within(
    n: &PermutationGroup,
    gens: &[Permutation],
    g: &Permutation,
    cap: u64,
) -> Result<(Option<Permutation>, usize)> {
    let domain = Cosets {
        space: CosetSpace::new(n, None),
    };
    let start = domain.space.canonical(&Permutation::identity(n.degree()));
    let orbit = Orbit::compute(gens, n.degree(), &domain, start, cap)?;
    let target = domain.space.canonical(g);
    let found = orbit.find(&domain, &target).map(|i| orbit.transversal(i));
    Ok((found, orbit.len()))
}

pub fn centralizer_of_element(
    ambient: &PermutationGroup,
    x: &Permutation,
    caps: &Caps,
) -> Result<PermutationGroup> {
    if !ambient.is_member(x)? {
        return Err(GroupError::NotMember);
    }
    if ambient.generators().iter().all(|g| g.mul(x) == x.mul(g)) {
        return Ok(ambient.clone());
    }
    let orbit = Orbit::compute(
        ambient.generators(),
        ambient.degree(),
        &ConjugateElements,
        x.clone(),
        caps.search,
    )?;
    Ok(orbit.stabilizer(ambient, &ConjugateElements))
}

/// `C_G(H)` as the intersection of the centralizers of the generators of `H`.
pub fn centralizer(
    ambient: &PermutationGroup,
    sub: &PermutationGroup,
    caps: &Caps,
) -> Result<PermutationGroup> {
    if sub.degree() != ambient.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: ambient.degree(),
            found: sub.degree(),
        });
    }
    let mut c = ambient.clone();
    for h in sub.generators() {
        if c.generators().iter().all(|g| g.mul(h) == h.mul(g)) {
            continue;
        }
        let orbit = Orbit::compute(
            c.generators(),
            c.degree(),
            &ConjugateElements,
            h.clone(),
            caps.search,
        )?;
        c = orbit.stabilizer(&c, &ConjugateElements);
    }
    Ok(c.with_parent(ambient))
}

/// `A ∩ B`: the stabilizer in `A` of the trivial right coset of `B`.
pub fn intersection(
    a: &PermutationGroup,
    b: &PermutationGroup,
    caps: &Caps,
) -> Result<PermutationGroup> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    if b.contains_group(a) {
        return Ok(a.clone());
    }
    if a.contains_group(b) {
        return Ok(b.clone());
    }
    let domain = Cosets {
        space: CosetSpace::new(b, None),
    };
    let start = domain.space.canonical(&Permutation::identity(a.degree()));
    let orbit = Orbit::compute(a.generators(), a.degree(), &domain, start, caps.search)?;
    Ok(orbit.stabilizer(a, &domain))
}

/// Normal closure of `elements` in `ambient`.
pub fn normal_closure(
    ambient: &PermutationGroup,
    elements: &[Permutation],
) -> Result<PermutationGroup> {
    for e in elements {
        if !ambient.is_member(e)? {
            return Err(GroupError::NotMember);
        }
    }
    let mut gens: Vec<Permutation> = elements
        .iter()
        .filter(|e| !e.is_identity())
        .cloned()
        .collect();
    let mut n = PermutationGroup::new(ambient.degree(), gens.clone())?;
    loop {
        let mut grew = false;
        let current = n.generators().to_vec();
        for h in &current {
            for g in ambient.generators() {
                let c = h.conjugate(g);
                if !n.contains(&c) {
                    gens.push(c);
                    grew = true;
                }
            }
            if grew {
                break;
            }
        }
        if !grew {
            return Ok(n.with_parent(ambient));
        }
        n = PermutationGroup::new(ambient.degree(), gens.clone())?;
    }
}

/// `[A, B]`: normal closure in `<A, B>` of the commutators of generator pairs.
pub fn commutator_subgroup(a: &PermutationGroup, b: &PermutationGroup) -> Result<PermutationGroup> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let mut join_gens = a.generators().to_vec();
    join_gens.extend(b.generators().iter().cloned());
    let join = PermutationGroup::new(a.degree(), join_gens)?;
    let comms: Vec<Permutation> = a
        .generators()
        .iter()
        .flat_map(|x| b.generators().iter().map(move |y| x.commutator(y)))
        .filter(|c| !c.is_identity())
        .collect();
    normal_closure(&join, &comms)
}

pub fn derived_subgroup(g: &PermutationGroup) -> Result<PermutationGroup> {
    commutator_subgroup(g, g)
}

/// Multiset of orbit lengths.
fn orbit_profile(g: &PermutationGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
    v.sort_unstable();
    v
}

fn element_order_histogram(g: &PermutationGroup) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for e in g.elements() {
        *hist.entry(e.order()).or_insert(0) += 1;
    }
    hist
}

/// Returns the first `x` (in the enumeration order of the right cosets of
/// `N_G(H)`) with `H^x = K`, or `None` when `H` and `K` are not conjugate in `G`.
pub fn is_conjugate_subgroups(
    ambient: &PermutationGroup,
    h: &PermutationGroup,
    k: &PermutationGroup,
    caps: &Caps,
) -> Result<Option<Permutation>> {
    check_sub(ambient, h)?;
    check_sub(ambient, k)?;
    if h.order() != k.order() || orbit_profile(h) != orbit_profile(k) {
        return Ok(None);
    }
    let budget = h.order_u64().saturating_mul(h.degree() as u64);
    if budget <= ELEMENT_HASH_BUDGET && element_order_histogram(h) != element_order_histogram(k) {
        return Ok(None);
    }
    let n = normalizer(ambient, h, caps)?;
    let index = ambient.order() / n.order();
    if u64::try_from(&index).unwrap_or(u64::MAX) > caps.search {
        return Err(GroupError::cap("conjugacy candidates", caps.search));
    }
    let search_caps = Caps {
        index: caps.search,
        ..caps.clone()
    };
    let table = CosetTable::new(ambient, &n, &search_caps)?;
    for x in table.reps() {
        if h.generators().iter().all(|g| k.contains(&g.conjugate(x))) {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}
