use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::chain::StabChain;
use super::perm::Permutation;
use crate::error::{GroupError, Result};

/// A permutation group together with a complete stabilizer chain.
///
/// Cloning is cheap; the chain is shared.
#[derive(Clone)]
pub struct PermutationGroup {
    inner: Arc<Inner>,
}

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
    parent: Option<PermutationGroup>,
}

impl PermutationGroup {
    /// The group generated by `generators`. An empty list yields the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        check_degrees(degree, &generators)?;
        Ok(Self::build(degree, generators, &[], None))
    }

    /// Like [`PermutationGroup::new`] with `prefix` forced to the front of the base.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[u32],
    ) -> Result<Self> {
        check_degrees(degree, &generators)?;
        if let Some(&b) = prefix.iter().find(|&&b| b as usize >= degree) {
            return Err(GroupError::InvalidInput(format!(
                "base point {b} out of range"
            )));
        }
        Ok(Self::build(degree, generators, prefix, None))
    }

    /// Builds the group when its order is already known; the random phase stops
    /// as soon as the order is reached.
    pub fn with_known_order(
        degree: usize,
        generators: Vec<Permutation>,
        order: &BigUint,
    ) -> Result<Self> {
        check_degrees(degree, &generators)?;
        Ok(Self::build(degree, generators, &[], Some(order)))
    }

    pub(crate) fn build(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[u32],
        known: Option<&BigUint>,
    ) -> Self {
        let generators = dedup_gens(generators);
        let chain = StabChain::build(degree, &generators, prefix, known);
        Self::from_chain(degree, generators, chain, None)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_chain(
            degree,
            Vec::new(),
            StabChain::build(degree, &[], &[], None),
            None,
        )
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<u32> = (0..n as u32).collect();
            gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
        }
        let order: BigUint = (1..=n as u64).map(BigUint::from).product();
        Self::with_known_order(n, gens, &order).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1, 2]]).unwrap());
        }
        if n >= 4 {
            let cycle: Vec<u32> = if n % 2 == 1 {
                (0..n as u32).collect()
            } else {
                (1..n as u32).collect()
            };
            gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
        }
        let mut order: BigUint = (1..=n as u64).map(BigUint::from).product();
        if n >= 2 {
            order /= 2u32;
        }
        Self::with_known_order(n, gens, &order).unwrap()
    }

    pub(crate) fn from_chain(
        degree: usize,
        generators: Vec<Permutation>,
        chain: StabChain,
        parent: Option<PermutationGroup>,
    ) -> Self {
        let order = chain.order();
        PermutationGroup {
            inner: Arc::new(Inner {
                degree,
                generators,
                chain,
                order,
                parent,
            }),
        }
    }

    /// Same group, recorded as a subgroup of `parent`.
    pub fn with_parent(self, parent: &PermutationGroup) -> Self {
        PermutationGroup {
            inner: Arc::new(Inner {
                degree: self.inner.degree,
                generators: self.inner.generators.clone(),
                chain: self.inner.chain.clone(),
                order: self.inner.order.clone(),
                parent: Some(parent.clone()),
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn parent(&self) -> Option<&PermutationGroup> {
        self.inner.parent.as_ref()
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    /// Order as `u64`; every group this crate handles at desk scale fits.
    pub fn order_u64(&self) -> u64 {
        self.inner
            .order
            .to_u64()
            .expect("group order exceeds u64 range")
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.chain.levels.is_empty() || self.order_u64() == 1
    }

    pub fn base(&self) -> Vec<u32> {
        self.inner.chain.base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.inner.chain.strong
    }

    /// Lengths of the fundamental orbits; their product is the order.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.inner
            .chain
            .levels
            .iter()
            .map(|l| l.orbit.len())
            .collect()
    }

    /// Transversal of level `i`: pairs (orbit point, element mapping the base point to it).
    pub fn transversal(&self, i: usize) -> Vec<(u32, Permutation)> {
        let level = &self.inner.chain.levels[i];
        level
            .orbit
            .iter()
            .map(|&p| (p, level.rep(p).unwrap().clone()))
            .collect()
    }

    pub(crate) fn chain(&self) -> &StabChain {
        &self.inner.chain
    }

    pub fn is_member(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree(),
                found: p.degree(),
            });
        }
        Ok(self.contains(p))
    }

    /// Membership by sifting; `p` must have the group's degree.
    pub fn contains(&self, p: &Permutation) -> bool {
        self.inner.chain.contains(p)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.degree() == self.degree() && other.generators().iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut orbit = orbit_under(self.generators(), self.degree(), point);
        orbit.sort_unstable();
        orbit
    }

    /// All orbits, each sorted, listed by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for p in 0..n {
            if seen[p] {
                continue;
            }
            let mut o = orbit_under(self.generators(), n, p as u32);
            o.sort_unstable();
            for &x in &o {
                seen[x as usize] = true;
            }
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() <= 1 || self.orbit(0).len() == self.degree()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.inner.chain.random_element(rng)
    }

    /// Every element, in the fixed enumeration order of the chain.
    pub fn elements(&self) -> Elements<'_> {
        Elements::new(self)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// `self` normalizes `sub` (both on the same domain).
    pub fn normalizes(&self, sub: &PermutationGroup) -> bool {
        self.generators().iter().all(|x| {
            sub.generators()
                .iter()
                .all(|h| sub.contains(&h.conjugate(x)))
        })
    }

    /// `self` is a normal subgroup of `ambient`.
    pub fn is_normal_in(&self, ambient: &PermutationGroup) -> bool {
        ambient.contains_group(self) && ambient.normalizes(self)
    }

    /// `x^-1 self x`, with the chain conjugated rather than rebuilt.
    pub fn conjugate(&self, x: &Permutation) -> PermutationGroup {
        let gens: Vec<Permutation> = self.generators().iter().map(|g| g.conjugate(x)).collect();
        let chain = self.inner.chain.conjugated(x);
        Self::from_chain(self.degree(), gens, chain, self.inner.parent.clone())
    }

    /// Exact `{degree, generators, order}` record.
    pub fn to_record(&self) -> GroupRecord {
        GroupRecord {
            degree: self.degree(),
            generators: self.generators().to_vec(),
            order: self.order().to_string(),
        }
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermutationGroup(degree={}, order={}, gens={:?})",
            self.degree(),
            self.order(),
            self.generators()
        )
    }
}

/// Serialized form of a group; `order` is an exact decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecord {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: String,
}

impl GroupRecord {
    /// Rebuilds the group and checks the recorded order.
    pub fn to_group(&self) -> Result<PermutationGroup> {
        let g = PermutationGroup::new(self.degree, self.generators.clone())?;
        if g.order().to_string() != self.order {
            return Err(GroupError::InvalidInput(format!(
                "recorded order {} does not match computed order {}",
                self.order,
                g.order()
            )));
        }
        Ok(g)
    }
}

pub(crate) fn orbit_under(gens: &[Permutation], degree: usize, point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.image(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                orbit.push(q);
                queue.push_back(q);
            }
        }
    }
    orbit
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<()> {
    for g in gens {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    Ok(())
}

fn dedup_gens(gens: Vec<Permutation>) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Iterator over group elements: products of transversal elements, deepest first.
pub struct Elements<'a> {
    group: &'a PermutationGroup,
    idx: Vec<usize>,
    // partial[i] = u_i * partial[i-1], product of the chosen reps of levels 0..=i
    // (deeper reps on the left)
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(group: &'a PermutationGroup) -> Self {
        let levels = group.chain().levels.len();
        let mut it = Elements {
            group,
            idx: vec![0; levels],
            partial: Vec::with_capacity(levels),
            done: false,
        };
        it.recompute_from(0);
        it
    }

    fn recompute_from(&mut self, from: usize) {
        let chain = self.group.chain();
        self.partial.truncate(from);
        for i in from..chain.levels.len() {
            let level = &chain.levels[i];
            let u = level.rep(level.orbit[self.idx[i]]).unwrap();
            let p = if i == 0 {
                u.clone()
            } else {
                u.mul(&self.partial[i - 1])
            };
            self.partial.push(p);
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let chain = self.group.chain();
        let out = match self.partial.last() {
            Some(p) => p.clone(),
            None => Permutation::identity(self.group.degree()),
        };
        // advance odometer, deepest level fastest
        let mut i = chain.levels.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.idx[i] += 1;
            if self.idx[i] < chain.levels[i].orbit.len() {
                self.recompute_from(i);
                break;
            }
            self.idx[i] = 0;
        }
        Some(out)
    }
}
