//! Orbit-stabilizer computations over abstract domains.
//!
//! An orbit is stored as a Schreier tree. Stabilizers are built from uniformly
//! random group elements `g * t(start^g)^-1`, which are uniform in the
//! stabilizer, until the chain reaches the order `|G| / |orbit|`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chain::{StabChain, CHAIN_SEED};
use super::group::PermutationGroup;
use super::perm::Permutation;
use crate::error::{GroupError, Result};

pub(crate) trait Domain {
    type Point: Clone;

    fn act(&self, p: &Self::Point, g: &Permutation) -> Self::Point;
    /// Must depend only on the point's identity, never on its representation.
    fn hash(&self, p: &Self::Point) -> u64;
    fn same(&self, a: &Self::Point, b: &Self::Point) -> bool;
}

pub(crate) struct Orbit<P> {
    pub(crate) points: Vec<P>,
    // (parent index, generator index); the root points to itself
    tree: Vec<(u32, u32)>,
    buckets: HashMap<u64, Vec<u32>>,
    gens: Vec<Permutation>,
    degree: usize,
}

impl<P: Clone> Orbit<P> {
    pub(crate) fn compute<D: Domain<Point = P>>(
        gens: &[Permutation],
        degree: usize,
        domain: &D,
        start: P,
        cap: u64,
    ) -> Result<Self> {
        let mut orbit = Orbit {
            points: vec![start.clone()],
            tree: vec![(0, u32::MAX)],
            buckets: HashMap::new(),
            gens: gens.to_vec(),
            degree,
        };
        orbit.buckets.insert(domain.hash(&start), vec![0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let q = domain.act(&orbit.points[i], g);
                if orbit.find(domain, &q).is_none() {
                    if orbit.points.len() as u64 >= cap {
                        return Err(GroupError::cap("orbit length", cap));
                    }
                    let idx = orbit.points.len() as u32;
                    orbit.buckets.entry(domain.hash(&q)).or_default().push(idx);
                    orbit.points.push(q);
                    orbit.tree.push((i as u32, gi as u32));
                    queue.push_back(idx as usize);
                }
            }
        }
        Ok(orbit)
    }

    pub(crate) fn len(&self) -> usize {
        self.points.len()
    }

    pub(crate) fn find<D: Domain<Point = P>>(&self, domain: &D, p: &P) -> Option<usize> {
        self.buckets.get(&domain.hash(p)).and_then(|b| {
            b.iter()
                .map(|&i| i as usize)
                .find(|&i| domain.same(&self.points[i], p))
        })
    }

    /// Element mapping the start point to point `i`.
    pub(crate) fn transversal(&self, mut i: usize) -> Permutation {
        let mut word = Vec::new();
        while i != 0 {
            let (parent, g) = self.tree[i];
            word.push(g as usize);
            i = parent as usize;
        }
        let mut t = Permutation::identity(self.degree);
        for &g in word.iter().rev() {
            t = t.mul(&self.gens[g]);
        }
        t
    }

    /// Stabilizer of the start point in `group` (whose generators built the orbit).
    pub(crate) fn stabilizer<D: Domain<Point = P>>(
        &self,
        group: &PermutationGroup,
        domain: &D,
    ) -> PermutationGroup {
        let target: BigUint = group.order() / BigUint::from(self.len());
        let mut rng = ChaCha8Rng::seed_from_u64(CHAIN_SEED ^ 0x57ab);
        let start = self.points[0].clone();
        let sample = || {
            let g = group.random_element(&mut rng);
            let p = domain.act(&start, &g);
            let i = self
                .find(domain, &p)
                .expect("orbit is closed under the group");
            g.mul(&self.transversal(i).inverse())
        };
        let chain = StabChain::from_random_elements(group.degree(), &[], &target, 20_000, sample);
        debug_assert_eq!(chain.order(), target);
        let mut gens: Vec<Permutation> = chain.strong.clone();
        gens.dedup();
        PermutationGroup::from_chain(group.degree(), gens, chain, Some(group.clone()))
    }
}
