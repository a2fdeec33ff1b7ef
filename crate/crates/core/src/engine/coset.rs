//! Right cosets `Hg`, identified through a canonical representative.
//!
//! The canonical representative of `Hg` is the element of the coset whose
//! images of the base of `H` are lexicographically least; it is found greedily
//! level by level through the chain of `H`.

use std::collections::{HashMap, VecDeque};

use super::group::PermutationGroup;
use super::perm::Permutation;
use super::Caps;
use crate::error::{GroupError, Result};

/// Canonical representatives for right cosets of a fixed subgroup.
#[derive(Clone)]
pub struct CosetSpace {
    sub: PermutationGroup,
    key_points: Vec<u32>,
}

impl CosetSpace {
    /// Keys are the images of `ambient`'s base under the canonical
    /// representative, or the full image array when no ambient is known.
    pub fn new(sub: &PermutationGroup, ambient: Option<&PermutationGroup>) -> Self {
        let key_points = match ambient {
            Some(a) => a.base(),
            None => (0..sub.degree() as u32).collect(),
        };
        CosetSpace {
            sub: sub.clone(),
            key_points,
        }
    }

    pub fn subgroup(&self) -> &PermutationGroup {
        &self.sub
    }

    pub fn canonical(&self, g: &Permutation) -> Permutation {
        let mut g = g.clone();
        for level in &self.sub.chain().levels {
            let mut best = level.base;
            let mut best_img = g.image(level.base);
            for &p in &level.orbit {
                let img = g.image(p);
                if img < best_img {
                    best_img = img;
                    best = p;
                }
            }
            if best != level.base {
                g = level.rep(best).unwrap().mul(&g);
            }
        }
        g
    }

    pub fn key(&self, canonical: &Permutation) -> Vec<u32> {
        self.key_points
            .iter()
            .map(|&p| canonical.image(p))
            .collect()
    }

    pub fn canonical_key(&self, g: &Permutation) -> (Permutation, Vec<u32>) {
        let c = self.canonical(g);
        let k = self.key(&c);
        (c, k)
    }
}

/// All right cosets of `sub` in `ambient`, enumerated breadth-first from the
/// trivial coset using the ambient generators in order.
#[derive(Clone)]
pub struct CosetTable {
    space: CosetSpace,
    reps: Vec<Permutation>,
    lookup: HashMap<Vec<u32>, usize>,
}

impl CosetTable {
    pub fn new(ambient: &PermutationGroup, sub: &PermutationGroup, caps: &Caps) -> Result<Self> {
        if !ambient.contains_group(sub) {
            return Err(GroupError::NotSubgroup);
        }
        let index = ambient.order() / sub.order();
        let index = u64::try_from(&index).unwrap_or(u64::MAX);
        if index > caps.index {
            return Err(GroupError::cap("coset index", caps.index));
        }
        let space = CosetSpace::new(sub, Some(ambient));
        let (c0, k0) = space.canonical_key(&Permutation::identity(ambient.degree()));
        let mut reps = vec![c0];
        let mut lookup = HashMap::from([(k0, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            if reps.len() as u64 == index {
                break;
            }
            for s in ambient.generators() {
                let (c, k) = space.canonical_key(&reps[i].mul(s));
                if let std::collections::hash_map::Entry::Vacant(e) = lookup.entry(k) {
                    e.insert(reps.len());
                    queue.push_back(reps.len());
                    reps.push(c);
                }
            }
        }
        debug_assert_eq!(reps.len() as u64, index);
        Ok(CosetTable {
            space,
            reps,
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    /// Position of the coset `sub * g`.
    pub fn locate(&self, g: &Permutation) -> usize {
        let (_, k) = self.space.canonical_key(g);
        self.lookup[&k]
    }

    /// Permutation of the coset indices induced by right multiplication by `g`.
    pub fn action(&self, g: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.locate(&r.mul(g)) as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

/// One representative per right coset of `sub` in `ambient`, in the fixed
/// breadth-first enumeration order.
pub fn coset_reps(
    ambient: &PermutationGroup,
    sub: &PermutationGroup,
    caps: &Caps,
) -> Result<Vec<Permutation>> {
    Ok(CosetTable::new(ambient, sub, caps)?.reps)
}

/// Representatives of the double cosets `H g K`, each being the first coset
/// `Hg` of its `K`-orbit in the enumeration order of [`CosetTable`].
/// Returns (representative, number of right cosets of `H` in the double coset).
pub fn double_coset_reps(
    ambient: &PermutationGroup,
    left: &PermutationGroup,
    right: &PermutationGroup,
    caps: &Caps,
) -> Result<Vec<(Permutation, usize)>> {
    if !ambient.contains_group(right) {
        return Err(GroupError::NotSubgroup);
    }
    let table = CosetTable::new(ambient, left, caps)?;
    let n = table.len();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut size = 1;
        while let Some(i) = queue.pop_front() {
            for k in right.generators() {
                let j = table.locate(&table.reps[i].mul(k));
                if !assigned[j] {
                    assigned[j] = true;
                    size += 1;
                    queue.push_back(j);
                }
            }
        }
        out.push((table.reps[start].clone(), size));
    }
    Ok(out)
}
