//! Epimorphisms between permutation groups.
//!
//! A map given by generator images is represented by its graph: the diagonal
//! group on `target ⊔ source` points (target points first), whose chain has the
//! target's base as a prefix. The levels below the prefix form the kernel, and
//! sifting a target element through the prefix levels lifts it to the source.

use std::sync::OnceLock;

use num_bigint::BigUint;

use super::chain::StabChain;
use super::coset::CosetTable;
use super::group::PermutationGroup;
use super::perm::Permutation;
use super::Caps;
use crate::error::{GroupError, Result};

#[derive(Clone)]
enum Forward {
    Cosets(CosetTable),
    Restriction {
        offset: usize,
        len: usize,
    },
    /// Graph chain whose base starts with the source base, built on first use.
    Graph(OnceLock<PermutationGroup>),
}

/// A surjective homomorphism `source -> target`.
#[derive(Clone)]
pub struct Epimorphism {
    source: PermutationGroup,
    target: PermutationGroup,
    kernel: PermutationGroup,
    images: Vec<Permutation>,
    graph: PermutationGroup,
    prefix_len: usize,
    forward: Forward,
}

impl std::fmt::Debug for Epimorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Epimorphism")
            .field("source_order", self.source.order())
            .field("target_order", self.target.order())
            .field("kernel_order", self.kernel.order())
            .finish()
    }
}

fn graph_generators(
    source: &PermutationGroup,
    images: &[Permutation],
    m: usize,
) -> Vec<Permutation> {
    let total = m + source.degree();
    source
        .generators()
        .iter()
        .zip(images)
        .map(|(s, t)| t.shifted(0, total).mul(&s.shifted(m, total)))
        .collect()
}

/// Lifts `x`, which acts on the part `[offset, offset + len)`, through the
/// first `levels` levels of `chain`. Returns the graph element and whether the
/// residue is trivial.
fn lift_through(
    chain: &StabChain,
    levels: usize,
    x: &Permutation,
    offset: usize,
    len: usize,
) -> (Permutation, bool) {
    let mut r = x.clone();
    let mut d = Permutation::identity(chain.degree);
    for level in &chain.levels[..levels] {
        let local = level.base - offset as u32;
        let b = r.image(local) + offset as u32;
        match (level.rep(b), level.inv_rep(b)) {
            (Some(u), Some(inv)) => {
                r = r.mul(&inv.restrict(offset, len));
                d = u.mul(&d);
            }
            _ => return (d, false),
        }
    }
    (d, r.is_identity())
}

impl Epimorphism {
    /// The homomorphism sending the `i`-th generator of `source` to `images[i]`.
    /// Fails when the images do not define a homomorphism.
    pub fn from_images(source: &PermutationGroup, images: Vec<Permutation>) -> Result<Self> {
        let m = Self::check_images(source, &images)?;
        let e = Self::build(source, images, m, false, Forward::Graph(OnceLock::new()));
        if e.graph.order() != source.order() {
            return Err(GroupError::InvalidInput(
                "generator images do not define a homomorphism".into(),
            ));
        }
        Ok(e)
    }

    /// Action on the right cosets of `sub`.
    pub fn coset_action(
        source: &PermutationGroup,
        sub: &PermutationGroup,
        caps: &Caps,
    ) -> Result<Self> {
        let table = CosetTable::new(source, sub, caps)?;
        let images: Vec<Permutation> = source
            .generators()
            .iter()
            .map(|g| table.action(g))
            .collect();
        let m = table.len();
        Ok(Self::build(source, images, m, true, Forward::Cosets(table)))
    }

    /// Restriction to the invariant block `[offset, offset + len)`.
    pub fn restriction(source: &PermutationGroup, offset: usize, len: usize) -> Result<Self> {
        if offset + len > source.degree() {
            return Err(GroupError::InvalidInput("block out of range".into()));
        }
        let invariant = source.generators().iter().all(|g| {
            (offset..offset + len).all(|p| {
                let q = g.image(p as u32) as usize;
                q >= offset && q < offset + len
            })
        });
        if !invariant {
            return Err(GroupError::InvalidInput("block is not invariant".into()));
        }
        let images = source
            .generators()
            .iter()
            .map(|g| g.restrict(offset, len))
            .collect();
        Ok(Self::build(
            source,
            images,
            len,
            true,
            Forward::Restriction { offset, len },
        ))
    }

    fn check_images(source: &PermutationGroup, images: &[Permutation]) -> Result<usize> {
        if images.len() != source.generators().len() {
            return Err(GroupError::InvalidInput(format!(
                "{} generator images given for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        let m = images.first().map_or(1, |p| p.degree());
        if let Some(p) = images.iter().find(|p| p.degree() != m) {
            return Err(GroupError::DegreeMismatch {
                expected: m,
                found: p.degree(),
            });
        }
        Ok(m)
    }

    fn build(
        source: &PermutationGroup,
        images: Vec<Permutation>,
        m: usize,
        trusted: bool,
        forward: Forward,
    ) -> Self {
        let target = PermutationGroup::new(m, images.clone()).expect("images share one degree");
        let prefix = target.base();
        let gens = graph_generators(source, &images, m);
        let known = trusted.then(|| source.order());
        let graph = PermutationGroup::build(m + source.degree(), gens, &prefix, known);
        let chain = graph.chain();
        let prefix_len = prefix.len();
        let kernel_gens: Vec<Permutation> = chain
            .stabilizer_generators(prefix_len)
            .iter()
            .map(|g| g.restrict(m, source.degree()))
            .collect();
        let kernel_order = chain.order_from(prefix_len);
        let kernel =
            PermutationGroup::build(source.degree(), kernel_gens, &[], Some(&kernel_order))
                .with_parent(source);
        Epimorphism {
            source: source.clone(),
            target,
            kernel,
            images,
            graph,
            prefix_len,
            forward,
        }
    }

    pub fn source(&self) -> &PermutationGroup {
        &self.source
    }

    pub fn target(&self) -> &PermutationGroup {
        &self.target
    }

    pub fn kernel(&self) -> &PermutationGroup {
        &self.kernel
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    fn target_degree(&self) -> usize {
        self.target.degree()
    }

    /// Image of a source element.
    pub fn map(&self, x: &Permutation) -> Result<Permutation> {
        if !self.source.is_member(x)? {
            return Err(GroupError::NotMember);
        }
        Ok(match &self.forward {
            Forward::Cosets(table) => table.action(x),
            Forward::Restriction { offset, len } => x.restrict(*offset, *len),
            Forward::Graph(lock) => {
                let m = self.target_degree();
                let n = self.source.degree();
                let g = lock.get_or_init(|| {
                    let prefix: Vec<u32> =
                        self.source.base().iter().map(|&b| b + m as u32).collect();
                    PermutationGroup::build(
                        m + n,
                        self.graph.generators().to_vec(),
                        &prefix,
                        Some(self.source.order()),
                    )
                });
                let levels = self.source.base().len();
                let (d, ok) = lift_through(g.chain(), levels, x, m, n);
                debug_assert!(ok);
                d.restrict(0, m)
            }
        })
    }

    /// Some preimage of a target element.
    pub fn lift(&self, t: &Permutation) -> Result<Permutation> {
        if !self.target.is_member(t)? {
            return Err(GroupError::NotMember);
        }
        let m = self.target_degree();
        let (d, ok) = lift_through(self.graph.chain(), self.prefix_len, t, 0, m);
        debug_assert!(ok);
        Ok(d.restrict(m, self.source.degree()))
    }

    /// Image of a subgroup of the source.
    pub fn image(&self, sub: &PermutationGroup) -> Result<PermutationGroup> {
        if !self.source.contains_group(sub) {
            return Err(GroupError::NotSubgroup);
        }
        let gens = sub
            .generators()
            .iter()
            .map(|g| self.map(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermutationGroup::new(self.target_degree(), gens)?.with_parent(&self.target))
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &PermutationGroup) -> Result<PermutationGroup> {
        if !self.target.contains_group(sub) {
            return Err(GroupError::NotSubgroup);
        }
        let mut gens = sub
            .generators()
            .iter()
            .map(|g| self.lift(g))
            .collect::<Result<Vec<_>>>()?;
        gens.extend(self.kernel.generators().iter().cloned());
        let order: BigUint = sub.order() * self.kernel.order();
        Ok(
            PermutationGroup::build(self.source.degree(), gens, &[], Some(&order))
                .with_parent(&self.source),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermutationGroup {
        PermutationGroup::symmetric(4)
    }

    #[test]
    fn sign_map_has_alternating_kernel() {
        let g = s4();
        let images: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|x| {
                if x.is_even() {
                    Permutation::identity(2)
                } else {
                    Permutation::from_cycles(2, &[&[0, 1]]).unwrap()
                }
            })
            .collect();
        let e = Epimorphism::from_images(&g, images).unwrap();
        assert_eq!(e.kernel().order_u64(), 12);
        assert_eq!(e.target().order_u64(), 2);
        for x in g.elements() {
            let expected = if x.is_even() { 0 } else { 1 };
            assert_eq!(e.map(&x).unwrap().image(0), expected);
        }
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let g = s4();
        // (0 1) has order 2 but its image would have order 3
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert!(Epimorphism::from_images(&g, vec![c, t]).is_err());
    }

    #[test]
    fn coset_action_lift_and_preimage() {
        let g = s4();
        let v4 = PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let stab = PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        let caps = Caps::default();
        // the action on the cosets of a point stabilizer is faithful
        let e = Epimorphism::coset_action(&g, &stab, &caps).unwrap();
        assert!(e.kernel().is_trivial());
        assert_eq!(e.target().order_u64(), 24);
        for x in g.elements() {
            let t = e.map(&x).unwrap();
            assert_eq!(e.map(&e.lift(&t).unwrap()).unwrap(), t);
        }
        let d8 = PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2]]).unwrap(),
            ],
        )
        .unwrap();
        let q = Epimorphism::coset_action(&g, &d8, &caps).unwrap();
        assert!(q.kernel().same_group(&v4));
        let pre = q.preimage(&PermutationGroup::trivial(3)).unwrap();
        assert!(pre.same_group(&v4));
    }
}
