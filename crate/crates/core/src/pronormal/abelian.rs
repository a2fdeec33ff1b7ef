use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::{check_sub, Method, Status, Verdict};
use crate::engine::{
    centralizer, commutator_subgroup, intersection, normalizer, Caps, ElementTable, Permutation,
    PermutationGroup,
};
use crate::error::{GroupError, Result};

/// Result of [`abelian_criterion`].
#[derive(Clone, Debug)]
pub struct AbelianOutcome {
    pub verdict: Verdict,
    /// First `H`-invariant `U` with `U ≠ N_U(H)[H,U]`.
    pub failing_u: Option<PermutationGroup>,
    /// Number of `H`-invariant subgroups examined.
    pub invariant_subgroups: usize,
}

type Bits = Vec<u64>;

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn put(b: &mut Bits, i: usize) -> bool {
    let fresh = !has(b, i);
    b[i / 64] |= 1 << (i % 64);
    fresh
}

/// Subgroups of an abelian group stored as bitsets over its element table.
struct AbelianTable<'a> {
    table: ElementTable,
    /// Conjugation by each generator of `H`, as index maps.
    conj: Vec<Vec<usize>>,
    h: &'a PermutationGroup,
}

impl AbelianTable<'_> {
    fn len(&self) -> usize {
        self.table.len()
    }

    fn empty(&self) -> Bits {
        vec![0; self.len().div_ceil(64)]
    }

    /// Smallest `H`-invariant subgroup containing `seeds`.
    fn invariant_closure(&self, seeds: &[usize]) -> (Bits, Vec<usize>) {
        let mut b = self.empty();
        put(&mut b, 0);
        let mut list = vec![0];
        let mut gens: Vec<usize> = Vec::new();
        let mut pending: VecDeque<usize> = seeds.iter().copied().collect();
        while let Some(x) = pending.pop_front() {
            if has(&b, x) {
                continue;
            }
            gens.push(x);
            for c in &self.conj {
                pending.push_back(c[x]);
            }
            let mut i = 0;
            while i < list.len() {
                for &s in &gens {
                    let y = self.table.mul(list[i], s);
                    if put(&mut b, y) {
                        list.push(y);
                    }
                }
                i += 1;
            }
        }
        (b, list)
    }

    /// `N_U(H)`: elements of `U` normalizing `H`.
    fn normalizing(&self, list: &[usize]) -> Vec<usize> {
        list.iter()
            .copied()
            .filter(|&u| {
                let x = self.table.element(u);
                self.h
                    .generators()
                    .iter()
                    .all(|y| self.h.contains(&y.conjugate(x)))
            })
            .collect()
    }

    /// `[H, U]`: the `H`-invariant closure of the commutators `[y, u]` with
    /// `y` a generator of `H`. It is normalized by `U` because `U` is abelian.
    fn commutators(&self, list: &[usize]) -> Vec<usize> {
        let seeds: Vec<usize> = list
            .iter()
            .flat_map(|&u| {
                let x = self.table.element(u);
                self.h
                    .generators()
                    .iter()
                    .map(move |y| y.commutator(x))
                    .collect::<Vec<_>>()
            })
            .map(|c| self.table.index_of(&c).expect("[H,U] lies in U"))
            .collect();
        self.invariant_closure(&seeds).1
    }
}

fn group_from(
    degree: usize,
    table: &ElementTable,
    list: &[usize],
    parent: &PermutationGroup,
) -> Result<PermutationGroup> {
    let gens = list.iter().map(|&i| table.element(i).clone()).collect();
    Ok(PermutationGroup::new(degree, gens)?.with_parent(parent))
}

/// Decides pronormality of a supplement `H` to an abelian normal subgroup `V`
/// (`G = HV`) by checking `U = N_U(H)[H,U]` for every `H`-invariant `U ≤ V`.
///
/// The invariant subgroups are enumerated breadth-first from the trivial one,
/// each step adjoining the `H`-orbit of one element per coset.
pub fn abelian_criterion(
    g: &PermutationGroup,
    v: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
) -> Result<AbelianOutcome> {
    check_sub(g, v)?;
    check_sub(g, h)?;
    if !v.is_abelian() {
        return Err(GroupError::Precondition("V is not abelian".into()));
    }
    if !g.normalizes(v) {
        return Err(GroupError::Precondition("V is not normal in G".into()));
    }
    let hv = intersection(h, v, caps)?;
    if h.order() * v.order() != g.order() * hv.order() {
        return Err(GroupError::Precondition("G is not HV".into()));
    }
    if v.order_u64() > caps.abelian {
        return Err(GroupError::cap("abelian subgroup order", caps.abelian));
    }
    let element_caps = Caps {
        audit_order: caps.abelian,
        ..caps.clone()
    };
    let table = ElementTable::new(v, &element_caps)?;
    let conj = h
        .generators()
        .iter()
        .map(|y| {
            table
                .elements()
                .iter()
                .map(|x| table.index_of(&x.conjugate(y)).expect("H normalizes V"))
                .collect()
        })
        .collect();
    let at = AbelianTable { table, conj, h };

    let (b0, l0) = at.invariant_closure(&[]);
    let mut seen: HashSet<Bits> = HashSet::from([b0.clone()]);
    let mut queue: VecDeque<(Bits, Vec<usize>)> = VecDeque::from([(b0, l0)]);
    let mut examined = 0;
    while let Some((bits, list)) = queue.pop_front() {
        examined += 1;
        let nu = at.normalizing(&list);
        let comm = at.commutators(&list);
        let mut seeds = nu.clone();
        seeds.extend(&comm);
        let (_, product) = at.invariant_closure(&seeds);
        if product.len() != list.len() {
            let u = group_from(g.degree(), &at.table, &list, g)?;
            let mut verdict = Verdict::summary(
                Status::NotPronormal,
                Method::AbelianCriterion,
                format!("{examined} H-invariant subgroups of V, in breadth-first order"),
            );
            verdict.searched = Some(examined as u64);
            return Ok(AbelianOutcome {
                verdict,
                failing_u: Some(u),
                invariant_subgroups: examined,
            });
        }
        // one new element per coset of U
        let mut covered = bits.clone();
        for x in 0..at.len() {
            if has(&covered, x) {
                continue;
            }
            for &u in &list {
                put(&mut covered, at.table.mul(u, x));
            }
            let mut seeds = list.clone();
            seeds.push(x);
            let (nb, nl) = at.invariant_closure(&seeds);
            if !seen.contains(&nb) {
                if seen.len() as u64 >= caps.subgroups {
                    return Err(GroupError::cap("invariant subgroup count", caps.subgroups));
                }
                seen.insert(nb.clone());
                queue.push_back((nb, nl));
            }
        }
    }
    Ok(AbelianOutcome {
        verdict: Verdict::summary(
            Status::Pronormal,
            Method::AbelianCriterion,
            format!("all {examined} H-invariant subgroups of V"),
        ),
        failing_u: None,
        invariant_subgroups: examined,
    })
}

/// The pieces of `U = N_U(H)[H,U]` for a subgroup `U` normalized by `H`.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub u_order: u64,
    pub normalizer_order: u64,
    pub commutator_order: u64,
    pub product_order: u64,
    pub equal: bool,
    /// When `gcd(|H|, |U|) = 1`: whether `N_U(H) = C_U(H)`.
    pub centralizer_agrees: Option<bool>,
}

/// Computes `N_U(H)`, `[H,U]` and their product inside `<H, U>`.
pub fn decompose_check(
    h: &PermutationGroup,
    u: &PermutationGroup,
    caps: &Caps,
) -> Result<Decomposition> {
    if h.degree() != u.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: u.degree(),
            found: h.degree(),
        });
    }
    if !h.normalizes(u) {
        return Err(GroupError::Precondition("H does not normalize U".into()));
    }
    let mut gens = h.generators().to_vec();
    gens.extend(u.generators().iter().cloned());
    let ambient = PermutationGroup::new(u.degree(), gens)?;
    let n = normalizer(&ambient, h, caps)?;
    let nu = intersection(u, &n, caps)?;
    let comm = commutator_subgroup(h, u)?;
    let mut pgens: Vec<Permutation> = nu.generators().to_vec();
    pgens.extend(comm.generators().iter().cloned());
    let product = PermutationGroup::new(u.degree(), pgens)?;
    let coprime = h.order().gcd(u.order()).is_one();
    let centralizer_agrees = if coprime {
        Some(centralizer(u, h, caps)?.same_group(&nu))
    } else {
        None
    };
    Ok(Decomposition {
        u_order: u.order_u64(),
        normalizer_order: nu.order_u64(),
        commutator_order: comm.order_u64(),
        product_order: product.order_u64(),
        equal: product.same_group(u),
        centralizer_agrees,
    })
}
