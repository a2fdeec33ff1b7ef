//! Exhaustive structures for small groups: element tables, conjugacy classes
//! and the full subgroup lattice.
//!
//! Subgroups are bitsets over the element table. The lattice is found class
//! by class: each class representative `K` is extended by every cyclic
//! subgroup not inside it, and each new join brings in its whole conjugacy
//! class. Every subgroup `M` is a join `<K, Z>` with `K` maximal in `M`, so
//! conjugating that decomposition shows the search is complete.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::group::PermutationGroup;
use super::perm::Permutation;
use super::Caps;
use crate::error::{GroupError, Result};

/// Largest order for which a full multiplication table is stored.
const MUL_TABLE_LIMIT: usize = 1024;

/// The elements of a group, indexed in the chain's enumeration order
/// (index 0 is the identity).
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Option<Vec<u32>>,
}

impl ElementTable {
    pub fn new(g: &PermutationGroup, caps: &Caps) -> Result<Self> {
        if g.order_u64() > caps.audit_order {
            return Err(GroupError::cap("element table order", caps.audit_order));
        }
        let elements: Vec<Permutation> = g.elements().collect();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let n = elements.len();
        let mul = (n <= MUL_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.mul(b)]);
                }
            }
            t
        });
        Ok(ElementTable {
            elements,
            index,
            mul,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Some(t) => t[a * self.len() + b] as usize,
            None => self.index[&self.elements[a].mul(&self.elements[b])] as usize,
        }
    }

    /// Table of `e -> e^x` for a fixed group element `x`.
    fn conjugation(&self, x: &Permutation) -> Vec<u32> {
        self.elements
            .iter()
            .map(|e| self.index[&e.conjugate(x)])
            .collect()
    }
}

/// Conjugacy classes as (representative, class size), the representative
/// being the first element of the class in enumeration order.
pub fn conjugacy_classes(g: &PermutationGroup, caps: &Caps) -> Result<Vec<(Permutation, usize)>> {
    let table = ElementTable::new(g, caps)?;
    let conj: Vec<Vec<u32>> = g
        .generators()
        .iter()
        .map(|x| table.conjugation(x))
        .collect();
    let n = table.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut size = 0;
        while let Some(i) = queue.pop_front() {
            size += 1;
            for c in &conj {
                let j = c[i] as usize;
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        out.push((table.element(start).clone(), size));
    }
    Ok(out)
}

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

struct Entry {
    members: Bits,
    /// Element indices generating the subgroup.
    gens: Vec<usize>,
    order: usize,
    class: usize,
    group: OnceLock<PermutationGroup>,
}

/// Every subgroup of a small group, grouped into conjugacy classes.
///
/// Subgroups are listed class by class; classes are sorted by order and then
/// by discovery, so the listing is deterministic.
pub struct SubgroupLattice {
    ambient: PermutationGroup,
    table: ElementTable,
    entries: Vec<Entry>,
    lookup: HashMap<Bits, usize>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ambient(&self) -> &PermutationGroup {
        &self.ambient
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn order(&self, i: usize) -> usize {
        self.entries[i].order
    }

    /// Index of the class representative of subgroup `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.entries[i].class
    }

    pub fn class_reps(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.class_of(i) == i).collect()
    }

    pub fn class_members(&self, rep: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.class_of(i) == rep)
            .collect()
    }

    /// Subgroup `i` is contained in subgroup `j`.
    pub fn is_subgroup(&self, i: usize, j: usize) -> bool {
        subset(&self.entries[i].members, &self.entries[j].members)
    }

    pub fn contains_element(&self, i: usize, element: usize) -> bool {
        bit(&self.entries[i].members, element)
    }

    pub fn group(&self, i: usize) -> PermutationGroup {
        let e = &self.entries[i];
        e.group
            .get_or_init(|| {
                let gens = e
                    .gens
                    .iter()
                    .map(|&g| self.table.element(g).clone())
                    .collect();
                PermutationGroup::new(self.ambient.degree(), gens)
                    .expect("elements share the ambient degree")
                    .with_parent(&self.ambient)
            })
            .clone()
    }

    /// Position of a subgroup of the ambient group in the listing.
    pub fn locate(&self, h: &PermutationGroup) -> Option<usize> {
        if h.order_u64() > self.table.len() as u64 {
            return None;
        }
        let mut b = bits_new(self.table.len());
        for e in h.elements() {
            set_bit(&mut b, self.table.index_of(&e)?);
        }
        self.lookup.get(&b).copied()
    }
}

/// Enumerates all subgroups of `g` (order at most `caps.audit_order`, at most
/// `caps.subgroups` subgroups).
pub fn all_subgroups(g: &PermutationGroup, caps: &Caps) -> Result<SubgroupLattice> {
    let table = ElementTable::new(g, caps)?;
    let n = table.len();
    let conj: Vec<Vec<u32>> = g
        .generators()
        .iter()
        .map(|x| table.conjugation(x))
        .collect();

    let closure = |start: &[usize], gens: &[usize]| -> (Bits, Vec<usize>) {
        let mut b = bits_new(n);
        let mut list = Vec::new();
        for &x in start {
            if !bit(&b, x) {
                set_bit(&mut b, x);
                list.push(x);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for &s in gens {
                let y = table.mul(list[i], s);
                if !bit(&b, y) {
                    set_bit(&mut b, y);
                    list.push(y);
                }
            }
            i += 1;
        }
        (b, list)
    };

    // distinct cyclic subgroups, by least generator index
    let mut cyclic: Vec<(usize, Bits)> = Vec::new();
    {
        let mut seen: HashMap<Bits, ()> = HashMap::new();
        for x in 1..n {
            let (b, _) = closure(&[0], &[x]);
            if seen.insert(b.clone(), ()).is_none() {
                cyclic.push((x, b));
            }
        }
    }

    struct Raw {
        members: Bits,
        list: Vec<usize>,
        gens: Vec<usize>,
        class: usize,
    }
    let mut raw: Vec<Raw> = Vec::new();
    let mut lookup: HashMap<Bits, usize> = HashMap::new();
    let mut class_reps: Vec<usize> = Vec::new();

    let add_class = |members: Bits,
                     list: Vec<usize>,
                     gens: Vec<usize>,
                     raw: &mut Vec<Raw>,
                     lookup: &mut HashMap<Bits, usize>,
                     class_reps: &mut Vec<usize>|
     -> Result<()> {
        let rep = raw.len();
        class_reps.push(rep);
        lookup.insert(members.clone(), rep);
        raw.push(Raw {
            members,
            list,
            gens,
            class: rep,
        });
        let mut i = rep;
        while i < raw.len() {
            for c in &conj {
                let list: Vec<usize> = raw[i].list.iter().map(|&e| c[e] as usize).collect();
                let mut b = bits_new(n);
                for &e in &list {
                    set_bit(&mut b, e);
                }
                if !lookup.contains_key(&b) {
                    if raw.len() as u64 >= caps.subgroups {
                        return Err(GroupError::cap("subgroup count", caps.subgroups));
                    }
                    lookup.insert(b.clone(), raw.len());
                    let gens = raw[i].gens.iter().map(|&e| c[e] as usize).collect();
                    raw.push(Raw {
                        members: b,
                        list,
                        gens,
                        class: rep,
                    });
                }
            }
            i += 1;
        }
        Ok(())
    };

    let (b0, l0) = closure(&[0], &[]);
    add_class(b0, l0, Vec::new(), &mut raw, &mut lookup, &mut class_reps)?;
    let mut next = 0;
    while next < class_reps.len() {
        let k = class_reps[next];
        next += 1;
        for (z, zb) in &cyclic {
            if subset(zb, &raw[k].members) {
                continue;
            }
            let mut gens = raw[k].gens.clone();
            gens.push(*z);
            let start = raw[k].list.clone();
            let (b, list) = closure(&start, &gens);
            if !lookup.contains_key(&b) {
                add_class(b, list, gens, &mut raw, &mut lookup, &mut class_reps)?;
            }
        }
    }

    // order classes by subgroup order, then by discovery
    let mut order_of_class: Vec<(usize, usize)> =
        class_reps.iter().map(|&r| (raw[r].list.len(), r)).collect();
    order_of_class.sort();
    let mut position = vec![usize::MAX; raw.len()];
    let mut sequence = Vec::with_capacity(raw.len());
    for &(_, rep) in &order_of_class {
        for (i, r) in raw.iter().enumerate() {
            if r.class == rep {
                position[i] = sequence.len();
                sequence.push(i);
            }
        }
    }
    let mut slots: Vec<Option<Raw>> = raw.into_iter().map(Some).collect();
    let mut entries = Vec::with_capacity(sequence.len());
    let mut lookup = HashMap::with_capacity(sequence.len());
    for &old in &sequence {
        let r = slots[old].take().unwrap();
        lookup.insert(r.members.clone(), entries.len());
        entries.push(Entry {
            order: r.list.len(),
            members: r.members,
            gens: r.gens,
            class: position[r.class],
            group: OnceLock::new(),
        });
    }
    Ok(SubgroupLattice {
        ambient: g.clone(),
        table,
        entries,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_counts() {
        let caps = Caps::default();
        let s4 = PermutationGroup::symmetric(4);
        let lat = all_subgroups(&s4, &caps).unwrap();
        assert_eq!(lat.len(), 30);
        assert_eq!(lat.class_reps().len(), 11);
        let s5 = PermutationGroup::symmetric(5);
        let lat = all_subgroups(&s5, &caps).unwrap();
        assert_eq!(lat.len(), 156);
        assert_eq!(lat.class_reps().len(), 19);
        assert_eq!(conjugacy_classes(&s5, &caps).unwrap().len(), 7);
    }

    #[test]
    fn lattice_is_closed_and_classes_are_conjugate() {
        let caps = Caps::default();
        let a4 = PermutationGroup::alternating(4);
        let lat = all_subgroups(&a4, &caps).unwrap();
        assert_eq!(lat.len(), 10);
        for i in 0..lat.len() {
            let h = lat.group(i);
            assert_eq!(h.order_u64() as usize, lat.order(i));
            assert_eq!(lat.locate(&h), Some(i));
            let rep = lat.class_of(i);
            assert_eq!(lat.order(rep), lat.order(i));
        }
    }
}
