//! The named small groups shared by the scenarios.

use crate::construct::{realize, BuiltGroup, GroupSpec};
use crate::engine::{all_subgroups, Caps, PermutationGroup, SubgroupLattice};
use crate::error::{GroupError, Result};

fn wreath(base: GroupSpec, n: usize) -> GroupSpec {
    GroupSpec::Wreath {
        base: Box::new(base),
        top_degree: n,
    }
}

/// Spec of a pool group by display name.
pub fn pool_spec(name: &str) -> Option<GroupSpec> {
    Some(match name {
        "Sym(3)" => GroupSpec::Sym(3),
        "Sym(4)" => GroupSpec::Sym(4),
        "Sym(5)" => GroupSpec::Sym(5),
        "Alt(5)" => GroupSpec::Alt(5),
        "Q8" => GroupSpec::Quaternion8 {},
        "D12" => GroupSpec::Dihedral(6),
        "SL2(3)" => GroupSpec::Sl2 { q: 3 },
        "PSL2(7)" => GroupSpec::Psl2 { q: 7 },
        "GL3(2)" => GroupSpec::Gl { d: 3, q: 2 },
        "C7:C3" => GroupSpec::Frobenius73 {},
        "C2 wr Sym(3)" => wreath(GroupSpec::Cyclic(2), 3),
        "C3 wr Sym(2)" => wreath(GroupSpec::Cyclic(3), 2),
        "C3 wr Sym(3)" => wreath(GroupSpec::Cyclic(3), 3),
        "C4 wr Sym(2)" => wreath(GroupSpec::Cyclic(4), 2),
        "C5 wr Sym(2)" => wreath(GroupSpec::Cyclic(5), 2),
        "C2 wr Sym(4)" => wreath(GroupSpec::Cyclic(2), 4),
        "C6 wr Sym(2)" => wreath(GroupSpec::Cyclic(6), 2),
        "C4 wr Sym(3)" => wreath(GroupSpec::Cyclic(4), 3),
        "Sym(3)^2" => GroupSpec::Product(vec![GroupSpec::Sym(3), GroupSpec::Sym(3)]),
        "SL2(3)^2" => GroupSpec::Product(vec![GroupSpec::Sl2 { q: 3 }, GroupSpec::Sl2 { q: 3 }]),
        "SL2(3) wr Sym(2)" => wreath(GroupSpec::Sl2 { q: 3 }, 2),
        _ => return None,
    })
}

/// Groups on which every decider is compared.
pub const AGREEMENT_POOL: &[&str] = &[
    "Sym(4)",
    "SL2(3)",
    "Alt(5)",
    "Sym(5)",
    "PSL2(7)",
    "C3 wr Sym(3)",
    "SL2(3)^2",
];

/// Groups audited against the fixed-point criterion in every coset action.
pub const HALL_POOL: &[&str] = &["Sym(4)", "SL2(3)", "Alt(5)", "PSL2(7)"];

/// Groups small enough for full subgroup lattices in the randomized suites.
pub const LATTICE_POOL: &[&str] = &[
    "Sym(4)",
    "SL2(3)",
    "Alt(5)",
    "Q8",
    "D12",
    "C7:C3",
    "C2 wr Sym(3)",
    "C3 wr Sym(2)",
    "C3 wr Sym(3)",
    "Sym(3)^2",
];

/// Groups with many supplements to abelian normal subgroups.
pub const SUPPLEMENT_POOL: &[&str] = &[
    "Sym(4)",
    "D12",
    "C7:C3",
    "C2 wr Sym(3)",
    "C3 wr Sym(2)",
    "C3 wr Sym(3)",
    "C4 wr Sym(2)",
    "C5 wr Sym(2)",
    "C2 wr Sym(4)",
    "C6 wr Sym(2)",
    "C4 wr Sym(3)",
    "Sym(3)^2",
];

/// Transitive groups in their construction actions.
pub const TRANSITIVE_POOL: &[&str] = &[
    "Sym(4)",
    "Sym(5)",
    "Alt(5)",
    "D12",
    "SL2(3)",
    "PSL2(7)",
    "GL3(2)",
    "C7:C3",
    "C3 wr Sym(3)",
];

#[derive(Clone, Debug)]
pub struct PoolGroup {
    pub name: &'static str,
    pub spec: GroupSpec,
    pub built: BuiltGroup,
}

impl PoolGroup {
    pub fn group(&self) -> &PermutationGroup {
        &self.built.group
    }
}

pub fn pool_group(name: &'static str) -> Result<PoolGroup> {
    let spec = pool_spec(name)
        .ok_or_else(|| GroupError::InvalidInput(format!("no pool group named {name:?}")))?;
    let built = realize(&spec)?;
    Ok(PoolGroup { name, spec, built })
}

/// A pool group with its full subgroup lattice and normal subgroups.
pub struct LatticeGroup {
    pub pool: PoolGroup,
    pub lattice: SubgroupLattice,
    /// Lattice positions of the normal subgroups.
    pub normals: Vec<usize>,
}

impl LatticeGroup {
    pub fn new(name: &'static str, caps: &Caps) -> Result<Self> {
        let pool = pool_group(name)?;
        let lattice = all_subgroups(pool.group(), caps)?;
        let normals = (0..lattice.len())
            .filter(|&i| lattice.class_members(lattice.class_of(i)).len() == 1)
            .collect();
        Ok(LatticeGroup {
            pool,
            lattice,
            normals,
        })
    }

    pub fn group(&self) -> &PermutationGroup {
        self.pool.group()
    }

    /// Lattice positions of the subgroups of subgroup `i`.
    pub fn below(&self, i: usize) -> Vec<usize> {
        (0..self.lattice.len())
            .filter(|&j| self.lattice.is_subgroup(j, i))
            .collect()
    }
}

pub fn lattice_pool(names: &[&'static str], caps: &Caps) -> Result<Vec<LatticeGroup>> {
    names.iter().map(|n| LatticeGroup::new(n, caps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_pool_name_resolves() {
        for list in [
            AGREEMENT_POOL,
            HALL_POOL,
            LATTICE_POOL,
            SUPPLEMENT_POOL,
            TRANSITIVE_POOL,
        ] {
            for name in list {
                assert!(pool_spec(name).is_some(), "{name}");
            }
        }
        assert!(pool_spec("Sym(99)?").is_none());
    }

    #[test]
    fn normal_subgroups_of_sym4() {
        let g = LatticeGroup::new("Sym(4)", &Caps::default()).unwrap();
        let mut orders: Vec<usize> = g.normals.iter().map(|&i| g.lattice.order(i)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn transitive_pool_is_transitive() {
        for name in TRANSITIVE_POOL {
            assert!(pool_group(name).unwrap().group().is_transitive(), "{name}");
        }
    }
}
