//! Exact permutation-group arithmetic.
//!
//! Everything here works on [`PermutationGroup`] values carrying a complete
//! stabilizer chain. Searches (normalizers, conjugacy, coset enumeration,
//! lattices) are bounded by [`Caps`] and report [`GroupError::CapExceeded`]
//! rather than truncating.
//!
//! [`GroupError::CapExceeded`]: crate::error::GroupError::CapExceeded

mod action;
mod chain;
mod coset;
mod group;
mod hom;
mod lattice;
mod orbit;
mod perm;
mod radical;
mod subgroup;
mod sylow;

use serde::{Deserialize, Serialize};

pub use action::{fixed_points, is_transitive_on};
pub use chain::CHAIN_SEED;
pub use coset::{coset_reps, double_coset_reps, CosetSpace, CosetTable};
pub use group::{Elements, GroupRecord, PermutationGroup};
pub use hom::Epimorphism;
pub use lattice::{all_subgroups, conjugacy_classes, ElementTable, SubgroupLattice};
pub use perm::Permutation;
pub use radical::{
    center, minimal_normal_subgroups, normal_subgroups, odd_radical, p_radical, quotient,
};
pub use subgroup::{
    centralizer, centralizer_of_element, commutator_subgroup, conjugator_within, derived_subgroup,
    intersection, is_conjugate_subgroups, normal_closure, normalizer, subgroup_closure,
};
pub use sylow::{is_p_group, is_prime, p_part, p_part_big, prime_factors, sylow};

/// Search and enumeration limits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    /// Candidate tests in a single conjugacy or orbit search.
    pub search: u64,
    /// Largest join `<H, H^g>` a pronormality test will search.
    pub join_order: u64,
    /// Largest group order for exhaustive audits and normal lattices.
    pub audit_order: u64,
    /// Largest index for coset enumeration.
    pub index: u64,
    /// Largest number of subgroups in a lattice enumeration.
    pub subgroups: u64,
    /// Largest abelian normal subgroup whose invariant subgroups are enumerated.
    pub abelian: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            search: 10_000_000,
            join_order: 10_000_000,
            audit_order: 100_000,
            index: 1_000_000,
            subgroups: 100_000,
            abelian: 4096,
        }
    }
}

impl Caps {
    pub fn validate(&self) -> crate::error::Result<()> {
        let all = [
            self.search,
            self.join_order,
            self.audit_order,
            self.index,
            self.subgroups,
            self.abelian,
        ];
        if all.contains(&0) {
            return Err(crate::error::GroupError::InvalidInput(
                "caps must be positive".into(),
            ));
        }
        Ok(())
    }
}
