//! Constructions of the groups used throughout the crate, with named
//! distinguished subgroups ("handles") and fixed domain layouts.
//!
//! Layouts are part of the contract: in a wreath product `A wr Sym(t)` block
//! `i` occupies points `[i*d, (i+1)*d)` where `d` is the degree of `A`; a direct
//! product places its factors on consecutive disjoint ranges in order.

mod embed;
mod matrix;
mod realize;
mod spec;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::engine::{Epimorphism, PermutationGroup};
use crate::error::{GroupError, Result};

pub use embed::{
    block_embedding, diagonal_subgroup, direct_product, symplectic_wreath_embedding,
    BlockEmbedding, WreathEmbedding,
};
pub use matrix::{
    general_linear, general_linear_order, point_vector, projective_permutation, projective_points,
    symplectic_form, symplectic_group, symplectic_order, transvection, vector_permutation,
    vector_point, Matrix, MatrixGroupSpec, MAX_VECTORS,
};
pub use realize::{matrix_group_action, projective_action, realize, vector_action};
pub use spec::{GroupSpec, Radical};

/// A constructed group with its distinguished subgroups.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub group: PermutationGroup,
    pub handles: BTreeMap<String, PermutationGroup>,
    pub spec: Option<GroupSpec>,
    /// `(offset, length)` of each factor's domain for direct products.
    pub factor_domains: Vec<(usize, usize)>,
}

/// Printable summary of a built group.
#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub degree: usize,
    pub order: String,
    pub generators: usize,
    pub handles: BTreeMap<String, String>,
}

impl BuiltGroup {
    pub(crate) fn plain(group: PermutationGroup, spec: Option<GroupSpec>) -> Self {
        BuiltGroup {
            group,
            handles: BTreeMap::new(),
            spec,
            factor_domains: Vec::new(),
        }
    }

    pub fn handle(&self, name: &str) -> Result<&PermutationGroup> {
        self.handles
            .get(name)
            .ok_or_else(|| GroupError::InvalidInput(format!("no handle named {name:?}")))
    }

    pub(crate) fn add_handle(&mut self, name: impl Into<String>, sub: PermutationGroup) {
        debug_assert!(self.group.contains_group(&sub));
        self.handles
            .insert(name.into(), sub.with_parent(&self.group));
    }

    /// Projection of a direct product onto factor `i`.
    pub fn projection(&self, i: usize) -> Result<Epimorphism> {
        let &(offset, len) = self
            .factor_domains
            .get(i)
            .ok_or_else(|| GroupError::InvalidInput(format!("no factor {i}")))?;
        Epimorphism::restriction(&self.group, offset, len)
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            degree: self.group.degree(),
            order: self.group.order().to_string(),
            generators: self.group.generators().len(),
            handles: self
                .handles
                .iter()
                .map(|(k, v)| (k.clone(), v.order().to_string()))
                .collect(),
        }
    }
}
