use serde::Serialize;

use super::{check_sub, is_pronormal};
use crate::engine::{
    all_subgroups, fixed_points, is_transitive_on, normalizer, Caps, CosetTable, Permutation,
    PermutationGroup,
};
use crate::error::{GroupError, Result};

/// Whether `N_G(H)` is transitive on the fixed points of `H`, for a transitive
/// permutation group `G`. An empty fixed-point set counts as transitive.
pub fn hall_fixpoint_criterion(
    g: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
) -> Result<bool> {
    check_sub(g, h)?;
    if !g.is_transitive() {
        return Err(GroupError::Precondition("action is not transitive".into()));
    }
    let n = normalizer(g, h, caps)?;
    is_transitive_on(&n, &fixed_points(h))
}

/// One subgroup class in a [`HallAudit`].
#[derive(Clone, Debug, Serialize)]
pub struct HallClass {
    pub order: u64,
    pub pronormal: bool,
    /// The fixed-point criterion holds in every transitive action.
    pub criterion: bool,
    /// Order of the point stabilizer of the first action where it fails.
    pub failing_stabilizer_order: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HallAudit {
    pub group_order: u64,
    pub actions: usize,
    pub classes: Vec<HallClass>,
    pub mismatches: usize,
}

/// Transitivity of the group generated by `n_images` on the points fixed by
/// every element of `h_images`.
fn criterion_in_action(h_images: &[Permutation], n_images: &[Permutation], degree: usize) -> bool {
    let fixed: Vec<u32> = (0..degree as u32)
        .filter(|&p| h_images.iter().all(|x| x.image(p) == p))
        .collect();
    let Some(&first) = fixed.first() else {
        return true;
    };
    let mut seen = vec![false; degree];
    seen[first as usize] = true;
    let mut stack = vec![first];
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for x in n_images {
            let q = x.image(p) as usize;
            if !seen[q] {
                seen[q] = true;
                count += 1;
                stack.push(q as u32);
            }
        }
    }
    count == fixed.len()
}

/// Compares pronormality with the fixed-point criterion over every transitive
/// action of `g`, for one subgroup per conjugacy class.
///
/// Transitive actions are, up to equivalence, the actions on right cosets of
/// the subgroup class representatives. The normalizer acting is `N_G(H)`
/// itself, mapped into each action.
pub fn hall_equivalence_audit(g: &PermutationGroup, caps: &Caps) -> Result<HallAudit> {
    if g.order_u64() > caps.audit_order {
        return Err(GroupError::cap("audit group order", caps.audit_order));
    }
    let lattice = all_subgroups(g, caps)?;
    let reps: Vec<PermutationGroup> = lattice
        .class_reps()
        .into_iter()
        .map(|i| lattice.group(i))
        .collect();
    let tables = reps
        .iter()
        .map(|k| CosetTable::new(g, k, caps))
        .collect::<Result<Vec<_>>>()?;
    let mut classes = Vec::new();
    for h in &reps {
        let pronormal = is_pronormal(g, h, caps)?.is_pronormal();
        let n = normalizer(g, h, caps)?;
        let mut failing = None;
        for (k, table) in reps.iter().zip(&tables) {
            let h_images: Vec<Permutation> =
                h.generators().iter().map(|x| table.action(x)).collect();
            let n_images: Vec<Permutation> =
                n.generators().iter().map(|x| table.action(x)).collect();
            if !criterion_in_action(&h_images, &n_images, table.len()) {
                failing = Some(k.order_u64());
                break;
            }
        }
        classes.push(HallClass {
            order: h.order_u64(),
            pronormal,
            criterion: failing.is_none(),
            failing_stabilizer_order: failing,
        });
    }
    let mismatches = classes
        .iter()
        .filter(|c| c.pronormal != c.criterion)
        .count();
    Ok(HallAudit {
        group_order: g.order_u64(),
        actions: reps.len(),
        classes,
        mismatches,
    })
}
