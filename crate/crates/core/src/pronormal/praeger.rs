use num_bigint::BigUint;
use serde::Serialize;

use super::{check_sub, is_pronormal};
use crate::construct::general_linear_order;
use crate::engine::{fixed_points, Caps, PermutationGroup};
use crate::error::{GroupError, Result};

/// Which of the known groups realizes the extremal fixed-point count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PraegerCase {
    /// `G` contains `Alt(n)`.
    ContainsAlternating,
    /// `G` has the order of `GL_d(2)` on `n = 2^d - 1` points and `K` the
    /// order of a hyperplane's pointwise stabilizer.
    LinearHyperplane,
    /// Neither description applies.
    Unexplained,
}

/// Fixed points of a nontrivial pronormal subgroup in a transitive action.
#[derive(Clone, Debug, Serialize)]
pub struct PraegerReport {
    pub n: usize,
    pub f: usize,
    /// `f ≤ (n - 1) / 2`.
    pub bound_holds: bool,
    /// `2f = n - 1`.
    pub equality: bool,
    /// `K` is transitive on the points it moves (reported at equality).
    pub support_transitive: Option<bool>,
    pub case: Option<PraegerCase>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

pub fn praeger_audit(
    g: &PermutationGroup,
    k: &PermutationGroup,
    caps: &Caps,
) -> Result<PraegerReport> {
    check_sub(g, k)?;
    if !g.is_transitive() {
        return Err(GroupError::Precondition("action is not transitive".into()));
    }
    if k.is_trivial() {
        return Err(GroupError::Precondition("K is trivial".into()));
    }
    if !is_pronormal(g, k, caps)?.is_pronormal() {
        return Err(GroupError::Precondition("K is not pronormal".into()));
    }
    let n = g.degree();
    let fixed = fixed_points(k);
    let f = fixed.len();
    let equality = 2 * f + 1 == n;
    let (support_transitive, case) = if equality {
        let support: Vec<u32> = (0..n as u32).filter(|p| !fixed.contains(p)).collect();
        let transitive = k.orbit(support[0]).len() == support.len();
        let case = if g.order() * 2u32 >= factorial(n) {
            PraegerCase::ContainsAlternating
        } else if (n + 1).is_power_of_two() {
            let d = (n + 1).trailing_zeros() as usize;
            let linear = g.order() == &general_linear_order(d, 2)
                && k.order() == &(BigUint::from(1u32) << (d - 1));
            if linear {
                PraegerCase::LinearHyperplane
            } else {
                PraegerCase::Unexplained
            }
        } else {
            PraegerCase::Unexplained
        };
        (Some(transitive), Some(case))
    } else {
        (None, None)
    };
    Ok(PraegerReport {
        n,
        f,
        bound_holds: 2 * f < n,
        equality,
        support_transitive,
        case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{realize, GroupSpec};
    use crate::engine::{all_subgroups, Permutation};

    #[test]
    fn three_cycle_in_alt5() {
        let caps = Caps::default();
        let a5 = PermutationGroup::alternating(5);
        let k = PermutationGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap()])
            .unwrap();
        let r = praeger_audit(&a5, &k, &caps).unwrap();
        assert_eq!((r.n, r.f), (5, 2));
        assert!(r.bound_holds && r.equality);
        assert_eq!(r.case, Some(PraegerCase::ContainsAlternating));
        assert_eq!(r.support_transitive, Some(true));
    }

    #[test]
    fn hyperplane_stabilizer_in_gl32() {
        let caps = Caps::default();
        let g = realize(&GroupSpec::Gl { d: 3, q: 2 }).unwrap().group;
        assert_eq!(g.degree(), 7);
        let lattice = all_subgroups(&g, &caps).unwrap();
        // order-4 subgroups fixing exactly three points
        let k = (0..lattice.len())
            .map(|i| lattice.group(i))
            .find(|k| k.order_u64() == 4 && fixed_points(k).len() == 3 && k.is_abelian())
            .unwrap();
        let r = praeger_audit(&g, &k, &caps).unwrap();
        assert_eq!((r.n, r.f), (7, 3));
        assert_eq!(r.case, Some(PraegerCase::LinearHyperplane));
    }

    #[test]
    fn whole_group_and_non_pronormal() {
        let caps = Caps::default();
        let s4 = PermutationGroup::symmetric(4);
        let r = praeger_audit(&s4, &s4, &caps).unwrap();
        assert_eq!(r.f, 0);
        assert!(r.bound_holds);
        let t = PermutationGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1]]).unwrap()])
            .unwrap();
        assert!(matches!(
            praeger_audit(&s4, &t, &caps),
            Err(GroupError::Precondition(_))
        ));
    }
}
