use super::group::PermutationGroup;
use crate::error::{GroupError, Result};

/// Points fixed by every element of `h`.
pub fn fixed_points(h: &PermutationGroup) -> Vec<u32> {
    (0..h.degree() as u32)
        .filter(|&p| h.generators().iter().all(|g| g.image(p) == p))
        .collect()
}

/// Whether `k` acts transitively on the `k`-invariant set `points`.
/// The empty set counts as a single (empty) orbit.
pub fn is_transitive_on(k: &PermutationGroup, points: &[u32]) -> Result<bool> {
    let Some(&first) = points.first() else {
        return Ok(true);
    };
    let mut inside = vec![false; k.degree()];
    for &p in points {
        if p as usize >= k.degree() {
            return Err(GroupError::InvalidInput(format!("point {p} out of range")));
        }
        inside[p as usize] = true;
    }
    let invariant = k
        .generators()
        .iter()
        .all(|g| points.iter().all(|&p| inside[g.image(p) as usize]));
    if !invariant {
        return Err(GroupError::Precondition(
            "point set is not invariant under the group".into(),
        ));
    }
    let orbit = k.orbit(first);
    let mut distinct = points.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(orbit.len() == distinct.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Permutation;

    #[test]
    fn fixed_points_and_transitivity() {
        let h = PermutationGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1]]).unwrap()])
            .unwrap();
        assert_eq!(fixed_points(&h), vec![2, 3, 4]);
        let k = PermutationGroup::new(5, vec![Permutation::from_cycles(5, &[&[2, 3, 4]]).unwrap()])
            .unwrap();
        assert!(is_transitive_on(&k, &[2, 3, 4]).unwrap());
        assert!(is_transitive_on(&k, &[]).unwrap());
        assert!(!is_transitive_on(&h, &[0, 1, 2]).unwrap());
        assert!(is_transitive_on(&k, &[1, 2]).is_err());
    }
}
