use serde::Serialize;

use super::{check_sub, is_pronormal};
use crate::engine::{intersection, normalizer, quotient, sylow, Caps, PermutationGroup};
use crate::error::{GroupError, Result};
use crate::oracle::all_odd_index_pronormal;

/// Both sides of the extension criterion for `A ⊴ G`, or the hypothesis that
/// failed.
#[derive(Clone, Debug, Serialize)]
pub struct CritExtenReport {
    /// Hypothesis that does not hold; the sides are then not evaluated.
    pub skipped: Option<String>,
    /// Odd-index subgroups are pronormal in `G`.
    pub in_g: Option<bool>,
    /// Odd-index subgroups are pronormal in `N_G(T)/T`.
    pub in_section: Option<bool>,
    pub agree: Option<bool>,
}

impl CritExtenReport {
    fn skipped(why: impl Into<String>) -> Self {
        CritExtenReport {
            skipped: Some(why.into()),
            in_g: None,
            in_section: None,
            agree: None,
        }
    }
}

fn all_odd(g: &PermutationGroup, caps: &Caps) -> Result<bool> {
    Ok(all_odd_index_pronormal(g, caps)?.all_pronormal)
}

/// Odd-index pronormality in `G` against the same in `N_G(T)/T`, `T` a Sylow
/// 2-subgroup of `A`, under the hypotheses that odd-index subgroups of `A`
/// are pronormal and Sylow 2-subgroups of `G/A` are self-normalizing.
pub fn critexten_check(
    g: &PermutationGroup,
    a: &PermutationGroup,
    caps: &Caps,
) -> Result<CritExtenReport> {
    check_sub(g, a)?;
    if !g.normalizes(a) {
        return Err(GroupError::NotNormal);
    }
    if !all_odd(a, caps)? {
        return Ok(CritExtenReport::skipped(
            "A has a non-pronormal subgroup of odd index",
        ));
    }
    let q = quotient(g, a, caps)?;
    let s = sylow(q.target(), 2)?;
    if normalizer(q.target(), &s, caps)?.order() != s.order() {
        return Ok(CritExtenReport::skipped(
            "Sylow 2-subgroups of G/A are not self-normalizing",
        ));
    }
    let t = sylow(a, 2)?;
    let nt = normalizer(g, &t, caps)?;
    let section = quotient(&nt, &t, caps)?;
    let in_g = all_odd(g, caps)?;
    let in_section = all_odd(section.target(), caps)?;
    Ok(CritExtenReport {
        skipped: None,
        in_g: Some(in_g),
        in_section: Some(in_section),
        agree: Some(in_g == in_section),
    })
}

/// Statement (1) of the generalized extension criterion for one `H`.
#[derive(Clone, Debug, Serialize)]
pub struct CritExtenExtReport {
    pub skipped: Option<String>,
    /// `H` is pronormal in `G`.
    pub pronormal: Option<bool>,
    /// `N_H(T)/Z` is pronormal in `N_H(T) N_Y(T) / Z`.
    pub section_pronormal: Option<bool>,
    /// The image of `N_G(H)` in `G/A` is the normalizer of the image of `H`.
    pub normalizer_maps_onto: Option<bool>,
    pub agree: Option<bool>,
}

impl CritExtenExtReport {
    fn skipped(why: impl Into<String>) -> Self {
        CritExtenExtReport {
            skipped: Some(why.into()),
            pronormal: None,
            section_pronormal: None,
            normalizer_maps_onto: None,
            agree: None,
        }
    }
}

/// Checks, for `H` containing a Sylow 2-subgroup `S` of `G` and `T = A ∩ S`,
/// that `H` is pronormal exactly when `N_H(T)/Z` is pronormal in
/// `N_H(T) N_Y(T) / Z` and `N_G(H)` maps onto `N_{G/A}(HA/A)`, where
/// `Y = N_A(H ∩ A)` and `Z = N_{H ∩ A}(T)`.
///
/// `H` must contain a Sylow 2-subgroup of `G`; conjugating `H` to arrange this
/// is left to the caller.
pub fn critexten_ext_check(
    g: &PermutationGroup,
    a: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
) -> Result<CritExtenExtReport> {
    check_sub(g, a)?;
    check_sub(g, h)?;
    if !g.normalizes(a) {
        return Err(GroupError::NotNormal);
    }
    let s = sylow(h, 2)?;
    if s.order() != &crate::engine::p_part_big(g.order(), 2) {
        return Err(GroupError::Precondition(
            "H does not contain a Sylow 2-subgroup of G".into(),
        ));
    }
    if !all_odd(a, caps)? {
        return Ok(CritExtenExtReport::skipped(
            "A has a non-pronormal subgroup of odd index",
        ));
    }
    let q = quotient(g, a, caps)?;
    if !all_odd(q.target(), caps)? {
        return Ok(CritExtenExtReport::skipped(
            "G/A has a non-pronormal subgroup of odd index",
        ));
    }
    let t = intersection(a, &s, caps)?;
    let ha = intersection(h, a, caps)?;
    let y = normalizer(a, &ha, caps)?;
    let z = normalizer(&ha, &t, caps)?;
    let nht = normalizer(h, &t, caps)?;
    let nyt = normalizer(&y, &t, caps)?;
    let mut gens = nht.generators().to_vec();
    gens.extend(nyt.generators().iter().cloned());
    let product = PermutationGroup::new(g.degree(), gens)?;
    if !product.normalizes(&z) {
        return Err(GroupError::Precondition(
            "Z is not normal in N_H(T) N_Y(T)".into(),
        ));
    }
    let section = quotient(&product, &z, caps)?;
    let section_pronormal =
        is_pronormal(section.target(), &section.image(&nht)?, caps)?.is_pronormal();
    let image = q.image(h)?;
    let ngh = normalizer(g, h, caps)?;
    let maps_onto = q.image(&ngh)?.order() == normalizer(q.target(), &image, caps)?.order();
    let pronormal = is_pronormal(g, h, caps)?.is_pronormal();
    Ok(CritExtenExtReport {
        skipped: None,
        pronormal: Some(pronormal),
        section_pronormal: Some(section_pronormal),
        normalizer_maps_onto: Some(maps_onto),
        agree: Some(pronormal == (section_pronormal && maps_onto)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{realize, GroupSpec};
    use crate::engine::Permutation;
    use crate::oracle::odd_index_subgroups;

    #[test]
    fn symmetric_four_over_klein() {
        let caps = Caps::default();
        let s4 = PermutationGroup::symmetric(4);
        let v4 = PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let r = critexten_check(&s4, &v4, &caps).unwrap();
        assert_eq!(r.skipped, None);
        assert_eq!(r.in_g, Some(true));
        assert_eq!(r.in_section, Some(true));
        for h in odd_index_subgroups(&s4, &caps).unwrap().subgroups {
            let r = critexten_ext_check(&s4, &v4, &h.group, &caps).unwrap();
            assert_eq!(r.agree, Some(true));
        }
    }

    #[test]
    fn sl2_3_over_quaternion_is_skipped() {
        let caps = Caps::default();
        let g = realize(&GroupSpec::Sl2 { q: 3 }).unwrap().group;
        let q8 = sylow(&g, 2).unwrap();
        let r = critexten_check(&g, &q8, &caps).unwrap();
        assert!(r.skipped.is_some());
        assert_eq!(r.agree, None);
    }
}
