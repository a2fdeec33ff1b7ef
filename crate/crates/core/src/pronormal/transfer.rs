use num_bigint::BigUint;
use serde::Serialize;

use super::{abelian_criterion, check_sub, is_pronormal, Method, Status, Verdict};
use crate::engine::{
    intersection, minimal_normal_subgroups, normalizer, quotient, Caps, PermutationGroup,
};
use crate::error::{GroupError, Result};

/// `|A N|` for subgroups `A`, `N` of a common group.
fn product_order(a: &PermutationGroup, n: &PermutationGroup, caps: &Caps) -> Result<BigUint> {
    let i = intersection(a, n, caps)?;
    Ok(a.order() * n.order() / i.order())
}

fn join(a: &PermutationGroup, b: &PermutationGroup) -> Result<PermutationGroup> {
    let mut gens = a.generators().to_vec();
    gens.extend(b.generators().iter().cloned());
    PermutationGroup::new(a.degree(), gens)
}

fn pronormal(g: &PermutationGroup, h: &PermutationGroup, caps: &Caps) -> Result<bool> {
    Ok(is_pronormal(g, h, caps)?.is_pronormal())
}

/// The three equivalent statements for `H ≤ A ⊴ G`.
#[derive(Clone, Debug, Serialize)]
pub struct FrattiniReport {
    /// `H` is pronormal in `G`.
    pub s1: bool,
    /// `H` is pronormal in `A` and `G = A N_G(H)`.
    pub s2: bool,
    /// `H` is pronormal in `A` and `H^A = H^G`.
    pub s3: bool,
    pub agree: bool,
}

pub fn frattini_equivalence(
    g: &PermutationGroup,
    a: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
) -> Result<FrattiniReport> {
    check_sub(g, a)?;
    check_sub(a, h)?;
    if !g.normalizes(a) {
        return Err(GroupError::NotNormal);
    }
    let s1 = pronormal(g, h, caps)?;
    let in_a = pronormal(a, h, caps)?;
    let n = normalizer(g, h, caps)?;
    let s2 = in_a && &product_order(a, &n, caps)? == g.order();
    // H^A ⊆ H^G, so equality is equality of the orbit lengths
    let na = intersection(a, &n, caps)?;
    let same_classes = a.order() * n.order() == g.order() * na.order();
    let s3 = in_a && same_classes;
    Ok(FrattiniReport {
        s1,
        s2,
        s3,
        agree: s1 == s2 && s2 == s3,
    })
}

/// Truth values around `H`, `N ⊴ G` and `G -> G/N`, and the implications
/// between them.
#[derive(Clone, Debug, Serialize)]
pub struct QuotReport {
    pub h_in_g: bool,
    /// `HN/N` pronormal in `G/N`.
    pub image_in_quotient: bool,
    /// `H` pronormal in `N_G(HN)`.
    pub h_in_normalizer_of_hn: bool,
    pub n_in_h: bool,
    /// Pronormality passes to the quotient.
    pub item1: bool,
    /// Pronormality is equivalent to the pair of conditions.
    pub item2: bool,
    /// With `N ≤ H`, pronormality lifts from the quotient (vacuous otherwise).
    pub item3: bool,
}

impl QuotReport {
    pub fn all_hold(&self) -> bool {
        self.item1 && self.item2 && self.item3
    }
}

pub fn quot_transfer(
    g: &PermutationGroup,
    n: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
) -> Result<QuotReport> {
    check_sub(g, n)?;
    check_sub(g, h)?;
    let q = quotient(g, n, caps)?;
    let h_in_g = pronormal(g, h, caps)?;
    let image = q.image(h)?;
    let image_in_quotient = pronormal(q.target(), &image, caps)?;
    let hn = join(h, n)?;
    let nhn = normalizer(g, &hn, caps)?;
    let h_in_normalizer_of_hn = pronormal(&nhn, h, caps)?;
    let n_in_h = h.contains_group(n);
    Ok(QuotReport {
        h_in_g,
        image_in_quotient,
        h_in_normalizer_of_hn,
        n_in_h,
        item1: !h_in_g || image_in_quotient,
        item2: h_in_g == (image_in_quotient && h_in_normalizer_of_hn),
        item3: !(n_in_h && image_in_quotient) || h_in_g,
    })
}

/// Largest number of nested reductions before falling back to the definition.
const MAX_DEPTH: usize = 32;

/// Decides pronormality by descending through a minimal normal subgroup `A`.
///
/// * `A ≤ H`: `H` is pronormal iff `H/A` is pronormal in `G/A`.
/// * `H ≤ A`: `H` is pronormal iff it is pronormal in `A` and `G = A N_G(H)`.
/// * otherwise: iff `HA/A` is pronormal in `G/A`, `N_G(HA) = A N_G(H)`, and `H`
///   is pronormal in `HA`. When `HA = G` and `A` is abelian the abelian
///   criterion decides.
///
/// Simple groups, groups past the caps, and the remaining `HA = G` cases use
/// the definition.
pub fn reduction_pronormal(
    g: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
) -> Result<Verdict> {
    check_sub(g, h)?;
    let mut trace = Vec::new();
    let status = reduce(g, h, caps, 0, &mut trace)?;
    Ok(Verdict::summary(
        status,
        Method::Reduction,
        trace.join("; "),
    ))
}

fn fallback(
    g: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
    trace: &mut Vec<String>,
    why: &str,
) -> Result<Status> {
    let v = is_pronormal(g, h, caps)?;
    trace.push(format!("definition in |G| = {} ({why})", g.order()));
    Ok(v.status)
}

fn reduce(
    g: &PermutationGroup,
    h: &PermutationGroup,
    caps: &Caps,
    depth: usize,
    trace: &mut Vec<String>,
) -> Result<Status> {
    if g.normalizes(h) {
        trace.push(format!("normal in |G| = {}", g.order()));
        return Ok(Status::Pronormal);
    }
    if depth >= MAX_DEPTH {
        return fallback(g, h, caps, trace, "depth");
    }
    let minimal = match minimal_normal_subgroups(g, caps) {
        Ok(m) => m,
        Err(e) if e.is_cap() => return fallback(g, h, caps, trace, "cap"),
        Err(e) => return Err(e),
    };
    let Some(a) = minimal.into_iter().find(|a| a.order() != g.order()) else {
        return fallback(g, h, caps, trace, "simple");
    };
    let attempt = step(g, h, &a, caps, depth, trace);
    match attempt {
        Err(e) if e.is_cap() => fallback(g, h, caps, trace, "cap"),
        other => other,
    }
}

fn step(
    g: &PermutationGroup,
    h: &PermutationGroup,
    a: &PermutationGroup,
    caps: &Caps,
    depth: usize,
    trace: &mut Vec<String>,
) -> Result<Status> {
    if h.contains_group(a) {
        trace.push(format!("|A| = {} in H: pass to G/A", a.order()));
        let q = quotient(g, a, caps)?;
        let image = q.image(h)?;
        return reduce(q.target(), &image, caps, depth + 1, trace);
    }
    if a.contains_group(h) {
        let n = normalizer(g, h, caps)?;
        if &product_order(a, &n, caps)? != g.order() {
            trace.push(format!("H in |A| = {}: G != A N_G(H)", a.order()));
            return Ok(Status::NotPronormal);
        }
        trace.push(format!("H in |A| = {}: G = A N_G(H), pass to A", a.order()));
        return reduce(a, h, caps, depth + 1, trace);
    }
    let ha = join(h, a)?;
    if ha.order() == g.order() {
        if a.is_abelian() && a.order_u64() <= caps.abelian {
            let out = abelian_criterion(g, a, h, caps)?;
            trace.push(format!("G = HA with abelian |A| = {}", a.order()));
            return Ok(out.verdict.status);
        }
        return fallback(g, h, caps, trace, "G = HA");
    }
    trace.push(format!(
        "|A| = {} meets H properly: check G/A, N_G(HA), HA",
        a.order()
    ));
    let q = quotient(g, a, caps)?;
    let image = q.image(h)?;
    if reduce(q.target(), &image, caps, depth + 1, trace)? == Status::NotPronormal {
        return Ok(Status::NotPronormal);
    }
    let n = normalizer(g, h, caps)?;
    let nha = normalizer(g, &ha, caps)?;
    if &product_order(a, &n, caps)? != nha.order() {
        trace.push("N_G(HA) != A N_G(H)".into());
        return Ok(Status::NotPronormal);
    }
    reduce(&ha, h, caps, depth + 1, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{diagonal_subgroup, direct_product, realize, GroupSpec};
    use crate::engine::{center, sylow, Permutation};

    fn v4() -> PermutationGroup {
        PermutationGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn frobenius_product() -> (PermutationGroup, PermutationGroup, PermutationGroup) {
        let f = realize(&GroupSpec::Frobenius73 {}).unwrap();
        let p = direct_product(&[f.clone(), f]).unwrap();
        let d = diagonal_subgroup(&p, "factor0.kernel", "factor1.kernel").unwrap();
        let mut gens = p.handle("factor0.kernel").unwrap().generators().to_vec();
        gens.extend(
            p.handle("factor1.kernel")
                .unwrap()
                .generators()
                .iter()
                .cloned(),
        );
        let l = PermutationGroup::new(p.group.degree(), gens).unwrap();
        (p.group, l, d)
    }

    #[test]
    fn frattini_on_sylow_of_normal_subgroup() {
        let caps = Caps::default();
        let s4 = PermutationGroup::symmetric(4);
        let a4 = PermutationGroup::alternating(4);
        let p3 = sylow(&a4, 3).unwrap();
        let r = frattini_equivalence(&s4, &a4, &p3, &caps).unwrap();
        assert!(r.s1 && r.s2 && r.s3 && r.agree);
    }

    #[test]
    fn frattini_on_diagonal() {
        let caps = Caps::default();
        let (g, l, d) = frobenius_product();
        let r = frattini_equivalence(&g, &l, &d, &caps).unwrap();
        assert!(!r.s1 && !r.s2 && !r.s3 && r.agree);
    }

    #[test]
    fn quot_on_quaternion_in_sl2_3() {
        let caps = Caps::default();
        let g = realize(&GroupSpec::Sl2 { q: 3 }).unwrap().group;
        let z = center(&g, &caps).unwrap();
        let q8 = sylow(&g, 2).unwrap();
        let r = quot_transfer(&g, &z, &q8, &caps).unwrap();
        assert!(r.n_in_h && r.image_in_quotient && r.h_in_g && r.all_hold());
    }

    #[test]
    fn quot_with_trivial_kernel_and_vacuous_item() {
        let caps = Caps::default();
        let s4 = PermutationGroup::symmetric(4);
        let t = PermutationGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1]]).unwrap()])
            .unwrap();
        let r = quot_transfer(&s4, &PermutationGroup::trivial(4), &t, &caps).unwrap();
        assert!(!r.h_in_g && !r.image_in_quotient && r.all_hold());
        let r = quot_transfer(&s4, &v4(), &t, &caps).unwrap();
        assert!(!r.h_in_g && r.item1 && r.all_hold());
    }

    #[test]
    fn reduction_examples() {
        let caps = Caps::default();
        let s4 = PermutationGroup::symmetric(4);
        let d8 = sylow(&s4, 2).unwrap();
        assert_eq!(
            reduction_pronormal(&s4, &d8, &caps).unwrap().status,
            Status::Pronormal
        );
        let (g, _, d) = frobenius_product();
        let v = reduction_pronormal(&g, &d, &caps).unwrap();
        assert_eq!(v.status, Status::NotPronormal);
        assert!(v.tested_set.contains("N_G(HA) != A N_G(H)"));
        let a5 = PermutationGroup::alternating(5);
        let k = PermutationGroup::new(
            5,
            vec![Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap()],
        )
        .unwrap();
        let v = reduction_pronormal(&a5, &k, &caps).unwrap();
        assert_eq!(v.status, Status::NotPronormal);
        assert!(v.tested_set.contains("simple"));
    }
}
