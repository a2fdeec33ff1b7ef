use std::collections::HashMap;

use num_bigint::BigUint;

use super::embed::direct_product;
use super::matrix::{
    general_linear, projective_permutation, projective_points, symplectic_group,
    vector_permutation, MatrixGroupSpec,
};
use super::spec::{GroupSpec, Radical};
use super::BuiltGroup;
use crate::engine::{
    center, is_prime, odd_radical, p_radical, quotient, Caps, Permutation, PermutationGroup,
};
use crate::error::{GroupError, Result};

/// Largest order realized by a regular action.
const MAX_REGULAR_ORDER: u64 = 100_000;

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn cycle_on(degree: usize, points: impl Iterator<Item = u32>) -> Permutation {
    let pts: Vec<u32> = points.collect();
    Permutation::from_cycles(degree, &[&pts]).expect("distinct points in range")
}

fn group_with_order(
    degree: usize,
    gens: Vec<Permutation>,
    order: &BigUint,
) -> Result<PermutationGroup> {
    let g = PermutationGroup::with_known_order(degree, gens, order)?;
    if g.order() != order {
        return Err(GroupError::InvalidInput(format!(
            "generators give order {} instead of {order}",
            g.order()
        )));
    }
    Ok(g)
}

/// Builds the group described by `spec`.
pub fn realize(spec: &GroupSpec) -> Result<BuiltGroup> {
    let mut built = match spec {
        GroupSpec::Sym(n) => symmetric(*n)?,
        GroupSpec::Alt(n) => alternating(*n)?,
        GroupSpec::Cyclic(n) => cyclic(*n)?,
        GroupSpec::Dihedral(n) => dihedral(*n)?,
        GroupSpec::ElemAbelian { p, k } => elementary_abelian(*p, *k)?,
        GroupSpec::Quaternion8 {} => quaternion8(),
        GroupSpec::Frobenius73 {} => frobenius73(),
        GroupSpec::Sl2 { q } => vector_action(&symplectic_group(1, *q)?)?,
        GroupSpec::Sp { n, q } => vector_action(&symplectic_group(*n, *q)?)?,
        GroupSpec::Psl2 { q } => projective_action(&symplectic_group(1, *q)?)?,
        GroupSpec::Psp { n, q } => projective_action(&symplectic_group(*n, *q)?)?,
        GroupSpec::Gl { d, q } => vector_action(&general_linear(*d, *q)?)?,
        GroupSpec::Product(parts) => {
            let factors = parts.iter().map(realize).collect::<Result<Vec<_>>>()?;
            direct_product(&factors)?
        }
        GroupSpec::Wreath { base, top_degree } => wreath(&realize(base)?, *top_degree)?,
        GroupSpec::Regular(inner) => regular(&realize(inner)?)?,
        GroupSpec::Quotient { group, radical } => quotient_of(&realize(group)?, radical)?,
    };
    built.spec = Some(spec.clone());
    Ok(built)
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(GroupError::InvalidInput(format!(
            "{what} must be at least 1"
        )));
    }
    Ok(())
}

fn symmetric(n: usize) -> Result<BuiltGroup> {
    positive(n, "degree")?;
    let mut b = BuiltGroup::plain(PermutationGroup::symmetric(n), None);
    if n >= 3 {
        let socle = match n {
            4 => klein_on_four(),
            _ => PermutationGroup::alternating(n),
        };
        b.add_handle("socle", socle);
    }
    Ok(b)
}

fn alternating(n: usize) -> Result<BuiltGroup> {
    positive(n, "degree")?;
    let mut b = BuiltGroup::plain(PermutationGroup::alternating(n), None);
    if n >= 3 {
        let socle = match n {
            4 => klein_on_four(),
            _ => PermutationGroup::alternating(n),
        };
        b.add_handle("socle", socle);
    }
    Ok(b)
}

fn klein_on_four() -> PermutationGroup {
    PermutationGroup::new(
        4,
        vec![
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ],
    )
    .unwrap()
}

fn cyclic(n: usize) -> Result<BuiltGroup> {
    positive(n, "order")?;
    let gens = if n >= 2 {
        vec![cycle_on(n, 0..n as u32)]
    } else {
        Vec::new()
    };
    Ok(BuiltGroup::plain(
        group_with_order(n, gens, &BigUint::from(n))?,
        None,
    ))
}

fn dihedral(n: usize) -> Result<BuiltGroup> {
    positive(n, "n")?;
    let (group, rotations) = match n {
        1 => {
            let t = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
            (
                PermutationGroup::new(2, vec![t])?,
                PermutationGroup::trivial(2),
            )
        }
        2 => {
            let k = klein_on_four();
            let r = PermutationGroup::new(4, vec![k.generators()[0].clone()])?;
            (k, r)
        }
        _ => {
            let r = cycle_on(n, 0..n as u32);
            let s = Permutation::from_images(
                (0..n as u32).map(|x| (n as u32 - x) % n as u32).collect(),
            )?;
            let g = group_with_order(n, vec![r.clone(), s], &BigUint::from(2 * n))?;
            (g, PermutationGroup::new(n, vec![r])?)
        }
    };
    let mut b = BuiltGroup::plain(group, None);
    b.add_handle("rotations", rotations);
    Ok(b)
}

fn elementary_abelian(p: u64, k: u32) -> Result<BuiltGroup> {
    if !is_prime(p) {
        return Err(GroupError::InvalidInput(format!("{p} is not prime")));
    }
    positive(k as usize, "rank")?;
    let p = p as usize;
    let degree = p * k as usize;
    let gens = (0..k as usize)
        .map(|i| cycle_on(degree, (i * p) as u32..((i + 1) * p) as u32))
        .collect();
    let order = BigUint::from(p).pow(k);
    Ok(BuiltGroup::plain(
        group_with_order(degree, gens, &order)?,
        None,
    ))
}

/// Right regular action of `Q_8` on its elements `±1, ±i, ±j, ±k`, numbered
/// `4*s + u` with sign bit `s` and unit `u` in `1, i, j, k` order.
fn quaternion8() -> BuiltGroup {
    // unit products: (sign, unit)
    const UNIT: [[(u32, u32); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mul = |x: u32, y: u32| {
        let (s, u) = UNIT[(x % 4) as usize][(y % 4) as usize];
        4 * ((x / 4 + y / 4 + s) % 2) + u
    };
    let right = |g: u32| Permutation::from_images((0..8).map(|x| mul(x, g)).collect()).unwrap();
    let group = group_with_order(8, vec![right(1), right(2)], &BigUint::from(8u32)).unwrap();
    let mut b = BuiltGroup::plain(group, None);
    b.add_handle("center", PermutationGroup::new(8, vec![right(4)]).unwrap());
    b
}

/// `C_7 ⋊ C_3` on `Z/7`: `x -> x + 1` and `x -> 2x`.
fn frobenius73() -> BuiltGroup {
    let a = Permutation::from_images((0..7).map(|x| (x + 1) % 7).collect()).unwrap();
    let m = Permutation::from_images((0..7).map(|x| (2 * x) % 7).collect()).unwrap();
    let group = group_with_order(7, vec![a.clone(), m.clone()], &BigUint::from(21u32)).unwrap();
    let mut b = BuiltGroup::plain(group, None);
    b.add_handle("kernel", PermutationGroup::new(7, vec![a]).unwrap());
    b.add_handle("complement", PermutationGroup::new(7, vec![m]).unwrap());
    b
}

/// Faithful action of a matrix group on the nonzero vectors. When the spec
/// carries an order, the permutation group is checked against it.
pub fn vector_action(spec: &MatrixGroupSpec) -> Result<BuiltGroup> {
    let gens = spec
        .generators
        .iter()
        .map(vector_permutation)
        .collect::<Result<Vec<_>>>()?;
    let degree = (spec.q as usize).pow(spec.dimension as u32) - 1;
    let group = match &spec.order {
        Some(order) => group_with_order(degree, gens, order)?,
        None => PermutationGroup::new(degree, gens)?,
    };
    let mut b = BuiltGroup::plain(group, None);
    if spec.q > 2 && spec.form.is_some() {
        let minus = super::matrix::Matrix::identity(spec.dimension, spec.q);
        let minus = super::matrix::Matrix {
            entries: minus
                .entries
                .iter()
                .map(|&e| (spec.q - e) % spec.q)
                .collect(),
            ..minus
        };
        let z = vector_permutation(&minus)?;
        b.add_handle("center", PermutationGroup::new(degree, vec![z])?);
    }
    Ok(b)
}

/// Alias of [`vector_action`] for matrix groups without a form.
pub fn matrix_group_action(spec: &MatrixGroupSpec) -> Result<BuiltGroup> {
    vector_action(spec)
}

/// Action on projective points. For symplectic specs over odd `q` the kernel is
/// `{±1}` and the expected order is halved.
pub fn projective_action(spec: &MatrixGroupSpec) -> Result<BuiltGroup> {
    let points = projective_points(spec.dimension, spec.q)?;
    let gens = spec
        .generators
        .iter()
        .map(|m| projective_permutation(m, &points))
        .collect::<Result<Vec<_>>>()?;
    let degree = points.len();
    let group = match (&spec.order, &spec.form) {
        (Some(order), Some(_)) => {
            let scalars = if spec.q > 2 { 2u32 } else { 1 };
            group_with_order(degree, gens, &(order / scalars))?
        }
        _ => PermutationGroup::new(degree, gens)?,
    };
    Ok(BuiltGroup::plain(group, None))
}

fn wreath(base: &BuiltGroup, t: usize) -> Result<BuiltGroup> {
    positive(t, "top degree")?;
    let d = base.group.degree();
    let degree = d * t;
    let block_perm = |images: &[usize]| {
        let mut img = vec![0u32; degree];
        for (i, &j) in images.iter().enumerate() {
            for x in 0..d {
                img[i * d + x] = (j * d + x) as u32;
            }
        }
        Permutation::from_images(img).unwrap()
    };
    let mut top_gens = Vec::new();
    if t >= 2 {
        let mut swap: Vec<usize> = (0..t).collect();
        swap.swap(0, 1);
        top_gens.push(block_perm(&swap));
    }
    if t >= 3 {
        let cycle: Vec<usize> = (0..t).map(|i| (i + 1) % t).collect();
        top_gens.push(block_perm(&cycle));
    }
    let copy = |i: usize, g: &Permutation| g.shifted(i * d, degree);
    let mut gens: Vec<Permutation> = base.group.generators().iter().map(|g| copy(0, g)).collect();
    gens.extend(top_gens.iter().cloned());
    let base_order = base.group.order().pow(t as u32);
    let group = group_with_order(degree, gens, &(&base_order * factorial(t)))?;
    let mut b = BuiltGroup::plain(group, None);
    let all_copies: Vec<Permutation> = (0..t)
        .flat_map(|i| base.group.generators().iter().map(move |g| copy(i, g)))
        .collect();
    b.add_handle("base", group_with_order(degree, all_copies, &base_order)?);
    b.add_handle("top", group_with_order(degree, top_gens, &factorial(t))?);
    for i in 0..t {
        let gens = base.group.generators().iter().map(|g| copy(i, g)).collect();
        b.add_handle(
            format!("block{i}"),
            group_with_order(degree, gens, base.group.order())?,
        );
    }
    Ok(b)
}

fn regular(inner: &BuiltGroup) -> Result<BuiltGroup> {
    let order = inner.group.order_u64();
    if order > MAX_REGULAR_ORDER {
        return Err(GroupError::cap("regular action order", MAX_REGULAR_ORDER));
    }
    let elements: Vec<Permutation> = inner.group.elements().collect();
    let index: HashMap<&Permutation, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i as u32))
        .collect();
    let n = elements.len();
    let act = |g: &Permutation| {
        Permutation::from_images(elements.iter().map(|e| index[&e.mul(g)]).collect()).unwrap()
    };
    let gens = inner.group.generators().iter().map(act).collect();
    let mut b = BuiltGroup::plain(group_with_order(n, gens, inner.group.order())?, None);
    for (name, h) in &inner.handles {
        let gens = h.generators().iter().map(act).collect();
        b.add_handle(name.clone(), group_with_order(n, gens, h.order())?);
    }
    Ok(b)
}

fn quotient_of(inner: &BuiltGroup, radical: &Radical) -> Result<BuiltGroup> {
    let caps = Caps::default();
    let g = &inner.group;
    let n = match radical {
        Radical::P(p) => p_radical(g, *p, &caps)?,
        Radical::Odd => odd_radical(g, &caps)?,
        Radical::Center => center(g, &caps)?,
    };
    let epi = quotient(g, &n, &caps)?;
    let mut b = BuiltGroup::plain(epi.target().clone(), None);
    for (name, h) in &inner.handles {
        b.add_handle(name.clone(), epi.image(h)?);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(spec: &str) -> u64 {
        realize(&GroupSpec::from_json(spec).unwrap())
            .unwrap()
            .group
            .order_u64()
    }

    #[test]
    fn wreath_layout_and_handles() {
        let b = realize(&GroupSpec::Wreath {
            base: Box::new(GroupSpec::Cyclic(3)),
            top_degree: 3,
        })
        .unwrap();
        assert_eq!(b.group.degree(), 9);
        assert_eq!(b.group.order_u64(), 162);
        let top = b.handle("top").unwrap();
        assert_eq!(top.order_u64(), 6);
        let base = b.handle("base").unwrap();
        assert_eq!(base.order_u64(), 27);
        assert!(base.is_normal_in(&b.group));
        // top permutes whole blocks
        for g in top.generators() {
            for p in 0..9u32 {
                assert_eq!(g.image(p) % 3, p % 3);
            }
        }
        assert!(crate::engine::intersection(base, top, &Caps::default())
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn named_groups() {
        assert_eq!(order(r#"{"frobenius73":{}}"#), 21);
        assert_eq!(order(r#"{"quaternion8":{}}"#), 8);
        assert_eq!(order(r#"{"dihedral":4}"#), 8);
        assert_eq!(order(r#"{"dihedral":2}"#), 4);
        assert_eq!(order(r#"{"elem_abelian":{"p":3,"k":3}}"#), 27);
        assert_eq!(order(r#"{"sl2":{"q":3}}"#), 24);
        assert_eq!(order(r#"{"sp":{"n":2,"q":3}}"#), 51_840);
        assert_eq!(order(r#"{"psl2":{"q":7}}"#), 168);
        assert_eq!(order(r#"{"psl2":{"q":13}}"#), 1092);
        assert_eq!(order(r#"{"psp":{"n":2,"q":3}}"#), 25_920);
        assert_eq!(order(r#"{"gl":{"d":3,"q":2}}"#), 168);
        assert_eq!(order(r#"{"gl":{"d":2,"q":3}}"#), 48);
        assert_eq!(
            order(r#"{"wreath":{"base":{"regular":{"quaternion8":{}}},"top_degree":3}}"#),
            3072
        );
        assert_eq!(
            order(r#"{"quotient":{"group":{"sl2":{"q":3}},"radical":{"p":2}}}"#),
            3
        );
        assert_eq!(
            order(r#"{"quotient":{"group":{"sl2":{"q":5}},"radical":"center"}}"#),
            60
        );
    }

    #[test]
    fn frobenius_handles() {
        let b = realize(&GroupSpec::Frobenius73 {}).unwrap();
        assert_eq!(b.group.degree(), 7);
        assert_eq!(b.handle("kernel").unwrap().order_u64(), 7);
        assert_eq!(b.handle("complement").unwrap().order_u64(), 3);
    }

    #[test]
    fn sl2_matches_brute_force_matrix_count() {
        // count 2x2 matrices over F_3 with determinant 1
        let mut count = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if (a * d + 9 - b * c) % 3 == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        let g = realize(&GroupSpec::Sl2 { q: 3 }).unwrap();
        assert_eq!(g.group.order_u64(), count);
        assert_eq!(g.group.degree(), 8);
    }

    #[test]
    fn realize_is_deterministic() {
        let s =
            GroupSpec::from_json(r#"{"wreath":{"base":{"sl2":{"q":3}},"top_degree":2}}"#).unwrap();
        let a = realize(&s).unwrap();
        let b = realize(&s).unwrap();
        assert_eq!(a.group.generators(), b.group.generators());
        assert_eq!(a.group.base(), b.group.base());
    }

    #[test]
    fn non_prime_field_rejected() {
        assert!(realize(&GroupSpec::Sp { n: 1, q: 4 }).is_err());
        assert!(realize(&GroupSpec::Sym(0)).is_err());
    }
}
