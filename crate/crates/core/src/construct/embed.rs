use num_bigint::BigUint;
use num_integer::Integer;

use super::matrix::{symplectic_group, symplectic_order, Matrix};
use super::realize::vector_action;
use super::spec::GroupSpec;
use super::{realize, BuiltGroup};
use crate::engine::{Epimorphism, Permutation, PermutationGroup};
use crate::error::{GroupError, Result};

/// Direct product acting on the disjoint union of the factor domains.
///
/// Handles: `factor{i}` for each embedded factor and `factor{i}.{name}` for the
/// factors' own handles.
pub fn direct_product(factors: &[BuiltGroup]) -> Result<BuiltGroup> {
    if factors.is_empty() {
        return Err(GroupError::InvalidInput("empty direct product".into()));
    }
    let degree: usize = factors.iter().map(|f| f.group.degree()).sum();
    let mut domains = Vec::with_capacity(factors.len());
    let mut offset = 0;
    for f in factors {
        domains.push((offset, f.group.degree()));
        offset += f.group.degree();
    }
    let embed = |i: usize, g: &PermutationGroup| -> Result<PermutationGroup> {
        let gens = g
            .generators()
            .iter()
            .map(|x| x.shifted(domains[i].0, degree))
            .collect();
        PermutationGroup::with_known_order(degree, gens, g.order())
    };
    let mut gens = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        gens.extend(embed(i, &f.group)?.generators().iter().cloned());
    }
    let order: BigUint = factors.iter().map(|f| f.group.order().clone()).product();
    let group = PermutationGroup::with_known_order(degree, gens, &order)?;
    debug_assert_eq!(group.order(), &order);
    let mut b = BuiltGroup::plain(group, None);
    b.factor_domains = domains.clone();
    for (i, f) in factors.iter().enumerate() {
        b.add_handle(format!("factor{i}"), embed(i, &f.group)?);
        for (name, h) in &f.handles {
            b.add_handle(format!("factor{i}.{name}"), embed(i, h)?);
        }
    }
    Ok(b)
}

/// `{(a_i, b_i)}`: the diagonal subgroup of two commuting handles whose
/// generators are paired index by index. The pairing must extend to an
/// isomorphism, which is verified.
pub fn diagonal_subgroup(
    product: &BuiltGroup,
    left: &str,
    right: &str,
) -> Result<PermutationGroup> {
    let a = product.handle(left)?;
    let b = product.handle(right)?;
    if a.generators().len() != b.generators().len() {
        return Err(GroupError::InvalidInput(
            "paired handles have different generator counts".into(),
        ));
    }
    let degree = product.group.degree();
    if a.generators().is_empty() {
        return Ok(PermutationGroup::trivial(degree).with_parent(&product.group));
    }
    let commute = a
        .generators()
        .iter()
        .all(|x| b.generators().iter().all(|y| x.mul(y) == y.mul(x)));
    if !commute {
        return Err(GroupError::InvalidInput(
            "paired handles do not commute".into(),
        ));
    }
    let pairing = Epimorphism::from_images(a, b.generators().to_vec())?;
    if !pairing.kernel().is_trivial() || pairing.target().order() != b.order() {
        return Err(GroupError::InvalidInput(
            "generator pairing is not an isomorphism".into(),
        ));
    }
    let gens: Vec<Permutation> = a
        .generators()
        .iter()
        .zip(b.generators())
        .map(|(x, y)| x.mul(y))
        .collect();
    Ok(PermutationGroup::with_known_order(degree, gens, a.order())?.with_parent(&product.group))
}

/// `Sp_{2m}(q) x Sp_{2k}(q)` as block-diagonal matrices in `Sp_{2(m+k)}(q)`.
#[derive(Clone, Debug)]
pub struct BlockEmbedding {
    pub ambient: BuiltGroup,
    pub image: PermutationGroup,
    pub index: BigUint,
    pub index_odd: bool,
}

pub fn block_embedding(m: usize, k: usize, q: u64) -> Result<BlockEmbedding> {
    if m == 0 || k == 0 {
        return Err(GroupError::Precondition(
            "both blocks must have positive rank".into(),
        ));
    }
    let n = m + k;
    let ambient = vector_action(&symplectic_group(n, q)?)?;
    let d = 2 * n;
    let mut mats: Vec<Matrix> = symplectic_group(m, q)?
        .generators
        .iter()
        .map(|g| g.embed(0, d))
        .collect();
    mats.extend(
        symplectic_group(k, q)?
            .generators
            .iter()
            .map(|g| g.embed(2 * m, d)),
    );
    let gens = mats
        .iter()
        .map(super::matrix::vector_permutation)
        .collect::<Result<Vec<_>>>()?;
    let order = symplectic_order(m, q) * symplectic_order(k, q);
    let image = PermutationGroup::with_known_order(ambient.group.degree(), gens, &order)?;
    if image.order() != &order || !ambient.group.contains_group(&image) {
        return Err(GroupError::InvalidInput("block embedding failed".into()));
    }
    let index = ambient.group.order() / image.order();
    let index_odd = index.is_odd();
    Ok(BlockEmbedding {
        image: image.with_parent(&ambient.group),
        ambient,
        index,
        index_odd,
    })
}

/// `Sp_{2m}(q) wr Sym(t)` inside `Sp_{2mt}(q)`: block copies of `Sp_{2m}(q)`
/// and permutations of the `t` coordinate blocks of size `2m`, together with
/// a verified isomorphism onto the abstract wreath product
/// `realize(Wreath(Sp(m, q), t))`.
#[derive(Clone, Debug)]
pub struct WreathEmbedding {
    pub ambient: BuiltGroup,
    pub image: PermutationGroup,
    pub abstract_group: BuiltGroup,
    /// From `image` onto `abstract_group.group`.
    pub isomorphism: Epimorphism,
    pub index: BigUint,
    pub index_odd: bool,
}

pub fn symplectic_wreath_embedding(m: usize, t: usize, q: u64) -> Result<WreathEmbedding> {
    if m == 0 || t == 0 {
        return Err(GroupError::Precondition("m and t must be positive".into()));
    }
    let ambient = vector_action(&symplectic_group(m * t, q)?)?;
    let abstract_group = realize(&GroupSpec::Wreath {
        base: Box::new(GroupSpec::Sp { n: m, q }),
        top_degree: t,
    })?;
    let l = wreath_image(m, t, q, &ambient)?;
    let isomorphism = Epimorphism::from_images(&l, abstract_group.group.generators().to_vec())?;
    if !isomorphism.kernel().is_trivial()
        || isomorphism.target().order() != abstract_group.group.order()
    {
        return Err(GroupError::InvalidInput(
            "block wreath image is not isomorphic to the abstract wreath product".into(),
        ));
    }
    let index = ambient.group.order() / l.order();
    let index_odd = index.is_odd();
    Ok(WreathEmbedding {
        image: l,
        ambient,
        abstract_group,
        isomorphism,
        index,
        index_odd,
    })
}

/// Generators in the same order as the abstract wreath product's: the block-0
/// copy of each `Sp_{2m}` generator, then the block transposition and cycle.
fn wreath_image(m: usize, t: usize, q: u64, ambient: &BuiltGroup) -> Result<PermutationGroup> {
    let d = 2 * m * t;
    let size = 2 * m;
    let block_perm = |images: &[usize]| {
        let mut mat = Matrix::identity(d, q);
        mat.entries.iter_mut().for_each(|e| *e = 0);
        for (i, &j) in images.iter().enumerate() {
            for x in 0..size {
                mat.entries[(i * size + x) * d + j * size + x] = 1;
            }
        }
        mat
    };
    let mut mats: Vec<Matrix> = symplectic_group(m, q)?
        .generators
        .iter()
        .map(|g| g.embed(0, d))
        .collect();
    if t >= 2 {
        let mut swap: Vec<usize> = (0..t).collect();
        swap.swap(0, 1);
        mats.push(block_perm(&swap));
    }
    if t >= 3 {
        mats.push(block_perm(&(0..t).map(|i| (i + 1) % t).collect::<Vec<_>>()));
    }
    let spec = super::matrix::MatrixGroupSpec {
        dimension: d,
        q,
        generators: mats,
        form: Some(super::matrix::symplectic_form(m * t, q)),
        order: None,
    };
    spec.validate()?;
    let gens = spec
        .generators
        .iter()
        .map(super::matrix::vector_permutation)
        .collect::<Result<Vec<_>>>()?;
    // the generated group lies in the block-monomial group of this order
    let order = symplectic_order(m, q).pow(t as u32)
        * (1..=t as u64).map(BigUint::from).product::<BigUint>();
    let l = PermutationGroup::with_known_order(ambient.group.degree(), gens, &order)?;
    if !ambient.group.contains_group(&l) {
        return Err(GroupError::InvalidInput(
            "wreath image escapes the ambient group".into(),
        ));
    }
    Ok(l.with_parent(&ambient.group))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_product_and_diagonal() {
        let f = realize(&GroupSpec::Frobenius73 {}).unwrap();
        let p = direct_product(&[f.clone(), f]).unwrap();
        assert_eq!(p.group.degree(), 14);
        assert_eq!(p.group.order_u64(), 441);
        let d = diagonal_subgroup(&p, "factor0.kernel", "factor1.kernel").unwrap();
        assert_eq!(d.order_u64(), 7);
        let pi = p.projection(1).unwrap();
        assert_eq!(pi.kernel().order_u64(), 21);
        assert!(diagonal_subgroup(&p, "factor0.kernel", "factor1.complement").is_err());
    }

    #[test]
    fn diagonal_of_sl2_squared() {
        let s = realize(&GroupSpec::Sl2 { q: 3 }).unwrap();
        let p = direct_product(&[s.clone(), s]).unwrap();
        assert_eq!(p.group.order_u64(), 576);
        let d = diagonal_subgroup(&p, "factor0", "factor1").unwrap();
        assert_eq!(d.order_u64(), 24);
    }

    #[test]
    fn sp2_times_sp2_in_sp4() {
        let e = block_embedding(1, 1, 3).unwrap();
        assert_eq!(e.image.order_u64(), 576);
        assert_eq!(e.index, BigUint::from(90u32));
        assert!(!e.index_odd);
        assert!(block_embedding(2, 0, 3).is_err());
    }

    #[test]
    fn degenerate_wreath_embedding_is_the_whole_group() {
        let w = symplectic_wreath_embedding(1, 1, 3).unwrap();
        assert_eq!(w.image.order_u64(), 24);
        assert_eq!(w.index, BigUint::from(1u32));
    }
}
