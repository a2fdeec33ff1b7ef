use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::chain::CHAIN_SEED;
use super::group::PermutationGroup;
use super::perm::Permutation;
use super::subgroup::normalizer;
use super::Caps;
use crate::error::{GroupError, Result};

/// Prime factorization by trial division, primes ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

/// Largest power of `p` dividing `n` (`n > 0`).
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn p_part_big(n: &BigUint, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let zero = BigUint::from(0u32);
    let mut n = n.clone();
    let mut out = BigUint::one();
    while &n % &p == zero {
        n /= &p;
        out *= &p;
    }
    out
}

/// `|G|` is a power of `p` (the trivial group counts).
pub fn is_p_group(g: &PermutationGroup, p: u64) -> bool {
    p_part_big(g.order(), p) == *g.order()
}

fn p_element(g: &Permutation, p: u64) -> Option<Permutation> {
    let o = g.order();
    if !o.is_multiple_of(p) {
        return None;
    }
    Some(g.pow(o / p_part(o, p)))
}

/// Tries to extend `current` by `y`; succeeds when `<current, y>` is a
/// strictly larger `p`-group.
fn try_grow(current: &PermutationGroup, y: &Permutation, p: u64) -> Option<PermutationGroup> {
    if current.contains(y) {
        return None;
    }
    let mut gens = current.generators().to_vec();
    gens.push(y.clone());
    let q = PermutationGroup::new(current.degree(), gens).ok()?;
    is_p_group(&q, p).then_some(q)
}

/// A Sylow `p`-subgroup of `g`.
///
/// Random `p`-elements are added while the result stays a `p`-group. When that
/// stalls, the search continues inside `N_G(P)`, where any `p`-element outside
/// `P` extends it.
pub fn sylow(g: &PermutationGroup, p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) {
        return Err(GroupError::InvalidInput(format!("{p} is not prime")));
    }
    let target = p_part_big(g.order(), p);
    let mut rng = ChaCha8Rng::seed_from_u64(CHAIN_SEED ^ p);
    let mut current = PermutationGroup::trivial(g.degree());
    let caps = Caps::default();
    while current.order() < &target {
        let mut grown = None;
        for _ in 0..64 {
            let Some(y) = p_element(&g.random_element(&mut rng), p) else {
                continue;
            };
            if let Some(q) = try_grow(&current, &y, p) {
                grown = Some(q);
                break;
            }
        }
        if grown.is_none() {
            let n = normalizer(g, &current, &caps)?;
            for _ in 0..256 {
                if let Some(y) = p_element(&n.random_element(&mut rng), p) {
                    if let Some(q) = try_grow(&current, &y, p) {
                        grown = Some(q);
                        break;
                    }
                }
            }
            if grown.is_none() {
                // Sylow's theorem guarantees such an element exists in N_G(P).
                let y = n
                    .elements()
                    .filter_map(|x| p_element(&x, p))
                    .find(|y| !current.contains(y))
                    .expect("normalizer of a non-Sylow p-subgroup contains a p-element outside it");
                grown = try_grow(&current, &y, p);
            }
        }
        current = grown.expect("extension of a p-subgroup by a normalizing p-element");
    }
    debug_assert_eq!(current.order().to_u64(), target.to_u64());
    Ok(current.with_parent(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(1), vec![]);
        assert_eq!(prime_factors(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_factors(97), vec![(97, 1)]);
        assert_eq!(p_part(360, 2), 8);
        assert_eq!(p_part(360, 7), 1);
    }

    #[test]
    fn sylow_of_symmetric_groups() {
        for n in 2..=7 {
            let s = PermutationGroup::symmetric(n);
            let order = s.order_u64();
            for &(p, _) in &prime_factors(order) {
                let q = sylow(&s, p).unwrap();
                assert_eq!(q.order_u64(), p_part(order, p));
                assert!(s.contains_group(&q));
            }
        }
    }
}
