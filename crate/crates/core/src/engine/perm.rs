//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! Products are read left to right: `p.compose(&q)` maps `x` to `q(p(x))`.
//! Conjugation follows the same convention, `h^x = x^-1 h x`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection on `[0, images.len())`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {x} repeated"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let a_idx = a as usize;
                if a_idx >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "cycle point {a} out of range for degree {degree}"
                    )));
                }
                if touched[a_idx] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {a} appears in two cycles"
                    )));
                }
                touched[a_idx] = true;
                images[a_idx] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked product, `self` then `other`.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x^-1 self x`.
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (p, &hp) in self.images.iter().enumerate() {
            out[x.images[p] as usize] = x.images[hp as usize];
        }
        Permutation { images: out }
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Element order; saturates at `u64::MAX`.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            let len = c.len() as u64;
            let g = acc.gcd(&len);
            (acc / g).saturating_mul(len)
        })
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.moved_points().next()
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Restriction to the points `[offset, offset + len)`, assumed invariant.
    pub fn restrict(&self, offset: usize, len: usize) -> Permutation {
        Permutation {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&x| x - offset as u32)
                .collect(),
        }
    }

    /// Embeds into a larger degree, acting on `[offset, offset + self.degree())`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u32;
        }
        Permutation { images }
    }

    /// Cheap 64-bit fingerprint (FNV-1a over the image array).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &x in &self.images {
            h ^= x as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        // final avalanche so that sums of fingerprints stay well mixed
        h ^= h >> 33;
        h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
        h ^= h >> 33;
        h
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = GroupError;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn composition_is_left_to_right() {
        let p = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let q = Permutation::from_images(vec![0, 2, 1]).unwrap();
        assert_eq!(p.compose(&q).unwrap().images(), &[2, 0, 1]);
    }

    #[test]
    fn identity_is_neutral() {
        let p = Permutation::from_cycles(5, &[&[0, 3, 4]]).unwrap();
        let e = Permutation::identity(5);
        assert_eq!(e.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&e).unwrap(), p);
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(
            p.compose(&q),
            Err(GroupError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn conjugation_matches_definition() {
        let h = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let x = Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let direct = x.inverse().mul(&h).mul(&x);
        assert_eq!(h.conjugate(&x), direct);
        // (0 1)^x = (0^x 1^x) = (0 2)
        assert_eq!(
            h.conjugate(&x),
            Permutation::from_cycles(4, &[&[0, 2]]).unwrap()
        );
    }

    #[test]
    fn order_and_cycles() {
        let p = Permutation::from_cycles(7, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.pow(6), Permutation::identity(7));
        assert_eq!(p.to_string(), "(0 1)(2 3 4)");
        assert!(!p.is_even());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn inverse_cancels(p in perm_strategy(14)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }

        #[test]
        fn composition_associates(p in perm_strategy(9), q in perm_strategy(9), r in perm_strategy(9)) {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        }

        #[test]
        fn serde_round_trip(p in perm_strategy(11)) {
            let s = serde_json::to_string(&p).unwrap();
            let back: Permutation = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
