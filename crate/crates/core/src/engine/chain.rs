//! Stabilizer chains built by a seeded random Schreier-Sims pass followed by a
//! deterministic Schreier-generator verification.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;

const NONE: u32 = u32::MAX;

/// Seed for every chain construction. Fixed so that bases and transversals
/// are reproducible across runs.
pub const CHAIN_SEED: u64 = 0x005e_ed0f_c4a1_2b5d;

/// Consecutive trivially-sifting random elements before the random phase stops.
const RANDOM_STREAK: usize = 24;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: u32,
    pub(crate) gens: Vec<usize>,
    pub(crate) orbit: Vec<u32>,
    slot: Vec<u32>,
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
        }
    }

    /// Transversal element mapping the base point to `point`.
    #[inline]
    pub(crate) fn rep(&self, point: u32) -> Option<&Permutation> {
        match self.slot[point as usize] {
            NONE => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    #[inline]
    pub(crate) fn inv_rep(&self, point: u32) -> Option<&Permutation> {
        match self.slot[point as usize] {
            NONE => None,
            s => Some(&self.inv_reps[s as usize]),
        }
    }

    fn try_extend(&mut self, from: u32, gen: &Permutation) {
        let to = gen.image(from);
        if self.slot[to as usize] == NONE {
            let rep = self.reps[self.slot[from as usize] as usize].mul(gen);
            self.slot[to as usize] = self.orbit.len() as u32;
            self.orbit.push(to);
            self.inv_reps.push(rep.inverse());
            self.reps.push(rep);
        }
    }

    fn add_gen(&mut self, strong: &[Permutation], k: usize) {
        self.gens.push(k);
        let old_len = self.orbit.len();
        for i in 0..old_len {
            let p = self.orbit[i];
            self.try_extend(p, &strong[k]);
        }
        let mut i = old_len;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for gi in 0..self.gens.len() {
                let g = self.gens[gi];
                self.try_extend(p, &strong[g]);
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub(crate) degree: usize,
    pub(crate) strong: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    fn empty(degree: usize, prefix: &[u32]) -> Self {
        StabChain {
            degree,
            strong: Vec::new(),
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        }
    }

    /// Builds a complete chain for `<gens>`.
    ///
    /// `prefix` points are placed first in the base; further base points are the
    /// smallest point moved by the element that forces a new level. When
    /// `known_order` is given the construction stops as soon as the chain
    /// reaches it (a partial chain never overestimates the group order).
    pub(crate) fn build(
        degree: usize,
        gens: &[Permutation],
        prefix: &[u32],
        known_order: Option<&BigUint>,
    ) -> Self {
        let mut chain = StabChain::empty(degree, prefix);
        let gens: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
        for g in &gens {
            chain.absorb(g);
        }
        if gens.is_empty() {
            return chain;
        }
        let reached = |c: &StabChain| known_order.is_some_and(|k| &c.order() == k);
        if reached(&chain) {
            return chain;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(CHAIN_SEED);
        let mut pr = ProductReplacement::new(&gens, &mut rng);
        let mut streak = 0;
        while streak < RANDOM_STREAK {
            let r = pr.next(&mut rng);
            if chain.absorb(&r) {
                streak = 0;
                if reached(&chain) {
                    return chain;
                }
            } else {
                streak += 1;
            }
        }
        if reached(&chain) {
            return chain;
        }
        chain.verify_and_complete();
        chain
    }

    /// Builds a chain when the order is known and random elements of the target
    /// group can be sampled directly. Falls back to full verification.
    pub(crate) fn from_random_elements<F>(
        degree: usize,
        gens: &[Permutation],
        known_order: &BigUint,
        max_tries: usize,
        mut sample: F,
    ) -> Self
    where
        F: FnMut() -> Permutation,
    {
        let mut chain = StabChain::empty(degree, &[]);
        for g in gens {
            chain.absorb(g);
        }
        let mut tries = 0;
        while &chain.order() != known_order && tries < max_tries {
            let s = sample();
            chain.absorb(&s);
            tries += 1;
        }
        if &chain.order() != known_order {
            chain.verify_and_complete();
        }
        chain
    }

    /// Sifts `g` and adds the residue as a strong generator when it is not the
    /// identity. Returns whether the chain grew.
    pub(crate) fn absorb(&mut self, g: &Permutation) -> bool {
        let (residue, depth) = self.sift(g, 0);
        if residue.is_identity() {
            return false;
        }
        self.add_strong(residue, depth);
        true
    }

    /// Sifts from level `from`. Returns the residue and the level at which
    /// sifting stopped (`levels.len()` when every level was passed).
    pub(crate) fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.base);
            if b == level.base {
                continue;
            }
            match level.inv_rep(b) {
                Some(inv) => g = g.mul(inv),
                None => return (g, i),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        let mut g = g.clone();
        for level in &self.levels {
            let b = g.image(level.base);
            if b == level.base {
                continue;
            }
            match level.inv_rep(b) {
                Some(inv) => g = g.mul(inv),
                None => return false,
            }
        }
        g.is_identity()
    }

    fn add_strong(&mut self, residue: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let b = residue
                .smallest_moved_point()
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        let k = self.strong.len();
        self.strong.push(residue);
        for level in self.levels.iter_mut().take(depth + 1) {
            level.add_gen(&self.strong, k);
        }
    }

    fn verify_and_complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            match self.first_failing_schreier(i) {
                Some((residue, depth)) => {
                    self.add_strong(residue, depth);
                    i = depth;
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
    }

    fn first_failing_schreier(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        if level.orbit.len() == 1 {
            return None;
        }
        for &b in &level.orbit {
            let ub = level.rep(b).unwrap();
            for &k in &level.gens {
                let s = &self.strong[k];
                let c = s.image(b);
                let sch = ub.mul(s).mul(level.inv_rep(c).unwrap());
                if sch.is_identity() {
                    continue;
                }
                let (residue, depth) = self.sift(&sch, i + 1);
                if !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
        }
        None
    }

    /// The chain of `x^-1 G x`.
    pub(crate) fn conjugated(&self, x: &Permutation) -> StabChain {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let mut slot = vec![NONE; self.degree];
                for (i, &p) in l.orbit.iter().enumerate() {
                    slot[x.image(p) as usize] = i as u32;
                }
                Level {
                    base: x.image(l.base),
                    gens: l.gens.clone(),
                    orbit: l.orbit.iter().map(|&p| x.image(p)).collect(),
                    slot,
                    reps: l.reps.iter().map(|r| r.conjugate(x)).collect(),
                    inv_reps: l.inv_reps.iter().map(|r| r.conjugate(x)).collect(),
                }
            })
            .collect();
        StabChain {
            degree: self.degree,
            strong: self.strong.iter().map(|s| s.conjugate(x)).collect(),
            levels,
        }
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    pub(crate) fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Uniformly random element `u_k * ... * u_0` of random transversal elements.
    pub(crate) fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = level.rep(b).unwrap().mul(&g);
        }
        g
    }

    /// Strong generators of the pointwise stabilizer of the first
    /// `from_level` base points.
    pub(crate) fn stabilizer_generators(&self, from_level: usize) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        if from_level >= self.levels.len() {
            return out;
        }
        for &k in &self.levels[from_level].gens {
            out.push(self.strong[k].clone());
        }
        out
    }

    pub(crate) fn order_from(&self, from_level: usize) -> BigUint {
        self.levels
            .iter()
            .skip(from_level)
            .fold(BigUint::from(1u32), |acc, l| {
                acc * BigUint::from(l.orbit.len())
            })
    }
}

/// Product replacement generator of pseudo-random group elements.
struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    fn new<R: Rng>(gens: &[&Permutation], rng: &mut R) -> Self {
        let r = gens.len().max(10);
        let state: Vec<Permutation> = (0..r).map(|i| gens[i % gens.len()].clone()).collect();
        let degree = gens[0].degree();
        let mut pr = ProductReplacement {
            state,
            acc: Permutation::identity(degree),
        };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        let n = self.state.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let factor = if rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if rng.gen_bool(0.5) {
            self.state[i].mul(&factor)
        } else {
            factor.mul(&self.state[i])
        };
        self.acc = self.acc.mul(&self.state[i]);
        self.acc.clone()
    }
}
