//! Matrices over prime fields and their actions on vectors.
//!
//! Matrices act on row vectors from the right, `v -> v * M`, so products of
//! matrices compose left to right like permutations. The nonzero vector with
//! coordinates `(c_0, ..., c_{d-1})` is point `sum c_i q^i - 1`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::engine::{is_prime, Permutation};
use crate::error::{GroupError, Result};

/// Largest vector space (number of vectors) a matrix group is realized on.
pub const MAX_VECTORS: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub dim: usize,
    pub q: u64,
    /// Row-major entries in `[0, q)`.
    pub entries: Vec<u64>,
}

impl Matrix {
    pub fn identity(dim: usize, q: u64) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Matrix { dim, q, entries }
    }

    pub fn from_rows(q: u64, rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(move |&x| x.rem_euclid(q as i64) as u64))
            .collect();
        Matrix { dim, q, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.dim + j] = v % self.q;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::identity(d, self.q);
        for i in 0..d {
            for j in 0..d {
                let s: u64 = (0..d).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim;
        let mut out = self.clone();
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.get(j, i));
            }
        }
        out
    }

    pub fn determinant(&self) -> u64 {
        let q = self.q;
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut det = 1u64;
        for c in 0..d {
            let Some(p) = (c..d).find(|&r| a[r * d + c] != 0) else {
                return 0;
            };
            if p != c {
                for k in 0..d {
                    a.swap(p * d + k, c * d + k);
                }
                det = (q - det) % q;
            }
            let pivot = a[c * d + c];
            det = det * pivot % q;
            let inv = inverse_mod(pivot, q);
            for r in c + 1..d {
                let f = a[r * d + c] * inv % q;
                for k in c..d {
                    a[r * d + k] = (a[r * d + k] + q * q - f * a[c * d + k] % q) % q;
                }
            }
        }
        det
    }

    /// Block-diagonal placement of `self` at coordinate `offset` inside the identity of size `dim`.
    pub fn embed(&self, offset: usize, dim: usize) -> Matrix {
        let mut out = Matrix::identity(dim, self.q);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(offset + i, offset + j, self.get(i, j));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| v[i] * self.get(i, j)).sum::<u64>() % self.q)
            .collect()
    }

    /// `B(x, y) = x F y^T`.
    pub fn bilinear(&self, x: &[u64], y: &[u64]) -> u64 {
        let fy: Vec<u64> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * y[j]).sum::<u64>() % self.q)
            .collect();
        x.iter().zip(&fy).map(|(a, b)| a * b).sum::<u64>() % self.q
    }
}

pub(crate) fn inverse_mod(a: u64, q: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// A matrix group over a prime field, optionally with a preserved bilinear form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGroupSpec {
    pub dimension: usize,
    pub q: u64,
    pub generators: Vec<Matrix>,
    pub form: Option<Matrix>,
    /// Order of the generated group when a formula is known.
    pub order: Option<BigUint>,
}

impl MatrixGroupSpec {
    /// Generators are invertible and preserve the form, if any (`M F M^T = F`).
    pub fn validate(&self) -> Result<()> {
        for m in &self.generators {
            if m.dim != self.dimension || m.q != self.q {
                return Err(GroupError::InvalidInput("matrix shape mismatch".into()));
            }
            if m.determinant() == 0 {
                return Err(GroupError::InvalidInput("singular generator".into()));
            }
            if let Some(f) = &self.form {
                if &m.mul(f).mul(&m.transpose()) != f {
                    return Err(GroupError::InvalidInput(
                        "generator does not preserve the form".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn check_field(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(GroupError::InvalidInput(format!(
            "field size {q} is not prime (only prime fields are supported)"
        )));
    }
    Ok(())
}

/// The alternating form `sum_i (x_{2i} y_{2i+1} - x_{2i+1} y_{2i})`.
pub fn symplectic_form(n: usize, q: u64) -> Matrix {
    let mut f = Matrix::identity(2 * n, q);
    f.entries.iter_mut().for_each(|e| *e = 0);
    for i in 0..n {
        f.set(2 * i, 2 * i + 1, 1);
        f.set(2 * i + 1, 2 * i, q - 1);
    }
    f
}

/// `q^{n^2} prod_{i=1..n} (q^{2i} - 1)`.
pub fn symplectic_order(n: usize, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut order = qb.pow((n * n) as u32);
    for i in 1..=n {
        order *= qb.pow(2 * i as u32) - 1u32;
    }
    order
}

/// `prod_{i=0..d-1} (q^d - q^i)`.
pub fn general_linear_order(d: usize, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let qd = qb.pow(d as u32);
    (0..d).map(|i| &qd - qb.pow(i as u32)).product()
}

/// Symplectic transvection `x -> x + B(x, v) v`.
pub fn transvection(form: &Matrix, v: &[u64]) -> Matrix {
    let d = form.dim;
    let q = form.q;
    let mut m = Matrix::identity(d, q);
    let mut e = vec![0u64; d];
    for i in 0..d {
        e[i] = 1;
        let c = form.bilinear(&e, v);
        for (j, &vj) in v.iter().enumerate().take(d) {
            let cur = m.get(i, j);
            m.set(i, j, cur + c * vj);
        }
        e[i] = 0;
    }
    m
}

fn block_permutation(n: usize, q: u64, perm: &[usize]) -> Matrix {
    let d = 2 * n;
    let mut m = Matrix::identity(d, q);
    m.entries.iter_mut().for_each(|e| *e = 0);
    for (i, &j) in perm.iter().enumerate() {
        m.set(2 * i, 2 * j, 1);
        m.set(2 * i + 1, 2 * j + 1, 1);
    }
    m
}

/// `Sp_{2n}(q)` for the block-diagonal form: `SL_2(q)` on the first block,
/// a block transposition and a block cycle, and one transvection mixing the
/// first two blocks.
pub fn symplectic_group(n: usize, q: u64) -> Result<MatrixGroupSpec> {
    check_field(q)?;
    if n == 0 {
        return Err(GroupError::InvalidInput("rank must be at least 1".into()));
    }
    let form = symplectic_form(n, q);
    let d = 2 * n;
    let sl2 = [
        Matrix::from_rows(q, &[&[1, 1], &[0, 1]]),
        Matrix::from_rows(q, &[&[1, 0], &[1, 1]]),
    ];
    let mut generators: Vec<Matrix> = sl2.iter().map(|m| m.embed(0, d)).collect();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        generators.push(block_permutation(n, q, &swap));
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            generators.push(block_permutation(n, q, &cycle));
        }
        let mut v = vec![0u64; d];
        v[0] = 1;
        v[2] = 1;
        generators.push(transvection(&form, &v));
    }
    let spec = MatrixGroupSpec {
        dimension: d,
        q,
        generators,
        form: Some(form),
        order: Some(symplectic_order(n, q)),
    };
    spec.validate()?;
    Ok(spec)
}

/// `GL_d(q)`: a primitive scalar in one coordinate, one elementary
/// transvection, and the coordinate permutations.
pub fn general_linear(d: usize, q: u64) -> Result<MatrixGroupSpec> {
    check_field(q)?;
    if d == 0 {
        return Err(GroupError::InvalidInput(
            "dimension must be at least 1".into(),
        ));
    }
    let mut generators = Vec::new();
    let omega = primitive_root(q);
    if omega != 1 {
        let mut m = Matrix::identity(d, q);
        m.set(0, 0, omega);
        generators.push(m);
    }
    if d >= 2 {
        let mut t = Matrix::identity(d, q);
        t.set(0, 1, 1);
        generators.push(t);
        let mut swap = Matrix::identity(d, q);
        swap.entries.iter_mut().for_each(|e| *e = 0);
        for i in 0..d {
            let j = match i {
                0 => 1,
                1 => 0,
                _ => i,
            };
            swap.set(i, j, 1);
        }
        generators.push(swap);
        if d >= 3 {
            let mut cycle = Matrix::identity(d, q);
            cycle.entries.iter_mut().for_each(|e| *e = 0);
            for i in 0..d {
                cycle.set(i, (i + 1) % d, 1);
            }
            generators.push(cycle);
        }
    }
    let spec = MatrixGroupSpec {
        dimension: d,
        q,
        generators,
        form: None,
        order: Some(general_linear_order(d, q)),
    };
    spec.validate()?;
    Ok(spec)
}

pub(crate) fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = crate::engine::prime_factors(q - 1);
    (2..q)
        .find(|&g| {
            factors
                .iter()
                .all(|&(p, _)| pow_mod(g, (q - 1) / p, q) != 1)
        })
        .expect("prime fields have primitive roots")
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// Coordinates of point `i` (the vector whose base-`q` integer is `i + 1`).
pub fn point_vector(i: u64, dim: usize, q: u64) -> Vec<u64> {
    let mut x = i + 1;
    (0..dim)
        .map(|_| {
            let c = x % q;
            x /= q;
            c
        })
        .collect()
}

pub fn vector_point(v: &[u64], q: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &c| acc * q + c) - 1
}

fn vector_count(dim: usize, q: u64) -> Result<u64> {
    let count = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if count > MAX_VECTORS as u128 {
        return Err(GroupError::cap("vector space size", MAX_VECTORS));
    }
    Ok(count as u64)
}

/// Permutation of the nonzero vectors induced by `m`.
pub fn vector_permutation(m: &Matrix) -> Result<Permutation> {
    let n = vector_count(m.dim, m.q)? - 1;
    let images = (0..n)
        .map(|i| vector_point(&m.apply(&point_vector(i, m.dim, m.q)), m.q) as u32)
        .collect();
    Permutation::from_images(images)
}

/// Projective points: nonzero vectors whose first nonzero coordinate is 1,
/// listed in increasing vector order.
pub fn projective_points(dim: usize, q: u64) -> Result<Vec<Vec<u64>>> {
    let n = vector_count(dim, q)? - 1;
    Ok((0..n)
        .map(|i| point_vector(i, dim, q))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect())
}

fn normalize(v: &mut [u64], q: u64) {
    if let Some(&lead) = v.iter().find(|&&c| c != 0) {
        let inv = inverse_mod(lead, q);
        v.iter_mut().for_each(|c| *c = *c * inv % q);
    }
}

/// Permutation of the projective points induced by `m`.
pub fn projective_permutation(m: &Matrix, points: &[Vec<u64>]) -> Result<Permutation> {
    let index: std::collections::HashMap<&[u64], u32> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    let images = points
        .iter()
        .map(|p| {
            let mut w = m.apply(p);
            normalize(&mut w, m.q);
            index[w.as_slice()]
        })
        .collect();
    Permutation::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn point_numbering_round_trips() {
        for i in 0..80 {
            assert_eq!(vector_point(&point_vector(i, 4, 3), 3), i);
        }
        assert_eq!(point_vector(0, 2, 3), vec![1, 0]);
        assert_eq!(point_vector(2, 2, 3), vec![0, 1]);
    }

    #[test]
    fn symplectic_generators_preserve_the_form_on_random_pairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (n, q) in [(1, 3), (2, 3), (3, 3), (2, 5)] {
            let spec = symplectic_group(n, q).unwrap();
            let f = spec.form.as_ref().unwrap();
            for m in &spec.generators {
                for _ in 0..100 {
                    let x: Vec<u64> = (0..2 * n).map(|_| rng.gen_range(0..q)).collect();
                    let y: Vec<u64> = (0..2 * n).map(|_| rng.gen_range(0..q)).collect();
                    assert_eq!(f.bilinear(&m.apply(&x), &m.apply(&y)), f.bilinear(&x, &y));
                }
            }
        }
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_rows(5, &[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant(), 1);
        let s = Matrix::from_rows(3, &[&[1, 2], &[2, 1]]);
        assert_eq!(s.determinant(), 0);
    }

    #[test]
    fn order_formulas() {
        assert_eq!(symplectic_order(1, 3), BigUint::from(24u32));
        assert_eq!(symplectic_order(2, 3), BigUint::from(51_840u32));
        assert_eq!(symplectic_order(3, 3), BigUint::from(9_170_703_360u64));
        assert_eq!(general_linear_order(3, 2), BigUint::from(168u32));
    }

    #[test]
    fn extension_fields_are_rejected() {
        assert!(symplectic_group(1, 9).is_err());
        assert!(general_linear(2, 4).is_err());
    }
}
