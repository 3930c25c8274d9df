//! Arithmetic in a prime field `F_p` and dense rank computation.
//!
//! Residues live in `u64`; products go through a `u128` intermediate, so any
//! prime below `2^63` is supported. Randomness comes from a seeded ChaCha
//! stream, which makes every "general point" reproducible from its seed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 63)).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Fails unless `p > bound`.
    pub fn require_above(&self, bound: u64) -> Result<()> {
        if self.p > bound {
            Ok(())
        } else {
            Err(Error::PrimeTooSmall {
                prime: self.p,
                required: bound,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn from_u64(&self, a: u64) -> u64 {
        a % self.p
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p));
        debug_assert!(!r.is_negative());
        r.to_u64().expect("residue below p")
    }

    pub fn random(&self, rng: &mut impl Rng) -> u64 {
        rng.random_range(0..self.p)
    }

    /// `len` residues drawn uniformly from `[0, p)`.
    pub fn random_point(&self, rng: &mut impl Rng, len: usize) -> Vec<u64> {
        (0..len).map(|_| self.random(rng)).collect()
    }

    /// Like [`Self::random_point`], redrawing the all-zero vector.
    pub fn random_nonzero_point(&self, rng: &mut impl Rng, len: usize) -> Vec<u64> {
        assert!(len > 0);
        loop {
            let v = self.random_point(rng, len);
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }
}

/// The reproducible random stream used for trial number `trial` of a run
/// seeded with `seed`.
pub fn seeded_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of residues (reduced mod p on the way in).
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| field.from_u64(x)));
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn random(field: PrimeField, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: field.random_point(rng, rows * cols),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.field.from_u64(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        self.entries
            .extend(row.iter().map(|&x| self.field.from_u64(x)));
        self.rows += 1;
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&mut self, other: &FpMatrix) {
        assert_eq!(self.cols, other.cols, "column mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        self.entries.extend_from_slice(&other.entries);
        self.rows += other.rows;
    }

    pub fn stacked<'a>(
        field: PrimeField,
        cols: usize,
        blocks: impl IntoIterator<Item = &'a FpMatrix>,
    ) -> FpMatrix {
        let mut out = FpMatrix::zeros(field, 0, cols);
        for b in blocks {
            out.vstack(b);
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn scale_row(&mut self, r: usize, factor: u64) {
        let f = self.field;
        for x in &mut self.entries[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, factor);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank over `F_p` by row reduction. Pivots are chosen as the first
    /// nonzero entry in column order, so the result is deterministic.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_reduce()
    }

    /// Reduces `self` in place to row echelon form and returns the rank.
    pub fn row_reduce(&mut self) -> usize {
        let f = self.field;
        let cols = self.cols;
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            let inv = f.inv(self.get(rank, c));
            self.scale_row(rank, inv);
            let (head, tail) = self.entries.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let factor = row[c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    if pivot_row[j] != 0 {
                        row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Dimension of the right kernel.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}
