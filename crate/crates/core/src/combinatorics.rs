//! Multi-indices, binomial coefficients and the integer dimension counts.
//!
//! Every count here is an arbitrary-precision [`BigInt`]: the bound tables
//! evaluate binomials such as `C(n + dk, dk)` that leave 64-bit range for
//! moderate `d`.
//!
//! Monomials are ordered graded-lexicographically with `x_0 > x_1 > ... > x_n`,
//! and [`enumerate_monomials`] lists them leading monomial first. That order
//! indexes the rows and columns of every interpolation matrix in the crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    exponents: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Self { exponents, degree }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    /// Indices of the variables that occur with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// `true` when every variable of the monomial is listed in `vars`.
    pub fn supported_in(&self, vars: &[usize]) -> bool {
        self.support().all(|i| vars.contains(&i))
    }

    /// Component-wise `self >= other`, i.e. `x^other` divides `x^self`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.exponents.len() == other.exponents.len()
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.nvars(), other.nvars());
        MultiIndex::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        // lower degree first; within a degree the lex-larger exponent vector
        // (the leading monomial) comes first
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `C(a, b)`, zero outside `0 <= b <= a`.
pub fn binom(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut small: Option<u128> = Some(1);
    for i in 0..b {
        small = small
            .and_then(|acc| acc.checked_mul((a - i) as u128))
            .map(|acc| acc / (i + 1) as u128);
    }
    if let Some(v) = small {
        return BigInt::from(v);
    }
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b)` as a machine integer; `None` on overflow.
pub fn binom_usize(a: u64, b: i64) -> Option<usize> {
    binom(a, b).to_usize()
}

/// Number of degree-`b` monomials in `n + 1` variables, `C(n + b, n)`.
pub fn num_monomials(n: u64, b: u64) -> BigInt {
    binom(n + b, n as i64)
}

/// All degree-`b` monomials in `n + 1` variables, leading monomial first.
pub fn enumerate_monomials(n: usize, b: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n + 1];
    fill(&mut current, 0, b, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// `N_d = C(n + d, n) - 1`, the dimension of the space of degree-`d` forms
/// on `P^n`, projectivized.
pub fn n_d(n: u64, d: u64) -> BigInt {
    binom(n + d, n as i64) - 1
}

/// `N_d^k = C(N_d + k, N_d) - 1`.
pub fn n_dk(n: u64, d: u64, k: u64) -> BigInt {
    let big_n = n_d(n, d).to_u64().expect("N_d fits in u64");
    binom(big_n + k, big_n as i64) - 1
}

/// `N_d` as a machine integer, for sizing matrices.
pub fn ambient_dim(n: usize, d: usize) -> Result<usize> {
    n_d(n as u64, d as u64)
        .to_usize()
        .ok_or_else(|| Error::Overflow(format!("N_d({n},{d})")))
}

/// Both sides of the hockey-stick identity
/// `sum_{l=0}^{a-1} C(n-1+l, n-1) = C(n+a-1, n)`.
pub fn hockey_stick(n: u64, a: u64) -> (BigInt, BigInt) {
    let lhs = (0..a).fold(BigInt::zero(), |acc, l| {
        acc + binom(n - 1 + l, n as i64 - 1)
    });
    let rhs = binom(n + a - 1, n as i64);
    (lhs, rhs)
}

/// The degree-`b` monomials of `n + 1` variables with an index lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<MultiIndex>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        assert!(nvars >= 1, "a monomial basis needs at least one variable");
        let monomials = enumerate_monomials(nvars - 1, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents().to_vec(), i))
            .collect();
        Self {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.monomials[i]
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }
}
