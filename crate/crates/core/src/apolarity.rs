//! Inverse systems of the monomial ideals of a union of coordinate planes
//! and of a fat coordinate point, and the condition count they give for
//! `L_{N,k}(Π, a)`.
//!
//! Both ideals are monomial, so the degree-`k` part of each inverse system
//! is spanned by the monomials outside the ideal and the span of several of
//! them is spanned by the union of those monomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{ambient_dim, binom, enumerate_monomials, MultiIndex};
use crate::dimension::{clamp_expected, vdim_veronese_fat};
use crate::error::{invalid, Error, Result};
use crate::toric::{sink_hyperplane, union_planes, Triangulation};

/// A monomial ideal of `P^N` whose inverse system is tracked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealDescriptor {
    /// `⟨x_j : j ∉ face⟩`, the ideal of the span of the coordinate points in `face`.
    CoordinateSubspace { ambient: usize, face: Vec<usize> },
    /// `I_{e_index}^a`, the fat coordinate point of multiplicity `a`.
    FatPointPower {
        ambient: usize,
        index: usize,
        a: usize,
    },
}

impl IdealDescriptor {
    pub fn ambient(&self) -> usize {
        match self {
            IdealDescriptor::CoordinateSubspace { ambient, .. }
            | IdealDescriptor::FatPointPower { ambient, .. } => *ambient,
        }
    }

    /// Whether `x^α` lies in the inverse system, i.e. outside the ideal.
    pub fn in_inverse_system(&self, alpha: &MultiIndex) -> bool {
        match self {
            IdealDescriptor::CoordinateSubspace { face, .. } => alpha.supported_in(face),
            IdealDescriptor::FatPointPower { index, a, .. } => {
                let away: u32 = alpha.degree() - alpha.exponents()[*index];
                (away as usize) < *a
            }
        }
    }

    /// The closed-form dimension of the degree-`k` slice.
    pub fn slice_dim(&self, k: usize) -> BigInt {
        match self {
            IdealDescriptor::CoordinateSubspace { face, .. } => {
                let n = face.len() - 1;
                binom((n + k) as u64, n as i64)
            }
            IdealDescriptor::FatPointPower { ambient, a, .. } => {
                let a = (*a).min(k + 1);
                binom((ambient + a - 1) as u64, *ambient as i64)
            }
        }
    }
}

/// `[I^{-1}]_k` for a monomial ideal, with its dimension counted directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseSystemSlice {
    pub ideal: IdealDescriptor,
    pub k: usize,
    pub dim: usize,
}

impl InverseSystemSlice {
    pub fn new(ideal: IdealDescriptor, k: usize) -> Self {
        let dim = enumerate_monomials(ideal.ambient(), k as u32)
            .iter()
            .filter(|m| ideal.in_inverse_system(m))
            .count();
        Self { ideal, k, dim }
    }

    pub fn monomials(&self) -> BTreeSet<MultiIndex> {
        enumerate_monomials(self.ideal.ambient(), self.k as u32)
            .into_iter()
            .filter(|m| self.ideal.in_inverse_system(m))
            .collect()
    }
}

fn check_range(k: usize, a: usize) -> Result<()> {
    if a == 0 {
        return invalid("fat point multiplicity must be at least 1");
    }
    if a > k {
        return invalid(format!("multiplicity a = {a} exceeds the degree k = {k}"));
    }
    Ok(())
}

fn check_sink(t: &Triangulation) -> Result<usize> {
    let p0 = sink_hyperplane(t)?;
    let faces = union_planes(t);
    if !faces[0].contains(&p0) || faces[1..].iter().any(|f| f.contains(&p0)) {
        return Err(Error::Triangulation(
            "the fat point must lie on the sink plane only".into(),
        ));
    }
    Ok(p0)
}

/// `C(N+a-1, N) + C(n+kd, n) - C(n+a-1, n)`, the dimension of the span of
/// the inverse systems of the fat sink point and of every plane.
pub fn conditions_count_planes_plus_fatpoint(
    n: usize,
    d: usize,
    k: usize,
    a: usize,
    t: &Triangulation,
) -> Result<BigInt> {
    check_range(k, a)?;
    if t.n != n || t.d != d {
        return invalid("triangulation does not match (n, d)");
    }
    check_sink(t)?;
    let ambient = ambient_dim(n, d)?;
    Ok(
        binom((ambient + a - 1) as u64, ambient as i64) + binom((n + k * d) as u64, n as i64)
            - binom((n + a - 1) as u64, n as i64),
    )
}

/// The same span, counted monomial by monomial.
pub fn conditions_count_bruteforce(k: usize, a: usize, t: &Triangulation) -> Result<usize> {
    check_range(k, a)?;
    let ambient = ambient_dim(t.n, t.d)?;
    let p0 = check_sink(t)?;
    let mut ideals: Vec<IdealDescriptor> = union_planes(t)
        .into_iter()
        .map(|face| IdealDescriptor::CoordinateSubspace { ambient, face })
        .collect();
    ideals.push(IdealDescriptor::FatPointPower {
        ambient,
        index: p0,
        a,
    });
    Ok(enumerate_monomials(ambient, k as u32)
        .iter()
        .filter(|m| ideals.iter().any(|i| i.in_inverse_system(m)))
        .count())
}

/// `dim [I_{p_0^a}^{-1}]_k ∩ [I_{Π_1}^{-1}]_k` at the sink, counted directly.
pub fn sink_intersection_dim(k: usize, a: usize, t: &Triangulation) -> Result<usize> {
    check_range(k, a)?;
    let ambient = ambient_dim(t.n, t.d)?;
    let p0 = check_sink(t)?;
    let sink = IdealDescriptor::CoordinateSubspace {
        ambient,
        face: union_planes(t).swap_remove(0),
    };
    let point = IdealDescriptor::FatPointPower {
        ambient,
        index: p0,
        a,
    };
    Ok(enumerate_monomials(ambient, k as u32)
        .iter()
        .filter(|m| sink.in_inverse_system(m) && point.in_inverse_system(m))
        .count())
}

/// `C(N+k,N) - C(n+kd,n) - C(N+a-1,N) + C(n+a-1,n) - 1`.
pub fn dim_l_planes_fatpoint(n: usize, d: usize, k: usize, a: usize) -> Result<BigInt> {
    check_range(k, a)?;
    vdim_veronese_fat(n, d, k, a)
}

/// `max(-1, C(N+k,N) - C(n+kd,n) - [C(N+a-1,N) - C(n+a-1,n)] - 1)`; no
/// formula is claimed for `a > k`.
pub fn expected_dim_v_fatpoint(n: usize, d: usize, k: usize, a: usize) -> Result<BigInt> {
    Ok(clamp_expected(&vdim_veronese_fat(n, d, k, a)?))
}
