//! Row models for the linear conditions a base locus imposes on degree-`k`
//! forms of `P^N`.
//!
//! Every block has one column per degree-`k` monomial in `y_0, ..., y_N`,
//! in the order of [`MonomialBasis`], so blocks coming from different
//! components stack by plain concatenation. A form (given by its
//! coefficient vector) satisfies the conditions of a block exactly when the
//! block annihilates that vector; the dimension of a linear system is then
//! `C(N+k, N) - rank - 1`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{ambient_dim, binom_usize, enumerate_monomials, MonomialBasis};
use crate::error::{invalid, Error, Result};
use crate::modlinalg::{FpMatrix, PrimeField};

/// How a linear subspace `Λ ≅ P^n` sits inside `P^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    /// The span of the first `n + 1` coordinate points.
    Coordinate,
    /// The row space of a seeded random full-rank `(n+1) x (N+1)` matrix.
    RandomParametrized,
}

/// Where a fat point is supported.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointSupport {
    /// A uniformly random point of `P^N`.
    GeneralInAmbient,
    /// `ν_d(ℓ)` for a uniformly random `ℓ ∈ P^n`.
    GeneralOnVeronese { n: usize, d: usize },
    /// The coordinate point `e_index`.
    CoordinatePoint { index: usize },
    /// A fixed vector of residues.
    Explicit { point: Vec<u64> },
}

/// One piece of the base locus of a linear system in `P^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseComponent {
    /// `V_{n,d} ⊂ P^{N_d}`.
    VeroneseImage { n: usize, d: usize },
    /// A linear subspace of dimension `n`.
    LinearSubspace { n: usize, placement: Placement },
    /// The union of the coordinate `n`-planes spanned by each face.
    CoordinatePlanes { faces: Vec<Vec<usize>> },
    /// A point of multiplicity `multiplicity`.
    FatPoint {
        multiplicity: usize,
        support: PointSupport,
    },
}

impl BaseComponent {
    pub fn double_point() -> Self {
        BaseComponent::FatPoint {
            multiplicity: 2,
            support: PointSupport::GeneralInAmbient,
        }
    }

    /// Whether building the block draws from the random stream.
    pub fn is_random(&self) -> bool {
        match self {
            BaseComponent::LinearSubspace { placement, .. } => {
                *placement == Placement::RandomParametrized
            }
            BaseComponent::FatPoint { support, .. } => matches!(
                support,
                PointSupport::GeneralInAmbient | PointSupport::GeneralOnVeronese { .. }
            ),
            _ => false,
        }
    }

    /// Checks that the component lives in `P^ambient`.
    pub fn validate(&self, ambient: usize) -> Result<()> {
        match self {
            BaseComponent::VeroneseImage { n, d } => {
                if *n == 0 || *d == 0 {
                    return invalid("Veronese image needs n >= 1 and d >= 1");
                }
                let expected = ambient_dim(*n, *d)?;
                if expected != ambient {
                    return invalid(format!(
                        "V_{{{n},{d}}} lives in P^{expected}, not P^{ambient}"
                    ));
                }
            }
            BaseComponent::LinearSubspace { n, .. } => {
                if *n >= ambient {
                    return invalid(format!(
                        "linear subspace of dimension {n} must be proper in P^{ambient}"
                    ));
                }
            }
            BaseComponent::CoordinatePlanes { faces } => {
                let Some(first) = faces.first() else {
                    return invalid("union of planes needs at least one face");
                };
                let size = first.len();
                let mut seen = std::collections::HashSet::new();
                for face in faces {
                    if face.len() != size || size == 0 {
                        return invalid("all faces must have the same positive size");
                    }
                    let mut sorted = face.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != face.len() {
                        return invalid(format!("face {face:?} repeats a vertex"));
                    }
                    if sorted.iter().any(|&i| i > ambient) {
                        return invalid(format!("face {face:?} leaves P^{ambient}"));
                    }
                    if !seen.insert(sorted) {
                        return invalid(format!("face {face:?} listed twice"));
                    }
                }
            }
            BaseComponent::FatPoint {
                multiplicity,
                support,
            } => {
                if *multiplicity == 0 {
                    return invalid("fat point multiplicity must be at least 1");
                }
                match support {
                    PointSupport::GeneralOnVeronese { n, d } => {
                        if *n == 0 || *d == 0 || ambient_dim(*n, *d)? != ambient {
                            return invalid(format!(
                                "point on V_{{{n},{d}}} does not live in P^{ambient}"
                            ));
                        }
                    }
                    PointSupport::CoordinatePoint { index } if *index > ambient => {
                        return invalid(format!("coordinate point {index} outside P^{ambient}"));
                    }
                    PointSupport::Explicit { point } if point.len() != ambient + 1 => {
                        return invalid("explicit support has the wrong length");
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Builds the condition block on `basis` (degree-`k` monomials of
    /// `P^N`), drawing any general position data from `rng`.
    pub fn build(
        &self,
        field: PrimeField,
        basis: &MonomialBasis,
        rng: &mut impl Rng,
    ) -> Result<ConditionBlock> {
        let ambient = basis.nvars() - 1;
        self.validate(ambient)?;
        match self {
            BaseComponent::VeroneseImage { n, d } => build_veronese_block(field, basis, *n, *d),
            BaseComponent::LinearSubspace { n, placement } => {
                build_linear_subspace_block(field, basis, *n, *placement, rng)
            }
            BaseComponent::CoordinatePlanes { faces } => build_planes_block(field, basis, faces),
            BaseComponent::FatPoint {
                multiplicity,
                support,
            } => {
                let point = match support {
                    PointSupport::GeneralInAmbient => field.random_nonzero_point(rng, ambient + 1),
                    PointSupport::GeneralOnVeronese { n, d } => {
                        let ell = field.random_nonzero_point(rng, n + 1);
                        veronese_point(field, &ell, *d)
                    }
                    PointSupport::CoordinatePoint { index } => {
                        let mut e = vec![0; ambient + 1];
                        e[*index] = 1;
                        e
                    }
                    PointSupport::Explicit { point } => point.clone(),
                };
                let mut block = build_fatpoint_block(field, basis, *multiplicity, &point)?;
                block.provenance = self.clone();
                Ok(block)
            }
        }
    }
}

impl fmt::Display for BaseComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseComponent::VeroneseImage { n, d } => write!(f, "V_{{{n},{d}}}"),
            BaseComponent::LinearSubspace { n, placement } => {
                let p = match placement {
                    Placement::Coordinate => "coordinate",
                    Placement::RandomParametrized => "random",
                };
                write!(f, "Lambda^{n}[{p}]")
            }
            BaseComponent::CoordinatePlanes { faces } => write!(f, "Pi[{} faces]", faces.len()),
            BaseComponent::FatPoint {
                multiplicity,
                support,
            } => {
                let s = match support {
                    PointSupport::GeneralInAmbient => "general".to_string(),
                    PointSupport::GeneralOnVeronese { n, d } => format!("on V_{{{n},{d}}}"),
                    PointSupport::CoordinatePoint { index } => format!("e_{index}"),
                    PointSupport::Explicit { .. } => "explicit".to_string(),
                };
                write!(f, "p^{multiplicity}[{s}]")
            }
        }
    }
}

/// Rows contributed by one base component.
#[derive(Clone, Debug)]
pub struct ConditionBlock {
    pub rows: FpMatrix,
    pub provenance: BaseComponent,
    /// The number of conditions the scheme imposes when independent.
    pub nominal_row_count: usize,
}

impl ConditionBlock {
    pub fn rank(&self) -> usize {
        self.rows.rank()
    }

    /// Dimension of the space of forms satisfying this block alone.
    pub fn kernel_dim(&self) -> usize {
        self.rows.nullity()
    }
}

/// `ν_d(ℓ)`: the values of the degree-`d` monomials at `ℓ`, in basis order.
pub fn veronese_point(field: PrimeField, ell: &[u64], d: usize) -> Vec<u64> {
    enumerate_monomials(ell.len() - 1, d as u32)
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .zip(ell)
                .fold(1, |acc, (&e, &x)| field.mul(acc, field.pow(x, e as u64)))
        })
        .collect()
}

/// Conditions for vanishing to order `m` at `point`: the order-`(m-1)`
/// partial derivatives of every column monomial, evaluated at the point.
///
/// Lower-order derivatives follow from Euler's relation because the forms
/// are homogeneous of degree `k < p`, which leaves `C(N+m-1, N)` rows. When
/// `m - 1 > k` the order is capped at `k`, where vanishing already forces the
/// form to be zero.
pub fn build_fatpoint_block(
    field: PrimeField,
    basis: &MonomialBasis,
    m: usize,
    point: &[u64],
) -> Result<ConditionBlock> {
    let ambient = basis.nvars() - 1;
    let k = basis.degree() as usize;
    if m == 0 {
        return invalid("fat point multiplicity must be at least 1");
    }
    if point.len() != ambient + 1 {
        return invalid(format!(
            "support point has {} coordinates, expected {}",
            point.len(),
            ambient + 1
        ));
    }
    field.require_above(k as u64)?;
    let point: Vec<u64> = point.iter().map(|&x| field.from_u64(x)).collect();
    if point.iter().all(|&x| x == 0) {
        return Err(Error::ZeroSupport);
    }

    // powers[i][e] = q_i^e and falling[a][b] = a!/(a-b)!
    let powers: Vec<Vec<u64>> = point
        .iter()
        .map(|&q| {
            let mut row = Vec::with_capacity(k + 1);
            let mut acc = 1;
            for _ in 0..=k {
                row.push(acc);
                acc = field.mul(acc, q);
            }
            row
        })
        .collect();
    let falling =
        |a: u32, b: u32| -> u64 { (0..b).fold(1, |acc, i| field.mul(acc, (a - i) as u64)) };

    let order = (m - 1).min(k) as u32;
    let derivatives = enumerate_monomials(ambient, order);
    let mut rows = FpMatrix::zeros(field, derivatives.len(), basis.len());
    for (r, beta) in derivatives.iter().enumerate() {
        for (c, alpha) in basis.monomials().iter().enumerate() {
            if !alpha.dominates(beta) {
                continue;
            }
            let mut v = 1;
            for (i, (&a, &b)) in alpha.exponents().iter().zip(beta.exponents()).enumerate() {
                v = field.mul(v, falling(a, b));
                v = field.mul(v, powers[i][(a - b) as usize]);
                if v == 0 {
                    break;
                }
            }
            rows.set(r, c, v);
        }
    }
    let nominal_row_count = binom_usize((ambient + m - 1) as u64, ambient as i64)
        .ok_or_else(|| Error::Overflow("fat point length".into()))?;
    Ok(ConditionBlock {
        rows,
        provenance: BaseComponent::FatPoint {
            multiplicity: m,
            support: PointSupport::Explicit { point },
        },
        nominal_row_count,
    })
}

/// Conditions for containing a linear subspace `Λ ≅ P^n`: the coefficients
/// of the pullback of a form along a parametrization `P^n → Λ`.
pub fn build_linear_subspace_block(
    field: PrimeField,
    basis: &MonomialBasis,
    n: usize,
    placement: Placement,
    rng: &mut impl Rng,
) -> Result<ConditionBlock> {
    let ambient = basis.nvars() - 1;
    if n >= ambient {
        return invalid(format!("Λ of dimension {n} is not proper in P^{ambient}"));
    }
    let param = match placement {
        Placement::Coordinate => {
            let mut m = FpMatrix::zeros(field, n + 1, ambient + 1);
            for i in 0..=n {
                m.set(i, i, 1);
            }
            m
        }
        Placement::RandomParametrized => loop {
            let m = FpMatrix::random(field, n + 1, ambient + 1, rng);
            if m.rank() == n + 1 {
                break m;
            }
        },
    };
    let rows = pullback_rows(field, basis, &param);
    let nominal_row_count = rows.rows();
    Ok(ConditionBlock {
        rows,
        provenance: BaseComponent::LinearSubspace { n, placement },
        nominal_row_count,
    })
}

/// Rows indexed by degree-`k` monomials in the `n + 1` parameters; column
/// `α` holds the coefficients of `∏_j (Σ_i param[i][j] t_i)^{α_j}`.
fn pullback_rows(field: PrimeField, basis: &MonomialBasis, param: &FpMatrix) -> FpMatrix {
    let params = param.rows();
    let k = basis.degree();
    let by_degree: Vec<MonomialBasis> = (0..=k).map(|e| MonomialBasis::new(params, e)).collect();
    let target = &by_degree[k as usize];
    let mut out = FpMatrix::zeros(field, target.len(), basis.len());
    for (c, alpha) in basis.monomials().iter().enumerate() {
        let mut poly = vec![1u64];
        let mut deg = 0usize;
        for (j, &e) in alpha.exponents().iter().enumerate() {
            for _ in 0..e {
                let src = &by_degree[deg];
                let dst = &by_degree[deg + 1];
                let mut next = vec![0u64; dst.len()];
                for (idx, &coef) in poly.iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    let mut exps = src.get(idx).exponents().to_vec();
                    for i in 0..params {
                        let w = param.get(i, j);
                        if w == 0 {
                            continue;
                        }
                        exps[i] += 1;
                        let t = dst.index_of(&exps).expect("degree bookkeeping");
                        next[t] = field.add(next[t], field.mul(coef, w));
                        exps[i] -= 1;
                    }
                }
                poly = next;
                deg += 1;
            }
        }
        for (r, &v) in poly.iter().enumerate() {
            if v != 0 {
                out.set(r, c, v);
            }
        }
    }
    out
}

/// Conditions for containing `V_{n,d}`: the pullback along the monomial
/// Veronese map `y_α ↦ x^α`.
///
/// Rows are the degree-`dk` monomials `x^μ`; the column of `y^γ` has a single
/// entry `1` in the row `μ = Σ_α γ_α α`, the image of `y^γ`. The kernel is
/// `H^0(I_V(k))`.
pub fn build_veronese_block(
    field: PrimeField,
    basis: &MonomialBasis,
    n: usize,
    d: usize,
) -> Result<ConditionBlock> {
    if n == 0 || d == 0 {
        return invalid("Veronese block needs n >= 1 and d >= 1");
    }
    let k = basis.degree();
    let ambient = ambient_dim(n, d)?;
    if basis.nvars() != ambient + 1 {
        return invalid(format!(
            "V_{{{n},{d}}} needs {} coordinates, basis has {}",
            ambient + 1,
            basis.nvars()
        ));
    }
    let vars = enumerate_monomials(n, d as u32);
    let target = MonomialBasis::new(n + 1, d as u32 * k);
    let mut rows = FpMatrix::zeros(field, target.len(), basis.len());
    let mut image = vec![0u32; n + 1];
    for (c, gamma) in basis.monomials().iter().enumerate() {
        image.iter_mut().for_each(|x| *x = 0);
        for (j, &g) in gamma.exponents().iter().enumerate() {
            for (slot, &a) in image.iter_mut().zip(vars[j].exponents()) {
                *slot += g * a;
            }
        }
        let r = target.index_of(&image).expect("image has degree dk");
        rows.set(r, c, 1);
    }
    Ok(ConditionBlock {
        rows,
        provenance: BaseComponent::VeroneseImage { n, d },
        nominal_row_count: target.len(),
    })
}

/// Conditions for containing a union of coordinate planes: a form contains
/// the plane on `face` iff every monomial supported in `face` has zero
/// coefficient, so the block is a set of unit rows.
pub fn build_planes_block(
    field: PrimeField,
    basis: &MonomialBasis,
    faces: &[Vec<usize>],
) -> Result<ConditionBlock> {
    let component = BaseComponent::CoordinatePlanes {
        faces: faces.to_vec(),
    };
    component.validate(basis.nvars() - 1)?;
    let mut rows = FpMatrix::zeros(field, 0, basis.len());
    let mut unit = vec![0u64; basis.len()];
    for (c, m) in basis.monomials().iter().enumerate() {
        if faces.iter().any(|face| m.supported_in(face)) {
            unit[c] = 1;
            rows.push_row(&unit);
            unit[c] = 0;
        }
    }
    let nominal_row_count = rows.rows();
    Ok(ConditionBlock {
        rows,
        provenance: component,
        nominal_row_count,
    })
}
