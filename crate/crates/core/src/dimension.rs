//! Dimensions of linear systems: exact ranks of stacked condition blocks
//! compared with the closed-form virtual and expected dimensions.
//!
//! A rank computed at random data can only be smaller than the generic rank,
//! so a computed dimension equal to the expected one certifies that the
//! system is non-special, while an excess proves nothing by itself. Excesses
//! that match a known closed form (double points on quadrics and the
//! Alexander–Hirschowitz exceptional cases) are reported as such.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{ambient_dim, binom, binom_usize, MonomialBasis};
use crate::conditions::{BaseComponent, Placement, PointSupport};
use crate::error::{invalid, Error, Result};
use crate::modlinalg::{seeded_rng, FpMatrix, PrimeField};
use crate::toric::{sink_hyperplane, standard_triangulation, union_planes};

pub const DEFAULT_TRIALS: usize = 3;
pub const DEFAULT_SIZE_CAP: usize = 6000;

/// A linear system `L_{N,k}(components)` of degree-`k` forms on `P^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystemSpec {
    pub label: String,
    #[serde(rename = "N")]
    pub ambient: usize,
    pub k: usize,
    pub components: Vec<BaseComponent>,
}

impl LinearSystemSpec {
    pub fn new(
        label: impl Into<String>,
        ambient: usize,
        k: usize,
        components: Vec<BaseComponent>,
    ) -> Result<Self> {
        let spec = Self {
            label: label.into(),
            ambient,
            k,
            components,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ambient == 0 {
            return invalid("ambient dimension must be positive");
        }
        for c in &self.components {
            c.validate(self.ambient)?;
        }
        Ok(())
    }

    /// `L_{N,k}(V_{n,d}, 2^h)`.
    pub fn veronese_double_points(n: usize, d: usize, k: usize, h: usize) -> Result<Self> {
        let ambient = ambient_dim(n, d)?;
        let mut components = vec![BaseComponent::VeroneseImage { n, d }];
        components.extend(std::iter::repeat_n(BaseComponent::double_point(), h));
        Self::new(
            format!("L_{{{ambient},{k}}}(V_{{{n},{d}}},2^{h})"),
            ambient,
            k,
            components,
        )
    }

    /// `L_{N,k}(Λ, 2^h)` with `Λ ≅ P^n`.
    pub fn lambda_double_points(
        ambient: usize,
        n: usize,
        k: usize,
        h: usize,
        placement: Placement,
    ) -> Result<Self> {
        let mut components = vec![BaseComponent::LinearSubspace { n, placement }];
        components.extend(std::iter::repeat_n(BaseComponent::double_point(), h));
        Self::new(
            format!("L_{{{ambient},{k}}}(Lambda^{n},2^{h})"),
            ambient,
            k,
            components,
        )
    }

    /// `L_{N,k}(2^h)`: general double points only.
    pub fn double_points(ambient: usize, k: usize, h: usize) -> Result<Self> {
        let components = vec![BaseComponent::double_point(); h];
        Self::new(
            format!("L_{{{ambient},{k}}}(2^{h})"),
            ambient,
            k,
            components,
        )
    }

    /// `L_{N,k}(V_{n,d}, a)`: one general point of `V` with multiplicity `a`.
    pub fn veronese_fat_point(n: usize, d: usize, k: usize, a: usize) -> Result<Self> {
        let ambient = ambient_dim(n, d)?;
        let components = vec![
            BaseComponent::VeroneseImage { n, d },
            BaseComponent::FatPoint {
                multiplicity: a,
                support: PointSupport::GeneralOnVeronese { n, d },
            },
        ];
        Self::new(
            format!("L_{{{ambient},{k}}}(V_{{{n},{d}}},{a})"),
            ambient,
            k,
            components,
        )
    }

    /// `L_{N,k}(Π, a)`: the planes of the standard triangulation of `dΔ_n`
    /// and the sink coordinate point with multiplicity `a`.
    pub fn planes_fat_point(n: usize, d: usize, k: usize, a: usize) -> Result<Self> {
        let t = standard_triangulation(n, d)?;
        let ambient = ambient_dim(n, d)?;
        let components = vec![
            BaseComponent::CoordinatePlanes {
                faces: union_planes(&t),
            },
            BaseComponent::FatPoint {
                multiplicity: a,
                support: PointSupport::CoordinatePoint {
                    index: sink_hyperplane(&t)?,
                },
            },
        ];
        Self::new(
            format!("L_{{{ambient},{k}}}(Pi_{{{n},{d}}},{a})"),
            ambient,
            k,
            components,
        )
    }

    pub fn num_columns(&self) -> Option<usize> {
        binom_usize((self.ambient + self.k) as u64, self.ambient as i64)
    }

    fn is_random(&self) -> bool {
        self.components.iter().any(BaseComponent::is_random)
    }

    /// The prime must exceed `dk` with a Veronese component and `k` otherwise.
    pub fn required_prime_bound(&self) -> u64 {
        self.components
            .iter()
            .map(|c| match c {
                BaseComponent::VeroneseImage { d, .. } => (*d * self.k) as u64,
                BaseComponent::FatPoint {
                    support: PointSupport::GeneralOnVeronese { d, .. },
                    ..
                } => (*d * self.k) as u64,
                _ => self.k as u64,
            })
            .max()
            .unwrap_or(self.k as u64)
    }

    /// Identifies the families that have a closed-form dimension count.
    pub fn kind(&self) -> SystemKind {
        let mut fixed = Vec::new();
        let mut doubles = 0usize;
        let mut others = Vec::new();
        for c in &self.components {
            match c {
                BaseComponent::FatPoint {
                    multiplicity: 2,
                    support: PointSupport::GeneralInAmbient,
                } => doubles += 1,
                BaseComponent::FatPoint { .. } => others.push(c),
                _ => fixed.push(c),
            }
        }
        let h = doubles;
        match (fixed.as_slice(), others.as_slice()) {
            ([], []) => SystemKind::DoublePoints { h },
            ([BaseComponent::VeroneseImage { n, d }], []) => {
                SystemKind::VeroneseDouble { n: *n, d: *d, h }
            }
            ([BaseComponent::LinearSubspace { n, .. }], []) => {
                SystemKind::LambdaDouble { n: *n, h }
            }
            (
                [BaseComponent::VeroneseImage { n, d }],
                [BaseComponent::FatPoint {
                    multiplicity,
                    support: PointSupport::GeneralOnVeronese { n: pn, d: pd },
                }],
            ) if h == 0 && pn == n && pd == d => SystemKind::VeroneseFat {
                n: *n,
                d: *d,
                a: *multiplicity,
            },
            (
                [BaseComponent::CoordinatePlanes { faces }],
                [BaseComponent::FatPoint {
                    multiplicity,
                    support: PointSupport::CoordinatePoint { index },
                }],
            ) if h == 0 => match standard_planes(faces) {
                Some((n, d, sink)) if sink == *index => SystemKind::PlanesFat {
                    n,
                    d,
                    a: *multiplicity,
                },
                _ => SystemKind::Other,
            },
            _ => SystemKind::Other,
        }
    }
}

/// Recognizes the faces of the standard triangulation, returning `(n, d, sink)`.
fn standard_planes(faces: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = faces.first()?.len().checked_sub(1)?;
    if n == 0 {
        return None;
    }
    let d = (1..=faces.len()).find(|d| d.pow(n as u32) >= faces.len())?;
    let t = standard_triangulation(n, d).ok()?;
    let sink = sink_hyperplane(&t).ok()?;
    (union_planes(&t) == faces).then_some((n, d, sink))
}

/// The families with a closed-form virtual dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    VeroneseDouble { n: usize, d: usize, h: usize },
    LambdaDouble { n: usize, h: usize },
    VeroneseFat { n: usize, d: usize, a: usize },
    PlanesFat { n: usize, d: usize, a: usize },
    DoublePoints { h: usize },
    Other,
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

/// `C(N+k,N) - C(n+kd,n) - h(N+1) - 1`.
pub fn vdim_veronese_double(n: usize, d: usize, k: usize, h: usize) -> Result<BigInt> {
    let ambient = ambient_dim(n, d)?;
    Ok(binom((ambient + k) as u64, ambient as i64)
        - binom((n + k * d) as u64, n as i64)
        - big(h) * big(ambient + 1)
        - 1)
}

/// `C(N+k,N) - C(n+k,n) - h(N+1) - 1`.
pub fn vdim_lambda_double(ambient: usize, n: usize, k: usize, h: usize) -> BigInt {
    binom((ambient + k) as u64, ambient as i64)
        - binom((n + k) as u64, n as i64)
        - big(h) * big(ambient + 1)
        - 1
}

/// `C(N+k,N) - C(n+kd,n) - [C(N+a-1,N) - C(n+a-1,n)] - 1`, the count shared
/// by `L_{N,k}(V, a)` and `L_{N,k}(Π, a)`.
pub fn vdim_veronese_fat(n: usize, d: usize, k: usize, a: usize) -> Result<BigInt> {
    if a == 0 {
        return invalid("fat point multiplicity must be at least 1");
    }
    if a > k {
        return Err(Error::FormulaUndefined(format!(
            "a fat point of multiplicity {a} on degree-{k} forms"
        )));
    }
    let ambient = ambient_dim(n, d)?;
    Ok(binom((ambient + k) as u64, ambient as i64)
        - binom((n + k * d) as u64, n as i64)
        - (binom((ambient + a - 1) as u64, ambient as i64) - binom((n + a - 1) as u64, n as i64))
        - 1)
}

/// `C(N+k,N) - h(N+1) - 1`.
pub fn vdim_double_points(ambient: usize, k: usize, h: usize) -> BigInt {
    binom((ambient + k) as u64, ambient as i64) - big(h) * big(ambient + 1) - 1
}

/// `max(-1, vdim)`.
pub fn clamp_expected(vdim: &BigInt) -> BigInt {
    vdim.max(&BigInt::from(-1)).clone()
}

/// The four sporadic special systems of double points in degree `k ≥ 3`.
pub const AH_SPORADIC: [(usize, usize, usize); 4] = [(4, 3, 7), (2, 4, 5), (3, 4, 9), (4, 4, 14)];

/// Whether `L_{N,k}(2^h)` is special by the Alexander–Hirschowitz theorem.
pub fn is_ah_exception(ambient: usize, k: usize, h: usize) -> bool {
    (k == 2 && 2 <= h && h <= ambient) || AH_SPORADIC.contains(&(ambient, k, h))
}

/// `C(N+2,2) - h(N+1) + C(h,2) - 1`: quadrics singular at `h ≤ N + 1`
/// general points are cones over the span of the points.
pub fn quadric_double_points_dim(ambient: usize, h: usize) -> Result<BigInt> {
    if h > ambient + 1 {
        return invalid(format!("quadric count needs h <= N + 1, got h = {h}"));
    }
    Ok(binom((ambient + 2) as u64, 2) - big(h) * big(ambient + 1) + binom(h as u64, 2) - 1)
}

/// The actual dimension of `L_{N,k}(2^h)` where it is special.
pub fn ah_exception_dim(ambient: usize, k: usize, h: usize) -> Option<BigInt> {
    if !is_ah_exception(ambient, k, h) {
        return None;
    }
    if k == 2 {
        quadric_double_points_dim(ambient, h).ok()
    } else {
        Some(BigInt::zero())
    }
}

/// `(virtual, expected)` for the families with a closed form.
pub fn expected_dimension(spec: &LinearSystemSpec) -> Result<(BigInt, BigInt)> {
    let k = spec.k;
    let vdim = match spec.kind() {
        SystemKind::VeroneseDouble { n, d, h } => vdim_veronese_double(n, d, k, h)?,
        SystemKind::LambdaDouble { n, h } => vdim_lambda_double(spec.ambient, n, k, h),
        SystemKind::VeroneseFat { n, d, a } | SystemKind::PlanesFat { n, d, a } => {
            vdim_veronese_fat(n, d, k, a)?
        }
        SystemKind::DoublePoints { h } => vdim_double_points(spec.ambient, k, h),
        SystemKind::Other => {
            return Err(Error::FormulaUndefined(spec.label.clone()));
        }
    };
    let expected = clamp_expected(&vdim);
    Ok((vdim, expected))
}

/// A known exact dimension where the expected count fails.
pub fn closed_form(spec: &LinearSystemSpec) -> Option<BigInt> {
    match spec.kind() {
        SystemKind::DoublePoints { h } => ah_exception_dim(spec.ambient, spec.k, h),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "Certified-Expected")]
    CertifiedExpected,
    #[serde(rename = "Inconclusive-Excess")]
    InconclusiveExcess,
    #[serde(rename = "Closed-Form")]
    ClosedForm,
    #[serde(rename = "Formula-Undefined")]
    FormulaUndefined,
}

impl Verdict {
    /// Whether the verdict settles the dimension.
    pub fn is_conclusive(self) -> bool {
        matches!(self, Verdict::CertifiedExpected | Verdict::ClosedForm)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedExpected => "Certified-Expected",
            Verdict::InconclusiveExcess => "Inconclusive-Excess",
            Verdict::ClosedForm => "Closed-Form",
            Verdict::FormulaUndefined => "Formula-Undefined",
        })
    }
}

/// Prime, seed, trial count and size guard for a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub field: PrimeField,
    pub seed: u64,
    pub trials: usize,
    pub size_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            field: PrimeField::default(),
            seed: 0,
            trials: DEFAULT_TRIALS,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

impl EngineConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub label: String,
    #[serde(rename = "N")]
    pub ambient: usize,
    pub k: usize,
    pub components: Vec<BaseComponent>,
    pub computed_dim: i64,
    pub expected_dim: Option<i64>,
    pub virtual_dim: Option<i64>,
    pub verdict: Verdict,
    pub seed: u64,
    pub prime: u64,
    pub trials: usize,
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(what.to_string()))
}

/// Stacks all condition blocks of `spec` for one trial and returns the rank.
pub fn interpolation_rank(
    spec: &LinearSystemSpec,
    field: PrimeField,
    seed: u64,
    trial: u64,
) -> Result<usize> {
    let basis = MonomialBasis::new(spec.ambient + 1, spec.k as u32);
    let mut rng = seeded_rng(seed, trial);
    let mut matrix = FpMatrix::zeros(field, 0, basis.len());
    for c in &spec.components {
        let block = c.build(field, &basis, &mut rng)?;
        matrix.vstack(&block.rows);
    }
    Ok(matrix.rank())
}

/// Computes the dimension of `spec` as `C(N+k,N) - rank - 1`, keeping the
/// smallest value over up to `trials` seeded attempts.
pub fn compute_dimension(
    spec: &LinearSystemSpec,
    config: &EngineConfig,
) -> Result<DimensionReport> {
    spec.validate()?;
    if config.trials == 0 {
        return invalid("at least one trial is required");
    }
    config.field.require_above(spec.required_prime_bound())?;
    let cols = spec
        .num_columns()
        .ok_or_else(|| Error::Overflow("number of monomials".into()))?;
    if cols > config.size_cap {
        return Err(Error::SizeCap {
            cols,
            cap: config.size_cap,
        });
    }

    let formula = match expected_dimension(spec) {
        Ok((v, e)) => Some((
            to_i64(&v, "virtual dimension")?,
            to_i64(&e, "expected dimension")?,
        )),
        Err(Error::FormulaUndefined(_)) => None,
        Err(e) => return Err(e),
    };
    let closed = closed_form(spec)
        .map(|c| to_i64(&c, "closed form"))
        .transpose()?;
    let floor = closed.or(formula.map(|(_, e)| e));

    let trials = if spec.is_random() { config.trials } else { 1 };
    let mut best = i64::MAX;
    let mut used = 0;
    for trial in 0..trials {
        used += 1;
        let rank = interpolation_rank(spec, config.field, config.seed, trial as u64)?;
        best = best.min(cols as i64 - rank as i64 - 1);
        if Some(best) == floor {
            break;
        }
    }

    let verdict = match (formula, closed) {
        (Some((_, e)), _) if best == e => Verdict::CertifiedExpected,
        (_, Some(c)) if best == c => Verdict::ClosedForm,
        (Some(_), _) => Verdict::InconclusiveExcess,
        (None, _) => Verdict::FormulaUndefined,
    };
    Ok(DimensionReport {
        label: spec.label.clone(),
        ambient: spec.ambient,
        k: spec.k,
        components: spec.components.clone(),
        computed_dim: best,
        expected_dim: formula.map(|(_, e)| e),
        virtual_dim: formula.map(|(v, _)| v),
        verdict,
        seed: config.seed,
        prime: config.field.modulus(),
        trials: used,
    })
}

/// `floor(C(N+k-3, N) / (N+1))`, the largest `h` covered by the
/// non-speciality theorem for `L_{N,k}(V_{n,d}, 2^h)`.
pub fn main_bound(n: usize, d: usize, k: usize) -> Result<BigInt> {
    if k < 3 {
        return invalid(format!("the bound needs k >= 3, got k = {k}"));
    }
    let ambient = ambient_dim(n, d)?;
    Ok(binom((ambient + k - 3) as u64, ambient as i64) / big(ambient + 1))
}

/// Reports on `L_{N,k}(V_{n,d}, 2^h)` for every `h` up to the theorem's
/// bound, optionally capped by `h_max`.
pub fn certify_main_theorem(
    n: usize,
    d: usize,
    k: usize,
    h_max: Option<usize>,
    config: &EngineConfig,
) -> Result<Vec<DimensionReport>> {
    let bound = main_bound(n, d, k)?
        .to_usize()
        .ok_or_else(|| Error::Overflow("main bound".into()))?;
    let top = h_max.map_or(bound, |m| m.min(bound));
    (0..=top)
        .map(|h| {
            compute_dimension(
                &LinearSystemSpec::veronese_double_points(n, d, k, h)?,
                config,
            )
        })
        .collect()
}
