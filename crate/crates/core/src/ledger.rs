//! Dimension bookkeeping for the degeneration of `P^N` into two components
//! glued along a hyperplane.
//!
//! Degenerating `L_{N,k}(V_{n,d}, 2^h)` with the `h` points collected on the
//! exceptional component splits it into three systems:
//!
//! * `L_{N,k-2}(Λ, 2^h)` on the exceptional component,
//! * `L_{N,k}(V, k)` on the strict transform,
//! * `L_{N-1,k-1}(Λ_R)` on the gluing hyperplane, with `Λ_R ≅ P^{n-1}`.
//!
//! The central fiber has dimension `dim P̂ + dim F̂ + dim R + 2`; this must
//! equal the expected dimension of the general fiber. The neighbouring
//! systems `L_{N,k-1}(Λ, 2^h)` and `L_{N,k}(V, k-1)` are tracked as well.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{ambient_dim, binom};
use crate::conditions::Placement;
use crate::dimension::{
    clamp_expected, compute_dimension, main_bound, vdim_lambda_double, vdim_veronese_double,
    vdim_veronese_fat, DimensionReport, EngineConfig, LinearSystemSpec, Verdict,
};
use crate::error::{invalid, Error, Result};

/// Closed-form dimensions of the constituent systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub h: usize,
    #[serde(rename = "N")]
    pub ambient: usize,
    /// `L_{N,k-1}(Λ, 2^h)`.
    pub dim_p: i64,
    /// `L_{N,k-2}(Λ, 2^h)`.
    pub dim_hat_p: i64,
    /// `L_{N,k}(V, k-1)`.
    pub dim_f: i64,
    /// `L_{N,k}(V, k)`.
    pub dim_hat_f: i64,
    /// `L_{N-1,k-1}(Λ_R)`.
    pub dim_r: i64,
    pub ledger_total: i64,
    pub edim_general_fiber: i64,
    pub consistent: bool,
}

/// A ledger entry with each constituent also computed by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteforceLedger {
    pub entry: LedgerEntry,
    pub constituents: Vec<Constituent>,
    /// `Some(true)` when every constituent has its expected dimension,
    /// `Some(false)` when one is certified off, `None` when some rank is
    /// inconclusive on this seed.
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituent {
    pub name: String,
    pub closed_form: i64,
    pub report: DimensionReport,
    /// `computed_dim == max(-1, closed_form)`.
    pub matches: bool,
}

fn small(x: BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(what.to_string()))
}

/// Checks the ledger preconditions and returns `N`.
fn admissible(n: usize, d: usize, k: usize, h: usize) -> Result<usize> {
    if k < 4 {
        return invalid(format!("the ledger needs k >= 4, got k = {k}"));
    }
    if n == 0 || d < 2 {
        return invalid("the ledger needs n >= 1 and d >= 2 so that Λ is a proper subspace");
    }
    let bound = main_bound(n, d, k)?;
    if BigInt::from(h) > bound {
        return invalid(format!("h = {h} exceeds the admissible bound {bound}"));
    }
    ambient_dim(n, d)
}

/// The largest admissible `h`.
pub fn max_h(n: usize, d: usize, k: usize) -> Result<usize> {
    main_bound(n, d, k)?
        .to_usize()
        .ok_or_else(|| Error::Overflow("main bound".into()))
}

pub fn ledger(n: usize, d: usize, k: usize, h: usize) -> Result<LedgerEntry> {
    let ambient = admissible(n, d, k, h)?;
    let dim_p = small(vdim_lambda_double(ambient, n, k - 1, h), "dim P")?;
    let dim_hat_p = small(vdim_lambda_double(ambient, n, k - 2, h), "dim P-hat")?;
    let dim_f = small(vdim_veronese_fat(n, d, k, k - 1)?, "dim F")?;
    let dim_hat_f = small(vdim_veronese_fat(n, d, k, k)?, "dim F-hat")?;
    let dim_r = small(
        binom((ambient + k - 2) as u64, ambient as i64 - 1)
            - binom((n + k - 2) as u64, n as i64 - 1)
            - 1,
        "dim R",
    )?;
    let ledger_total = dim_hat_p + dim_hat_f + dim_r + 2;
    let edim_general_fiber = small(
        clamp_expected(&vdim_veronese_double(n, d, k, h)?),
        "expected dimension",
    )?;
    Ok(LedgerEntry {
        n,
        d,
        k,
        h,
        ambient,
        dim_p,
        dim_hat_p,
        dim_f,
        dim_hat_f,
        dim_r,
        ledger_total,
        edim_general_fiber,
        consistent: ledger_total == edim_general_fiber,
    })
}

/// Every admissible `(n, d, k, h)` in the given ranges, in lexicographic order.
pub fn ledger_grid(
    n_range: std::ops::RangeInclusive<usize>,
    d_range: std::ops::RangeInclusive<usize>,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<LedgerEntry>> {
    let mut out = Vec::new();
    for n in n_range {
        for d in d_range.clone() {
            for k in k_range.clone() {
                for h in 0..=max_h(n, d, k)? {
                    out.push(ledger(n, d, k, h)?);
                }
            }
        }
    }
    Ok(out)
}

/// The constituent systems, each paired with its closed-form dimension.
pub fn constituent_specs(
    n: usize,
    d: usize,
    k: usize,
    h: usize,
) -> Result<Vec<(String, LinearSystemSpec, i64)>> {
    let e = ledger(n, d, k, h)?;
    let lambda = |degree| {
        LinearSystemSpec::lambda_double_points(e.ambient, n, degree, h, Placement::Coordinate)
    };
    Ok(vec![
        ("P".to_string(), lambda(k - 1)?, e.dim_p),
        ("P-hat".to_string(), lambda(k - 2)?, e.dim_hat_p),
        (
            "F".to_string(),
            LinearSystemSpec::veronese_fat_point(n, d, k, k - 1)?,
            e.dim_f,
        ),
        (
            "F-hat".to_string(),
            LinearSystemSpec::veronese_fat_point(n, d, k, k)?,
            e.dim_hat_f,
        ),
        (
            "R".to_string(),
            LinearSystemSpec::lambda_double_points(
                e.ambient - 1,
                n - 1,
                k - 1,
                0,
                Placement::Coordinate,
            )?,
            e.dim_r,
        ),
    ])
}

/// The ledger with every constituent also computed by rank.
pub fn ledger_bruteforce(
    n: usize,
    d: usize,
    k: usize,
    h: usize,
    config: &EngineConfig,
) -> Result<BruteforceLedger> {
    let entry = ledger(n, d, k, h)?;
    let mut constituents = Vec::new();
    for (name, spec, closed_form) in constituent_specs(n, d, k, h)? {
        let report = compute_dimension(&spec, config)?;
        let matches = report.computed_dim == closed_form.max(-1);
        constituents.push(Constituent {
            name,
            closed_form,
            report,
            matches,
        });
    }
    let verified = if constituents.iter().all(|c| c.matches) {
        Some(true)
    } else if constituents
        .iter()
        .any(|c| !c.matches && c.report.verdict == Verdict::InconclusiveExcess)
    {
        None
    } else {
        Some(false)
    };
    Ok(BruteforceLedger {
        entry,
        constituents,
        verified,
    })
}
