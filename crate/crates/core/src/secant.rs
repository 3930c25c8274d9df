//! Secant varieties of the variety of `k`-th powers of degree-`d` forms,
//! computed directly through Terracini's lemma.
//!
//! The affine tangent space to `V^k_{n,d}` at `[F^k]` is `F^{k-1} · S_d`, so
//! the span of `h` general tangent spaces is the row space of `h` stacked
//! blocks of products `F_i^{k-1} x^β`, written in the degree-`dk` monomial
//! basis.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{ambient_dim, binom, binom_usize, MonomialBasis};
use crate::dimension::{
    ah_exception_dim, compute_dimension, DimensionReport, EngineConfig, LinearSystemSpec, Verdict,
};
use crate::error::{invalid, Error, Result};
use crate::modlinalg::{seeded_rng, FpMatrix, PrimeField};

/// Product of two forms given by coefficient vectors on `a` and `b`,
/// written on `target` (of degree `a.degree() + b.degree()`).
pub fn multiply_forms(
    field: PrimeField,
    a_basis: &MonomialBasis,
    a: &[u64],
    b_basis: &MonomialBasis,
    b: &[u64],
    target: &MonomialBasis,
) -> Vec<u64> {
    let mut out = vec![0u64; target.len()];
    let mut exps = vec![0u32; target.nvars()];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        let ma = a_basis.get(i).exponents();
        for (j, &cb) in b.iter().enumerate() {
            if cb == 0 {
                continue;
            }
            let mb = b_basis.get(j).exponents();
            for (slot, (x, y)) in exps.iter_mut().zip(ma.iter().zip(mb)) {
                *slot = x + y;
            }
            let t = target
                .index_of(&exps)
                .expect("product degree matches target");
            out[t] = field.add(out[t], field.mul(ca, cb));
        }
    }
    out
}

/// The `C(n+d, n)` rows `F^{k-1} x^β`, one per degree-`d` monomial `x^β`,
/// in the degree-`dk` monomial basis of `n + 1` variables.
pub fn tangent_space_rows(
    field: PrimeField,
    n: usize,
    d: usize,
    k: usize,
    f: &[u64],
) -> Result<FpMatrix> {
    if k == 0 || d == 0 {
        return invalid("tangent rows need d >= 1 and k >= 1");
    }
    field.require_above((d * k) as u64)?;
    let small = MonomialBasis::new(n + 1, d as u32);
    if f.len() != small.len() {
        return invalid(format!(
            "form has {} coefficients, expected {}",
            f.len(),
            small.len()
        ));
    }
    let f: Vec<u64> = f.iter().map(|&x| field.from_u64(x)).collect();
    if f.iter().all(|&x| x == 0) {
        return Err(Error::ZeroSupport);
    }
    let mut power = vec![1u64];
    let mut power_basis = MonomialBasis::new(n + 1, 0);
    for e in 1..k {
        let next = MonomialBasis::new(n + 1, (d * e) as u32);
        power = multiply_forms(field, &power_basis, &power, &small, &f, &next);
        power_basis = next;
    }
    let target = MonomialBasis::new(n + 1, (d * k) as u32);
    let mut rows = FpMatrix::zeros(field, small.len(), target.len());
    let mut exps = vec![0u32; n + 1];
    for (r, beta) in small.monomials().iter().enumerate() {
        for (i, &c) in power.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, (x, y)) in exps
                .iter_mut()
                .zip(power_basis.get(i).exponents().iter().zip(beta.exponents()))
            {
                *slot = x + y;
            }
            rows.set(r, target.index_of(&exps).expect("degree dk"), c);
        }
    }
    Ok(rows)
}

/// `min(C(n+dk, n) - 1, h(N_d + 1) - 1)`.
pub fn expected_secant_dim(n: usize, d: usize, k: usize, h: usize) -> Result<BigInt> {
    let ambient = ambient_dim(n, d)?;
    let space = binom((n + d * k) as u64, n as i64);
    let count = BigInt::from(h) * BigInt::from(ambient + 1);
    Ok(space.min(count) - 1)
}

/// For `d = 1` the variety is `ν_k(P^n)`, whose secant varieties are
/// defective exactly at the Alexander–Hirschowitz exceptions.
pub fn secant_closed_form(n: usize, d: usize, k: usize, h: usize) -> Option<BigInt> {
    if d != 1 {
        return None;
    }
    let special = ah_exception_dim(n, k, h)?;
    Some(binom((n + k) as u64, n as i64) - 2 - special)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantReport {
    pub label: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub h: usize,
    /// The ambient space `P^N` of the secant variety, `N = C(n+dk, n) - 1`.
    #[serde(rename = "N")]
    pub ambient: usize,
    pub computed_secant_dim: i64,
    pub expected_secant_dim: i64,
    pub verdict: Verdict,
    /// `Some(false)` when certified non-defective, `Some(true)` when a
    /// closed form shows a defect, `None` otherwise.
    pub defective: Option<bool>,
    pub cross_check: Option<bool>,
    pub seed: u64,
    pub prime: u64,
    pub trials: usize,
}

/// `dim Sec_h(V^k_{n,d})` as the rank of `h` stacked tangent blocks minus
/// one, keeping the largest value over up to `trials` seeded attempts.
pub fn secant_dimension(
    n: usize,
    d: usize,
    k: usize,
    h: usize,
    config: &EngineConfig,
) -> Result<SecantReport> {
    if n == 0 || d == 0 || k == 0 || h == 0 {
        return invalid("secant dimension needs n, d, k, h >= 1");
    }
    if config.trials == 0 {
        return invalid("at least one trial is required");
    }
    let field = config.field;
    field.require_above((d * k) as u64)?;
    let cols = binom_usize((n + d * k) as u64, n as i64)
        .ok_or_else(|| Error::Overflow("degree-dk monomials".into()))?;
    if cols > config.size_cap {
        return Err(Error::SizeCap {
            cols,
            cap: config.size_cap,
        });
    }
    let forms = binom_usize((n + d) as u64, n as i64).expect("fits");
    let expected = expected_secant_dim(n, d, k, h)?
        .to_i64()
        .ok_or_else(|| Error::Overflow("expected secant dimension".into()))?;
    let closed = secant_closed_form(n, d, k, h).and_then(|c| c.to_i64());
    let ceiling = closed.unwrap_or(expected);

    let mut best = i64::MIN;
    let mut used = 0;
    for trial in 0..config.trials {
        used += 1;
        let mut rng = seeded_rng(config.seed, trial as u64);
        let mut matrix = FpMatrix::zeros(field, 0, cols);
        for _ in 0..h {
            let f = field.random_nonzero_point(&mut rng, forms);
            matrix.vstack(&tangent_space_rows(field, n, d, k, &f)?);
        }
        best = best.max(matrix.rank() as i64 - 1);
        if best == ceiling {
            break;
        }
    }
    let (verdict, defective) = if best == expected {
        (Verdict::CertifiedExpected, Some(false))
    } else if Some(best) == closed {
        (Verdict::ClosedForm, Some(true))
    } else {
        (Verdict::InconclusiveExcess, None)
    };
    Ok(SecantReport {
        label: format!("Sec_{h}(V^{k}_{{{n},{d}}})"),
        n,
        d,
        k,
        h,
        ambient: cols - 1,
        computed_secant_dim: best,
        expected_secant_dim: expected,
        verdict,
        defective,
        cross_check: None,
        seed: config.seed,
        prime: field.modulus(),
        trials: used,
    })
}

/// Both sides of the comparison between `Sec_h(V^k_{n,d})` and
/// `L_{N,k}(V_{n,d}, 2^h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub agree: bool,
    pub secant: SecantReport,
    pub linear_system: DimensionReport,
}

/// Whether the secant variety and the linear system are simultaneously
/// of expected dimension or simultaneously not.
pub fn cross_check(
    n: usize,
    d: usize,
    k: usize,
    h: usize,
    config: &EngineConfig,
) -> Result<CrossCheck> {
    if k < 2 {
        return invalid("cross-check needs k >= 2");
    }
    let mut secant = secant_dimension(n, d, k, h, config)?;
    let linear_system = compute_dimension(
        &LinearSystemSpec::veronese_double_points(n, d, k, h)?,
        config,
    )?;
    let secant_expected = secant.computed_secant_dim == secant.expected_secant_dim;
    let system_expected = Some(linear_system.computed_dim) == linear_system.expected_dim;
    let agree = secant_expected == system_expected;
    secant.cross_check = Some(agree);
    Ok(CrossCheck {
        agree,
        secant,
        linear_system,
    })
}

/// `min(floor(C(N+k-3, N)/(N+1)) - 1, floor(C(n+kd, n)/(N+1)) - 1)`: general
/// forms of degree `dk` with at most this many summands `F_i^k` have a
/// unique such decomposition.
pub fn identifiability_bound(n: usize, d: usize, k: usize) -> Result<BigInt> {
    if k < 3 {
        return invalid(format!("the bound needs k >= 3, got k = {k}"));
    }
    let ambient = ambient_dim(n, d)?;
    let width = BigInt::from(ambient + 1);
    let first = binom((ambient + k - 3) as u64, ambient as i64) / &width - 1u32;
    let second = binom((n + k * d) as u64, n as i64) / &width - 1u32;
    Ok(first.min(second))
}
