//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use kveronese::apolarity::{
    conditions_count_planes_plus_fatpoint, dim_l_planes_fatpoint, expected_dim_v_fatpoint,
};
use kveronese::bounds::{
    bound_main, bound_nenashev, comparison_table, crossover, growth_ratios, one_quarter, within,
};
use kveronese::combinatorics::{ambient_dim, binom, binom_usize, MonomialBasis};
use kveronese::conditions::build_veronese_block;
use kveronese::dimension::{
    certify_main_theorem, compute_dimension, is_ah_exception, quadric_double_points_dim,
    EngineConfig, LinearSystemSpec, Verdict,
};
use kveronese::ledger::{ledger, ledger_bruteforce, max_h};
use kveronese::modlinalg::PrimeField;
use kveronese::secant::cross_check;
use kveronese::toric::standard_triangulation;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

type Verdicts = Result<String, String>;

/// Number, title, time budget and check.
type Criterion = (u32, &'static str, Duration, fn() -> Verdicts);

const SEED: u64 = 2024;

fn config() -> EngineConfig {
    EngineConfig::with_seed(SEED)
}

/// Collects the failures of a sweep into a single verdict.
fn summarize(checked: usize, failures: Vec<String>, what: &str) -> Verdicts {
    if failures.is_empty() {
        Ok(format!("{checked} {what}"))
    } else {
        let shown: Vec<_> = failures.iter().take(8).cloned().collect();
        Err(format!(
            "{} of {checked} {what} failed: {}{}",
            failures.len(),
            shown.join("; "),
            if failures.len() > shown.len() {
                "; ..."
            } else {
                ""
            }
        ))
    }
}

fn veronese_grid() -> Vec<(usize, usize, u32)> {
    let mut grid = Vec::new();
    for n in 1..=2 {
        for d in 1..=3 {
            for k in 1..=3 {
                grid.push((n, d, k));
            }
        }
    }
    grid
}

fn criterion_1() -> Verdicts {
    let f = PrimeField::default();
    let failures: Vec<String> = veronese_grid()
        .par_iter()
        .filter_map(|&(n, d, k)| {
            let basis = MonomialBasis::new(ambient_dim(n, d).ok()? + 1, k);
            let rank = build_veronese_block(f, &basis, n, d).ok()?.rank();
            let target = binom_usize((n + k as usize * d) as u64, n as i64)?;
            (rank != target).then(|| format!("(n,d,k)=({n},{d},{k}) rank {rank} != {target}"))
        })
        .collect();
    summarize(
        veronese_grid().len(),
        failures,
        "Veronese blocks of full rank C(n+kd,n)",
    )
}

fn criterion_2() -> Verdicts {
    let f = PrimeField::default();
    let failures: Vec<String> = veronese_grid()
        .par_iter()
        .filter_map(|&(n, d, k)| {
            let ambient = ambient_dim(n, d).ok()?;
            let basis = MonomialBasis::new(ambient + 1, k);
            let block = build_veronese_block(f, &basis, n, d).ok()?;
            let kernel = BigInt::from(block.rows.nullity());
            let closed = binom((ambient + k as usize) as u64, k as i64)
                - binom((n + d * k as usize) as u64, n as i64);
            (kernel != closed).then(|| format!("(n,d,k)=({n},{d},{k}) kernel {kernel} != {closed}"))
        })
        .collect();
    summarize(veronese_grid().len(), failures, "kernels equal to dim(E)")
}

fn fat_grid() -> Vec<(usize, usize, usize, usize)> {
    let mut grid = Vec::new();
    for n in 1..=2 {
        for d in 1..=3 {
            for k in 1..=4 {
                for a in 1..=k {
                    grid.push((n, d, k, a));
                }
            }
        }
    }
    grid
}

fn criterion_3() -> Verdicts {
    let grid = fat_grid();
    let failures: Vec<String> = grid
        .par_iter()
        .filter_map(|&(n, d, k, a)| {
            let spec = LinearSystemSpec::planes_fat_point(n, d, k, a).ok()?;
            let report = match compute_dimension(&spec, &config()) {
                Ok(r) => r,
                Err(e) => return Some(format!("(n,d,k,a)=({n},{d},{k},{a}) {e}")),
            };
            let closed = dim_l_planes_fatpoint(n, d, k, a).ok()?;
            let t = standard_triangulation(n, d).ok()?;
            let ambient = ambient_dim(n, d).ok()?;
            let counted = binom((ambient + k) as u64, ambient as i64)
                - conditions_count_planes_plus_fatpoint(n, d, k, a, &t).ok()?
                - 1u32;
            let computed = BigInt::from(report.computed_dim);
            (computed != closed || counted != closed)
                .then(|| format!("(n,d,k,a)=({n},{d},{k},{a}) computed {computed}, apolarity {counted}, closed {closed}"))
        })
        .collect();
    summarize(
        grid.len(),
        failures,
        "planes-plus-fat-point systems equal to the closed form",
    )
}

fn criterion_4() -> Verdicts {
    let grid = fat_grid();
    let seeds = [SEED, 1, 2, 3, 4];
    let failures: Vec<String> = grid
        .par_iter()
        .flat_map_iter(|&(n, d, k, a)| {
            let mut out = Vec::new();
            let spec = LinearSystemSpec::veronese_fat_point(n, d, k, a).expect("valid");
            let expected = expected_dim_v_fatpoint(n, d, k, a).expect("a <= k");
            let report = compute_dimension(&spec, &config()).expect("computable");
            if BigInt::from(report.computed_dim) != expected
                || report.verdict != Verdict::CertifiedExpected
            {
                out.push(format!(
                    "(n,d,k,a)=({n},{d},{k},{a}) computed {} expected {expected}",
                    report.computed_dim
                ));
            }
            for seed in seeds {
                let single = EngineConfig {
                    trials: 1,
                    ..EngineConfig::with_seed(seed)
                };
                let r = compute_dimension(&spec, &single).expect("computable");
                if BigInt::from(r.computed_dim) < expected {
                    out.push(format!(
                        "(n,d,k,a)=({n},{d},{k},{a}) seed {seed} below expected"
                    ));
                }
            }
            out
        })
        .collect();
    summarize(
        grid.len(),
        failures,
        "Veronese-plus-fat-point systems of expected dimension on every seed",
    )
}

fn criterion_5() -> Verdicts {
    let mut cases = Vec::new();
    for n in 1..=2 {
        for d in 1..=3 {
            for k in 3..=5 {
                cases.push((n, d, k));
            }
        }
    }
    let results: Vec<(usize, Vec<String>)> = cases
        .par_iter()
        .map(|&(n, d, k)| {
            let reports = certify_main_theorem(n, d, k, None, &config()).expect("computable");
            let bad = reports
                .iter()
                .enumerate()
                .filter(|(_, r)| {
                    r.verdict != Verdict::CertifiedExpected
                        || Some(r.computed_dim) != r.expected_dim
                })
                .map(|(h, r)| {
                    format!(
                        "(n,d,k,h)=({n},{d},{k},{h}) computed {} {}",
                        r.computed_dim, r.verdict
                    )
                })
                .collect();
            (reports.len(), bad)
        })
        .collect();
    let checked = results.iter().map(|(c, _)| c).sum();
    summarize(
        checked,
        results.into_iter().flat_map(|(_, b)| b).collect(),
        "systems certified expected",
    )
}

fn criterion_6() -> Verdicts {
    let mut cases = Vec::new();
    for n in 1..=2usize {
        for d in 1..=3usize {
            let ambient = ambient_dim(n, d).expect("small");
            for k in 2..=4usize {
                let space = binom_usize((n + d * k) as u64, n as i64).expect("small");
                for h in 1..=space.div_ceil(ambient + 1) {
                    cases.push((n, d, k, h));
                }
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(n, d, k, h)| {
            let c = cross_check(n, d, k, h, &config()).expect("computable");
            (!c.agree).then(|| {
                format!(
                    "(n,d,k,h)=({n},{d},{k},{h}) secant {}/{} vs system {}/{}",
                    c.secant.computed_secant_dim,
                    c.secant.expected_secant_dim,
                    c.linear_system.computed_dim,
                    c.linear_system.expected_dim.unwrap_or(i64::MIN)
                )
            })
        })
        .collect();
    summarize(
        cases.len(),
        failures,
        "secant and linear-system verdicts agreeing",
    )
}

fn criterion_7() -> Verdicts {
    let mut cases = Vec::new();
    for ambient in 1..=5usize {
        for k in 1..=4usize {
            for h in 0..=12usize {
                cases.push((ambient, k, h));
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(ambient, k, h)| {
            let spec = LinearSystemSpec::double_points(ambient, k, h).expect("valid");
            let r = compute_dimension(&spec, &config()).expect("computable");
            let expected = r.expected_dim.expect("defined");
            let tag = format!("(N,k,h)=({ambient},{k},{h})");
            if is_ah_exception(ambient, k, h) {
                if r.computed_dim <= expected {
                    return Some(format!(
                        "{tag} exception not detected: computed {}",
                        r.computed_dim
                    ));
                }
                if k == 2 {
                    let q = quadric_double_points_dim(ambient, h).expect("in range");
                    if BigInt::from(r.computed_dim) != q {
                        return Some(format!("{tag} quadrics computed {} != {q}", r.computed_dim));
                    }
                }
                None
            } else {
                (r.computed_dim != expected || r.verdict != Verdict::CertifiedExpected)
                    .then(|| format!("{tag} computed {} expected {expected}", r.computed_dim))
            }
        })
        .collect();
    summarize(
        cases.len(),
        failures,
        "plain double-point systems matching the classification",
    )
}

fn criterion_8() -> Verdicts {
    let start = Instant::now();
    let mut cases = Vec::new();
    for n in 1..=3 {
        for d in 2..=4 {
            for k in 4..=8 {
                for h in 0..=max_h(n, d, k).expect("small") {
                    cases.push((n, d, k, h));
                }
            }
        }
    }
    let identity: Vec<_> = cases
        .par_iter()
        .map(|&(n, d, k, h)| ledger(n, d, k, h).expect("admissible"))
        .collect();
    let identity_time = start.elapsed();
    let mut failures: Vec<String> = identity
        .iter()
        .filter(|e| !e.consistent)
        .map(|e| {
            format!(
                "identity fails at (n,d,k,h)=({},{},{},{})",
                e.n, e.d, e.k, e.h
            )
        })
        .collect();
    if identity_time >= Duration::from_secs(1) {
        failures.push(format!("identity sweep took {identity_time:?}"));
    }

    let mut brute = Vec::new();
    for n in 1..=2 {
        for k in 4..=5 {
            for h in 0..=max_h(n, 2, k).expect("small") {
                brute.push((n, 2, k, h));
            }
        }
    }
    let brute_failures: Vec<String> = brute
        .par_iter()
        .filter_map(|&(n, d, k, h)| {
            let b = ledger_bruteforce(n, d, k, h, &config()).expect("computable");
            (b.verified != Some(true)).then(|| {
                let off: Vec<String> = b
                    .constituents
                    .iter()
                    .filter(|c| !c.matches)
                    .map(|c| {
                        format!(
                            "{} computed {} closed {}",
                            c.name, c.report.computed_dim, c.closed_form
                        )
                    })
                    .collect();
                format!("bruteforce (n,d,k,h)=({n},{d},{k},{h}): {}", off.join(", "))
            })
        })
        .collect();
    failures.extend(brute_failures);
    summarize(
        identity.len() + brute.len(),
        failures,
        "ledger identities and constituent rank checks",
    )
}

fn criterion_9() -> Verdicts {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=3usize {
        for d in 1..=4usize {
            checked += 1;
            let t = match standard_triangulation(n, d) {
                Ok(t) => t,
                Err(e) => {
                    failures.push(format!("(n,d)=({n},{d}) {e}"));
                    continue;
                }
            };
            match t.verify() {
                Ok(c)
                    if c.cells == d.pow(n as u32)
                        && c.normalized_volume == d.pow(n as u32) as u64 => {}
                Ok(c) => failures.push(format!("(n,d)=({n},{d}) {} cells", c.cells)),
                Err(e) => failures.push(format!("(n,d)=({n},{d}) {e}")),
            }
        }
    }
    let figure = standard_triangulation(2, 3)
        .map(|t| t.simplices.len())
        .unwrap_or(0);
    if figure != 9 {
        failures.push(format!("3Δ_2 has {figure} cells"));
    }
    summarize(
        checked,
        failures,
        "triangulations unimodular, face-to-face, single sink",
    )
}

fn criterion_10() -> Verdicts {
    let mut failures = Vec::new();
    let rows = comparison_table(2, 5, 2..=14).expect("valid");
    for r in rows.iter().filter(|r| (4..=10).contains(&r.d)) {
        if r.thm2_bound <= r.nenashev_bound {
            failures.push(format!(
                "d={} thm2 {} <= nenashev {}",
                r.d, r.thm2_bound, r.nenashev_bound
            ));
        }
    }
    let star = crossover(&rows);
    if star.is_none_or(|s| s > 4) {
        failures.push(format!("crossover {star:?} beyond d = 4"));
    }
    let tail: Vec<BigInt> = (10..=20)
        .map(|d| bound_nenashev(2, d, 5).expect("valid"))
        .collect();
    if !tail.iter().all(|b| b.sign() == num_bigint::Sign::Minus)
        || !tail.windows(2).all(|w| w[1] < w[0])
    {
        failures.push("Nenashev's bound is not eventually negative and decreasing".into());
    }
    let mains: Vec<BigInt> = (6..=14)
        .map(|d| bound_main(2, d, 5).expect("valid"))
        .collect();
    if !mains.windows(2).all(|w| w[1] > w[0]) {
        failures.push("main bound is not increasing on d = 6..14".into());
    }
    let ratios = growth_ratios(2, 5, 6..=14).expect("valid");
    let hi = BigRational::new(BigInt::from(2), BigInt::from(5));
    let lo = one_quarter();
    if !ratios.iter().all(|(_, q)| within(q, &lo, &hi)) {
        failures.push("ratio main/d^2 leaves [1/4, 2/5]".into());
    }
    if !ratios.windows(2).all(|w| w[1].1 < w[0].1) {
        failures.push("ratio main/d^2 is not strictly decreasing".into());
    }
    let shown: Vec<String> = ratios
        .iter()
        .map(|(d, q)| {
            format!(
                "{d}:{:.4}",
                q.numer().to_string().parse::<f64>().unwrap()
                    / q.denom().to_string().parse::<f64>().unwrap()
            )
        })
        .collect();
    if failures.is_empty() {
        Ok(format!(
            "thm2 > Nenashev on d = 4..10, crossover d* = {} <= 4, main/d^2 = [{}] in [1/4, 2/5]",
            star.expect("checked"),
            shown.join(", ")
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_11() -> Verdicts {
    let bin = env!("CARGO_BIN_EXE_kveronese");
    let invocations: Vec<Vec<&str>> = vec![
        vec![
            "dim", "--system", "V2h", "--n", "1", "--d", "2", "--k", "4", "--h", "1",
        ],
        vec![
            "dim", "--system", "AH", "--N", "2", "--k", "4", "--h", "5", "--format", "json",
        ],
        vec![
            "dim",
            "--system",
            "Lambda2h",
            "--N",
            "4",
            "--n",
            "2",
            "--k",
            "3",
            "--h",
            "2",
            "--placement",
            "random-parametrized",
            "--seed",
            "99",
        ],
        vec![
            "dim", "--system", "Va", "--n", "2", "--d", "2", "--k", "3", "--a", "2", "--prime",
            "1000003",
        ],
        vec![
            "dim", "--system", "PiA", "--n", "2", "--d", "3", "--k", "2", "--a", "2", "--format",
            "json",
        ],
        vec![
            "secant",
            "--n",
            "1",
            "--d",
            "2",
            "--k",
            "3",
            "--h",
            "2",
            "--cross-check",
            "--format",
            "json",
        ],
        vec![
            "secant", "--n", "2", "--d", "2", "--k", "2", "--h", "2", "--seed", "7",
        ],
        vec![
            "bounds", "--n", "2", "--d", "3", "--k", "5", "--format", "csv",
        ],
        vec!["toric", "--n", "2", "--d", "3", "--emit", "svg"],
        vec!["toric", "--n", "3", "--d", "2", "--format", "json"],
        vec![
            "ledger",
            "--n",
            "1..2",
            "--d",
            "2",
            "--k",
            "4..5",
            "--bruteforce",
            "--format",
            "json",
        ],
        vec![
            "report", "--n", "2", "--k", "5", "--d", "2..10", "--format", "svg",
        ],
        vec![
            "report", "--n", "2", "--k", "5", "--d", "2..10", "--format", "csv",
        ],
    ];
    let failures: Vec<String> = invocations
        .par_iter()
        .filter_map(|args| {
            let run = || {
                Command::new(bin)
                    .args(args)
                    .env_remove("KVERONESE_SEED")
                    .env_remove("KVERONESE_PRIME")
                    .output()
                    .expect("binary runs")
            };
            let (a, b) = (run(), run());
            let line = args.join(" ");
            if a.stdout.is_empty() {
                Some(format!("`{line}` printed nothing"))
            } else if a.stdout != b.stdout || a.status.code() != b.status.code() {
                Some(format!("`{line}` differs between runs"))
            } else {
                None
            }
        })
        .collect();
    summarize(
        invocations.len(),
        failures,
        "CLI invocations byte-identical on repetition",
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            1,
            "Veronese blocks have rank C(n+kd,n)",
            Duration::from_secs(30),
            criterion_1,
        ),
        (
            2,
            "Veronese block kernels have dimension dim(E)",
            Duration::from_secs(30),
            criterion_2,
        ),
        (
            3,
            "planes plus fat point match the toric closed form",
            Duration::from_secs(120),
            criterion_3,
        ),
        (
            4,
            "Veronese plus fat point has expected dimension",
            Duration::from_secs(120),
            criterion_4,
        ),
        (
            5,
            "double points on V certified up to the main bound",
            Duration::from_secs(300),
            criterion_5,
        ),
        (
            6,
            "secant and linear-system verdicts agree",
            Duration::from_secs(300),
            criterion_6,
        ),
        (
            7,
            "plain double points follow the classification",
            Duration::from_secs(180),
            criterion_7,
        ),
        (
            8,
            "degeneration ledger closes and matches ranks",
            Duration::from_secs(181),
            criterion_8,
        ),
        (
            9,
            "standard triangulations are unimodular with one sink",
            Duration::from_secs(10),
            criterion_9,
        ),
        (
            10,
            "bound comparison and growth",
            Duration::from_secs(1),
            criterion_10,
        ),
        (
            11,
            "CLI output is reproducible",
            Duration::from_secs(300),
            criterion_11,
        ),
    ];
    let mut failed = 0;
    for (id, title, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}, but took {elapsed:.1?} > {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS [{elapsed:.1?}] {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{elapsed:.1?}] {title}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
