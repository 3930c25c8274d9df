use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kveronese::bounds::{bounds_row, comparison_table, crossover, to_csv, to_json, to_svg};
use kveronese::conditions::Placement;
use kveronese::dimension::{
    compute_dimension, EngineConfig, LinearSystemSpec, Verdict, DEFAULT_SIZE_CAP, DEFAULT_TRIALS,
};
use kveronese::ledger::{ledger, ledger_bruteforce, max_h, BruteforceLedger, LedgerEntry};
use kveronese::modlinalg::{PrimeField, DEFAULT_PRIME};
use kveronese::secant::{cross_check, secant_dimension};
use kveronese::toric::{render_svg, standard_triangulation};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "kveronese",
    version,
    about = "Certify dimensions of secant varieties of (d,k)-Veronese varieties by exact rank computations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, env = "KVERONESE_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Seed from which every random choice is derived.
    #[arg(long, global = true, env = "KVERONESE_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of random specializations tried before giving up.
    #[arg(long, global = true, env = "KVERONESE_TRIALS", default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Largest number of matrix columns the engines will build.
    #[arg(long = "size-cap", global = true, env = "KVERONESE_SIZE_CAP", default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    /// Output format; each subcommand accepts a subset.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
enum System {
    /// `L_{N,k}(V_{n,d}, 2^h)`.
    V2h,
    /// `L_{N,k}(2^h)` for general points.
    AH,
    /// `L_{N,k}(Λ, 2^h)` for a linear `P^n` in `P^N`.
    Lambda2h,
    /// `L_{N,k}(V_{n,d}, a)`.
    Va,
    /// `L_{N,k}(Π, a)` for the union of planes of the standard triangulation.
    PiA,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PlacementArg {
    Coordinate,
    RandomParametrized,
}

impl From<PlacementArg> for Placement {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Coordinate => Placement::Coordinate,
            PlacementArg::RandomParametrized => Placement::RandomParametrized,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of a linear system of hypersurfaces.
    Dim {
        #[arg(long, value_enum, ignore_case = true)]
        system: System,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        /// Ambient dimension for `AH` and `Lambda2h`.
        #[arg(long = "N")]
        ambient: Option<usize>,
        #[arg(long, value_enum, default_value = "coordinate")]
        placement: PlacementArg,
    },
    /// Dimension of `Sec_h(V^k_{n,d})` by Terracini's lemma.
    Secant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: usize,
        /// Also compute `L_{N,k}(V_{n,d}, 2^h)` and compare the verdicts.
        #[arg(long = "cross-check")]
        cross_check: bool,
    },
    /// Identifiability and non-defectivity bounds for one `(n, d, k)`.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// The standard regular unimodular triangulation of `dΔ_n`.
    Toric {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Dimension bookkeeping of the degeneration, over ranges of parameters.
    Ledger {
        /// A value or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<usize>,
        /// Restrict to these `h`; all admissible values by default.
        #[arg(long, value_parser = parse_range)]
        h: Option<RangeInclusive<usize>>,
        /// Also compute every constituent system by rank.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Comparison of the bounds as `d` varies.
    Report {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_range, default_value = "2..10")]
        d: RangeInclusive<usize>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = |_| format!("expected an integer or a range a..b, got {s:?}");
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (
                lo.trim().parse().map_err(bad)?,
                hi.trim().parse().map_err(bad)?,
            );
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok(lo..=hi)
        }
        None => {
            let v = s.trim().parse().map_err(bad)?;
            Ok(v..=v)
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Output(String),
    Engine(kveronese::Error),
}

impl From<kveronese::Error> for Failure {
    fn from(e: kveronese::Error) -> Self {
        Failure::Engine(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Output(m) => write!(f, "error: {m}"),
            Failure::Engine(e) => write!(f, "error: {e}"),
        }
    }
}

/// Text for stdout and stderr together with the exit status.
#[derive(Default)]
struct Output {
    body: String,
    diagnostics: String,
    status: u8,
}

type Outcome = Result<Output, Failure>;

fn require(value: Option<usize>, flag: &str, system: System) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for --system {system:?}")))
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!(
            "--format {} is not available here; choose one of {}",
            name(f),
            allowed
                .iter()
                .map(|&a| name(a))
                .collect::<Vec<_>>()
                .join(", ")
        )))
    }
}

fn name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Svg => "svg",
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// One `key: value` line per scalar field, nested objects flattened with dots.
fn text<T: Serialize>(value: &T) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (key, inner) in map {
                    let path = if prefix.is_empty() {
                        key.clone()
                    } else {
                        format!("{prefix}.{key}")
                    };
                    walk(&path, inner, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk(
        "",
        &serde_json::to_value(value).expect("serializable"),
        &mut out,
    );
    out
}

fn status_of(verdict: Verdict) -> u8 {
    if verdict.is_conclusive() {
        0
    } else {
        2
    }
}

fn run_dim(cmd: &Command, config: &EngineConfig, format: Option<Format>) -> Outcome {
    let Command::Dim {
        system,
        n,
        d,
        k,
        h,
        a,
        ambient,
        placement,
    } = *cmd
    else {
        unreachable!()
    };
    let format = pick(format, Format::Text, &[Format::Text, Format::Json])?;
    let spec = match system {
        System::V2h => LinearSystemSpec::veronese_double_points(
            require(n, "n", system)?,
            require(d, "d", system)?,
            k,
            require(h, "h", system)?,
        )?,
        System::AH => LinearSystemSpec::double_points(
            require(ambient, "N", system)?,
            k,
            require(h, "h", system)?,
        )?,
        System::Lambda2h => LinearSystemSpec::lambda_double_points(
            require(ambient, "N", system)?,
            require(n, "n", system)?,
            k,
            require(h, "h", system)?,
            placement.into(),
        )?,
        System::Va => LinearSystemSpec::veronese_fat_point(
            require(n, "n", system)?,
            require(d, "d", system)?,
            k,
            require(a, "a", system)?,
        )?,
        System::PiA => LinearSystemSpec::planes_fat_point(
            require(n, "n", system)?,
            require(d, "d", system)?,
            k,
            require(a, "a", system)?,
        )?,
    };
    let report = compute_dimension(&spec, config)?;
    Ok(Output {
        body: emit(format, &report),
        status: status_of(report.verdict),
        ..Output::default()
    })
}

fn emit<T: Serialize>(format: Format, value: &T) -> String {
    match format {
        Format::Json => json(value),
        _ => text(value),
    }
}

fn run_secant(
    n: usize,
    d: usize,
    k: usize,
    h: usize,
    check: bool,
    config: &EngineConfig,
    format: Option<Format>,
) -> Outcome {
    let format = pick(format, Format::Text, &[Format::Text, Format::Json])?;
    if check {
        let c = cross_check(n, d, k, h, config)?;
        Ok(Output {
            body: emit(format, &c),
            status: status_of(c.secant.verdict).max(status_of(c.linear_system.verdict)),
            ..Output::default()
        })
    } else {
        let r = secant_dimension(n, d, k, h, config)?;
        Ok(Output {
            body: emit(format, &r),
            status: status_of(r.verdict),
            ..Output::default()
        })
    }
}

fn run_bounds(n: usize, d: usize, k: usize, format: Option<Format>) -> Outcome {
    let format = pick(
        format,
        Format::Text,
        &[Format::Text, Format::Json, Format::Csv],
    )?;
    let row = bounds_row(n, d, k)?;
    let body = match format {
        Format::Json => json(&row),
        Format::Csv => to_csv(std::slice::from_ref(&row))?,
        _ => text(&row),
    };
    Ok(Output {
        body,
        ..Output::default()
    })
}

fn run_toric(n: usize, d: usize, emit: Option<Emit>, format: Option<Format>) -> Outcome {
    let format = match emit {
        Some(Emit::Json) => Format::Json,
        Some(Emit::Svg) => Format::Svg,
        None => pick(format, Format::Json, &[Format::Json, Format::Svg])?,
    };
    let t = standard_triangulation(n, d)?;
    let certificate = t.verify()?;
    let diagnostics = format!(
        "{} unimodular cells, normalized volume {}, sink cell {}\n",
        certificate.cells, certificate.normalized_volume, certificate.sink_index
    );
    let body = match format {
        Format::Svg => render_svg(&t)?,
        _ => json(&t),
    };
    Ok(Output {
        body,
        diagnostics,
        status: 0,
    })
}

#[derive(Serialize)]
struct BruteforceRow {
    n: usize,
    d: usize,
    k: usize,
    h: usize,
    #[serde(rename = "N")]
    ambient: usize,
    dim_p: i64,
    dim_hat_p: i64,
    dim_f: i64,
    dim_hat_f: i64,
    dim_r: i64,
    ledger_total: i64,
    edim_general_fiber: i64,
    consistent: bool,
    verified: Option<bool>,
}

impl From<&BruteforceLedger> for BruteforceRow {
    fn from(b: &BruteforceLedger) -> Self {
        let e: &LedgerEntry = &b.entry;
        Self {
            n: e.n,
            d: e.d,
            k: e.k,
            h: e.h,
            ambient: e.ambient,
            dim_p: e.dim_p,
            dim_hat_p: e.dim_hat_p,
            dim_f: e.dim_f,
            dim_hat_f: e.dim_hat_f,
            dim_r: e.dim_r,
            ledger_total: e.ledger_total,
            edim_general_fiber: e.edim_general_fiber,
            consistent: e.consistent,
            verified: b.verified,
        }
    }
}

fn csv_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Failure::Output(format!("csv serialization failed: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Output(format!("csv serialization failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn run_ledger(
    ranges: [&RangeInclusive<usize>; 3],
    h: Option<&RangeInclusive<usize>>,
    bruteforce: bool,
    config: &EngineConfig,
    format: Option<Format>,
) -> Outcome {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Json])?;
    let mut entries = Vec::new();
    for n in ranges[0].clone() {
        for d in ranges[1].clone() {
            for k in ranges[2].clone() {
                let top = max_h(n, d, k)?;
                let hs = match h {
                    Some(r) if *r.end() > top => return Err(Failure::Usage(format!(
                        "h = {} exceeds the admissible bound {top} for (n, d, k) = ({n}, {d}, {k})",
                        r.end()
                    ))),
                    Some(r) => r.clone(),
                    None => 0..=top,
                };
                for h in hs {
                    entries.push((n, d, k, h));
                }
            }
        }
    }
    if bruteforce {
        let results = entries
            .iter()
            .map(|&(n, d, k, h)| ledger_bruteforce(n, d, k, h, config))
            .collect::<Result<Vec<BruteforceLedger>, _>>()?;
        let status = if results
            .iter()
            .all(|b| b.entry.consistent && b.verified == Some(true))
        {
            0
        } else {
            2
        };
        let body = match format {
            Format::Json => json(&results),
            _ => csv_rows(results.iter().map(BruteforceRow::from))?,
        };
        Ok(Output {
            body,
            status,
            ..Output::default()
        })
    } else {
        let results = entries
            .iter()
            .map(|&(n, d, k, h)| ledger(n, d, k, h))
            .collect::<Result<Vec<_>, _>>()?;
        let status = if results.iter().all(|e| e.consistent) {
            0
        } else {
            2
        };
        let body = match format {
            Format::Json => json(&results),
            _ => csv_rows(&results)?,
        };
        Ok(Output {
            body,
            status,
            ..Output::default()
        })
    }
}

fn run_report(n: usize, k: usize, d: &RangeInclusive<usize>, format: Option<Format>) -> Outcome {
    let format = pick(
        format,
        Format::Csv,
        &[Format::Csv, Format::Json, Format::Svg],
    )?;
    let rows = comparison_table(n, k, d.clone())?;
    let diagnostics = match crossover(&rows) {
        Some(star) => format!("theorem bound exceeds Nenashev's bound from d = {star} on\n"),
        None => "theorem bound does not overtake Nenashev's bound in this range\n".to_string(),
    };
    let body = match format {
        Format::Json => to_json(&rows),
        Format::Svg => to_svg(n, k, d.clone())?,
        _ => to_csv(&rows)?,
    };
    Ok(Output {
        body,
        diagnostics,
        status: 0,
    })
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    if g.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let config = EngineConfig {
        field: PrimeField::new(g.prime)?,
        seed: g.seed,
        trials: g.trials,
        size_cap: g.size_cap,
    };
    match &cli.command {
        cmd @ Command::Dim { .. } => run_dim(cmd, &config, g.format),
        &Command::Secant {
            n,
            d,
            k,
            h,
            cross_check,
        } => run_secant(n, d, k, h, cross_check, &config, g.format),
        &Command::Bounds { n, d, k } => run_bounds(n, d, k, g.format),
        &Command::Toric { n, d, emit } => run_toric(n, d, emit, g.format),
        Command::Ledger {
            n,
            d,
            k,
            h,
            bruteforce,
        } => run_ledger([n, d, k], h.as_ref(), *bruteforce, &config, g.format),
        Command::Report { n, k, d } => run_report(*n, *k, d, g.format),
    }
}

/// Parses `args` and runs the command without touching the process streams.
fn execute<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    diagnostics: text,
                    status: 1,
                    ..Output::default()
                }
            } else {
                Output {
                    body: text,
                    ..Output::default()
                }
            };
        }
    };
    run(&cli).unwrap_or_else(|e| Output {
        diagnostics: format!("{e}\n"),
        status: 1,
        ..Output::default()
    })
}

fn main() -> ExitCode {
    let out = execute(std::env::args_os());
    eprint!("{}", out.diagnostics);
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(out.body.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    ExitCode::from(out.status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kveronese(args: &[&str]) -> Output {
        execute(std::iter::once("kveronese").chain(args.iter().copied()))
    }

    fn stdout(o: &Output) -> String {
        o.body.clone()
    }

    fn json(o: &Output) -> Value {
        serde_json::from_str(&o.body).expect("valid json on stdout")
    }

    #[test]
    fn dim_certifies_expected() {
        let o = kveronese(&[
            "dim", "--system", "V2h", "--n", "1", "--d", "2", "--k", "4", "--h", "1",
        ]);
        assert_eq!(o.status, 0);
        assert!(stdout(&o).contains("verdict: Certified-Expected"));
    }

    #[test]
    fn dim_reports_closed_form_at_exception() {
        let o = kveronese(&[
            "dim", "--system", "ah", "--N", "2", "--k", "4", "--h", "5", "--format", "json",
        ]);
        assert_eq!(o.status, 0);
        let v = json(&o);
        assert_eq!(v["verdict"], "Closed-Form");
        assert_eq!(v["computed_dim"], 0);
        assert_eq!(v["expected_dim"], -1);
    }

    #[test]
    fn dim_beyond_the_cubic_bound_is_still_computed() {
        let o = kveronese(&[
            "dim", "--system", "V2h", "--n", "2", "--d", "3", "--k", "3", "--h", "1", "--format",
            "json",
        ]);
        let v = json(&o);
        assert_eq!(v["computed_dim"], v["expected_dim"]);
        assert_eq!(o.status, 0);
    }

    #[test]
    fn inconclusive_exits_with_two() {
        // cubics through a line with two general double points: the line times a double line
        let o = kveronese(&[
            "dim", "--system", "Lambda2h", "--N", "2", "--n", "1", "--k", "3", "--h", "2",
            "--format", "json",
        ]);
        assert_eq!(o.status, 2);
        assert_eq!(json(&o)["verdict"], "Inconclusive-Excess");
    }

    #[test]
    fn undefined_formula_exits_with_two() {
        let o = kveronese(&[
            "dim", "--system", "PiA", "--n", "1", "--d", "2", "--k", "2", "--a", "3",
        ]);
        assert_eq!(o.status, 2);
        assert!(stdout(&o).contains("Formula-Undefined"));
    }

    #[test]
    fn usage_errors_exit_with_one() {
        for args in [
            vec!["dim", "--k", "2"],
            vec!["dim", "--system", "Va", "--n", "1", "--d", "2", "--k", "2"],
            vec!["--prime", "4", "bounds", "--n", "2", "--d", "3", "--k", "5"],
            vec![
                "--prime", "5", "dim", "--system", "V2h", "--n", "1", "--d", "2", "--k", "4",
                "--h", "1",
            ],
            vec![
                "bounds", "--n", "2", "--d", "3", "--k", "5", "--format", "svg",
            ],
            vec!["toric", "--n", "3", "--d", "2", "--emit", "svg"],
            vec!["ledger", "--n", "1", "--d", "2", "--k", "3"],
            vec![
                "--size-cap",
                "10",
                "dim",
                "--system",
                "AH",
                "--N",
                "4",
                "--k",
                "4",
                "--h",
                "1",
            ],
            vec!["frobnicate"],
        ] {
            let o = kveronese(&args);
            assert_eq!(o.status, 1, "{args:?}");
            assert!(o.body.is_empty(), "{args:?}");
            assert!(!o.diagnostics.is_empty(), "{args:?}");
        }
    }

    #[test]
    fn help_exits_cleanly() {
        let o = kveronese(&["--help"]);
        assert_eq!(o.status, 0);
        assert!(stdout(&o).contains("secant"));
    }

    #[test]
    fn secant_of_conics() {
        let o = kveronese(&[
            "secant", "--n", "1", "--d", "2", "--k", "2", "--h", "2", "--format", "json",
        ]);
        assert_eq!(o.status, 0);
        let v = json(&o);
        assert_eq!(v["computed_secant_dim"], 4);
        assert_eq!(v["defective"], false);
    }

    #[test]
    fn secant_cross_check() {
        let o = kveronese(&[
            "secant",
            "--n",
            "1",
            "--d",
            "2",
            "--k",
            "4",
            "--h",
            "1",
            "--cross-check",
            "--format",
            "json",
        ]);
        assert_eq!(o.status, 0);
        let v = json(&o);
        assert_eq!(v["agree"], true);
        assert_eq!(v["secant"]["cross_check"], true);
        assert_eq!(v["linear_system"]["verdict"], "Certified-Expected");
    }

    #[test]
    fn toric_svg_has_nine_triangles() {
        let o = kveronese(&["toric", "--n", "2", "--d", "3", "--emit", "svg"]);
        assert_eq!(o.status, 0);
        assert_eq!(stdout(&o).matches("<polygon").count(), 9);
    }

    #[test]
    fn toric_json_schema() {
        let o = kveronese(&["toric", "--n", "2", "--d", "3", "--format", "json"]);
        let v = json(&o);
        assert_eq!(v["n"], 2);
        assert_eq!(v["d"], 3);
        assert_eq!(v["simplices"].as_array().unwrap().len(), 9);
        assert_eq!(v["sink_index"], 0);
    }

    #[test]
    fn report_rows() {
        let o = kveronese(&[
            "report", "--n", "2", "--k", "5", "--d", "2..10", "--format", "csv",
        ]);
        assert_eq!(o.status, 0);
        let text = stdout(&o);
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("d,main_bound,thm2_bound,nenashev_bound,generic_rank_num,generic_rank_den,fos_bound")
        );
        assert_eq!(lines.count(), 9);

        let o = kveronese(&[
            "report", "--n", "2", "--k", "5", "--d", "2..10", "--format", "json",
        ]);
        assert_eq!(json(&o).as_array().unwrap().len(), 9);

        let o = kveronese(&["report", "--n", "2", "--k", "5", "--format", "svg"]);
        assert!(stdout(&o).starts_with("<svg"));
    }

    #[test]
    fn bounds_row() {
        let o = kveronese(&[
            "bounds", "--n", "2", "--d", "3", "--k", "5", "--format", "json",
        ]);
        let v = json(&o);
        assert_eq!(v["main_bound"], 5);
        assert_eq!(v["nenashev_bound"], 3);
    }

    #[test]
    fn ledger_csv_and_json() {
        let o = kveronese(&["ledger", "--n", "1", "--d", "2", "--k", "4..5"]);
        assert_eq!(o.status, 0);
        let text = stdout(&o);
        assert!(text.starts_with("n,d,k,h,N,dim_p,dim_hat_p,dim_f,dim_hat_f,dim_r,ledger_total,edim_general_fiber,consistent\n"));
        assert_eq!(text.lines().count(), 1 + 2 + 3);

        let o = kveronese(&[
            "ledger",
            "--n",
            "1",
            "--d",
            "2",
            "--k",
            "4",
            "--h",
            "1",
            "--bruteforce",
            "--format",
            "json",
        ]);
        assert_eq!(o.status, 0);
        let v = json(&o);
        assert_eq!(v[0]["verified"], true);
        assert_eq!(v[0]["constituents"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn prime_override_is_reported() {
        let o = kveronese(&[
            "--prime", "1000003", "dim", "--system", "Va", "--n", "1", "--d", "2", "--k", "3",
            "--a", "2", "--format", "json",
        ]);
        assert_eq!(o.status, 0);
        assert_eq!(json(&o)["prime"], 1_000_003);
    }
}
