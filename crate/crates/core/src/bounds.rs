//! Non-defectivity and identifiability bounds for `V^k_{n,d}` as functions
//! of `d`, with a comparison table and chart.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::combinatorics::{ambient_dim, binom};
use crate::dimension::main_bound;
use crate::error::{invalid, Result};
use crate::secant::identifiability_bound;

/// `floor(C(N+k-3, N) / (N+1))`.
pub fn bound_main(n: usize, d: usize, k: usize) -> Result<BigInt> {
    main_bound(n, d, k)
}

/// `floor(C(n+dk, n)/C(n+d, n) - C(n+d, n))`, negative when vacuous.
pub fn bound_nenashev(n: usize, d: usize, k: usize) -> Result<BigInt> {
    if n == 0 || d == 0 || k == 0 {
        return invalid("the bound needs n, d, k >= 1");
    }
    let c = binom((n + d) as u64, n as i64);
    let top = binom((n + d * k) as u64, n as i64) - &c * &c;
    Ok(top.div_floor(&c))
}

/// `C(n+kd, n) / C(n+d, n)`, reduced.
pub fn generic_rank_expected(n: usize, d: usize, k: usize) -> BigRational {
    BigRational::new(
        binom((n + k * d) as u64, n as i64),
        binom((n + d) as u64, n as i64),
    )
}

fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

fn as_number<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// One row of the comparison table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub d: usize,
    #[serde(serialize_with = "as_number")]
    pub main_bound: BigInt,
    #[serde(serialize_with = "as_number")]
    pub thm2_bound: BigInt,
    #[serde(serialize_with = "as_number")]
    pub nenashev_bound: BigInt,
    #[serde(serialize_with = "as_number")]
    pub generic_rank_num: BigInt,
    #[serde(serialize_with = "as_number")]
    pub generic_rank_den: BigInt,
    #[serde(serialize_with = "as_number")]
    pub fos_bound: BigInt,
}

impl BoundsRow {
    pub fn generic_rank(&self) -> BigRational {
        BigRational::new(self.generic_rank_num.clone(), self.generic_rank_den.clone())
    }

    pub fn generic_rank_ceil(&self) -> BigInt {
        ceil(&self.generic_rank())
    }
}

pub fn bounds_row(n: usize, d: usize, k: usize) -> Result<BoundsRow> {
    let rank = generic_rank_expected(n, d, k);
    Ok(BoundsRow {
        d,
        main_bound: bound_main(n, d, k)?,
        thm2_bound: identifiability_bound(n, d, k)?,
        nenashev_bound: bound_nenashev(n, d, k)?,
        generic_rank_num: rank.numer().clone(),
        generic_rank_den: rank.denom().clone(),
        fos_bound: BigInt::from(k).pow(n as u32),
    })
}

pub fn comparison_table(
    n: usize,
    k: usize,
    d_range: RangeInclusive<usize>,
) -> Result<Vec<BoundsRow>> {
    if k < 3 {
        return invalid(format!("the comparison needs k >= 3, got k = {k}"));
    }
    if *d_range.start() == 0 || d_range.is_empty() {
        return invalid("the d range must be nonempty and start at 1 or above");
    }
    d_range.map(|d| bounds_row(n, d, k)).collect()
}

/// The smallest `d` of the table from which the identifiability bound stays
/// strictly above the Nenashev bound.
pub fn crossover(rows: &[BoundsRow]) -> Option<usize> {
    let mut answer = None;
    for row in rows.iter().rev() {
        if row.thm2_bound > row.nenashev_bound {
            answer = Some(row.d);
        } else {
            break;
        }
    }
    answer
}

pub fn to_csv(rows: &[BoundsRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json(rows: &[BoundsRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

/// The un-floored curves, as `(d, value)` samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Curves {
    pub main: Vec<(usize, f64)>,
    pub thm2: Vec<(usize, f64)>,
    pub nenashev: Vec<(usize, f64)>,
    pub generic_rank: Vec<(usize, f64)>,
}

fn ratio(num: BigInt, den: BigInt) -> f64 {
    BigRational::new(num, den).to_f64().unwrap_or(f64::NAN)
}

pub fn real_curves(n: usize, k: usize, d_range: RangeInclusive<usize>) -> Result<Curves> {
    if k < 3 {
        return invalid(format!("the comparison needs k >= 3, got k = {k}"));
    }
    let mut curves = Curves {
        main: Vec::new(),
        thm2: Vec::new(),
        nenashev: Vec::new(),
        generic_rank: Vec::new(),
    };
    for d in d_range {
        let ambient = ambient_dim(n, d)?;
        let width = BigInt::from(ambient + 1);
        let main = ratio(
            binom((ambient + k - 3) as u64, ambient as i64),
            width.clone(),
        );
        let second = ratio(binom((n + k * d) as u64, n as i64), width);
        let c = binom((n + d) as u64, n as i64);
        let rank = ratio(binom((n + d * k) as u64, n as i64), c.clone());
        curves.main.push((d, main));
        curves.thm2.push((d, (main - 1.0).min(second - 1.0)));
        curves
            .nenashev
            .push((d, rank - c.to_f64().unwrap_or(f64::NAN)));
        curves.generic_rank.push((d, rank));
    }
    Ok(curves)
}

/// An 800x600 line chart of the curves with a base-10 logarithmic `y`
/// axis; non-positive values are left out.
pub fn to_svg(n: usize, k: usize, d_range: RangeInclusive<usize>) -> Result<String> {
    let curves = real_curves(n, k, d_range.clone())?;
    let (width, height) = (800.0, 600.0);
    let (left, right, top, bottom) = (70.0, 160.0, 40.0, 60.0);
    let (d0, d1) = (*d_range.start() as f64, *d_range.end() as f64);
    let all = [
        &curves.main,
        &curves.thm2,
        &curves.nenashev,
        &curves.generic_rank,
    ];
    let positive: Vec<f64> = all
        .iter()
        .flat_map(|c| c.iter().map(|&(_, v)| v))
        .filter(|v| *v > 0.0)
        .collect();
    let lo = positive
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        .max(1e-3)
        .log10()
        .floor();
    let hi = positive
        .iter()
        .cloned()
        .fold(1.0f64, f64::max)
        .log10()
        .ceil()
        .max(lo + 1.0);
    let span_d = if d1 > d0 { d1 - d0 } else { 1.0 };
    let px = |d: f64| left + (d - d0) / span_d * (width - left - right);
    let py = |v: f64| top + (hi - v.log10()) / (hi - lo) * (height - top - bottom);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{:.1}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">n = {n}, k = {k}</text>"#,
        (left + width - right) / 2.0
    )
    .unwrap();
    let axis_bottom = height - bottom;
    writeln!(
        out,
        r#"<line x1="{left}" y1="{axis_bottom}" x2="{:.1}" y2="{axis_bottom}" stroke="black"/>"#,
        width - right
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{left}" y1="{top}" x2="{left}" y2="{axis_bottom}" stroke="black"/>"#
    )
    .unwrap();
    let mut e = lo;
    while e <= hi {
        let y = py(10f64.powf(e));
        writeln!(
            out,
            r##"<line x1="{left}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#dddddd"/>"##,
            width - right
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">1e{}</text>"#,
            left - 6.0,
            y + 4.0,
            e as i64
        )
        .unwrap();
        e += 1.0;
    }
    for d in d_range.clone() {
        let x = px(d as f64);
        writeln!(
            out,
            r#"<text x="{x:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{d}</text>"#,
            axis_bottom + 18.0
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">d</text>"#,
        (left + width - right) / 2.0,
        height - 16.0
    )
    .unwrap();

    let series: [(&str, &str, &str, &Vec<(usize, f64)>); 4] = [
        ("main bound", "#1f4fbf", "6 4", &curves.main),
        ("identifiability bound", "#1f4fbf", "", &curves.thm2),
        ("Nenashev bound", "#c0392b", "", &curves.nenashev),
        ("generic rank", "#2e8b57", "", &curves.generic_rank),
    ];
    for (i, (name, color, dash, points)) in series.iter().enumerate() {
        let mut runs: Vec<Vec<String>> = vec![Vec::new()];
        for &(d, v) in points.iter() {
            if v > 0.0 && v.is_finite() {
                runs.last_mut()
                    .unwrap()
                    .push(format!("{:.1},{:.1}", px(d as f64), py(v)));
            } else if !runs.last().unwrap().is_empty() {
                runs.push(Vec::new());
            }
        }
        for run in runs.iter().filter(|r| !r.is_empty()) {
            let dash_attr = if dash.is_empty() {
                String::new()
            } else {
                format!(r#" stroke-dasharray="{dash}""#)
            };
            writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash_attr}/>"#,
                run.join(" ")
            )
            .unwrap();
        }
        let ly = top + 20.0 + 22.0 * i as f64;
        let lx = width - right + 12.0;
        writeln!(
            out,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"{}/>"#,
            lx + 24.0,
            if dash.is_empty() { String::new() } else { format!(r#" stroke-dasharray="{dash}""#) }
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12">{name}</text>"#,
            lx + 30.0,
            ly + 4.0
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// `bound_main(d) / d^{n(k-4)}` over the range, exactly.
pub fn growth_ratios(
    n: usize,
    k: usize,
    d_range: RangeInclusive<usize>,
) -> Result<Vec<(usize, BigRational)>> {
    if k < 4 {
        return invalid("the growth exponent n(k-4) needs k >= 4");
    }
    d_range
        .map(|d| {
            let scale = BigInt::from(d).pow((n * (k - 4)) as u32);
            Ok((d, BigRational::new(bound_main(n, d, k)?, scale)))
        })
        .collect()
}

/// Whether `q` lies in `[lo, hi]`.
pub fn within(q: &BigRational, lo: &BigRational, hi: &BigRational) -> bool {
    q >= lo && q <= hi && !q.is_negative()
}

pub fn one_quarter() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn main_bound_examples() {
        assert_eq!(bound_main(1, 2, 5).unwrap(), b(2));
        assert_eq!(bound_main(2, 3, 5).unwrap(), b(5));
        assert_eq!(bound_main(2, 2, 3).unwrap(), b(0));
        assert!(bound_main(2, 2, 2).is_err());
    }

    #[test]
    fn nenashev_examples() {
        assert_eq!(bound_nenashev(2, 2, 5).unwrap(), b(5));
        assert_eq!(bound_nenashev(2, 3, 5).unwrap(), b(3));
        assert_eq!(bound_nenashev(1, 1, 2).unwrap(), b(-1));
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(
            generic_rank_expected(2, 2, 5),
            BigRational::from_integer(b(11))
        );
        assert_eq!(generic_rank_expected(1, 2, 3), BigRational::new(b(7), b(3)));
        for k in 1..6 {
            let q = generic_rank_expected(2, 1, k);
            assert_eq!(q, BigRational::new(binom(k as u64 + 2, 2), b(3)));
        }
    }

    #[test]
    fn k_three_gives_zero() {
        for n in 1..=3 {
            for d in 1..=5 {
                assert_eq!(bound_main(n, d, 3).unwrap(), b(0));
            }
        }
    }

    #[test]
    fn thm2_below_main() {
        for n in 1..=3 {
            for d in 1..=6 {
                for k in 3..=8 {
                    let r = bounds_row(n, d, k).unwrap();
                    assert!(r.thm2_bound <= &r.main_bound - 1u32);
                    assert!(r.main_bound >= b(0));
                    assert_eq!(binom((n + d) as u64, n as i64) % &r.generic_rank_den, b(0));
                }
            }
        }
    }

    #[test]
    fn table_shape_and_crossover() {
        let rows = comparison_table(2, 5, 2..=10).unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(crossover(&rows), Some(3));
        assert!(rows
            .iter()
            .filter(|r| r.d >= 4)
            .all(|r| r.thm2_bound > r.nenashev_bound));
    }

    #[test]
    fn csv_columns() {
        let rows = comparison_table(2, 5, 2..=3).unwrap();
        let csv = to_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "d,main_bound,thm2_bound,nenashev_bound,generic_rank_num,generic_rank_den,fos_bound"
        );
        assert_eq!(lines.next().unwrap(), "2,3,2,5,11,1,25");
    }

    #[test]
    fn svg_has_fixed_viewport() {
        let svg = to_svg(2, 5, 2..=10).unwrap();
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
        assert!(svg.matches("<polyline").count() >= 4);
    }

    #[test]
    fn growth_ratios_decrease_towards_a_quarter() {
        let r = growth_ratios(2, 5, 6..=14).unwrap();
        assert!(r.windows(2).all(|w| w[1].1 < w[0].1));
        assert!(r.iter().all(|(_, q)| *q > one_quarter()));
    }
}
