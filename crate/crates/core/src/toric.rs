//! A regular unimodular triangulation of the dilated simplex `dΔ_n` and the
//! union of coordinate planes it defines in `P^N`.
//!
//! Lattice points of `dΔ_n` correspond to degree-`d` monomials of `n + 1`
//! variables via `x ↦ (d - |x|, x_1, ..., x_n)`, so the index of a point is
//! the index of its monomial in the Veronese coordinates and the origin is
//! coordinate `0`.
//!
//! Cells come from the alcove (Freudenthal) subdivision. In the coordinates
//! `u_i = x_i + ... + x_n` the simplex becomes `d ≥ u_1 ≥ ... ≥ u_n ≥ 0`;
//! each unit cube of `Z^n` splits into the `n!` Kuhn simplices
//! `v, v + e_σ(1), v + e_σ(1) + e_σ(2), ...`, and the cells lying in the
//! region are kept.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::enumerate_monomials;
use crate::error::{invalid, Error, Result};

pub type LatticePoint = Vec<i64>;

type Q = Ratio<i64>;

/// A lattice simplex with `n + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Simplex {
    pub vertices: Vec<LatticePoint>,
}

impl Simplex {
    /// Determinant of the edge vectors `v_i - v_0`; `±1` for a unimodular cell.
    pub fn edge_determinant(&self) -> i64 {
        let base = &self.vertices[0];
        let m: Vec<Vec<Q>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| Q::from(a - b)).collect())
            .collect();
        let det = determinant(m);
        assert!(det.is_integer());
        det.to_integer()
    }

    /// Barycentric coordinates as affine functions `(coefficients, constant)`.
    fn barycentric(&self) -> Vec<(Vec<Q>, Q)> {
        let n = self.vertices.len() - 1;
        let base = &self.vertices[0];
        // columns are the edge vectors; λ_{1..n} = M^{-1} (x - v_0)
        let cols: Vec<Vec<Q>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| Q::from(a - b)).collect())
            .collect();
        let m: Vec<Vec<Q>> = (0..n)
            .map(|r| (0..n).map(|c| cols[c][r]).collect())
            .collect();
        let inv = inverse(m).expect("simplex is non-degenerate");
        let mut out = Vec::with_capacity(n + 1);
        let mut first_coef = vec![Q::zero(); n];
        let mut first_const = Q::one();
        for row in &inv {
            let constant = -row
                .iter()
                .zip(base)
                .fold(Q::zero(), |acc, (a, &b)| acc + a * Q::from(b));
            for (f, a) in first_coef.iter_mut().zip(row) {
                *f -= a;
            }
            first_const -= constant;
            out.push((row.clone(), constant));
        }
        out.insert(0, (first_coef, first_const));
        out
    }
}

/// A triangulation of `dΔ_n` into `d^n` unimodular simplices.
#[derive(Clone, Debug, Serialize)]
pub struct Triangulation {
    pub n: usize,
    pub d: usize,
    pub simplices: Vec<Simplex>,
    pub sink_index: usize,
    #[serde(skip)]
    vertex_index: HashMap<LatticePoint, usize>,
}

/// The lattice points of `dΔ_n`, in the order of their degree-`d` monomials.
pub fn lattice_points(n: usize, d: usize) -> Vec<LatticePoint> {
    enumerate_monomials(n, d as u32)
        .iter()
        .map(|m| m.exponents()[1..].iter().map(|&e| e as i64).collect())
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|r| if r >= first { r + 1 } else { r }));
            out.push(p);
        }
    }
    out
}

fn u_to_x(u: &[i64]) -> LatticePoint {
    let n = u.len();
    (0..n)
        .map(|i| if i + 1 < n { u[i] - u[i + 1] } else { u[i] })
        .collect()
}

/// The alcove triangulation of `dΔ_n`; the sink (the cell at the origin)
/// comes first.
pub fn standard_triangulation(n: usize, d: usize) -> Result<Triangulation> {
    if n == 0 || d == 0 {
        return invalid("triangulation needs n >= 1 and d >= 1");
    }
    let perms = permutations(n);
    let bound = (n as i64 + 1) * d as i64;
    let mut simplices = Vec::new();
    let total = d.pow(n as u32);
    let mut base = vec![0i64; n];
    for code in 0..total {
        let mut c = code;
        for slot in base.iter_mut().rev() {
            *slot = (c % d) as i64;
            c /= d;
        }
        for sigma in &perms {
            let mut vertices_u = vec![base.clone()];
            let mut w = base.clone();
            for &axis in sigma {
                w[axis] += 1;
                vertices_u.push(w.clone());
            }
            // (n+1) times the centroid must satisfy (n+1)d > s_1 > ... > s_n > 0
            let s: Vec<i64> = (0..n)
                .map(|i| vertices_u.iter().map(|v| v[i]).sum())
                .collect();
            let inside = s[0] < bound && s.windows(2).all(|p| p[0] > p[1]) && s[n - 1] > 0;
            if inside {
                simplices.push(Simplex {
                    vertices: vertices_u.iter().map(|u| u_to_x(u)).collect(),
                });
            }
        }
    }
    let vertex_index = lattice_points(n, d)
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let t = Triangulation {
        n,
        d,
        simplices,
        sink_index: 0,
        vertex_index,
    };
    let origin = vec![0i64; n];
    if !t.simplices[0].vertices.contains(&origin) {
        return Err(Error::Triangulation(
            "first cell does not contain the origin".into(),
        ));
    }
    Ok(t)
}

/// For each cell, the ambient coordinate indices of its vertices (sorted);
/// the sink face comes first.
pub fn union_planes(t: &Triangulation) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> = t
        .simplices
        .iter()
        .map(|s| {
            let mut f: Vec<usize> = s.vertices.iter().map(|v| t.vertex_index[v]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    let sink = faces.remove(t.sink_index);
    faces.insert(0, sink);
    faces
}

/// The coordinate `j` with `{y_j = 0}` containing every non-sink plane but
/// not the sink.
pub fn sink_hyperplane(t: &Triangulation) -> Result<usize> {
    let faces = union_planes(t);
    let candidates: Vec<usize> = faces[0]
        .iter()
        .copied()
        .filter(|j| faces[1..].iter().all(|f| !f.contains(j)))
        .collect();
    match candidates.as_slice() {
        [] => Err(Error::Triangulation(
            "no hyperplane separates the sink".into(),
        )),
        [j, ..] => Ok(*j),
    }
}

impl Triangulation {
    pub fn vertex_index(&self, p: &[i64]) -> Option<usize> {
        self.vertex_index.get(p).copied()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Checks every structural property and returns a summary.
    pub fn verify(&self) -> Result<TriangulationCertificate> {
        let n = self.n;
        let d = self.d as i64;
        let fail = |msg: String| Err(Error::Triangulation(msg));

        for (i, s) in self.simplices.iter().enumerate() {
            if s.vertices.len() != n + 1 {
                return fail(format!("cell {i} has {} vertices", s.vertices.len()));
            }
            for v in &s.vertices {
                if v.iter().any(|&x| x < 0) || v.iter().sum::<i64>() > d {
                    return fail(format!("cell {i} has vertex {v:?} outside the simplex"));
                }
            }
            if s.edge_determinant().abs() != 1 {
                return fail(format!("cell {i} is not unimodular"));
            }
        }
        let volume = self.simplices.len() as u64;
        if volume != (self.d as u64).pow(n as u32) {
            return fail(format!("normalized volume {volume}, expected d^n"));
        }

        let origin = vec![0i64; n];
        let holders: Vec<usize> = (0..self.simplices.len())
            .filter(|&i| self.simplices[i].vertices.contains(&origin))
            .collect();
        if holders != [self.sink_index] {
            return fail(format!("origin lies in cells {holders:?}"));
        }
        sink_hyperplane(self)?;

        let bary: Vec<Vec<(Vec<Q>, Q)>> = self.simplices.iter().map(Simplex::barycentric).collect();
        for i in 0..self.simplices.len() {
            for j in i + 1..self.simplices.len() {
                if !self.meet_in_common_face(i, j, &bary) {
                    return fail(format!("cells {i} and {j} do not meet in a common face"));
                }
            }
        }

        let mut facets: BTreeMap<Vec<LatticePoint>, Vec<(usize, LatticePoint)>> = BTreeMap::new();
        for (i, s) in self.simplices.iter().enumerate() {
            for skip in 0..=n {
                let mut f: Vec<LatticePoint> = s
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                f.sort();
                facets
                    .entry(f)
                    .or_default()
                    .push((i, s.vertices[skip].clone()));
            }
        }
        let mut interior = 0;
        for (facet, cells) in &facets {
            match cells.len() {
                1 => {
                    let on_boundary = (0..n).any(|c| facet.iter().all(|v| v[c] == 0))
                        || facet.iter().all(|v| v.iter().sum::<i64>() == d);
                    if !on_boundary {
                        return fail(format!("facet {facet:?} is exposed inside the simplex"));
                    }
                }
                2 => {
                    interior += 1;
                    let (a, _) = &cells[0];
                    let (_, opposite) = &cells[1];
                    if !self.lifted_strictly_above(*a, opposite, &bary[*a]) {
                        return fail(format!("height function not convex across {facet:?}"));
                    }
                    let (b, _) = &cells[1];
                    let (_, opposite) = &cells[0];
                    if !self.lifted_strictly_above(*b, opposite, &bary[*b]) {
                        return fail(format!("height function not convex across {facet:?}"));
                    }
                }
                k => return fail(format!("facet {facet:?} lies in {k} cells")),
            }
        }

        Ok(TriangulationCertificate {
            cells: self.simplices.len(),
            normalized_volume: volume,
            interior_facets: interior,
            sink_index: self.sink_index,
        })
    }

    /// `S ∩ T = conv(S ∩ T ∩ vertices)`: the barycentric weight of `S` on the
    /// vertices outside `T` vanishes on all of `S ∩ T`.
    fn meet_in_common_face(&self, i: usize, j: usize, bary: &[Vec<(Vec<Q>, Q)>]) -> bool {
        let s = &self.simplices[i];
        let t = &self.simplices[j];
        let n = self.n;
        let disjoint = (0..n).any(|c| {
            let smax = s.vertices.iter().map(|v| v[c]).max().unwrap();
            let smin = s.vertices.iter().map(|v| v[c]).min().unwrap();
            let tmax = t.vertices.iter().map(|v| v[c]).max().unwrap();
            let tmin = t.vertices.iter().map(|v| v[c]).min().unwrap();
            smax < tmin || tmax < smin
        });
        if disjoint {
            return true;
        }
        let mut objective = vec![Q::zero(); n];
        let mut objective_const = Q::zero();
        for (k, v) in s.vertices.iter().enumerate() {
            if !t.vertices.contains(v) {
                for (o, c) in objective.iter_mut().zip(&bary[i][k].0) {
                    *o += c;
                }
                objective_const += bary[i][k].1;
            }
        }
        if objective.iter().all(Zero::is_zero) && objective_const.is_zero() {
            return true;
        }
        let constraints: Vec<&(Vec<Q>, Q)> = bary[i].iter().chain(bary[j].iter()).collect();
        let mut best: Option<Q> = None;
        for subset in combinations(constraints.len(), n) {
            let a: Vec<Vec<Q>> = subset.iter().map(|&c| constraints[c].0.clone()).collect();
            let b: Vec<Q> = subset.iter().map(|&c| -constraints[c].1).collect();
            let Some(x) = solve(a, b) else { continue };
            let feasible = constraints.iter().all(|(coef, c)| {
                coef.iter().zip(&x).fold(*c, |acc, (a, b)| acc + a * b) >= Q::zero()
            });
            if !feasible {
                continue;
            }
            let value = objective
                .iter()
                .zip(&x)
                .fold(objective_const, |acc, (a, b)| acc + a * b);
            best = Some(best.map_or(value, |b: Q| b.max(value)));
        }
        best.is_none_or(|b| b <= Q::zero())
    }

    fn lifted_strictly_above(&self, cell: usize, p: &[i64], bary: &[(Vec<Q>, Q)]) -> bool {
        let s = &self.simplices[cell];
        let interpolated = bary
            .iter()
            .zip(&s.vertices)
            .fold(Q::zero(), |acc, ((coef, c), v)| {
                let lambda = coef
                    .iter()
                    .zip(p)
                    .fold(*c, |acc, (a, &b)| acc + a * Q::from(b));
                acc + lambda * Q::from(height(v))
            });
        Q::from(height(p)) > interpolated
    }
}

/// Summary of a successful [`Triangulation::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationCertificate {
    pub cells: usize,
    pub normalized_volume: u64,
    pub interior_facets: usize,
    pub sink_index: usize,
}

/// Heights lifting the alcove triangulation: in order coordinates,
/// `Σ u_i^2 + Σ_{i<j} (u_i - u_j)^2`.
pub fn height(x: &[i64]) -> i64 {
    let n = x.len();
    let u: Vec<i64> = (0..n).map(|i| x[i..].iter().sum()).collect();
    let squares: i64 = u.iter().map(|a| a * a).sum();
    let mut cross = 0;
    for i in 0..n {
        for j in i + 1..n {
            cross += (u[i] - u[j]) * (u[i] - u[j]);
        }
    }
    squares + cross
}

fn combinations(total: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        start: usize,
        total: usize,
        size: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..total {
            cur.push(i);
            rec(i + 1, total, size, cur, out);
            cur.pop();
        }
    }
    rec(0, total, size, &mut current, &mut out);
    out
}

fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                let v = m[c][k];
                m[r][k] -= f * v;
            }
        }
    }
    det
}

/// Solves the square system `a x = b`; `None` when singular.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        b.swap(p, c);
        let inv = Q::one() / a[c][c];
        for k in c..n {
            a[c][k] *= inv;
        }
        b[c] *= inv;
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for k in c..n {
                    let v = a[c][k];
                    a[r][k] -= f * v;
                }
                let v = b[c];
                b[r] -= f * v;
            }
        }
    }
    Some(b)
}

fn inverse(m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for c in 0..n {
        let e: Vec<Q> = (0..n)
            .map(|r| if r == c { Q::one() } else { Q::zero() })
            .collect();
        cols.push(solve(m.clone(), e)?);
    }
    Some(
        (0..n)
            .map(|r| (0..n).map(|c| cols[c][r]).collect())
            .collect(),
    )
}

/// SVG drawing of a planar triangulation on an equilateral reference
/// triangle, with the sink shaded.
pub fn render_svg(t: &Triangulation) -> Result<String> {
    if t.n != 2 {
        return invalid(format!("SVG rendering needs n = 2, got n = {}", t.n));
    }
    let size = 600.0;
    let margin = 40.0;
    let scale = (size - 2.0 * margin) / t.d as f64;
    let height = (3f64).sqrt() / 2.0;
    let project = |p: &[i64]| -> (f64, f64) {
        let x = p[0] as f64 + p[1] as f64 / 2.0;
        let y = p[1] as f64 * height;
        (margin + x * scale, size - margin - y * scale)
    };
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (i, s) in t.simplices.iter().enumerate() {
        let points: Vec<String> = s
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = project(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let fill = if i == t.sink_index {
            "#f4b183"
        } else {
            "#dde8f5"
        };
        writeln!(
            out,
            r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="1.5"/>"#,
            points.join(" ")
        )
        .unwrap();
    }
    for p in lattice_points(t.n, t.d) {
        let (x, y) = project(&p);
        writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
