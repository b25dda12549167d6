//! Newton polytopes and regular subdivisions induced by coefficients.
//!
//! The subdivision is the projection of the lower hull of the lifted points
//! `(ω, -A_ω)`. Cells are found by enumerating supporting hyperplanes through
//! affinely independent subsets, which is exact and fine for a few dozen points.

use crate::error::{Error, Result};
use crate::linalg::{affine_dim, cross, dot, hull_coords, nullspace, solve, sub};
use crate::lp::{Lp, LpResult};
use crate::poly::TropPolynomial;
use crate::scalar::{fmt_rat, rat, Rat};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Indices of all lifted points on the supporting hyperplane, sorted.
    pub points: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct NewtonSubdivision {
    pub dim: usize,
    pub points: Vec<Vec<u64>>,
    /// Lifts are the negated coefficients.
    pub lifts: Vec<Rat>,
    /// All cells (maximal cells and their faces), ordered by dimension then points.
    pub cells: Vec<Cell>,
}

impl NewtonSubdivision {
    pub fn maximal_cells(&self) -> Vec<&Cell> {
        let top = self.cells.iter().map(|c| c.dim).max().unwrap_or(0);
        self.cells.iter().filter(|c| c.dim == top).collect()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<&Cell> {
        self.cells.iter().filter(|c| c.dim == d).collect()
    }

    /// Vertices of the subdivision (indices of 0-cells).
    pub fn vertices(&self) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c.dim == 0)
            .map(|c| c.points[0])
            .collect()
    }

    pub fn rat_points(&self) -> Vec<Vec<Rat>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|&e| rat(e as i64)).collect())
            .collect()
    }

    /// `{"points", "lifts", "cells"}` with the maximal cells.
    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points,
            "lifts": self.lifts.iter().map(fmt_rat).collect::<Vec<_>>(),
            "cells": self.maximal_cells().iter().map(|c| c.points.clone()).collect::<Vec<_>>(),
        })
    }
}

fn project(pts: &[Vec<Rat>], coords: &[usize]) -> Vec<Vec<Rat>> {
    pts.iter()
        .map(|p| coords.iter().map(|&c| p[c].clone()).collect())
        .collect()
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Facets of conv(pts[idx]) as sorted index lists (all points lying on each facet).
pub fn facets(pts: &[Vec<Rat>], idx: &[usize]) -> Vec<Vec<usize>> {
    let sub_pts: Vec<Vec<Rat>> = idx.iter().map(|&i| pts[i].clone()).collect();
    let k = affine_dim(&sub_pts);
    if k == 0 {
        return Vec::new();
    }
    let q = project(&sub_pts, &hull_coords(&sub_pts));
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    combinations(q.len(), k, |s| {
        let base = &q[s[0]];
        let diffs: Vec<Vec<Rat>> = s[1..].iter().map(|&i| sub(&q[i], base)).collect();
        let ns = nullspace(&diffs, k);
        if ns.len() != 1 {
            return;
        }
        let normal = &ns[0];
        let off = dot(normal, base);
        let (mut pos, mut neg) = (false, false);
        let mut on = Vec::new();
        for (j, p) in q.iter().enumerate() {
            let v = dot(normal, p) - &off;
            if v.is_positive() {
                pos = true;
            } else if v.is_negative() {
                neg = true;
            } else {
                on.push(idx[j]);
            }
        }
        if !(pos && neg) {
            on.sort_unstable();
            found.insert(on);
        }
    });
    found.into_iter().collect()
}

/// All nonempty faces of conv(pts[idx]), including the polytope itself.
pub fn faces(pts: &[Vec<Rat>], idx: &[usize]) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = vec![idx.to_vec()];
    while let Some(f) = stack.pop() {
        let mut f = f;
        f.sort_unstable();
        if !out.insert(f.clone()) {
            continue;
        }
        stack.extend(facets(pts, &f));
    }
    out.into_iter().collect()
}

/// Vertex indices of conv(pts[idx]).
pub fn polytope_vertices(pts: &[Vec<Rat>], idx: &[usize]) -> Vec<usize> {
    faces(pts, idx)
        .into_iter()
        .filter(|f| affine_dim(&f.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>()) == 0)
        .map(|f| f[0])
        .collect()
}

/// Vertices of the Newton polytope, ascending lexicographic order.
pub fn newton_polytope(f: &TropPolynomial) -> Vec<Vec<u64>> {
    let pts = f.points();
    let all: Vec<usize> = (0..pts.len()).collect();
    let mut v: Vec<Vec<u64>> = polytope_vertices(&pts, &all)
        .into_iter()
        .map(|i| f.monomials()[i].exps.clone())
        .collect();
    v.sort();
    v
}

fn check_finite(f: &TropPolynomial) -> Result<()> {
    if f.is_bottom() {
        return Err(Error::InvalidArgument(
            "the -inf polynomial has no Newton polytope".into(),
        ));
    }
    Ok(())
}

pub fn dual_subdivision(f: &TropPolynomial) -> Result<NewtonSubdivision> {
    check_finite(f)?;
    if f.nvars() > 3 {
        return Err(Error::Unsupported(format!(
            "dual subdivisions are computed for at most 3 variables, got {}",
            f.nvars()
        )));
    }
    let pts = f.points();
    let lifts: Vec<Rat> = f.coeffs().into_iter().map(|c| -c).collect();
    let all: Vec<usize> = (0..pts.len()).collect();
    let d = affine_dim(&pts);
    let q = project(&pts, &hull_coords(&pts));
    let lifted: Vec<Vec<Rat>> = q
        .iter()
        .zip(&lifts)
        .map(|(p, h)| {
            p.iter()
                .cloned()
                .chain(std::iter::once(h.clone()))
                .collect()
        })
        .collect();

    let mut top: BTreeSet<Vec<usize>> = BTreeSet::new();
    if affine_dim(&lifted) == d {
        top.insert(all.clone());
    } else {
        combinations(pts.len(), d + 1, |s| {
            // h = <u, q> + c through the chosen points
            let a: Vec<Vec<Rat>> = s
                .iter()
                .map(|&i| {
                    q[i].iter()
                        .cloned()
                        .chain(std::iter::once(Rat::one()))
                        .collect()
                })
                .collect();
            let b: Vec<Rat> = s.iter().map(|&i| lifts[i].clone()).collect();
            if crate::linalg::rank(&a) != d + 1 {
                return;
            }
            let sol = solve(&a, &b, d + 1).expect("full rank system");
            let (u, c) = sol.split_at(d);
            let mut on = Vec::new();
            for j in 0..pts.len() {
                let v = &lifts[j] - dot(u, &q[j]) - &c[0];
                if v.is_negative() {
                    return;
                }
                if v.is_zero() {
                    on.push(j);
                }
            }
            top.insert(on);
        });
    }
    let mut cells: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for t in &top {
        for face in faces(&pts, t) {
            let dim = affine_dim(&face.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>());
            cells.insert((dim, face));
        }
    }
    Ok(NewtonSubdivision {
        dim: f.nvars(),
        points: f.monomials().iter().map(|m| m.exps.clone()).collect(),
        lifts,
        cells: cells
            .into_iter()
            .map(|(dim, points)| Cell { points, dim })
            .collect(),
    })
}

/// Indices of monomials that are vertices of the dual subdivision.
pub fn essential_monomials(f: &TropPolynomial) -> Result<Vec<usize>> {
    let s = dual_subdivision(f)?;
    let mut v = s.vertices();
    v.sort_unstable();
    Ok(v)
}

/// Point where the monomials in `cell` tie and all others are strictly smaller,
/// found by linear programming; `None` if no such point exists.
pub fn cell_witness(f: &TropPolynomial, cell: &[usize]) -> Option<Vec<Rat>> {
    let n = f.nvars();
    let pts = f.points();
    let coeffs = f.coeffs();
    // variables: u (n), t
    let mut lp = Lp::new(n + 1);
    let i0 = cell[0];
    let row = |j: usize, t: i64| -> Vec<Rat> {
        let mut r: Vec<Rat> = sub(&pts[j], &pts[i0]);
        r.push(rat(t));
        r
    };
    for &j in &cell[1..] {
        lp.eq(row(j, 0), &coeffs[i0] - &coeffs[j]);
    }
    for j in 0..pts.len() {
        if !cell.contains(&j) {
            lp.le(row(j, 1), &coeffs[i0] - &coeffs[j]);
        }
    }
    let mut cap = vec![Rat::zero(); n + 1];
    cap[n] = Rat::one();
    lp.le(cap.clone(), Rat::one());
    match lp.maximize(&cap) {
        LpResult::Optimal { value, mut x } if value.is_positive() => {
            x.pop();
            Some(x)
        }
        _ => None,
    }
}

/// Essential monomials decided independently by strict-maximizer feasibility.
/// Works for any number of variables.
pub fn essential_monomials_lp(f: &TropPolynomial) -> Vec<usize> {
    if f.is_bottom() {
        return Vec::new();
    }
    (0..f.len())
        .filter(|&i| cell_witness(f, &[i]).is_some())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StokesReport {
    pub cells_checked: usize,
    /// (cell index into `cells`, nonzero residual) for each failing cell.
    pub failures: Vec<(usize, Vec<Rat>)>,
}

impl StokesReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn centroid(pts: &[Vec<Rat>], idx: &[usize]) -> Vec<Rat> {
    let n = pts[0].len();
    let k = rat(idx.len() as i64);
    (0..n)
        .map(|c| idx.iter().fold(Rat::zero(), |s, &i| s + &pts[i][c]) / &k)
        .collect()
}

fn orient_out(v: Vec<Rat>, face_c: &[Rat], cell_c: &[Rat]) -> Vec<Rat> {
    if dot(&v, &sub(face_c, cell_c)).is_negative() {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

/// Cyclic vertex order of a polygon from its edge list.
fn cycle_order(edges: &[Vec<usize>]) -> Vec<usize> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in edges {
        adj.entry(e[0]).or_default().push(e[1]);
        adj.entry(e[1]).or_default().push(e[0]);
    }
    let start = *adj.keys().next().expect("polygon has edges");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = *adj[&cur].iter().find(|&&x| x != prev).expect("cycle");
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > edges.len() {
            break;
        }
    }
    order
}

/// Area-weighted outer normals of the facets of each (n-k)-cell must sum to zero.
///
/// Facet volumes times unit normals are replaced by exact rational vectors
/// that differ from them by one positive factor common to the whole cell.
pub fn verify_stokes(s: &NewtonSubdivision, k: usize) -> Result<StokesReport> {
    let n = s.dim;
    if !(n == 2 || n == 3) || k + 1 >= n {
        return Err(Error::InvalidArgument(format!(
            "need n in {{2,3}} and k < n-1, got n={n}, k={k}"
        )));
    }
    let d = n - k;
    let pts = s.rat_points();
    let mut report = StokesReport {
        cells_checked: 0,
        failures: Vec::new(),
    };
    for (ci, cell) in s.cells.iter().enumerate() {
        if cell.dim != d {
            continue;
        }
        report.cells_checked += 1;
        let verts = polytope_vertices(&pts, &cell.points);
        let cc = centroid(&pts, &verts);
        let mut total = vec![Rat::zero(); n];
        let cell_facets = facets(&pts, &cell.points);
        if d == 2 {
            let fv: Vec<Vec<usize>> = cell_facets
                .iter()
                .map(|f| polytope_vertices(&pts, f))
                .collect();
            let plane_normal = if n == 3 {
                let e0 = sub(&pts[verts[1]], &pts[verts[0]]);
                let e1 = sub(&pts[verts[2]], &pts[verts[0]]);
                Some(cross(&e0, &e1))
            } else {
                None
            };
            for f in &fv {
                let e = sub(&pts[f[1]], &pts[f[0]]);
                let w = match &plane_normal {
                    None => vec![e[1].clone(), -e[0].clone()],
                    Some(nrm) => cross(&e, nrm),
                };
                let w = orient_out(w, &centroid(&pts, f), &cc);
                total = crate::linalg::add(&total, &w);
            }
        } else {
            for f in &cell_facets {
                let edges: Vec<Vec<usize>> = facets(&pts, f)
                    .iter()
                    .map(|e| polytope_vertices(&pts, e))
                    .collect();
                let order = cycle_order(&edges);
                let mut area = vec![Rat::zero(); 3];
                for i in 0..order.len() {
                    let a = &pts[order[i]];
                    let b = &pts[order[(i + 1) % order.len()]];
                    area = crate::linalg::add(&area, &cross(a, b));
                }
                let fc = centroid(&pts, &polytope_vertices(&pts, f));
                total = crate::linalg::add(&total, &orient_out(area, &fc, &cc));
            }
        }
        if total.iter().any(|x| !x.is_zero()) {
            report.failures.push((ci, total));
        }
    }
    Ok(report)
}
