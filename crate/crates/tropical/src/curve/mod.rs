//! Rational 1-complexes in ℚⁿ and the operations on them.
//!
//! A curve is stored as vertices, bounded edges, rays and vertex-free lines.
//! Geometry goes through [`Piece`]s: every 1-dimensional piece lives on a
//! rational line and is an interval of a line parameter, which keeps overlay
//! and canonicalization exact and dimension independent.

mod balance;
mod cone;
mod plane;

pub use balance::{balancing_check, balancing_solve, BalanceReport, BalanceSolution};
pub use cone::{cone_cells, cone_sigma, fpc_validate, Cone, FpcReport, HPolyhedron};
pub use plane::{curve_from_poly2, fpc_cells_poly2, intersect_plane, membership};

use crate::linalg::{self, sub};
use crate::scalar::{primitive_dir, rat, Rat};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub ends: (usize, usize),
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ray {
    pub vertex: usize,
    pub dir: Vec<i64>,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line {
    pub point: Vec<Rat>,
    pub dir: Vec<i64>,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropCurve {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub edges: Vec<Edge>,
    pub rays: Vec<Ray>,
    pub lines: Vec<Line>,
}

/// Closed convex piece of a 1-complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    Point(Vec<Rat>),
    Seg(Vec<Rat>, Vec<Rat>),
    Ray(Vec<Rat>, Vec<i64>),
    Line(Vec<Rat>, Vec<i64>),
}

pub fn dir_rat(d: &[i64]) -> Vec<Rat> {
    d.iter().map(|&x| rat(x)).collect()
}

/// Line direction with the first nonzero entry positive.
pub fn canonical_line_dir(d: &[i64]) -> Vec<i64> {
    match d.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => d.iter().map(|v| -v).collect(),
        _ => d.to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct LineKey {
    pub dir: Vec<i64>,
    pub base: Vec<Rat>,
}

/// Interval of the line parameter; `None` is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Interval {
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
}

impl Interval {
    fn contains(&self, t: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= t) && self.hi.as_ref().is_none_or(|h| t <= h)
    }

    fn intersect(&self, o: &Interval) -> Option<Interval> {
        let lo = match (&self.lo, &o.lo) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (a, b) => a.clone().or(b.clone()),
        };
        let hi = match (&self.hi, &o.hi) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or(b.clone()),
        };
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return None;
            }
        }
        Some(Interval { lo, hi })
    }
}

impl LineKey {
    fn new(p: &[Rat], d: &[i64]) -> LineKey {
        let dir = canonical_line_dir(d);
        let k = dir.iter().position(|&x| x != 0).expect("nonzero direction");
        let t = &p[k] / rat(dir[k]);
        let base = linalg::sub(p, &linalg::scale(&dir_rat(&dir), &t));
        LineKey { dir, base }
    }

    fn lead(&self) -> usize {
        self.dir
            .iter()
            .position(|&x| x != 0)
            .expect("nonzero direction")
    }

    pub fn param(&self, x: &[Rat]) -> Rat {
        let k = self.lead();
        &x[k] / rat(self.dir[k])
    }

    pub fn at(&self, t: &Rat) -> Vec<Rat> {
        linalg::add(&self.base, &linalg::scale(&dir_rat(&self.dir), t))
    }

    /// Parameter of `x` if it lies on the line.
    pub fn locate(&self, x: &[Rat]) -> Option<Rat> {
        let t = self.param(x);
        if self.at(&t) == x {
            Some(t)
        } else {
            None
        }
    }
}

impl Piece {
    pub(crate) fn line_form(&self) -> Option<(LineKey, Interval)> {
        match self {
            Piece::Point(_) => None,
            Piece::Seg(a, b) => {
                let d = primitive_dir(&sub(b, a))?;
                let key = LineKey::new(a, &d);
                let (ta, tb) = (key.param(a), key.param(b));
                let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
                Some((
                    key,
                    Interval {
                        lo: Some(lo),
                        hi: Some(hi),
                    },
                ))
            }
            Piece::Ray(p, d) => {
                let key = LineKey::new(p, d);
                let t = key.param(p);
                if key.dir == *d {
                    Some((
                        key,
                        Interval {
                            lo: Some(t),
                            hi: None,
                        },
                    ))
                } else {
                    Some((
                        key,
                        Interval {
                            lo: None,
                            hi: Some(t),
                        },
                    ))
                }
            }
            Piece::Line(p, d) => Some((LineKey::new(p, d), Interval { lo: None, hi: None })),
        }
    }

    pub(crate) fn from_line_form(key: &LineKey, iv: &Interval) -> Piece {
        match (&iv.lo, &iv.hi) {
            (Some(l), Some(h)) if l == h => Piece::Point(key.at(l)),
            (Some(l), Some(h)) => Piece::Seg(key.at(l), key.at(h)),
            (Some(l), None) => Piece::Ray(key.at(l), key.dir.clone()),
            (None, Some(h)) => Piece::Ray(key.at(h), key.dir.iter().map(|x| -x).collect()),
            (None, None) => Piece::Line(key.base.clone(), key.dir.clone()),
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        match self {
            Piece::Point(p) => p.as_slice() == x,
            Piece::Seg(a, b) if a == b => a.as_slice() == x,
            _ => {
                let (key, iv) = self.line_form().expect("1-dimensional piece");
                key.locate(x).is_some_and(|t| iv.contains(&t))
            }
        }
    }

    /// A point in the relative interior (the point itself for points).
    pub fn interior_point(&self) -> Vec<Rat> {
        self.sample(&Rat::new(1.into(), 2.into()))
    }

    /// Point at parameter `s`: along segments s in [0,1], along rays and lines
    /// `s` steps of the primitive direction.
    pub fn sample(&self, s: &Rat) -> Vec<Rat> {
        match self {
            Piece::Point(p) => p.clone(),
            Piece::Seg(a, b) => linalg::add(a, &linalg::scale(&sub(b, a), s)),
            Piece::Ray(p, d) | Piece::Line(p, d) => linalg::add(p, &linalg::scale(&dir_rat(d), s)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Piece::Point(_) => 0,
            Piece::Seg(a, b) if a == b => 0,
            _ => 1,
        }
    }
}

/// Intersection of two lines (different keys), if a single point.
fn line_meet(a: &LineKey, b: &LineKey) -> Option<(Rat, Rat)> {
    let n = a.base.len();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| vec![rat(a.dir[i]), rat(-b.dir[i])])
        .collect();
    let rhs = sub(&b.base, &a.base);
    if linalg::rank(&rows) < 2 {
        return None;
    }
    let s = linalg::solve(&rows, &rhs, 2)?;
    Some((s[0].clone(), s[1].clone()))
}

/// Intersection of two pieces.
pub fn piece_meet(p: &Piece, q: &Piece) -> Option<Piece> {
    match (p.dim(), q.dim()) {
        (0, _) => {
            let x = p.interior_point();
            q.contains(&x).then_some(Piece::Point(x))
        }
        (_, 0) => piece_meet(q, p),
        _ => {
            let (ka, ia) = p.line_form()?;
            let (kb, ib) = q.line_form()?;
            if ka == kb {
                ia.intersect(&ib).map(|iv| Piece::from_line_form(&ka, &iv))
            } else {
                let (s, t) = line_meet(&ka, &kb)?;
                (ia.contains(&s) && ib.contains(&t)).then(|| Piece::Point(ka.at(&s)))
            }
        }
    }
}

/// Canonical 1-complex of the union of weighted pieces.
///
/// Overlapping pieces keep the larger weight. Crossing points become vertices;
/// a vertex joining exactly two collinear pieces of equal weight is dropped.
pub fn canonicalize(dim: usize, pieces: &[(Piece, u64)]) -> TropCurve {
    let mut groups: BTreeMap<LineKey, Vec<(Interval, u64)>> = BTreeMap::new();
    let mut points: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for (p, w) in pieces {
        match p.line_form() {
            Some((k, iv)) => {
                if let Some(l) = &iv.lo {
                    points.insert(k.at(l));
                }
                if let Some(h) = &iv.hi {
                    points.insert(k.at(h));
                }
                groups.entry(k).or_default().push((iv, *w));
            }
            None => {
                points.insert(p.interior_point());
            }
        }
    }
    let keys: Vec<&LineKey> = groups.keys().collect();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if let Some((s, t)) = line_meet(keys[i], keys[j]) {
                let on_a = groups[keys[i]].iter().any(|(iv, _)| iv.contains(&s));
                let on_b = groups[keys[j]].iter().any(|(iv, _)| iv.contains(&t));
                if on_a && on_b {
                    points.insert(keys[i].at(&s));
                }
            }
        }
    }

    // elementary covered pieces per line: (lo, hi, weight) between consecutive breakpoints
    struct Elem {
        lo: Option<Rat>,
        hi: Option<Rat>,
        w: u64,
    }
    let mut elems: Vec<(LineKey, Vec<Elem>)> = Vec::new();
    let mut degree: BTreeMap<Vec<Rat>, usize> = points.iter().map(|p| (p.clone(), 0)).collect();
    for (key, ivs) in &groups {
        let mut ts: Vec<Rat> = points.iter().filter_map(|p| key.locate(p)).collect();
        ts.sort();
        ts.dedup();
        let mut bounds: Vec<(Option<Rat>, Option<Rat>)> = Vec::new();
        if ts.is_empty() {
            bounds.push((None, None));
        } else {
            bounds.push((None, Some(ts[0].clone())));
            for w in ts.windows(2) {
                bounds.push((Some(w[0].clone()), Some(w[1].clone())));
            }
            bounds.push((Some(ts[ts.len() - 1].clone()), None));
        }
        let mut list = Vec::new();
        for (lo, hi) in bounds {
            let probe = match (&lo, &hi) {
                (Some(l), Some(h)) => (l + h) / rat(2),
                (Some(l), None) => l + rat(1),
                (None, Some(h)) => h - rat(1),
                (None, None) => Rat::zero(),
            };
            let w = ivs
                .iter()
                .filter(|(iv, _)| iv.contains(&probe))
                .map(|(_, w)| *w)
                .max();
            if let Some(w) = w {
                for t in lo.iter().chain(hi.iter()) {
                    *degree
                        .get_mut(&key.at(t))
                        .expect("breakpoint is a known point") += 1;
                }
                list.push(Elem { lo, hi, w });
            }
        }
        elems.push((key.clone(), list));
    }

    let mut merged: Vec<(LineKey, Interval, u64)> = Vec::new();
    for (key, list) in elems {
        let mut cur: Option<Elem> = None;
        for e in list {
            cur = match cur {
                None => Some(e),
                Some(c) => {
                    let joinable = c.hi.is_some()
                        && c.hi == e.lo
                        && c.w == e.w
                        && degree[&key.at(c.hi.as_ref().expect("finite"))] == 2;
                    if joinable {
                        Some(Elem {
                            lo: c.lo,
                            hi: e.hi,
                            w: c.w,
                        })
                    } else {
                        merged.push((key.clone(), Interval { lo: c.lo, hi: c.hi }, c.w));
                        Some(e)
                    }
                }
            };
        }
        if let Some(c) = cur {
            merged.push((key.clone(), Interval { lo: c.lo, hi: c.hi }, c.w));
        }
    }

    let mut vset: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for (key, iv, _) in &merged {
        for t in iv.lo.iter().chain(iv.hi.iter()) {
            vset.insert(key.at(t));
        }
    }
    for (p, d) in &degree {
        if *d == 0 {
            vset.insert(p.clone());
        }
    }
    let vertices: Vec<Vec<Rat>> = vset.into_iter().collect();
    let index = |p: &Vec<Rat>| vertices.binary_search(p).expect("vertex present");
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    let mut lines = Vec::new();
    for (key, iv, w) in &merged {
        match Piece::from_line_form(key, iv) {
            Piece::Seg(a, b) => {
                let (i, j) = (index(&a), index(&b));
                edges.push(Edge {
                    ends: (i.min(j), i.max(j)),
                    weight: *w,
                });
            }
            Piece::Ray(p, d) => rays.push(Ray {
                vertex: index(&p),
                dir: d,
                weight: *w,
            }),
            Piece::Line(p, d) => lines.push(Line {
                point: p,
                dir: d,
                weight: *w,
            }),
            Piece::Point(_) => unreachable!("elementary pieces are 1-dimensional"),
        }
    }
    edges.sort();
    rays.sort();
    lines.sort();
    TropCurve {
        dim,
        vertices,
        edges,
        rays,
        lines,
    }
}

impl TropCurve {
    pub fn empty(dim: usize) -> Self {
        TropCurve {
            dim,
            vertices: vec![],
            edges: vec![],
            rays: vec![],
            lines: vec![],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.lines.is_empty()
    }

    /// All closed cells, weighted; isolated vertices appear as points.
    pub fn pieces(&self) -> Vec<(Piece, u64)> {
        let mut out = Vec::new();
        let mut used = vec![false; self.vertices.len()];
        for e in &self.edges {
            used[e.ends.0] = true;
            used[e.ends.1] = true;
            out.push((
                Piece::Seg(
                    self.vertices[e.ends.0].clone(),
                    self.vertices[e.ends.1].clone(),
                ),
                e.weight,
            ));
        }
        for r in &self.rays {
            used[r.vertex] = true;
            out.push((
                Piece::Ray(self.vertices[r.vertex].clone(), r.dir.clone()),
                r.weight,
            ));
        }
        for l in &self.lines {
            out.push((Piece::Line(l.point.clone(), l.dir.clone()), l.weight));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if !used[i] {
                out.push((Piece::Point(v.clone()), 1));
            }
        }
        out
    }

    /// Only the 1-dimensional cells.
    pub fn segments(&self) -> Vec<(Piece, u64)> {
        self.pieces()
            .into_iter()
            .filter(|(p, _)| p.dim() == 1)
            .collect()
    }

    pub fn canonical(&self) -> TropCurve {
        canonicalize(self.dim, &self.pieces())
    }

    /// Same point set with every weight set to 1.
    pub fn unweighted(&self) -> TropCurve {
        let pieces: Vec<(Piece, u64)> = self.pieces().into_iter().map(|(p, _)| (p, 1)).collect();
        canonicalize(self.dim, &pieces)
    }

    /// Exact geometric containment.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.pieces().iter().any(|(p, _)| p.contains(x))
    }

    /// Closed cells of the regular part: the maximal segments, rays and lines.
    pub fn reg_components(&self) -> Vec<Piece> {
        self.canonical()
            .segments()
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// k = 0 gives the vertex set of the canonical form, k >= 1 the curve itself.
    pub fn skeleton(&self, k: usize) -> TropCurve {
        let c = self.canonical();
        if k >= 1 {
            return c;
        }
        TropCurve {
            dim: c.dim,
            vertices: c.vertices,
            edges: vec![],
            rays: vec![],
            lines: vec![],
        }
    }

    /// Outgoing primitive directions with weights at vertex `v`.
    pub fn star(&self, v: usize) -> Vec<(Vec<i64>, u64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            let (a, b) = e.ends;
            if a == v || b == v {
                let other = if a == v { b } else { a };
                let d = primitive_dir(&sub(&self.vertices[other], &self.vertices[v]))
                    .expect("non-degenerate edge");
                out.push((d, e.weight));
            }
        }
        for r in &self.rays {
            if r.vertex == v {
                out.push((r.dir.clone(), r.weight));
            }
        }
        out
    }

    /// Bounding box of vertices and line base points; `None` for the empty curve.
    pub fn bounding_box(&self) -> Option<(Vec<Rat>, Vec<Rat>)> {
        let pts: Vec<&Vec<Rat>> = self
            .vertices
            .iter()
            .chain(self.lines.iter().map(|l| &l.point))
            .collect();
        let first = pts.first()?;
        let mut lo = (*first).clone();
        let mut hi = (*first).clone();
        for p in &pts {
            for i in 0..self.dim {
                if p[i] < lo[i] {
                    lo[i] = p[i].clone();
                }
                if p[i] > hi[i] {
                    hi[i] = p[i].clone();
                }
            }
        }
        Some((lo, hi))
    }

    /// Structural invariants: distinct vertices, valid indices, primitive
    /// directions, non-degenerate edges.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.dim;
        let set: BTreeSet<&Vec<Rat>> = self.vertices.iter().collect();
        if set.len() != self.vertices.len() {
            return Err("repeated vertex".into());
        }
        if self.vertices.iter().any(|v| v.len() != n) {
            return Err("vertex of wrong dimension".into());
        }
        for e in &self.edges {
            let (a, b) = e.ends;
            if a >= self.vertices.len() || b >= self.vertices.len() || a == b {
                return Err(format!("bad edge {a}-{b}"));
            }
            if e.weight == 0 {
                return Err("zero weight".into());
            }
        }
        for r in &self.rays {
            if r.vertex >= self.vertices.len()
                || r.dir.len() != n
                || !crate::scalar::is_primitive(&r.dir)
            {
                return Err("bad ray".into());
            }
            if r.weight == 0 {
                return Err("zero weight".into());
            }
        }
        for l in &self.lines {
            if l.point.len() != n || l.dir.len() != n || !crate::scalar::is_primitive(&l.dir) {
                return Err("bad line".into());
            }
            if canonical_line_dir(&l.dir) != l.dir {
                return Err("line direction not in canonical sign".into());
            }
            if l.weight == 0 {
                return Err("zero weight".into());
            }
        }
        Ok(())
    }

    /// Sample points: vertices, edge midpoints, ray points at 1, 2, 4, and line
    /// points at -1, 0, 1.
    pub fn canonical_samples(&self) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = self.vertices.clone();
        for (p, _) in self.segments() {
            match &p {
                Piece::Seg(..) => out.push(p.interior_point()),
                Piece::Ray(..) => {
                    for s in [1, 2, 4] {
                        out.push(p.sample(&rat(s)));
                    }
                }
                Piece::Line(..) => {
                    for s in [-1, 0, 1] {
                        out.push(p.sample(&rat(s)));
                    }
                }
                Piece::Point(_) => {}
            }
        }
        out
    }

    /// Union of two curves as sets (weights: max on overlaps).
    pub fn union(&self, other: &TropCurve) -> TropCurve {
        let mut p = self.pieces();
        p.extend(other.pieces());
        canonicalize(self.dim, &p)
    }

    /// Set-level intersection.
    pub fn intersect(&self, other: &TropCurve) -> TropCurve {
        let mut out = Vec::new();
        let (a, b) = (self.pieces(), other.pieces());
        for (p, _) in &a {
            for (q, _) in &b {
                if let Some(r) = piece_meet(p, q) {
                    out.push((r, 1));
                }
            }
        }
        canonicalize(self.dim, &out)
    }

    /// Image under a coordinate projection (kept coordinates in order).
    pub fn project(&self, coords: &[usize]) -> TropCurve {
        let pr = |x: &Vec<Rat>| -> Vec<Rat> { coords.iter().map(|&c| x[c].clone()).collect() };
        let mut out = Vec::new();
        for (p, w) in self.pieces() {
            let q = match &p {
                Piece::Point(x) => Piece::Point(pr(x)),
                Piece::Seg(a, b) => Piece::Seg(pr(a), pr(b)),
                Piece::Ray(x, d) | Piece::Line(x, d) => {
                    let dd: Vec<i64> = coords.iter().map(|&c| d[c]).collect();
                    if dd.iter().all(|&v| v == 0) {
                        Piece::Point(pr(x))
                    } else {
                        let prim = primitive_dir(&dir_rat(&dd)).expect("nonzero");
                        if matches!(p, Piece::Ray(..)) {
                            Piece::Ray(pr(x), prim)
                        } else {
                            Piece::Line(pr(x), prim)
                        }
                    }
                }
            };
            out.push((q, w));
        }
        canonicalize(coords.len(), &out)
    }

    /// Number of connected components (as a topological space).
    pub fn components(&self) -> usize {
        let nv = self.vertices.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
            parent[a] = b;
        }
        let roots: BTreeSet<usize> = (0..nv).map(|i| find(&mut parent, i)).collect();
        roots.len() + self.lines.len()
    }
}

/// Largest absolute coordinate; used to size sampling boxes.
pub fn max_abs(points: &[Vec<Rat>]) -> Rat {
    points
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rat::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn p(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn crossing_segments_get_a_vertex() {
        let c = canonicalize(
            2,
            &[
                (Piece::Seg(p(&[0, 0]), p(&[2, 2])), 1),
                (Piece::Seg(p(&[0, 2]), p(&[2, 0])), 1),
            ],
        );
        assert_eq!(c.vertices.len(), 5);
        assert_eq!(c.edges.len(), 4);
        assert!(c.vertices.contains(&p(&[1, 1])));
    }

    #[test]
    fn collinear_pieces_merge() {
        let c = canonicalize(
            2,
            &[
                (Piece::Seg(p(&[0, 0]), p(&[1, 1])), 1),
                (Piece::Ray(p(&[1, 1]), vec![1, 1]), 1),
                (Piece::Ray(p(&[0, 0]), vec![-1, -1]), 1),
                (Piece::Point(p(&[3, 3])), 1),
            ],
        );
        assert!(c.vertices.is_empty());
        assert_eq!(
            c.lines,
            vec![Line {
                point: p(&[0, 0]),
                dir: vec![1, 1],
                weight: 1
            }]
        );
        let d = canonicalize(
            2,
            &[
                (Piece::Seg(p(&[0, 0]), p(&[1, 1])), 2),
                (Piece::Ray(p(&[1, 1]), vec![1, 1]), 1),
            ],
        );
        assert_eq!(d.vertices.len(), 2);
    }

    #[test]
    fn isolated_points_survive() {
        let c = canonicalize(
            2,
            &[
                (Piece::Point(p(&[1, 2])), 1),
                (Piece::Ray(p(&[0, 0]), vec![1, 0]), 1),
            ],
        );
        assert_eq!(c.vertices, vec![p(&[0, 0]), p(&[1, 2])]);
        assert_eq!(c.rays.len(), 1);
        assert!(c.contains(&p(&[1, 2])));
        assert!(c.contains(&[frac(7, 2), rat(0)]));
    }

    #[test]
    fn intersection_of_pieces() {
        let a = Piece::Ray(p(&[0, 0]), vec![1, 0]);
        let b = Piece::Line(p(&[5, 0]), vec![1, 0]);
        assert_eq!(piece_meet(&a, &b), Some(a.clone()));
        let c = Piece::Seg(p(&[2, -1]), p(&[2, 1]));
        assert_eq!(piece_meet(&a, &c), Some(Piece::Point(p(&[2, 0]))));
        let d = Piece::Ray(p(&[-1, 0]), vec![-1, 0]);
        assert_eq!(piece_meet(&a, &d), None);
    }

    #[test]
    fn projection_collapses_rays() {
        let c = canonicalize(
            3,
            &[
                (Piece::Ray(p(&[0, 0, 0]), vec![1, 1, 1]), 1),
                (Piece::Ray(p(&[0, 0, 0]), vec![0, 0, -1]), 1),
                (Piece::Ray(p(&[0, 0, 0]), vec![-1, -1, 0]), 1),
            ],
        );
        let pr = c.project(&[0, 1]);
        assert!(pr.vertices.is_empty());
        assert_eq!(pr.lines.len(), 1);
    }
}
