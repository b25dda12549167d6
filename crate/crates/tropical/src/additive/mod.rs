//! Additivity of tropical set-curves under coordinatewise max.
//!
//! Necessary local criteria are checked exactly. In the plane they combine
//! with the normal form (a positive spine with negative axis rays hanging off
//! it) into an exact decision; in higher dimension a sampled closure oracle
//! completes a semi-decision.

mod tree;

pub use tree::{tree_meet, RootedMetricTree, TreePoint};

use crate::curve::{balancing_solve, cone_cells, dir_rat, BalanceSolution, Piece, TropCurve};
use crate::error::{Error, Result};
use crate::linalg::{dot, sub};
use crate::scalar::{fmt_rat, frac, primitive_dir, rat, Rat};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// Pairs drawn by [`is_additive`] when it needs the oracle.
pub const ORACLE_SAMPLES: usize = 1000;

fn nonneg(d: &[i64]) -> bool {
    d.iter().all(|&x| x >= 0)
}

fn nonpos(d: &[i64]) -> bool {
    d.iter().all(|&x| x <= 0)
}

fn strictly_pos(d: &[i64]) -> bool {
    d.iter().all(|&x| x > 0)
}

fn strictly_neg(d: &[i64]) -> bool {
    d.iter().all(|&x| x < 0)
}

/// Coordinates `j` with `d_j < 0`.
fn neg_set(d: &[i64]) -> Vec<usize> {
    (0..d.len()).filter(|&j| d[j] < 0).collect()
}

fn ensure_balanceable(c: &TropCurve) -> Result<()> {
    match balancing_solve(c) {
        BalanceSolution::Infeasible => Err(Error::NotBalanceable(
            "no positive weights balance every vertex".into(),
        )),
        _ => Ok(()),
    }
}

/// Results of the local criteria. `i` needs both the sign pattern and a
/// single positively directed end.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Criteria {
    pub sign_pattern: bool,
    pub unique_positive_ray: bool,
    pub one_nonneg_edge: bool,
    pub zero_coords_inherited: bool,
    pub j_map: bool,
    pub notes: Vec<String>,
}

impl Criteria {
    pub fn i(&self) -> bool {
        self.sign_pattern && self.unique_positive_ray
    }

    pub fn all_pass(&self) -> bool {
        self.i() && self.one_nonneg_edge && self.zero_coords_inherited && self.j_map
    }

    pub fn to_value(&self) -> Value {
        json!({
            "i": self.i(),
            "ii": self.one_nonneg_edge,
            "iii": self.zero_coords_inherited,
            "v": self.j_map,
            "notes": self.notes,
        })
    }
}

/// Exact check of the local criteria on the canonical form of `c`.
pub fn check_criteria(c: &TropCurve) -> Result<Criteria> {
    let c = c.canonical();
    ensure_balanceable(&c)?;
    let mut cr = Criteria {
        sign_pattern: true,
        unique_positive_ray: true,
        one_nonneg_edge: true,
        zero_coords_inherited: true,
        j_map: true,
        notes: vec![],
    };
    let fmt_v = |v: usize| -> String {
        let xs: Vec<String> = c.vertices[v].iter().map(fmt_rat).collect();
        format!("({})", xs.join(","))
    };

    // (i): sign pattern of every cell, one nonnegative unbounded end
    let mut dirs: Vec<Vec<i64>> = c.lines.iter().map(|l| l.dir.clone()).collect();
    dirs.extend(c.rays.iter().map(|r| r.dir.clone()));
    for v in 0..c.vertices.len() {
        dirs.extend(c.star(v).into_iter().map(|(d, _)| d));
    }
    if let Some(d) = dirs.iter().find(|d| !nonneg(d) && !nonpos(d)) {
        cr.sign_pattern = false;
        cr.notes
            .push(format!("(i) direction {d:?} has coordinates of both signs"));
    }
    let positive_ends = c.rays.iter().filter(|r| nonneg(&r.dir)).count()
        + c.lines
            .iter()
            .filter(|l| nonneg(&l.dir) || nonpos(&l.dir))
            .count();
    if positive_ends != 1 {
        cr.unique_positive_ray = false;
        cr.notes.push(format!(
            "(i) {positive_ends} positively directed unbounded ends"
        ));
    }

    for v in 0..c.vertices.len() {
        let star = c.star(v);
        let nn: Vec<&Vec<i64>> = star.iter().map(|(d, _)| d).filter(|d| nonneg(d)).collect();
        let sn = star.iter().filter(|(d, _)| strictly_neg(d)).count();
        if nn.len() != 1 || sn > 1 {
            cr.one_nonneg_edge = false;
            cr.notes.push(format!(
                "(ii) vertex {} has {} nonnegative and {} strictly negative edges",
                fmt_v(v),
                nn.len(),
                sn
            ));
        }
        if let [e] = nn.as_slice() {
            for i in (0..c.dim).filter(|&i| e[i] == 0) {
                if star.iter().any(|(d, _)| d[i] != 0) {
                    cr.zero_coords_inherited = false;
                    cr.notes.push(format!(
                        "(iii) vertex {} moves coordinate {} off its level",
                        fmt_v(v),
                        i + 1
                    ));
                }
            }
        }
        // (v) at spine vertices
        if star.iter().any(|(d, _)| strictly_pos(d)) {
            let js: Vec<Vec<usize>> = star
                .iter()
                .filter(|(d, _)| nonpos(d))
                .map(|(d, _)| neg_set(d))
                .collect();
            let set: BTreeSet<&Vec<usize>> = js.iter().collect();
            if set.len() != js.len() {
                cr.j_map = false;
                cr.notes.push(format!(
                    "(v) two edges at {} lower the same coordinates",
                    fmt_v(v)
                ));
            }
            for a in &js {
                for b in &js {
                    let m: Vec<usize> = a.iter().filter(|x| b.contains(x)).copied().collect();
                    if !m.is_empty() && !set.contains(&m) {
                        cr.j_map = false;
                        cr.notes.push(format!(
                            "(v) at {} no edge lowers exactly {:?}",
                            fmt_v(v),
                            m
                        ));
                    }
                }
            }
        }
    }
    cr.notes.dedup();
    Ok(cr)
}

/// Ordered spine: vertices u_1 < ... < u_m and directions a(e_0), ..., a(e_m)
/// of the positive cells; e_0 is the ray below u_1 and is absent when the
/// spine starts at a terminal vertex. Spine indices count from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spine {
    pub vertices: Vec<Vec<Rat>>,
    pub e0: Option<Vec<i64>>,
    /// a(e_1), ..., a(e_m); a(e_m) is the top ray.
    pub dirs: Vec<Vec<i64>>,
    pub terminal: bool,
}

impl Spine {
    pub fn m(&self) -> usize {
        self.vertices.len()
    }

    /// u_i for 1 <= i <= m.
    pub fn u(&self, i: usize) -> &[Rat] {
        &self.vertices[i - 1]
    }

    /// a(e_i) for 0 <= i <= m.
    pub fn a(&self, i: usize) -> Option<&[i64]> {
        if i == 0 {
            self.e0.as_deref()
        } else {
            self.dirs.get(i - 1).map(|d| d.as_slice())
        }
    }

    /// mu_i with u_{i+1} - u_i = a(e_i) mu_i, for 1 <= i < m.
    pub fn mu(&self, i: usize) -> Rat {
        let d = &self.dirs[i - 1];
        (&self.vertices[i][0] - &self.vertices[i - 1][0]) / rat(d[0])
    }
}

/// Union of the strictly positive cells, in order.
pub fn spine(c: &TropCurve) -> Result<Spine> {
    let c = c.canonical();
    let bad = |m: &str| Error::InvalidArgument(format!("no spine: {m}"));
    let pos_lines: Vec<_> = c.lines.iter().filter(|l| strictly_pos(&l.dir)).collect();
    let pos_edges: Vec<(usize, usize, Vec<i64>)> = c
        .edges
        .iter()
        .filter_map(|e| {
            let (a, b) = e.ends;
            let d = primitive_dir(&sub(&c.vertices[b], &c.vertices[a])).expect("edge");
            if strictly_pos(&d) {
                Some((a, b, d))
            } else if strictly_neg(&d) {
                Some((b, a, d.iter().map(|x| -x).collect()))
            } else {
                None
            }
        })
        .collect();
    let up_rays: Vec<_> = c.rays.iter().filter(|r| strictly_pos(&r.dir)).collect();
    let down_rays: Vec<_> = c.rays.iter().filter(|r| strictly_neg(&r.dir)).collect();
    if let [l] = pos_lines.as_slice() {
        if pos_edges.is_empty() && up_rays.is_empty() && down_rays.is_empty() {
            return Ok(Spine {
                vertices: vec![],
                e0: Some(l.dir.clone()),
                dirs: vec![],
                terminal: false,
            });
        }
        return Err(bad("a positive line and other positive cells"));
    }
    if !pos_lines.is_empty() {
        return Err(bad("several positive lines"));
    }
    let mut idx: BTreeSet<usize> = BTreeSet::new();
    for (a, b, _) in &pos_edges {
        idx.insert(*a);
        idx.insert(*b);
    }
    idx.extend(up_rays.iter().map(|r| r.vertex));
    idx.extend(down_rays.iter().map(|r| r.vertex));
    let mut order: Vec<usize> = idx.into_iter().collect();
    if order.is_empty() {
        return Err(bad("no strictly positive cells"));
    }
    order.sort_by(|&a, &b| c.vertices[a][0].cmp(&c.vertices[b][0]));
    let m = order.len();
    if up_rays.len() != 1 || up_rays[0].vertex != order[m - 1] {
        return Err(bad("the top ray does not leave the highest spine vertex"));
    }
    if down_rays.len() > 1 || down_rays.first().is_some_and(|r| r.vertex != order[0]) {
        return Err(bad("the bottom ray does not leave the lowest spine vertex"));
    }
    if pos_edges.len() != m - 1 {
        return Err(bad("positive cells do not form a path"));
    }
    let mut dirs = Vec::new();
    for w in order.windows(2) {
        let e = pos_edges
            .iter()
            .find(|(a, b, _)| *a == w[0] && *b == w[1])
            .ok_or_else(|| bad("consecutive spine vertices are not joined"))?;
        dirs.push(e.2.clone());
    }
    dirs.push(up_rays[0].dir.clone());
    let e0 = down_rays
        .first()
        .map(|r| r.dir.iter().map(|x| -x).collect());
    Ok(Spine {
        vertices: order.iter().map(|&v| c.vertices[v].clone()).collect(),
        terminal: e0.is_none(),
        e0,
        dirs,
    })
}

/// Closed part of a piece satisfying every `a·x <= b`.
pub fn clip_piece(p: &Piece, cons: &[(Vec<Rat>, Rat)]) -> Option<Piece> {
    if p.dim() == 0 {
        let x = p.interior_point();
        return cons
            .iter()
            .all(|(a, b)| dot(a, &x) <= *b)
            .then_some(Piece::Point(x));
    }
    let (key, mut iv) = p.line_form().expect("1-dimensional piece");
    let d = dir_rat(&key.dir);
    for (a, b) in cons {
        let slope = dot(a, &d);
        let room = b - dot(a, &key.base);
        if slope.is_zero() {
            if room.is_negative() {
                return None;
            }
            continue;
        }
        let t = room / &slope;
        if slope.is_positive() {
            if iv.hi.as_ref().is_none_or(|h| t < *h) {
                iv.hi = Some(t);
            }
        } else if iv.lo.as_ref().is_none_or(|l| t > *l) {
            iv.lo = Some(t);
        }
    }
    if let (Some(l), Some(h)) = (&iv.lo, &iv.hi) {
        if l > h {
            return None;
        }
    }
    Some(Piece::from_line_form(&key, &iv))
}

fn clip_curve(c: &TropCurve, cons: &[(Vec<Rat>, Rat)]) -> TropCurve {
    let pieces: Vec<(Piece, u64)> = c
        .pieces()
        .iter()
        .filter_map(|(p, w)| clip_piece(p, cons).map(|q| (q, *w)))
        .collect();
    crate::curve::canonicalize(c.dim, &pieces)
}

fn unit(n: usize, k: usize, s: i64) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); n];
    e[k] = rat(s);
    e
}

/// U_i = C ∩ (u_i + ℝⁿ≤0), for spine index 1 <= i <= m.
pub fn restrict_below(c: &TropCurve, i: usize) -> Result<TropCurve> {
    let s = spine(c)?;
    if i == 0 || i > s.m() {
        return Err(Error::InvalidArgument(format!(
            "spine index {i} outside 1..={}",
            s.m()
        )));
    }
    let u = s.u(i);
    let cons: Vec<(Vec<Rat>, Rat)> = (0..c.dim)
        .map(|k| (unit(c.dim, k, 1), u[k].clone()))
        .collect();
    Ok(clip_curve(&c.canonical(), &cons))
}

/// U_{i,J} = C ∩ closure of the cone cell at u_i, for every J (0-based
/// coordinates) whose open cell meets C.
pub fn cut_sets(c: &TropCurve, i: usize) -> Result<Vec<(Vec<usize>, TropCurve)>> {
    let s = spine(c)?;
    if i == 0 || i > s.m() {
        return Err(Error::InvalidArgument(format!(
            "spine index {i} outside 1..={}",
            s.m()
        )));
    }
    let cc = c.canonical();
    let u = s.u(i);
    let vi = cc
        .vertices
        .iter()
        .position(|v| v.as_slice() == u)
        .expect("spine vertex is a vertex");
    let n = c.dim;
    Ok(cone_cells(&cc, vi)
        .into_iter()
        .map(|j| {
            let mut cons = Vec::new();
            for k in 0..n {
                cons.push((unit(n, k, 1), u[k].clone()));
                if !j.contains(&k) {
                    cons.push((unit(n, k, -1), -u[k].clone()));
                }
            }
            (j, clip_curve(&cc, &cons))
        })
        .collect())
}

/// Coordinates on which the whole curve is constant, with their value.
pub fn fixed_coords(c: &TropCurve) -> Vec<(usize, Rat)> {
    let c = c.canonical();
    let pts: Vec<&Vec<Rat>> = c
        .vertices
        .iter()
        .chain(c.lines.iter().map(|l| &l.point))
        .collect();
    let Some(first) = pts.first() else {
        return vec![];
    };
    let mut dirs: Vec<Vec<i64>> = c.rays.iter().map(|r| r.dir.clone()).collect();
    dirs.extend(c.lines.iter().map(|l| l.dir.clone()));
    (0..c.dim)
        .filter(|&k| pts.iter().all(|p| p[k] == first[k]) && dirs.iter().all(|d| d[k] == 0))
        .map(|k| (k, first[k].clone()))
        .collect()
}

fn join(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    u.iter().zip(v).map(|(a, b)| a.max(b).clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub pairs_checked: usize,
    pub witness: Option<(Vec<Rat>, Vec<Rat>)>,
}

impl OracleResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Seeded rational point on a piece.
fn random_point<R: Rng>(p: &Piece, rng: &mut R) -> Vec<Rat> {
    match p {
        Piece::Point(x) => x.clone(),
        Piece::Seg(..) => p.sample(&frac(rng.random_range(0..=16), 16)),
        Piece::Ray(..) => p.sample(&frac(rng.random_range(0..=64), 4)),
        Piece::Line(..) => p.sample(&frac(rng.random_range(-64..=64), 4)),
    }
}

/// Closure under ⊕ on sample pairs: all pairs of canonical samples first,
/// then `samples` seeded random pairs. Stops at the first failing pair.
pub fn closure_oracle(c: &TropCurve, samples: usize, seed: u64) -> OracleResult {
    let c = c.canonical();
    let pieces: Vec<Piece> = c.pieces().into_iter().map(|(p, _)| p).collect();
    let on = |x: &[Rat]| pieces.iter().any(|p| p.contains(x));
    let mut pts: Vec<Vec<Rat>> = c.canonical_samples();
    let mut seen = BTreeSet::new();
    pts.retain(|p| seen.insert(p.clone()));
    let mut checked = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            checked += 1;
            if !on(&join(&pts[i], &pts[j])) {
                return OracleResult {
                    pairs_checked: checked,
                    witness: Some((pts[i].clone(), pts[j].clone())),
                };
            }
        }
    }
    if !pieces.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let u = random_point(&pieces[rng.random_range(0..pieces.len())], &mut rng);
            let v = random_point(&pieces[rng.random_range(0..pieces.len())], &mut rng);
            checked += 1;
            if !on(&join(&u, &v)) {
                return OracleResult {
                    pairs_checked: checked,
                    witness: Some((u, v)),
                };
            }
        }
    }
    OracleResult {
        pairs_checked: checked,
        witness: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Additive,
    NotAdditive,
    CriteriaPassOraclePass,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Additive => "additive",
            Verdict::NotAdditive => "not-additive",
            Verdict::CriteriaPassOraclePass => "criteria-pass-oracle-pass",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivityCertificate {
    pub verdict: Verdict,
    pub witness: Option<(Vec<Rat>, Vec<Rat>)>,
    pub criteria: Criteria,
}

impl AdditivityCertificate {
    pub fn to_value(&self) -> Value {
        let pt = |p: &Vec<Rat>| Value::Array(p.iter().map(|x| Value::String(fmt_rat(x))).collect());
        let mut v = json!({"verdict": self.verdict.as_str(), "criteria": self.criteria.to_value()});
        if let Some((a, b)) = &self.witness {
            v["witness"] = json!([pt(a), pt(b), pt(&join(a, b))]);
        }
        v
    }
}

/// Plane normal form: every cell off the spine is a ray (-1,0) or (0,-1)
/// from a spine vertex, and a terminal vertex carries both.
fn plane_normal_form(c: &TropCurve) -> bool {
    let Ok(s) = spine(c) else { return false };
    let c = c.canonical();
    let on_spine: BTreeSet<&Vec<Rat>> = s.vertices.iter().collect();
    if c.vertices.iter().any(|v| !on_spine.contains(v)) {
        return false;
    }
    if s.m() == 0 {
        return c.lines.len() == 1 && c.rays.is_empty();
    }
    if !c.lines.is_empty() {
        return false;
    }
    let axis = |d: &[i64]| d == [-1, 0] || d == [0, -1];
    for e in &c.edges {
        let d = primitive_dir(&sub(&c.vertices[e.ends.1], &c.vertices[e.ends.0])).expect("edge");
        if !strictly_pos(&d) && !strictly_neg(&d) {
            return false;
        }
    }
    for r in &c.rays {
        if !strictly_pos(&r.dir) && !strictly_neg(&r.dir) && !axis(&r.dir) {
            return false;
        }
    }
    if s.terminal {
        let v = c
            .vertices
            .iter()
            .position(|v| v.as_slice() == s.u(1))
            .expect("spine vertex");
        let star: Vec<Vec<i64>> = c.star(v).into_iter().map(|(d, _)| d).collect();
        if !star.contains(&vec![-1, 0]) || !star.contains(&vec![0, -1]) {
            return false;
        }
    }
    true
}

/// Exact decision for curves that reduce to the plane or the line, else
/// `None`.
fn exact_decision(c: &TropCurve, cr: &Criteria) -> Option<bool> {
    if let Some(axis) = parallel_lines(c) {
        return Some(axis);
    }
    let fixed = fixed_coords(c);
    let keep: Vec<usize> = (0..c.dim)
        .filter(|k| !fixed.iter().any(|(f, _)| f == k))
        .collect();
    match keep.len() {
        0 | 1 => Some(true),
        2 if fixed.is_empty() => Some(cr.all_pass() && plane_normal_form(c)),
        2 => {
            let r = c.project(&keep);
            let rc = check_criteria(&r).ok()?;
            Some(rc.all_pass() && plane_normal_form(&r))
        }
        _ => None,
    }
}

/// Two or more parallel lines in the plane, the only disconnected plane
/// curves. Additive exactly when the lines are axis parallel: joining points
/// of the lines y = c and y = c' lands on the higher one. `None` otherwise.
pub fn parallel_lines(c: &TropCurve) -> Option<bool> {
    if c.dim != 2 || c.lines.len() < 2 || !c.vertices.is_empty() {
        return None;
    }
    let d = &c.lines[0].dir;
    if c.lines.iter().any(|l| &l.dir != d) {
        return None;
    }
    Some(d.iter().filter(|&&x| x != 0).count() == 1)
}

/// For two parallel lines of positive slope: u on one, v on the other with
/// v left of and above u, so u ⊕ v sits strictly between them.
fn parallel_witness(c: &TropCurve) -> Option<(Vec<Rat>, Vec<Rat>)> {
    if parallel_lines(c) != Some(false) {
        return None;
    }
    let d = dir_rat(&c.lines[0].dir);
    if !(d[0].is_positive() && d[1].is_positive()) {
        return None;
    }
    let on_vertical = |p: &[Rat], x: &Rat| {
        let t = (x - &p[0]) / &d[0];
        vec![x.clone(), &p[1] + &t * &d[1]]
    };
    let (mut a, mut b) = (&c.lines[0].point, &c.lines[1].point);
    let mut v0 = on_vertical(b, &a[0]);
    if v0[1] < a[1] {
        std::mem::swap(&mut a, &mut b);
        v0 = on_vertical(b, &a[0]);
    }
    let t = (&v0[1] - &a[1]) / (rat(2) * &d[1]);
    let v = vec![&v0[0] - &t * &d[0], &v0[1] - &t * &d[1]];
    Some((a.clone(), v))
}

fn find_witness(c: &TropCurve) -> Option<(Vec<Rat>, Vec<Rat>)> {
    if let Some(w) = parallel_witness(c) {
        return Some(w);
    }
    closure_oracle(c, ORACLE_SAMPLES, 0)
        .witness
        .or_else(|| closure_oracle(c, 20 * ORACLE_SAMPLES, 1).witness)
}

/// Exact in the plane (and for curves inside a coordinate plane), criteria
/// plus sampled closure otherwise.
pub fn is_additive(c: &TropCurve) -> Result<AdditivityCertificate> {
    let cc = c.canonical();
    let criteria = check_criteria(&cc)?;
    let verdict = match exact_decision(&cc, &criteria) {
        Some(true) => Verdict::Additive,
        Some(false) => Verdict::NotAdditive,
        None if !criteria.all_pass() => Verdict::NotAdditive,
        None => match closure_oracle(&cc, ORACLE_SAMPLES, 0).witness {
            None => Verdict::CriteriaPassOraclePass,
            Some(w) => {
                return Ok(AdditivityCertificate {
                    verdict: Verdict::NotAdditive,
                    witness: Some(w),
                    criteria,
                })
            }
        },
    };
    let witness = if verdict == Verdict::NotAdditive {
        find_witness(&cc)
    } else {
        None
    };
    Ok(AdditivityCertificate {
        verdict,
        witness,
        criteria,
    })
}

/// u ≼ v: some a on the curve has a ⊕ u = v. Decided cell by cell.
pub fn poset_leq(u: &[Rat], v: &[Rat], c: &TropCurve) -> Result<bool> {
    let c = c.canonical();
    if u.len() != c.dim || v.len() != c.dim {
        return Err(Error::DimensionMismatch {
            expected: c.dim,
            got: u.len().max(v.len()),
        });
    }
    if !c.contains(u) || !c.contains(v) {
        return Err(Error::InvalidArgument(
            "both points must lie on the curve".into(),
        ));
    }
    if u.iter().zip(v).any(|(a, b)| a > b) {
        return Ok(false);
    }
    let n = c.dim;
    let mut cons = Vec::new();
    for k in 0..n {
        cons.push((unit(n, k, 1), v[k].clone()));
        if u[k] < v[k] {
            cons.push((unit(n, k, -1), -v[k].clone()));
        }
    }
    Ok(c.pieces()
        .iter()
        .any(|(p, _)| clip_piece(p, &cons).is_some()))
}

/// Connected, with no cycle among the bounded cells.
pub fn is_contractible(c: &TropCurve) -> bool {
    let c = c.canonical();
    if c.is_empty() {
        return false;
    }
    if !c.lines.is_empty() {
        return c.lines.len() == 1 && c.vertices.is_empty();
    }
    c.components() == 1 && c.edges.len() + 1 == c.vertices.len()
}

/// Pieces labelled by connected component.
fn labelled_pieces(c: &TropCurve) -> Vec<(Piece, usize)> {
    let nv = c.vertices.len();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for e in &c.edges {
        let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
        parent[a] = b;
    }
    let mut out = Vec::new();
    for e in &c.edges {
        let k = find(&mut parent, e.ends.0);
        out.push((
            Piece::Seg(c.vertices[e.ends.0].clone(), c.vertices[e.ends.1].clone()),
            k,
        ));
    }
    for r in &c.rays {
        let k = find(&mut parent, r.vertex);
        out.push((Piece::Ray(c.vertices[r.vertex].clone(), r.dir.clone()), k));
    }
    for v in 0..nv {
        let k = find(&mut parent, v);
        out.push((Piece::Point(c.vertices[v].clone()), k));
    }
    for (i, l) in c.lines.iter().enumerate() {
        out.push((Piece::Line(l.point.clone(), l.dir.clone()), nv + i));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub pairs_checked: usize,
    pub failures: Vec<(Vec<Rat>, Vec<Rat>)>,
}

impl ComponentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sampled pairs from one component must join inside that component.
pub fn component_subsemigroup_check(c: &TropCurve, samples: usize, seed: u64) -> ComponentReport {
    let c = c.canonical();
    let lp = labelled_pieces(&c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    if lp.is_empty() {
        return ComponentReport {
            pairs_checked: 0,
            failures,
        };
    }
    for _ in 0..samples {
        let (p, k) = &lp[rng.random_range(0..lp.len())];
        let same: Vec<&Piece> = lp.iter().filter(|(_, j)| j == k).map(|(q, _)| q).collect();
        let q = same[rng.random_range(0..same.len())];
        let u = random_point(p, &mut rng);
        let v = random_point(q, &mut rng);
        let w = join(&u, &v);
        checked += 1;
        if !lp.iter().any(|(r, j)| j == k && r.contains(&w)) {
            failures.push((u, v));
        }
    }
    ComponentReport {
        pairs_checked: checked,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{canonicalize, curve_from_poly2};
    use crate::parse::parse_poly;

    fn p(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn parallel_lines_decided_exactly() {
        // x2 breaks at -3/4 (twice) and 7: two horizontal lines, closed under ⊕
        let c =
            curve_from_poly2(&parse_poly("-3*x1^3 + -3/2*x1^3*x2^2 + -17/2*x1^3*x2^3").unwrap())
                .unwrap();
        assert_eq!(c.lines.len(), 2);
        assert_eq!(is_additive(&c).unwrap().verdict, Verdict::Additive);

        let diag = curve_from_poly2(&parse_poly("0 + 1*x1*x2 + x1^2*x2^2").unwrap()).unwrap();
        assert_eq!(diag.lines.len(), 2);
        let cert = is_additive(&diag).unwrap();
        assert_eq!(cert.verdict, Verdict::NotAdditive);
        let (u, v) = cert.witness.unwrap();
        assert!(diag.contains(&u) && diag.contains(&v) && !diag.contains(&join(&u, &v)));
    }

    fn rays(at: &[i64], dirs: &[&[i64]]) -> TropCurve {
        let pieces: Vec<(Piece, u64)> = dirs
            .iter()
            .map(|d| (Piece::Ray(p(at), d.to_vec()), 1))
            .collect();
        canonicalize(at.len(), &pieces)
    }

    fn diagonal() -> TropCurve {
        canonicalize(2, &[(Piece::Line(p(&[0, 0]), vec![1, 1]), 1)])
    }

    #[test]
    fn tropical_line_is_additive() {
        let c = curve_from_poly2(&parse_poly("0 + x1 + x2").unwrap()).unwrap();
        assert!(check_criteria(&c).unwrap().all_pass());
        let cert = is_additive(&c).unwrap();
        assert_eq!(cert.verdict, Verdict::Additive);
        assert!(cert.witness.is_none());
        assert!(closure_oracle(&c, 200, 0).passed());
        let s = spine(&c).unwrap();
        assert!(s.terminal);
        assert_eq!(s.vertices, vec![p(&[0, 0])]);
        assert_eq!(s.dirs, vec![vec![1, 1]]);
        assert!(is_contractible(&c));
    }

    #[test]
    fn two_positive_rays_fail() {
        let c = curve_from_poly2(&parse_poly("x1*x2 + x1 + x2").unwrap()).unwrap();
        let cr = check_criteria(&c).unwrap();
        assert!(!cr.one_nonneg_edge);
        let cert = is_additive(&c).unwrap();
        assert_eq!(cert.verdict, Verdict::NotAdditive);
        let (u, v) = cert.witness.unwrap();
        assert!(!c.contains(&join(&u, &v)));
        let w = closure_oracle(&c, 10, 0).witness.unwrap();
        assert_eq!(join(&w.0, &w.1), p(&[1, 1]));
    }

    #[test]
    fn bare_ray_is_not_a_set_curve() {
        let c = rays(&[0, 0], &[&[1, 0]]);
        assert!(matches!(check_criteria(&c), Err(Error::NotBalanceable(_))));
    }

    #[test]
    fn diagonal_line() {
        let c = diagonal();
        assert!(closure_oracle(&c, 100, 3).passed());
        let s = spine(&c).unwrap();
        assert_eq!((s.m(), s.terminal), (0, false));
        assert_eq!(is_additive(&c).unwrap().verdict, Verdict::Additive);
        assert!(poset_leq(&p(&[0, 0]), &p(&[2, 2]), &c).unwrap());
        assert!(!poset_leq(&p(&[0, 0]), &p(&[-1, -1]), &c).unwrap());
        assert!(poset_leq(&p(&[1, 1]), &p(&[1, 1]), &c).unwrap());
        assert!(poset_leq(&p(&[0, 0]), &p(&[0, 1]), &c).is_err());
    }

    #[test]
    fn space_example() {
        let c = rays(&[0, 0, 0], &[&[1, 1, 1], &[-1, -1, 0], &[0, 0, -1]]);
        let cert = is_additive(&c).unwrap();
        assert_eq!(cert.verdict, Verdict::CriteriaPassOraclePass);
        let s = spine(&c).unwrap();
        assert!(s.terminal);
        let cuts = cut_sets(&c, 1).unwrap();
        let (_, u12) = cuts.iter().find(|(j, _)| *j == vec![0, 1]).unwrap();
        assert_eq!(*u12, rays(&[0, 0, 0], &[&[-1, -1, 0]]));
        let below = restrict_below(&c, 1).unwrap();
        assert_eq!(below.rays.len(), 2);
    }

    #[test]
    fn vertical_line_is_additive() {
        let c = canonicalize(2, &[(Piece::Line(p(&[3, 0]), vec![0, 1]), 1)]);
        assert_eq!(fixed_coords(&c), vec![(0, rat(3))]);
        assert_eq!(is_additive(&c).unwrap().verdict, Verdict::Additive);
    }

    #[test]
    fn quadrilateral_is_not_contractible() {
        let sq = [p(&[0, 0]), p(&[1, 0]), p(&[1, 1]), p(&[0, 1])];
        let pieces: Vec<(Piece, u64)> = (0..4)
            .map(|i| (Piece::Seg(sq[i].clone(), sq[(i + 1) % 4].clone()), 1))
            .collect();
        assert!(!is_contractible(&canonicalize(2, &pieces)));
    }

    #[test]
    fn components_of_two_lines() {
        let c = canonicalize(
            2,
            &[
                (Piece::Line(p(&[0, 0]), vec![1, 1]), 1),
                (Piece::Line(p(&[0, 5]), vec![1, 1]), 1),
            ],
        );
        assert!(component_subsemigroup_check(&c, 200, 0).passed());
        assert!(!is_contractible(&c));
    }
}
