//! Additive curves in ℝ³.
//!
//! Start from the generators of Ũ_red, then cut every cone cell that meets
//! the curve at a spine vertex u_i down to the curve itself:
//!
//! * |J| = 1: the cell lies in a plane parallel to a coordinate axis pair;
//!   the cylinder over the projection dropping the J-axis does it.
//! * |J| = 2 with height coordinate c: take the planar polynomial f of the
//!   projection of a modified curve W (cut cells above u_i replaced by axis
//!   rays, one phantom vertex on top), raise it to f^N and add a univariate
//!   g(x_c) whose breakpoints sit at the heights of the spine vertices. Then
//!   F = f^N ⊕ g ties along the curve and breaks inside the cell.
//!
//! Every F is checked exactly against the curve; the growth factor of f is
//! doubled until the check passes.

use super::params::{choose_params, denominator_lcm};
use super::plane::{plane_poly_with_growth, synthesize_plane};
use super::tilde::synthesize_tilde_u_red;
use super::verify::{verify_ideal, VerifyOptions, WitnessKind};
use super::zero::{curve_outside_locus, piece_in_zero_set};
use crate::additive::{clip_piece, cut_sets, fixed_coords, is_additive, spine, Spine, Verdict};
use crate::curve::{canonicalize, Interval, Piece, TropCurve};
use crate::error::{Error, Result};
use crate::linalg::add;
use crate::poly::{poly_add, Ideal, Monomial, TropPolynomial};
use crate::scalar::{fmt_rat, rat, Rat};
use num_traits::{Signed, ToPrimitive, Zero};

const MAX_GROWTH_STEPS: u32 = 12;
const MAX_SCALE_STEPS: u32 = 16;

fn unit(n: usize, k: usize, s: i64) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); n];
    e[k] = rat(s);
    e
}

fn unit_dir(n: usize, k: usize, s: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[k] = s;
    e
}

/// Constraints a·x <= b describing the closed cone cell at `u` with negative
/// coordinates `j`.
fn cell_constraints(u: &[Rat], j: &[usize]) -> Vec<(Vec<Rat>, Rat)> {
    let n = u.len();
    let mut cons = Vec::new();
    for k in 0..n {
        cons.push((unit(n, k, 1), u[k].clone()));
        if !j.contains(&k) {
            cons.push((unit(n, k, -1), -u[k].clone()));
        }
    }
    cons
}

/// Parts of `p` outside the closed region (up to two pieces).
fn piece_minus(p: &Piece, cons: &[(Vec<Rat>, Rat)]) -> Vec<Piece> {
    let Some(q) = clip_piece(p, cons) else {
        return vec![p.clone()];
    };
    if q.dim() == 0 || p.dim() == 0 {
        return if q == *p || p.dim() == 0 {
            vec![]
        } else {
            vec![p.clone()]
        };
    }
    let (key, iv) = p.line_form().expect("1-dimensional piece");
    let (_, qiv) = q.line_form().expect("1-dimensional piece");
    let mut out = Vec::new();
    let before = match (&iv.lo, &qiv.lo) {
        (_, None) => None,
        (None, Some(ql)) => Some(Interval {
            lo: None,
            hi: Some(ql.clone()),
        }),
        (Some(l), Some(ql)) if l < ql => Some(Interval {
            lo: Some(l.clone()),
            hi: Some(ql.clone()),
        }),
        _ => None,
    };
    let after = match (&iv.hi, &qiv.hi) {
        (_, None) => None,
        (None, Some(qh)) => Some(Interval {
            lo: Some(qh.clone()),
            hi: None,
        }),
        (Some(h), Some(qh)) if qh < h => Some(Interval {
            lo: Some(qh.clone()),
            hi: Some(h.clone()),
        }),
        _ => None,
    };
    out.extend(before.map(|i| Piece::from_line_form(&key, &i)));
    out.extend(after.map(|i| Piece::from_line_form(&key, &i)));
    out
}

/// Lowest spine vertex of a plane curve when it lies weakly below `top`.
fn lowest_spine_vertex_below(pc: &TropCurve, top: &[Rat]) -> Option<Vec<Rat>> {
    let s = spine(pc).ok()?;
    let w = s.vertices.first()?;
    (w.iter().zip(top).all(|(a, b)| a <= b)).then(|| w.clone())
}

fn value(f: &TropPolynomial, x: &[Rat]) -> Result<Rat> {
    f.evaluate(x)?
        .value
        .as_rat()
        .cloned()
        .ok_or_else(|| Error::Computation("polynomial is -inf at a curve point".into()))
}

fn to_u64(x: &Rat) -> Option<u64> {
    if !x.is_integer() || x.is_negative() {
        return None;
    }
    x.to_integer().to_u64()
}

/// The pair (F, F') cutting one |J| = 2 cell, with the pieces of F kept
/// for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPolynomial {
    /// Spine vertex index (1-based).
    pub vertex: usize,
    /// The two coordinates of J (0-based).
    pub cell: [usize; 2],
    /// The remaining coordinate, on which g depends.
    pub height: usize,
    /// Planar polynomial in the J coordinates.
    pub f: TropPolynomial,
    pub scale: u64,
    /// Univariate polynomial in the height coordinate.
    pub g: TropPolynomial,
    /// F = f^N ⊕ g.
    pub full: TropPolynomial,
    /// Companion planar polynomial of the projected curve (no terminal vertex only).
    pub companion: Option<TropPolynomial>,
    /// (height, prescribed value of g), increasing in height: the anchor
    /// at u_i, then u_{i+1}, ..., u_m and the phantom vertex.
    pub anchors: Vec<(Rat, Rat)>,
}

struct CutData<'a> {
    c: &'a TropCurve,
    s: &'a Spine,
    i: usize,
    keep: [usize; 2],
    height: usize,
    /// Terminal vertex of the projected cut completed by a positive ray.
    terminal: Option<Vec<Rat>>,
    /// Projection of the modified curve W.
    pw: TropCurve,
    /// Lowest spine vertex of the projection of the whole curve (non-terminal case).
    w: Vec<Rat>,
}

impl CutData<'_> {
    fn pr(&self, x: &[Rat]) -> Vec<Rat> {
        self.keep.iter().map(|&k| x[k].clone()).collect()
    }

    /// F = f^N ⊕ g for growth factor `growth`, or `None` when this growth
    /// does not give a valid F.
    fn attempt(&self, growth: &Rat) -> Result<Option<CutPolynomial>> {
        let f = match plane_poly_with_growth(&self.pw, growth) {
            Ok(f) => f,
            Err(Error::NotAdditive { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let m = self.s.m();
        let (i, hc) = (self.i, self.height);
        let top_dir: Vec<Rat> = self
            .s
            .a(m)
            .expect("top ray")
            .iter()
            .map(|&x| rat(x))
            .collect();
        let phantom = add(self.s.u(m), &top_dir);
        let mut heights: Vec<Rat> = (1..=m).map(|k| self.s.u(k)[hc].clone()).collect();
        heights.push(phantom[hc].clone());
        let h = |k: usize| &heights[k - 1];
        let mut y = vec![Rat::zero(); m + 2];
        for k in i + 1..=m {
            y[k] = value(&f, &self.pr(self.s.u(k)))?;
        }
        y[m + 1] = value(&f, &self.pr(&phantom))?;
        let anchor = value(&f, self.terminal.as_ref().unwrap_or(&self.w))?;
        // slopes c_i..c_m
        let mut c = vec![(&y[i + 1] - &anchor) / (h(i + 1) - h(i))];
        for k in i + 1..=m {
            c.push((&y[k + 1] - &y[k]) / (h(k + 1) - h(k)));
        }
        if c.windows(2).any(|w| w[0] >= w[1]) || !c[0].is_positive() {
            return Ok(None);
        }
        let beyond = add(&phantom, &top_dir);
        let s_top = (value(&f, &self.pr(&beyond))? - &y[m + 1]) / &top_dir[hc];
        let c_top = c.last().expect("nonempty").clone();
        if s_top <= c_top {
            return Ok(None);
        }
        let mut n = denominator_lcm(&c);
        let mut guard = 0;
        while rat(n as i64) * &c[0] < rat(i as i64 + 1)
            || rat(n as i64) * (&s_top - &c_top) < rat(1)
        {
            n = match n.checked_mul(2) {
                Some(v) if guard < 64 => v,
                _ => return Ok(None),
            };
            guard += 1;
        }
        // larger N gives g more room below u_i
        for _ in 0..MAX_SCALE_STEPS {
            let nr = rat(n as i64);
            // exponents e_0..e_{m+1} of g
            let mut e: Vec<Rat> = Vec::with_capacity(m + 2);
            for k in 0..i {
                e.push(&nr * &c[0] - rat((i - k) as i64));
            }
            for ck in &c {
                e.push(&nr * ck);
            }
            e.push(&nr * &c_top + rat(1));
            let Some(eu) = e.iter().map(to_u64).collect::<Option<Vec<u64>>>() else {
                continue;
            };
            // tie points and values
            let mut coeff = vec![Rat::zero(); m + 2];
            for k in i..=m {
                coeff[k] = &nr * &y[k + 1] - &e[k] * h(k + 1);
            }
            coeff[m + 1] = &nr * &y[m + 1] - &e[m + 1] * h(m + 1);
            let gval = |k: usize, x: &Rat, coeff: &[Rat]| &coeff[k] + &e[k] * x;
            for k in (0..i).rev() {
                let tie = if k + 1 == i && self.terminal.is_some() {
                    let eps = if i == 1 {
                        Rat::new(1.into(), 2.into())
                    } else {
                        (h(i) - h(i - 1)) / rat(2)
                    };
                    h(i) - eps
                } else {
                    h(k + 1).clone()
                };
                let v = gval(k + 1, &tie, &coeff);
                coeff[k] = v - &e[k] * &tie;
            }
            let Some(fs) = f.scale_checked(n) else {
                return Ok(None);
            };
            let mut map = [0usize; 2];
            map.copy_from_slice(&self.keep);
            let big = fs.embed(3, &map);
            let mons: Vec<Monomial> = (0..m + 2)
                .map(|k| {
                    let mut x = vec![0; 3];
                    x[hc] = eu[k];
                    Monomial::new(coeff[k].clone(), x)
                })
                .collect();
            let g = TropPolynomial::new(3, mons)?;
            let full = poly_add(&big, &g)?;
            // every monomial of g must be essential on its own
            let essential = g.simple_essential().is_some_and(|e| e.len() == g.len());
            if essential
                && self
                    .c
                    .pieces()
                    .iter()
                    .all(|(p, _)| piece_in_zero_set(&full, p))
            {
                let mut anchors = vec![(h(i).clone(), &nr * &anchor)];
                anchors.extend((i + 1..=m + 1).map(|k| (h(k).clone(), &nr * &y[k])));
                return Ok(Some(CutPolynomial {
                    vertex: i,
                    cell: self.keep,
                    height: hc,
                    f: f.clone(),
                    scale: n,
                    g,
                    full,
                    companion: None,
                    anchors,
                }));
            }
            n = match n.checked_mul(2) {
                Some(v) => v,
                None => return Ok(None),
            };
        }
        Ok(None)
    }
}

/// Generators cutting the cell J = {a, b} at spine vertex u_i down to the curve.
fn two_cell_generators(
    c: &TropCurve,
    s: &Spine,
    i: usize,
    j: &[usize],
    cut: &TropCurve,
) -> Result<CutPolynomial> {
    let keep = [j[0], j[1]];
    let height = (0..3)
        .find(|k| !j.contains(k))
        .expect("J has two of three coordinates");
    let m = s.m();
    let pr = |x: &[Rat]| -> Vec<Rat> { keep.iter().map(|&k| x[k].clone()).collect() };
    let v = cut.project(&keep);
    let top = pr(s.u(i));
    let mut vp = v.pieces();
    vp.push((Piece::Ray(top.clone(), vec![1, 1]), 1));
    let vhat = canonicalize(2, &vp);
    let vs =
        spine(&vhat).map_err(|e| Error::Computation(format!("projected cut has no spine: {e}")))?;
    let terminal = vs.terminal.then(|| vs.u(1).to_vec());
    // W: drop the J-cells above u_i, add axis rays there and at a phantom top vertex
    let cc = c.canonical();
    let mut pieces: Vec<(Piece, u64)> = cc.pieces();
    let mut extra: Vec<Vec<Rat>> = Vec::new();
    if terminal.is_none() {
        // axis rays at u_i let the growth factor steepen f above it
        extra.push(s.u(i).to_vec());
    }
    for k in i + 1..=m {
        let cons = cell_constraints(s.u(k), j);
        pieces = pieces
            .iter()
            .flat_map(|(p, w)| piece_minus(p, &cons).into_iter().map(move |q| (q, *w)))
            .collect();
        extra.push(s.u(k).to_vec());
    }
    let top_dir: Vec<Rat> = s.a(m).expect("top ray").iter().map(|&x| rat(x)).collect();
    extra.push(add(s.u(m), &top_dir));
    for u in &extra {
        for &a in &keep {
            pieces.push((Piece::Ray(u.clone(), unit_dir(3, a, -1)), 1));
        }
    }
    let pw = canonicalize(3, &pieces).project(&keep).unweighted();
    let pc = cc.project(&keep).unweighted();
    let w = lowest_spine_vertex_below(&pc, &top).unwrap_or(top);
    let data = CutData {
        c: &cc,
        s,
        i,
        keep,
        height,
        terminal: terminal.clone(),
        pw,
        w,
    };
    let mut growth = rat(2);
    for _ in 0..MAX_GROWTH_STEPS {
        if let Some(mut cp) = data.attempt(&growth)? {
            if terminal.is_none() {
                cp.companion = Some(synthesize_plane(&pc)?.embed(3, &keep));
            }
            return Ok(cp);
        }
        growth *= rat(2);
    }
    Err(Error::Computation(format!(
        "no growth factor separates the cell {j:?} at spine vertex {i}"
    )))
}

/// Hyperplane reduction: a curve with constant coordinates.
fn reduced_generators(c: &TropCurve, fixed: &[(usize, Rat)]) -> Result<Vec<TropPolynomial>> {
    let n = c.dim;
    let mut gens = Vec::new();
    for (j, v) in fixed {
        gens.push(TropPolynomial::new(
            n,
            vec![
                Monomial::new(
                    rat(0),
                    unit_dir(n, *j, 1).iter().map(|&x| x as u64).collect(),
                ),
                Monomial::new(v.clone(), vec![0; n]),
            ],
        )?);
    }
    let keep: Vec<usize> = (0..n)
        .filter(|k| !fixed.iter().any(|(f, _)| f == k))
        .collect();
    match keep.len() {
        0 | 1 => {}
        2 => gens.push(synthesize_plane(&c.project(&keep))?.embed(n, &keep)),
        _ => {
            return Err(Error::Unsupported(
                "reduction leaves more than two free coordinates".into(),
            ))
        }
    }
    Ok(gens)
}

fn push_new(gens: &mut Vec<TropPolynomial>, g: TropPolynomial) {
    if !gens.contains(&g) {
        gens.push(g);
    }
}

/// The |J| = 2 cut polynomials of an additive curve in ℝ³ (empty when the
/// curve lies in a coordinate hyperplane or has no such cell).
pub fn cut_polynomials(c: &TropCurve) -> Result<Vec<CutPolynomial>> {
    if c.dim != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: c.dim,
        });
    }
    if !fixed_coords(c).is_empty() {
        return Ok(vec![]);
    }
    let s = spine(c)?;
    let mut out = Vec::new();
    for i in 1..=s.m() {
        for (j, cut) in cut_sets(c, i)? {
            if j.len() == 2 {
                out.push(two_cell_generators(c, &s, i, &j, &cut)?);
            }
        }
    }
    Ok(out)
}

/// Simple generators for an additive curve in ℝ³, checked exactly on the
/// curve and by seeded sampling off it.
pub fn synthesize_space_curve(c: &TropCurve, cgap: u64) -> Result<Ideal> {
    if c.dim != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: c.dim,
        });
    }
    if c.canonical().is_empty() {
        return Err(Error::InvalidArgument("empty curve".into()));
    }
    let cert = is_additive(c)?;
    if cert.verdict == Verdict::NotAdditive {
        return Err(Error::NotAdditive {
            witness: cert.witness,
        });
    }
    let fixed = fixed_coords(c);
    let gens = if !fixed.is_empty() {
        reduced_generators(c, &fixed)?
    } else {
        let s = spine(c)?;
        let params = choose_params(&s, &[], cgap)?;
        let mut gens = synthesize_tilde_u_red(c, &params)?.generators().to_vec();
        for i in 1..=s.m() {
            for (j, cut) in cut_sets(c, i)? {
                match j.len() {
                    1 => {
                        let keep: Vec<usize> = (0..3).filter(|k| *k != j[0]).collect();
                        push_new(
                            &mut gens,
                            synthesize_plane(&c.project(&keep))?.embed(3, &keep),
                        );
                    }
                    _ => {
                        let cp = two_cell_generators(c, &s, i, &j, &cut)?;
                        push_new(&mut gens, cp.full);
                        if let Some(g) = cp.companion {
                            push_new(&mut gens, g);
                        }
                    }
                }
            }
        }
        gens
    };
    let ideal = Ideal::new(gens)?;
    if let Some(x) = curve_outside_locus(&ideal, c) {
        return Err(Error::Computation(format!(
            "generators miss the curve at {}",
            show(&x)
        )));
    }
    let report = verify_ideal(
        &ideal,
        c,
        &VerifyOptions {
            off_samples: 200,
            seed: 0,
        },
    )?;
    if let Some(w) = report
        .witnesses
        .iter()
        .find(|w| w.kind == WitnessKind::OffCurveHit)
    {
        return Err(Error::Computation(format!(
            "common locus is larger than the curve, e.g. at {}",
            show(&w.point)
        )));
    }
    Ok(ideal)
}

fn show(x: &[Rat]) -> String {
    format!("({})", x.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
}

/// Dispatch on the ambient dimension: one generator in the plane, the space
/// construction in ℝ³.
pub fn synthesize_curve(c: &TropCurve, cgap: u64) -> Result<Ideal> {
    match c.dim {
        2 => Ideal::new(vec![synthesize_plane(c)?]),
        3 => synthesize_space_curve(c, cgap),
        n => Err(Error::Unsupported(format!(
            "synthesis in dimension {n} (only 2 and 3)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::params::DEFAULT_CGAP;
    use super::*;

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn tripod() -> TropCurve {
        canonicalize(
            3,
            &[
                (Piece::Ray(p(&[0, 0, 0]), vec![1, 1, 1]), 1),
                (Piece::Ray(p(&[0, 0, 0]), vec![-1, -1, 0]), 1),
                (Piece::Ray(p(&[0, 0, 0]), vec![0, 0, -1]), 1),
            ],
        )
    }

    #[test]
    fn piece_minus_splits() {
        let seg = Piece::Seg(p(&[-2, 0, 0]), p(&[2, 0, 0]));
        let cons = cell_constraints(&p(&[0, 0, 0]), &[0]);
        assert_eq!(
            piece_minus(&seg, &cons),
            vec![Piece::Seg(p(&[0, 0, 0]), p(&[2, 0, 0]))]
        );
        let ray = Piece::Ray(p(&[0, 0, 0]), vec![-1, -1, 0]);
        assert!(piece_minus(&ray, &cell_constraints(&p(&[0, 0, 0]), &[0, 1])).is_empty());
    }

    #[test]
    fn tripod_ideal_is_exact() {
        let c = tripod();
        let id = synthesize_space_curve(&c, DEFAULT_CGAP).unwrap();
        assert!(id.is_simple());
        assert!(curve_outside_locus(&id, &c).is_none());
        // the cell {1,2} at the vertex minus the ray itself
        for x in [
            p(&[-1, -2, 0]),
            p(&[-3, 0, 0]),
            p(&[0, -1, 0]),
            p(&[-1, 0, -1]),
        ] {
            assert!(!id.contains(&x).unwrap(), "{x:?}");
        }
    }

    #[test]
    fn non_additive_is_refused() {
        // tripod with the spine tilted off the positive orthant
        let c = canonicalize(
            3,
            &[
                (Piece::Ray(p(&[0, 0, 0]), vec![1, 1, -1]), 1),
                (Piece::Ray(p(&[0, 0, 0]), vec![-1, -1, 0]), 1),
                (Piece::Ray(p(&[0, 0, 0]), vec![0, 0, 1]), 1),
            ],
        );
        assert!(matches!(
            synthesize_space_curve(&c, DEFAULT_CGAP),
            Err(Error::NotAdditive { .. })
        ));
    }

    #[test]
    fn diagonal_line_in_space() {
        let c = canonicalize(3, &[(Piece::Line(p(&[0, 0, 0]), vec![1, 1, 1]), 1)]);
        let id = synthesize_space_curve(&c, DEFAULT_CGAP).unwrap();
        assert!(id.contains(&p(&[5, 5, 5])).unwrap());
        assert!(!id.contains(&p(&[5, 5, 4])).unwrap());
    }
}
