//! Generators for the spine closure Ũ and its reduction Ũ_red.
//!
//! Ũ is the spine together with every negative cone cell at every spine
//! vertex. One polynomial f_kℓ per coordinate pair pins the spine down; the
//! B and C monomials (exponent offsets ∓j) keep the other coordinates from
//! interfering. Ũ_red keeps only the cone cells that meet the curve; each
//! missing cell Σ_{u_i}(K) gets its own polynomial f_{i,K} whose maximum at
//! u_i is broken on that cell.

use super::params::SynthesisParams;
use super::zero::curve_outside_locus;
use crate::additive::{spine, Spine};
use crate::curve::cone_cells;
use crate::curve::TropCurve;
use crate::error::{Error, Result};
use crate::linalg::{add, sub};
use crate::poly::{Ideal, Monomial, TropPolynomial};
use crate::scalar::Rat;
use num_traits::Zero;

fn r64(x: u64) -> Rat {
    Rat::from_integer(x.into())
}

fn mono(n: usize, j: usize, e: u64, value: &Rat, at: &[Rat]) -> Monomial {
    let mut exps = vec![0; n];
    exps[j] = e;
    Monomial::new(value - r64(e) * &at[j], exps)
}

fn check_params(s: &Spine, params: &SynthesisParams) -> Result<()> {
    if params.m() != s.m() || params.vertices != s.vertices {
        return Err(Error::InvalidArgument(
            "parameters were chosen for a different spine".into(),
        ));
    }
    Ok(())
}

/// Binomials for a spine that is a single line through `q`.
fn line_generators(q: &[Rat], params: &SynthesisParams) -> Result<Vec<TropPolynomial>> {
    let n = params.n();
    let mut out = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            let z = Rat::zero();
            out.push(TropPolynomial::new(
                n,
                vec![
                    mono(n, k, params.b(0, k), &z, q),
                    mono(n, l, params.b(0, l), &z, q),
                ],
            )?);
        }
    }
    Ok(out)
}

/// Coefficients of f_kℓ. Indices are 1-based spine indices; `a` runs over
/// pieces (piece 0 only for a non-terminal spine), `b` and `c` over the
/// remaining coordinates j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSolution {
    pub k: usize,
    pub l: usize,
    /// (piece i, j, A_ij, exponent b(i,j)) for j in {k, l}.
    pub a: Vec<(usize, usize, Rat, u64)>,
    /// (i, j, B_ij, exponent b(i,j) - (j+1)).
    pub b: Vec<(usize, usize, Rat, u64)>,
    /// (i, j, C_ij, exponent b(i,j) + (j+1)).
    pub c: Vec<(usize, usize, Rat, u64)>,
    /// Constant replacing piece 0 on a terminal spine.
    pub constant: Option<Rat>,
}

impl CoefficientSolution {
    /// Solves the tie conditions with the gauge f_kℓ(u_1) = 0: every
    /// monomial attached to u_i takes the value M_i there.
    pub fn solve(params: &SynthesisParams, k: usize, l: usize) -> Result<Self> {
        let n = params.n();
        let m = params.m();
        let mv = params.vertex_values();
        let at = |e: u64, j: usize, i: usize| &mv[i - 1] - r64(e) * &params.vertices[i - 1][j];
        let first = if params.terminal { 1 } else { 0 };
        let mut sol = CoefficientSolution {
            k,
            l,
            a: vec![],
            b: vec![],
            c: vec![],
            constant: params.terminal.then(Rat::zero),
        };
        for i in first..=m {
            for j in [k, l] {
                let e = params.b(i, j);
                sol.a.push((i, j, at(e, j, i.max(1)), e));
            }
        }
        for j in (0..n).filter(|&j| j != k && j != l) {
            let off = j as u64 + 1;
            for i in 1..=m {
                let e = params.b(i, j).checked_sub(off).ok_or_else(|| {
                    Error::Computation("gap too small for the offset monomials".into())
                })?;
                sol.b.push((i, j, at(e, j, i), e));
            }
            for i in first..m {
                let e = params.b(i, j) + off;
                sol.c.push((i, j, at(e, j, i + 1), e));
            }
        }
        Ok(sol)
    }

    pub fn polynomial(&self, n: usize) -> Result<TropPolynomial> {
        let mono = |j: usize, e: u64, v: &Rat| {
            let mut x = vec![0; n];
            x[j] = e;
            Monomial::new(v.clone(), x)
        };
        let mut mons: Vec<Monomial> = self
            .constant
            .iter()
            .map(|v| Monomial::new(v.clone(), vec![0; n]))
            .collect();
        for (_, j, v, e) in self.a.iter().chain(&self.b).chain(&self.c) {
            mons.push(mono(*j, *e, v));
        }
        TropPolynomial::new(n, mons)
    }

    /// Replays every tie equation exactly: at u_i the pieces i-1 and i, B_i
    /// and C_{i-1} all equal M_i, the coordinate pair satisfies
    /// a_ik b(i,k) = a_il b(i,l), and M_1 = 0.
    pub fn replay(&self, params: &SynthesisParams) -> bool {
        let mv = params.vertex_values();
        let m = params.m();
        let val = |v: &Rat, e: u64, j: usize, i: usize| v + r64(e) * &params.vertices[i - 1][j];
        if mv.first().is_some_and(|x| !x.is_zero()) {
            return false;
        }
        for &(i, j, ref v, e) in &self.a {
            if e != params.b(i, j) {
                return false;
            }
            if i >= 1 && val(v, e, j, i) != mv[i - 1] {
                return false;
            }
            if i < m && val(v, e, j, i + 1) != mv[i] {
                return false;
            }
        }
        for &(i, j, ref v, e) in &self.b {
            if val(v, e, j, i) != mv[i - 1] {
                return false;
            }
        }
        for &(i, j, ref v, e) in &self.c {
            if val(v, e, j, i + 1) != mv[i] {
                return false;
            }
        }
        if let Some(c0) = &self.constant {
            if *c0 != mv[0] {
                return false;
            }
        }
        (0..=m).all(|i| {
            params.dirs[i][self.k] * params.b(i, self.k)
                == params.dirs[i][self.l] * params.b(i, self.l)
        })
    }
}

/// f_kℓ for 0-based k < ℓ; every monomial must be essential.
fn f_pair(params: &SynthesisParams, k: usize, l: usize) -> Result<TropPolynomial> {
    let sol = CoefficientSolution::solve(params, k, l)?;
    if !sol.replay(params) {
        return Err(Error::Computation(
            "coefficient system inconsistent with the parameters".into(),
        ));
    }
    let f = sol.polynomial(params.n())?;
    if f.simple_essential().is_none_or(|e| e.len() != f.len()) {
        return Err(Error::Computation(format!(
            "f_{}{} has a non-essential monomial",
            k + 1,
            l + 1
        )));
    }
    Ok(f)
}

/// Generators of Ũ for the spine of `c`, normalised so that each takes the
/// value 0 at u_1.
pub fn synthesize_tilde_u(c: &TropCurve, params: &SynthesisParams) -> Result<Ideal> {
    let s = spine(c)?;
    check_params(&s, params)?;
    let n = params.n();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "need at least two coordinates".into(),
        ));
    }
    if s.m() == 0 {
        let cc = c.canonical();
        return Ideal::new(line_generators(&cc.lines[0].point, params)?);
    }
    let mut gens = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            gens.push(f_pair(params, k, l)?);
        }
    }
    Ideal::new(gens)
}

/// Spine extended by phantom vertices u_0 = u_1 - a_0 and u_{m+1} = u_m + a_m,
/// with values and exponents for pieces -1..=m+1 (stored shifted by one).
struct Extended {
    verts: Vec<Vec<Rat>>,
    vals: Vec<Rat>,
    exps: Vec<Vec<u64>>,
}

fn extended(params: &SynthesisParams, p: &[u64]) -> Result<Extended> {
    let m = params.m();
    let n = params.n();
    let dir = |i: usize| -> Vec<Rat> { params.dirs[i].iter().map(|&x| r64(x)).collect() };
    let mut verts = vec![sub(&params.vertices[0], &dir(0))];
    verts.extend(params.vertices.iter().cloned());
    verts.push(add(&params.vertices[m - 1], &dir(m)));
    let mut vals = vec![-r64(p[0]), Rat::zero()];
    for k in 1..m {
        let mu = (&verts[k + 1][0] - &verts[k][0]) / r64(params.dirs[k][0]);
        let next = &vals[k] + r64(p[k]) * mu;
        vals.push(next);
    }
    vals.push(&vals[m] + r64(p[m]));
    let b = |i: usize, j: usize| p[i] / params.dirs[i][j];
    let mut exps = vec![(0..n).map(|j| b(0, j) / 2).collect::<Vec<u64>>()];
    for i in 0..=m {
        exps.push((0..n).map(|j| b(i, j)).collect());
    }
    let top = (0..n)
        .map(|j| b(m, j).checked_mul(2))
        .collect::<Option<Vec<u64>>>()
        .ok_or_else(|| Error::Computation("exponent overflow".into()))?;
    exps.push(top);
    Ok(Extended { verts, vals, exps })
}

/// p-sequence for a singleton K: p_i is tied to p_{i-1} so that the j0
/// monomials of pieces i-1 and i coincide.
fn singleton_p(params: &SynthesisParams, i: usize, j0: usize) -> Result<Vec<u64>> {
    let ovf = || Error::Computation("exponent overflow".into());
    let (prev, cur) = (&params.dirs[i - 1], &params.dirs[i]);
    let lift = 2 * cur.iter().product::<u64>() * prev[j0];
    let mut p: Vec<u64> = params
        .p
        .iter()
        .map(|&x| x.checked_mul(lift).ok_or_else(ovf))
        .collect::<Result<_>>()?;
    p[i] = p[i - 1] / prev[j0] * cur[j0];
    let n = params.n();
    for k in i + 1..=params.m() {
        while (0..n).any(|j| p[k] / params.dirs[k][j] < p[k - 1] / params.dirs[k - 1][j] + 2) {
            p[k] = p[k].checked_mul(2).ok_or_else(ovf)?;
        }
    }
    Ok(p)
}

/// f_{i,K}: contains Ũ_red, misses the open cell Σ_{u_i}(K). Spine index
/// `i` is 1-based, K holds 0-based coordinates.
pub fn cell_breaker(params: &SynthesisParams, i: usize, k: &[usize]) -> Result<TropPolynomial> {
    let n = params.n();
    let m = params.m();
    if i == 0 || i > m || k.is_empty() || k.len() >= n {
        return Err(Error::InvalidArgument(
            "need 1 <= i <= m and a nonempty proper K".into(),
        ));
    }
    let outside: Vec<usize> = (0..n).filter(|j| !k.contains(j)).collect();
    let (p, j0, shared) = if k.len() == 1 {
        let ratio = |j: usize| r64(params.dirs[i][j]) / r64(params.dirs[i - 1][j]);
        let j0 = *outside
            .iter()
            .max_by(|&&a, &&b| ratio(a).cmp(&ratio(b)))
            .expect("n >= 2");
        (singleton_p(params, i, j0)?, j0, true)
    } else {
        (params.p.clone(), outside[0], false)
    };
    let ext = extended(params, &p)?;
    let mut mons = Vec::new();
    for (slot, exps) in ext.exps.iter().enumerate() {
        let piece = slot as i64 - 1;
        let anchor = if piece < i as i64 {
            piece.max(0) as usize
        } else {
            (piece as usize + 1).min(m + 1)
        };
        for j in 0..n {
            let mut e = exps[j];
            if piece == i as i64 - 1 && !k.contains(&j) && j != j0 {
                e -= 1;
            }
            if piece == i as i64 && !k.contains(&j) && !(shared && j == j0) {
                e += 1;
            }
            mons.push(mono(n, j, e, &ext.vals[anchor], &ext.verts[anchor]));
        }
    }
    TropPolynomial::new(n, mons)
}

/// Uncovered cells at each spine vertex: (spine index, K).
pub fn missing_cells(c: &TropCurve) -> Result<Vec<(usize, Vec<usize>)>> {
    let s = spine(c)?;
    let cc = c.canonical();
    let n = c.dim;
    let mut out = Vec::new();
    for i in 1..=s.m() {
        let vi = cc
            .vertices
            .iter()
            .position(|v| v.as_slice() == s.u(i))
            .expect("spine vertex is a vertex");
        let cells = cone_cells(&cc, vi);
        for mask in 1u32..((1u32 << n) - 1) {
            let kk: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
            if !cells.iter().any(|j| kk.iter().all(|x| j.contains(x))) {
                out.push((i, kk));
            }
        }
    }
    Ok(out)
}

/// Generators of Ũ_red: those of Ũ plus one f_{i,K} per missing cell.
/// Checked exactly to contain the curve.
pub fn synthesize_tilde_u_red(c: &TropCurve, params: &SynthesisParams) -> Result<Ideal> {
    let base = synthesize_tilde_u(c, params)?;
    let mut gens = base.generators().to_vec();
    for (i, k) in missing_cells(c)? {
        gens.push(cell_breaker(params, i, &k)?);
    }
    let ideal = Ideal::new(gens)?;
    if let Some(x) = curve_outside_locus(&ideal, c) {
        return Err(Error::Computation(format!(
            "spine generators miss the curve at {:?}",
            x.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(ideal)
}

/// The point u_i - δ Σ_{j∈K} e_j, inside the open cell Σ_{u_i}(K).
pub fn cell_point(u: &[Rat], k: &[usize], delta: &Rat) -> Vec<Rat> {
    let mut x = u.to_vec();
    for &j in k {
        x[j] -= delta;
    }
    x
}
