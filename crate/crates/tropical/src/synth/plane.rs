//! Simple polynomials for additive plane curves.
//!
//! An additive plane curve is a monotone spine with axis rays hanging off it.
//! Write f = c ⊕ F1(x1) ⊕ F2(x2) and walk up the spine: on a spine segment
//! with direction (d1,d2) the slopes are t·(d2,d1) so that F1 and F2 stay
//! tied. A vertical ray at a vertex means F1 breaks there, a horizontal ray
//! means F2 breaks; the other slope must carry over unchanged.

use super::params::denominator_lcm;
use crate::additive::{fixed_coords, is_additive, parallel_lines, spine, Spine, Verdict};
use crate::curve::curve_from_poly2;
use crate::curve::{Piece, TropCurve};
use crate::error::{Error, Result};
use crate::poly::{poly_mul, poly_power, Monomial, TropPolynomial};
use crate::scalar::{rat, Rat};
use num_traits::{Signed, ToPrimitive, Zero};

fn to_u64(x: &Rat) -> Result<u64> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::Computation(format!(
            "exponent {x} is not a natural number"
        )));
    }
    x.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Computation("exponent overflow".into()))
}

fn has_ray(c: &TropCurve, v: &[Rat], d: [i64; 2]) -> bool {
    c.pieces().iter().any(|(p, _)| match p {
        Piece::Ray(x, dir) => x.as_slice() == v && dir.as_slice() == d,
        Piece::Seg(a, b) => {
            (a.as_slice() == v && b[1 - axis(d)] == v[1 - axis(d)] && b[axis(d)] < v[axis(d)])
                || (b.as_slice() == v
                    && a[1 - axis(d)] == v[1 - axis(d)]
                    && a[axis(d)] < v[axis(d)])
        }
        _ => false,
    })
}

fn axis(d: [i64; 2]) -> usize {
    if d[0] != 0 {
        0
    } else {
        1
    }
}

/// Slope multipliers t_0..t_m (t_0 unused for a terminal spine).
fn slope_scales(c: &TropCurve, s: &Spine, growth: &Rat) -> Result<Vec<Rat>> {
    let m = s.m();
    let dir = |k: usize| -> Vec<Rat> {
        s.a(k)
            .expect("spine direction")
            .iter()
            .map(|&x| rat(x))
            .collect()
    };
    let mut t = vec![Rat::zero(); m + 1];
    let start = if s.terminal { 1 } else { 0 };
    t[start] = rat(1);
    for k in start + 1..=m {
        let (prev, cur) = (dir(k - 1), dir(k));
        let u = s.u(k);
        let vert = has_ray(c, u, [0, -1]);
        let horiz = has_ray(c, u, [-1, 0]);
        // slope of F1 on e_k is t_k * a_k2, of F2 is t_k * a_k1
        t[k] = match (vert, horiz) {
            (true, true) => {
                let r1 = &prev[1] / &cur[1];
                let r2 = &prev[0] / &cur[0];
                &t[k - 1] * r1.max(r2) * growth
            }
            (true, false) => &t[k - 1] * &prev[0] / &cur[0],
            (false, true) => &t[k - 1] * &prev[1] / &cur[1],
            (false, false) => {
                return Err(Error::Computation(
                    "spine vertex without an axis ray".into(),
                ))
            }
        };
        let s1_up = &t[k] * &cur[1] > &t[k - 1] * &prev[1];
        let s2_up = &t[k] * &cur[0] > &t[k - 1] * &prev[0];
        if s1_up != vert || s2_up != horiz {
            return Err(Error::NotAdditive { witness: None });
        }
    }
    Ok(t)
}

/// Simple polynomial for an additive curve in plane normal form, with growth
/// factor `growth` (> 1) at vertices carrying both axis rays. No verification.
pub(crate) fn plane_poly_with_growth(c: &TropCurve, growth: &Rat) -> Result<TropPolynomial> {
    let c = c.unweighted();
    if c.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: c.dim,
        });
    }
    let fixed = fixed_coords(&c);
    if let Some((j, v)) = fixed.first() {
        let mut e = vec![0, 0];
        e[*j] = 1;
        return TropPolynomial::new(
            2,
            vec![
                Monomial::new(rat(0), e),
                Monomial::new(v.clone(), vec![0, 0]),
            ],
        );
    }
    let s = spine(&c)?;
    if s.m() == 0 {
        let l = &c.lines[0];
        let (a1, a2) = (l.dir[0], l.dir[1]);
        let cst = rat(a2) * &l.point[0] - rat(a1) * &l.point[1];
        let scale = denominator_lcm(&[cst.clone()]);
        let k = rat(scale as i64);
        return TropPolynomial::new(
            2,
            vec![
                Monomial::new(rat(0), vec![a2 as u64 * scale, 0]),
                Monomial::new(cst * k, vec![0, a1 as u64 * scale]),
            ],
        );
    }
    let m = s.m();
    let t = slope_scales(&c, &s, growth)?;
    let start = if s.terminal { 1 } else { 0 };
    let mut ts: Vec<Rat> = t[start..].to_vec();
    // slopes on e_k: (t_k a_k2, t_k a_k1); clear all denominators
    let mut slope_parts = Vec::new();
    for (k, tk) in t.iter().enumerate().skip(start) {
        let a = s.a(k).expect("spine direction");
        slope_parts.push(tk * rat(a[1]));
        slope_parts.push(tk * rat(a[0]));
    }
    let n = rat(denominator_lcm(&slope_parts) as i64);
    for x in ts.iter_mut() {
        *x *= &n;
    }
    let slope = |k: usize| -> (Rat, Rat) {
        let a = s.a(k).expect("spine direction");
        let tk = &ts[k - start];
        (tk * rat(a[1]), tk * rat(a[0]))
    };
    // values along the spine, V(u_1) = 0
    let mut vals = vec![Rat::zero()];
    for k in 1..m {
        let (s1, _) = slope(k);
        let step = &s.u(k + 1)[0] - &s.u(k)[0];
        let next = &vals[k - 1] + s1 * step;
        vals.push(next);
    }
    let mut mons = Vec::new();
    if s.terminal {
        mons.push(Monomial::new(vals[0].clone(), vec![0, 0]));
    }
    for k in start..=m {
        let anchor = k.max(1);
        let u = s.u(anchor);
        let v = &vals[anchor - 1];
        let (s1, s2) = slope(k);
        mons.push(Monomial::new(v - &s1 * &u[0], vec![to_u64(&s1)?, 0]));
        mons.push(Monomial::new(v - &s2 * &u[1], vec![0, to_u64(&s2)?]));
    }
    TropPolynomial::new(2, mons)
}

/// Lines x_k = c_i (weights w_i) as the univariate product of (c_i ⊕ x_k)^w_i.
fn axis_lines_poly(c: &TropCurve) -> Result<TropPolynomial> {
    let k = c.lines[0]
        .dir
        .iter()
        .position(|&x| x == 0)
        .expect("axis parallel");
    let mut e = vec![0; 2];
    e[k] = 1;
    let mut f = TropPolynomial::from_terms(2, vec![(Rat::zero(), vec![0, 0])])?;
    for l in &c.lines {
        let w =
            u32::try_from(l.weight).map_err(|_| Error::Computation("weight too large".into()))?;
        let g = TropPolynomial::from_terms(
            2,
            vec![(l.point[k].clone(), vec![0, 0]), (Rat::zero(), e.clone())],
        )?;
        f = poly_mul(&f, &poly_power(&g, w)?)?;
    }
    Ok(f)
}

/// Simple polynomial whose corner locus is the additive plane curve `c`.
///
/// The result is checked by recomputing its corner locus exactly.
pub fn synthesize_plane(c: &TropCurve) -> Result<TropPolynomial> {
    if c.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: c.dim,
        });
    }
    let cert = is_additive(c)?;
    if cert.verdict == Verdict::NotAdditive {
        return Err(Error::NotAdditive {
            witness: cert.witness,
        });
    }
    let f = match parallel_lines(&c.canonical()) {
        Some(true) => axis_lines_poly(&c.canonical())?,
        _ => plane_poly_with_growth(c, &rat(2))?,
    };
    let back = curve_from_poly2(&f)?.unweighted();
    if back != c.unweighted() {
        return Err(Error::Computation(
            "synthesized polynomial does not reproduce the curve".into(),
        ));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::canonicalize;
    use crate::parse::parse_poly;

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn roundtrip(src: &str) {
        let c = curve_from_poly2(&parse_poly(src).unwrap()).unwrap();
        let f = synthesize_plane(&c).unwrap();
        assert!(f.is_simple());
        assert_eq!(
            curve_from_poly2(&f).unwrap().unweighted(),
            c.unweighted(),
            "{src}"
        );
    }

    #[test]
    fn parallel_axis_lines() {
        roundtrip("-3*x1^3 + -3/2*x1^3*x2^2 + -17/2*x1^3*x2^3");
        // vertical lines; the factor x2 does not move the corner locus
        roundtrip("x1*x2 + 2*x1^2*x2 + 1*x1^3*x2");
    }

    #[test]
    fn tropical_line() {
        roundtrip("0 + x1 + x2");
    }

    #[test]
    fn diagonal_is_a_binomial() {
        let c = curve_from_poly2(&parse_poly("x1 + x2").unwrap()).unwrap();
        let f = synthesize_plane(&c).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f, parse_poly("x1 + x2").unwrap());
    }

    #[test]
    fn vertical_line() {
        let c = canonicalize(2, &[(Piece::Line(p(&[3, 0]), vec![0, 1]), 1)]);
        let f = synthesize_plane(&c).unwrap();
        assert_eq!(f, crate::parse::parse_poly_n("x1 + 3", 2).unwrap());
    }

    #[test]
    fn staircase_curves() {
        roundtrip("0 + x1 + x2 + 1*x1^3 + 2*x2^2");
        roundtrip("0 + 1*x1 + -1*x1^2 + -5*x1^4 + 2*x2 + -3*x2^3");
        roundtrip("x1 + x2 + -1*x1^3 + 4*x2^2");
    }

    #[test]
    fn mixed_monomial_is_rejected() {
        let c = curve_from_poly2(&parse_poly("x1*x2 + x1 + x2").unwrap()).unwrap();
        assert!(matches!(
            synthesize_plane(&c),
            Err(Error::NotAdditive { .. })
        ));
    }

    #[test]
    fn sloped_line() {
        let c = canonicalize(2, &[(Piece::Line(p(&[1, 0]), vec![1, 2]), 1)]);
        let f = synthesize_plane(&c).unwrap();
        assert_eq!(f, parse_poly("x1^2 + 2*x2").unwrap());
    }
}
