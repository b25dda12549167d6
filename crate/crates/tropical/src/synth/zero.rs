//! Exact containment of a piece in a corner locus.
//!
//! Along x(τ) = p + τd every monomial is affine in τ, so the maximum is an
//! upper envelope of lines. The piece lies in the locus iff on every open
//! interval between consecutive crossings the envelope is attained twice.

use crate::curve::{dir_rat, Piece, TropCurve};
use crate::linalg::{dot, sub};
use crate::poly::{Ideal, TropPolynomial};
use crate::scalar::{rat, Rat};
use num_traits::{One, Zero};

fn affine_forms(f: &TropPolynomial, p: &[Rat], d: &[Rat]) -> Vec<(Rat, Rat)> {
    f.monomials()
        .iter()
        .filter_map(|m| {
            let c = m.coeff.as_rat()?;
            let e: Vec<Rat> = m
                .exps
                .iter()
                .map(|&x| Rat::from_integer(x.into()))
                .collect();
            Some((c + dot(&e, p), dot(&e, d)))
        })
        .collect()
}

fn tied_at(forms: &[(Rat, Rat)], t: &Rat) -> bool {
    let vals: Vec<Rat> = forms.iter().map(|(a, b)| a + b * t).collect();
    let Some(best) = vals.iter().max() else {
        return true;
    };
    vals.iter().filter(|v| *v == best).count() >= 2
}

/// Every point of `piece` lies in the corner locus of `f`.
pub fn piece_in_zero_set(f: &TropPolynomial, piece: &Piece) -> bool {
    if f.is_bottom() {
        return true;
    }
    let (p, d, lo, hi): (Vec<Rat>, Vec<Rat>, Option<Rat>, Option<Rat>) = match piece {
        Piece::Point(x) => return f.eval(x).is_corner(),
        Piece::Seg(a, b) if a == b => return f.eval(a).is_corner(),
        Piece::Seg(a, b) => (a.clone(), sub(b, a), Some(Rat::zero()), Some(Rat::one())),
        Piece::Ray(x, dir) => (x.clone(), dir_rat(dir), Some(Rat::zero()), None),
        Piece::Line(x, dir) => (x.clone(), dir_rat(dir), None, None),
    };
    let forms = affine_forms(f, &p, &d);
    if forms.len() < 2 {
        return false;
    }
    let inside = |t: &Rat| lo.as_ref().is_none_or(|l| l < t) && hi.as_ref().is_none_or(|h| t < h);
    let mut cuts: Vec<Rat> = Vec::new();
    for (i, (a1, b1)) in forms.iter().enumerate() {
        for (a2, b2) in &forms[i + 1..] {
            if b1 != b2 {
                let t = (a2 - a1) / (b1 - b2);
                if inside(&t) {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.extend(lo.clone());
    cuts.extend(hi.clone());
    cuts.sort();
    cuts.dedup();
    let mut probes: Vec<Rat> = cuts.windows(2).map(|w| (&w[0] + &w[1]) / rat(2)).collect();
    match (cuts.first(), cuts.last()) {
        (Some(first), Some(last)) => {
            if lo.is_none() {
                probes.push(first - rat(1));
            }
            if hi.is_none() {
                probes.push(last + rat(1));
            }
        }
        _ => probes.push(Rat::zero()),
    }
    probes.iter().all(|t| tied_at(&forms, t))
}

/// First piece of `c` not contained in the common locus, as an interior point
/// of the offending part; `None` when the whole curve is contained.
pub fn curve_outside_locus(ideal: &Ideal, c: &TropCurve) -> Option<Vec<Rat>> {
    for (piece, _) in c.pieces() {
        for g in ideal.generators() {
            if !piece_in_zero_set(g, &piece) {
                return Some(miss_point(g, &piece));
            }
        }
    }
    None
}

fn miss_point(g: &TropPolynomial, piece: &Piece) -> Vec<Rat> {
    for k in 0..64 {
        let s = match piece {
            Piece::Seg(..) => Rat::new(k.into(), 64.into()),
            Piece::Line(..) => rat(k - 32),
            _ => rat(k),
        };
        let x = piece.sample(&s);
        if !g.eval(&x).is_corner() {
            return x;
        }
    }
    piece.interior_point()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn line_rays_lie_on_tropical_line() {
        let f = parse_poly("x1 + x2 + 0").unwrap();
        assert!(piece_in_zero_set(&f, &Piece::Ray(p(&[0, 0]), vec![1, 1])));
        assert!(piece_in_zero_set(&f, &Piece::Ray(p(&[0, 0]), vec![-1, 0])));
        assert!(piece_in_zero_set(&f, &Piece::Ray(p(&[0, 0]), vec![0, -1])));
        assert!(!piece_in_zero_set(&f, &Piece::Ray(p(&[0, 0]), vec![1, 0])));
        assert!(!piece_in_zero_set(&f, &Piece::Line(p(&[0, 0]), vec![1, 1])));
    }

    #[test]
    fn segment_crossing_a_corner() {
        // x1 ⊕ x2 vanishes on the diagonal only.
        let f = parse_poly("x1 + x2").unwrap();
        assert!(piece_in_zero_set(&f, &Piece::Seg(p(&[-3, -3]), p(&[5, 5]))));
        assert!(!piece_in_zero_set(&f, &Piece::Seg(p(&[0, 0]), p(&[1, 2]))));
        assert!(piece_in_zero_set(&f, &Piece::Point(p(&[2, 2]))));
    }

    #[test]
    fn envelope_switch_inside_segment() {
        // Segment along x2 = 0 from x1=-1 to x1=1 meets the locus of
        // x1 ⊕ 0 ⊕ x2 only in part.
        let f = parse_poly("x1 + x2 + 0").unwrap();
        assert!(!piece_in_zero_set(&f, &Piece::Seg(p(&[-1, 0]), p(&[1, 0]))));
        assert!(piece_in_zero_set(&f, &Piece::Seg(p(&[-1, 0]), p(&[0, 0]))));
    }

    #[test]
    fn sampled_oracle_agrees() {
        let f = parse_poly("2*x1^2 + x1*x2 + -1*x2^3 + 0").unwrap();
        let pieces = [
            Piece::Seg(p(&[-2, 1]), p(&[3, 0])),
            Piece::Ray(p(&[0, 0]), vec![1, 2]),
            Piece::Line(p(&[1, -1]), vec![2, 1]),
        ];
        for pc in &pieces {
            let exact = piece_in_zero_set(&f, pc);
            let sampled = (0..200).all(|k| {
                f.eval(&pc.sample(&Rat::new(k.into(), 40.into())))
                    .is_corner()
            });
            if exact {
                assert!(sampled);
            }
        }
    }
}
