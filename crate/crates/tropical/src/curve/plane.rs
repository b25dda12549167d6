use super::{canonicalize, HPolyhedron, Piece, TropCurve};
use crate::error::{Error, Result};
use crate::linalg::{self, sub};
use crate::newton::{dual_subdivision, polytope_vertices};
use crate::poly::{Ideal, TropPolynomial};
use crate::scalar::{gcd_slice, primitive_dir, Rat};
use num_bigint::BigInt;
use num_traits::Signed;

/// Point where the three given monomials tie.
fn tie_point(pts: &[Vec<Rat>], coeffs: &[Rat], a: usize, b: usize, c: usize) -> Vec<Rat> {
    let rows = vec![sub(&pts[b], &pts[a]), sub(&pts[c], &pts[a])];
    let rhs = vec![&coeffs[a] - &coeffs[b], &coeffs[a] - &coeffs[c]];
    linalg::solve(&rows, &rhs, 2).expect("affinely independent monomials tie at one point")
}

fn lattice_length(e: &[Rat]) -> u64 {
    let ints: Vec<BigInt> = e.iter().map(|x| x.to_integer()).collect();
    u64::try_from(gcd_slice(&ints)).expect("lattice length fits in u64")
}

/// Corner locus of a bivariate polynomial with lattice-length weights.
pub fn curve_from_poly2(f: &TropPolynomial) -> Result<TropCurve> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.nvars(),
        });
    }
    if f.is_bottom() {
        return Err(Error::InvalidArgument(
            "corner locus of -inf is the whole plane".into(),
        ));
    }
    let s = dual_subdivision(f)?;
    if s.vertices().len() < 2 {
        return Err(Error::InvalidArgument(
            "single essential monomial: empty corner locus".into(),
        ));
    }
    let pts = s.rat_points();
    let coeffs = f.coeffs();
    let two_cells: Vec<(Vec<usize>, Vec<Rat>)> = s
        .cells_of_dim(2)
        .into_iter()
        .map(|c| {
            let v = polytope_vertices(&pts, &c.points);
            let u = tie_point(&pts, &coeffs, v[0], v[1], v[2]);
            (c.points.clone(), u)
        })
        .collect();
    let mut pieces = Vec::new();
    for e in s.cells_of_dim(1) {
        let ends = polytope_vertices(&pts, &e.points);
        let (a, b) = (ends[0], ends[1]);
        let ev = sub(&pts[b], &pts[a]);
        let w = lattice_length(&ev);
        let adjacent: Vec<&(Vec<usize>, Vec<Rat>)> = two_cells
            .iter()
            .filter(|(c, _)| e.points.iter().all(|i| c.contains(i)))
            .collect();
        let normal = vec![ev[1].clone(), -ev[0].clone()];
        let piece = match adjacent.as_slice() {
            [x, y] => Piece::Seg(x.1.clone(), y.1.clone()),
            [x] => {
                let other =
                    x.0.iter()
                        .find(|i| !e.points.contains(i))
                        .expect("2-cell has a point off its edge");
                let side = linalg::dot(&normal, &sub(&pts[*other], &pts[a]));
                let d = if side.is_negative() {
                    normal.clone()
                } else {
                    normal.iter().map(|v| -v).collect()
                };
                Piece::Ray(x.1.clone(), primitive_dir(&d).expect("nonzero normal"))
            }
            [] => {
                let p = linalg::solve(&[ev.clone()], &[&coeffs[a] - &coeffs[b]], 2)
                    .expect("one equation");
                Piece::Line(p, primitive_dir(&normal).expect("nonzero normal"))
            }
            _ => {
                return Err(Error::Computation(
                    "edge shared by more than two cells".into(),
                ))
            }
        };
        pieces.push((piece, w));
    }
    Ok(canonicalize(2, &pieces))
}

pub fn membership(i: &Ideal, u: &[Rat]) -> Result<bool> {
    i.contains(u)
}

/// Exact common corner locus of bivariate generators (set level, weights 1).
pub fn intersect_plane(i: &Ideal) -> Result<TropCurve> {
    if i.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: i.nvars(),
        });
    }
    let mut acc: Option<TropCurve> = None;
    for g in i.generators() {
        if g.is_bottom() {
            continue;
        }
        let c = match curve_from_poly2(g) {
            Ok(c) => c.unweighted(),
            Err(Error::InvalidArgument(_)) => return Ok(TropCurve::empty(2)),
            Err(e) => return Err(e),
        };
        acc = Some(match acc {
            None => c,
            Some(a) => a.intersect(&c),
        });
    }
    acc.ok_or_else(|| {
        Error::Unsupported("every generator is -inf; the locus is the whole plane".into())
    })
}

/// Closed cells dual to all cells of the subdivision: complement regions,
/// curve edges and curve vertices, as polyhedra.
pub fn fpc_cells_poly2(f: &TropPolynomial) -> Result<Vec<HPolyhedron>> {
    let s = dual_subdivision(f)?;
    let pts = s.rat_points();
    let coeffs = f.coeffs();
    let n = f.nvars();
    let mut out = Vec::new();
    for cell in &s.cells {
        let i0 = cell.points[0];
        let mut h = HPolyhedron::new(n);
        for &j in &cell.points[1..] {
            h.eq.push((sub(&pts[j], &pts[i0]), &coeffs[i0] - &coeffs[j]));
        }
        for k in 0..pts.len() {
            if !cell.points.contains(&k) {
                h.le.push((sub(&pts[k], &pts[i0]), &coeffs[i0] - &coeffs[k]));
            }
        }
        out.push(h);
    }
    Ok(out)
}
