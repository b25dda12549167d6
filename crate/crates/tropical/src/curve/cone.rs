use super::{dir_rat, Piece, TropCurve};
use crate::error::{Error, Result};
use crate::linalg::{self, sub};
use crate::lp::{Lp, LpResult};
use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};

/// Polyhedron `{x : a·x <= b for (a,b) in le, a·x = b for (a,b) in eq}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HPolyhedron {
    pub n: usize,
    pub le: Vec<(Vec<Rat>, Rat)>,
    pub eq: Vec<(Vec<Rat>, Rat)>,
}

impl HPolyhedron {
    pub fn new(n: usize) -> Self {
        HPolyhedron {
            n,
            le: vec![],
            eq: vec![],
        }
    }

    fn lp(&self) -> Lp {
        let mut lp = Lp::new(self.n);
        for (a, b) in &self.le {
            lp.le(a.clone(), b.clone());
        }
        for (a, b) in &self.eq {
            lp.eq(a.clone(), b.clone());
        }
        lp
    }

    pub fn is_empty(&self) -> bool {
        !self.lp().is_feasible()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.le.iter().all(|(a, b)| linalg::dot(a, x) <= *b)
            && self.eq.iter().all(|(a, b)| linalg::dot(a, x) == *b)
    }

    pub fn intersect(&self, o: &HPolyhedron) -> HPolyhedron {
        let mut r = self.clone();
        r.le.extend(o.le.iter().cloned());
        r.eq.extend(o.eq.iter().cloned());
        r
    }

    fn max_of(&self, a: &[Rat]) -> Option<Rat> {
        match self.lp().maximize(a) {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Whether this polyhedron lies inside `o`.
    pub fn subset_of(&self, o: &HPolyhedron) -> bool {
        if self.is_empty() {
            return true;
        }
        let within = |a: &Vec<Rat>, b: &Rat| self.max_of(a).is_some_and(|m| m <= *b);
        o.le.iter().all(|(a, b)| within(a, b))
            && o.eq.iter().all(|(a, b)| {
                let neg: Vec<Rat> = a.iter().map(|x| -x).collect();
                within(a, b) && within(&neg, &-b.clone())
            })
    }

    pub fn same_set(&self, o: &HPolyhedron) -> bool {
        self.subset_of(o) && o.subset_of(self)
    }

    /// Dimension of the affine hull (-1 encoded as `None` for the empty set).
    pub fn dim(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let mut eqs: Vec<Vec<Rat>> = self.eq.iter().map(|(a, _)| a.clone()).collect();
        for (a, b) in &self.le {
            let neg: Vec<Rat> = a.iter().map(|x| -x).collect();
            // implicit equality when the minimum of a·x already reaches b
            if let Some(m) = self.max_of(&neg) {
                if -m == *b {
                    eqs.push(a.clone());
                }
            }
        }
        Some(self.n - linalg::rank(&eqs))
    }

    /// All nonempty faces (including itself), without duplicates.
    pub fn faces(&self) -> Vec<HPolyhedron> {
        let m = self.le.len();
        let mut out: Vec<HPolyhedron> = Vec::new();
        for mask in 0u32..(1u32 << m) {
            let mut f = HPolyhedron {
                n: self.n,
                le: vec![],
                eq: self.eq.clone(),
            };
            for (i, c) in self.le.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    f.eq.push(c.clone());
                } else {
                    f.le.push(c.clone());
                }
            }
            if !f.is_empty() && !out.iter().any(|g| g.same_set(&f)) {
                out.push(f);
            }
        }
        out
    }

    pub fn is_face_of(&self, p: &HPolyhedron) -> bool {
        p.faces().iter().any(|f| f.same_set(self))
    }

    /// Closed piece as a polyhedron.
    pub fn from_piece(n: usize, p: &Piece) -> HPolyhedron {
        let mut h = HPolyhedron::new(n);
        let (base, dir, lo, hi): (Vec<Rat>, Vec<Rat>, Option<Rat>, Option<Rat>) = match p {
            Piece::Point(x) => {
                for i in 0..n {
                    h.eq.push((unit(n, i), x[i].clone()));
                }
                return h;
            }
            Piece::Seg(a, b) => (a.clone(), sub(b, a), Some(Rat::zero()), Some(Rat::one())),
            Piece::Ray(x, d) => (x.clone(), dir_rat(d), Some(Rat::zero()), None),
            Piece::Line(x, d) => (x.clone(), dir_rat(d), None, None),
        };
        // orthogonal complement of the direction gives the equalities
        for a in linalg::nullspace(&[dir.clone()], n) {
            let b = linalg::dot(&a, &base);
            h.eq.push((a, b));
        }
        let b0 = linalg::dot(&dir, &base);
        let dd = linalg::dot(&dir, &dir);
        if let Some(l) = lo {
            let neg: Vec<Rat> = dir.iter().map(|x| -x).collect();
            h.le.push((neg, -(&b0 + &l * &dd)));
        }
        if let Some(u) = hi {
            h.le.push((dir.clone(), &b0 + &u * &dd));
        }
        h
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Apex plus the set of coordinates that are strictly below the apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub apex: Vec<Rat>,
    /// 0-based coordinate indices, sorted.
    pub j: Vec<usize>,
}

impl Cone {
    pub fn new(apex: Vec<Rat>, mut j: Vec<usize>) -> Result<Cone> {
        j.sort_unstable();
        j.dedup();
        if j.len() >= apex.len() || j.iter().any(|&x| x >= apex.len()) {
            return Err(Error::InvalidArgument(
                "J must be a proper subset of the coordinates".into(),
            ));
        }
        Ok(Cone { apex, j })
    }

    /// Point in the open cell.
    pub fn contains_open(&self, x: &[Rat]) -> bool {
        (0..self.apex.len()).all(|c| {
            if self.j.contains(&c) {
                x[c] < self.apex[c]
            } else {
                x[c] == self.apex[c]
            }
        })
    }

    pub fn closure(&self) -> HPolyhedron {
        let n = self.apex.len();
        let mut h = HPolyhedron::new(n);
        for c in 0..n {
            if self.j.contains(&c) {
                h.le.push((unit(n, c), self.apex[c].clone()));
            } else {
                h.eq.push((unit(n, c), self.apex[c].clone()));
            }
        }
        h
    }

    /// Whether the open cell meets a closed piece.
    pub fn meets_open(&self, p: &Piece) -> bool {
        let (base, dir, lo, hi) = match p {
            Piece::Point(x) => return self.contains_open(x),
            Piece::Seg(a, b) => (a.clone(), sub(b, a), Some(Rat::zero()), Some(Rat::one())),
            Piece::Ray(x, d) => (x.clone(), dir_rat(d), Some(Rat::zero()), None),
            Piece::Line(x, d) => (x.clone(), dir_rat(d), None, None),
        };
        // feasible parameters: closed ends (lo, hi) plus strict bounds
        let mut lo: Option<(Rat, bool)> = lo.map(|v| (v, false));
        let mut hi: Option<(Rat, bool)> = hi.map(|v| (v, false));
        let mut fixed: Option<Rat> = None;
        for c in 0..self.apex.len() {
            let r = &self.apex[c] - &base[c];
            if self.j.contains(&c) {
                // base + t dir < apex
                if dir[c].is_zero() {
                    if !r.is_positive() {
                        return false;
                    }
                } else {
                    let t = &r / &dir[c];
                    if dir[c].is_positive() {
                        tighten_hi(&mut hi, t, true);
                    } else {
                        tighten_lo(&mut lo, t, true);
                    }
                }
            } else if dir[c].is_zero() {
                if !r.is_zero() {
                    return false;
                }
            } else {
                let t = &r / &dir[c];
                match &fixed {
                    Some(f) if *f != t => return false,
                    _ => fixed = Some(t),
                }
            }
        }
        let ok_lo = |t: &Rat| {
            lo.as_ref()
                .is_none_or(|(l, s)| if *s { t > l } else { t >= l })
        };
        let ok_hi = |t: &Rat| {
            hi.as_ref()
                .is_none_or(|(h, s)| if *s { t < h } else { t <= h })
        };
        match fixed {
            Some(t) => ok_lo(&t) && ok_hi(&t),
            None => match (&lo, &hi) {
                (Some((l, ls)), Some((h, hs))) => l < h || (l == h && !ls && !hs),
                _ => true,
            },
        }
    }
}

fn tighten_hi(hi: &mut Option<(Rat, bool)>, t: Rat, strict: bool) {
    let replace = match hi {
        None => true,
        Some((h, s)) => t < *h || (t == *h && strict && !*s),
    };
    if replace {
        *hi = Some((t, strict));
    }
}

fn tighten_lo(lo: &mut Option<(Rat, bool)>, t: Rat, strict: bool) {
    let replace = match lo {
        None => true,
        Some((l, s)) => t > *l || (t == *l && strict && !*s),
    };
    if replace {
        *lo = Some((t, strict));
    }
}

/// Closure of the cone cell at `u` with negative coordinates `j` (0-based).
pub fn cone_sigma(u: &[Rat], j: &[usize]) -> Result<HPolyhedron> {
    Ok(Cone::new(u.to_vec(), j.to_vec())?.closure())
}

/// Nonempty proper J (0-based, sorted) whose open cone cell at vertex `i` meets the curve.
pub fn cone_cells(c: &TropCurve, i: usize) -> Vec<Vec<usize>> {
    let u = &c.vertices[i];
    let n = c.dim;
    let pieces = c.pieces();
    let mut out = Vec::new();
    for mask in 1u32..((1u32 << n) - 1) {
        let j: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
        let cone = Cone {
            apex: u.clone(),
            j: j.clone(),
        };
        if pieces.iter().any(|(p, _)| cone.meets_open(p)) {
            out.push(j);
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct FpcReport {
    /// (cell, face) pairs where a face of a cell is not itself in the list.
    pub missing_faces: Vec<(usize, HPolyhedron)>,
    /// Pairs whose intersection is not a common face.
    pub bad_pairs: Vec<(usize, usize)>,
}

impl FpcReport {
    pub fn valid(&self) -> bool {
        self.missing_faces.is_empty() && self.bad_pairs.is_empty()
    }
}

/// Checks closure under faces and that pairwise intersections are common faces.
pub fn fpc_validate(cells: &[HPolyhedron]) -> FpcReport {
    let mut report = FpcReport {
        missing_faces: vec![],
        bad_pairs: vec![],
    };
    let faces: Vec<Vec<HPolyhedron>> = cells.iter().map(|c| c.faces()).collect();
    for (i, fs) in faces.iter().enumerate() {
        for f in fs {
            if !cells.iter().any(|c| c.same_set(f)) {
                report.missing_faces.push((i, f.clone()));
            }
        }
    }
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let m = cells[i].intersect(&cells[j]);
            if m.is_empty() {
                continue;
            }
            let ok =
                faces[i].iter().any(|f| f.same_set(&m)) && faces[j].iter().any(|f| f.same_set(&m));
            if !ok {
                report.bad_pairs.push((i, j));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::canonicalize;
    use super::*;
    use crate::scalar::rat;

    fn p(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn sigma_instance() {
        let h = cone_sigma(&p(&[0, 0, 0]), &[0, 1]).unwrap();
        assert_eq!(h.le.len(), 2);
        assert_eq!(h.eq.len(), 1);
        assert!(h.contains(&p(&[-1, -5, 0])));
        assert!(!h.contains(&p(&[-1, -5, 1])));
        assert!(cone_sigma(&p(&[0, 0]), &[0, 1]).is_err());
    }

    #[test]
    fn line_cone_cells() {
        let c = canonicalize(
            2,
            &[
                (Piece::Ray(p(&[0, 0]), vec![-1, 0]), 1),
                (Piece::Ray(p(&[0, 0]), vec![0, -1]), 1),
                (Piece::Ray(p(&[0, 0]), vec![1, 1]), 1),
            ],
        );
        assert_eq!(cone_cells(&c, 0), vec![vec![0], vec![1]]);
    }

    #[test]
    fn polyhedron_faces() {
        let seg = HPolyhedron::from_piece(2, &Piece::Seg(p(&[0, 0]), p(&[2, 0])));
        assert_eq!(seg.dim(), Some(1));
        assert_eq!(seg.faces().len(), 3);
        let a = HPolyhedron::from_piece(2, &Piece::Point(p(&[0, 0])));
        let b = HPolyhedron::from_piece(2, &Piece::Point(p(&[2, 0])));
        assert!(fpc_validate(&[seg.clone(), a.clone(), b.clone()]).valid());
        let cross = HPolyhedron::from_piece(2, &Piece::Seg(p(&[1, -1]), p(&[1, 1])));
        let c1 = HPolyhedron::from_piece(2, &Piece::Point(p(&[1, -1])));
        let c2 = HPolyhedron::from_piece(2, &Piece::Point(p(&[1, 1])));
        let r = fpc_validate(&[seg, a, b, cross, c1, c2]);
        assert!(!r.valid());
        assert_eq!(r.bad_pairs, vec![(0, 3)]);
    }

    #[test]
    fn open_cell_meets() {
        let cone = Cone::new(p(&[0, 0, 0]), vec![0, 1]).unwrap();
        assert!(cone.meets_open(&Piece::Ray(p(&[0, 0, 0]), vec![-1, -1, 0])));
        assert!(!cone.meets_open(&Piece::Ray(p(&[0, 0, 0]), vec![0, 0, -1])));
        assert!(!cone.meets_open(&Piece::Ray(p(&[0, 0, 0]), vec![-1, 0, 0])));
        assert!(cone.meets_open(&Piece::Seg(p(&[-2, -1, 0]), p(&[-2, -1, 3]))));
    }
}
