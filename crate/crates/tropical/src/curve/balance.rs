use super::TropCurve;
use crate::lp::{Lp, LpResult};
use crate::scalar::{rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Largest weight the solver reports; larger solutions come back as unknown.
pub const MAX_WEIGHT: u64 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct BalanceReport {
    /// Weighted direction sum at each vertex with a nonzero residual.
    pub failures: Vec<(usize, Vec<i64>)>,
    pub vertices_checked: usize,
}

impl BalanceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn balancing_check(c: &TropCurve) -> BalanceReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for v in 0..c.vertices.len() {
        let star = c.star(v);
        if star.is_empty() {
            continue;
        }
        checked += 1;
        let mut sum = vec![0i64; c.dim];
        for (d, w) in &star {
            for (s, x) in sum.iter_mut().zip(d) {
                *s += *x * *w as i64;
            }
        }
        if sum.iter().any(|&x| x != 0) {
            failures.push((v, sum));
        }
    }
    BalanceReport {
        failures,
        vertices_checked: checked,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceSolution {
    /// Weights for edges then rays, in curve order; lines take weight 1.
    Weights {
        edges: Vec<u64>,
        rays: Vec<u64>,
    },
    Infeasible,
    /// Positive weights exist but the smallest found exceed the bound.
    Unknown,
}

/// Positive integer weights making every vertex balanced, ignoring the
/// weights stored in the curve.
pub fn balancing_solve(c: &TropCurve) -> BalanceSolution {
    let ne = c.edges.len();
    let nr = c.rays.len();
    let nvar = ne + nr;
    if nvar == 0 {
        return BalanceSolution::Weights {
            edges: vec![],
            rays: vec![],
        };
    }
    let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::zero(); nvar]; c.vertices.len() * c.dim];
    for (k, e) in c.edges.iter().enumerate() {
        let (a, b) = e.ends;
        let d = crate::scalar::primitive_dir(&crate::linalg::sub(&c.vertices[b], &c.vertices[a]))
            .expect("edge");
        for i in 0..c.dim {
            rows[a * c.dim + i][k] += rat(d[i]);
            rows[b * c.dim + i][k] -= rat(d[i]);
        }
    }
    for (k, r) in c.rays.iter().enumerate() {
        for i in 0..c.dim {
            rows[r.vertex * c.dim + i][ne + k] += rat(r.dir[i]);
        }
    }
    let mut lp = Lp::new(nvar);
    for row in rows {
        if row.iter().any(|x| !x.is_zero()) {
            lp.eq(row, Rat::zero());
        }
    }
    for k in 0..nvar {
        let mut e = vec![Rat::zero(); nvar];
        e[k] = Rat::one();
        lp.ge(e, Rat::one());
    }
    let x = match lp.minimize(&vec![Rat::one(); nvar]) {
        LpResult::Optimal { x, .. } => x,
        _ => return BalanceSolution::Infeasible,
    };
    let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x
        .iter()
        .map(|v| (v * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let g = crate::scalar::gcd_slice(&ints);
    let w: Option<Vec<u64>> = ints.iter().map(|v| u64::try_from(v / &g).ok()).collect();
    match w {
        Some(w) if w.iter().all(|&v| v <= MAX_WEIGHT) => BalanceSolution::Weights {
            edges: w[..ne].to_vec(),
            rays: w[ne..].to_vec(),
        },
        _ => BalanceSolution::Unknown,
    }
}

impl TropCurve {
    /// Copy with weights replaced by a balancing solution, if one is found.
    pub fn with_balanced_weights(&self) -> Option<TropCurve> {
        match balancing_solve(self) {
            BalanceSolution::Weights { edges, rays } => {
                let mut c = self.clone();
                for (e, w) in c.edges.iter_mut().zip(edges) {
                    e.weight = w;
                }
                for (r, w) in c.rays.iter_mut().zip(rays) {
                    r.weight = w;
                }
                Some(c)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{canonicalize, Piece};
    use super::*;

    fn p(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn star(dirs: &[&[i64]]) -> TropCurve {
        let pieces: Vec<(Piece, u64)> = dirs
            .iter()
            .map(|d| (Piece::Ray(p(&[0, 0]), d.to_vec()), 1))
            .collect();
        canonicalize(2, &pieces)
    }

    #[test]
    fn tropical_line_balances() {
        let c = star(&[&[-1, 0], &[0, -1], &[1, 1]]);
        assert!(balancing_check(&c).passed());
        assert_eq!(
            balancing_solve(&c),
            BalanceSolution::Weights {
                edges: vec![],
                rays: vec![1, 1, 1]
            }
        );
    }

    #[test]
    fn positive_quadrant_star_is_infeasible() {
        let c = star(&[&[1, 0], &[0, 1]]);
        assert!(!balancing_check(&c).passed());
        assert_eq!(balancing_solve(&c), BalanceSolution::Infeasible);
    }

    #[test]
    fn weights_are_found() {
        let c = star(&[&[-1, 0], &[0, -1], &[1, 2]]);
        match balancing_solve(&c) {
            BalanceSolution::Weights { rays, .. } => {
                let mut r = rays.clone();
                r.sort();
                assert_eq!(r, vec![1, 1, 2]);
            }
            other => panic!("{other:?}"),
        }
    }
}
