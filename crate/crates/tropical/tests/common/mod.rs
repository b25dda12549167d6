//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use tropical::curve::{canonicalize, Piece, TropCurve};
use tropical::scalar::rat;
use tropical::Rat;

pub fn pt(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

fn ray(at: &[i64], d: &[i64]) -> (Piece, u64) {
    (Piece::Ray(pt(at), d.to_vec()), 1)
}

fn seg(a: &[i64], b: &[i64]) -> (Piece, u64) {
    (Piece::Seg(pt(a), pt(b)), 1)
}

/// Hand-built additive curves in ℝ³, with a short label.
pub fn space_corpus() -> Vec<(&'static str, TropCurve)> {
    vec![
        (
            "tripod: terminal, J={1,2} and J={3}",
            canonicalize(
                3,
                &[
                    ray(&[0, 0, 0], &[1, 1, 1]),
                    ray(&[0, 0, 0], &[-1, -1, 0]),
                    ray(&[0, 0, 0], &[0, 0, -1]),
                ],
            ),
        ),
        (
            "two vertices, non-terminal, weighted top ray",
            canonicalize(
                3,
                &[
                    ray(&[0, 0, 0], &[-1, -1, -1]),
                    ray(&[0, 0, 0], &[0, 0, -1]),
                    seg(&[0, 0, 0], &[1, 1, 2]),
                    ray(&[1, 1, 2], &[-1, -1, 0]),
                    (Piece::Ray(pt(&[1, 1, 2]), vec![1, 1, 1]), 2),
                ],
            ),
        ),
        (
            "two vertices, terminal, J={1}, J={2,3}, J={3}",
            canonicalize(
                3,
                &[
                    ray(&[0, 0, 0], &[-1, 0, 0]),
                    ray(&[0, 0, 0], &[0, -1, -1]),
                    seg(&[0, 0, 0], &[1, 1, 1]),
                    ray(&[1, 1, 1], &[0, 0, -1]),
                    ray(&[1, 1, 1], &[1, 1, 2]),
                ],
            ),
        ),
        (
            "line (1,2,3)",
            canonicalize(3, &[(Piece::Line(pt(&[0, 1, 0]), vec![1, 2, 3]), 1)]),
        ),
        (
            "tropical line in the plane x3 = 1",
            canonicalize(
                3,
                &[
                    ray(&[0, 0, 1], &[1, 1, 0]),
                    ray(&[0, 0, 1], &[-1, 0, 0]),
                    ray(&[0, 0, 1], &[0, -1, 0]),
                ],
            ),
        ),
        (
            "cut with a subtree, terminal projected cut",
            canonicalize(
                3,
                &[
                    ray(&[0, 0, 0], &[1, 1, 1]),
                    ray(&[0, 0, 0], &[0, 0, -1]),
                    seg(&[0, 0, 0], &[-1, -1, 0]),
                    ray(&[-1, -1, 0], &[-1, 0, 0]),
                    ray(&[-1, -1, 0], &[0, -1, 0]),
                ],
            ),
        ),
        (
            "cut ray (-1,-2,0), non-terminal projected cut",
            canonicalize(
                3,
                &[
                    ray(&[0, 0, 0], &[1, 2, 1]),
                    ray(&[0, 0, 0], &[-1, -2, 0]),
                    ray(&[0, 0, 0], &[0, 0, -1]),
                ],
            ),
        ),
    ]
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropical::poly::{Monomial, TropPolynomial};
use tropical::scalar::frac;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn positive_primitive(r: &mut ChaCha8Rng) -> [i64; 2] {
    loop {
        let d = [r.random_range(1..=3), r.random_range(1..=3)];
        if gcd(d[0], d[1]) == 1 {
            return d;
        }
    }
}

/// Additive plane curve: a monotone spine with 1..=6 vertices, negative axis
/// rays attached so that every vertex balances. Weights are computed, not
/// guessed. Returns the curve and whether its spine starts at a terminal vertex.
pub fn random_plane_curve(r: &mut ChaCha8Rng, terminal: bool) -> TropCurve {
    'retry: loop {
        let m = r.random_range(1..=6);
        let mut pieces: Vec<(Piece, u64)> = Vec::new();
        let mut u = [r.random_range(-3..=3i64), r.random_range(-3..=3i64)];
        let mut u_rat = vec![rat(u[0]), rat(u[1])];
        // incoming weighted direction
        let mut incoming = [0i64, 0];
        if !terminal {
            let a0 = positive_primitive(r);
            pieces.push((Piece::Ray(u_rat.clone(), vec![-a0[0], -a0[1]]), 1));
            incoming = a0;
        }
        for k in 1..=m {
            let a = positive_primitive(r);
            // smallest weight with w·a >= incoming, then maybe a little more
            let need = (0..2)
                .map(|t| (incoming[t] + a[t] - 1) / a[t])
                .max()
                .unwrap()
                .max(1);
            let mut w = need + r.random_range(0..=1);
            let mut rest = [w * a[0] - incoming[0], w * a[1] - incoming[1]];
            if rest == [0, 0] {
                w += 1;
                rest = [w * a[0] - incoming[0], w * a[1] - incoming[1]];
            }
            if w > 64 || rest.iter().any(|&x| x > 64) {
                continue 'retry;
            }
            for (t, &x) in rest.iter().enumerate() {
                if x > 0 {
                    let mut d = vec![0, 0];
                    d[t] = -1;
                    pieces.push((Piece::Ray(u_rat.clone(), d), x as u64));
                }
            }
            let dir = vec![a[0], a[1]];
            if k == m {
                pieces.push((Piece::Ray(u_rat.clone(), dir), w as u64));
            } else {
                let step = r.random_range(1..=2);
                let next = [u[0] + step * a[0], u[1] + step * a[1]];
                let next_rat = vec![rat(next[0]), rat(next[1])];
                pieces.push((Piece::Seg(u_rat.clone(), next_rat.clone()), w as u64));
                u = next;
                u_rat = next_rat;
            }
            incoming = [w * a[0], w * a[1]];
        }
        return canonicalize(2, &pieces);
    }
}

/// Random polynomial in `n` variables with up to `max_terms` monomials,
/// exponents up to `deg`, coefficients in [-10, 10] with denominator 1 or 2.
/// With `simple` every monomial is univariate or constant.
pub fn random_poly(
    r: &mut ChaCha8Rng,
    n: usize,
    max_terms: usize,
    deg: u64,
    simple: bool,
) -> TropPolynomial {
    let k = r.random_range(2..=max_terms);
    let mons = (0..k)
        .map(|_| {
            let mut e = vec![0u64; n];
            if simple {
                if r.random_bool(0.85) {
                    e[r.random_range(0..n)] = r.random_range(1..=deg);
                }
            } else {
                for x in e.iter_mut() {
                    *x = r.random_range(0..=deg);
                }
            }
            Monomial::new(frac(r.random_range(-20..=20), 2), e)
        })
        .collect();
    TropPolynomial::new(n, mons).unwrap()
}

/// Number of bounded regions cut from a large disk by a plane curve, from
/// Euler's formula: close every ray and line end on the boundary circle.
pub fn euler_regions(c: &TropCurve) -> usize {
    let c = c.canonical();
    let (v, e, r, l) = (c.vertices.len(), c.edges.len(), c.rays.len(), c.lines.len());
    if r + l == 0 {
        return 1;
    }
    e + r + l + 1 - v
}
