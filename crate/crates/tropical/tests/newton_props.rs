mod common;

use common::{random_poly, rng};
use proptest::prelude::*;
use rand::Rng;
use tropical::linalg::solve;
use tropical::newton::{
    dual_subdivision, essential_monomials, essential_monomials_lp, verify_stokes,
};
use tropical::poly::TropPolynomial;
use tropical::scalar::{frac, rat};
use tropical::Rat;

/// Twice the area of the convex hull of integer points (monotone chain).
fn hull_area2(pts: &[(i64, i64)]) -> i64 {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    let h: Vec<(i64, i64)> = lower.into_iter().chain(upper).collect();
    (0..h.len())
        .map(|i| {
            let (a, b) = (h[i], h[(i + 1) % h.len()]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum::<i64>()
        .abs()
}

/// Every maximal cell lifts to an affine face lying weakly below all lifted
/// points, touching exactly the points of the cell.
fn lower_faces_ok(f: &TropPolynomial) -> bool {
    let s = dual_subdivision(f).unwrap();
    let n = f.nvars();
    let pts = s.rat_points();
    for cell in s.maximal_cells() {
        // φ(x) = c·x + d through the cell's lifted points
        let rows: Vec<Vec<Rat>> = cell
            .points
            .iter()
            .map(|&i| {
                let mut r = pts[i].clone();
                r.push(rat(1));
                r
            })
            .collect();
        let rhs: Vec<Rat> = cell.points.iter().map(|&i| s.lifts[i].clone()).collect();
        let Some(sol) = solve(&rows, &rhs, n + 1) else {
            return false;
        };
        for (i, p) in pts.iter().enumerate() {
            let phi: Rat = p.iter().zip(&sol).map(|(a, b)| a * b).sum::<Rat>() + &sol[n];
            let on = cell.points.contains(&i);
            if (on && phi != s.lifts[i]) || (!on && phi >= s.lifts[i]) {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn essential_matches_lp(seed in any::<u64>(), n in 2usize..=3) {
        let f = random_poly(&mut rng(seed), n, 8, 3, false);
        prop_assert_eq!(essential_monomials(&f).unwrap(), essential_monomials_lp(&f));
    }

    #[test]
    fn maximal_cells_are_lower_faces(seed in any::<u64>(), n in 2usize..=3) {
        let f = random_poly(&mut rng(seed), n, 8, 3, false);
        prop_assert!(lower_faces_ok(&f));
    }

    #[test]
    fn plane_cells_tile_the_newton_polygon(seed in any::<u64>()) {
        let f = random_poly(&mut rng(seed), 2, 8, 4, false);
        let s = dual_subdivision(&f).unwrap();
        let ip: Vec<(i64, i64)> = s.points.iter().map(|p| (p[0] as i64, p[1] as i64)).collect();
        let total = hull_area2(&ip);
        let cells: i64 = s.maximal_cells().iter()
            .filter(|c| c.dim == 2)
            .map(|c| hull_area2(&c.points.iter().map(|&i| ip[i]).collect::<Vec<_>>()))
            .sum();
        prop_assert_eq!(cells, total);
    }

    #[test]
    fn inessential_monomials_do_not_change_values(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_poly(&mut r, 2, 8, 3, false);
        let ess = essential_monomials(&f).unwrap();
        let g = TropPolynomial::new(2, ess.iter().map(|&i| f.monomials()[i].clone()).collect()).unwrap();
        for _ in 0..1000 {
            let x = vec![frac(r.random_range(-200..200), r.random_range(1..8)), frac(r.random_range(-200..200), r.random_range(1..8))];
            prop_assert_eq!(f.evaluate(&x).unwrap().value, g.evaluate(&x).unwrap().value);
        }
    }

    #[test]
    fn stokes_in_three_variables(seed in any::<u64>()) {
        let f = random_poly(&mut rng(seed), 3, 12, 3, false);
        let s = dual_subdivision(&f).unwrap();
        let rep = verify_stokes(&s, 0).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures);
    }
}
