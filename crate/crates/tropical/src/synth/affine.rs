//! Rational affine subspaces cut out by simple binomials.
//!
//! Pick coordinates S with a nonsingular k×k minor of the basis. For every
//! other coordinate i the subspace projected to S ∪ {i} is a hyperplane; its
//! normal has at most two nonzero entries of opposite sign when the subspace
//! is cut out by simple binomials, and gives x_a^α ⊕ c·x_b^β.

use super::params::denominator_lcm;
use crate::error::{Error, Result};
use crate::linalg::{dot, nullspace, rank};
use crate::poly::{Ideal, Monomial, TropPolynomial};
use crate::scalar::{rat, Rat};
use num_traits::{ToPrimitive, Zero};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn primitive_int(v: &[Rat]) -> Vec<i64> {
    let l = rat(denominator_lcm(v) as i64);
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = crate::scalar::gcd_slice(&ints);
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("small normal"))
        .collect()
}

/// Binomial generators of `point + span(basis)`.
pub fn synthesize_affine_subspace(point: &[Rat], basis: &[Vec<Rat>]) -> Result<Ideal> {
    let n = point.len();
    let k = basis.len();
    if basis.iter().any(|b| b.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.iter().map(Vec::len).find(|&l| l != n).unwrap(),
        });
    }
    if k >= n {
        return Err(Error::InvalidArgument(
            "the subspace must have dimension below n".into(),
        ));
    }
    if rank(basis) < k {
        return Err(Error::InvalidArgument(
            "basis vectors are linearly dependent".into(),
        ));
    }
    let minor = |s: &[usize]| -> Vec<Vec<Rat>> {
        basis
            .iter()
            .map(|b| s.iter().map(|&i| b[i].clone()).collect())
            .collect()
    };
    let s = subsets(n, k)
        .into_iter()
        .find(|s| rank(&minor(s)) == k)
        .ok_or_else(|| {
            Error::InvalidArgument("basis degenerate in all coordinate orderings".into())
        })?;
    let mut gens = Vec::new();
    for i in (0..n).filter(|i| !s.contains(i)) {
        let mut coords = s.clone();
        coords.push(i);
        let rows = minor(&coords);
        let ns = nullspace(&rows, coords.len());
        if ns.len() != 1 {
            return Err(Error::Computation(
                "normal of the projected subspace is not unique".into(),
            ));
        }
        let mut nu = vec![Rat::zero(); n];
        for (c, v) in coords.iter().zip(&ns[0]) {
            nu[*c] = v.clone();
        }
        let mut nu = primitive_int(&nu);
        if nu.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            nu.iter_mut().for_each(|x| *x = -*x);
        }
        let support: Vec<usize> = (0..n).filter(|&j| nu[j] != 0).collect();
        let nr: Vec<Rat> = nu.iter().map(|&x| rat(x)).collect();
        let level = dot(&nr, point);
        gens.push(match support.as_slice() {
            [a] => {
                let mut e = vec![0; n];
                e[*a] = 1;
                // ν_a x_a = level
                let c = level / &nr[*a];
                TropPolynomial::new(n, vec![Monomial::new(rat(0), e), Monomial::new(c, vec![0; n])])?
            }
            [a, b] if (nu[*a] > 0) != (nu[*b] > 0) => {
                let (pos, neg) = if nu[*a] > 0 { (*a, *b) } else { (*b, *a) };
                let (alpha, beta) = (nu[pos].unsigned_abs(), nu[neg].unsigned_abs());
                // α x_pos = c + β x_neg with c = α P_pos - β P_neg
                let c = rat(alpha as i64) * &point[pos] - rat(beta as i64) * &point[neg];
                let mut e1 = vec![0; n];
                e1[pos] = alpha;
                let mut e2 = vec![0; n];
                e2[neg] = beta;
                TropPolynomial::new(n, vec![Monomial::new(rat(0), e1), Monomial::new(c, e2)])?
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "subspace is not cut out by simple binomials (normal {nu:?} in coordinates {coords:?})"
                )))
            }
        });
    }
    let ideal = Ideal::new(gens)?;
    check_subspace(&ideal, point, basis)?;
    Ok(ideal)
}

fn check_subspace(ideal: &Ideal, point: &[Rat], basis: &[Vec<Rat>]) -> Result<()> {
    let n = point.len();
    let mut probes = vec![point.to_vec()];
    for (t, b) in [-2i64, 1, 3].iter().zip(basis.iter().cycle()) {
        probes.push(point.iter().zip(b).map(|(p, x)| p + x * rat(*t)).collect());
    }
    for x in &probes {
        if !ideal.contains(x)? {
            return Err(Error::Computation(
                "subspace point outside the binomial locus".into(),
            ));
        }
    }
    // moving off the subspace along a coordinate must leave the locus
    let basis_rank = rank(basis);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = rat(1);
        let mut with = basis.to_vec();
        with.push(e);
        if rank(&with) == basis_rank {
            continue;
        }
        for d in [1, -1] {
            let mut x = point.to_vec();
            x[j] += Rat::new(d.into(), 3.into());
            if ideal.contains(&x)? {
                return Err(Error::Computation(
                    "binomial locus is larger than the subspace".into(),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal_n, parse_poly_n};

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn main_diagonal_in_three_space() {
        let id = synthesize_affine_subspace(&p(&[0, 0, 0]), &[p(&[1, 1, 1])]).unwrap();
        assert_eq!(id, parse_ideal_n("x1 + x2; x1 + x3", 3).unwrap());
    }

    #[test]
    fn plane_diagonal() {
        let id = synthesize_affine_subspace(&p(&[0, 0]), &[p(&[1, 1])]).unwrap();
        assert_eq!(id.generators(), &[parse_poly_n("x1 + x2", 2).unwrap()]);
    }

    #[test]
    fn shifted_sloped_line() {
        let id = synthesize_affine_subspace(&p(&[1, 0]), &[p(&[1, 2])]).unwrap();
        assert_eq!(id.generators(), &[parse_poly_n("x1^2 + 2*x2", 2).unwrap()]);
    }

    #[test]
    fn point_and_axis_line() {
        let id = synthesize_affine_subspace(&p(&[1, 2]), &[]).unwrap();
        assert_eq!(id.generators().len(), 2);
        assert!(id.contains(&p(&[1, 2])).unwrap());
        let id = synthesize_affine_subspace(&p(&[0, 5, 0]), &[p(&[0, 1, 0])]).unwrap();
        assert!(id.contains(&p(&[0, -7, 0])).unwrap());
        assert!(!id.contains(&p(&[1, -7, 0])).unwrap());
    }

    #[test]
    fn rejections() {
        assert!(synthesize_affine_subspace(&p(&[0, 0]), &[p(&[1, -1])]).is_err());
        assert!(
            synthesize_affine_subspace(&p(&[0, 0, 0]), &[p(&[1, 1, 0]), p(&[2, 2, 0])]).is_err()
        );
        assert!(synthesize_affine_subspace(&p(&[0, 0]), &[p(&[1, 0]), p(&[0, 1])]).is_err());
    }
}
