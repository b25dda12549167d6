//! Exponent sequences for the spine polynomials.
//!
//! Along the spine piece e_i the j-th coordinate monomial has exponent
//! b(i,j) = p_i / a_ij. Divisibility asks 2·∏_j a_ij | p_i, the gap condition asks every gap
//! b(i,j) - b(i-1,j) to be at least `cgap * n`.

use crate::additive::Spine;
use crate::error::{Error, Result};
use crate::scalar::{rat, Rat};
use num_integer::Integer;
use num_traits::Signed;

/// Default growth constant for the gaps.
pub const DEFAULT_CGAP: u64 = 16;

const MAX_DOUBLINGS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisParams {
    /// a(e_0), ..., a(e_m). For a terminal spine a(e_0) is a copy of a(e_1).
    pub dirs: Vec<Vec<u64>>,
    /// p_0, ..., p_m.
    pub p: Vec<u64>,
    pub cgap: u64,
    /// Spine vertices u_1, ..., u_m.
    pub vertices: Vec<Vec<Rat>>,
    pub terminal: bool,
}

fn positive_dir(d: &[i64]) -> Result<Vec<u64>> {
    d.iter()
        .map(|&x| u64::try_from(x).ok().filter(|&v| v > 0))
        .collect::<Option<Vec<u64>>>()
        .ok_or_else(|| {
            Error::InvalidArgument(format!("spine direction {d:?} is not strictly positive"))
        })
}

fn overflow() -> Error {
    Error::Computation("exponent overflow while choosing parameters".into())
}

impl SynthesisParams {
    pub fn m(&self) -> usize {
        self.p.len() - 1
    }

    pub fn n(&self) -> usize {
        self.dirs[0].len()
    }

    /// b(i,j) for 0 <= i <= m, 0-based j.
    pub fn b(&self, i: usize, j: usize) -> u64 {
        self.p[i] / self.dirs[i][j]
    }

    fn unit(&self, i: usize) -> u64 {
        2 * self.dirs[i].iter().product::<u64>()
    }

    /// mu_i with u_{i+1} = u_i + mu_i a(e_i).
    pub fn mu(&self, i: usize) -> Rat {
        (&self.vertices[i][0] - &self.vertices[i - 1][0]) / rat(self.dirs[i][0] as i64)
    }

    /// Values M_1 = 0, M_{k+1} = M_k + p_k mu_k at u_1, ..., u_m.
    pub fn vertex_values(&self) -> Vec<Rat> {
        let mut out = vec![Rat::from_integer(0.into())];
        for k in 1..self.m() {
            let next = out[k - 1].clone() + rat(self.p[k] as i64) * self.mu(k);
            out.push(next);
        }
        out
    }

    fn gap_ok(&self, i: usize) -> bool {
        let need = self.cgap * self.n() as u64;
        if i == 0 {
            return (0..self.n()).all(|j| self.b(0, j) >= need);
        }
        (0..self.n()).all(|j| self.b(i, j) >= self.b(i - 1, j) + need)
    }

    /// Divisibility for every index.
    pub fn divisibility_ok(&self) -> bool {
        (0..=self.m()).all(|i| self.p[i] % self.unit(i) == 0)
    }

    /// Gap condition for every index.
    pub fn gaps_ok(&self) -> bool {
        (0..=self.m()).all(|i| self.gap_ok(i))
    }

    /// First interior index k (1-based, 1 < k < m) where the target is not
    /// strictly convex against the vertex values.
    pub fn convexity_violation(&self, target: &[Rat]) -> Option<usize> {
        let mv = self.vertex_values();
        let m = self.m();
        if target.len() != m {
            return Some(0);
        }
        for k in 2..m {
            let (x0, x1, x2) = (&target[k - 2], &target[k - 1], &target[k]);
            let (y0, y1, y2) = (&mv[k - 2], &mv[k - 1], &mv[k]);
            let left = (y1 - y0) / (x1 - x0);
            let right = (y2 - y1) / (x2 - x1);
            if left >= right {
                return Some(k);
            }
        }
        None
    }

    /// Replays divisibility, gaps and the convexity targets.
    pub fn check(&self, targets: &[Vec<Rat>]) -> bool {
        self.divisibility_ok()
            && self.gaps_ok()
            && targets
                .iter()
                .all(|t| self.convexity_violation(t).is_none())
    }

    fn enforce_gaps_from(&mut self, start: usize, budget: &mut usize) -> Result<()> {
        for i in start..=self.m() {
            while !self.gap_ok(i) {
                self.double(i, budget)?;
            }
        }
        Ok(())
    }

    fn double(&mut self, i: usize, budget: &mut usize) -> Result<()> {
        if *budget == 0 {
            return Err(Error::Computation(
                "doubling cap reached while choosing parameters".into(),
            ));
        }
        *budget -= 1;
        self.p[i] = self.p[i].checked_mul(2).ok_or_else(overflow)?;
        Ok(())
    }

    /// Raises p_m until it dominates every other p_k fourfold.
    pub fn boost_top(&self) -> Result<Self> {
        let mut out = self.clone();
        let m = out.m();
        let top = out.p[..m].iter().copied().max().unwrap_or(0);
        while out.p[m] < top.saturating_mul(4) {
            out.p[m] = out.p[m].checked_mul(2).ok_or_else(overflow)?;
        }
        Ok(out)
    }
}

/// Smallest p satisfying divisibility and gaps along the doubling schedule, then doubled
/// further wherever a convexity target fails.
pub fn choose_params(spine: &Spine, targets: &[Vec<Rat>], cgap: u64) -> Result<SynthesisParams> {
    if cgap == 0 {
        return Err(Error::InvalidArgument("cgap must be positive".into()));
    }
    let mut dirs = Vec::new();
    let first = spine
        .a(0)
        .or(spine.a(1))
        .ok_or_else(|| Error::InvalidArgument("empty spine".into()))?;
    dirs.push(positive_dir(first)?);
    for d in &spine.dirs {
        dirs.push(positive_dir(d)?);
    }
    let mut sp = SynthesisParams {
        p: vec![0; dirs.len()],
        dirs,
        cgap,
        vertices: spine.vertices.clone(),
        terminal: spine.terminal,
    };
    for t in targets {
        if t.len() != sp.m() {
            return Err(Error::DimensionMismatch {
                expected: sp.m(),
                got: t.len(),
            });
        }
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "convexity target must be strictly increasing".into(),
            ));
        }
    }
    for i in 0..=sp.m() {
        sp.p[i] = sp.unit(i);
    }
    let mut budget = MAX_DOUBLINGS * (sp.m() + 1) * 4;
    sp.enforce_gaps_from(0, &mut budget)?;
    let mut rounds = 0;
    loop {
        let bad = targets.iter().find_map(|t| sp.convexity_violation(t));
        let Some(k) = bad else { break };
        rounds += 1;
        if rounds > MAX_DOUBLINGS {
            return Err(Error::Computation(
                "convexity targets not met within the doubling cap".into(),
            ));
        }
        sp.double(k, &mut budget)?;
        sp.enforce_gaps_from(k + 1, &mut budget)?;
    }
    debug_assert!(sp.divisibility_ok() && sp.gaps_ok());
    Ok(sp)
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(xs: &[Rat]) -> u64 {
    let l = xs
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    u64::try_from(l.abs()).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn diag_spine() -> Spine {
        Spine {
            vertices: vec![r(&[0, 0])],
            e0: Some(vec![1, 1]),
            dirs: vec![vec![1, 1]],
            terminal: false,
        }
    }

    #[test]
    fn minimal_plane_parameters() {
        let sp = choose_params(&diag_spine(), &[], DEFAULT_CGAP).unwrap();
        assert_eq!(sp.p, vec![32, 64]);
        assert!(sp.check(&[]));
    }

    #[test]
    fn divisibility_uses_direction_product() {
        let s = Spine {
            vertices: vec![r(&[0, 0])],
            e0: Some(vec![1, 2]),
            dirs: vec![vec![3, 1]],
            terminal: false,
        };
        let sp = choose_params(&s, &[], 1).unwrap();
        assert_eq!(sp.p[0] % 4, 0);
        assert_eq!(sp.p[1] % 6, 0);
        assert!(sp.gaps_ok());
    }

    #[test]
    fn convexity_target_forces_doubling() {
        // Three vertices, equal steps; target bunches the middle so the
        // second slope must beat the first.
        let s = Spine {
            vertices: vec![r(&[0, 0]), r(&[1, 1]), r(&[2, 2])],
            e0: Some(vec![1, 1]),
            dirs: vec![vec![1, 1], vec![1, 1], vec![1, 1]],
            terminal: false,
        };
        let target = vec![rat(0), frac(1, 10), rat(1)];
        let sp = choose_params(&s, &[target.clone()], DEFAULT_CGAP).unwrap();
        assert!(sp.convexity_violation(&target).is_none());
        let plain = choose_params(&s, &[], DEFAULT_CGAP).unwrap();
        assert!(plain.convexity_violation(&target).is_some());
    }

    #[test]
    fn terminal_spine_copies_first_direction() {
        let s = Spine {
            vertices: vec![r(&[0, 0])],
            e0: None,
            dirs: vec![vec![2, 1]],
            terminal: true,
        };
        let sp = choose_params(&s, &[], 2).unwrap();
        assert_eq!(sp.dirs[0], sp.dirs[1]);
    }

    #[test]
    fn boost_dominates() {
        let sp = choose_params(&diag_spine(), &[], 4)
            .unwrap()
            .boost_top()
            .unwrap();
        assert!(sp.p[1] >= 4 * sp.p[0]);
    }
}
