//! Exact rational linear programming (dense two-phase simplex, Bland's rule).
//!
//! Variables are free. Constraints are `a·x <= b` and `a·x = b`.

use crate::scalar::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: Vec<Rat> },
}

#[derive(Debug, Clone, Default)]
pub struct Lp {
    pub nvars: usize,
    pub le: Vec<(Vec<Rat>, Rat)>,
    pub eq: Vec<(Vec<Rat>, Rat)>,
}

impl Lp {
    pub fn new(nvars: usize) -> Self {
        Lp {
            nvars,
            le: Vec::new(),
            eq: Vec::new(),
        }
    }

    pub fn le(&mut self, a: Vec<Rat>, b: Rat) -> &mut Self {
        debug_assert_eq!(a.len(), self.nvars);
        self.le.push((a, b));
        self
    }

    pub fn ge(&mut self, a: Vec<Rat>, b: Rat) -> &mut Self {
        self.le(a.into_iter().map(|x| -x).collect(), -b)
    }

    pub fn eq(&mut self, a: Vec<Rat>, b: Rat) -> &mut Self {
        debug_assert_eq!(a.len(), self.nvars);
        self.eq.push((a, b));
        self
    }

    pub fn maximize(&self, c: &[Rat]) -> LpResult {
        solve(self, c)
    }

    pub fn minimize(&self, c: &[Rat]) -> LpResult {
        let neg: Vec<Rat> = c.iter().map(|x| -x).collect();
        match solve(self, &neg) {
            LpResult::Optimal { value, x } => LpResult::Optimal { value: -value, x },
            r => r,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        match solve(self, &vec![Rat::zero(); self.nvars]) {
            LpResult::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    obj: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, pv) in self.obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Sets the objective row for maximizing `cost` given the current basis.
    /// `obj[j]` holds the reduced cost; `obj[ncols]` holds minus the objective value.
    fn set_objective(&mut self, cost: &[Rat]) {
        let mut obj: Vec<Rat> = cost.to_vec();
        obj.push(Rat::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if !cb.is_zero() {
                for (v, a) in obj.iter_mut().zip(&self.rows[r]) {
                    *v -= cb * a;
                }
            }
        }
        self.obj = obj;
    }

    /// Returns false when unbounded.
    fn run(&mut self, allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let enter = (0..self.ncols).find(|&j| allowed(j) && self.obj[j].is_positive());
            let Some(c) = enter else { return true };
            let mut best: Option<(usize, Rat)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => {
                            ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

fn solve(lp: &Lp, c: &[Rat]) -> LpResult {
    let n = lp.nvars;
    let m_le = lp.le.len();
    let m = m_le + lp.eq.len();
    // columns: x+ (n), x- (n), slacks (m_le), artificials (m)
    let art0 = 2 * n + m_le;
    let ncols = art0 + m;
    let mut rows = Vec::with_capacity(m);
    for (k, (a, b)) in lp.le.iter().chain(&lp.eq).enumerate() {
        let mut row = vec![Rat::zero(); ncols + 1];
        for j in 0..n {
            row[j] = a[j].clone();
            row[n + j] = -a[j].clone();
        }
        if k < m_le {
            row[2 * n + k] = Rat::one();
        }
        row[ncols] = b.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art0 + k] = Rat::one();
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis: (art0..art0 + m).collect(),
        ncols,
    };

    let mut phase1 = vec![Rat::zero(); ncols];
    for v in phase1.iter_mut().skip(art0) {
        *v = -Rat::one();
    }
    t.set_objective(&phase1);
    t.run(&|_| true);
    if t.obj[ncols].is_positive() {
        // obj holds minus the value; value < 0 means some artificial stays positive
        return LpResult::Infeasible;
    }
    // drive zero-level artificials out of the basis
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= art0 {
            match (0..art0).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => {
                    t.pivot(r, j);
                    r += 1;
                }
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }

    let mut cost = vec![Rat::zero(); ncols];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    t.set_objective(&cost);
    if !t.run(&|j| j < art0) {
        return LpResult::Unbounded;
    }
    let mut full = vec![Rat::zero(); ncols];
    for (r, &b) in t.basis.iter().enumerate() {
        full[b] = t.rows[r][ncols].clone();
    }
    let x: Vec<Rat> = (0..n).map(|j| &full[j] - &full[n + j]).collect();
    let value = x
        .iter()
        .zip(c)
        .map(|(a, b)| a * b)
        .fold(Rat::zero(), |s, v| s + v);
    LpResult::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn small_lp() {
        // max x + y s.t. x <= 2, y <= 3, x + y <= 4
        let mut lp = Lp::new(2);
        lp.le(v(&[1, 0]), rat(2))
            .le(v(&[0, 1]), rat(3))
            .le(v(&[1, 1]), rat(4));
        match lp.maximize(&v(&[1, 1])) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(4)),
            r => panic!("{r:?}"),
        }
        match lp.maximize(&v(&[-1, 0])) {
            LpResult::Unbounded => {}
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn infeasible_and_equalities() {
        let mut lp = Lp::new(1);
        lp.le(v(&[1]), rat(0)).ge(v(&[1]), rat(1));
        assert_eq!(lp.maximize(&v(&[1])), LpResult::Infeasible);
        let mut lp = Lp::new(2);
        lp.eq(v(&[1, 1]), rat(3))
            .eq(v(&[2, 2]), rat(6))
            .ge(v(&[1, 0]), rat(-5));
        match lp.minimize(&v(&[1, 0])) {
            LpResult::Optimal { value, x } => {
                assert_eq!(value, rat(-5));
                assert_eq!(x, v(&[-5, 8]));
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn negative_rhs() {
        // x >= 2 written as -x <= -2; min x = 2
        let mut lp = Lp::new(1);
        lp.le(v(&[-1]), rat(-2));
        match lp.minimize(&v(&[1])) {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(2)),
            r => panic!("{r:?}"),
        }
    }
}
