use crate::error::{Error, Result};
use crate::scalar::{rat, trop_add, trop_mul, Rat, TropScalar};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: TropScalar,
    pub exps: Vec<u64>,
}

impl Monomial {
    pub fn new(coeff: Rat, exps: Vec<u64>) -> Self {
        Monomial {
            coeff: TropScalar::Fin(coeff),
            exps,
        }
    }

    /// Value at `u`: coefficient plus the dot product with the exponents.
    pub fn value_at(&self, u: &[Rat]) -> TropScalar {
        match &self.coeff {
            TropScalar::NegInf => TropScalar::NegInf,
            TropScalar::Fin(c) => {
                let mut v = c.clone();
                for (e, x) in self.exps.iter().zip(u) {
                    if *e != 0 {
                        v += x * Rat::from_integer(BigInt::from(*e));
                    }
                }
                TropScalar::Fin(v)
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// At most one nonzero exponent.
    pub fn is_univariate_or_constant(&self) -> bool {
        self.exps.iter().filter(|&&e| e != 0).count() <= 1
    }
}

/// Finite max-plus sum of monomials, kept sorted by exponent vector with
/// duplicate exponents merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropPolynomial {
    nvars: usize,
    monomials: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: TropScalar,
    /// Indices (into `monomials()`) attaining the value.
    pub argmax: Vec<usize>,
}

impl Evaluation {
    /// The point lies on the corner locus.
    pub fn is_corner(&self) -> bool {
        self.value.is_bottom() || self.argmax.len() >= 2
    }
}

impl TropPolynomial {
    /// Builds a polynomial from finite-coefficient monomials, merging duplicates by max.
    pub fn new(nvars: usize, monomials: Vec<Monomial>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidArgument(
                "polynomial needs at least one variable".into(),
            ));
        }
        if monomials.is_empty() {
            return Err(Error::InvalidArgument(
                "polynomial needs at least one monomial".into(),
            ));
        }
        let mut merged: BTreeMap<Vec<u64>, Rat> = BTreeMap::new();
        for m in monomials {
            if m.exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: m.exps.len(),
                });
            }
            let c = match m.coeff {
                TropScalar::Fin(c) => c,
                TropScalar::NegInf => {
                    return Err(Error::InvalidArgument(
                        "-inf coefficient in a monomial".into(),
                    ))
                }
            };
            merged
                .entry(m.exps)
                .and_modify(|old| {
                    if c > *old {
                        *old = c.clone()
                    }
                })
                .or_insert(c);
        }
        Ok(Self::from_sorted(nvars, merged))
    }

    fn from_sorted(nvars: usize, merged: BTreeMap<Vec<u64>, Rat>) -> Self {
        let monomials = merged
            .into_iter()
            .map(|(exps, c)| Monomial::new(c, exps))
            .collect();
        TropPolynomial { nvars, monomials }
    }

    /// Convenience constructor from (coefficient, exponents) pairs.
    pub fn from_terms(nvars: usize, terms: Vec<(Rat, Vec<u64>)>) -> Result<Self> {
        Self::new(
            nvars,
            terms
                .into_iter()
                .map(|(c, e)| Monomial::new(c, e))
                .collect(),
        )
    }

    /// The constant polynomial -inf; its corner locus is everything.
    pub fn bottom(nvars: usize) -> Self {
        TropPolynomial {
            nvars,
            monomials: vec![Monomial {
                coeff: TropScalar::NegInf,
                exps: vec![0; nvars],
            }],
        }
    }

    pub fn is_bottom(&self) -> bool {
        self.monomials.len() == 1 && self.monomials[0].coeff.is_bottom()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn evaluate(&self, u: &[Rat]) -> Result<Evaluation> {
        if u.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: u.len(),
            });
        }
        let mut best = TropScalar::NegInf;
        let mut argmax = Vec::new();
        for (i, m) in self.monomials.iter().enumerate() {
            let v = m.value_at(u);
            if argmax.is_empty() || v > best {
                best = v;
                argmax.clear();
                argmax.push(i);
            } else if v == best {
                argmax.push(i);
            }
        }
        Ok(Evaluation {
            value: best,
            argmax,
        })
    }

    /// Evaluation that panics on dimension mismatch; for internal callers that
    /// already checked dimensions.
    pub fn eval(&self, u: &[Rat]) -> Evaluation {
        self.evaluate(u).expect("dimension checked by caller")
    }

    pub fn is_simple(&self) -> bool {
        self.monomials
            .iter()
            .all(Monomial::is_univariate_or_constant)
    }

    /// Essential monomials of a simple polynomial, by the univariate upper
    /// hull in each variable (the other variables can be sent to -inf).
    /// `None` when the polynomial is not simple.
    pub fn simple_essential(&self) -> Option<Vec<usize>> {
        if !self.is_simple() {
            return None;
        }
        let fin = |m: &Monomial| m.coeff.as_rat().cloned();
        let var = |m: &Monomial| m.exps.iter().position(|&e| e != 0);
        let mut out = Vec::new();
        for (i, mi) in self.monomials.iter().enumerate() {
            let Some(c) = fin(mi) else { continue };
            let Some(j) = var(mi) else {
                out.push(i);
                continue;
            };
            let e = mi.exps[j];
            // x_j must lie strictly between lo and hi
            let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
            for (k, mk) in self.monomials.iter().enumerate() {
                let Some(ck) = fin(mk) else { continue };
                if k == i || !(var(mk).is_none() || var(mk) == Some(j)) {
                    continue;
                }
                let ek = mk.exps[j];
                if ek < e {
                    let t = (&ck - &c) / rat((e - ek) as i64);
                    if lo.as_ref().is_none_or(|l| &t > l) {
                        lo = Some(t);
                    }
                } else {
                    let t = (&c - &ck) / rat((ek - e) as i64);
                    if hi.as_ref().is_none_or(|h| &t < h) {
                        hi = Some(t);
                    }
                }
            }
            if matches!((&lo, &hi), (Some(l), Some(h)) if l >= h) {
                continue;
            }
            out.push(i);
        }
        Some(out)
    }

    /// Same function scaled by `k` (exponents and coefficients times k); the
    /// corner locus is unchanged.
    pub fn scale(&self, k: u64) -> Self {
        assert!(k > 0);
        let kr = rat(k as i64);
        TropPolynomial {
            nvars: self.nvars,
            monomials: self
                .monomials
                .iter()
                .map(|m| Monomial {
                    coeff: match &m.coeff {
                        TropScalar::Fin(c) => TropScalar::Fin(c * &kr),
                        b => b.clone(),
                    },
                    exps: m.exps.iter().map(|e| e * k).collect(),
                })
                .collect(),
        }
    }

    /// `scale` with overflow checking on the exponents.
    pub fn scale_checked(&self, k: u64) -> Option<Self> {
        for m in &self.monomials {
            for e in &m.exps {
                e.checked_mul(k)?;
            }
        }
        Some(self.scale(k))
    }

    /// Re-index variables: variable `i` of self becomes variable `map[i]` of a
    /// polynomial in `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let monomials = self
            .monomials
            .iter()
            .map(|m| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.exps.iter().enumerate() {
                    e[map[i]] += x;
                }
                Monomial {
                    coeff: m.coeff.clone(),
                    exps: e,
                }
            })
            .collect::<Vec<_>>();
        if self.is_bottom() {
            return Self::bottom(nvars);
        }
        Self::new(nvars, monomials).expect("embedding keeps monomials valid")
    }

    /// Drops the listed monomials (by index). Keeps at least one.
    pub fn without(&self, drop: &[usize]) -> Self {
        let monomials: Vec<Monomial> = self
            .monomials
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, m)| m.clone())
            .collect();
        assert!(!monomials.is_empty());
        TropPolynomial {
            nvars: self.nvars,
            monomials,
        }
    }

    /// Exponent vectors as rationals.
    pub fn points(&self) -> Vec<Vec<Rat>> {
        self.monomials
            .iter()
            .map(|m| {
                m.exps
                    .iter()
                    .map(|&e| Rat::from_integer(BigInt::from(e)))
                    .collect()
            })
            .collect()
    }

    /// Finite coefficients (bottom polynomial yields an empty list).
    pub fn coeffs(&self) -> Vec<Rat> {
        self.monomials
            .iter()
            .filter_map(|m| m.coeff.as_rat().cloned())
            .collect()
    }
}

fn check_same(f: &TropPolynomial, g: &TropPolynomial) -> Result<()> {
    if f.nvars != g.nvars {
        return Err(Error::DimensionMismatch {
            expected: f.nvars,
            got: g.nvars,
        });
    }
    Ok(())
}

pub fn poly_add(f: &TropPolynomial, g: &TropPolynomial) -> Result<TropPolynomial> {
    check_same(f, g)?;
    if f.is_bottom() {
        return Ok(g.clone());
    }
    if g.is_bottom() {
        return Ok(f.clone());
    }
    TropPolynomial::new(
        f.nvars,
        f.monomials.iter().chain(&g.monomials).cloned().collect(),
    )
}

pub fn poly_mul(f: &TropPolynomial, g: &TropPolynomial) -> Result<TropPolynomial> {
    check_same(f, g)?;
    if f.is_bottom() || g.is_bottom() {
        return Ok(TropPolynomial::bottom(f.nvars));
    }
    let mut merged: BTreeMap<Vec<u64>, TropScalar> = BTreeMap::new();
    for a in &f.monomials {
        for b in &g.monomials {
            let e: Vec<u64> = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
            let c = trop_mul(&a.coeff, &b.coeff);
            let slot = merged.entry(e).or_insert(TropScalar::NegInf);
            *slot = trop_add(slot, &c);
        }
    }
    let m = merged
        .into_iter()
        .map(|(e, c)| Monomial { coeff: c, exps: e })
        .collect();
    TropPolynomial::new(f.nvars, m)
}

pub fn poly_power(f: &TropPolynomial, s: u32) -> Result<TropPolynomial> {
    if s == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let mut acc = f.clone();
    for _ in 1..s {
        acc = poly_mul(&acc, f)?;
    }
    Ok(acc)
}

/// Nonempty list of polynomials in the same number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<TropPolynomial>,
}

impl Ideal {
    pub fn new(generators: Vec<TropPolynomial>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidArgument("ideal needs at least one generator".into()))?;
        let n = first.nvars();
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.nvars(),
                });
            }
        }
        Ok(Ideal { generators })
    }

    pub fn generators(&self) -> &[TropPolynomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.generators[0].nvars()
    }

    /// Membership in the common corner locus.
    pub fn contains(&self, u: &[Rat]) -> Result<bool> {
        for g in &self.generators {
            if !g.evaluate(u)?.is_corner() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_simple(&self) -> bool {
        self.generators.iter().all(TropPolynomial::is_simple)
    }
}

/// Value of a univariate max-plus polynomial given as (coefficient, exponent) pairs.
pub fn univariate_value(terms: &[(Rat, u64)], x: &Rat) -> Rat {
    terms
        .iter()
        .map(|(c, e)| c + x * rat(*e as i64))
        .max()
        .unwrap_or_else(Rat::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn p(terms: &[(i64, &[u64])], n: usize) -> TropPolynomial {
        TropPolynomial::from_terms(
            n,
            terms.iter().map(|(c, e)| (rat(*c), e.to_vec())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = p(&[(0, &[0, 0]), (0, &[1, 0]), (0, &[0, 1])], 2);
        let e = f.evaluate(&[rat(3), rat(1)]).unwrap();
        assert_eq!(e.value, TropScalar::int(3));
        assert_eq!(e.argmax.len(), 1);
        assert_eq!(f.monomials()[e.argmax[0]].exps, vec![1, 0]);
        let e = f.evaluate(&[rat(0), rat(0)]).unwrap();
        assert_eq!(e.argmax.len(), 3);
        let g = p(&[(-1, &[2, 0]), (0, &[0, 1])], 2);
        let e = g.evaluate(&[rat(2), rat(0)]).unwrap();
        assert_eq!(e.value, TropScalar::int(3));
        assert_eq!(g.monomials()[e.argmax[0]].exps, vec![2, 0]);
        assert!(f.evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn add_mul_examples() {
        let a = p(&[(0, &[0]), (0, &[1])], 1);
        let b = p(&[(1, &[0]), (0, &[1])], 1);
        assert_eq!(poly_add(&a, &b).unwrap(), b);
        let x1 = p(&[(0, &[1, 0])], 2);
        let x2 = p(&[(0, &[0, 1])], 2);
        assert_eq!(poly_mul(&x1, &x2).unwrap(), p(&[(0, &[1, 1])], 2));
        let sq = poly_mul(&a, &a).unwrap();
        assert_eq!(sq, p(&[(0, &[0]), (0, &[1]), (0, &[2])], 1));
    }

    #[test]
    fn power_examples() {
        let c = TropPolynomial::from_terms(1, vec![(rat(2), vec![0]), (rat(5), vec![0])]).unwrap();
        let c3 = poly_power(&c, 3).unwrap();
        assert_eq!(c3.eval(&[rat(0)]).value, TropScalar::int(15));
        let x = p(&[(0, &[1])], 1);
        assert_eq!(poly_power(&x, 4).unwrap(), p(&[(0, &[4])], 1));
        let a = p(&[(0, &[0]), (0, &[1])], 1);
        assert_eq!(
            poly_power(&a, 2).unwrap().eval(&[rat(3)]).value,
            TropScalar::int(6)
        );
        assert!(poly_power(&a, 0).is_err());
    }

    #[test]
    fn simple_examples() {
        assert!(!p(&[(0, &[1, 1]), (0, &[1, 0]), (0, &[0, 1])], 2).is_simple());
        assert!(p(&[(0, &[0, 0]), (2, &[3, 0]), (0, &[0, 1])], 2).is_simple());
        assert!(p(&[(5, &[0, 0])], 2).is_simple());
    }

    #[test]
    fn duplicates_merge_by_max() {
        let f =
            TropPolynomial::from_terms(1, vec![(frac(1, 2), vec![1]), (rat(3), vec![1])]).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.monomials()[0].coeff, TropScalar::int(3));
    }

    #[test]
    fn bottom_is_everywhere_corner() {
        let b = TropPolynomial::bottom(2);
        assert!(b.eval(&[rat(1), rat(2)]).is_corner());
        let x = p(&[(0, &[1, 0])], 2);
        assert_eq!(poly_add(&b, &x).unwrap(), x);
        assert!(poly_mul(&b, &x).unwrap().is_bottom());
    }
}
