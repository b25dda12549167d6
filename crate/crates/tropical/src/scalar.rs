use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// "p" for integers, "p/q" otherwise. Always lowest terms.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p" or "p/q" with an optional leading minus. Denominator must be nonzero.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let valid_int = |t: &str, allow_sign: bool| {
        let t = if allow_sign {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    match den {
        None => Some(Rat::from_integer(n)),
        Some(d) => {
            if !valid_int(d, false) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
    }
}

pub fn max_rat<'a>(a: &'a Rat, b: &'a Rat) -> &'a Rat {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Element of the tropical semifield: a rational or bottom.
///
/// Variant order makes the derived `Ord` agree with max-plus order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropScalar {
    NegInf,
    Fin(Rat),
}

impl TropScalar {
    pub fn int(n: i64) -> Self {
        TropScalar::Fin(rat(n))
    }

    pub fn zero() -> Self {
        TropScalar::Fin(Rat::zero())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, TropScalar::NegInf)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            TropScalar::Fin(r) => Some(r),
            TropScalar::NegInf => None,
        }
    }

    /// s-th tropical power, i.e. s times the value.
    pub fn pow(&self, s: u32) -> Self {
        match self {
            TropScalar::NegInf if s == 0 => TropScalar::zero(),
            TropScalar::NegInf => TropScalar::NegInf,
            TropScalar::Fin(r) => TropScalar::Fin(r * rat(s as i64)),
        }
    }
}

impl From<Rat> for TropScalar {
    fn from(r: Rat) -> Self {
        TropScalar::Fin(r)
    }
}

pub fn trop_add(a: &TropScalar, b: &TropScalar) -> TropScalar {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn trop_mul(a: &TropScalar, b: &TropScalar) -> TropScalar {
    match (a, b) {
        (TropScalar::Fin(x), TropScalar::Fin(y)) => TropScalar::Fin(x + y),
        _ => TropScalar::NegInf,
    }
}

/// Tropical sum of a list; bottom for the empty list.
pub fn trop_sum<'a>(xs: impl IntoIterator<Item = &'a TropScalar>) -> TropScalar {
    xs.into_iter()
        .fold(TropScalar::NegInf, |acc, x| trop_add(&acc, x))
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::NegInf => write!(f, "-inf"),
            TropScalar::Fin(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

impl std::str::FromStr for TropScalar {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.trim() == "-inf" {
            return Ok(TropScalar::NegInf);
        }
        parse_rat(s)
            .map(TropScalar::Fin)
            .ok_or_else(|| format!("not a rational: {s:?}"))
    }
}

/// gcd of absolute values; 0 for an all-zero slice.
pub fn gcd_slice(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Integer vector along `v` scaled to be primitive, same orientation.
pub fn primitive_dir(v: &[Rat]) -> Option<Vec<i64>> {
    use num_integer::Integer;
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect();
    let g = gcd_slice(&ints);
    ints.iter()
        .map(|x| i64::try_from(x / &g).ok())
        .collect::<Option<Vec<_>>>()
}

pub fn is_primitive(d: &[i64]) -> bool {
    use num_integer::Integer;
    d.iter().fold(0i64, |g, x| g.gcd(x)) == 1
}

pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_mul() {
        let two = TropScalar::int(2);
        let three = TropScalar::int(3);
        assert_eq!(trop_add(&two, &three), three);
        assert_eq!(
            trop_add(&TropScalar::NegInf, &TropScalar::int(5)),
            TropScalar::int(5)
        );
        assert_eq!(
            trop_add(&TropScalar::int(7), &TropScalar::int(7)),
            TropScalar::int(7)
        );
        assert_eq!(trop_mul(&two, &three), TropScalar::int(5));
        assert_eq!(
            trop_mul(&TropScalar::NegInf, &TropScalar::int(5)),
            TropScalar::NegInf
        );
        assert_eq!(trop_mul(&TropScalar::zero(), &three), three);
    }

    #[test]
    fn rat_text() {
        assert_eq!(parse_rat("-6/4"), Some(frac(-3, 2)));
        assert_eq!(fmt_rat(&frac(6, 3)), "2");
        assert_eq!(fmt_rat(&frac(-3, 6)), "-1/2");
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("1/-2"), None);
        assert_eq!(parse_rat("--1"), None);
        assert_eq!("-inf".parse::<TropScalar>(), Ok(TropScalar::NegInf));
    }

    #[test]
    fn primitive() {
        assert_eq!(primitive_dir(&[rat(2), rat(4)]), Some(vec![1, 2]));
        assert_eq!(primitive_dir(&[frac(-1, 2), rat(0)]), Some(vec![-1, 0]));
        assert!(is_primitive(&[2, 3]));
        assert!(!is_primitive(&[2, 2]));
    }
}
