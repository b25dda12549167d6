//! Checking an ideal against a curve: exact containment of every piece,
//! membership at canonical samples, rejection at seeded points off the curve,
//! and in the plane exact equality of the common locus.

use super::zero::piece_in_zero_set;
use crate::curve::{intersect_plane, TropCurve};
use crate::error::{Error, Result};
use crate::parse::poly_to_string;
use crate::poly::Ideal;
use crate::scalar::{fmt_rat, rat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub off_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            off_samples: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// A curve point outside the common locus.
    OnCurveMiss,
    /// A point off the curve inside the common locus.
    OffCurveHit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub point: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// Generators in the canonical text syntax.
    pub generators: Vec<String>,
    pub simple: bool,
    pub on_pass: usize,
    pub on_total: usize,
    pub off_pass: usize,
    pub off_total: usize,
    /// Every piece of the curve lies in every corner locus (exact).
    pub contained: bool,
    /// Plane only: the common locus equals the curve as a set.
    pub exact_equality: Option<bool>,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.on_pass == self.on_total
            && self.off_pass == self.off_total
            && self.contained
            && self.exact_equality != Some(false)
    }

    pub fn to_value(&self) -> Value {
        let pt = |p: &Vec<Rat>| Value::Array(p.iter().map(|x| Value::String(fmt_rat(x))).collect());
        let mut v = json!({
            "generators": self.generators,
            "simple": self.simple,
            "on_curve_pass": format!("{}/{}", self.on_pass, self.on_total),
            "off_curve_pass": format!("{}/{}", self.off_pass, self.off_total),
            "contained": self.contained,
            "passed": self.passed(),
            "witnesses": self.witnesses.iter().map(|w| json!({
                "kind": match w.kind {
                    WitnessKind::OnCurveMiss => "on-curve-miss",
                    WitnessKind::OffCurveHit => "off-curve-hit",
                },
                "point": pt(&w.point),
            })).collect::<Vec<_>>(),
        });
        if let Some(e) = self.exact_equality {
            v["exact_equality"] = json!(e);
        }
        v
    }
}

fn random_in_box(rng: &mut ChaCha8Rng, lo: &[Rat], hi: &[Rat]) -> Vec<Rat> {
    lo.iter()
        .zip(hi)
        .map(|(l, h)| l + (h - l) * Rat::new(rng.random_range(0..=1000i64).into(), 1000.into()))
        .collect()
}

/// Seeded points off the curve: uniform in the inflated bounding box, and
/// small axis moves away from curve samples.
pub fn off_curve_samples(c: &TropCurve, count: usize, seed: u64) -> Vec<Vec<Rat>> {
    let Some((lo, hi)) = c.bounding_box() else {
        return vec![];
    };
    let two = rat(2);
    let (lo, hi): (Vec<Rat>, Vec<Rat>) = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| {
            let mid = (l + h) / &two;
            let half = (h - l) / &two;
            (&mid - &half * &two - rat(1), &mid + &half * &two + rat(1))
        })
        .unzip();
    let near = c.canonical_samples();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 50 * count.max(1) {
        tries += 1;
        let x = if out.len() % 4 == 3 && !near.is_empty() {
            let mut x = near[rng.random_range(0..near.len())].clone();
            let j = rng.random_range(0..c.dim);
            let mut d = Rat::new(rng.random_range(1..=7i64).into(), 7.into());
            if rng.random_bool(0.5) {
                d = -d;
            }
            x[j] += d;
            x
        } else {
            random_in_box(&mut rng, &lo, &hi)
        };
        if !c.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Runs all checks of `ideal` against `curve`.
pub fn verify_ideal(
    ideal: &Ideal,
    curve: &TropCurve,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if ideal.nvars() != curve.dim {
        return Err(Error::DimensionMismatch {
            expected: curve.dim,
            got: ideal.nvars(),
        });
    }
    let mut witnesses = Vec::new();
    let on = curve.canonical().canonical_samples();
    let mut on_pass = 0;
    for x in &on {
        if ideal.contains(x)? {
            on_pass += 1;
        } else {
            witnesses.push(Witness {
                kind: WitnessKind::OnCurveMiss,
                point: x.clone(),
            });
        }
    }
    let mut contained = true;
    for (p, _) in curve.pieces() {
        if !ideal.generators().iter().all(|g| piece_in_zero_set(g, &p)) {
            contained = false;
            let miss = (0..64)
                .map(|k| p.sample(&Rat::new(k.into(), 8.into())))
                .find(|x| !ideal.contains(x).unwrap_or(true));
            if let Some(x) = miss.filter(|x| !witnesses.iter().any(|w| &w.point == x)) {
                witnesses.push(Witness {
                    kind: WitnessKind::OnCurveMiss,
                    point: x,
                });
            }
        }
    }
    let off = off_curve_samples(curve, opts.off_samples, opts.seed);
    let mut off_pass = 0;
    for x in &off {
        if ideal.contains(x)? {
            witnesses.push(Witness {
                kind: WitnessKind::OffCurveHit,
                point: x.clone(),
            });
        } else {
            off_pass += 1;
        }
    }
    let exact_equality = if curve.dim == 2 {
        Some(intersect_plane(ideal)?.unweighted() == curve.unweighted())
    } else {
        None
    };
    Ok(VerificationReport {
        generators: ideal.generators().iter().map(poly_to_string).collect(),
        simple: ideal.is_simple(),
        on_pass,
        on_total: on.len(),
        off_pass,
        off_total: off.len(),
        contained,
        exact_equality,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{canonicalize, curve_from_poly2, Piece};
    use crate::parse::{parse_ideal_n, parse_poly};

    fn p(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn line_ideal_passes() {
        let c = curve_from_poly2(&parse_poly("0 + x1 + x2").unwrap()).unwrap();
        let id = parse_ideal_n("0 + x1 + x2", 2).unwrap();
        let r = verify_ideal(&id, &c, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.to_value());
        assert_eq!(r.exact_equality, Some(true));
        assert!(r.simple);
    }

    #[test]
    fn wrong_ideal_for_vertical_line() {
        let c = canonicalize(2, &[(Piece::Line(p(&[0, 0]), vec![0, 1]), 1)]);
        let id = parse_ideal_n("x1 + x2", 2).unwrap();
        let r = verify_ideal(&id, &c, &VerifyOptions::default()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.exact_equality, Some(false));
        let w = r
            .witnesses
            .iter()
            .find(|w| w.kind == WitnessKind::OnCurveMiss)
            .unwrap();
        assert_eq!(w.point[0], rat(0));
        assert!(!id.contains(&w.point).unwrap());
    }

    #[test]
    fn locus_too_large_is_caught_off_curve() {
        // The tropical line has axis rays the diagonal line lacks.
        let c = canonicalize(2, &[(Piece::Line(p(&[0, 0]), vec![1, 1]), 1)]);
        let id = parse_ideal_n("0 + x1 + x2", 2).unwrap();
        let r = verify_ideal(&id, &c, &VerifyOptions::default()).unwrap();
        assert!(!r.passed());
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.kind == WitnessKind::OffCurveHit));
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        let c = curve_from_poly2(&parse_poly("0 + x1 + x2").unwrap()).unwrap();
        assert_eq!(off_curve_samples(&c, 30, 7), off_curve_samples(&c, 30, 7));
        assert!(off_curve_samples(&c, 30, 7).iter().all(|x| !c.contains(x)));
    }

    #[test]
    fn report_json_shape() {
        let c = curve_from_poly2(&parse_poly("0 + x1 + x2").unwrap()).unwrap();
        let id = parse_ideal_n("0 + x1 + x2", 2).unwrap();
        let v = verify_ideal(
            &id,
            &c,
            &VerifyOptions {
                off_samples: 10,
                seed: 1,
            },
        )
        .unwrap()
        .to_value();
        for k in [
            "generators",
            "simple",
            "on_curve_pass",
            "off_curve_pass",
            "exact_equality",
            "witnesses",
        ] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}
