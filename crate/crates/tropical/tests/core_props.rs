mod common;

use common::{random_poly, rng};
use proptest::prelude::*;
use tropical::poly::{poly_add, poly_mul, poly_power};
use tropical::scalar::{frac, trop_add, trop_mul, trop_sum};
use tropical::{Rat, TropScalar};

fn scalar() -> impl Strategy<Value = TropScalar> {
    prop_oneof![
        1 => Just(TropScalar::NegInf),
        8 => (-200i64..200, 1i64..12).prop_map(|(p, q)| TropScalar::Fin(frac(p, q))),
    ]
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-40i64..40, 1i64..6).prop_map(|(p, q)| frac(p, q)), n)
}

fn val(f: &tropical::TropPolynomial, x: &[Rat]) -> TropScalar {
    f.evaluate(x).unwrap().value
}

proptest! {
    #[test]
    fn scalar_semiring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(trop_add(&a, &b), trop_add(&b, &a));
        prop_assert_eq!(trop_add(&trop_add(&a, &b), &c), trop_add(&a, &trop_add(&b, &c)));
        prop_assert_eq!(trop_add(&a, &a), a.clone());
        prop_assert_eq!(trop_mul(&a, &b), trop_mul(&b, &a));
        prop_assert_eq!(trop_mul(&trop_mul(&a, &b), &c), trop_mul(&a, &trop_mul(&b, &c)));
        prop_assert_eq!(trop_mul(&a, &trop_add(&b, &c)), trop_add(&trop_mul(&a, &b), &trop_mul(&a, &c)));
        prop_assert_eq!(trop_add(&TropScalar::NegInf, &a), a.clone());
        prop_assert_eq!(trop_mul(&TropScalar::NegInf, &a), TropScalar::NegInf);
        prop_assert_eq!(trop_mul(&TropScalar::zero(), &a), a.clone());
    }

    #[test]
    fn frobenius(xs in prop::collection::vec(scalar(), 1..=6), s in 1u32..=10) {
        let lhs = trop_sum(&xs).pow(s);
        let powered: Vec<TropScalar> = xs.iter().map(|x| x.pow(s)).collect();
        prop_assert_eq!(lhs, trop_sum(&powered));
    }

    #[test]
    fn polynomial_semiring_as_functions(seed in any::<u64>(), x in point(2)) {
        let mut r = rng(seed);
        let (f, g, h) = (random_poly(&mut r, 2, 5, 3, false), random_poly(&mut r, 2, 5, 3, false), random_poly(&mut r, 2, 5, 3, false));
        prop_assert_eq!(poly_add(&f, &g).unwrap(), poly_add(&g, &f).unwrap());
        prop_assert_eq!(poly_add(&f, &f).unwrap(), f.clone());
        prop_assert_eq!(poly_mul(&f, &g).unwrap(), poly_mul(&g, &f).unwrap());
        prop_assert_eq!(
            poly_add(&poly_add(&f, &g).unwrap(), &h).unwrap(),
            poly_add(&f, &poly_add(&g, &h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            poly_mul(&poly_mul(&f, &g).unwrap(), &h).unwrap(),
            poly_mul(&f, &poly_mul(&g, &h).unwrap()).unwrap()
        );
        let dist_l = poly_mul(&f, &poly_add(&g, &h).unwrap()).unwrap();
        let dist_r = poly_add(&poly_mul(&f, &g).unwrap(), &poly_mul(&f, &h).unwrap()).unwrap();
        prop_assert_eq!(val(&dist_l, &x), val(&dist_r, &x));
        prop_assert_eq!(val(&poly_add(&f, &g).unwrap(), &x), trop_add(&val(&f, &x), &val(&g, &x)));
        prop_assert_eq!(val(&poly_mul(&f, &g).unwrap(), &x), trop_mul(&val(&f, &x), &val(&g, &x)));
    }

    #[test]
    fn convexity(seed in any::<u64>(), u in point(3), v in point(3), t in 0i64..=12) {
        let f = random_poly(&mut rng(seed), 3, 8, 4, false);
        let t = frac(t, 12);
        let one = frac(1, 1);
        let mid: Vec<Rat> = u.iter().zip(&v).map(|(a, b)| &t * a + (&one - &t) * b).collect();
        let lhs = val(&f, &mid);
        let rhs = &t * val(&f, &u).as_rat().unwrap() + (&one - &t) * val(&f, &v).as_rat().unwrap();
        prop_assert!(lhs.as_rat().unwrap() <= &rhs);
    }

    #[test]
    fn power_scales_values(seed in any::<u64>(), s in 1u32..=5, x in point(2)) {
        let f = random_poly(&mut rng(seed), 2, 4, 2, false);
        let p = poly_power(&f, s).unwrap();
        let want = val(&f, &x).as_rat().unwrap() * frac(s as i64, 1);
        prop_assert_eq!(val(&p, &x), TropScalar::Fin(want));
    }

    #[test]
    fn simple_iff_univariate(seed in any::<u64>()) {
        let mut r = rng(seed);
        prop_assert!(random_poly(&mut r, 3, 8, 4, true).is_simple());
        let f = random_poly(&mut r, 3, 8, 4, false);
        let by_hand = f.monomials().iter().all(|m| m.exps.iter().filter(|&&e| e > 0).count() <= 1);
        prop_assert_eq!(f.is_simple(), by_hand);
    }
}

#[test]
fn power_rejects_zero() {
    let f = tropical::parse::parse_poly("0 + x1").unwrap();
    assert!(poly_power(&f, 0).is_err());
}
