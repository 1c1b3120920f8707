//! Exact polynomial arithmetic and Sturm counting on constructed roots.

use fvs_spectra::exactpoly::{count_roots_in_interval, h_poly_exact, parse_rational, Rational, RationalPoly, SturmChain};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn poly() -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(-20i64..=20, 1..8).prop_map(|c| RationalPoly::from_i64(&c))
}

proptest! {
    #[test]
    fn division_identity(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q * b.clone() + r.clone(), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn product_evaluates_pointwise(a in poly(), b in poly(), p in -9i64..=9, q in 1i64..=9) {
        let x = rat(p, q);
        prop_assert_eq!((a.clone() * b.clone()).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn counts_distinct_constructed_roots(
        roots in prop::collection::vec((-12i64..=12, 1i64..=6), 0..6),
        lead in prop::sample::select(vec![-3i64, -1, 1, 2, 7]),
    ) {
        let roots: Vec<Rational> = roots.into_iter().map(|(p, q)| rat(p, q)).collect();
        let p = RationalPoly::from_roots(&roots).scale(&rat(lead, 1));
        let (lo, hi) = (rat(-1, 1), rat(1, 1));
        let mut inside: Vec<&Rational> = roots.iter().filter(|r| **r > lo && **r < hi).collect();
        inside.sort();
        inside.dedup();
        let rc = count_roots_in_interval(&p, &lo, &hi).unwrap();
        prop_assert_eq!(rc.count, inside.len(), "roots {:?}", roots);
    }

    #[test]
    fn integer_scaling_preserves_the_count(a in poly(), k in 1i64..50) {
        prop_assume!(a.degree().unwrap_or(0) > 0);
        let (lo, hi) = (rat(-1, 1), rat(1, 1));
        let base = count_roots_in_interval(&a, &lo, &hi).unwrap().count;
        let scaled = count_roots_in_interval(&a.scale(&rat(-k, 1)), &lo, &hi).unwrap().count;
        prop_assert_eq!(base, scaled);
    }
}

#[test]
fn repeated_roots_count_once_and_chain_reports_it() {
    let half = rat(1, 2);
    let p = RationalPoly::from_roots(&[half.clone(), half.clone(), rat(-1, 3)]);
    let chain = SturmChain::new(&p).unwrap();
    assert!(!chain.is_squarefree());
    assert_eq!(count_roots_in_interval(&p, &rat(-1, 1), &rat(1, 1)).unwrap().count, 2);
}

#[test]
fn endpoint_roots_are_excluded() {
    let p = RationalPoly::from_roots(&[rat(-1, 1), rat(1, 1), rat(0, 1)]);
    let rc = count_roots_in_interval(&p, &rat(-1, 1), &rat(1, 1)).unwrap();
    assert!(rc.lo_perturbed && rc.hi_perturbed);
    assert_eq!(rc.count, 1);
}

#[test]
fn bad_inputs_are_errors() {
    assert!(count_roots_in_interval(&RationalPoly::zero(), &rat(-1, 1), &rat(1, 1)).is_err());
    assert!(count_roots_in_interval(&RationalPoly::x(), &rat(1, 1), &rat(-1, 1)).is_err());
    assert!(RationalPoly::x().divmod(&RationalPoly::zero()).is_err());
    for bad in ["", "1/0", "a/2", "1/2/3", "1e400x"] {
        assert!(parse_rational(bad).is_err(), "{bad:?}");
    }
    assert_eq!(parse_rational("-7/5").unwrap(), rat(-7, 5));
    assert_eq!(parse_rational("1.4").unwrap(), rat(7, 5));
}

#[test]
fn h_has_degree_six_and_is_positive_between_samples() {
    for g in ["11/10", "7/5", "2", "29/10"] {
        let h = h_poly_exact(&parse_rational(g).unwrap());
        assert_eq!(h.degree(), Some(6), "gamma={g}");
        for k in -20..=20 {
            assert!(h.eval(&rat(k, 20)) > rat(0, 1), "gamma={g} M={k}/20");
        }
    }
}
