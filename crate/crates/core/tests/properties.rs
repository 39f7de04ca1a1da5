mod common;

use std::sync::OnceLock;

use hypergroup_core::amenability::{
    bai_certificate, check_f_implies_sf, check_sf_implies_l, folner_ratio, folner_to_reiter, leptin_ratio,
    reiter_deficiency, strong_folner_ratio, ReiterExponent,
};
use hypergroup_core::growth::Balls;
use hypergroup_core::{Element, FiniteFunction, Measure, Rational};
use proptest::prelude::*;
use proptest::sample::Index;

use common::{catalog_samples, Sample};

fn samples() -> &'static [Sample] {
    static CELL: OnceLock<Vec<Sample>> = OnceLock::new();
    CELL.get_or_init(catalog_samples)
}

fn pick(pool: &[Element], idx: &[Index]) -> Vec<Element> {
    let mut v: Vec<Element> = idx.iter().map(|i| i.get(pool).clone()).collect();
    v.sort();
    v.dedup();
    v
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 96, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn point_convolutions_are_commutative_probabilities(h in 0..10usize, a: Index, b: Index) {
        let s = &samples()[h];
        let (x, y) = (a.get(&s.pool), b.get(&s.pool));
        let xy = s.hg.convolve_points(x, y).unwrap();
        prop_assert!(xy.is_probability());
        prop_assert_eq!(&*xy, &*s.hg.convolve_points(y, x).unwrap());
        let has_e = xy.get(&s.hg.identity()).is_positive();
        prop_assert_eq!(has_e, *y == s.hg.involution(x).unwrap());
    }

    #[test]
    fn measure_convolution_multiplies_mass(h in 0..10usize, idx in prop::collection::vec((any::<Index>(), rational()), 1..4),
                                           jdx in prop::collection::vec((any::<Index>(), rational()), 1..4)) {
        let s = &samples()[h];
        let mu = Measure::from_terms(idx.iter().map(|(i, c)| (i.get(&s.pool).clone(), c.clone())));
        let nu = Measure::from_terms(jdx.iter().map(|(i, c)| (i.get(&s.pool).clone(), c.clone())));
        let out = s.hg.convolve_measures(&mu, &nu).unwrap();
        prop_assert_eq!(out.total_mass(), &mu.total_mass() * &nu.total_mass());
    }

    #[test]
    fn haar_measure_is_translation_invariant(h in 0..10usize, a: Index, terms in prop::collection::vec((any::<Index>(), rational()), 1..5)) {
        let s = &samples()[h];
        let x = a.get(&s.pool);
        let f = FiniteFunction::from_terms(terms.iter().map(|(i, c)| (i.get(&s.pool).clone(), c.clone())));
        let translated = s.hg.translate(x, &f).unwrap();
        prop_assert_eq!(s.hg.integrate(&translated).unwrap(), s.hg.integrate(&f).unwrap());
    }

    #[test]
    fn ratio_inequalities(h in 0..10usize, k in prop::collection::vec(any::<Index>(), 1..4),
                          v in prop::collection::vec(any::<Index>(), 1..6)) {
        let s = &samples()[h];
        let (k, v) = (pick(&s.pool, &k), pick(&s.pool, &v));
        let c = check_sf_implies_l(&s.hg, &k, &v).unwrap();
        prop_assert!(c.holds, "{} - 1 > {}", c.leptin_minus_one, c.strong_folner);
        let (strong, total, holds) = check_f_implies_sf(&s.hg, &k, &v).unwrap();
        prop_assert!(holds, "{} > {}", strong, total);
        prop_assert!(!strong_folner_ratio(&s.hg, &k, &v).unwrap().value.is_negative());
        let mut with_e = k.clone();
        with_e.push(s.hg.identity());
        prop_assert!(leptin_ratio(&s.hg, &with_e, &v).unwrap().value >= Rational::one());
    }

    #[test]
    fn certificates_hold(h in 0..10usize, k in prop::collection::vec(any::<Index>(), 1..3),
                         v in prop::collection::vec(any::<Index>(), 1..4)) {
        let s = &samples()[h];
        let (k, v) = (pick(&s.pool, &k), pick(&s.pool, &v));
        let cert = bai_certificate(&s.hg, &k, &v).unwrap();
        prop_assert!(cert.u.is_nonnegative());
        for x in &k {
            prop_assert_eq!(cert.u.get(x), Rational::one());
        }
        let kv = s.hg.support_product(&k, &v).unwrap();
        prop_assert_eq!(cert.bound_sq, &s.hg.haar_mass(&kv).unwrap() / &s.hg.haar_mass(&v).unwrap());
    }

    #[test]
    fn indicator_convolution_at_identity_is_haar_mass(h in 0..10usize, v in prop::collection::vec(any::<Index>(), 1..6)) {
        let s = &samples()[h];
        let v = pick(&s.pool, &v);
        let one_v = FiniteFunction::indicator(&v);
        let conv = s.hg.convolve_functions(&one_v, &s.hg.tilde_function(&one_v).unwrap()).unwrap();
        prop_assert_eq!(conv.get(&s.hg.identity()), s.hg.haar_mass(&v).unwrap());
    }

    #[test]
    fn reiter_l1_bounded_by_folner(h in 0..10usize, e in prop::collection::vec(any::<Index>(), 1..3),
                                   v in prop::collection::vec(any::<Index>(), 1..6)) {
        let s = &samples()[h];
        let v = pick(&s.pool, &v);
        let mut e = pick(&s.pool, &e);
        let checks: Vec<Element> = e.iter().map(|x| s.hg.involution(x).unwrap()).collect();
        e.extend(checks);
        let f = folner_to_reiter(&s.hg, &v, ReiterExponent::One).unwrap();
        let report = reiter_deficiency(&s.hg, &f, &e, ReiterExponent::One).unwrap();
        let worst = e.iter().map(|x| folner_ratio(&s.hg, x, &v).unwrap().value).max().unwrap();
        let bound = &Rational::from_integer(2) * &worst;
        prop_assert!(report.deficiency_sq <= &bound * &bound, "{} > ({})²", report.deficiency_sq, bound);

        let r2 = folner_to_reiter(&s.hg, &v, ReiterExponent::Two).unwrap();
        let at_e = reiter_deficiency(&s.hg, &r2, &[s.hg.identity()], ReiterExponent::Two).unwrap();
        prop_assert!(at_e.deficiency_sq.is_zero());
    }

    #[test]
    fn balls_are_nested(h in 0..10usize, n in 1usize..5) {
        let s = &samples()[h];
        let mut balls = Balls::new(&s.hg, &s.hg.default_generator()).unwrap();
        let small = balls.ball_set(n).unwrap();
        let big = balls.ball_set(n + 1).unwrap();
        prop_assert!(small.is_subset(&big));
        if s.hg.rule().order().is_none() {
            prop_assert!(s.hg.haar_mass(&small).unwrap() < s.hg.haar_mass(&big).unwrap());
        }
    }
}
