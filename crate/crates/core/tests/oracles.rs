mod common;

use std::collections::BTreeMap;

use hypergroup_core::catalog::{
    build_chebyshev, build_conjugacy, build_product, build_su2_dual, build_su3_dual, su2_dimension,
    su2_tensor_decompose, su3_dimension, su3_tensor_decompose,
};
use hypergroup_core::{Element, Measure, Payload, Rational};

use common::{load_group, su3_strip_oracle, su3_weights, GROUP_FILES};

#[test]
fn su3_weight_multisets_have_weyl_dimension() {
    for p in 0..=8 {
        for q in 0..=8 {
            let total: i64 = su3_weights(p, q).values().sum();
            assert_eq!(total as u64, su3_dimension(p, q), "({p},{q})");
        }
    }
}

#[test]
fn su3_decomposition_matches_stripping_oracle() {
    for p in 0..=6 {
        for q in 0..=6 {
            for r in 0..=6 {
                for s in 0..=6 {
                    let got = su3_tensor_decompose((p, q), (r, s));
                    let want = su3_strip_oracle((p, q), (r, s));
                    assert_eq!(got, want, "({p},{q}) ⊗ ({r},{s})");
                }
            }
        }
    }
}

#[test]
fn su3_dimension_sum_rule() {
    for p in 0..=20 {
        for q in 0..=20 {
            for r in 0..=20 {
                for s in 0..=20 {
                    let sum: u64 = su3_tensor_decompose((p, q), (r, s))
                        .iter()
                        .map(|(&(a, b), &m)| m as u64 * su3_dimension(a, b))
                        .sum();
                    assert_eq!(sum, su3_dimension(p, q) * su3_dimension(r, s), "({p},{q}) ⊗ ({r},{s})");
                }
            }
        }
    }
}

#[test]
fn su2_decomposition_matches_weights() {
    for m in 0..=25u32 {
        for n in 0..=25u32 {
            let mut pool: BTreeMap<i64, i64> = BTreeMap::new();
            for a in 0..=m as i64 {
                for b in 0..=n as i64 {
                    *pool.entry(m as i64 - 2 * a + n as i64 - 2 * b).or_default() += 1;
                }
            }
            let mut stripped = Vec::new();
            while let Some((&top, _)) = pool.iter().rev().find(|(_, c)| **c != 0) {
                stripped.push((top as u32, 1));
                for w in (-top..=top).step_by(2) {
                    *pool.get_mut(&w).unwrap() -= 1;
                }
            }
            stripped.sort();
            let mut got = su2_tensor_decompose(m, n);
            got.sort();
            assert_eq!(got, stripped);
        }
    }
}

#[test]
fn haar_matches_closed_forms() {
    let su2 = build_su2_dual();
    for n in 0..=50u32 {
        let x = su2.element(Payload::Nat(n)).unwrap();
        let d = su2_dimension(n) as i64;
        assert_eq!(su2.haar_weight(&x).unwrap(), Rational::from_integer(d * d));
    }
    let su3 = build_su3_dual();
    for x in su3.box_truncation(10) {
        let w = x.as_tuple().unwrap();
        if w[0] + w[1] > 10 {
            continue;
        }
        let d = su3_dimension(w[0], w[1]) as i64;
        assert_eq!(su3.haar_weight(&x).unwrap(), Rational::from_integer(d * d), "{x}");
    }
    for file in GROUP_FILES {
        let group = load_group(file);
        let hg = build_conjugacy(&group);
        let mut total = Rational::zero();
        for x in hg.box_truncation(0) {
            let h = hg.haar_weight(&x).unwrap();
            assert_eq!(Some(h.clone()), hg.rule().haar_closed_form(&x));
            total += h;
        }
        assert_eq!(total, Rational::from_integer(group.order() as i64), "{file}");
    }
    for d in 1..=3 {
        let hg = build_chebyshev(d).unwrap();
        for x in hg.box_truncation(6) {
            let nonzero = x.as_tuple().unwrap().iter().filter(|&&c| c > 0).count();
            assert_eq!(hg.haar_weight(&x).unwrap(), Rational::from_integer(1 << nonzero), "{x}");
        }
    }
}

#[test]
fn chebyshev_product_equals_chebyshev_two() {
    let one = build_chebyshev(1).unwrap();
    let two = build_chebyshev(2).unwrap();
    let prod = build_product(vec![one.clone(), one.clone()]).unwrap();
    let to_two = |x: &Element| {
        let parts = x.as_pair().unwrap();
        let coords: Vec<u32> = parts.iter().map(|p| p.as_tuple().unwrap()[0]).collect();
        two.element(Payload::Tuple(coords.into_iter().collect())).unwrap()
    };
    let box5 = prod.box_truncation(5);
    assert_eq!(box5.len(), 36);
    for x in &box5 {
        for y in &box5 {
            let lhs: Measure = prod.convolve_points(x, y).unwrap().map_points(to_two);
            let rhs = two.convolve_points(&to_two(x), &to_two(y)).unwrap();
            assert_eq!(lhs, *rhs, "{x} * {y}");
        }
        assert_eq!(prod.haar_weight(x).unwrap(), two.haar_weight(&to_two(x)).unwrap());
    }
}

#[test]
fn quaternion_group_classes() {
    let group = load_group("q8.json");
    assert_eq!(group.order(), 8);
    let hg = build_conjugacy(&group);
    let sizes: Vec<Rational> = hg.box_truncation(0).iter().map(|x| hg.haar_weight(x).unwrap()).collect();
    assert_eq!(sizes.len(), 5);
    assert_eq!(sizes.iter().filter(|s| **s == Rational::one()).count(), 2);
    let d4 = build_conjugacy(&load_group("d4.json"));
    assert_eq!(d4.box_truncation(0).len(), 5);
}
