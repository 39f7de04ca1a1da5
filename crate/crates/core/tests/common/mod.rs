#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use hypergroup_core::catalog::{
    build_chebyshev, build_conjugacy, build_product, build_su2_dual, build_su3_dual, generate_group,
    load_group_spec, FiniteGroup, DEFAULT_ORDER_CAP,
};
use hypergroup_core::{Element, Hypergroup};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn groups_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/groups")
}

pub fn load_group(file: &str) -> FiniteGroup {
    let spec = load_group_spec(&groups_dir().join(file)).unwrap();
    generate_group(&spec, DEFAULT_ORDER_CAP).unwrap()
}

pub const GROUP_FILES: [&str; 4] = ["s3.json", "s4.json", "d4.json", "q8.json"];

/// Weights of the SU(3) irrep `(p, q)` as contents `(w1, w2, w3)` of
/// Gelfand–Tsetlin patterns with top row `(p+q, q, 0)`.
pub fn su3_weights(p: u32, q: u32) -> HashMap<(i32, i32, i32), i64> {
    let (l1, l2, l3) = ((p + q) as i32, q as i32, 0i32);
    let total = l1 + l2 + l3;
    let mut out = HashMap::new();
    for m1 in l2..=l1 {
        for m2 in l3..=l2 {
            for b in m2..=m1 {
                *out.entry((b, m1 + m2 - b, total - m1 - m2)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Decomposes `(p,q) ⊗ (r,s)` by repeatedly removing the character of the
/// lexicographically largest remaining weight.
pub fn su3_strip_oracle(lhs: (u32, u32), rhs: (u32, u32)) -> BTreeMap<(u32, u32), u32> {
    let a = su3_weights(lhs.0, lhs.1);
    let b = su3_weights(rhs.0, rhs.1);
    let mut pool: HashMap<(i32, i32, i32), i64> = HashMap::new();
    for (wa, ma) in &a {
        for (wb, mb) in &b {
            *pool.entry((wa.0 + wb.0, wa.1 + wb.1, wa.2 + wb.2)).or_insert(0) += ma * mb;
        }
    }
    let mut out = BTreeMap::new();
    loop {
        pool.retain(|_, m| *m != 0);
        let Some(&top) = pool.keys().max() else { break };
        assert!(top.0 >= top.1 && top.1 >= top.2, "non-dominant top weight {top:?}");
        assert!(pool[&top] > 0);
        let (p, q) = ((top.0 - top.1) as u32, (top.1 - top.2) as u32);
        *out.entry((p, q)).or_insert(0) += 1;
        let shift = top.2;
        for (w, m) in su3_weights(p, q) {
            *pool.entry((w.0 + shift, w.1 + shift, w.2 + shift)).or_insert(0) -= m;
        }
    }
    out
}

/// A catalog hypergroup with a finite pool of elements to sample from.
pub struct Sample {
    pub name: String,
    pub hg: Hypergroup,
    pub pool: Vec<Element>,
}

pub fn catalog_samples() -> Vec<Sample> {
    let mut out = Vec::new();
    let su2 = build_su2_dual();
    out.push(Sample { name: "su2dual".into(), pool: su2.box_truncation(8), hg: su2 });
    let su3 = build_su3_dual();
    out.push(Sample { name: "su3dual".into(), pool: su3.box_truncation(3), hg: su3 });
    for d in 1..=3 {
        let cheb = build_chebyshev(d).unwrap();
        let radius = [8, 4, 2][d - 1];
        out.push(Sample { name: format!("chebyshev:{d}"), pool: cheb.box_truncation(radius), hg: cheb });
    }
    for file in GROUP_FILES {
        let hg = build_conjugacy(&load_group(file));
        out.push(Sample { name: format!("conjugacy:{file}"), pool: hg.box_truncation(0), hg });
    }
    let prod = build_product(vec![build_su2_dual(), build_chebyshev(1).unwrap()]).unwrap();
    out.push(Sample { name: "su2dual×chebyshev:1".into(), pool: prod.box_truncation(3), hg: prod });
    out
}

pub fn random_subset(rng: &mut StdRng, pool: &[Element], min: usize, max: usize) -> Vec<Element> {
    let size = rng.gen_range(min..=max.min(pool.len()));
    let mut v: Vec<Element> = pool.choose_multiple(rng, size).cloned().collect();
    v.sort();
    v
}
