//! Conjugacy-class hypergroup `G^#` of a finite group.
//!
//! `δ_C * δ_D = Σ_E #{(c,d) ∈ C×D : cd ∈ E} / (|C||D|) δ_E`, involution
//! `C ↦ C⁻¹`, identity `{e}`, Haar weight `|C|`.

use std::collections::{BTreeMap, VecDeque};

use sha2::{Digest, Sha256};

use crate::catalog::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::hypercore::{Element, FusionRule, Hypergroup, HypergroupId, Measure, Payload};
use crate::rational::Rational;

#[derive(Debug)]
pub struct ConjugacyHypergroup {
    descriptor: String,
    id: HypergroupId,
    group_name: String,
    /// Classes as sorted element lists, ordered by their minimal element.
    classes: Vec<Vec<usize>>,
    inverse_class: Vec<u32>,
    /// `products[c][d]` lists `(class, count)` with counts summing to `|C||D|`.
    products: Vec<Vec<Vec<(u32, u64)>>>,
}

impl ConjugacyHypergroup {
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let gens: Vec<(usize, usize)> = group.generators().iter().map(|&s| (s, group.inverse(s))).collect();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(s, s_inv) in &gens {
                    let y = group.multiply(group.multiply(s, x), s_inv);
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }

        let inverse_class = classes.iter().map(|c| class_of[group.inverse(c[0])]).collect();
        let k = classes.len();
        let mut products = vec![vec![Vec::new(); k]; k];
        for c in 0..k {
            for d in c..k {
                let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
                for &x in &classes[c] {
                    for &y in &classes[d] {
                        *counts.entry(class_of[group.multiply(x, y)]).or_default() += 1;
                    }
                }
                let row: Vec<(u32, u64)> = counts.into_iter().collect();
                products[d][c] = row.clone();
                products[c][d] = row;
            }
        }

        let mut hasher = Sha256::new();
        for row in group.cayley_table() {
            for v in row {
                hasher.update((v as u64).to_le_bytes());
            }
        }
        let digest = hasher.finalize();
        let tag: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
        let descriptor = format!("conjugacy:{}#{}:{tag}", group.name(), n);
        let id = HypergroupId::from_descriptor(&descriptor);
        ConjugacyHypergroup { descriptor, id, group_name: group.name().to_string(), classes, inverse_class, products }
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_members(&self, class: u32) -> &[usize] {
        &self.classes[class as usize]
    }

    pub fn class(&self, c: u32) -> Element {
        Element::new(self.id, Payload::Class(c))
    }
}

pub fn build_conjugacy(group: &FiniteGroup) -> Hypergroup {
    Hypergroup::new(ConjugacyHypergroup::new(group))
}

impl FusionRule for ConjugacyHypergroup {
    fn descriptor(&self) -> &str {
        &self.descriptor
    }

    fn id(&self) -> HypergroupId {
        self.id
    }

    fn identity(&self) -> Element {
        self.class(0)
    }

    fn contains(&self, x: &Element) -> bool {
        x.as_class().is_some_and(|c| (c as usize) < self.classes.len())
    }

    fn involution(&self, x: &Element) -> Element {
        self.class(self.inverse_class[x.as_class().unwrap() as usize])
    }

    fn convolve(&self, x: &Element, y: &Element) -> Measure {
        let (c, d) = (x.as_class().unwrap() as usize, y.as_class().unwrap() as usize);
        let denom = (self.classes[c].len() * self.classes[d].len()) as i64;
        Measure::from_terms(
            self.products[c][d].iter().map(|&(e, count)| (self.class(e), Rational::new(count as i64, denom))),
        )
    }

    fn haar_closed_form(&self, x: &Element) -> Option<Rational> {
        Some(Rational::from_integer(self.classes[x.as_class()? as usize].len() as i64))
    }

    /// Product data is precomputed, so the hypergroup cache adds nothing.
    fn memoize(&self) -> bool {
        false
    }

    fn default_generator(&self) -> Vec<Element> {
        (1..self.classes.len() as u32).map(|c| self.class(c)).collect()
    }

    fn box_truncation(&self, _radius: u32) -> Vec<Element> {
        (0..self.classes.len() as u32).map(|c| self.class(c)).collect()
    }

    fn parse_element(&self, input: &str) -> Result<Element> {
        let s = input.trim();
        let digits = s.strip_prefix(['C', 'c']).unwrap_or(s);
        let c: u32 = digits
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::ParseElement { input: input.into(), reason: e.to_string() })?;
        if c as usize >= self.classes.len() {
            return Err(Error::ParseElement {
                input: input.into(),
                reason: format!("{} has only {} classes", self.group_name, self.classes.len()),
            });
        }
        Ok(self.class(c))
    }

    fn order(&self) -> Option<usize> {
        Some(self.classes.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::group::{generate_group, GroupSpec, DEFAULT_ORDER_CAP};

    fn s3() -> ConjugacyHypergroup {
        let spec = GroupSpec::from_generators("S3", 3, vec![vec![1, 0, 2], vec![1, 2, 0]]);
        ConjugacyHypergroup::new(&generate_group(&spec, DEFAULT_ORDER_CAP).unwrap())
    }

    /// Brute force over the group elements, independent of the class tables.
    fn brute_force(rule: &ConjugacyHypergroup, group: &FiniteGroup, c: u32, d: u32) -> BTreeMap<u32, Rational> {
        let find = |g: usize| (0..rule.class_count() as u32).find(|&k| rule.class_members(k).contains(&g)).unwrap();
        let (cm, dm) = (rule.class_members(c), rule.class_members(d));
        let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
        let w = Rational::new(1, (cm.len() * dm.len()) as i64);
        for &x in cm {
            for &y in dm {
                *out.entry(find(group.multiply(x, y))).or_insert_with(Rational::zero) += &w;
            }
        }
        out
    }

    #[test]
    fn s3_classes() {
        let rule = s3();
        assert_eq!(rule.class_count(), 3);
        let sizes: Vec<usize> = (0..3).map(|c| rule.class_members(c).len()).collect();
        assert_eq!(sizes[0], 1);
        let transp = (0..3).find(|&c| rule.class_members(c).len() == 3).unwrap();
        let cyc = (0..3).find(|&c| rule.class_members(c).len() == 2).unwrap();
        let hg = Hypergroup::new(rule);
        let t = hg.element(Payload::Class(transp)).unwrap();
        let r = hg.element(Payload::Class(cyc)).unwrap();
        let m = hg.convolve_points(&t, &t).unwrap();
        assert_eq!(m.get(&hg.identity()), Rational::new(1, 3));
        assert_eq!(m.get(&r), Rational::new(2, 3));
        assert_eq!(m.len(), 2);
        assert_eq!(hg.involution(&r).unwrap(), r);
        assert_eq!(hg.haar_weight(&r).unwrap(), Rational::from_integer(2));
        assert_eq!(hg.haar_weight(&t).unwrap(), Rational::from_integer(3));
    }

    #[test]
    fn matches_brute_force_on_s4() {
        let spec = GroupSpec::from_generators("S4", 4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        let group = generate_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        let rule = ConjugacyHypergroup::new(&group);
        assert_eq!(rule.class_count(), 5);
        for c in 0..5 {
            for d in 0..5 {
                let expected = brute_force(&rule, &group, c, d);
                let got = rule.convolve(&rule.class(c), &rule.class(d));
                let got: BTreeMap<u32, Rational> = got.iter().map(|(x, v)| (x.as_class().unwrap(), v.clone())).collect();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn abelian_group_is_the_group() {
        let spec = GroupSpec::from_generators("Z5", 5, vec![vec![1, 2, 3, 4, 0]]);
        let group = generate_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        let rule = ConjugacyHypergroup::new(&group);
        assert_eq!(rule.class_count(), 5);
        for c in 0..5u32 {
            for d in 0..5u32 {
                let m = rule.convolve(&rule.class(c), &rule.class(d));
                assert_eq!(m.len(), 1);
                let (z, w) = m.iter().next().unwrap();
                assert_eq!(*w, Rational::one());
                let g = group.multiply(rule.class_members(c)[0], rule.class_members(d)[0]);
                assert_eq!(rule.class_members(z.as_class().unwrap()), &[g]);
            }
        }
    }
}
