//! Finite products of hypergroups with componentwise structure.

use crate::error::{Error, Result};
use crate::hypercore::{Element, FusionRule, Hypergroup, HypergroupId, Measure, Payload};
use crate::rational::Rational;

#[derive(Debug)]
pub struct ProductHypergroup {
    factors: Vec<Hypergroup>,
    descriptor: String,
    id: HypergroupId,
}

impl ProductHypergroup {
    pub fn new(factors: Vec<Hypergroup>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::Parameter("a product needs at least two factors".into()));
        }
        let parts: Vec<&str> = factors.iter().map(Hypergroup::descriptor).collect();
        let descriptor = format!("product:[{}]", parts.join(","));
        let id = HypergroupId::from_descriptor(&descriptor);
        Ok(ProductHypergroup { factors, descriptor, id })
    }

    pub fn factors(&self) -> &[Hypergroup] {
        &self.factors
    }

    pub fn tuple(&self, parts: Vec<Element>) -> Element {
        Element::new(self.id, Payload::Pair(parts.into_boxed_slice()))
    }
}

pub fn build_product(factors: Vec<Hypergroup>) -> Result<Hypergroup> {
    Ok(Hypergroup::new(ProductHypergroup::new(factors)?))
}

/// Splits at `sep` outside of `()` and `[]`.
pub fn split_top_level(input: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in input.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&input[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&input[start..]);
    out
}

impl FusionRule for ProductHypergroup {
    fn descriptor(&self) -> &str {
        &self.descriptor
    }

    fn id(&self) -> HypergroupId {
        self.id
    }

    fn identity(&self) -> Element {
        self.tuple(self.factors.iter().map(Hypergroup::identity).collect())
    }

    fn contains(&self, x: &Element) -> bool {
        x.as_pair().is_some_and(|parts| {
            parts.len() == self.factors.len() && parts.iter().zip(&self.factors).all(|(p, f)| f.check(p).is_ok())
        })
    }

    fn involution(&self, x: &Element) -> Element {
        let parts = x.as_pair().unwrap();
        self.tuple(parts.iter().zip(&self.factors).map(|(p, f)| f.involution(p).unwrap()).collect())
    }

    /// Tensor product of the factor point measures.
    fn convolve(&self, x: &Element, y: &Element) -> Measure {
        let (xs, ys) = (x.as_pair().unwrap(), y.as_pair().unwrap());
        let mut partial: Vec<(Vec<Element>, Rational)> = vec![(Vec::new(), Rational::one())];
        for ((a, b), f) in xs.iter().zip(ys).zip(&self.factors) {
            let m = f.convolve_points(a, b).unwrap();
            let mut next = Vec::with_capacity(partial.len() * m.len());
            for (prefix, w) in &partial {
                for (z, c) in m.iter() {
                    let mut p = prefix.clone();
                    p.push(z.clone());
                    next.push((p, w * c));
                }
            }
            partial = next;
        }
        Measure::from_terms(partial.into_iter().map(|(p, w)| (self.tuple(p), w)))
    }

    fn haar_closed_form(&self, x: &Element) -> Option<Rational> {
        let parts = x.as_pair()?;
        let mut acc = Rational::one();
        for (p, f) in parts.iter().zip(&self.factors) {
            acc *= &f.rule().haar_closed_form(p)?;
        }
        Some(acc)
    }

    /// Factor caches already memoize the components.
    fn memoize(&self) -> bool {
        false
    }

    fn is_commutative(&self) -> bool {
        self.factors.iter().all(|f| f.rule().is_commutative())
    }

    /// Each factor's generator embedded with identities elsewhere.
    fn default_generator(&self) -> Vec<Element> {
        let ids: Vec<Element> = self.factors.iter().map(Hypergroup::identity).collect();
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            for g in f.default_generator() {
                let mut parts = ids.clone();
                parts[i] = g;
                out.push(self.tuple(parts));
            }
        }
        out
    }

    fn box_truncation(&self, radius: u32) -> Vec<Element> {
        let mut acc: Vec<Vec<Element>> = vec![Vec::new()];
        for f in &self.factors {
            let side = f.box_truncation(radius);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    side.iter().map(move |z| {
                        let mut p = prefix.clone();
                        p.push(z.clone());
                        p
                    })
                })
                .collect();
        }
        acc.into_iter().map(|p| self.tuple(p)).collect()
    }

    /// Syntax: `[a;b;…]` with one entry per factor.
    fn parse_element(&self, input: &str) -> Result<Element> {
        let s = input.trim();
        let inner = s.strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| Error::ParseElement {
            input: input.into(),
            reason: "product elements are written [a;b;…]".into(),
        })?;
        let pieces = split_top_level(inner, ';');
        if pieces.len() != self.factors.len() {
            return Err(Error::ParseElement {
                input: input.into(),
                reason: format!("expected {} components, got {}", self.factors.len(), pieces.len()),
            });
        }
        let parts = pieces.iter().zip(&self.factors).map(|(p, f)| f.parse_element(p)).collect::<Result<Vec<_>>>()?;
        Ok(self.tuple(parts))
    }

    fn order(&self) -> Option<usize> {
        self.factors.iter().map(|f| f.rule().order()).product()
    }
}
