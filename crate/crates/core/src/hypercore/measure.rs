use std::collections::btree_map::{self, Entry};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::hypercore::Element;
use crate::rational::Rational;

fn accumulate(map: &mut BTreeMap<Element, Rational>, x: Element, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(x) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

macro_rules! sparse_map_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new() -> Self {
                $ty { entries: BTreeMap::new() }
            }

            /// Builds from possibly repeated `(element, value)` pairs; repeated
            /// elements are summed and zeros pruned.
            pub fn from_terms<I: IntoIterator<Item = (Element, Rational)>>(terms: I) -> Self {
                let mut out = $ty::new();
                for (x, c) in terms {
                    out.add_term(x, &c);
                }
                out
            }

            pub fn add_term(&mut self, x: Element, c: &Rational) {
                accumulate(&mut self.entries, x, c);
            }

            /// Adds `scale * other` in place.
            pub fn add_scaled(&mut self, other: &$ty, scale: &Rational) {
                for (x, c) in other.iter() {
                    accumulate(&mut self.entries, x.clone(), &(c * scale));
                }
            }

            pub fn get(&self, x: &Element) -> Rational {
                self.entries.get(x).cloned().unwrap_or_else(Rational::zero)
            }

            pub fn iter(&self) -> btree_map::Iter<'_, Element, Rational> {
                self.entries.iter()
            }

            pub fn support(&self) -> BTreeSet<Element> {
                self.entries.keys().cloned().collect()
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn scaled(&self, s: &Rational) -> $ty {
                $ty::from_terms(self.iter().map(|(x, c)| (x.clone(), c * s)))
            }

            pub fn sum(&self) -> Rational {
                self.entries.values().sum()
            }
        }

        impl Default for $ty {
            fn default() -> Self {
                $ty::new()
            }
        }

        impl FromIterator<(Element, Rational)> for $ty {
            fn from_iter<I: IntoIterator<Item = (Element, Rational)>>(iter: I) -> Self {
                $ty::from_terms(iter)
            }
        }

        impl<'a> IntoIterator for &'a $ty {
            type Item = (&'a Element, &'a Rational);
            type IntoIter = btree_map::Iter<'a, Element, Rational>;
            fn into_iter(self) -> Self::IntoIter {
                self.entries.iter()
            }
        }

        /// Renders as `x: c, y: d` in canonical element order.
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.entries.is_empty() {
                    return write!(f, "0");
                }
                for (i, (x, c)) in self.entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}: {c}")?;
                }
                Ok(())
            }
        }

        /// Serialized as a list of `(element, value)` pairs.
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_seq(self.entries.iter())
            }
        }
    };
}

/// A finitely supported measure with exact rational weights. Zero weights are
/// never stored, so equality is exact map equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    entries: BTreeMap<Element, Rational>,
}

sparse_map_impl!(Measure);

impl Measure {
    pub fn point(x: Element) -> Self {
        let mut m = Measure::new();
        m.add_term(x, &Rational::one());
        m
    }

    pub fn total_mass(&self) -> Rational {
        self.sum()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.values().all(Rational::is_positive)
    }

    /// Positive weights summing to exactly one.
    pub fn is_probability(&self) -> bool {
        self.is_positive() && self.total_mass() == Rational::one()
    }

    /// Image under a relabelling of points (used for the involution).
    pub fn map_points(&self, mut f: impl FnMut(&Element) -> Element) -> Measure {
        Measure::from_terms(self.iter().map(|(x, c)| (f(x), c.clone())))
    }
}

/// A finitely supported rational-valued function on a hypergroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFunction {
    entries: BTreeMap<Element, Rational>,
}

sparse_map_impl!(FiniteFunction);

impl FiniteFunction {
    pub fn indicator<'a, I: IntoIterator<Item = &'a Element>>(set: I) -> Self {
        let one = Rational::one();
        FiniteFunction::from_terms(set.into_iter().map(|x| (x.clone(), one.clone())))
    }

    pub fn value(&self, x: &Element) -> Rational {
        self.get(x)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| !v.is_negative())
    }

    /// `self - other`, pointwise.
    pub fn difference(&self, other: &FiniteFunction) -> FiniteFunction {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from_integer(-1));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{HypergroupId, Payload};

    fn el(n: u32) -> Element {
        Element::new(HypergroupId(1), Payload::Nat(n))
    }

    #[test]
    fn zero_entries_are_pruned() {
        let m = Measure::from_terms([
            (el(1), Rational::new(1, 2)),
            (el(2), Rational::new(1, 2)),
            (el(1), Rational::new(-1, 2)),
        ]);
        assert_eq!(m.len(), 1);
        assert_eq!(m, Measure::from_terms([(el(2), Rational::new(1, 2))]));
        assert_eq!(m.to_string(), "2: 1/2");
    }

    #[test]
    fn probability_check() {
        let m = Measure::from_terms([(el(0), Rational::new(1, 4)), (el(2), Rational::new(3, 4))]);
        assert!(m.is_probability());
        let bad = Measure::from_terms([(el(0), Rational::new(1, 4)), (el(2), Rational::new(1, 4))]);
        assert!(!bad.is_probability());
    }

    #[test]
    fn indicator_and_difference() {
        let set: BTreeSet<_> = [el(0), el(3)].into_iter().collect();
        let f = FiniteFunction::indicator(&set);
        let g = FiniteFunction::indicator([&el(3)]);
        let d = f.difference(&g);
        assert_eq!(d.support(), [el(0)].into_iter().collect());
        assert!(FiniteFunction::new().difference(&f).iter().all(|(_, v)| v.is_negative()));
    }
}
