//! Dual of SU(2): irreps indexed by `n ∈ ℕ₀` with `d_n = n + 1`.

use crate::catalog::dual_measure;
use crate::error::{Error, Result};
use crate::hypercore::{Element, FusionRule, Hypergroup, HypergroupId, Measure, Payload};
use crate::rational::Rational;

const DESCRIPTOR: &str = "su2dual";

pub fn su2_dimension(n: u32) -> u64 {
    n as u64 + 1
}

/// Clebsch–Gordan series: `π_m ⊗ π_n = ⊕_{k=|m-n|, step 2}^{m+n} π_k`.
pub fn su2_tensor_decompose(m: u32, n: u32) -> Vec<(u32, u32)> {
    (m.abs_diff(n)..=m + n).step_by(2).map(|k| (k, 1)).collect()
}

#[derive(Debug)]
pub struct Su2Dual {
    id: HypergroupId,
}

impl Su2Dual {
    pub fn new() -> Self {
        Su2Dual { id: HypergroupId::from_descriptor(DESCRIPTOR) }
    }

    fn nat(&self, n: u32) -> Element {
        Element::new(self.id, Payload::Nat(n))
    }
}

impl Default for Su2Dual {
    fn default() -> Self {
        Self::new()
    }
}

pub fn build_su2_dual() -> Hypergroup {
    Hypergroup::new(Su2Dual::new())
}

impl FusionRule for Su2Dual {
    fn descriptor(&self) -> &str {
        DESCRIPTOR
    }

    fn id(&self) -> HypergroupId {
        self.id
    }

    fn identity(&self) -> Element {
        self.nat(0)
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x.payload, Payload::Nat(_))
    }

    fn involution(&self, x: &Element) -> Element {
        x.clone()
    }

    fn convolve(&self, x: &Element, y: &Element) -> Measure {
        let (m, n) = (x.as_nat().unwrap(), y.as_nat().unwrap());
        dual_measure(
            su2_tensor_decompose(m, n).into_iter().map(|(k, mult)| (self.nat(k), mult as u64, su2_dimension(k))),
            su2_dimension(m),
            su2_dimension(n),
        )
    }

    fn haar_closed_form(&self, x: &Element) -> Option<Rational> {
        let d = su2_dimension(x.as_nat()?);
        Some(Rational::from_u64(d * d))
    }

    fn default_generator(&self) -> Vec<Element> {
        vec![self.nat(1)]
    }

    fn box_truncation(&self, radius: u32) -> Vec<Element> {
        (0..=radius).map(|n| self.nat(n)).collect()
    }

    fn parse_element(&self, input: &str) -> Result<Element> {
        input
            .trim()
            .parse::<u32>()
            .map(|n| self.nat(n))
            .map_err(|e| Error::ParseElement { input: input.into(), reason: e.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Weight-multiset oracle: weights of `π_n` are `-n, -n+2, …, n`; strip
    /// highest weights from the Minkowski sum.
    fn oracle(m: u32, n: u32) -> Vec<(u32, u32)> {
        let mut weights = std::collections::BTreeMap::<i64, i64>::new();
        for a in (-(m as i64)..=m as i64).step_by(2) {
            for b in (-(n as i64)..=n as i64).step_by(2) {
                *weights.entry(a + b).or_default() += 1;
            }
        }
        let mut out = Vec::new();
        while let Some((&top, _)) = weights.iter().rev().find(|(_, &c)| c > 0) {
            for w in (-top..=top).step_by(2) {
                *weights.get_mut(&w).unwrap() -= 1;
            }
            out.push((top as u32, 1));
        }
        out.sort();
        out
    }

    #[test]
    fn clebsch_gordan_matches_oracle() {
        for m in 0..12 {
            for n in 0..12 {
                assert_eq!(su2_tensor_decompose(m, n), oracle(m, n), "{m} ⊗ {n}");
            }
        }
    }

    #[test]
    fn mass_identity_up_to_200() {
        for m in 0..=200u32 {
            for n in 0..=200u32 {
                let total: u64 = su2_tensor_decompose(m, n).iter().map(|&(k, _)| k as u64 + 1).sum();
                assert_eq!(total, (m as u64 + 1) * (n as u64 + 1));
            }
        }
    }

    #[test]
    fn point_convolutions() {
        let hg = build_su2_dual();
        let e = |n| hg.element(Payload::Nat(n)).unwrap();
        let m = hg.convolve_points(&e(1), &e(1)).unwrap();
        assert_eq!(m.to_string(), "0: 1/4, 2: 3/4");
        let m = hg.convolve_points(&e(1), &e(2)).unwrap();
        assert_eq!(m.to_string(), "1: 1/3, 3: 2/3");
        let m = hg.convolve_points(&e(0), &e(5)).unwrap();
        assert_eq!(*m, Measure::point(e(5)));
        assert_eq!(hg.haar_weight(&e(3)).unwrap(), Rational::from_integer(16));
        assert_eq!(hg.haar_weight(&e(2)).unwrap(), Rational::from_integer(9));
    }

    #[test]
    fn parse_errors() {
        let hg = build_su2_dual();
        assert!(hg.parse_element("x").is_err());
        assert_eq!(hg.parse_element(" 7 ").unwrap().as_nat(), Some(7));
    }
}
