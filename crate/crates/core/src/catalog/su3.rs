//! Dual of SU(3): irreps indexed by highest weights `(p, q) ∈ ℕ₀²`.
//!
//! Tensor products are decomposed with the Littlewood–Richardson rule on
//! two-row Young diagrams: `(p, q)` corresponds to the partition
//! `(p + q, q)`, and columns of height three are stripped from the result.

use std::collections::BTreeMap;

use smallvec::smallvec;

use crate::catalog::dual_measure;
use crate::error::{Error, Result};
use crate::hypercore::{parse_tuple, Element, FusionRule, Hypergroup, HypergroupId, Measure, Payload};
use crate::rational::Rational;

const DESCRIPTOR: &str = "su3dual";

/// Highest weight `(p, q)` of an SU(3) irrep.
pub type Weight = (u32, u32);

/// Weyl dimension `(p+1)(q+1)(p+q+2)/2`.
pub fn su3_dimension(p: u32, q: u32) -> u64 {
    let (p, q) = (p as u64, q as u64);
    (p + 1) * (q + 1) * (p + q + 2) / 2
}

/// Decomposes `(p1,q1) ⊗ (p2,q2)` into irreps with multiplicities.
///
/// Boxes of the second diagram are added as a horizontal strip of `a`s
/// (first row, `p2 + q2` boxes) followed by a horizontal strip of `b`s
/// (second row, `q2` boxes). The `b`s may not enter the first row, and the
/// reverse reading word must stay a lattice word.
pub fn su3_tensor_decompose(lhs: Weight, rhs: Weight) -> BTreeMap<Weight, u32> {
    let (l1, l2) = (lhs.0 + lhs.1, lhs.1);
    let (m1, m2) = (rhs.0 + rhs.1, rhs.1);
    let mut out = BTreeMap::new();
    for a3 in 0..=l2.min(m1) {
        for a2 in 0..=(l1 - l2).min(m1 - a3) {
            let a1 = m1 - a2 - a3;
            let alpha = (l1 + a1, l2 + a2, a3);
            for b2 in 0..=a1.min(m2) {
                let b3 = m2 - b2;
                if b2 + b3 > a1 + a2 {
                    continue;
                }
                let nu = (alpha.0, alpha.1 + b2, alpha.2 + b3);
                if nu.1 > alpha.0 || nu.2 > alpha.1 {
                    continue;
                }
                *out.entry((nu.0 - nu.1, nu.1 - nu.2)).or_insert(0) += 1;
            }
        }
    }
    out
}

#[derive(Debug)]
pub struct Su3Dual {
    id: HypergroupId,
}

impl Su3Dual {
    pub fn new() -> Self {
        Su3Dual { id: HypergroupId::from_descriptor(DESCRIPTOR) }
    }

    pub fn weight(&self, p: u32, q: u32) -> Element {
        Element::new(self.id, Payload::Tuple(smallvec![p, q]))
    }
}

impl Default for Su3Dual {
    fn default() -> Self {
        Self::new()
    }
}

pub fn build_su3_dual() -> Hypergroup {
    Hypergroup::new(Su3Dual::new())
}

fn as_weight(x: &Element) -> Weight {
    let t = x.as_tuple().expect("SU(3) element");
    (t[0], t[1])
}

impl FusionRule for Su3Dual {
    fn descriptor(&self) -> &str {
        DESCRIPTOR
    }

    fn id(&self) -> HypergroupId {
        self.id
    }

    fn identity(&self) -> Element {
        self.weight(0, 0)
    }

    fn contains(&self, x: &Element) -> bool {
        x.as_tuple().is_some_and(|t| t.len() == 2)
    }

    /// The conjugate representation swaps the highest-weight coordinates.
    fn involution(&self, x: &Element) -> Element {
        let (p, q) = as_weight(x);
        self.weight(q, p)
    }

    fn convolve(&self, x: &Element, y: &Element) -> Measure {
        let (a, b) = (as_weight(x), as_weight(y));
        dual_measure(
            su3_tensor_decompose(a, b)
                .into_iter()
                .map(|((p, q), m)| (self.weight(p, q), m as u64, su3_dimension(p, q))),
            su3_dimension(a.0, a.1),
            su3_dimension(b.0, b.1),
        )
    }

    fn haar_closed_form(&self, x: &Element) -> Option<Rational> {
        let (p, q) = as_weight(x);
        let d = su3_dimension(p, q);
        Some(Rational::from_u64(d * d))
    }

    fn default_generator(&self) -> Vec<Element> {
        vec![self.weight(0, 1), self.weight(1, 0)]
    }

    fn box_truncation(&self, radius: u32) -> Vec<Element> {
        (0..=radius).flat_map(|p| (0..=radius).map(move |q| (p, q))).map(|(p, q)| self.weight(p, q)).collect()
    }

    fn parse_element(&self, input: &str) -> Result<Element> {
        let err = |reason: String| Error::ParseElement { input: input.into(), reason };
        match parse_tuple(input).map_err(err)?.as_slice() {
            &[p, q] => Ok(self.weight(p, q)),
            other => Err(err(format!("expected a highest weight (p,q), got {} coordinates", other.len()))),
        }
    }
}
