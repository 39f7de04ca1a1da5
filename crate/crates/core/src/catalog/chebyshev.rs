//! Multivariable Chebyshev polynomial hypergroup on `ℕ₀^d`:
//! `δ_n * δ_m = 2^{-d} Σ δ_{(|±n₁±m₁|, …, |±n_d±m_d|)}`.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::hypercore::{parse_tuple, Element, FusionRule, Hypergroup, HypergroupId, Measure, Payload};
use crate::rational::Rational;

#[derive(Debug)]
pub struct Chebyshev {
    dim: usize,
    descriptor: String,
    id: HypergroupId,
}

impl Chebyshev {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("Chebyshev hypergroup needs d ≥ 1 variables".into()));
        }
        let descriptor = format!("chebyshev:{dim}");
        let id = HypergroupId::from_descriptor(&descriptor);
        Ok(Chebyshev { dim, descriptor, id })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, coords: &[u32]) -> Element {
        debug_assert_eq!(coords.len(), self.dim);
        Element::new(self.id, Payload::Tuple(SmallVec::from_slice(coords)))
    }
}

pub fn build_chebyshev(dim: usize) -> Result<Hypergroup> {
    Ok(Hypergroup::new(Chebyshev::new(dim)?))
}

impl FusionRule for Chebyshev {
    fn descriptor(&self) -> &str {
        &self.descriptor
    }

    fn id(&self) -> HypergroupId {
        self.id
    }

    fn identity(&self) -> Element {
        self.index(&vec![0; self.dim])
    }

    fn contains(&self, x: &Element) -> bool {
        x.as_tuple().is_some_and(|t| t.len() == self.dim)
    }

    fn involution(&self, x: &Element) -> Element {
        x.clone()
    }

    /// Each of the `2^d` sign patterns contributes `2^{-d}`; per coordinate the
    /// two patterns land on `n + m` and `|n − m|`, and coinciding targets sum.
    fn convolve(&self, x: &Element, y: &Element) -> Measure {
        let (n, m) = (x.as_tuple().unwrap(), y.as_tuple().unwrap());
        let weight = Rational::new(1, 1i64 << self.dim);
        let mut terms = Vec::with_capacity(1 << self.dim);
        for pattern in 0u32..(1 << self.dim) {
            let coords: SmallVec<[u32; 4]> = (0..self.dim)
                .map(|i| if pattern >> i & 1 == 0 { n[i] + m[i] } else { n[i].abs_diff(m[i]) })
                .collect();
            terms.push((Element::new(self.id, Payload::Tuple(coords)), weight.clone()));
        }
        Measure::from_terms(terms)
    }

    fn haar_closed_form(&self, x: &Element) -> Option<Rational> {
        let nonzero = x.as_tuple()?.iter().filter(|&&c| c != 0).count();
        Some(Rational::from_integer(1 << nonzero))
    }

    fn memoize(&self) -> bool {
        false
    }

    fn default_generator(&self) -> Vec<Element> {
        (0..self.dim)
            .map(|i| {
                let mut c = vec![0; self.dim];
                c[i] = 1;
                self.index(&c)
            })
            .collect()
    }

    fn box_truncation(&self, radius: u32) -> Vec<Element> {
        let side = radius as usize + 1;
        let total = side.pow(self.dim as u32);
        (0..total)
            .map(|mut k| {
                let mut c = vec![0u32; self.dim];
                for slot in c.iter_mut().rev() {
                    *slot = (k % side) as u32;
                    k /= side;
                }
                self.index(&c)
            })
            .collect()
    }

    fn parse_element(&self, input: &str) -> Result<Element> {
        let err = |reason: String| Error::ParseElement { input: input.into(), reason };
        let coords = parse_tuple(input).map_err(err)?;
        if coords.len() != self.dim {
            return Err(err(format!("expected {} coordinates, got {}", self.dim, coords.len())));
        }
        Ok(self.index(&coords))
    }
}
