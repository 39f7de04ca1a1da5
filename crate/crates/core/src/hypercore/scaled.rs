//! Interned structure constants with integer numerators over a common
//! denominator, for the triple loop of the associativity check.

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;

use crate::hypercore::{Element, Hypergroup, Measure};

#[derive(Default)]
struct Interner {
    index: HashMap<Element, u32>,
    elems: Vec<Element>,
}

impl Interner {
    fn intern(&mut self, x: &Element) -> u32 {
        if let Some(&i) = self.index.get(x) {
            return i;
        }
        let i = self.elems.len() as u32;
        self.index.insert(x.clone(), i);
        self.elems.push(x.clone());
        i
    }
}

/// Measures stored back to back: row `r` has denominator `dens[r]` and terms
/// `ids[offsets[r]..offsets[r+1]]` with numerators alongside.
#[derive(Default)]
struct Rows {
    offsets: Vec<usize>,
    dens: Vec<i64>,
    ids: Vec<u32>,
    nums: Vec<i64>,
}

impl Rows {
    fn push(&mut self, m: &Measure, interner: &mut Interner) -> Option<()> {
        let mut den: i64 = 1;
        for (_, c) in m.iter() {
            let (_, d) = c.as_small()?;
            den = den.checked_mul(d / den.gcd(&d))?;
        }
        if self.offsets.is_empty() {
            self.offsets.push(0);
        }
        for (z, c) in m.iter() {
            let (p, d) = c.as_small()?;
            self.ids.push(interner.intern(z));
            self.nums.push(p.checked_mul(den / d)?);
        }
        self.dens.push(den);
        self.offsets.push(self.ids.len());
        Some(())
    }

    fn row(&self, r: usize) -> (i64, &[u32], &[i64]) {
        let span = self.offsets[r]..self.offsets[r + 1];
        (self.dens[r], &self.ids[span.clone()], &self.nums[span])
    }
}

/// A measure `Σ nums_u / den · δ_u` with ids sorted.
#[derive(Debug, PartialEq, Eq)]
struct Scaled {
    den: i128,
    terms: Vec<(u32, i128)>,
}

impl Scaled {
    fn same_measure(&self, other: &Scaled) -> Option<bool> {
        if self.terms.len() != other.terms.len() {
            return Some(false);
        }
        for (&(u, a), &(v, b)) in self.terms.iter().zip(&other.terms) {
            if u != v || a.checked_mul(other.den)? != b.checked_mul(self.den)? {
                return Some(false);
            }
        }
        Some(true)
    }
}

/// Products `t_i * t_j` (`i ≤ j`) and `w * t_k` for every `w` in the support
/// of some `t_i * t_j`.
pub(crate) struct TripleTable {
    n: usize,
    pairs: Rows,
    right: Rows,
}

impl TripleTable {
    /// `None` when some coefficient does not fit the integer layout.
    pub(crate) fn build(hg: &Hypergroup, t: &[Element]) -> Option<Self> {
        let n = t.len();
        let mut interner = Interner::default();
        for x in t {
            interner.intern(x);
        }
        let mut pairs = Rows::default();
        for i in 0..n {
            let row: Vec<Measure> =
                (i..n).into_par_iter().map(|j| hg.convolve_points(&t[i], &t[j]).ok().map(|m| (*m).clone())).collect::<Option<_>>()?;
            for m in &row {
                pairs.push(m, &mut interner)?;
            }
        }
        let w_count = interner.elems.len();
        let mut right = Rows::default();
        const CHUNK: usize = 64;
        for start in (0..w_count).step_by(CHUNK) {
            let ws: Vec<Element> = interner.elems[start..(start + CHUNK).min(w_count)].to_vec();
            let block: Vec<Measure> = ws
                .par_iter()
                .flat_map_iter(|w| t.iter().map(move |z| (w, z)))
                .map(|(w, z)| hg.convolve_points(w, z).ok().map(|m| (*m).clone()))
                .collect::<Option<_>>()?;
            for m in &block {
                right.push(m, &mut interner)?;
            }
        }
        Some(TripleTable { n, pairs, right })
    }

    fn pair_row(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // Row i is preceded by Σ_{a<i} (n - a) entries.
        i * self.n - i * i.saturating_sub(1) / 2 + (j - i)
    }

    /// `(t_a * t_b) * t_c`.
    fn product(&self, a: usize, b: usize, c: usize) -> Option<Scaled> {
        let (den_ab, ws, coeffs) = self.pairs.row(self.pair_row(a, b));
        let mut l: i128 = 1;
        for &w in ws {
            let d = self.right.row(w as usize * self.n + c).0 as i128;
            l = l.checked_mul(d / l.gcd(&d))?;
        }
        let mut terms: Vec<(u32, i128)> = Vec::new();
        for (&w, &a) in ws.iter().zip(coeffs) {
            let (d, us, bs) = self.right.row(w as usize * self.n + c);
            let s = (a as i128).checked_mul(l / d as i128)?;
            for (&u, &b) in us.iter().zip(bs) {
                terms.push((u, s.checked_mul(b as i128)?));
            }
        }
        terms.sort_unstable_by_key(|&(u, _)| u);
        let mut merged: Vec<(u32, i128)> = Vec::with_capacity(terms.len());
        for (u, v) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == u => *acc = acc.checked_add(v)?,
                _ => merged.push((u, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0);
        Some(Scaled { den: (den_ab as i128).checked_mul(l)?, terms: merged })
    }

    /// Whether `(x*y)*z`, `(x*z)*y` and `(y*z)*x` agree for `x = t_i`,
    /// `y = t_j`, `z = t_k`; `None` on overflow.
    pub(crate) fn triple_agrees(&self, i: usize, j: usize, k: usize) -> Option<bool> {
        let p = self.product(i, j, k)?;
        let q = self.product(i, k, j)?;
        if !p.same_measure(&q)? {
            return Some(false);
        }
        let r = self.product(j, k, i)?;
        q.same_measure(&r)
    }
}
