//! Exact verification of the hypergroup axioms on a finite truncation.
//!
//! Every check runs over all pairs (or triples) drawn from the truncation and
//! records the first counterexample it meets. Failures are report content,
//! not errors.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::hypercore::scaled::TripleTable;
use crate::hypercore::{Element, Hypergroup, Measure};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Point convolutions are positive with total mass one.
    H1Probability,
    /// `δ_e` is a two-sided identity.
    H4Identity,
    /// The involution is involutive and reverses products.
    H5Involution,
    /// `e ∈ supp(δ_x * δ_y)` iff `y = x̌`.
    H6IdentitySupport,
    Commutativity,
    Associativity,
    /// `h(L_x f) = h(f)`.
    HaarInvariance,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::H1Probability,
        Axiom::H4Identity,
        Axiom::H5Involution,
        Axiom::H6IdentitySupport,
        Axiom::Commutativity,
        Axiom::Associativity,
        Axiom::HaarInvariance,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::H1Probability => "H1 positivity/mass",
            Axiom::H4Identity => "H4 identity",
            Axiom::H5Involution => "H5 involution",
            Axiom::H6IdentitySupport => "H6 identity support",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::HaarInvariance => "Haar invariance",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    /// Number of cases examined.
    pub checked: u64,
    /// First counterexample, if any.
    pub counterexample: Option<String>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub hypergroup: String,
    pub truncation_size: usize,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

struct Tally {
    checked: u64,
    witness: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    /// Keeps the witness of the earliest failing chunk so parallel runs
    /// report the same counterexample as sequential ones.
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    fn finish(self, axiom: Axiom) -> AxiomOutcome {
        AxiomOutcome { axiom, checked: self.checked, counterexample: self.witness }
    }
}

fn run_indexed(n: usize, body: impl Fn(usize, &mut Tally) + Sync) -> Tally {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::new();
            body(i, &mut t);
            t
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(), Tally::merge)
}

/// `μ * δ_z` accumulated into a map; the hot path of the associativity check.
fn convolve_with_point(hg: &Hypergroup, mu: &Measure, z: &Element) -> Measure {
    let mut acc: BTreeMap<Element, Rational> = BTreeMap::new();
    for (w, a) in mu.iter() {
        let wz = hg.convolve_points(w, z).expect("support element outside hypergroup");
        for (u, b) in wz.iter() {
            let term = a * b;
            match acc.get_mut(u) {
                Some(v) => *v += &term,
                None => {
                    acc.insert(u.clone(), term);
                }
            }
        }
    }
    Measure::from_terms(acc)
}

/// Checks every axiom over the truncation `truncation`.
///
/// Haar invariance is checked on the point-mass basis `f = 1_{{z}}`,
/// `z ∈ T`; by linearity this covers every function supported in `T`.
///
/// For commutative rules associativity is checked on sorted triples
/// `x ≤ y ≤ z` by comparing the three pairings `(x*y)*z`, `(x*z)*y`,
/// `(y*z)*x`; together with commutativity this is equivalent to
/// associativity on all ordered triples.
pub fn verify_axioms(hg: &Hypergroup, truncation: &[Element]) -> AxiomReport {
    let mut t: Vec<Element> = truncation.to_vec();
    t.sort();
    t.dedup();
    let e = hg.identity();
    let mut outcomes = Vec::new();

    let outside: Vec<&Element> = t.iter().filter(|x| hg.check(x).is_err()).collect();
    if let Some(bad) = outside.first() {
        return AxiomReport {
            hypergroup: hg.descriptor().to_string(),
            truncation_size: t.len(),
            outcomes: Axiom::ALL
                .iter()
                .map(|&axiom| AxiomOutcome {
                    axiom,
                    checked: 0,
                    counterexample: Some(format!("{bad} is not an element of {}", hg.descriptor())),
                })
                .collect(),
        };
    }

    let n = t.len();
    let conv = |x: &Element, y: &Element| hg.convolve_points(x, y).expect("checked elements");
    let inv = |x: &Element| hg.involution(x).expect("checked elements");

    // H1
    let h1 = run_indexed(n, |i, tally| {
        for y in &t {
            let m = conv(&t[i], y);
            tally.record(m.is_probability(), || {
                format!("δ_{} * δ_{y} = {{{m}}} (mass {}, positive: {})", t[i], m.total_mass(), m.is_positive())
            });
        }
    });
    outcomes.push(h1.finish(Axiom::H1Probability));

    // H4
    let mut h4 = Tally::new();
    for x in &t {
        let point = Measure::point(x.clone());
        let left = conv(&e, x);
        h4.record(*left == point, || format!("δ_e * δ_{x} = {{{left}}}"));
        let right = conv(x, &e);
        h4.record(*right == point, || format!("δ_{x} * δ_e = {{{right}}}"));
    }
    outcomes.push(h4.finish(Axiom::H4Identity));

    // H5
    let h5 = run_indexed(n, |i, tally| {
        let x = &t[i];
        let xc = inv(x);
        tally.record(inv(&xc) == *x, || format!("involution of {x} is {xc}, whose involution is {}", inv(&xc)));
        for y in &t {
            let lhs = conv(x, y).map_points(inv);
            let rhs = conv(&inv(y), &xc);
            tally.record(lhs == *rhs, || format!("(δ_{x} * δ_{y})ˇ = {{{lhs}}} but δ_{}ˇ * δ_{x}ˇ = {{{rhs}}}", y));
        }
    });
    outcomes.push(h5.finish(Axiom::H5Involution));

    // H6
    let h6 = run_indexed(n, |i, tally| {
        let x = &t[i];
        let xc = inv(x);
        for y in &t {
            let has_e = conv(x, y).get(&e).is_positive();
            tally.record(has_e == (*y == xc), || {
                format!("e ∈ supp(δ_{x} * δ_{y}) is {has_e} but x̌ = {xc}")
            });
        }
    });
    outcomes.push(h6.finish(Axiom::H6IdentitySupport));

    // Commutativity, checked against the raw rule so the cache key
    // normalization cannot hide an asymmetric provider.
    let comm = run_indexed(n, |i, tally| {
        for y in &t[i + 1..] {
            let a = hg.convolve_points_uncached(&t[i], y).expect("checked elements");
            let b = hg.convolve_points_uncached(y, &t[i]).expect("checked elements");
            tally.record(a == b, || format!("δ_{} * δ_{y} = {{{a}}} ≠ δ_{y} * δ_{} = {{{b}}}", t[i], t[i]));
        }
    });
    outcomes.push(comm.finish(Axiom::Commutativity));

    // Associativity
    let assoc = if hg.rule().is_commutative() {
        let table = TripleTable::build(hg, &t);
        run_indexed(n, |i, tally| {
            let x = &t[i];
            for j in i..n {
                let y = &t[j];
                for k in j..n {
                    if let Some(true) = table.as_ref().and_then(|tt| tt.triple_agrees(i, j, k)) {
                        tally.record(true, String::new);
                        continue;
                    }
                    let z = &t[k];
                    let p = convolve_with_point(hg, &conv(x, y), z);
                    let q = convolve_with_point(hg, &conv(x, z), y);
                    let r = convolve_with_point(hg, &conv(y, z), x);
                    tally.record(p == q && q == r, || {
                        format!("(δ_{x}*δ_{y})*δ_{z} = {{{p}}}, (δ_{x}*δ_{z})*δ_{y} = {{{q}}}, (δ_{y}*δ_{z})*δ_{x} = {{{r}}}")
                    });
                }
            }
        })
    } else {
        run_indexed(n, |i, tally| {
            let x = &t[i];
            for y in &t {
                let xy = conv(x, y);
                for z in &t {
                    let lhs = convolve_with_point(hg, &xy, z);
                    let rhs = hg
                        .convolve_measures(&Measure::point(x.clone()), &conv(y, z))
                        .expect("checked elements");
                    tally.record(lhs == rhs, || {
                        format!("(δ_{x}*δ_{y})*δ_{z} = {{{lhs}}} ≠ δ_{x}*(δ_{y}*δ_{z}) = {{{rhs}}}")
                    });
                }
            }
        })
    };
    outcomes.push(assoc.finish(Axiom::Associativity));

    // Haar invariance on the point-mass basis: Σ_y (δ_x*δ_y)({z}) h(y) = h(z).
    let haar = run_indexed(n, |i, tally| {
        let x = &t[i];
        let xc = inv(x);
        for z in &t {
            let result = (|| -> crate::Result<(Rational, Rational)> {
                let mut lhs = Rational::zero();
                for (y, _) in hg.convolve_points(&xc, z)?.iter() {
                    lhs += &(&conv(x, y).get(z) * &hg.haar_weight(y)?);
                }
                Ok((lhs, hg.haar_weight(z)?))
            })();
            match result {
                Ok((lhs, rhs)) => tally.record(lhs == rhs, || format!("h(L_{x} 1_{{{z}}}) = {lhs} ≠ h({z}) = {rhs}")),
                Err(err) => tally.record(false, || format!("Haar weight undefined near ({x}, {z}): {err}")),
            }
        }
    });
    outcomes.push(haar.finish(Axiom::HaarInvariance));

    AxiomReport { hypergroup: hg.descriptor().to_string(), truncation_size: n, outcomes }
}
