//! Generator balls and shells, Haar growth series, the SU(3) closed forms,
//! D-Leptin estimates and the product Leptin combiner.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{build_su3_dual, ProductHypergroup};
use crate::error::{Error, Result};
use crate::hypercore::{Element, Hypergroup, Payload};
use crate::rational::Rational;

/// Incrementally grown balls `F^0 = {e} ⊆ F^1 ⊆ …` with
/// `F^n = F^{n−1} ∪ S_{n−1} * F`, where `S_k = F^k ∖ F^{k−1}`.
#[derive(Clone, Debug)]
pub struct Balls {
    hg: Hypergroup,
    generator: Vec<Element>,
    ball: BTreeSet<Element>,
    shells: Vec<Vec<Element>>,
}

impl Balls {
    pub fn new(hg: &Hypergroup, generator: &[Element]) -> Result<Self> {
        for g in generator {
            hg.check(g)?;
        }
        let e = hg.identity();
        Ok(Balls {
            hg: hg.clone(),
            generator: generator.to_vec(),
            ball: BTreeSet::from([e.clone()]),
            shells: vec![vec![e]],
        })
    }

    pub fn generator(&self) -> &[Element] {
        &self.generator
    }

    /// Largest radius computed so far.
    pub fn radius(&self) -> usize {
        self.shells.len() - 1
    }

    fn grow(&mut self) -> Result<()> {
        let last = self.shells.last().expect("shell 0 always present");
        let products: Vec<BTreeSet<Element>> = last
            .par_iter()
            .map(|x| self.hg.support_product([x], &self.generator))
            .collect::<Result<_>>()?;
        let mut shell = BTreeSet::new();
        for set in products {
            for z in set {
                if !self.ball.contains(&z) {
                    shell.insert(z);
                }
            }
        }
        self.ball.extend(shell.iter().cloned());
        self.shells.push(shell.into_iter().collect());
        Ok(())
    }

    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.radius() < n {
            self.grow()?;
        }
        Ok(())
    }

    /// `F^n`; grows the current ball when needed, so `n` must be at least the
    /// current radius.
    pub fn ball(&mut self, n: usize) -> Result<&BTreeSet<Element>> {
        if n < self.radius() {
            return Err(Error::Parameter(format!(
                "ball {n} requested after growing to radius {}; use ball_set",
                self.radius()
            )));
        }
        self.extend_to(n)?;
        Ok(&self.ball)
    }

    /// `F^n` for any `n`, as the union of the first `n + 1` shells.
    pub fn ball_set(&mut self, n: usize) -> Result<BTreeSet<Element>> {
        self.extend_to(n)?;
        Ok(self.shells[..=n].iter().flatten().cloned().collect())
    }

    /// `S_n = F^n ∖ F^{n−1}`, with `S_0 = {e}`.
    pub fn shell(&mut self, n: usize) -> Result<&[Element]> {
        self.extend_to(n)?;
        Ok(&self.shells[n])
    }
}

/// `F^n`.
pub fn ball(hg: &Hypergroup, generator: &[Element], n: usize) -> Result<BTreeSet<Element>> {
    let mut balls = Balls::new(hg, generator)?;
    Ok(balls.ball(n)?.clone())
}

/// `F^n ∖ F^{n−1}`.
pub fn shell(hg: &Hypergroup, generator: &[Element], n: usize) -> Result<Vec<Element>> {
    let mut balls = Balls::new(hg, generator)?;
    Ok(balls.shell(n)?.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub size: usize,
    pub haar: Rational,
    /// `h(F^n) / n^d`; absent at `n = 0` when `d > 0`.
    pub normalized: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub hypergroup: String,
    pub generator: Vec<Element>,
    pub exponent: u32,
    pub rows: Vec<GrowthRow>,
}

impl GrowthReport {
    pub fn row(&self, n: usize) -> Option<&GrowthRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

fn normalize(h: &Rational, n: usize, d: u32) -> Option<Rational> {
    match (n, d) {
        (0, 0) => Some(h.clone()),
        (0, _) => None,
        _ => Some(h / &Rational::from_u64(n as u64).pow(d)),
    }
}

/// Rows `(n, |F^n|, h(F^n), h(F^n)/n^d)` for `n = 0..=n_max`.
pub fn growth_series(hg: &Hypergroup, generator: &[Element], n_max: usize, d: u32) -> Result<GrowthReport> {
    if n_max == 0 {
        return Err(Error::Parameter("n_max must be at least 1".into()));
    }
    let mut balls = Balls::new(hg, generator)?;
    balls.extend_to(n_max)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut size = 0;
    let mut haar = Rational::zero();
    for n in 0..=n_max {
        let shell = &balls.shells[n];
        let weights: Vec<Rational> = shell.par_iter().map(|x| hg.haar(x)).collect::<Result<_>>()?;
        haar += weights.into_iter().sum::<Rational>();
        size += shell.len();
        rows.push(GrowthRow { n, size, haar: haar.clone(), normalized: normalize(&haar, n, d) });
    }
    Ok(GrowthReport { hypergroup: hg.descriptor().to_string(), generator: generator.to_vec(), exponent: d, rows })
}

/// `Σ_{j=0}^{k} (j+1)² (k−j+1)² (k+2)² / 4`.
pub fn su3_shell_closed_form(k: u64) -> Rational {
    let k2 = Rational::from_u64((k + 2) * (k + 2));
    let sum: Rational = (0..=k)
        .map(|j| Rational::from_u64((j + 1) * (j + 1)) * Rational::from_u64((k - j + 1) * (k - j + 1)) * k2.clone())
        .sum();
    sum / Rational::from_integer(4)
}

/// `1 + n(3n⁷+60n⁶+518n⁵+2520n⁴+7547n³+14220n²+16412n+10560)/2880`.
pub fn su3_ball_closed_form(n: u64) -> Rational {
    const COEFFS: [i64; 8] = [3, 60, 518, 2520, 7547, 14220, 16412, 10560];
    let x = Rational::from_u64(n);
    let mut poly = Rational::zero();
    for c in COEFFS {
        poly = &(&poly * &x) + &Rational::from_integer(c);
    }
    Rational::one() + &(&x * &poly) / &Rational::from_integer(2880)
}

/// The SU(3) dual generated by its two fundamental representations.
pub fn su3_fundamentals(hg: &Hypergroup) -> Result<Vec<Element>> {
    ["(1,0)", "(0,1)"].iter().map(|s| hg.parse_element(s)).collect()
}

pub const SU3_LOWER_BOUND: (i64, i64) = (1, 960);
pub const SU3_UPPER_BOUND: i64 = 19;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n_max: usize,
    pub lower: Rational,
    pub upper: Rational,
    pub rows: Vec<GrowthRow>,
    /// `(n, h(F^n)/n⁸)` at the minimum and maximum.
    pub min: (usize, Rational),
    pub max: (usize, Rational),
    /// First `n` outside `(lower, upper]`.
    pub violation: Option<usize>,
    pub note: &'static str,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `1/960 < h(F^n)/n⁸ ≤ 19` on the SU(3) dual for `n = 1..=n_max`.
pub fn su3_bounds_check(n_max: usize) -> Result<BoundsReport> {
    let hg = build_su3_dual();
    let f = su3_fundamentals(&hg)?;
    let report = growth_series(&hg, &f, n_max, 8)?;
    let lower = Rational::new(SU3_LOWER_BOUND.0, SU3_LOWER_BOUND.1);
    let upper = Rational::from_integer(SU3_UPPER_BOUND);
    let rows: Vec<GrowthRow> = report.rows.into_iter().filter(|r| r.n >= 1).collect();
    let value = |r: &GrowthRow| r.normalized.clone().expect("n ≥ 1");
    let min = rows.iter().map(|r| (r.n, value(r))).min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0))).unwrap();
    let max = rows.iter().map(|r| (r.n, value(r))).max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))).unwrap();
    let violation = rows.iter().find(|r| {
        let v = value(r);
        v <= lower || v > upper
    });
    Ok(BoundsReport {
        n_max,
        violation: violation.map(|r| r.n),
        lower,
        upper,
        rows,
        min,
        max,
        note: "normalization read as h(F^n)/n^8; the printed bound's denominator k^n is taken to mean n^8",
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DLeptinReport {
    /// Smallest `k` with `K ⊆ F^k`.
    pub containing_radius: usize,
    /// `(ℓ, h(K*F^ℓ)/h(F^ℓ))` for `ℓ = 1..=ℓ_max`.
    pub rows: Vec<(usize, Rational)>,
    /// Largest ratio and the first `ℓ` attaining it.
    pub sup: (usize, Rational),
    pub last: Rational,
    pub bound: Option<Rational>,
    /// Every ratio is at most `bound`.
    pub within_bound: Option<bool>,
}

/// Ratios `h(K*F^ℓ)/h(F^ℓ)` over a finite range; finite evidence only.
pub fn d_leptin_estimate(
    hg: &Hypergroup,
    k: &[Element],
    generator: &[Element],
    l_max: usize,
    bound: Option<Rational>,
) -> Result<DLeptinReport> {
    if l_max == 0 {
        return Err(Error::Parameter("ℓ_max must be at least 1".into()));
    }
    for x in k {
        hg.check(x)?;
    }
    let mut balls = Balls::new(hg, generator)?;
    balls.extend_to(l_max + 1)?;
    let containing_radius = (0..=l_max)
        .find(|&r| k.iter().all(|x| balls.shells[..=r].iter().any(|s| s.binary_search(x).is_ok())))
        .ok_or_else(|| Error::Parameter(format!("K is not contained in F^{l_max}")))?;

    let mut k_ball: BTreeSet<Element> = hg.support_product(k, [&hg.identity()])?;
    let mut k_ball_mass = hg.haar_mass(&k_ball)?;
    let mut ball_mass = Rational::one();
    let mut rows = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let shell = &balls.shells[l];
        ball_mass += hg.haar_mass(shell)?;
        let parts: Vec<BTreeSet<Element>> =
            shell.par_iter().map(|s| hg.support_product(k, [s])).collect::<Result<_>>()?;
        for z in parts.into_iter().flatten() {
            if !k_ball.contains(&z) {
                k_ball_mass += hg.haar(&z)?;
                k_ball.insert(z);
            }
        }
        rows.push((l, &k_ball_mass / &ball_mass));
    }
    let sup = rows.iter().cloned().reduce(|a, b| if b.1 > a.1 { b } else { a }).expect("ℓ_max ≥ 1");
    let last = rows.last().expect("ℓ_max ≥ 1").1.clone();
    let within_bound = bound.as_ref().map(|d| sup.1 <= *d);
    Ok(DLeptinReport { containing_radius, rows, sup, last, bound, within_bound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductLeptin {
    pub hypergroup: String,
    pub k: Vec<Element>,
    pub v: Vec<Element>,
    pub ratio: Rational,
    pub factor_ratios: Vec<Rational>,
    pub factor_product: Rational,
    pub holds: bool,
}

fn cartesian(sets: &[Vec<Element>]) -> Vec<Vec<Element>> {
    let mut acc: Vec<Vec<Element>> = vec![Vec::new()];
    for set in sets {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                set.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    acc
}

/// Forms `K = ∏ K_i`, `V = ∏ V_i` in the product of `factors` and compares
/// `h(K*V)/h(V)` with `∏ h(K_i*V_i)/h(V_i)`.
pub fn product_leptin_combine(factors: &[Hypergroup], parts: &[(Vec<Element>, Vec<Element>)]) -> Result<ProductLeptin> {
    if parts.len() != factors.len() {
        return Err(Error::Parameter(format!("{} factors but {} (K, V) pairs", factors.len(), parts.len())));
    }
    let mut factor_ratios = Vec::with_capacity(parts.len());
    for (hg, (k, v)) in factors.iter().zip(parts) {
        if v.is_empty() {
            return Err(Error::Parameter("every V_i must be nonempty".into()));
        }
        let kv = hg.support_product(k, v)?;
        factor_ratios.push(&hg.haar_mass(&kv)? / &hg.haar_mass(v)?);
    }
    let product = Hypergroup::new(ProductHypergroup::new(factors.to_vec())?);
    let lift = |sets: Vec<Vec<Element>>| -> Result<Vec<Element>> {
        cartesian(&sets).into_iter().map(|p| product.element(Payload::Pair(p.into_boxed_slice()))).collect()
    };
    let k = lift(parts.iter().map(|p| p.0.clone()).collect())?;
    let v = lift(parts.iter().map(|p| p.1.clone()).collect())?;
    let kv = product.support_product(&k, &v)?;
    let ratio = &product.haar_mass(&kv)? / &product.haar_mass(&v)?;
    let factor_product: Rational = factor_ratios.iter().fold(Rational::one(), |acc, r| &acc * r);
    Ok(ProductLeptin {
        hypergroup: product.descriptor().to_string(),
        holds: ratio <= factor_product,
        k,
        v,
        ratio,
        factor_ratios,
        factor_product,
    })
}

/// First `(ℓ, k, z)` with `z ∈ F^ℓ * F^k ∖ F^{ℓ+k}`, for `ℓ + k ≤ max_total`.
pub fn submultiplicativity_check(
    hg: &Hypergroup,
    generator: &[Element],
    max_total: usize,
) -> Result<Option<(usize, usize, Element)>> {
    let mut balls = Balls::new(hg, generator)?;
    balls.extend_to(max_total)?;
    let sets: Vec<BTreeSet<Element>> = (0..=max_total).map(|n| balls.ball_set(n)).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..=max_total).flat_map(|l| (l..=max_total - l).map(move |k| (l, k))).collect();
    let found: Vec<Option<(usize, usize, Element)>> = pairs
        .par_iter()
        .map(|&(l, k)| {
            let prod = hg.support_product(&sets[l], &sets[k])?;
            Ok(prod.into_iter().find(|z| !sets[l + k].contains(z)).map(|z| (l, k, z)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}
