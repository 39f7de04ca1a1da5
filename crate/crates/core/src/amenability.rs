//! Følner, strong Følner and Leptin ratios, summing sequences, Reiter
//! deficiencies, approximate-identity certificates and the Haar level-set
//! diagnostic.
//!
//! Set products are the set-level `K*V`, the union of the supports of the
//! point convolutions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::Balls;
use crate::hypercore::{Element, FiniteFunction, Hypergroup};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioKind {
    Leptin,
    FolnerPointwise,
    StrongFolner,
}

impl fmt::Display for RatioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioKind::Leptin => "leptin",
            RatioKind::FolnerPointwise => "folner-pointwise",
            RatioKind::StrongFolner => "strong-folner",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub kind: RatioKind,
    pub k: Vec<Element>,
    pub v: Vec<Element>,
    pub value: Rational,
}

impl RatioReport {
    pub fn decimal(&self, digits: usize) -> String {
        self.value.to_decimal(digits)
    }
}

fn sorted_set(hg: &Hypergroup, set: &[Element]) -> Result<BTreeSet<Element>> {
    for x in set {
        hg.check(x)?;
    }
    Ok(set.iter().cloned().collect())
}

fn nonempty(v: &[Element]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Parameter("V must be nonempty".into()));
    }
    Ok(())
}

fn symmetric_difference_mass(hg: &Hypergroup, a: &BTreeSet<Element>, b: &BTreeSet<Element>) -> Result<Rational> {
    hg.haar_mass(a.symmetric_difference(b))
}

/// `h(K*V) / h(V)`.
pub fn leptin_ratio(hg: &Hypergroup, k: &[Element], v: &[Element]) -> Result<RatioReport> {
    nonempty(v)?;
    let vs = sorted_set(hg, v)?;
    let ks = sorted_set(hg, k)?;
    let kv = hg.support_product(&ks, &vs)?;
    Ok(RatioReport {
        kind: RatioKind::Leptin,
        k: ks.into_iter().collect(),
        value: &hg.haar_mass(&kv)? / &hg.haar_mass(&vs)?,
        v: vs.into_iter().collect(),
    })
}

/// `h(x*V △ V) / h(V)`.
pub fn folner_ratio(hg: &Hypergroup, x: &Element, v: &[Element]) -> Result<RatioReport> {
    let mut report = strong_folner_ratio(hg, std::slice::from_ref(x), v)?;
    report.kind = RatioKind::FolnerPointwise;
    Ok(report)
}

/// `h(K*V △ V) / h(V)`.
pub fn strong_folner_ratio(hg: &Hypergroup, k: &[Element], v: &[Element]) -> Result<RatioReport> {
    nonempty(v)?;
    let vs = sorted_set(hg, v)?;
    let ks = sorted_set(hg, k)?;
    let kv = hg.support_product(&ks, &vs)?;
    Ok(RatioReport {
        kind: RatioKind::StrongFolner,
        k: ks.into_iter().collect(),
        value: &symmetric_difference_mass(hg, &kv, &vs)? / &hg.haar_mass(&vs)?,
        v: vs.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SfImpliesL {
    pub leptin_minus_one: Rational,
    pub strong_folner: Rational,
    /// `leptin − 1 ≤ strong Følner`.
    pub holds: bool,
}

/// Compares `h(K*V)/h(V) − 1` with `h(K*V △ V)/h(V)`.
pub fn check_sf_implies_l(hg: &Hypergroup, k: &[Element], v: &[Element]) -> Result<SfImpliesL> {
    let leptin_minus_one = &leptin_ratio(hg, k, v)?.value - &Rational::one();
    let strong_folner = strong_folner_ratio(hg, k, v)?.value;
    Ok(SfImpliesL { holds: leptin_minus_one <= strong_folner, leptin_minus_one, strong_folner })
}

/// Compares `h(K*V △ V)/h(V)` with `Σ_{x∈K} h(x*V △ V)/h(V)`.
pub fn check_f_implies_sf(hg: &Hypergroup, k: &[Element], v: &[Element]) -> Result<(Rational, Rational, bool)> {
    let strong = strong_folner_ratio(hg, k, v)?.value;
    let ks = sorted_set(hg, k)?;
    let mut total = Rational::zero();
    for x in &ks {
        total += folner_ratio(hg, x, v)?.value;
    }
    let holds = strong <= total;
    Ok((strong, total, holds))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeptinSearch {
    /// 1-based index of the best candidate in the family.
    pub index: usize,
    pub v: Vec<Element>,
    pub ratio: Rational,
    pub examined: usize,
    pub target: Rational,
    /// `ratio < target`.
    pub certified: bool,
    /// 1-based index of the first candidate with ratio below the target.
    pub first_certifying: Option<usize>,
}

/// Generator balls `F^1, F^2, …` as a candidate family.
pub fn ball_family(hg: &Hypergroup, generator: &[Element]) -> Result<impl Iterator<Item = Result<Vec<Element>>>> {
    let mut balls = Balls::new(hg, generator)?;
    let mut n = 0;
    Ok(std::iter::from_fn(move || {
        n += 1;
        Some(balls.ball(n).map(|b| b.iter().cloned().collect()))
    }))
}

/// Minimizes `h(K*V)/h(V)` over the first `budget` candidates of `family`
/// and tests it against `d + ε`. Ties go to the earliest candidate.
pub fn leptin_search<I>(
    hg: &Hypergroup,
    k: &[Element],
    family: I,
    d: &Rational,
    epsilon: &Rational,
    budget: usize,
) -> Result<LeptinSearch>
where
    I: IntoIterator<Item = Result<Vec<Element>>>,
{
    if budget == 0 {
        return Err(Error::Parameter("budget must be at least 1".into()));
    }
    let candidates: Vec<Vec<Element>> = family.into_iter().take(budget).collect::<Result<_>>()?;
    if candidates.is_empty() {
        return Err(Error::Parameter("candidate family is empty".into()));
    }
    let ratios: Vec<Rational> =
        candidates.par_iter().map(|v| leptin_ratio(hg, k, v).map(|r| r.value)).collect::<Result<_>>()?;
    let (best, ratio) = ratios
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, r)| (i, r.clone()))
        .expect("nonempty");
    let target = d + epsilon;
    let first_certifying = ratios.iter().position(|r| *r < target).map(|i| i + 1);
    Ok(LeptinSearch {
        first_certifying,
        index: best + 1,
        v: candidates[best].clone(),
        certified: ratio < target,
        examined: candidates.len(),
        ratio,
        target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummingSequenceReport {
    /// Indices `n` with `A_n ⊄ A_{n+1}` (0-based).
    pub nesting_violations: Vec<usize>,
    /// Per `k`, the ratios `h(k*A_n △ A_n)/h(A_n)`.
    pub ratios: Vec<(Element, Vec<Rational>)>,
}

impl SummingSequenceReport {
    pub fn last(&self, k: &Element) -> Option<&Rational> {
        self.ratios.iter().find(|(x, _)| x == k).and_then(|(_, r)| r.last())
    }
}

pub fn summing_sequence_check(hg: &Hypergroup, family: &[Vec<Element>], ks: &[Element]) -> Result<SummingSequenceReport> {
    let sets: Vec<BTreeSet<Element>> = family.iter().map(|a| sorted_set(hg, a)).collect::<Result<_>>()?;
    let nesting_violations = sets.windows(2).enumerate().filter(|(_, w)| !w[0].is_subset(&w[1])).map(|(i, _)| i).collect();
    let mut ratios = Vec::with_capacity(ks.len());
    for k in ks {
        let row: Vec<Rational> =
            family.par_iter().map(|a| folner_ratio(hg, k, a).map(|r| r.value)).collect::<Result<_>>()?;
        ratios.push((k.clone(), row));
    }
    Ok(SummingSequenceReport { nesting_violations, ratios })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReiterExponent {
    One,
    Two,
}

impl ReiterExponent {
    pub fn from_u32(r: u32) -> Result<Self> {
        match r {
            1 => Ok(ReiterExponent::One),
            2 => Ok(ReiterExponent::Two),
            _ => Err(Error::Parameter(format!("r must be 1 or 2, got {r}"))),
        }
    }

    pub fn as_u32(self) -> u32 {
        match self {
            ReiterExponent::One => 1,
            ReiterExponent::Two => 2,
        }
    }
}

/// `f = √scale_sq · base`, keeping every norm an exact rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaledFunction {
    pub base: FiniteFunction,
    pub scale_sq: Rational,
}

impl ScaledFunction {
    /// `‖f‖_r^2`.
    pub fn norm_sq(&self, hg: &Hypergroup, r: ReiterExponent) -> Result<Rational> {
        Ok(&self.scale_sq * &lp_norm_sq(hg, &self.base, r)?)
    }
}

/// `‖g‖_r^2` in `ℓ^r(H, h)`.
fn lp_norm_sq(hg: &Hypergroup, g: &FiniteFunction, r: ReiterExponent) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (t, v) in g.iter() {
        let w = hg.haar(t)?;
        acc += match r {
            ReiterExponent::One => &v.abs() * &w,
            ReiterExponent::Two => &(v * v) * &w,
        };
    }
    Ok(match r {
        ReiterExponent::One => &acc * &acc,
        ReiterExponent::Two => acc,
    })
}

/// `1_V / h(V)^{1/r}`.
pub fn folner_to_reiter(hg: &Hypergroup, v: &[Element], r: ReiterExponent) -> Result<ScaledFunction> {
    nonempty(v)?;
    let vs = sorted_set(hg, v)?;
    let mass = hg.haar_mass(&vs)?;
    let indicator = FiniteFunction::indicator(&vs);
    Ok(match r {
        ReiterExponent::One => ScaledFunction { base: indicator.scaled(&mass.recip()), scale_sq: Rational::one() },
        ReiterExponent::Two => ScaledFunction { base: indicator, scale_sq: mass.recip() },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReiterReport {
    pub r: ReiterExponent,
    pub e: Vec<Element>,
    pub f: ScaledFunction,
    /// `(x, ‖L_x f − f‖_r^2)` per `x ∈ E`.
    pub per_element: Vec<(Element, Rational)>,
    /// `max_x ‖L_x f − f‖_r^2`.
    pub deficiency_sq: Rational,
}

impl ReiterReport {
    /// The deficiency itself when it is a rational number.
    pub fn deficiency_exact(&self) -> Option<Rational> {
        rational_sqrt(&self.deficiency_sq)
    }

    pub fn deficiency_f64(&self) -> f64 {
        self.deficiency_sq.to_f64().sqrt()
    }
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root = |n: BigInt| {
        let s = n.sqrt();
        (&s * &s == n).then_some(s)
    };
    Some(Rational::from_bigints(root(q.numer())?, root(q.denom())?))
}

/// `max_{x∈E} ‖L_x f − f‖_r`, reported squared.
pub fn reiter_deficiency(hg: &Hypergroup, f: &ScaledFunction, e: &[Element], r: ReiterExponent) -> Result<ReiterReport> {
    if !f.base.is_nonnegative() || f.scale_sq.is_negative() {
        return Err(Error::Parameter("f must be nonnegative".into()));
    }
    let norm = f.norm_sq(hg, r)?;
    if norm != Rational::one() {
        return Err(Error::Parameter(format!("f is not normalized: ‖f‖_{}² = {norm}", r.as_u32())));
    }
    let es = sorted_set(hg, e)?;
    let per_element: Vec<(Element, Rational)> = es
        .par_iter()
        .map(|x| {
            let diff = hg.translate(x, &f.base)?.difference(&f.base);
            Ok((x.clone(), &f.scale_sq * &lp_norm_sq(hg, &diff, r)?))
        })
        .collect::<Result<_>>()?;
    let deficiency_sq = per_element.iter().map(|(_, d)| d.clone()).max().unwrap_or_else(Rational::zero);
    Ok(ReiterReport { r, e: es.into_iter().collect(), f: f.clone(), per_element, deficiency_sq })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaiCertificate {
    pub k: Vec<Element>,
    pub v: Vec<Element>,
    /// `h(V)^{-1} 1_{K*V} *_h 1̃_V`.
    pub u: FiniteFunction,
    /// `h(K*V)/h(V)`, the square of the norm bound.
    pub bound_sq: Rational,
}

/// Builds `u = h(V)^{-1} (1_{K*V} *_h 1̃_V)` and checks `u ≥ 0`, `u|_K ≡ 1`
/// and `supp u ⊆ K*V*V̌`.
pub fn bai_certificate(hg: &Hypergroup, k: &[Element], v: &[Element]) -> Result<BaiCertificate> {
    nonempty(v)?;
    let vs = sorted_set(hg, v)?;
    let ks = sorted_set(hg, k)?;
    let kv = hg.support_product(&ks, &vs)?;
    let v_mass = hg.haar_mass(&vs)?;
    let tilde_v = hg.tilde_function(&FiniteFunction::indicator(&vs))?;
    let u = hg.convolve_functions(&FiniteFunction::indicator(&kv), &tilde_v)?.scaled(&v_mass.recip());

    let fail = |witness: String, reason: &str| Err(Error::Certificate { witness, reason: reason.into() });
    if let Some((x, val)) = u.iter().find(|(_, val)| val.is_negative()) {
        return fail(format!("u({x}) = {val}"), "u is not nonnegative");
    }
    if let Some(x) = ks.iter().find(|x| u.get(x) != Rational::one()) {
        return fail(format!("u({x}) = {}", u.get(x)), "u is not identically 1 on K");
    }
    let v_check: Vec<Element> = vs.iter().map(|x| hg.involution(x)).collect::<Result<_>>()?;
    let envelope = hg.support_product(&kv, &v_check)?;
    if let Some((x, _)) = u.iter().find(|(x, _)| !envelope.contains(x)) {
        return fail(format!("u({x}) = {} with {x} ∉ K*V*V̌", u.get(x)), "support of u escapes K*V*V̌");
    }
    Ok(BaiCertificate {
        k: ks.into_iter().collect(),
        v: vs.into_iter().collect(),
        u,
        bound_sq: &hg.haar_mass(&kv)? / &v_mass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelSetVerdict {
    /// Every element of the largest truncation has `h ≤ M`.
    AllWithin,
    /// The count stopped changing between the two largest truncations.
    Saturating,
    /// The count still grows with the truncation.
    Growing,
}

impl fmt::Display for LevelSetVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelSetVerdict::AllWithin => "every element below M within T (bounded Haar evidence)",
            LevelSetVerdict::Saturating => "saturating (finite level set evidence)",
            LevelSetVerdict::Growing => "growing",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSetRow {
    pub size: usize,
    pub count: usize,
    pub max_haar: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSetReport {
    pub m: Rational,
    pub rows: Vec<LevelSetRow>,
    pub verdict: LevelSetVerdict,
}

impl LevelSetReport {
    pub fn count(&self) -> usize {
        self.rows.last().map_or(0, |r| r.count)
    }
}

/// Counts `{x ∈ T : h(x) ≤ M}` over nested truncations `T_1 ⊆ … ⊆ T`.
/// The verdict is evidence only.
pub fn haar_level_set(hg: &Hypergroup, m: &Rational, truncations: &[Vec<Element>]) -> Result<LevelSetReport> {
    if truncations.is_empty() {
        return Err(Error::Parameter("at least one truncation is required".into()));
    }
    let mut rows = Vec::with_capacity(truncations.len());
    for t in truncations {
        let set = sorted_set(hg, t)?;
        let weights: Vec<Rational> = set.par_iter().map(|x| hg.haar(x)).collect::<Result<_>>()?;
        rows.push(LevelSetRow {
            size: set.len(),
            count: weights.iter().filter(|w| *w <= m).count(),
            max_haar: weights.into_iter().max().unwrap_or_else(Rational::zero),
        });
    }
    let last = rows.last().expect("nonempty");
    let verdict = if last.count == last.size {
        LevelSetVerdict::AllWithin
    } else if rows.len() >= 2 && rows[rows.len() - 2].count == last.count {
        LevelSetVerdict::Saturating
    } else {
        LevelSetVerdict::Growing
    };
    Ok(LevelSetReport { m: m.clone(), rows, verdict })
}

/// Boxes of radius `r/4, r/2, 3r/4, r` (deduplicated) as nested truncations.
pub fn nested_boxes(hg: &Hypergroup, radius: u32) -> Vec<Vec<Element>> {
    let mut radii: Vec<u32> = [radius / 4, radius / 2, 3 * radius / 4, radius].to_vec();
    radii.dedup();
    radii.into_iter().map(|r| hg.box_truncation(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationWitness {
    pub x: Element,
    pub a: Vec<Element>,
    pub b: Vec<Element>,
    /// In `x*(A∖B)` but not in `x*A ∖ x*B`.
    pub offending: Element,
}

/// Searches `x ∈ xs`, `A = {a, b}`, `B = {b}` with `a, b ∈ universe` for a
/// witness of `x*(A∖B) ⊄ x*A ∖ x*B`.
pub fn translation_difference_search(
    hg: &Hypergroup,
    xs: &[Element],
    universe: &[Element],
) -> Result<Option<TranslationWitness>> {
    for x in xs {
        for (i, a) in universe.iter().enumerate() {
            let xa = hg.support_product([x], [a])?;
            for b in &universe[i + 1..] {
                let xb = hg.support_product([x], [b])?;
                if let Some(z) = xa.intersection(&xb).next() {
                    return Ok(Some(TranslationWitness {
                        x: x.clone(),
                        a: vec![a.clone(), b.clone()],
                        b: vec![b.clone()],
                        offending: z.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_chebyshev, build_su2_dual};

    fn els(hg: &Hypergroup, items: &[&str]) -> Vec<Element> {
        items.iter().map(|s| hg.parse_element(s).unwrap()).collect()
    }

    fn range(hg: &Hypergroup, n: u32) -> Vec<Element> {
        (0..=n).map(|i| hg.parse_element(&i.to_string()).unwrap()).collect()
    }

    #[test]
    fn leptin_examples() {
        let su2 = build_su2_dual();
        let r = leptin_ratio(&su2, &els(&su2, &["1"]), &range(&su2, 2)).unwrap();
        assert_eq!(r.value, Rational::new(15, 7));
        let cheb = build_chebyshev(1).unwrap();
        let r = leptin_ratio(&cheb, &els(&cheb, &["1"]), &range(&cheb, 2)).unwrap();
        assert_eq!(r.value, Rational::new(7, 5));
        let r = leptin_ratio(&su2, &[su2.identity()], &els(&su2, &["3", "7"])).unwrap();
        assert_eq!(r.value, Rational::one());
        assert!(matches!(leptin_ratio(&su2, &[], &[]), Err(Error::Parameter(_))));
    }

    #[test]
    fn folner_examples() {
        let cheb = build_chebyshev(1).unwrap();
        let one = cheb.parse_element("1").unwrap();
        assert_eq!(folner_ratio(&cheb, &one, &range(&cheb, 9)).unwrap().value, Rational::new(2, 19));
        let su2 = build_su2_dual();
        let one = su2.parse_element("1").unwrap();
        assert_eq!(folner_ratio(&su2, &one, &range(&su2, 9)).unwrap().value, Rational::new(121, 385));
        assert!(folner_ratio(&su2, &su2.identity(), &range(&su2, 9)).unwrap().value.is_zero());
    }

    #[test]
    fn sf_implies_l() {
        let su2 = build_su2_dual();
        let c = check_sf_implies_l(&su2, &els(&su2, &["1"]), &range(&su2, 9)).unwrap();
        assert_eq!(c.leptin_minus_one, Rational::new(121, 385));
        assert_eq!(c.strong_folner, Rational::new(121, 385));
        assert!(c.holds);
        let c = check_sf_implies_l(&su2, &[su2.identity()], &range(&su2, 9)).unwrap();
        assert!(c.leptin_minus_one.is_zero() && c.strong_folner.is_zero());
    }

    #[test]
    fn search_examples() {
        let cheb = build_chebyshev(1).unwrap();
        let k = els(&cheb, &["1"]);
        let family = ball_family(&cheb, &k).unwrap();
        let s = leptin_search(&cheb, &k, family, &Rational::one(), &Rational::new(1, 50), 100).unwrap();
        assert_eq!(s.ratio, Rational::new(203, 201));
        assert_eq!(s.index, 100);
        assert!(s.certified);

        let su2 = build_su2_dual();
        let family = ball_family(&su2, &els(&su2, &["1"])).unwrap();
        let s = leptin_search(&su2, &[su2.identity()], family, &Rational::one(), &Rational::new(1, 10), 5).unwrap();
        assert_eq!((s.index, s.ratio), (1, Rational::one()));
        let family = ball_family(&su2, &els(&su2, &["1"])).unwrap();
        let s = leptin_search(&su2, &els(&su2, &["1"]), family, &Rational::one(), &Rational::new(1, 100), 3).unwrap();
        assert!(!s.certified);
    }

    #[test]
    fn summing_sequences() {
        let cheb = build_chebyshev(1).unwrap();
        let family: Vec<Vec<Element>> = (1..=10).map(|n| range(&cheb, n)).collect();
        let one = cheb.parse_element("1").unwrap();
        let report = summing_sequence_check(&cheb, &family, &[one.clone()]).unwrap();
        assert!(report.nesting_violations.is_empty());
        for (n, r) in (1..=10).zip(&report.ratios[0].1) {
            assert_eq!(*r, Rational::new(2, 2 * n + 1));
        }
        let bad = vec![range(&cheb, 3), range(&cheb, 2)];
        assert_eq!(summing_sequence_check(&cheb, &bad, &[one]).unwrap().nesting_violations, [0]);
    }

    #[test]
    fn reiter_examples() {
        let cheb = build_chebyshev(1).unwrap();
        let f = folner_to_reiter(&cheb, &range(&cheb, 2), ReiterExponent::Two).unwrap();
        assert_eq!(f.norm_sq(&cheb, ReiterExponent::Two).unwrap(), Rational::one());
        let report = reiter_deficiency(&cheb, &f, &els(&cheb, &["1"]), ReiterExponent::Two).unwrap();
        assert_eq!(report.deficiency_sq, Rational::new(1, 5));
        assert!((report.deficiency_f64() - 0.4472).abs() < 1e-4);
        let report = reiter_deficiency(&cheb, &f, &[cheb.identity()], ReiterExponent::Two).unwrap();
        assert!(report.deficiency_sq.is_zero());

        let su2 = build_su2_dual();
        let f = folner_to_reiter(&su2, &range(&su2, 9), ReiterExponent::One).unwrap();
        assert_eq!(f.base.get(&su2.identity()), Rational::new(1, 385));
        let bad = ScaledFunction { base: f.base.scaled(&Rational::from_integer(2)), scale_sq: Rational::one() };
        assert!(matches!(
            reiter_deficiency(&su2, &bad, &[su2.identity()], ReiterExponent::One),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn certificates() {
        let su2 = build_su2_dual();
        let c = bai_certificate(&su2, &els(&su2, &["1"]), &range(&su2, 9)).unwrap();
        assert_eq!(c.bound_sq, Rational::new(506, 385));
        assert_eq!(c.u.get(&su2.parse_element("1").unwrap()), Rational::one());
        let c = bai_certificate(&su2, &[su2.identity()], &[su2.identity()]).unwrap();
        assert_eq!(c.u, FiniteFunction::indicator([&su2.identity()]));
        assert_eq!(c.bound_sq, Rational::one());
        let cheb = build_chebyshev(1).unwrap();
        let c = bai_certificate(&cheb, &els(&cheb, &["0"]), &range(&cheb, 1)).unwrap();
        assert_eq!(c.bound_sq, Rational::one());
    }

    #[test]
    fn level_sets() {
        let cheb = build_chebyshev(1).unwrap();
        let r = haar_level_set(&cheb, &Rational::from_integer(2), &nested_boxes(&cheb, 100)).unwrap();
        assert_eq!(r.count(), 101);
        assert_eq!(r.verdict, LevelSetVerdict::AllWithin);
        let su2 = build_su2_dual();
        let r = haar_level_set(&su2, &Rational::from_integer(100), &nested_boxes(&su2, 200)).unwrap();
        assert_eq!(r.count(), 10);
        assert_eq!(r.verdict, LevelSetVerdict::Saturating);
        let r = haar_level_set(&su2, &Rational::new(1, 2), &[vec![su2.identity()]]).unwrap();
        assert_eq!(r.count(), 0);
    }

    #[test]
    fn translation_difference() {
        let su2 = build_su2_dual();
        let w = translation_difference_search(&su2, &range(&su2, 2), &range(&su2, 3)).unwrap().unwrap();
        let xa = su2.support_product([&w.x], &w.a).unwrap();
        let xb = su2.support_product([&w.x], &w.b).unwrap();
        assert!(xb.contains(&w.offending) && xa.contains(&w.offending));
    }
}
