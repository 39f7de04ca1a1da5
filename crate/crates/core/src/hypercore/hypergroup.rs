use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::hypercore::{Element, FiniteFunction, HypergroupId, Measure, Payload};
use crate::rational::Rational;

/// Structure-constant provider for a discrete hypergroup.
///
/// Implementations only see elements that already passed the id check in
/// [`Hypergroup`]; `contains` validates the payload shape.
pub trait FusionRule: Send + Sync {
    fn descriptor(&self) -> &str;

    fn id(&self) -> HypergroupId;

    fn identity(&self) -> Element;

    fn contains(&self, x: &Element) -> bool;

    fn involution(&self, x: &Element) -> Element;

    /// `δ_x * δ_y`.
    fn convolve(&self, x: &Element, y: &Element) -> Measure;

    /// Closed-form Haar weight, when the construction provides one.
    fn haar_closed_form(&self, _x: &Element) -> Option<Rational> {
        None
    }

    /// Whether point convolutions are worth memoizing. Cheap closed-form
    /// rules opt out so large truncations do not fill memory.
    fn memoize(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        true
    }

    /// Finite generating set used by ball-based searches.
    fn default_generator(&self) -> Vec<Element>;

    /// Elements whose coordinates are all at most `radius` (every element,
    /// for finite hypergroups).
    fn box_truncation(&self, radius: u32) -> Vec<Element>;

    fn parse_element(&self, input: &str) -> Result<Element>;

    /// Number of elements when the hypergroup is finite.
    fn order(&self) -> Option<usize> {
        None
    }
}

type CacheMap = HashMap<(Element, Element), Arc<Measure>>;

struct Inner {
    rule: Box<dyn FusionRule>,
    cache: RwLock<CacheMap>,
    preloaded: AtomicBool,
}

/// A discrete hypergroup: an immutable fusion rule plus a shared,
/// internally synchronized structure-constant cache. Cloning is cheap and
/// clones share the cache.
#[derive(Clone)]
pub struct Hypergroup {
    inner: Arc<Inner>,
}

impl fmt::Debug for Hypergroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergroup")
            .field("descriptor", &self.descriptor())
            .finish()
    }
}

impl Hypergroup {
    pub fn new<R: FusionRule + 'static>(rule: R) -> Self {
        Hypergroup {
            inner: Arc::new(Inner {
                rule: Box::new(rule),
                cache: RwLock::new(HashMap::new()),
                preloaded: AtomicBool::new(false),
            }),
        }
    }

    pub fn rule(&self) -> &dyn FusionRule {
        self.inner.rule.as_ref()
    }

    pub fn descriptor(&self) -> &str {
        self.inner.rule.descriptor()
    }

    pub fn id(&self) -> HypergroupId {
        self.inner.rule.id()
    }

    pub fn identity(&self) -> Element {
        self.inner.rule.identity()
    }

    pub fn element(&self, payload: Payload) -> Result<Element> {
        let x = Element::new(self.id(), payload);
        self.check(&x)?;
        Ok(x)
    }

    pub fn parse_element(&self, input: &str) -> Result<Element> {
        self.inner.rule.parse_element(input)
    }

    pub fn default_generator(&self) -> Vec<Element> {
        self.inner.rule.default_generator()
    }

    pub fn box_truncation(&self, radius: u32) -> Vec<Element> {
        self.inner.rule.box_truncation(radius)
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.group != self.id() || !self.inner.rule.contains(x) {
            return Err(Error::Domain { element: x.to_string(), hypergroup: self.descriptor().into() });
        }
        Ok(())
    }

    pub fn involution(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.inner.rule.involution(x))
    }

    /// `δ_x * δ_y`, memoized for rules that opt in.
    pub fn convolve_points(&self, x: &Element, y: &Element) -> Result<Arc<Measure>> {
        self.check(x)?;
        self.check(y)?;
        let rule = self.rule();
        let memoize = rule.memoize();
        if !memoize && !self.inner.preloaded.load(Ordering::Relaxed) {
            return Ok(Arc::new(rule.convolve(x, y)));
        }
        let key = if rule.is_commutative() && y < x { (y.clone(), x.clone()) } else { (x.clone(), y.clone()) };
        if let Some(m) = self.inner.cache.read().get(&key) {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(rule.convolve(&key.0, &key.1));
        if !memoize {
            return Ok(m);
        }
        self.inner.cache.write().entry(key).or_insert_with(|| Arc::clone(&m));
        Ok(m)
    }

    /// Bypasses the cache and the commutative key normalization.
    pub fn convolve_points_uncached(&self, x: &Element, y: &Element) -> Result<Measure> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.rule().convolve(x, y))
    }

    fn check_measure(&self, m: &Measure) -> Result<()> {
        for (x, _) in m.iter() {
            if x.group != self.id() {
                return Err(Error::Mismatch { expected: self.descriptor().into() });
            }
            self.check(x)?;
        }
        Ok(())
    }

    /// Bilinear extension of the point convolution.
    pub fn convolve_measures(&self, mu: &Measure, nu: &Measure) -> Result<Measure> {
        self.check_measure(mu)?;
        self.check_measure(nu)?;
        let mut out = Measure::new();
        for (x, a) in mu.iter() {
            for (y, b) in nu.iter() {
                let w = a * b;
                out.add_scaled(&*self.convolve_points(x, y)?, &w);
            }
        }
        Ok(out)
    }

    /// `A * B`: union of the supports of `δ_x * δ_y`.
    pub fn support_product<'a, A, B>(&self, a: A, b: B) -> Result<BTreeSet<Element>>
    where
        A: IntoIterator<Item = &'a Element>,
        B: IntoIterator<Item = &'a Element> + Clone,
    {
        let mut out = BTreeSet::new();
        for x in a {
            for y in b.clone() {
                out.extend(self.convolve_points(x, y)?.iter().map(|(z, _)| z.clone()));
            }
        }
        Ok(out)
    }

    /// Left translation `(L_x f)(y) = (δ_x * δ_y)(f)`.
    ///
    /// `(L_x f)(y)` can only be nonzero when some `z ∈ supp f` lies in
    /// `supp(δ_x * δ_y)`, i.e. when `y ∈ x̌ * supp f`.
    pub fn translate(&self, x: &Element, f: &FiniteFunction) -> Result<FiniteFunction> {
        let xc = self.involution(x)?;
        let supp = f.support();
        let candidates = self.support_product([&xc], &supp)?;
        let mut out = FiniteFunction::new();
        for y in candidates {
            let m = self.convolve_points(x, &y)?;
            let v: Rational = m.iter().map(|(z, c)| c * &f.get(z)).sum();
            out.add_term(y, &v);
        }
        Ok(out)
    }

    /// `(f *_h g)(x) = Σ_t f(t) (L_ť g)(x) h(t)`.
    pub fn convolve_functions(&self, f: &FiniteFunction, g: &FiniteFunction) -> Result<FiniteFunction> {
        let mut out = FiniteFunction::new();
        for (t, ft) in f.iter() {
            let tc = self.involution(t)?;
            let w = ft * &self.haar(t)?;
            out.add_scaled(&self.translate(&tc, g)?, &w);
        }
        Ok(out)
    }

    /// `f̃(t) = f(ť)`; conjugation is trivial for rational-valued functions.
    pub fn tilde_function(&self, f: &FiniteFunction) -> Result<FiniteFunction> {
        let mut out = FiniteFunction::new();
        for (t, v) in f.iter() {
            out.add_term(self.involution(t)?, v);
        }
        Ok(out)
    }

    /// `h(x) = 1 / (δ_x * δ_x̌)({e})`, so that `h(e) = 1`.
    pub fn haar_weight(&self, x: &Element) -> Result<Rational> {
        let xc = self.involution(x)?;
        let at_identity = self.convolve_points(x, &xc)?.get(&self.identity());
        if !at_identity.is_positive() {
            return Err(Error::Structural(format!(
                "(δ_{x} * δ_{xc})({{e}}) = {at_identity}; identity not in the support (H6)"
            )));
        }
        Ok(at_identity.recip())
    }

    /// Haar weight from the rule's closed form when it has one, otherwise
    /// from [`Hypergroup::haar_weight`].
    pub fn haar(&self, x: &Element) -> Result<Rational> {
        self.check(x)?;
        match self.rule().haar_closed_form(x) {
            Some(h) => Ok(h),
            None => self.haar_weight(x),
        }
    }

    /// `h(A)`, using [`Hypergroup::haar`].
    pub fn haar_mass<'a, I: IntoIterator<Item = &'a Element>>(&self, set: I) -> Result<Rational> {
        let mut total = Rational::zero();
        for x in set {
            total += self.haar(x)?;
        }
        Ok(total)
    }

    /// `Σ_y f(y) h(y)`.
    pub fn integrate(&self, f: &FiniteFunction) -> Result<Rational> {
        let mut total = Rational::zero();
        for (y, v) in f.iter() {
            total += v * &self.haar(y)?;
        }
        Ok(total)
    }

    /// Sorted snapshot of the memoized point convolutions.
    pub fn cache_snapshot(&self) -> Vec<((Element, Element), Measure)> {
        let mut out: Vec<_> = self
            .inner
            .cache
            .read()
            .iter()
            .map(|(k, v)| (k.clone(), (**v).clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn cache_len(&self) -> usize {
        self.inner.cache.read().len()
    }

    /// Seeds the cache with externally provided structure constants. Entries
    /// replace any computed value, so a loaded cache is authoritative.
    pub fn preload_cache<I: IntoIterator<Item = ((Element, Element), Measure)>>(&self, entries: I) -> Result<()> {
        let mut cache = self.inner.cache.write();
        for ((x, y), m) in entries {
            self.check(&x)?;
            self.check(&y)?;
            self.check_measure(&m)?;
            let key = if self.rule().is_commutative() && y < x { (y, x) } else { (x, y) };
            cache.insert(key, Arc::new(m));
        }
        self.inner.preloaded.store(true, Ordering::Relaxed);
        Ok(())
    }
}

/// Parses a comma-separated list of naturals, with or without surrounding
/// parentheses.
pub(crate) fn parse_tuple(input: &str) -> std::result::Result<Vec<u32>, String> {
    let s = input.trim();
    let s = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(s);
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("`{}`: {e}", p.trim())))
        .collect()
}
