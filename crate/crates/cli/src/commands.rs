use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use hypergroup_core::amenability::{
    ball_family, bai_certificate, check_f_implies_sf, check_sf_implies_l, folner_ratio, folner_to_reiter,
    haar_level_set, leptin_ratio, leptin_search, nested_boxes, rational_sqrt, reiter_deficiency,
    strong_folner_ratio, ReiterExponent,
};
use hypergroup_core::catalog::{cache_load, cache_store, descriptor_hash, split_top_level};
use hypergroup_core::growth::{ball, d_leptin_estimate, growth_series, su3_bounds_check, GrowthRow};
use hypergroup_core::hypercore::verify_axioms;
use hypergroup_core::{Element, Hypergroup, Rational};
use rayon::prelude::*;

use crate::output::{Record, Table, Value};
use crate::selector::Selector;
use crate::sets::{parse_elements, parse_set};
use crate::{CacheAction, Command, HgArg, UsageError};

pub struct Outcome {
    pub record: Record,
    /// False when a property or validation check failed.
    pub ok: bool,
}

impl Outcome {
    fn ok(record: Record) -> Self {
        Outcome { record, ok: true }
    }
}

fn build(hg: &HgArg) -> Result<Hypergroup> {
    Selector::parse(&hg.hypergroup)?.build()
}

fn join(xs: &[Element]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn generator(hg: &Hypergroup, spec: Option<&str>) -> Result<Vec<Element>> {
    match spec {
        Some(s) => parse_set(hg, s),
        None => Ok(hg.default_generator()),
    }
}

pub fn dispatch(command: &Command, echo: String) -> Result<Outcome> {
    match command {
        Command::Convolve { hg, x, y } => convolve(&build(hg)?, x, y, echo),
        Command::Axioms { hg, ball, box_radius, truncation, cache } => {
            axioms(&build(hg)?, *ball, *box_radius, truncation.as_deref(), cache.as_deref(), echo)
        }
        Command::Growth { hg, generator: g, nmax, norm_exp } => {
            let hg = build(hg)?;
            let gen = generator(&hg, g.as_deref())?;
            growth(&hg, &gen, *nmax, *norm_exp, echo)
        }
        Command::Leptin { hg, k, family, budget, d, epsilon } => {
            leptin(&build(hg)?, k, family, *budget, d, epsilon, echo)
        }
        Command::Folner { hg, x, k, v } => folner(&build(hg)?, x.as_deref(), k.as_deref(), v, echo),
        Command::Reiter { hg, v, e, r } => reiter(&build(hg)?, v, e, *r, echo),
        Command::Certificate { hg, k, v } => certificate(&build(hg)?, k, v, echo),
        Command::Levelset { hg, m, radius } => levelset(&build(hg)?, m, *radius, echo),
        Command::Cache { hg, action, path, box_radius, cache_dir } => {
            let hg = build(hg)?;
            let path = path.clone().unwrap_or_else(|| default_cache_path(&hg, cache_dir));
            match action {
                CacheAction::Store => cache_store_cmd(&hg, &path, *box_radius, cache_dir, echo),
                CacheAction::Load => cache_load_cmd(&hg, &path, echo),
            }
        }
        Command::Bounds { nmax } => bounds(*nmax, echo),
        Command::Dleptin { hg, k, generator: g, lmax, d } => {
            let hg = build(hg)?;
            let gen = generator(&hg, g.as_deref())?;
            dleptin(&hg, k, &gen, *lmax, d.clone(), echo)
        }
    }
}

fn convolve(hg: &Hypergroup, x: &str, y: &str, echo: String) -> Result<Outcome> {
    let (x, y) = (hg.parse_element(x)?, hg.parse_element(y)?);
    let m = hg.convolve_points(&x, &y)?;
    let mut record = Record::new(echo, hg.descriptor());
    record.field("result", m.to_string());
    let mut table = Table::new(&["element", "mass"]);
    for (z, c) in m.iter() {
        table.push(vec![z.to_string().into(), c.into()]);
    }
    record.table = Some(table);
    Ok(Outcome::ok(record))
}

fn axioms(
    hg: &Hypergroup,
    ball_radius: Option<usize>,
    box_radius: Option<u32>,
    truncation: Option<&str>,
    cache: Option<&Path>,
    echo: String,
) -> Result<Outcome> {
    let mut record = Record::new(echo, hg.descriptor());
    if let Some(path) = cache {
        let loaded = cache_load(path, hg)?;
        loaded.install(hg)?;
        record.field("cache_records", loaded.records.len());
    }
    let (label, t) = match (ball_radius, box_radius, truncation) {
        (Some(n), _, _) => (format!("ball:{n}"), ball(hg, &hg.default_generator(), n)?.into_iter().collect()),
        (_, Some(r), _) => (format!("box:{r}"), hg.box_truncation(r)),
        (_, _, Some(spec)) => (spec.to_string(), parse_set(hg, spec)?),
        _ if hg.rule().order().is_some() => ("all".to_string(), hg.box_truncation(0)),
        _ => ("ball:3".to_string(), ball(hg, &hg.default_generator(), 3)?.into_iter().collect()),
    };
    let report = verify_axioms(hg, &t);
    record.field("truncation", label).field("truncation_size", report.truncation_size).field("all_passed", report.all_passed());
    let mut table = Table::new(&["axiom", "checked", "status", "counterexample"]);
    for o in &report.outcomes {
        table.push(vec![
            o.axiom.label().into(),
            Value::Int(o.checked),
            if o.passed() { "pass" } else { "FAIL" }.into(),
            o.counterexample.clone().unwrap_or_default().into(),
        ]);
    }
    record.table = Some(table);
    Ok(Outcome { ok: report.all_passed(), record })
}

fn growth_table(rows: &[GrowthRow]) -> Table {
    let mut table = Table::new(&["n", "size", "haar", "normalized"]);
    for r in rows {
        table.push(vec![
            r.n.into(),
            r.size.into(),
            (&r.haar).into(),
            r.normalized.as_ref().map_or_else(|| Value::text(""), Value::from),
        ]);
    }
    table
}

fn growth(hg: &Hypergroup, gen: &[Element], nmax: usize, d: u32, echo: String) -> Result<Outcome> {
    let report = growth_series(hg, gen, nmax, d)?;
    let mut record = Record::new(echo, hg.descriptor());
    record.field("generator", join(gen)).field("norm_exp", d as usize);
    record.table = Some(growth_table(&report.rows));
    Ok(Outcome::ok(record))
}

fn family(hg: &Hypergroup, spec: &str, budget: usize) -> Result<Vec<Vec<Element>>> {
    match spec.trim() {
        "balls" => ball_family(hg, &hg.default_generator())?.take(budget).collect::<hypergroup_core::Result<_>>().map_err(Into::into),
        "boxes" => Ok((1..=budget as u32).map(|r| hg.box_truncation(r)).collect()),
        list => split_top_level(list, ';').into_iter().map(|s| parse_set(hg, s)).collect(),
    }
}

fn leptin(
    hg: &Hypergroup,
    k: &str,
    family_spec: &str,
    budget: usize,
    d: &Rational,
    epsilon: &Rational,
    echo: String,
) -> Result<Outcome> {
    if budget == 0 {
        return Err(UsageError("--budget must be at least 1".into()).into());
    }
    let k = parse_set(hg, k)?;
    let candidates = family(hg, family_spec, budget)?;
    let search = leptin_search(hg, &k, candidates.into_iter().map(Ok), d, epsilon, budget)?;
    let mut record = Record::new(echo, hg.descriptor());
    record
        .field("K", join(&k))
        .field("family", family_spec)
        .field("examined", search.examined)
        .field("best_index", search.index)
        .field("best_size", search.v.len())
        .field("best_ratio", &search.ratio)
        .field("target", &search.target)
        .field("certified", search.certified)
        .field("first_certifying", search.first_certifying.map_or_else(|| "none".to_string(), |n| n.to_string()));
    Ok(Outcome { ok: search.certified, record })
}

fn folner(hg: &Hypergroup, x: Option<&str>, k: Option<&str>, v: &str, echo: String) -> Result<Outcome> {
    let v = parse_set(hg, v)?;
    let mut record = Record::new(echo, hg.descriptor());
    record.field("V_size", v.len()).field("haar_V", hg.haar_mass(&v)?);
    if let Some(x) = x {
        let x = hg.parse_element(x)?;
        record.field("x", x.to_string()).field("folner", folner_ratio(hg, &x, &v)?.value);
        return Ok(Outcome::ok(record));
    }
    let k = parse_set(hg, k.expect("clap requires --x or --K"))?;
    let lep = leptin_ratio(hg, &k, &v)?;
    let sf = strong_folner_ratio(hg, &k, &v)?;
    let sf_l = check_sf_implies_l(hg, &k, &v)?;
    let (_, total, f_sf) = check_f_implies_sf(hg, &k, &v)?;
    record
        .field("K", join(&k))
        .field("leptin", lep.value)
        .field("strong_folner", sf.value)
        .field("pointwise_sum", total)
        .field("leptin_minus_one_le_strong_folner", sf_l.holds)
        .field("strong_folner_le_pointwise_sum", f_sf);
    let mut table = Table::new(&["x", "folner"]);
    for x in &k {
        table.push(vec![x.to_string().into(), folner_ratio(hg, x, &v)?.value.into()]);
    }
    record.table = Some(table);
    Ok(Outcome { ok: sf_l.holds && f_sf, record })
}

fn reiter(hg: &Hypergroup, v: &str, e: &str, r: u32, echo: String) -> Result<Outcome> {
    let v = parse_set(hg, v)?;
    let e = parse_set(hg, e)?;
    let r = ReiterExponent::from_u32(r)?;
    let f = folner_to_reiter(hg, &v, r)?;
    let report = reiter_deficiency(hg, &f, &e, r)?;
    let mut record = Record::new(echo, hg.descriptor());
    record
        .field("r", r.as_u32() as usize)
        .field("haar_V", hg.haar_mass(&v)?)
        .field("deficiency_sq", &report.deficiency_sq);
    match report.deficiency_exact() {
        Some(q) => record.field("deficiency", q),
        None => record.field("deficiency", Value::Approx(report.deficiency_f64())),
    };
    let mut table = Table::new(&["x", "deficiency_sq"]);
    for (x, d) in &report.per_element {
        table.push(vec![x.to_string().into(), d.into()]);
    }
    record.table = Some(table);
    Ok(Outcome::ok(record))
}

fn certificate(hg: &Hypergroup, k: &str, v: &str, echo: String) -> Result<Outcome> {
    let k = parse_set(hg, k)?;
    let v = parse_set(hg, v)?;
    let cert = bai_certificate(hg, &k, &v)?;
    let mut record = Record::new(echo, hg.descriptor());
    record.field("K", join(&cert.k)).field("V_size", cert.v.len()).field("bound_sq", &cert.bound_sq);
    match rational_sqrt(&cert.bound_sq) {
        Some(q) => record.field("bound", q),
        None => record.field("bound", Value::Approx(cert.bound_sq.to_f64().sqrt())),
    };
    record.field("support_size", cert.u.len());
    let mut table = Table::new(&["element", "u"]);
    for (x, c) in cert.u.iter() {
        table.push(vec![x.to_string().into(), c.into()]);
    }
    record.table = Some(table);
    Ok(Outcome::ok(record))
}

fn levelset(hg: &Hypergroup, m: &Rational, radius: u32, echo: String) -> Result<Outcome> {
    let report = haar_level_set(hg, m, &nested_boxes(hg, radius))?;
    let mut record = Record::new(echo, hg.descriptor());
    record.field("M", m).field("count", report.count()).field("verdict", report.verdict.to_string());
    let mut table = Table::new(&["truncation_size", "count", "max_haar"]);
    for r in &report.rows {
        table.push(vec![r.size.into(), r.count.into(), (&r.max_haar).into()]);
    }
    record.table = Some(table);
    Ok(Outcome::ok(record))
}

fn default_cache_path(hg: &Hypergroup, dir: &Path) -> PathBuf {
    dir.join(format!("{}.json", &descriptor_hash(hg.descriptor())[..16]))
}

fn cache_store_cmd(hg: &Hypergroup, path: &Path, radius: u32, dir: &Path, echo: String) -> Result<Outcome> {
    let t = hg.box_truncation(radius);
    t.par_iter().try_for_each(|x| t.iter().try_for_each(|y| hg.convolve_points(x, y).map(drop)))?;
    if path.parent() == Some(dir) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let hash = cache_store(hg, path)?;
    let mut record = Record::new(echo, hg.descriptor());
    record.field("path", path.display().to_string()).field("hash", hash).field("records", hg.cache_len());
    Ok(Outcome::ok(record))
}

fn cache_load_cmd(hg: &Hypergroup, path: &Path, echo: String) -> Result<Outcome> {
    let cache = cache_load(path, hg)?;
    cache.install(hg)?;
    let mut record = Record::new(echo, hg.descriptor());
    record
        .field("status", "cache ok")
        .field("path", path.display().to_string())
        .field("hash", cache.hash.clone())
        .field("records", cache.records.len());
    Ok(Outcome::ok(record))
}

fn bounds(nmax: usize, echo: String) -> Result<Outcome> {
    let report = su3_bounds_check(nmax)?;
    let mut record = Record::new(echo, "su3dual");
    record
        .field("lower", &report.lower)
        .field("upper", &report.upper)
        .field("min_n", report.min.0)
        .field("min", &report.min.1)
        .field("max_n", report.max.0)
        .field("max", &report.max.1)
        .field("holds", report.holds())
        .field("note", report.note);
    record.table = Some(growth_table(&report.rows));
    Ok(Outcome { ok: report.holds(), record })
}

fn dleptin(hg: &Hypergroup, k: &str, gen: &[Element], lmax: usize, d: Option<Rational>, echo: String) -> Result<Outcome> {
    let k = parse_elements(hg, k)?;
    let report = d_leptin_estimate(hg, &k, gen, lmax, d)?;
    let mut record = Record::new(echo, hg.descriptor());
    record
        .field("K", join(&k))
        .field("generator", join(gen))
        .field("containing_radius", report.containing_radius)
        .field("sup_l", report.sup.0)
        .field("sup", &report.sup.1)
        .field("last", &report.last);
    if let (Some(bound), Some(within)) = (&report.bound, report.within_bound) {
        record.field("D", bound).field("within_bound", within);
    }
    let mut table = Table::new(&["l", "ratio"]);
    for (l, q) in &report.rows {
        table.push(vec![(*l).into(), q.into()]);
    }
    record.table = Some(table);
    Ok(Outcome { ok: report.within_bound != Some(false), record })
}
