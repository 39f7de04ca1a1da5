use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hypergroup_core::catalog::{
    build_chebyshev, build_conjugacy, build_product, build_su2_dual, build_su3_dual, generate_group,
    load_group_spec, split_top_level, DEFAULT_ORDER_CAP,
};
use hypergroup_core::Hypergroup;

use crate::UsageError;

pub const GROUP_DIR_ENV: &str = "HYPERGROUP_GROUP_DIR";

/// Parsed form of a `--hypergroup` argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Su2Dual,
    Su3Dual,
    Chebyshev(usize),
    Conjugacy(String),
    Product(Vec<Selector>),
}

impl Selector {
    pub fn parse(input: &str) -> Result<Self> {
        Self::parse_at(input.trim(), 0)
    }

    fn parse_at(input: &str, depth: usize) -> Result<Self> {
        let usage = |msg: String| UsageError(msg);
        let s = strip_parens(input);
        if s == "su2dual" {
            return Ok(Selector::Su2Dual);
        }
        if s == "su3dual" {
            return Ok(Selector::Su3Dual);
        }
        if let Some(d) = s.strip_prefix("chebyshev:") {
            let d: usize = d.trim().parse().map_err(|_| usage(format!("bad chebyshev dimension `{d}`")))?;
            return Ok(Selector::Chebyshev(d));
        }
        if let Some(path) = s.strip_prefix("conjugacy:") {
            if path.trim().is_empty() {
                bail!(usage("conjugacy needs a group-spec path".into()));
            }
            return Ok(Selector::Conjugacy(path.trim().to_string()));
        }
        if let Some(rest) = s.strip_prefix("product:") {
            if depth > 1 {
                bail!(usage(format!("products nest at most one level deep: `{input}`")));
            }
            let parts = split_top_level(rest, ',');
            if parts.len() < 2 {
                bail!(usage(format!("a product needs at least two factors: `{input}`")));
            }
            let factors = parts.iter().map(|p| Self::parse_at(p.trim(), depth + 1)).collect::<Result<_>>()?;
            return Ok(Selector::Product(factors));
        }
        bail!(usage(format!(
            "unknown hypergroup `{input}` (expected su2dual, su3dual, chebyshev:<d>, conjugacy:<path> or product:<a>,<b>)"
        )))
    }

    pub fn build(&self) -> Result<Hypergroup> {
        Ok(match self {
            Selector::Su2Dual => build_su2_dual(),
            Selector::Su3Dual => build_su3_dual(),
            Selector::Chebyshev(d) => build_chebyshev(*d)?,
            Selector::Conjugacy(path) => {
                let path = resolve_group_path(path)?;
                let spec = load_group_spec(&path)?;
                let group = generate_group(&spec, DEFAULT_ORDER_CAP)?;
                build_conjugacy(&group)
            }
            Selector::Product(factors) => build_product(factors.iter().map(Selector::build).collect::<Result<_>>()?)?,
        })
    }
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if !t.starts_with('(') || !t.ends_with(')') {
        return t;
    }
    let mut depth = 0i32;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && i + 1 < t.len() {
            return t;
        }
    }
    t[1..t.len() - 1].trim()
}

/// Looks for a group spec as given, then under `$HYPERGROUP_GROUP_DIR`, then
/// under `./data/groups`.
pub fn resolve_group_path(name: &str) -> Result<PathBuf> {
    let direct = Path::new(name);
    let mut candidates = vec![direct.to_path_buf()];
    if direct.is_relative() {
        if let Some(dir) = std::env::var_os(GROUP_DIR_ENV) {
            candidates.push(Path::new(&dir).join(name));
        }
        candidates.push(Path::new("data/groups").join(name));
    }
    candidates
        .iter()
        .find(|p| p.is_file())
        .cloned()
        .ok_or_else(|| UsageError(format!("group spec `{name}` not found")))
        .with_context(|| format!("searched {}", candidates.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", ")))
}
