use std::collections::BTreeSet;

use anyhow::{bail, Result};
use hypergroup_core::catalog::split_top_level;
use hypergroup_core::growth::ball;
use hypergroup_core::{Element, Hypergroup};

use crate::UsageError;

/// Parses a set spec: `ball:N` (generator ball), `box:N` (box truncation),
/// or a comma list whose items are elements or inclusive ranges `a..b`.
pub fn parse_set(hg: &Hypergroup, spec: &str) -> Result<Vec<Element>> {
    let spec = spec.trim();
    if spec.is_empty() {
        bail!(UsageError("empty set".into()));
    }
    if let Some(n) = spec.strip_prefix("ball:") {
        let n = parse_count(n, spec)?;
        return Ok(ball(hg, &hg.default_generator(), n)?.into_iter().collect());
    }
    if let Some(n) = spec.strip_prefix("box:") {
        let n = parse_count(n, spec)?;
        let radius = u32::try_from(n).map_err(|_| UsageError(format!("box radius too large in `{spec}`")))?;
        return Ok(hg.box_truncation(radius));
    }
    let mut out = BTreeSet::new();
    for item in split_top_level(spec, ',') {
        let item = item.trim();
        if item.is_empty() {
            bail!(UsageError(format!("empty item in set `{spec}`")));
        }
        match item.split_once("..") {
            Some((a, b)) if !item.starts_with(['(', '[']) => {
                let (a, b) = (parse_count(a, item)?, parse_count(b, item)?);
                if a > b {
                    bail!(UsageError(format!("empty range `{item}`")));
                }
                for n in a..=b {
                    out.insert(hg.parse_element(&n.to_string())?);
                }
            }
            _ => {
                out.insert(hg.parse_element(item)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Like [`parse_set`] but without deduplication or sorting; `ball:`/`box:`
/// are not accepted.
pub fn parse_elements(hg: &Hypergroup, spec: &str) -> Result<Vec<Element>> {
    split_top_level(spec.trim(), ',').into_iter().map(|item| Ok(hg.parse_element(item.trim())?)).collect()
}

fn parse_count(text: &str, context: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| UsageError(format!("expected a nonnegative integer in `{context}`, got `{text}`")).into())
}
