//! Finite-group ingestion: permutation generators or an explicit Cayley
//! table, closed into a numbered element list (identity first).

use std::collections::{HashMap, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 100_000;

/// On-disk group description.
///
/// Either `degree` + `generators` (one-line permutation images over
/// `0..degree`) or `elements` + `cayley` (a square table of element indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn from_generators(name: &str, degree: usize, generators: Vec<Vec<usize>>) -> Self {
        GroupSpec { name: name.into(), degree: Some(degree), generators: Some(generators), elements: None, cayley: None }
    }

    pub fn from_cayley(name: &str, elements: Vec<String>, cayley: Vec<Vec<usize>>) -> Self {
        GroupSpec { name: name.into(), degree: None, generators: None, elements: Some(elements), cayley: Some(cayley) }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::GroupSpec(e.to_string()))
    }
}

pub fn load_group_spec(path: &Path) -> Result<GroupSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    GroupSpec::parse(&text)
}

#[derive(Clone, Debug)]
enum Table {
    Permutations { elements: Vec<Vec<u32>>, index: HashMap<Vec<u32>, usize> },
    Cayley(Vec<Vec<usize>>),
}

/// A finite group with elements numbered `0..order`, identity at `0`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    table: Table,
    labels: Vec<String>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    /// Indices whose conjugation action generates all inner automorphisms.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Table::Permutations { elements, index } => {
                let (pa, pb) = (&elements[a], &elements[b]);
                let prod: Vec<u32> = pb.iter().map(|&i| pa[i as usize]).collect();
                index[&prod]
            }
            Table::Cayley(t) => t[a][b],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Full multiplication table (row-major), for inspection and hashing.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.multiply(a, b)).collect()).collect()
    }
}

fn perm_label(p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(" "))
}

/// Closes the generators breadth-first (or validates the Cayley table) and
/// numbers the elements deterministically, identity first.
pub fn generate_group(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    match (&spec.generators, &spec.cayley) {
        (Some(gens), None) => from_generators(spec, gens, cap),
        (None, Some(table)) => from_cayley(spec, table, cap),
        (Some(_), Some(_)) => Err(Error::GroupSpec("give either `generators` or `cayley`, not both".into())),
        (None, None) => {
            // The trivial group can be written with a degree and no generators.
            if spec.degree.is_some() {
                from_generators(spec, &[], cap)
            } else {
                Err(Error::GroupSpec("missing `generators` or `cayley`".into()))
            }
        }
    }
}

fn from_generators(spec: &GroupSpec, gens: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    let degree = spec
        .degree
        .or_else(|| gens.first().map(Vec::len))
        .ok_or_else(|| Error::GroupSpec("`degree` is required when there are no generators".into()))?;
    if degree == 0 {
        return Err(Error::GroupSpec("degree must be at least 1".into()));
    }
    let mut perms: Vec<Vec<u32>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.len() != degree {
            return Err(Error::GroupSpec(format!("generator {i} has length {}, expected degree {degree}", g.len())));
        }
        let mut seen = vec![false; degree];
        for &v in g {
            if v >= degree || std::mem::replace(&mut seen[v], true) {
                return Err(Error::GroupSpec(format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        perms.push(g.iter().map(|&v| v as u32).collect());
    }

    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        for s in &perms {
            let prod: Vec<u32> = s.iter().map(|&i| elements[g][i as usize]).collect();
            if !index.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(Error::OrderCap { cap });
                }
                index.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
    }

    let generators: Vec<usize> = perms.iter().map(|p| index[p]).collect();
    let labels = elements.iter().map(|p| perm_label(p)).collect();
    let inverses = elements
        .iter()
        .map(|p| {
            let mut inv = vec![0u32; p.len()];
            for (i, &v) in p.iter().enumerate() {
                inv[v as usize] = i as u32;
            }
            index[&inv]
        })
        .collect();
    Ok(FiniteGroup {
        name: spec.name.clone(),
        table: Table::Permutations { elements, index },
        labels,
        generators,
        inverses,
    })
}

fn from_cayley(spec: &GroupSpec, table: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::GroupValidation("empty Cayley table".into()));
    }
    if n > cap {
        return Err(Error::OrderCap { cap });
    }
    if let Some(labels) = &spec.elements {
        if labels.len() != n {
            return Err(Error::GroupValidation(format!("{} element labels for a {n}×{n} table", labels.len())));
        }
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::GroupValidation(format!("row {r} has length {}, expected {n}", row.len())));
        }
        let mut seen = vec![false; n];
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::GroupValidation(format!("entry ({r},{c}) = {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::GroupValidation(format!("row {r} repeats {v}: not a Latin square")));
            }
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for (r, row) in table.iter().enumerate() {
            if std::mem::replace(&mut seen[row[c]], true) {
                return Err(Error::GroupValidation(format!("column {c} repeats at row {r}: not a Latin square")));
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::GroupValidation("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(Error::GroupValidation(format!("associativity fails at ({a},{b},{c})")));
                }
            }
        }
    }

    // Renumber: identity first, the rest in the given order.
    let order: Vec<usize> = std::iter::once(e).chain((0..n).filter(|&x| x != e)).collect();
    let mut new_index = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let renumbered: Vec<Vec<usize>> =
        order.iter().map(|&a| order.iter().map(|&b| new_index[table[a][b]]).collect()).collect();
    let labels = order
        .iter()
        .map(|&old| spec.elements.as_ref().map_or_else(|| old.to_string(), |l| l[old].clone()))
        .collect();
    let inverses = (0..n).map(|a| (0..n).find(|&b| renumbered[a][b] == 0).expect("Latin square")).collect();
    Ok(FiniteGroup {
        name: spec.name.clone(),
        table: Table::Cayley(renumbered),
        labels,
        generators: (0..n).collect(),
        inverses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_generators() {
        let spec = GroupSpec::from_generators("S3", 3, vec![vec![1, 0, 2], vec![1, 2, 0]]);
        let g = generate_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.label(0), "[0 1 2]");
        for a in 0..6 {
            assert_eq!(g.multiply(a, g.inverse(a)), 0);
            assert_eq!(g.multiply(0, a), a);
        }
    }

    #[test]
    fn trivial_group() {
        let spec = GroupSpec { name: "1".into(), degree: Some(1), generators: Some(vec![]), elements: None, cayley: None };
        assert_eq!(generate_group(&spec, DEFAULT_ORDER_CAP).unwrap().order(), 1);
        let spec = GroupSpec { name: "1".into(), degree: Some(1), generators: None, elements: None, cayley: None };
        assert_eq!(generate_group(&spec, DEFAULT_ORDER_CAP).unwrap().order(), 1);
    }

    fn z4() -> Vec<Vec<usize>> {
        (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect()
    }

    #[test]
    fn cayley_z4_and_corruption() {
        let labels: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let g = generate_group(&GroupSpec::from_cayley("Z4", labels.clone(), z4()), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.inverse(1), 3);

        let mut bad = z4();
        bad[1][2] = 0;
        let err = generate_group(&GroupSpec::from_cayley("Z4", labels, bad), DEFAULT_ORDER_CAP).unwrap_err();
        assert!(matches!(err, Error::GroupValidation(_)), "{err}");
    }

    #[test]
    fn latin_square_that_is_not_associative() {
        // Identity 0; rows are Latin but (1*1)*2 ≠ 1*(1*2).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = generate_group(&GroupSpec::from_cayley("bad", (0..5).map(|i| i.to_string()).collect(), t), 100);
        assert!(matches!(err, Err(Error::GroupValidation(_))));
    }

    #[test]
    fn order_cap() {
        let spec = GroupSpec::from_generators("S5", 5, vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]]);
        assert!(matches!(generate_group(&spec, 50), Err(Error::OrderCap { cap: 50 })));
        assert_eq!(generate_group(&spec, 120).unwrap().order(), 120);
    }

    #[test]
    fn rejects_non_permutation() {
        let spec = GroupSpec::from_generators("x", 3, vec![vec![0, 0, 1]]);
        assert!(matches!(generate_group(&spec, 10), Err(Error::GroupSpec(_))));
    }

    #[test]
    fn parses_json() {
        let spec = GroupSpec::parse(r#"{"name":"S3","degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(spec.generators.unwrap().len(), 2);
        assert!(GroupSpec::parse(r#"{"name":"S3","degree":3,"gens":[]}"#).is_err());
    }
}
