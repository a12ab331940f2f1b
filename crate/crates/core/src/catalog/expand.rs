//! Generator tokens of the catalog text.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::complexes::{minors2, pfaffian, submaximal_pfaffians};
use crate::field::Rationals;
use crate::poly::{Polynomial, Ring};
use crate::weyl::{appendix_rows, build_crystal, verify_appendix_tables, CrystalGraph, RootDatum, RootType};

use super::{poly_err, Catalog, CatalogError, Labelling, Poly};

/// `x27..x6` as `("x", 27, 6)`.
pub(super) fn parse_range(t: &str) -> Option<(String, u32, u32)> {
    let (a, b) = t.split_once("..")?;
    let split = |s: &str| {
        let i = s.find(|c: char| c.is_ascii_digit())?;
        Some((s[..i].to_string(), s[i..].parse::<u32>().ok()?))
    };
    let (pa, na) = split(a.trim())?;
    let (pb, nb) = split(b.trim())?;
    (pa == pb && !pa.is_empty()).then_some((pa, na, nb))
}

/// Inclusive, in either direction.
pub(super) fn range(a: u32, b: u32) -> Box<dyn Iterator<Item = u32>> {
    if a <= b {
        Box::new(a..=b)
    } else {
        Box::new((b..=a).rev())
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.into_iter().filter(|t| !t.is_empty()).collect()
}

fn macro_arg<'a>(t: &'a str, name: &str) -> Option<&'a str> {
    t.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')').map(str::trim)
}

fn cubic_in(cat: &Catalog, ring: &Ring<Rationals>) -> Result<Poly, CatalogError> {
    match ring.name() {
        "E7" => Ok(cat.get_cubic(Labelling::E7)),
        "E6" => Ok(cat.get_cubic(Labelling::E6)),
        "E6L" => Ok(cat.get_cubic(Labelling::E6D5)),
        "E6D5" => cat.cell_specialize(&cat.get_cubic(Labelling::E6D5)),
        n => Err(CatalogError::UnknownRing(n.to_string())),
    }
}

fn derivative_in(cat: &Catalog, ring: &Ring<Rationals>, i: usize) -> Result<Poly, CatalogError> {
    match ring.name() {
        "E7" => cat.get_derivative(Labelling::E7, i),
        "E6" => cat.get_derivative(Labelling::E6, i),
        "E6L" => cat.get_derivative(Labelling::E6D5, i),
        "E6D5" => cat.cell_specialize(&cat.get_derivative(Labelling::E6D5, i)?),
        n => Err(CatalogError::UnknownRing(n.to_string())),
    }
}

/// Expands one comma-separated generator line of entry `key`.
pub fn expand_tokens(
    cat: &Catalog,
    key: &str,
    ring: &Ring<Rationals>,
    line: &str,
) -> Result<Vec<Poly>, CatalogError> {
    let mut out = Vec::new();
    for t in split_top_level(line) {
        if let Some(m) = t.strip_prefix('@') {
            if m == "Q" {
                out.push(cubic_in(cat, ring)?);
            } else if m == "bruhat" {
                let node = cat.entry(key)?.node();
                out.extend(bruhat_generators(cat, node)?);
            } else if let Some(name) = macro_arg(m, "minors2") {
                out.extend(minors2(&cat.matrix(key, name)?)?);
            } else if let Some(name) = macro_arg(m, "subpf") {
                out.extend(submaximal_pfaffians(&cat.matrix(key, name)?)?);
            } else if let Some(name) = macro_arg(m, "pf") {
                out.push(pfaffian(&cat.matrix(key, name)?)?);
            } else if let Some(prod) = macro_arg(m, "entries") {
                let mut factors = prod.split('*').map(str::trim);
                let first = factors.next().unwrap_or_default();
                let mut acc = cat.matrix(key, first)?;
                for f in factors {
                    acc = acc.mul(&cat.matrix(key, f)?)?;
                }
                out.extend(acc.entries().iter().cloned());
            } else if let Some((p, a, b)) = parse_range(m).filter(|r| r.0 == "f") {
                let _ = p;
                for i in range(a, b) {
                    out.push(derivative_in(cat, ring, i as usize)?);
                }
            } else if let Some(i) = m.strip_prefix('f').and_then(|n| n.parse::<usize>().ok()) {
                out.push(derivative_in(cat, ring, i)?);
            } else {
                return Err(CatalogError::BadData(format!("{key}: unknown macro `@{m}`")));
            }
        } else if let Some((p, a, b)) = parse_range(t) {
            for i in range(a, b) {
                let v = format!("{p}{i}");
                out.push(Polynomial::var_named(ring, &v).map_err(poly_err(format!("{key}: {v}")))?);
            }
        } else {
            out.push(Polynomial::parse(ring, t).map_err(poly_err(format!("{key}: `{t}`")))?);
        }
    }
    Ok(out)
}

struct E6Graph {
    graph: CrystalGraph,
    vertex_of_node: HashMap<usize, usize>,
}

fn e6_graph() -> &'static E6Graph {
    static G: OnceLock<E6Graph> = OnceLock::new();
    G.get_or_init(|| {
        let graph = build_crystal(&RootDatum::new(RootType::E6), 1).expect("w1 is minuscule");
        let report = verify_appendix_tables(&graph, &appendix_rows(RootType::E6));
        let vertex_of_node = report.node_map().into_iter().collect();
        E6Graph { graph, vertex_of_node }
    })
}

/// Generators of the cell ideal of node `l`: one per node `v` not below
/// `l`. A `y` coordinate contributes itself; a `z` or `zb` coordinate
/// contributes the derivative at its partner, restricted to the cell.
pub fn bruhat_generators(cat: &Catalog, l: usize) -> Result<Vec<Poly>, CatalogError> {
    let g = e6_graph();
    let missing = |n: usize| CatalogError::BadData(format!("node {n} has no crystal vertex"));
    let w = *g.vertex_of_node.get(&l).ok_or_else(|| missing(l))?;
    let ring = cat.ring("E6D5")?;
    let mut out = Vec::new();
    for v in 1..=27 {
        let u = *g.vertex_of_node.get(&v).ok_or_else(|| missing(v))?;
        if g.graph.leq(u, w) {
            continue;
        }
        let label = cat.label(v);
        if label.starts_with('y') {
            out.push(Polynomial::var_named(&ring, label).map_err(poly_err(label.to_string()))?);
        } else if label.starts_with('z') {
            let p = cat
                .partner(v)
                .ok_or_else(|| CatalogError::BadData(format!("node {v} ({label}) has no partner")))?;
            out.push(cat.cell_specialize(&cat.get_derivative(Labelling::E6D5, p)?)?);
        } else {
            return Err(CatalogError::BadData(format!("node {v} ({label}) is never outside an interval")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_splitting() {
        assert_eq!(parse_range("x27..x6"), Some(("x".into(), 27, 6)));
        assert_eq!(parse_range("f1..f22"), Some(("f".into(), 1, 22)));
        assert_eq!(parse_range("x1*x2"), None);
        assert_eq!(range(3, 1).collect::<Vec<_>>(), vec![3, 2, 1]);
        assert_eq!(split_top_level("@minors2(M), a, @entries(X*Y)"), vec!["@minors2(M)", "a", "@entries(X*Y)"]);
    }
}
