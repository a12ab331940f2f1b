//! Golden rows of the minuscule tables and the comparison against a
//! computed crystal.

use serde::Serialize;

use super::{CrystalGraph, RootType};

const TABLE: &str = include_str!("../../data/appendix_b.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixRow {
    pub kind: RootType,
    pub node: usize,
    /// Bourbaki order.
    pub weight: Vec<i32>,
    pub word: Vec<u8>,
    pub gorenstein: bool,
    pub dim: usize,
}

impl AppendixRow {
    /// Rows whose printed weight has an entry outside {-1, 0, 1} cannot be
    /// weights of a minuscule orbit.
    pub fn weight_conforms(&self) -> bool {
        self.weight.iter().all(|x| x.abs() <= 1)
    }
}

/// Parses lines `TYPE node a b c d e [f] | c2 word gor dim`, where the
/// first block lists ω1, ω3, ω4, ... and the value after `|` is ω2.
fn parse_row(line: &str) -> Option<AppendixRow> {
    let line = line.split('#').next()?.trim();
    if line.is_empty() {
        return None;
    }
    let (left, right) = line.split_once('|')?;
    let mut l = left.split_whitespace();
    let kind: RootType = l.next()?.parse().ok()?;
    let node = l.next()?.parse().ok()?;
    let top: Vec<i32> = l.map(|x| x.parse().ok()).collect::<Option<_>>()?;
    let mut r = right.split_whitespace();
    let center: i32 = r.next()?.parse().ok()?;
    let word_s = r.next()?;
    let gorenstein = r.next()? == "yes";
    let dim = r.next()?.parse().ok()?;
    let mut weight = vec![top[0], center];
    weight.extend_from_slice(&top[1..]);
    let word = if word_s == "e" {
        Vec::new()
    } else {
        word_s.bytes().map(|b| b - b'0').collect()
    };
    Some(AppendixRow {
        kind,
        node,
        weight,
        word,
        gorenstein,
        dim,
    })
}

pub fn appendix_rows(kind: RootType) -> Vec<AppendixRow> {
    TABLE
        .lines()
        .filter_map(parse_row)
        .filter(|r| r.kind == kind)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub node: usize,
    /// Vertex located by weight, or by word when the weight does not conform.
    pub vertex: Option<usize>,
    pub weight_conforms: bool,
    pub weight_ok: bool,
    /// The printed word is a reduced word of the located vertex.
    pub word_ok: bool,
    pub length_ok: bool,
}

impl RowCheck {
    pub fn ok(&self) -> bool {
        self.vertex.is_some()
            && self.word_ok
            && self.length_ok
            && (self.weight_ok || !self.weight_conforms)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub kind: RootType,
    pub rows: Vec<RowCheck>,
    pub mismatches: Vec<String>,
    /// Every vertex is matched by exactly one row.
    pub bijective: bool,
}

impl AppendixReport {
    pub fn matched(&self) -> usize {
        self.rows.iter().filter(|r| r.ok()).count()
    }

    /// Table node number to vertex index, for rows that located a vertex.
    pub fn node_map(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .filter_map(|r| r.vertex.map(|v| (r.node, v)))
            .collect()
    }
}

pub fn verify_appendix_tables(g: &CrystalGraph, rows: &[AppendixRow]) -> AppendixReport {
    let mut checks = Vec::new();
    let mut mismatches = Vec::new();
    for row in rows {
        let by_weight = g.vertex_of_weight(&row.weight);
        let by_word = g.follow_word(&row.word);
        let vertex = by_weight.or(by_word);
        let c = RowCheck {
            node: row.node,
            vertex,
            weight_conforms: row.weight_conforms(),
            weight_ok: by_weight.is_some() && by_weight == vertex,
            word_ok: by_word.is_some() && by_word == vertex,
            length_ok: vertex.is_some_and(|v| {
                g.vertices[v].length == row.dim && row.word.len() == row.dim
            }),
        };
        if !c.ok() {
            let mut why = Vec::new();
            if vertex.is_none() {
                why.push("no vertex has this weight or word".to_string());
            }
            if row.weight_conforms() && !c.weight_ok {
                why.push("weight".to_string());
            }
            if !row.weight_conforms() {
                why.push(format!("weight {:?} is not minuscule", row.weight));
            }
            if !c.word_ok {
                why.push("word is not a reduced word of the vertex".to_string());
            }
            if !c.length_ok {
                why.push("length".to_string());
            }
            mismatches.push(format!("{} row {}: {}", row.kind, row.node, why.join(", ")));
        } else if !row.weight_conforms() {
            mismatches.push(format!(
                "{} row {}: weight {:?} is not minuscule (word and length match)",
                row.kind, row.node, row.weight
            ));
        }
        checks.push(c);
    }
    let mut hit = vec![0usize; g.len()];
    for c in &checks {
        if let Some(v) = c.vertex {
            hit[v] += 1;
        }
    }
    AppendixReport {
        kind: g.datum.kind,
        bijective: checks.len() == g.len() && hit.iter().all(|&h| h == 1),
        rows: checks,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{build_crystal, RootDatum};

    #[test]
    fn e6_table_matches() {
        let g = build_crystal(&RootDatum::new(RootType::E6), 1).unwrap();
        let rows = appendix_rows(RootType::E6);
        assert_eq!(rows.len(), 27);
        let rep = verify_appendix_tables(&g, &rows);
        assert_eq!(rep.matched(), 27, "{:?}", rep.mismatches);
        assert!(rep.bijective);
    }

    #[test]
    fn corrupted_row_is_reported() {
        let g = build_crystal(&RootDatum::new(RootType::E6), 1).unwrap();
        let mut rows = appendix_rows(RootType::E6);
        rows[16].dim = 12;
        let rep = verify_appendix_tables(&g, &rows);
        assert_eq!(rep.matched(), 26);
        assert!(rep.mismatches[0].contains("row 17"));
    }
}
