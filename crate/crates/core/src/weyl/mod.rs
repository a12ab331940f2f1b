//! Minuscule crystal graphs of (E6, ω1), (E6, ω6) and (E7, ω7).
//!
//! Weights are kept in fundamental-weight coordinates with Bourbaki node
//! numbering. Reduced words are written left to right, so the rightmost
//! letter is the first reflection applied to the highest weight.

mod appendix;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use appendix::{appendix_rows, verify_appendix_tables, AppendixReport, AppendixRow, RowCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    E6,
    E7,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootType::E6 => "E6",
            RootType::E7 => "E7",
        })
    }
}

impl FromStr for RootType {
    type Err = WeylError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E6" | "e6" => Ok(RootType::E6),
            "E7" | "e7" => Ok(RootType::E7),
            _ => Err(WeylError::UnknownType(s.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("unknown root system `{0}` (expected E6 or E7)")]
    UnknownType(String),
    #[error("ω{index} is not minuscule for {kind}; choose one of {options}")]
    NotMinuscule {
        kind: RootType,
        index: usize,
        options: String,
    },
    #[error("cannot parse weight `{0}` (expected w<k>)")]
    BadWeight(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub kind: RootType,
    pub cartan: Vec<Vec<i32>>,
}

impl RootDatum {
    pub fn new(kind: RootType) -> Self {
        let rank = match kind {
            RootType::E6 => 6,
            RootType::E7 => 7,
        };
        // Bourbaki: 1-3-4-5-6(-7) with 2 attached to 4.
        let mut bonds = vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
        if rank == 7 {
            bonds.push((6, 7));
        }
        let mut cartan = vec![vec![0; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in bonds {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        RootDatum { kind, cartan }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Minuscule fundamental weights (1-based).
    pub fn minuscule_weights(&self) -> &'static [usize] {
        match self.kind {
            RootType::E6 => &[1, 6],
            RootType::E7 => &[7],
        }
    }

    /// Node permutation induced by `-w0` (0-based).
    pub fn opposition(&self) -> Vec<usize> {
        match self.kind {
            RootType::E6 => vec![5, 1, 4, 3, 2, 0],
            RootType::E7 => (0..7).collect(),
        }
    }

    /// `s_t(λ) = λ - <λ, α_t^∨> α_t`, with `α_t` the `t`-th Cartan row.
    pub fn reflect(&self, weight: &[i32], t: usize) -> Vec<i32> {
        let c = weight[t];
        weight
            .iter()
            .zip(&self.cartan[t])
            .map(|(w, a)| w - c * a)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub index: usize,
    pub weight: Vec<i32>,
    /// Simple reflections, 1-based, leftmost applied last.
    pub word: Vec<u8>,
    pub length: usize,
}

impl Vertex {
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word.iter().map(|d| d.to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: u8,
}

#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub datum: RootDatum,
    pub weight_index: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    by_weight: HashMap<Vec<i32>, usize>,
}

/// Parses `w1`, `ω7`, `omega6` or a bare number.
pub fn parse_weight_index(s: &str) -> Result<usize, WeylError> {
    let t = s
        .trim_start_matches("omega")
        .trim_start_matches('w')
        .trim_start_matches('ω');
    t.parse().map_err(|_| WeylError::BadWeight(s.to_string()))
}

pub fn build_crystal(datum: &RootDatum, weight_index: usize) -> Result<CrystalGraph, WeylError> {
    let options = datum.minuscule_weights();
    if !options.contains(&weight_index) {
        return Err(WeylError::NotMinuscule {
            kind: datum.kind,
            index: weight_index,
            options: options
                .iter()
                .map(|i| format!("w{i}"))
                .collect::<Vec<_>>()
                .join(", "),
        });
    }
    let n = datum.rank();
    let mut top = vec![0; n];
    top[weight_index - 1] = 1;

    // BFS by length; each vertex keeps the smallest word in application order.
    let mut apply_order: HashMap<Vec<i32>, Vec<u8>> = HashMap::new();
    apply_order.insert(top.clone(), Vec::new());
    let mut layer = vec![top.clone()];
    let mut layers = vec![layer.clone()];
    while !layer.is_empty() {
        let mut next: Vec<Vec<i32>> = Vec::new();
        for w in &layer {
            for t in 0..n {
                if w[t] > 0 {
                    let u = datum.reflect(w, t);
                    let mut word = apply_order[w].clone();
                    word.push(t as u8 + 1);
                    match apply_order.get_mut(&u) {
                        Some(old) if old.len() == word.len() => {
                            if word < *old {
                                *old = word;
                            }
                        }
                        Some(_) => {}
                        None => {
                            apply_order.insert(u.clone(), word);
                            next.push(u);
                        }
                    }
                }
            }
        }
        if !next.is_empty() {
            layers.push(next.clone());
        }
        layer = next;
    }

    let mut vertices = Vec::new();
    for (len, layer) in layers.into_iter().enumerate() {
        let mut vs: Vec<(Vec<u8>, Vec<i32>)> = layer
            .into_iter()
            .map(|w| {
                let mut word = apply_order[&w].clone();
                word.reverse();
                (word, w)
            })
            .collect();
        vs.sort();
        for (word, weight) in vs {
            vertices.push(Vertex {
                index: vertices.len(),
                weight,
                word,
                length: len,
            });
        }
    }
    let by_weight: HashMap<Vec<i32>, usize> = vertices
        .iter()
        .map(|v| (v.weight.clone(), v.index))
        .collect();
    let mut edges = Vec::new();
    for v in &vertices {
        for t in 0..n {
            if v.weight[t] > 0 {
                let u = by_weight[&datum.reflect(&v.weight, t)];
                edges.push(Edge {
                    from: v.index,
                    to: u,
                    label: t as u8 + 1,
                });
            }
        }
    }
    Ok(CrystalGraph {
        datum: datum.clone(),
        weight_index,
        vertices,
        edges,
        by_weight,
    })
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertex_of_weight(&self, w: &[i32]) -> Option<usize> {
        self.by_weight.get(w).copied()
    }

    /// Follows a written word from the highest weight, requiring every step
    /// to raise the length. Returns the vertex reached.
    pub fn follow_word(&self, word: &[u8]) -> Option<usize> {
        let mut w = self.vertices[0].weight.clone();
        for &t in word.iter().rev() {
            let t = t as usize;
            if t == 0 || t > self.datum.rank() || w[t - 1] != 1 {
                return None;
            }
            w = self.datum.reflect(&w, t - 1);
        }
        self.vertex_of_weight(&w)
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == v)
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.to == v)
    }

    /// `{u : u ≤ w}`: vertices with a directed path to `w`.
    pub fn bruhat_interval(&self, w: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([w]);
        let mut queue = VecDeque::from([w]);
        while let Some(v) = queue.pop_front() {
            for e in self.predecessors(v) {
                if seen.insert(e.from) {
                    queue.push_back(e.from);
                }
            }
        }
        seen
    }

    pub fn leq(&self, u: usize, w: usize) -> bool {
        self.bruhat_interval(w).contains(&u)
    }

    /// True when every source-to-sink path has the same length as the sink.
    pub fn is_graded(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.vertices[e.to].length == self.vertices[e.from].length + 1)
            && self.vertices[self.sink()].length == self.max_path_length()
    }

    fn max_path_length(&self) -> usize {
        let mut best = vec![0usize; self.len()];
        for v in 0..self.len() {
            for e in self.successors(v) {
                best[e.to] = best[e.to].max(best[v] + 1);
            }
        }
        best[self.sink()]
    }

    /// Reversing edges and sending each weight `λ` to `-ι(λ)`, with `ι` the
    /// diagram involution fixed by `-w0`, gives an isomorphic graph.
    pub fn is_self_dual(&self) -> bool {
        let iota = self.datum.opposition();
        let dual: HashMap<usize, usize> = self
            .vertices
            .iter()
            .filter_map(|v| {
                let neg: Vec<i32> = (0..v.weight.len()).map(|i| -v.weight[iota[i]]).collect();
                self.vertex_of_weight(&neg).map(|u| (v.index, u))
            })
            .collect();
        if dual.len() != self.len() {
            return false;
        }
        let set: BTreeSet<(usize, usize, u8)> =
            self.edges.iter().map(|e| (e.from, e.to, e.label)).collect();
        self.edges.iter().all(|e| {
            let t = iota[e.label as usize - 1] as u8 + 1;
            set.contains(&(dual[&e.to], dual[&e.from], t))
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!(
            "digraph \"{}_w{}\" {{\n  rankdir=TB;\n",
            self.datum.kind, self.weight_index
        );
        for v in &self.vertices {
            s.push_str(&format!(
                "  v{} [label=\"{}\\n{}\"];\n",
                v.index,
                v.word_string(),
                weight_string(&v.weight)
            ));
        }
        for e in &self.edges {
            s.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", e.from, e.to, e.label));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "type": self.datum.kind.to_string(),
            "weight": format!("w{}", self.weight_index),
            "vertices": self.vertices.iter().map(|v| serde_json::json!({
                "index": v.index,
                "weight": v.weight,
                "word": v.word_string(),
                "length": v.length,
            })).collect::<Vec<_>>(),
            "edges": self.edges,
        })
    }
}

fn weight_string(w: &[i32]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_is_symmetric() {
        for k in [RootType::E6, RootType::E7] {
            let d = RootDatum::new(k);
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    assert_eq!(d.cartan[i][j], d.cartan[j][i]);
                }
            }
        }
    }

    #[test]
    fn e6_w1() {
        let g = build_crystal(&RootDatum::new(RootType::E6), 1).unwrap();
        assert_eq!(g.len(), 27);
        assert_eq!(g.vertices[g.sink()].length, 16);
        assert_eq!(g.follow_word(&[6, 5, 4, 2, 3, 4, 5, 6, 1, 3, 4, 5, 2, 4, 3, 1]), Some(g.sink()));
        assert!(g.is_graded());
        assert!(g.is_self_dual());
        assert_eq!(g.bruhat_interval(g.sink()).len(), 27);
        assert_eq!(g.bruhat_interval(0).len(), 1);
    }

    #[test]
    fn e7_w7() {
        let g = build_crystal(&RootDatum::new(RootType::E7), 7).unwrap();
        assert_eq!(g.len(), 56);
        assert_eq!(g.vertices[g.sink()].length, 27);
        assert!(g.is_graded());
        assert!(g.is_self_dual());
    }

    #[test]
    fn rejects_non_minuscule() {
        let d = RootDatum::new(RootType::E7);
        let e = build_crystal(&d, 1).unwrap_err();
        assert!(e.to_string().contains("w7"));
        assert_eq!(build_crystal(&RootDatum::new(RootType::E6), 6).unwrap().len(), 27);
    }
}
