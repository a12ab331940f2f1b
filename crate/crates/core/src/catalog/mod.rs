//! Embedded catalog of Schubert-cell ideals of E6/P1 and E7/P7, their
//! cubic invariants and derivatives, and the expected invariants.

mod expand;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::complexes::{
    eagon_northcott, koszul_complex, parse_betti_rows, parse_resolution, pfaffian_complex, tensor,
    BettiTable, ComplexError, GradedFreeComplex, Matrix,
};
use crate::field::Rationals;
use crate::groebner::{Ideal, IdealError};
use crate::hilbert::UniPoly;
use crate::poly::{AmbientRing, PolyError, Polynomial, Ring, VarImage};
use crate::weyl::{appendix_rows, RootType};

pub use expand::expand_tokens;

const DATA: &str = include_str!("../../data/catalog.txt");

pub type Poly = Polynomial<Rationals>;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("entry {key} has no matrix `{name}`")]
    UnknownMatrix { key: String, name: String },
    #[error("{context}: {source}")]
    Poly { context: String, source: PolyError },
    #[error("malformed catalog data: {0}")]
    BadData(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    NotEqual(String),
}

/// Variable labelling of the cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Labelling {
    /// E6 cubic in `x1..x27`.
    E6,
    /// E6 cubic in D5 labels `x, z_i, zb_i, y_*`.
    E6D5,
    /// E7 cubic in `x1..x27`.
    E7,
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Labelling::E6 => "E6",
            Labelling::E6D5 => "E6D5",
            Labelling::E7 => "E7",
        })
    }
}

impl FromStr for Labelling {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E6" => Ok(Labelling::E6),
            "E6D5" => Ok(Labelling::E6D5),
            "E7" => Ok(Labelling::E7),
            _ => Err(CatalogError::UnknownRing(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Block {
    header: String,
    fields: Vec<(String, String)>,
}

impl Block {
    fn get(&self, k: &str) -> Option<&str> {
        self.fields.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str())
    }

    fn all(&self, k: &str) -> Vec<&str> {
        self.fields
            .iter()
            .filter(|(a, _)| a == k)
            .map(|(_, v)| v.as_str())
            .collect()
    }
}

fn parse_blocks(s: &str) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for line in s.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(h) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            out.push(Block {
                header: h.to_string(),
                fields: Vec::new(),
            });
        } else if let (Some(b), Some((k, v))) = (out.last_mut(), line.split_once('=')) {
            b.fields.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    out
}

/// Expected invariants transcribed from the tables.
#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub codim: Option<usize>,
    pub dim: Option<usize>,
    #[serde(serialize_with = "ser_display_opt")]
    pub h_vector: Option<UniPoly>,
    pub description: Option<String>,
    /// Gorenstein column of the minuscule table for the same node.
    pub gorenstein_table: Option<bool>,
    #[serde(skip)]
    pub resolution: Option<BettiTable>,
    #[serde(skip)]
    pub core_resolution: Option<BettiTable>,
    #[serde(skip)]
    pub betti: Option<BettiTable>,
    pub ranks: Option<Vec<usize>>,
    pub core_ranks: Option<Vec<usize>>,
    /// `(g, max n_gj, min n_1j)`.
    pub licci: Option<(usize, i64, i64)>,
    /// Values known to differ from the table, each backed by a ledger line.
    pub pinned: Pinned,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Pinned {
    pub codim: Option<usize>,
    #[serde(serialize_with = "ser_display_opt")]
    pub h_vector: Option<UniPoly>,
    pub gorenstein: Option<bool>,
}

fn ser_display_opt<S: serde::Serializer>(v: &Option<UniPoly>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

impl Expected {
    /// Gorenstein according to the description tag, when it says so.
    pub fn gorenstein_from_description(&self) -> Option<bool> {
        let d = self.description.as_deref()?;
        let plain_ci = d.starts_with("c.i. of type") && !d.contains(" in ");
        if d.contains("Gorenstein") || plain_ci || d.contains("Huneke-Ulrich") {
            Some(true)
        } else if d.contains("almost c.i.") || d.starts_with("Linked to") {
            Some(false)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub ring: String,
    pub src: String,
    pub expected: Expected,
    pub recipe: Option<String>,
    pub ledger: Vec<String>,
    block: Block,
}

impl CatalogEntry {
    pub fn family(&self) -> RootType {
        if self.key.starts_with("E6") {
            RootType::E6
        } else {
            RootType::E7
        }
    }

    /// Node number in the minuscule table.
    pub fn node(&self) -> usize {
        self.key[4..].parse().expect("keys are E6/Ik or E7/Jk")
    }

    pub fn has_corrections(&self) -> bool {
        self.block.fields.iter().any(|(k, _)| k.starts_with("corrected."))
    }

    pub fn has_explicit_generators(&self) -> bool {
        self.src != "bruhat" && !self.block.all("gen").is_empty()
    }
}

/// One factor of a structural recipe.
#[derive(Clone, Debug)]
pub enum RecipeFactor {
    Koszul(Vec<Poly>),
    Complex(GradedFreeComplex<Rationals>),
}

impl RecipeFactor {
    /// Total rank of the complex this factor stands for.
    pub fn total_rank(&self) -> usize {
        match self {
            RecipeFactor::Koszul(e) => 1 << e.len(),
            RecipeFactor::Complex(c) => c.ranks().iter().sum(),
        }
    }
}

pub struct Catalog {
    rings: HashMap<String, Ring<Rationals>>,
    cubics: HashMap<Labelling, Poly>,
    labels: Vec<String>,
    partner: HashMap<usize, usize>,
    derivatives: HashMap<Labelling, Block>,
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
}

static CATALOG: OnceLock<Catalog> = OnceLock::new();

pub fn catalog() -> &'static Catalog {
    CATALOG.get_or_init(|| Catalog::parse(DATA).expect("embedded catalog parses"))
}

fn poly_err(context: impl Into<String>) -> impl FnOnce(PolyError) -> CatalogError {
    let context = context.into();
    move |source| CatalogError::Poly { context, source }
}

fn expand_var_list(s: &str) -> Result<Vec<String>, CatalogError> {
    let mut out = Vec::new();
    for t in s.split(',') {
        let t = t.trim();
        match expand::parse_range(t) {
            Some((prefix, a, b)) => out.extend(expand::range(a, b).map(|i| format!("{prefix}{i}"))),
            None => out.push(t.to_string()),
        }
    }
    Ok(out)
}

impl Catalog {
    fn parse(s: &str) -> Result<Self, CatalogError> {
        let bad = |m: &str| CatalogError::BadData(m.to_string());
        let blocks = parse_blocks(s);
        let mut rings = HashMap::new();
        let mut cubic_src: Vec<(Labelling, String, String)> = Vec::new();
        let mut labels = Vec::new();
        let mut partner = HashMap::new();
        let mut derivatives = HashMap::new();
        let mut entries = Vec::new();
        for b in blocks {
            let mut h = b.header.split_whitespace();
            let kind = h.next().unwrap_or_default().to_string();
            let name = h.next().map(str::to_string);
            match (kind.as_str(), name) {
                ("ring", Some(n)) => {
                    let vars = expand_var_list(b.get("vars").ok_or_else(|| bad("ring without vars"))?)?;
                    let r = AmbientRing::new(&n, &vars, Rationals).map_err(poly_err(format!("ring {n}")))?;
                    rings.insert(n, r);
                }
                ("cubic", Some(n)) => {
                    let l: Labelling = n.parse()?;
                    cubic_src.push((
                        l,
                        b.get("ring").ok_or_else(|| bad("cubic without ring"))?.to_string(),
                        b.get("poly").ok_or_else(|| bad("cubic without poly"))?.to_string(),
                    ));
                }
                ("labels", Some(_)) => {
                    let map = b.get("map").ok_or_else(|| bad("labels without map"))?;
                    let mut pairs: Vec<(usize, String)> = map
                        .split(',')
                        .map(|p| {
                            let (i, v) = p.split_once(':').ok_or_else(|| bad(p))?;
                            Ok((i.trim().parse().map_err(|_| bad(p))?, v.trim().to_string()))
                        })
                        .collect::<Result<_, CatalogError>>()?;
                    pairs.sort();
                    labels = pairs.into_iter().map(|p| p.1).collect();
                    for p in b.get("partner").unwrap_or_default().split(',') {
                        let (a, c) = p.split_once(':').ok_or_else(|| bad(p))?;
                        let (a, c): (usize, usize) =
                            (a.trim().parse().map_err(|_| bad(p))?, c.trim().parse().map_err(|_| bad(p))?);
                        partner.insert(a, c);
                        partner.insert(c, a);
                    }
                }
                ("derivatives", Some(n)) => {
                    let l = if n == "E6" { Labelling::E6D5 } else { n.parse()? };
                    derivatives.insert(l, b);
                }
                (key, None) if key.starts_with("E6/") || key.starts_with("E7/") => {
                    entries.push(Self::entry_from_block(b)?);
                }
                _ => return Err(bad(&b.header)),
            }
        }
        let ring_of = |n: &str| rings.get(n).cloned().ok_or_else(|| CatalogError::UnknownRing(n.into()));
        let mut cubics = HashMap::new();
        for (l, r, p) in cubic_src {
            let ring = ring_of(&r)?;
            cubics.insert(l, Polynomial::parse(&ring, &p).map_err(poly_err(format!("cubic {l}")))?);
        }
        let index = entries.iter().enumerate().map(|(i, e): (usize, &CatalogEntry)| (e.key.clone(), i)).collect();
        let mut cat = Catalog {
            rings,
            cubics,
            labels,
            partner,
            derivatives,
            entries,
            index,
        };
        let sigma_q = cat.sigma(cat.cubics.get(&Labelling::E6).ok_or_else(|| bad("no E6 cubic"))?)?;
        cat.cubics.insert(Labelling::E6D5, sigma_q);
        cat.attach_gorenstein();
        Ok(cat)
    }

    fn entry_from_block(b: Block) -> Result<CatalogEntry, CatalogError> {
        let bad = |m: String| CatalogError::BadData(m);
        let key = b.header.clone();
        let num = |k: &str| -> Result<Option<usize>, CatalogError> {
            b.get(k)
                .map(|v| v.parse().map_err(|_| bad(format!("{key}: {k}={v}"))))
                .transpose()
        };
        let list = |k: &str| -> Result<Option<Vec<usize>>, CatalogError> {
            b.get(k)
                .map(|v| {
                    v.split(',')
                        .map(|x| x.trim().parse().map_err(|_| bad(format!("{key}: {k}={v}"))))
                        .collect()
                })
                .transpose()
        };
        let res = |k: &str| -> Result<Option<BettiTable>, CatalogError> {
            b.get(k)
                .map(|v| parse_resolution(v).map_err(|e| bad(format!("{key}: {e}"))))
                .transpose()
        };
        let e7 = key.starts_with("E7");
        let cell_dim = if e7 { 27 } else { 16 };
        let mut codim = num("expect.codim")?;
        let mut dim = num("expect.dim")?;
        if let (None, Some(d)) = (codim, dim) {
            codim = Some(cell_dim - d);
        }
        if let (Some(c), None) = (codim, dim) {
            dim = cell_dim.checked_sub(c);
        }
        let h_vector = b
            .get("expect.h")
            .map(|v| v.parse::<UniPoly>().map_err(|e| bad(format!("{key}: {e}"))))
            .transpose()?;
        let licci = list("expect.licci")?
            .map(|v| match v.as_slice() {
                [g, a, c] => Ok((*g, *a as i64, *c as i64)),
                _ => Err(bad(format!("{key}: expect.licci"))),
            })
            .transpose()?;
        let betti = b
            .get("expect.betti")
            .map(|v| parse_betti_rows(v).map_err(|e| bad(format!("{key}: {e}"))))
            .transpose()?;
        let mut pinned = Pinned {
            codim: num("computed.codim")?,
            h_vector: b
                .get("computed.h")
                .map(|v| v.parse::<UniPoly>().map_err(|e| bad(format!("{key}: {e}"))))
                .transpose()?,
            gorenstein: b.get("computed.gorenstein").map(|v| v == "true"),
        };
        if let Some(d) = num("computed.dim")? {
            pinned.codim = Some(cell_dim - d);
        }
        let expected = Expected {
            codim,
            dim,
            h_vector,
            description: b.get("expect.desc").map(str::to_string),
            gorenstein_table: None,
            resolution: res("expect.resolution")?,
            core_resolution: res("expect.core_resolution")?,
            betti,
            ranks: list("expect.ranks")?,
            core_ranks: list("expect.core_ranks")?,
            licci,
            pinned,
        };
        Ok(CatalogEntry {
            ring: b.get("ring").ok_or_else(|| bad(format!("{key}: no ring")))?.to_string(),
            src: b.get("src").unwrap_or("listed").to_string(),
            recipe: b.get("recipe").map(str::to_string),
            ledger: b.all("ledger").into_iter().map(str::to_string).collect(),
            key,
            expected,
            block: b,
        })
    }

    fn attach_gorenstein(&mut self) {
        for kind in [RootType::E6, RootType::E7] {
            let rows: HashMap<usize, bool> =
                appendix_rows(kind).into_iter().map(|r| (r.node, r.gorenstein)).collect();
            for e in self.entries.iter_mut().filter(|e| e.family() == kind) {
                e.expected.gorenstein_table = rows.get(&e.node()).copied();
            }
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.key.as_str())
    }

    pub fn entry(&self, key: &str) -> Result<&CatalogEntry, CatalogError> {
        self.index
            .get(key)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| CatalogError::UnknownKey(key.to_string()))
    }

    pub fn ring(&self, name: &str) -> Result<Ring<Rationals>, CatalogError> {
        self.rings
            .get(name)
            .cloned()
            .ok_or_else(|| CatalogError::UnknownRing(name.to_string()))
    }

    pub fn entry_ring(&self, key: &str) -> Result<Ring<Rationals>, CatalogError> {
        self.ring(&self.entry(key)?.ring)
    }

    /// D5 label of E6 coordinate `i` (1-based).
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i - 1]
    }

    /// Partner of a z/zb coordinate of E6.
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner.get(&i).copied()
    }

    /// Relabelling `x_i -> label(i)` from ring E6 to ring E6L.
    pub fn sigma(&self, f: &Poly) -> Result<Poly, CatalogError> {
        let target = self.ring("E6L")?;
        let images = self
            .labels
            .iter()
            .map(|l| {
                target
                    .var_index(l)
                    .map(VarImage::Var)
                    .ok_or_else(|| CatalogError::BadData(format!("label {l} not in E6L")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(f.map_into(&target, &images))
    }

    /// Restriction to the big cell: `x = 1`, `z = zb = 0`, ring E6L to E6D5.
    pub fn cell_specialize(&self, f: &Poly) -> Result<Poly, CatalogError> {
        let target = self.ring("E6D5")?;
        let images = f
            .ring()
            .variables()
            .iter()
            .map(|v| match target.var_index(v) {
                Some(j) => VarImage::Var(j),
                None if v == "x" => VarImage::Const(num_rational::BigRational::from_integer(1.into())),
                None => VarImage::Const(num_rational::BigRational::from_integer(0.into())),
            })
            .collect::<Vec<_>>();
        Ok(f.map_into(&target, &images))
    }

    pub fn get_cubic(&self, l: Labelling) -> Poly {
        self.cubics[&l].clone()
    }

    fn derivative_text(&self, l: Labelling, i: usize, corrected: bool) -> Result<(&str, &str), CatalogError> {
        let l = if l == Labelling::E6 { Labelling::E6D5 } else { l };
        let b = &self.derivatives[&l];
        let ring = b.get("ring").ok_or_else(|| CatalogError::BadData("derivatives without ring".into()))?;
        let printed = b
            .get(&format!("f{i}"))
            .ok_or_else(|| CatalogError::BadData(format!("no derivative f{i} for {l}")))?;
        let text = if corrected {
            b.get(&format!("corrected.f{i}")).unwrap_or(printed)
        } else {
            printed
        };
        Ok((ring, text))
    }

    /// Catalog derivative `f_i`, with emendations applied.
    pub fn get_derivative(&self, l: Labelling, i: usize) -> Result<Poly, CatalogError> {
        if l == Labelling::E6 {
            let q = self.get_cubic(Labelling::E6);
            return Ok(q.derivative(i - 1));
        }
        let (ring, text) = self.derivative_text(l, i, true)?;
        Polynomial::parse(&self.ring(ring)?, text).map_err(poly_err(format!("{l} f{i}")))
    }

    /// Derivative `f_i` exactly as printed.
    pub fn printed_derivative(&self, l: Labelling, i: usize) -> Result<Poly, CatalogError> {
        let (ring, text) = self.derivative_text(l, i, false)?;
        Polynomial::parse(&self.ring(ring)?, text).map_err(poly_err(format!("{l} f{i}")))
    }

    /// Indices `i` whose derivative carries an emendation.
    pub fn corrected_derivatives(&self, l: Labelling) -> Vec<usize> {
        (1..=27)
            .filter(|i| {
                self.derivatives
                    .get(&l)
                    .is_some_and(|b| b.get(&format!("corrected.f{i}")).is_some())
            })
            .collect()
    }

    pub fn matrix(&self, key: &str, name: &str) -> Result<Matrix<Rationals>, CatalogError> {
        let e = self.entry(key)?;
        let text = e.block.get(&format!("matrix.{name}")).ok_or_else(|| CatalogError::UnknownMatrix {
            key: key.to_string(),
            name: name.to_string(),
        })?;
        let ring = self.ring(&e.ring)?;
        let rows = text
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| Polynomial::parse(&ring, x.trim()).map_err(poly_err(format!("{key} matrix {name}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(&ring, rows)?)
    }

    fn generators_of(&self, key: &str, corrected: bool) -> Result<Vec<Poly>, CatalogError> {
        let e = self.entry(key)?;
        let ring = self.ring(&e.ring)?;
        let mut lines = e.block.all("gen");
        if corrected && !e.block.all("corrected.gen").is_empty() {
            lines = e.block.all("corrected.gen");
        }
        let mut gens = Vec::new();
        for inc in e.block.all("include") {
            gens.extend(self.generators_of(inc, corrected)?);
        }
        for line in lines {
            gens.extend(expand_tokens(self, key, &ring, line)?);
        }
        Ok(gens)
    }

    /// The entry's ideal, with emendations applied.
    pub fn get_ideal(&self, key: &str) -> Result<Ideal<Rationals>, CatalogError> {
        let gens = self.generators_of(key, true)?;
        Ok(Ideal::new(&self.entry_ring(key)?, gens)?)
    }

    /// The entry's ideal from the generators exactly as printed.
    pub fn get_ideal_printed(&self, key: &str) -> Result<Ideal<Rationals>, CatalogError> {
        let gens = self.generators_of(key, false)?;
        Ok(Ideal::new(&self.entry_ring(key)?, gens)?)
    }

    pub fn expected_data(&self, key: &str) -> Result<&Expected, CatalogError> {
        Ok(&self.entry(key)?.expected)
    }

    /// Ideal whose resolution carries the structure; the linear generators
    /// split off as a Koszul factor.
    pub fn core_ideal(&self, key: &str) -> Result<Option<Ideal<Rationals>>, CatalogError> {
        let e = self.entry(key)?;
        let Some(core) = e.block.get("core") else {
            return Ok(None);
        };
        let ring = self.ring(&e.ring)?;
        Ok(Some(Ideal::new(&ring, expand_tokens(self, key, &ring, core)?)?))
    }

    /// Partner entry and linking sequence.
    pub fn link_sequence(&self, key: &str, corrected: bool) -> Result<Option<(String, Vec<Poly>)>, CatalogError> {
        let e = self.entry(key)?;
        let Some(partner) = e.block.get("link.partner") else {
            return Ok(None);
        };
        let mut lines = e.block.all("link.seq");
        if corrected && !e.block.all("corrected.link.seq").is_empty() {
            lines = e.block.all("corrected.link.seq");
        }
        let ring = self.ring(&e.ring)?;
        let mut seq = Vec::new();
        for l in lines {
            seq.extend(expand_tokens(self, key, &ring, l)?);
        }
        Ok(Some((partner.to_string(), seq)))
    }

    /// Factors of the entry's recipe, in order.
    pub fn recipe_factors(&self, key: &str) -> Result<Option<Vec<RecipeFactor>>, CatalogError> {
        let e = self.entry(key)?;
        let Some(recipe) = &e.recipe else {
            return Ok(None);
        };
        let ring = self.ring(&e.ring)?;
        let mut out = Vec::new();
        for factor in recipe.split('⊗') {
            let factor = factor.trim();
            let (name, arg) = factor
                .split_once('(')
                .and_then(|(n, r)| r.strip_suffix(')').map(|a| (n.trim(), a.trim())))
                .ok_or_else(|| CatalogError::BadData(format!("{key}: recipe factor `{factor}`")))?;
            out.push(match name {
                "koszul" => RecipeFactor::Koszul(expand_tokens(self, key, &ring, arg)?),
                "pfaffian" => RecipeFactor::Complex(pfaffian_complex(&self.matrix(key, arg)?)?),
                "eagon_northcott" => RecipeFactor::Complex(eagon_northcott(&self.matrix(key, arg)?)?),
                _ => return Err(CatalogError::BadData(format!("{key}: unknown builder `{name}`"))),
            });
        }
        Ok(Some(out))
    }

    /// Builds the complex named by the entry's recipe.
    pub fn recipe_complex(&self, key: &str) -> Result<Option<GradedFreeComplex<Rationals>>, CatalogError> {
        let Some(factors) = self.recipe_factors(key)? else {
            return Ok(None);
        };
        let ring = self.entry_ring(key)?;
        let mut acc: Option<GradedFreeComplex<Rationals>> = None;
        for f in factors {
            let c = match f {
                RecipeFactor::Koszul(el) => koszul_complex(&ring, &el)?,
                RecipeFactor::Complex(c) => c,
            };
            acc = Some(match acc {
                None => c,
                Some(a) => tensor(&a, &c)?,
            });
        }
        Ok(acc)
    }

    /// `I_1(Y X) + Pf(X)` from the matrices stored with J51, checked
    /// against the listed generators.
    pub fn huneke_ulrich_build(&self) -> Result<Ideal<Rationals>, CatalogError> {
        let key = "E7/J51";
        let ring = self.entry_ring(key)?;
        let built = Ideal::new(&ring, expand_tokens(self, key, &ring, "@entries(Y*X), @pf(X)")?)?;
        if !built.equals(&self.get_ideal(key)?)? {
            return Err(CatalogError::NotEqual(
                "I1(Y X) + Pf(X) differs from the listed generators of E7/J51".into(),
            ));
        }
        Ok(built)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn counts_and_lookup() {
        let c = catalog();
        assert_eq!(c.keys().filter(|k| k.starts_with("E6/")).count(), 27);
        assert_eq!(c.keys().filter(|k| k.starts_with("E7/")).count(), 55);
        assert!(matches!(c.entry("E6/I99"), Err(CatalogError::UnknownKey(_))));
    }

    #[test]
    fn cubics() {
        let c = catalog();
        for l in [Labelling::E6, Labelling::E6D5, Labelling::E7] {
            let q = c.get_cubic(l);
            assert_eq!(q.len(), 45, "{l}");
            assert_eq!(q.homogeneous_degree(), Some(3));
        }
        let q = c.get_cubic(Labelling::E6);
        let t = q.terms().iter().find(|(m, _)| m.exp(0) == 1 && m.exp(17) == 1 && m.exp(26) == 1);
        assert!(t.is_some_and(|(_, k)| *k == Rationals.from_i64(1)));
    }

    #[test]
    fn e7_derivatives_match_partials() {
        let c = catalog();
        let q = c.get_cubic(Labelling::E7);
        for i in 1..=27 {
            assert_eq!(c.printed_derivative(Labelling::E7, i).unwrap(), q.derivative(i - 1), "f{i}");
        }
        let f27 = Polynomial::parse(&c.ring("E7").unwrap(), "x5*x6 - x4*x8 + x3*x10 - x2*x12 + x1*x15").unwrap();
        assert_eq!(c.get_derivative(Labelling::E7, 27).unwrap(), f27);
    }

    #[test]
    fn e6_corrected_derivatives_match_partials() {
        let c = catalog();
        let q = c.get_cubic(Labelling::E6);
        for i in 1..=27 {
            let want = c.sigma(&q.derivative(i - 1)).unwrap();
            assert_eq!(c.get_derivative(Labelling::E6D5, i).unwrap(), want, "f{i}");
        }
        assert_eq!(c.corrected_derivatives(Labelling::E6D5).len(), 19);
    }

    #[test]
    fn listed_ideals() {
        let c = catalog();
        assert_eq!(c.get_ideal("E7/J55").unwrap().generators().len(), 1);
        let i23 = c.get_ideal("E6/I23").unwrap();
        assert_eq!(i23.generators().len(), 6);
        assert_eq!(i23.generators()[5].to_text(), "y1234");
        assert_eq!(c.get_ideal("E7/J16").unwrap().generators().len(), 1 + 27 + 17);
    }

    #[test]
    fn bruhat_generators_reproduce_listed_ones() {
        let c = catalog();
        let ring = c.ring("E6D5").unwrap();
        let b17 = Ideal::new(&ring, expand::bruhat_generators(c, 17).unwrap()).unwrap();
        assert!(b17.equals(&c.get_ideal("E6/I17").unwrap()).unwrap());
        let b22 = Ideal::new(&ring, expand::bruhat_generators(c, 22).unwrap()).unwrap();
        assert!(b22.equals(&c.get_ideal("E6/I22").unwrap()).unwrap());
        let b23 = Ideal::new(&ring, expand::bruhat_generators(c, 23).unwrap()).unwrap();
        assert!(b23.equals(&c.get_ideal("E6/I23").unwrap()).unwrap());
    }

    #[test]
    fn huneke_ulrich() {
        let c = catalog();
        let i = c.huneke_ulrich_build().unwrap();
        assert_eq!(i.generators().len(), 7);
    }
}
