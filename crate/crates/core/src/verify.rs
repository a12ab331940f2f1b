//! Checks every catalog entry against its expected invariants.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{catalog, CatalogEntry, CatalogError, Poly, RecipeFactor};
use crate::complexes::{minimal_betti, tensor, verify_resolution, BettiTable, GradedFreeComplex};
use crate::field::{Field, PrimeField, Rationals};
use crate::groebner::Ideal;
use crate::hilbert::{hilbert_series, HilbertData, UniPoly};
use crate::linkage::{check_linked, licci_criterion, LicciVerdict};
use crate::par::{self, Mode};
use crate::poly::Polynomial;
use crate::weyl::RootType;

/// E7 entries checked by the core suite besides all of E6.
pub const CORE_E7: &[&str] = &[
    "E7/J55", "E7/J54", "E7/J53", "E7/J52", "E7/J51", "E7/J50", "E7/J49", "E7/J48", "E7/J30",
    "E7/J21", "E7/J18", "E7/J16", "E7/J15", "E7/J14", "E7/J13", "E7/J12", "E7/J11", "E7/J10",
    "E7/J9",
];

/// Entries whose invariants are also recomputed over the rationals when the
/// main run is over a prime field.
pub const RATIONAL_SPOT_CHECKS: &[&str] = &["E6/I23", "E6/I22", "E6/I17", "E7/J51", "E7/J30"];

/// Complexes above this total rank are verified factor by factor.
const MAX_TENSOR_RANK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FieldChoice {
    Rationals,
    Prime(u32),
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "QQ"),
            FieldChoice::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = String;
    /// `QQ`, `Q`, `GF(p)` or a bare prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "Q" | "QQ" | "rationals") {
            return Ok(FieldChoice::Rationals);
        }
        let n = t
            .strip_prefix("GF(")
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .parse::<u32>()
            .map_err(|_| format!("unknown field `{s}`"))?;
        PrimeField::try_new(n)
            .map(|_| FieldChoice::Prime(n))
            .ok_or_else(|| format!("{n} is not a prime"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Full,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(Suite::Core),
            "full" => Ok(Suite::Full),
            _ => Err(format!("unknown suite `{s}` (core, full)")),
        }
    }
}

impl Suite {
    pub fn keys(self) -> Vec<String> {
        catalog()
            .entries()
            .iter()
            .filter(|e| {
                self == Suite::Full || e.family() == RootType::E6 || CORE_E7.contains(&e.key.as_str())
            })
            .map(|e| e.key.clone())
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub field: FieldChoice,
    pub seed: u64,
    pub max_steps: usize,
    pub points: usize,
    /// Perturbs one coefficient of this entry's generators.
    pub corrupt: Option<String>,
    pub betti: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            field: FieldChoice::Prime(crate::field::DEFAULT_PRIME),
            seed: 1,
            max_steps: 30,
            points: 3,
            corrupt: None,
            betti: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Differs from the table in a way recorded in the catalog ledger.
    Ledgered,
    Unchecked,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    fn cmp<T: PartialEq + fmt::Display>(name: &str, got: &T, want: Option<&T>, pinned: Option<&T>) -> Self {
        match want {
            None => Check::new(name, Status::Unchecked, format!("computed {got}; no table value")),
            Some(w) if w == got => Check::new(name, Status::Pass, format!("{got}")),
            Some(w) if pinned == Some(got) => {
                Check::new(name, Status::Ledgered, format!("computed {got}, table {w} (ledgered)"))
            }
            Some(w) => Check::new(name, Status::Fail, format!("computed {got}, table {w}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub key: String,
    pub field: String,
    pub codim: usize,
    pub dim: usize,
    #[serde(serialize_with = "ser_display")]
    pub h_vector: UniPoly,
    #[serde(serialize_with = "ser_display")]
    pub k_numerator: UniPoly,
    pub palindromic: bool,
    pub checks: Vec<Check>,
    pub ledger: Vec<String>,
    pub wall_ms: f64,
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl EntryReport {
    pub fn status(&self) -> Status {
        self.checks
            .iter()
            .map(|c| c.status)
            .filter(|s| *s != Status::Unchecked)
            .max()
            .unwrap_or(Status::Unchecked)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: VerifyConfig,
    pub entries: Vec<EntryReport>,
    pub errors: Vec<(String, String)>,
    pub wall_ms: f64,
}

impl SuiteReport {
    /// Entries with an unexplained mismatch or an error.
    pub fn failures(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| e.status() == Status::Fail)
            .map(|e| e.key.clone())
            .chain(self.errors.iter().map(|e| e.0.clone()))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["schema"] = json!(1);
        v["failures"] = json!(self.failures());
        v["passed"] = json!(self.passed());
        v
    }
}

pub fn verify_suite(suite: Suite, cfg: &VerifyConfig, mode: Mode) -> SuiteReport {
    let t = Instant::now();
    let keys = suite.keys();
    let results = par::map(mode, &keys, |k| verify_entry(k, cfg).map_err(|e| (k.clone(), e.to_string())));
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(e),
        }
    }
    SuiteReport {
        suite,
        config: cfg.clone(),
        entries,
        errors,
        wall_ms: t.elapsed().as_secs_f64() * 1e3,
    }
}

/// Doubles one coefficient of one generator with at least two terms.
pub fn corrupt(ideal: &Ideal<Rationals>, seed: u64) -> Ideal<Rationals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = ideal.generators().to_vec();
    let candidates: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].len() >= 2).collect();
    if candidates.is_empty() {
        let r = ideal.ring();
        gens.push(Polynomial::var(r, rng.gen_range(0..r.nvars())));
    } else {
        let g = candidates[rng.gen_range(0..candidates.len())];
        let mut terms = gens[g].terms().to_vec();
        let t = rng.gen_range(0..terms.len());
        terms[t].1 = Rationals.mul(&terms[t].1, &Rationals.from_i64(2));
        gens[g] = Polynomial::from_terms(ideal.ring(), terms);
    }
    Ideal::new(ideal.ring(), gens).expect("same ring")
}

fn hilbert_in(ideal: &Ideal<Rationals>, field: FieldChoice) -> Result<HilbertData, CatalogError> {
    Ok(match field {
        FieldChoice::Rationals => hilbert_series(ideal),
        FieldChoice::Prime(p) => {
            let rp = ideal.ring().over(PrimeField::new(p));
            let ip = ideal
                .reduce_mod(&rp)
                .ok_or_else(|| CatalogError::BadData(format!("coefficients do not reduce mod {p}")))?;
            hilbert_series(&ip)
        }
    })
}

pub fn verify_entry(key: &str, cfg: &VerifyConfig) -> Result<EntryReport, CatalogError> {
    let t = Instant::now();
    let cat = catalog();
    let e = cat.entry(key)?;
    let mut ideal = cat.get_ideal(key)?;
    if cfg.corrupt.as_deref() == Some(key) {
        ideal = corrupt(&ideal, cfg.seed);
    }
    let hd = hilbert_in(&ideal, cfg.field)?;
    let x = &e.expected;
    let palindromic = hd.h_vector.is_palindromic();
    let mut checks = vec![
        Check::cmp("codim", &hd.codim, x.codim.as_ref(), x.pinned.codim.as_ref()),
        Check::cmp(
            "h_vector",
            &hd.h_vector,
            x.h_vector.as_ref(),
            x.pinned.h_vector.as_ref(),
        ),
    ];
    if let Some(g) = x.gorenstein_table {
        checks.push(Check::cmp("gorenstein_table", &palindromic, Some(&g), x.pinned.gorenstein.as_ref()));
    }
    if let Some(g) = x.gorenstein_from_description() {
        checks.push(Check::cmp("gorenstein_description", &palindromic, Some(&g), None));
    }
    if cfg.field != FieldChoice::Rationals && RATIONAL_SPOT_CHECKS.contains(&key) {
        let hq = hilbert_series(&ideal);
        let same = hq.codim == hd.codim && hq.h_vector == hd.h_vector;
        checks.push(Check::new(
            "rational_spot_check",
            if same { Status::Pass } else { Status::Fail },
            format!("QQ: codim {}, h {}", hq.codim, hq.h_vector),
        ));
    }
    if let Some(c) = structure_check(e, &ideal, cfg)? {
        checks.push(c);
    }
    if cfg.betti {
        checks.extend(betti_checks(e, &ideal, hd.codim, cfg)?);
    }
    if let Some(c) = link_check(e)? {
        checks.push(c);
    }
    Ok(EntryReport {
        key: key.to_string(),
        field: cfg.field.to_string(),
        codim: hd.codim,
        dim: hd.dim,
        h_vector: hd.h_vector,
        k_numerator: hd.k_numerator,
        palindromic,
        checks,
        ledger: e.ledger.clone(),
        wall_ms: t.elapsed().as_secs_f64() * 1e3,
    })
}

fn product_of_one_minus(seq: &[Poly]) -> UniPoly {
    seq.iter().fold(UniPoly::one(), |acc, f| {
        acc.mul(&UniPoly::one_minus_t_pow(f.homogeneous_degree().unwrap_or(0)))
    })
}

/// The recipe's complex resolves `R/I`. Large tensor products are certified
/// by resolving the first factor and checking that the Koszul elements
/// form a regular sequence on its quotient (`K` multiplies by `1 - T^d`).
fn structure_check(
    e: &CatalogEntry,
    ideal: &Ideal<Rationals>,
    cfg: &VerifyConfig,
) -> Result<Option<Check>, CatalogError> {
    let cat = catalog();
    let Some(factors) = cat.recipe_factors(&e.key)? else {
        return Ok(None);
    };
    let ring = ideal.ring().clone();
    let total: usize = factors.iter().map(RecipeFactor::total_rank).product();
    let fail = |d: String| Ok(Some(Check::new("structure", Status::Fail, d)));
    if total <= MAX_TENSOR_RANK {
        let c = cat.recipe_complex(&e.key)?.expect("recipe present");
        let r = verify_resolution(&c, ideal, cfg.points, cfg.seed)?;
        let detail = format!("{} (full complex, ranks {:?})", c.betti().display_resolution(), c.ranks());
        return Ok(Some(if r.passed() {
            Check::new("structure", Status::Pass, detail)
        } else {
            Check::new(
                "structure",
                Status::Fail,
                format!(
                    "{detail}: d^2=0 {}, euler {}, image {}, exact {}",
                    r.d_squared_zero, r.euler_matches, r.image_matches, r.generic_exact
                ),
            )
        }));
    }
    let mut seq: Vec<Poly> = Vec::new();
    let mut base: Option<GradedFreeComplex<Rationals>> = None;
    for f in factors {
        match f {
            RecipeFactor::Koszul(el) => seq.extend(el),
            RecipeFactor::Complex(c) => {
                base = Some(match base {
                    None => c,
                    Some(b) => tensor(&b, &c)?,
                })
            }
        }
    }
    let (base_ideal, base_k, base_desc) = match &base {
        Some(c) => {
            let bi = Ideal::new(&ring, c.first_syzygy_generators())?;
            let r = verify_resolution(c, &bi, cfg.points, cfg.seed)?;
            if !r.passed() {
                return fail(format!("first factor {} is not a resolution", c.betti().display_resolution()));
            }
            let k = hilbert_series(&bi).k_numerator;
            (bi, k, c.betti().display_resolution())
        }
        None => (Ideal::zero(&ring), UniPoly::one(), "R".to_string()),
    };
    let all = base_ideal.sum(&Ideal::new(&ring, seq.clone())?)?;
    if !all.equals(ideal)? {
        return fail("recipe generators differ from the entry's ideal".into());
    }
    let want = base_k.mul(&product_of_one_minus(&seq));
    let got = hilbert_series(ideal).k_numerator;
    if got != want {
        return fail(format!("Koszul part is not regular on R/I': K = {got}, expected {want}"));
    }
    let mut ranks = base.as_ref().map(|c| BettiTable::from_modules(c.modules())).unwrap_or_else(|| {
        let mut t = BettiTable::new();
        t.add(0, 0, 1);
        t
    });
    for f in &seq {
        let d = f.homogeneous_degree().unwrap_or(0) as i64;
        let mut next = BettiTable::new();
        for (i, j, b) in ranks.entries() {
            next.add(i, j, b);
            next.add(i + 1, j + d, b);
        }
        ranks = next;
    }
    Ok(Some(Check::new(
        "structure",
        Status::Pass,
        format!(
            "{base_desc} tensor Koszul on {} elements, regular on the quotient (totals {:?})",
            seq.len(),
            ranks.totals()
        ),
    )))
}

fn betti_checks(
    e: &CatalogEntry,
    ideal: &Ideal<Rationals>,
    codim: usize,
    cfg: &VerifyConfig,
) -> Result<Vec<Check>, CatalogError> {
    let x = &e.expected;
    let mut out = Vec::new();
    let wants_full = x.resolution.is_some() || x.ranks.is_some() || x.betti.is_some();
    let wants_core = x.core_resolution.is_some() || x.core_ranks.is_some() || x.licci.is_some();
    let betti_of = |i: &Ideal<Rationals>| minimal_betti(i, cfg.max_steps, cfg.seed);
    if wants_full && codim > 0 {
        match betti_of(ideal) {
            Ok(b) => {
                if let Some(r) = &x.resolution {
                    out.push(table_check("resolution", &b, r));
                }
                if let Some(r) = &x.betti {
                    out.push(table_check("betti", &b, r));
                }
                if let Some(r) = &x.ranks {
                    out.push(Check::cmp("ranks", &Ranks(b.totals()), Some(&Ranks(r.clone())), None));
                }
            }
            Err(err) => out.push(Check::new("resolution", Status::Fail, err.to_string())),
        }
    }
    if wants_core {
        let core = catalog().core_ideal(&e.key)?.unwrap_or_else(|| ideal.clone());
        match betti_of(&core) {
            Ok(b) => {
                if let Some(r) = &x.core_resolution {
                    out.push(table_check("core_resolution", &b, r));
                }
                if let Some(r) = &x.core_ranks {
                    out.push(Check::cmp("core_ranks", &Ranks(b.totals()), Some(&Ranks(r.clone())), None));
                }
                if let Some((g, mx, mn)) = x.licci {
                    let core_codim = hilbert_series(&core).codim;
                    let c = match licci_criterion(&b, core_codim) {
                        Ok(rep) => {
                            let ok = rep.verdict == LicciVerdict::NotLicci
                                && (rep.g, rep.max_last_twist, rep.min_first_twist) == (g, mx, mn);
                            Check::new(
                                "licci",
                                if ok { Status::Pass } else { Status::Fail },
                                format!(
                                    "{:?}: g={}, max n_gj={}, min n_1j={}",
                                    rep.verdict, rep.g, rep.max_last_twist, rep.min_first_twist
                                ),
                            )
                        }
                        Err(err) => Check::new("licci", Status::Fail, err.to_string()),
                    };
                    out.push(c);
                }
            }
            Err(err) => out.push(Check::new("core_resolution", Status::Fail, err.to_string())),
        }
    }
    Ok(out)
}

struct Ranks(Vec<usize>);

impl PartialEq for Ranks {
    fn eq(&self, o: &Self) -> bool {
        self.0 == o.0
    }
}

impl fmt::Display for Ranks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn table_check(name: &str, got: &BettiTable, want: &BettiTable) -> Check {
    if got == want {
        Check::new(name, Status::Pass, got.display_resolution())
    } else {
        Check::new(
            name,
            Status::Fail,
            format!("computed {}, table {}", got.display_resolution(), want.display_resolution()),
        )
    }
}

fn link_check(e: &CatalogEntry) -> Result<Option<Check>, CatalogError> {
    let cat = catalog();
    let Some((partner, seq)) = cat.link_sequence(&e.key, true)? else {
        return Ok(None);
    };
    let (a, b) = (cat.get_ideal(&e.key)?, cat.get_ideal(&partner)?);
    Ok(Some(match check_linked((&e.key, &partner), &a, &b, &seq) {
        Ok(r) if r.linked() => Check::new("link", Status::Pass, format!("linked to {partner} by {} elements", seq.len())),
        Ok(r) => Check::new(
            "link",
            Status::Fail,
            format!(
                "regular {}, forward {}, backward {}",
                r.regular_sequence_ok, r.colon_forward_ok, r.colon_backward_ok
            ),
        ),
        Err(err) => Check::new("link", Status::Fail, err.to_string()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_choice_parsing() {
        assert_eq!("QQ".parse::<FieldChoice>(), Ok(FieldChoice::Rationals));
        assert_eq!("GF(32003)".parse::<FieldChoice>(), Ok(FieldChoice::Prime(32003)));
        assert_eq!("7".parse::<FieldChoice>(), Ok(FieldChoice::Prime(7)));
        assert!("8".parse::<FieldChoice>().is_err());
    }

    #[test]
    fn single_entry() {
        let r = verify_entry("E6/I23", &VerifyConfig::default()).unwrap();
        assert_eq!(r.status(), Status::Pass, "{:?}", r.checks);
        assert!(r.check("structure").is_some());
        let bad = VerifyConfig {
            corrupt: Some("E6/I23".into()),
            ..VerifyConfig::default()
        };
        assert_eq!(verify_entry("E6/I23", &bad).unwrap().status(), Status::Fail);
    }
}
