use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use minuscule::catalog::{catalog, expand_tokens, CatalogError, Poly};
use minuscule::complexes::{minimal_betti, BettiError};
use minuscule::hilbert::hilbert_series;
use minuscule::linkage::{check_linked, licci_criterion, LicciError, LinkError};
use minuscule::par::Mode;
use minuscule::verify::{verify_suite, FieldChoice, Status, Suite, VerifyConfig};
use minuscule::weyl::{build_crystal, parse_weight_index, RootDatum, RootType, WeylError};
use minuscule::{Field, Ideal, PrimeField};

#[derive(Parser)]
#[command(name = "minuscule", version, about = "Schubert-cell ideals of E6/P1 and E7/P7")]
struct Cli {
    /// Seed for random points and linear forms.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// QQ, or a prime (GF(p) or p). Defaults to MINUSCULE_PRIME, else 32003.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, env = "MINUSCULE_PRIME", hide_env_values = true)]
    default_prime: Option<u32>,
    /// Homological bound for minimal Betti computations.
    #[arg(long, global = true, default_value_t = 30)]
    max_steps: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Catalog listing.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
    /// Computations on one catalog ideal.
    Ideal { key: String, op: IdealOp },
    /// Checks that a sequence links two catalog ideals.
    Link {
        a: String,
        b: String,
        /// Comma-separated elements (Q, f1, x27, polynomials), or @paper
        /// for the stored sequence (@printed for the unemended one).
        #[arg(long)]
        seq: String,
    },
    /// Crystal graph of a minuscule representation.
    Graph { kind: String, weight: String },
    /// Runs the verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Core)]
        suite: SuiteArg,
        /// Perturbs one coefficient of this entry (negative control).
        #[arg(long)]
        corrupt: Option<String>,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealOp {
    Gb,
    Hilbert,
    Gorenstein,
    Betti,
    Licci,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Core,
    Full,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error(transparent)]
    Licci(#[from] LicciError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("verification failed for {0}")]
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Catalog(CatalogError::UnknownKey(_)) => 3,
            CliError::Catalog(_) => 4,
            CliError::Link(_) => 5,
            CliError::Weyl(_) => 6,
            CliError::Betti(_) => 7,
            CliError::Licci(_) => 8,
            CliError::Io { .. } => 9,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Verification(_) => "verification_failed",
            CliError::Usage(_) => "usage",
            CliError::Catalog(CatalogError::UnknownKey(_)) => "unknown_key",
            CliError::Catalog(_) => "catalog",
            CliError::Link(LinkError::NotContained { .. }) => "link_precondition",
            CliError::Link(_) => "link",
            CliError::Weyl(_) => "weyl",
            CliError::Betti(_) => "betti",
            CliError::Licci(_) => "licci_inapplicable",
            CliError::Io { .. } => "io",
        }
    }
}

struct Output {
    json: Value,
    text: String,
    fail: Option<String>,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, fail: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let err = json!({"schema": 1, "error": {"code": e.code(), "kind": e.kind(), "message": e.to_string()}});
            if cli.format == Format::Json && !matches!(e, CliError::Verification(_)) {
                println!("{}", serde_json::to_string_pretty(&err).expect("json"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn field_choice(cli: &Cli) -> Result<FieldChoice, CliError> {
    match (&cli.field, cli.default_prime) {
        (Some(f), _) => f.parse().map_err(CliError::Usage),
        (None, Some(p)) => p.to_string().parse().map_err(CliError::Usage),
        (None, None) => Ok(FieldChoice::Prime(minuscule::DEFAULT_PRIME)),
    }
}

fn config(cli: &Cli) -> Result<VerifyConfig, CliError> {
    Ok(VerifyConfig {
        field: field_choice(cli)?,
        seed: cli.seed,
        max_steps: cli.max_steps,
        ..VerifyConfig::default()
    })
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let out = match &cli.cmd {
        Cmd::Catalog { what: CatalogCmd::List } => catalog_list(cli),
        Cmd::Ideal { key, op } => cmd_ideal(cli, key, *op)?,
        Cmd::Link { a, b, seq } => cmd_link(cli, a, b, seq)?,
        Cmd::Graph { kind, weight } => cmd_graph(cli, kind, weight)?,
        Cmd::Verify {
            suite,
            corrupt,
            sequential,
        } => cmd_verify(cli, *suite, corrupt.clone(), *sequential)?,
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
        Format::Text | Format::Dot => out.text.clone(),
    };
    match &cli.out {
        Some(p) => fs::write(p, &body).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?,
        None => print!("{body}"),
    }
    match out.fail {
        Some(f) => Err(CliError::Verification(f)),
        None => Ok(()),
    }
}

fn catalog_list(cli: &Cli) -> Output {
    let cat = catalog();
    let mut rows = Vec::new();
    let mut text = String::new();
    for e in cat.entries() {
        let x = &e.expected;
        rows.push(json!({
            "key": e.key,
            "ring": e.ring,
            "src": e.src,
            "codim": x.codim,
            "dim": x.dim,
            "h_vector": x.h_vector.as_ref().map(|h| h.to_string()),
            "description": x.description,
            "gorenstein": x.gorenstein_table,
        }));
        text.push_str(&format!(
            "{:8} {:5} codim {:>2}  {:30} {}\n",
            e.key,
            e.ring,
            x.codim.map_or("-".into(), |c| c.to_string()),
            x.h_vector.as_ref().map_or("-".into(), |h| h.to_string()),
            x.description.as_deref().unwrap_or("")
        ));
    }
    Output::new(json!({"schema": 1, "config": {"seed": cli.seed}, "count": rows.len(), "entries": rows}), text)
}

fn gb_json<F: Field>(ideal: &Ideal<F>) -> (Value, String) {
    let gb: Vec<String> = ideal.groebner_basis().iter().map(|g| g.to_text()).collect();
    let text = gb.join("\n") + "\n";
    (json!({"size": gb.len(), "basis": gb}), text)
}

fn cmd_ideal(cli: &Cli, key: &str, op: IdealOp) -> Result<Output, CliError> {
    let cat = catalog();
    let e = cat.entry(key)?;
    let cfg = config(cli)?;
    let ideal = cat.get_ideal(key)?;
    let x = &e.expected;
    let mut report = json!({
        "schema": 1,
        "key": key,
        "config": {"field": cfg.field.to_string(), "seed": cfg.seed, "max_steps": cfg.max_steps},
        "generators": ideal.generators().len(),
    });
    let text;
    let mut fail = None;
    match op {
        IdealOp::Gb => {
            let (j, t) = match cfg.field {
                FieldChoice::Rationals => gb_json(&ideal),
                FieldChoice::Prime(p) => {
                    let ip = ideal
                        .reduce_mod(&ideal.ring().over(PrimeField::new(p)))
                        .ok_or_else(|| CliError::Usage(format!("coefficients do not reduce mod {p}")))?;
                    gb_json(&ip)
                }
            };
            report["groebner_basis"] = j;
            text = t;
        }
        IdealOp::Hilbert | IdealOp::Gorenstein => {
            let r = minuscule::verify::verify_entry(
                key,
                &VerifyConfig {
                    betti: false,
                    ..cfg.clone()
                },
            )?;
            let codim_ok = r.check("codim").map(|c| c.status);
            let h_ok = r.check("h_vector").map(|c| c.status);
            let table_match = codim_ok == Some(Status::Pass) && h_ok == Some(Status::Pass);
            let ledgered = [codim_ok, h_ok].contains(&Some(Status::Ledgered));
            if matches!(op, IdealOp::Hilbert) {
                report["codim"] = json!(r.codim);
                report["dim"] = json!(r.dim);
                report["h_vector"] = json!(r.h_vector.to_string());
                report["k_numerator"] = json!(r.k_numerator.to_string());
                report["expected"] = json!({"codim": x.codim, "dim": x.dim, "h_vector": x.h_vector.as_ref().map(|h| h.to_string())});
                report["table_match"] = json!(table_match);
                report["ledgered"] = json!(ledgered);
                text = format!(
                    "{key}: codim {} dim {} h = {} (table: codim {} h = {}) {}\n",
                    r.codim,
                    r.dim,
                    r.h_vector,
                    x.codim.map_or("-".into(), |c| c.to_string()),
                    x.h_vector.as_ref().map_or("-".into(), |h| h.to_string()),
                    if table_match { "match" } else if ledgered { "ledgered" } else { "MISMATCH" }
                );
                if !table_match && !ledgered && x.codim.is_some() {
                    fail = Some(key.to_string());
                }
            } else {
                report["h_vector"] = json!(r.h_vector.to_string());
                report["palindromic"] = json!(r.palindromic);
                report["expected"] = json!({
                    "table": x.gorenstein_table,
                    "description": x.gorenstein_from_description(),
                    "pinned": x.pinned.gorenstein,
                });
                for name in ["gorenstein_table", "gorenstein_description"] {
                    if let Some(c) = r.check(name) {
                        report[name] = json!(c.status);
                    }
                }
                text = format!("{key}: h = {} palindromic={}\n", r.h_vector, r.palindromic);
            }
            report["ledger"] = json!(e.ledger);
        }
        IdealOp::Betti => {
            let b = minimal_betti(&ideal, cfg.max_steps, cfg.seed)?;
            report["betti"] = b.to_json();
            report["resolution"] = json!(b.display_resolution());
            report["totals"] = json!(b.totals());
            let mut cmp = serde_json::Map::new();
            if let Some(t) = &x.resolution {
                cmp.insert("resolution".into(), json!(&b == t));
            }
            if let Some(t) = &x.betti {
                cmp.insert("betti".into(), json!(&b == t));
            }
            if let Some(t) = &x.ranks {
                cmp.insert("ranks".into(), json!(&b.totals() == t));
            }
            report["table_match"] = Value::Object(cmp);
            text = format!("{}\n{}", b.display_resolution(), b);
        }
        IdealOp::Licci => {
            let core = cat.core_ideal(key)?.unwrap_or(ideal);
            let codim = hilbert_series(&core).codim;
            let b = minimal_betti(&core, cfg.max_steps, cfg.seed)?;
            let rep = licci_criterion(&b, codim)?;
            report["core_resolution"] = json!(b.display_resolution());
            report["licci"] = serde_json::to_value(&rep).expect("json");
            report["expected"] = json!(x.licci);
            text = format!(
                "{key}: {} -> {:?} (g={}, max n_gj={}, min n_1j={})\n",
                b.display_resolution(),
                rep.verdict,
                rep.g,
                rep.max_last_twist,
                rep.min_first_twist
            );
        }
    }
    Ok(Output {
        json: report,
        text,
        fail,
    })
}

fn parse_sequence(a: &str, b: &str, spec: &str) -> Result<Vec<Poly>, CliError> {
    let cat = catalog();
    let stored = |corrected: bool| -> Result<Vec<Poly>, CliError> {
        for (k, other) in [(a, b), (b, a)] {
            if let Some((partner, seq)) = cat.link_sequence(k, corrected)? {
                if partner == other {
                    return Ok(seq);
                }
            }
        }
        Err(CliError::Usage(format!("no stored linking sequence for {a} and {b}")))
    };
    match spec.trim() {
        "@paper" => stored(true),
        "@printed" => stored(false),
        s => {
            let ring = cat.entry_ring(a)?;
            let line: Vec<String> = s
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    let is_f = t.strip_prefix('f').is_some_and(|n| n.parse::<usize>().is_ok());
                    if t == "Q" || is_f {
                        format!("@{t}")
                    } else {
                        t.to_string()
                    }
                })
                .collect();
            Ok(expand_tokens(cat, a, &ring, &line.join(", "))?)
        }
    }
}

fn cmd_link(cli: &Cli, a: &str, b: &str, spec: &str) -> Result<Output, CliError> {
    let cat = catalog();
    let (ia, ib) = (cat.get_ideal(a)?, cat.get_ideal(b)?);
    if ia.ring().name() != ib.ring().name() {
        return Err(CliError::Usage(format!("{a} and {b} live in different rings")));
    }
    let seq = parse_sequence(a, b, spec)?;
    let rep = check_linked((a, b), &ia, &ib, &seq)?;
    let mut j = rep.to_json();
    j["schema"] = json!(1);
    j["seq_spec"] = json!(spec);
    j["config"] = json!({"field": "QQ", "seed": cli.seed});
    let text = format!(
        "{a} <-> {b}: linked={} (regular {}, forward {}, backward {})\n",
        rep.linked(),
        rep.regular_sequence_ok,
        rep.colon_forward_ok,
        rep.colon_backward_ok
    );
    Ok(Output {
        json: j,
        text,
        fail: (!rep.linked()).then(|| format!("{a} <-> {b}")),
    })
}

fn cmd_graph(cli: &Cli, kind: &str, weight: &str) -> Result<Output, CliError> {
    let kind: RootType = kind.parse()?;
    let idx = parse_weight_index(weight)?;
    let g = build_crystal(&RootDatum::new(kind), idx)?;
    let text = if cli.format == Format::Text {
        g.vertices
            .iter()
            .map(|v| format!("{} {} {:?}\n", v.word_string(), v.length, v.weight))
            .collect()
    } else {
        g.to_dot()
    };
    let mut j = g.to_json();
    j["config"] = json!({"seed": cli.seed});
    Ok(Output::new(j, text))
}

fn cmd_verify(cli: &Cli, suite: SuiteArg, corrupt: Option<String>, sequential: bool) -> Result<Output, CliError> {
    let suite = match suite {
        SuiteArg::Core => Suite::Core,
        SuiteArg::Full => Suite::Full,
    };
    if let Some(k) = &corrupt {
        catalog().entry(k)?;
    }
    let cfg = VerifyConfig {
        corrupt,
        ..config(cli)?
    };
    let mode = if sequential { Mode::Sequential } else { Mode::Parallel };
    let r = verify_suite(suite, &cfg, mode);
    let mut text = String::new();
    for e in &r.entries {
        text.push_str(&format!(
            "{:8} {:9} {:>8.1} ms  codim {:>2}  h = {}\n",
            e.key,
            format!("{:?}", e.status()),
            e.wall_ms,
            e.codim,
            e.h_vector
        ));
        for c in e.checks.iter().filter(|c| !matches!(c.status, Status::Pass | Status::Unchecked)) {
            text.push_str(&format!("           {} {:?}: {}\n", c.name, c.status, c.detail));
        }
    }
    for (k, err) in &r.errors {
        text.push_str(&format!("{k:8} ERROR {err}\n"));
    }
    let failures = r.failures();
    text.push_str(&format!(
        "{} entries, {} failures, {:.0} ms\n",
        r.entries.len(),
        failures.len(),
        r.wall_ms
    ));
    Ok(Output {
        json: r.to_json(),
        text,
        fail: (!failures.is_empty()).then(|| failures.join(", ")),
    })
}
