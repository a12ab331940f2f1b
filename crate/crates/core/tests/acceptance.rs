//! Acceptance suite: one line per criterion.
//!
//! Run with `cargo test --test acceptance`. Criteria listed in
//! `EXPECTED_FAILURES` fail on catalog data that cannot be reproduced; the
//! process exits nonzero only if the set of failing criteria changes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minuscule::catalog::{catalog, Labelling, Poly};
use minuscule::complexes::{
    determinant, eagon_northcott, koszul_complex, minimal_betti, minors2, pfaffian, pfaffian_complex,
    submaximal_pfaffians, verify_resolution, BettiTable, GradedFreeComplex, Matrix,
};
use minuscule::hilbert::{hilbert_function_prefix, hilbert_series};
use minuscule::linkage::{check_linked, licci_criterion, LicciVerdict};
use minuscule::verify::{verify_entry, FieldChoice, Status, VerifyConfig, CORE_E7, RATIONAL_SPOT_CHECKS};
use minuscule::weyl::{appendix_rows, build_crystal, verify_appendix_tables, RootDatum, RootType};
use minuscule::{AmbientRing, Field, Ideal, PrimeField, Polynomial, Rationals, DEFAULT_PRIME};

/// Per-ideal budget over GF(32003).
const FP_BUDGET_MS: f64 = 1_000.0;
/// Per-ideal budget over QQ.
const QQ_BUDGET_MS: f64 = 60_000.0;
/// Total budget for the E7 core subset over GF(32003).
const E7_CORE_BUDGET_MS: f64 = 300_000.0;
/// Random points for resolution checks.
const POINTS: usize = 3;
const SEED: u64 = 1;
const LICCI_SWEEP: usize = 50;
const PF_CASES: usize = 100;
const PF_MAX_SIZE: usize = 8;
const GB_SHUFFLES: usize = 20;
const GB_IDEALS: usize = 10;
/// Degree bound for comparing the Hilbert series with direct counts.
const HILBERT_PREFIX: usize = 6;

/// Criteria that fail on the stored data, with the reason.
const EXPECTED_FAILURES: &[(usize, &str)] = &[
    (
        2,
        "E7/J30: the table prints dim 10; the corrected ideal (the listed one plus x19) has dim 11, \
         matching the length of node 30, and the listed ideal without x19 is not Cohen-Macaulay",
    ),
    (
        8,
        "E7 rows 11, 13, 16, 17, 29 of the minuscule table carry misprinted words or weights",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

type Res = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fp_config() -> VerifyConfig {
    VerifyConfig {
        betti: false,
        seed: SEED,
        ..VerifyConfig::default()
    }
}

fn c1_e6_table() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let mut ledgered = Vec::new();
    let mut checked = 0;
    let mut slowest = 0.0f64;
    let mut i20 = String::new();
    for e in cat.entries().iter().filter(|e| e.key.starts_with("E6/")) {
        let r = verify_entry(&e.key, &fp_config()).map_err(err)?;
        checked += 1;
        slowest = slowest.max(r.wall_ms);
        if r.wall_ms > FP_BUDGET_MS {
            bad.push(format!("{} took {:.0} ms", e.key, r.wall_ms));
        }
        for name in ["codim", "h_vector"] {
            match r.check(name).map(|c| c.status) {
                Some(Status::Pass) => {}
                Some(Status::Ledgered) => ledgered.push(format!("{} {name}", e.key)),
                s => bad.push(format!("{} {name} {s:?}", e.key)),
            }
        }
        if e.key == "E6/I20" {
            i20 = format!(
                "I20 codim computed {} vs printed {}",
                r.codim,
                e.expected.codim.map_or("-".into(), |c| c.to_string())
            );
        }
    }
    let qq = VerifyConfig {
        field: FieldChoice::Rationals,
        ..fp_config()
    };
    let mut qq_times = Vec::new();
    for key in RATIONAL_SPOT_CHECKS.iter().filter(|k| k.starts_with("E6/")) {
        let r = verify_entry(key, &qq).map_err(err)?;
        if r.status() == Status::Fail || r.wall_ms > QQ_BUDGET_MS {
            bad.push(format!("{key} over QQ: {:?} in {:.0} ms", r.status(), r.wall_ms));
        }
        qq_times.push(format!("{key} {:.0} ms", r.wall_ms));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!(
            "{checked} entries, slowest {slowest:.0} ms over GF({DEFAULT_PRIME}); ledgered: [{}]; {i20}; QQ: [{}]{}",
            ledgered.join(", "),
            qq_times.join(", "),
            if bad.is_empty() { String::new() } else { format!("; mismatches: [{}]", bad.join(", ")) }
        ),
    ))
}

fn c2_e7_core() -> Res {
    let cat = catalog();
    let start = Instant::now();
    let mut bad = Vec::new();
    for key in CORE_E7 {
        let x = cat.expected_data(key).map_err(err)?;
        let r = verify_entry(key, &fp_config()).map_err(err)?;
        if x.dim != Some(r.dim) {
            bad.push(format!("{key} dim {} vs table {:?}", r.dim, x.dim));
        }
        let h_ok = x
            .h_vector
            .as_ref()
            .is_some_and(|h| *h == r.h_vector || *h == r.k_numerator);
        if !h_ok {
            bad.push(format!("{key} numerator {} vs table {:?}", r.h_vector, x.h_vector.as_ref().map(|h| h.to_string())));
        }
    }
    let ms = start.elapsed().as_secs_f64() * 1e3;
    if ms > E7_CORE_BUDGET_MS {
        bad.push(format!("took {ms:.0} ms"));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!(
            "{} entries in {ms:.0} ms{}",
            CORE_E7.len(),
            if bad.is_empty() { String::new() } else { format!("; mismatches: [{}]", bad.join(", ")) }
        ),
    ))
}

fn shape(c: &GradedFreeComplex<Rationals>) -> String {
    c.betti().display_resolution()
}

fn c3_structured() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    let mut check = |name: &str, c: &GradedFreeComplex<Rationals>, ideal: &Ideal<Rationals>, want: &str| -> Result<(), String> {
        let got = shape(c);
        if got != want {
            bad.push(format!("{name}: {got}"));
        }
        let rep = verify_resolution(c, ideal, POINTS, SEED).map_err(err)?;
        if !rep.passed() {
            bad.push(format!("{name}: resolution check failed ({:?})", rep.rank_defects));
        }
        notes.push(format!("{name} {:?}", c.ranks()));
        Ok(())
    };

    let m = cat.matrix("E6/I23", "M23").map_err(err)?;
    let ring = m.ring().clone();
    let pf = Ideal::new(&ring, submaximal_pfaffians(&m).map_err(err)?).map_err(err)?;
    check("Pfaffian 5x5", &pfaffian_complex(&m).map_err(err)?, &pf, "R <- R^5(-2) <- R^5(-3) <- R(-5)")?;

    let n = cat.matrix("E6/I19", "N19").map_err(err)?;
    let en = Ideal::new(n.ring(), minors2(&n).map_err(err)?).map_err(err)?;
    check("EN 2x4", &eagon_northcott(&n).map_err(err)?, &en, "R <- R^6(-2) <- R^8(-3) <- R^3(-4)")?;

    let n = cat.matrix("E6/I10", "M10").map_err(err)?;
    let en = Ideal::new(n.ring(), minors2(&n).map_err(err)?).map_err(err)?;
    check("EN 2x3", &eagon_northcott(&n).map_err(err)?, &en, "R <- R^3(-2) <- R^2(-3)")?;

    let t = cat.recipe_complex("E6/I14").map_err(err)?.ok_or("E6/I14 has no recipe")?;
    let i14 = cat.get_ideal("E6/I14").map_err(err)?;
    let want_totals = vec![1, 10, 40, 86, 110, 86, 40, 10, 1];
    if t.ranks() != want_totals {
        bad.push(format!("I14 tensor totals {:?}", t.ranks()));
    }
    let rep = verify_resolution(&t, &i14, POINTS, SEED).map_err(err)?;
    if !rep.passed() {
        bad.push("I14 tensor: resolution check failed".into());
    }
    notes.push(format!("I14 tensor {:?}", t.ranks()));

    Ok(Outcome::new(
        bad.is_empty(),
        format!("{}; {POINTS} points, exact{}", notes.join(", "), fmt_bad(&bad)),
    ))
}

fn fmt_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failures: [{}]", bad.join(", "))
    }
}

fn c4_minimal_betti() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let i22 = cat.get_ideal("E6/I22").map_err(err)?;
    let b22 = minimal_betti(&i22, 30, SEED).map_err(err)?;
    let want22 = cat.expected_data("E6/I22").map_err(err)?.resolution.clone().ok_or("I22 has no resolution")?;
    if b22 != want22 {
        bad.push(format!("I22: {}", b22.display_resolution()));
    }
    let j51 = cat.get_ideal("E7/J51").map_err(err)?;
    let b51 = minimal_betti(&j51, 30, SEED).map_err(err)?;
    let x51 = cat.expected_data("E7/J51").map_err(err)?;
    if x51.betti.as_ref() != Some(&b51) {
        bad.push(format!("J51 table:\n{b51}"));
    }
    if b51.totals() != [1, 7, 22, 22, 7, 1] {
        bad.push(format!("J51 totals {:?}", b51.totals()));
    }
    let mut degrees: Vec<u32> = j51.generators().iter().filter_map(|g| g.homogeneous_degree()).collect();
    degrees.sort();
    if degrees != [2, 2, 2, 2, 2, 2, 3] || b51.twists(1) != [2, 3] || b51.get(1, 2) != 6 || b51.get(1, 3) != 1 {
        bad.push(format!("J51 generators in degrees {degrees:?}"));
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!(
            "I22 {}; J51 totals {:?}, 6 quadrics + 1 cubic{}",
            b22.display_resolution(),
            b51.totals(),
            fmt_bad(&bad)
        ),
    ))
}

fn c5_gorenstein() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let mut e6_rows = 0;
    let mut described = 0;
    let mut e7_agree = 0;
    let mut e7_ledgered = Vec::new();
    for e in cat.entries() {
        let r = verify_entry(&e.key, &fp_config()).map_err(err)?;
        if let Some(c) = r.check("gorenstein_description") {
            described += 1;
            if c.status != Status::Pass {
                bad.push(format!("{} description: {}", e.key, c.detail));
            }
        }
        let Some(c) = r.check("gorenstein_table") else { continue };
        match (e.family(), c.status) {
            (RootType::E6, Status::Pass) => e6_rows += 1,
            (RootType::E6, _) => bad.push(format!("{} node {}: {}", e.key, e.node(), c.detail)),
            (RootType::E7, Status::Pass) => e7_agree += 1,
            (RootType::E7, Status::Ledgered) => e7_ledgered.push(e.key.clone()),
            (RootType::E7, _) => bad.push(format!("{}: {}", e.key, c.detail)),
        }
    }
    let rows = appendix_rows(RootType::E6);
    let node = |n: usize| rows.iter().find(|r| r.node == n).map(|r| r.gorenstein);
    let p10 = verify_entry("E6/I10", &fp_config()).map_err(err)?.palindromic;
    let p23 = verify_entry("E6/I23", &fp_config()).map_err(err)?.palindromic;
    if node(10) != Some(false) || node(23) != Some(true) || p10 || !p23 {
        bad.push("E6 node 10/23 spot check".into());
    }
    Ok(Outcome::new(
        bad.is_empty() && e6_rows == 27,
        format!(
            "E6 column {e6_rows}/27, descriptions {described} agree; E7 column {e7_agree} agree, ledgered [{}]{}",
            e7_ledgered.join(", "),
            fmt_bad(&bad)
        ),
    ))
}

fn c6_linkage() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for (a, b) in [("E7/J50", "E7/J51"), ("E6/I22", "E6/I23")] {
        let (partner, seq) = [a, b]
            .iter()
            .find_map(|k| cat.link_sequence(k, true).ok().flatten())
            .ok_or(format!("no sequence for {a}"))?;
        if partner != a && partner != b {
            bad.push(format!("{a}: partner {partner}"));
        }
        let rep = check_linked((a, b), &cat.get_ideal(a).map_err(err)?, &cat.get_ideal(b).map_err(err)?, &seq)
            .map_err(err)?;
        if !rep.linked() {
            bad.push(format!("{a} <-> {b}: {:?}", rep.to_json()));
        }
        notes.push(format!(
            "{a} <-> {b} by {} elements (regular {})",
            seq.len(),
            rep.regular_sequence_ok
        ));
    }
    Ok(Outcome::new(bad.is_empty(), format!("{}{}", notes.join(", "), fmt_bad(&bad))))
}

fn random_ci_table(rng: &mut ChaCha8Rng) -> Result<(BettiTable, usize), String> {
    let c = rng.gen_range(1..=6);
    let ring = AmbientRing::indexed("S", "x", c, PrimeField::new(DEFAULT_PRIME));
    let elems: Vec<_> = (0..c).map(|i| Polynomial::var(&ring, i).pow(rng.gen_range(1..=5))).collect();
    Ok((koszul_complex(&ring, &elems).map_err(err)?.betti(), c))
}

fn c7_licci() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for key in ["E6/I20", "E6/I13"] {
        let core = cat.core_ideal(key).map_err(err)?.ok_or(format!("{key} has no core"))?;
        let codim = hilbert_series(&core).codim;
        let b = minimal_betti(&core, 30, SEED).map_err(err)?;
        let r = licci_criterion(&b, codim).map_err(err)?;
        if r.verdict != LicciVerdict::NotLicci || (r.g, r.max_last_twist, r.min_first_twist) != (4, 6, 2) {
            bad.push(format!("{key}: {r:?}"));
        }
        notes.push(format!(
            "{key} {:?} (g={}, max n_gj={}, min n_1j={})",
            r.verdict, r.g, r.max_last_twist, r.min_first_twist
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut inconclusive = 0;
    for _ in 0..LICCI_SWEEP {
        let (b, c) = random_ci_table(&mut rng)?;
        match licci_criterion(&b, c) {
            Ok(r) if r.verdict == LicciVerdict::Inconclusive => inconclusive += 1,
            other => bad.push(format!("c.i. {}: {other:?}", b.display_resolution())),
        }
    }
    notes.push(format!("c.i. sweep {inconclusive}/{LICCI_SWEEP} inconclusive"));
    Ok(Outcome::new(bad.is_empty(), format!("{}{}", notes.join(", "), fmt_bad(&bad))))
}

fn c8_combinatorics() -> Res {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for (kind, idx, n) in [(RootType::E6, 1, 27), (RootType::E7, 7, 56)] {
        let g = build_crystal(&RootDatum::new(kind), idx).map_err(err)?;
        if g.len() != n {
            bad.push(format!("{kind}: {} vertices", g.len()));
        }
        if !g.is_graded() || !g.is_self_dual() {
            bad.push(format!("{kind}: graded {} self-dual {}", g.is_graded(), g.is_self_dual()));
        }
        let rep = verify_appendix_tables(&g, &appendix_rows(kind));
        let failing: Vec<usize> = rep.rows.iter().filter(|r| !r.ok()).map(|r| r.node).collect();
        if !failing.is_empty() {
            bad.push(format!("{kind} rows {failing:?}"));
        }
        notes.push(format!("{kind}: {} vertices, {}/{} rows", g.len(), rep.matched(), rep.rows.len()));
    }
    Ok(Outcome::new(bad.is_empty(), format!("{}{}", notes.join(", "), fmt_bad(&bad))))
}

fn euler_sum(vars: &[Poly], derivs: &[Poly]) -> Poly {
    vars.iter()
        .zip(derivs)
        .fold(Polynomial::zero(vars[0].ring()), |acc, (x, f)| acc + x * f)
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rationals> {
    let ring = AmbientRing::indexed("S", "t", 3, Rationals);
    let mut m = Matrix::zeros(&ring, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let mut e = Polynomial::constant(&ring, Rationals.from_i64(rng.gen_range(-3..=3)));
            for v in 0..3 {
                let c = Rationals.from_i64(rng.gen_range(-2..=2));
                e = e + Polynomial::var(&ring, v).scalar_mul(&c);
            }
            m.set(j, i, -&e);
            m.set(i, j, e);
        }
    }
    m
}

fn c9_identities() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let three = Rationals.from_i64(3);

    let q7 = cat.get_cubic(Labelling::E7);
    let r7 = q7.ring().clone();
    let x7: Vec<Poly> = (0..27).map(|i| Polynomial::var(&r7, i)).collect();
    let f7: Vec<Poly> = (1..=27).map(|i| cat.get_derivative(Labelling::E7, i)).collect::<Result<_, _>>().map_err(err)?;
    if euler_sum(&x7, &f7) != q7.scalar_mul(&three) {
        bad.push("Euler identity, E7 labelling".into());
    }

    let q6 = cat.get_cubic(Labelling::E6);
    let r6 = q6.ring().clone();
    let y6: Vec<Poly> = (0..27)
        .map(|i| cat.sigma(&Polynomial::var(&r6, i)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let f6: Vec<Poly> = (1..=27).map(|i| cat.get_derivative(Labelling::E6D5, i)).collect::<Result<_, _>>().map_err(err)?;
    if euler_sum(&y6, &f6) != cat.get_cubic(Labelling::E6D5).scalar_mul(&three) {
        bad.push("Euler identity, E6 labelling".into());
    }

    let mut agree = 0;
    for i in 1..=27 {
        if f7[i - 1] == q7.derivative(i - 1) {
            agree += 1;
        } else {
            bad.push(format!("E7 f{i}"));
        }
        if f6[i - 1] == cat.sigma(&q6.derivative(i - 1)).map_err(err)? {
            agree += 1;
        } else {
            bad.push(format!("E6 f{i}"));
        }
    }
    let printed_off: Vec<usize> = (1..=27)
        .filter(|&i| cat.printed_derivative(Labelling::E6D5, i).ok() != Some(f6[i - 1].clone()))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pf_ok = 0;
    for k in 0..PF_CASES {
        let n = 2 * (1 + k % (PF_MAX_SIZE / 2));
        let m = random_skew(&mut rng, n);
        let pf = pfaffian(&m).map_err(err)?;
        if &pf * &pf == determinant(&m).map_err(err)? {
            pf_ok += 1;
        } else {
            bad.push(format!("Pf^2 != det, size {n}"));
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!(
            "Euler identity in both labellings; {agree}/54 derivatives equal partials \
             ({} printed E6 forms emended: {printed_off:?}); Pf^2 = det {pf_ok}/{PF_CASES} up to size {PF_MAX_SIZE}{}",
            printed_off.len(),
            fmt_bad(&bad)
        ),
    ))
}

fn c10_properties() -> Res {
    let cat = catalog();
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let keys: Vec<&str> = cat.keys().collect();
    let picks: Vec<&str> = keys.choose_multiple(&mut rng, GB_IDEALS).copied().collect();
    for key in &picks {
        let ideal = cat.get_ideal(key).map_err(err)?;
        let gb = ideal.groebner_basis().to_vec();
        let mut gens = ideal.generators().to_vec();
        for _ in 0..GB_SHUFFLES {
            gens.shuffle(&mut rng);
            if Ideal::new(ideal.ring(), gens.clone()).map_err(err)?.groebner_basis() != gb.as_slice() {
                bad.push(format!("{key}: GB depends on generator order"));
                break;
            }
        }
    }
    let mut hilbert_ok = 0;
    let mut lt_ok = 0;
    for key in &keys {
        let ideal = cat.get_ideal(key).map_err(err)?;
        let hd = hilbert_series(&ideal);
        if hd.series_prefix(HILBERT_PREFIX) == hilbert_function_prefix(&ideal, HILBERT_PREFIX) {
            hilbert_ok += 1;
        } else {
            bad.push(format!("{key}: series vs counts"));
        }
        let rp = ideal.ring().over(PrimeField::new(DEFAULT_PRIME));
        let ip = ideal.reduce_mod(&rp).ok_or(format!("{key} does not reduce"))?;
        if ip.leading_term_ideal() == ideal.leading_term_ideal() {
            lt_ok += 1;
        } else {
            bad.push(format!("{key}: lt ideals differ over QQ and GF({DEFAULT_PRIME})"));
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!(
            "GB stable under {GB_SHUFFLES} shuffles x {} ideals; Hilbert series vs counts {hilbert_ok}/{}; \
             lt ideals QQ vs GF({DEFAULT_PRIME}) {lt_ok}/{}{}",
            picks.len(),
            keys.len(),
            keys.len(),
            fmt_bad(&bad)
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Res); 10] = [
        ("E6 table reproduction", c1_e6_table),
        ("E7 core subset", c2_e7_core),
        ("structured resolutions", c3_structured),
        ("minimal Betti spot checks", c4_minimal_betti),
        ("Gorenstein flags", c5_gorenstein),
        ("linkage", c6_linkage),
        ("licci", c7_licci),
        ("combinatorics", c8_combinatorics),
        ("identities", c9_identities),
        ("property suites", c10_properties),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let t = Instant::now();
        let out = f().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let ms = t.elapsed().as_secs_f64() * 1e3;
        println!(
            "criterion {n:>2} {name:<28} {} ({ms:.0} ms) {}",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail
        );
        if !out.pass {
            failed.insert(n);
            if let Some((_, why)) = EXPECTED_FAILURES.iter().find(|(k, _)| *k == n) {
                println!("             expected failure: {why}");
            }
        }
    }
    let expected: BTreeSet<usize> = EXPECTED_FAILURES.iter().map(|(k, _)| *k).collect();
    println!(
        "{} of 10 criteria pass; failing {:?}, expected {:?}",
        10 - failed.len(),
        failed,
        expected
    );
    if failed == expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
