//! Betti tables, and minimal graded Betti numbers of Cohen-Macaulay
//! quotients by Artinian reduction and Koszul homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, PrimeField};
use crate::groebner::{normal_form, Ideal};
use crate::hilbert::{hilbert_series, UniPoly};
use crate::poly::{AmbientRing, Monomial, Polynomial, Ring};

use super::linalg::rank_mod_p;
use super::working_prime;

/// `β_{i,j}`: homological degree `i`, internal degree `j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_modules(modules: &[Vec<i64>]) -> Self {
        let mut t = BettiTable::new();
        for (i, m) in modules.iter().enumerate() {
            for &j in m {
                t.add(i, j, 1);
            }
        }
        t
    }

    pub fn add(&mut self, i: usize, j: i64, n: usize) {
        if n > 0 {
            *self.entries.entry((i, j)).or_insert(0) += n;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Largest homological degree with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.length() + 1];
        for (&(i, _), &b) in &self.entries {
            t[i] += b;
        }
        t
    }

    /// Internal degrees occurring in step `i`, ascending.
    pub fn twists(&self, i: usize) -> Vec<i64> {
        self.entries
            .keys()
            .filter(|k| k.0 == i)
            .map(|k| k.1)
            .collect()
    }

    pub fn euler_polynomial(&self) -> UniPoly {
        let mut c: Vec<i64> = Vec::new();
        for (&(i, j), &b) in &self.entries {
            let j = j as usize;
            if c.len() <= j {
                c.resize(j + 1, 0);
            }
            let s = if i % 2 == 0 { 1 } else { -1 };
            c[j] += s * b as i64;
        }
        UniPoly::new(c)
    }

    /// Tensor product with a Koszul complex on `r` linear forms.
    pub fn extend_by_linear(&self, r: usize) -> BettiTable {
        let mut out = BettiTable::new();
        for (&(i, j), &b) in &self.entries {
            for k in 0..=r {
                out.add(i + k, j + k as i64, b * binomial(r, k));
            }
        }
        out
    }

    /// Entries with homological degree at most `i`.
    pub fn truncate(&self, i: usize) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| k.0 <= i)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// `R <- R^5(-2) <- R^5(-3)+R(-4)`, twists ascending within a step.
    pub fn display_resolution(&self) -> String {
        (0..=self.length())
            .map(|i| {
                let parts: Vec<String> = self
                    .entries
                    .iter()
                    .filter(|(k, _)| k.0 == i)
                    .map(|(&(_, j), &b)| {
                        let base = if b == 1 { "R".to_string() } else { format!("R^{b}") };
                        if j == 0 {
                            base
                        } else {
                            format!("{base}(-{j})")
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join("+")
                }
            })
            .join(" <- ")
    }

    /// `{"i": {"j": β}}` plus a `total` row.
    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (&(i, j), &b) in &self.entries {
            m.entry(i.to_string())
                .or_insert_with(|| json!({}))
                .as_object_mut()
                .unwrap()
                .insert(j.to_string(), json!(b));
        }
        m.insert("total".into(), json!(self.totals()));
        Value::Object(m)
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `j - i`, in the usual layout.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.length();
        let rows: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).sorted().dedup().collect();
        let w = 6;
        write!(f, "{:>6}", "")?;
        for i in 0..=len {
            write!(f, "{i:>w$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for t in self.totals() {
            write!(f, "{t:>w$}")?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>6}", format!("{r}:"))?;
            for i in 0..=len {
                let b = self.get(i, r + i as i64);
                if b == 0 {
                    write!(f, "{:>w$}", ".")?;
                } else {
                    write!(f, "{b:>w$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BettiError {
    #[error("malformed resolution display `{0}`")]
    Parse(String),
    #[error("the unit ideal has no resolution of R/I")]
    UnitIdeal,
    #[error("coefficients do not reduce mod {0}")]
    BadPrime(u32),
    #[error("generator is not homogeneous")]
    Inhomogeneous,
    #[error("no regular sequence of linear forms found after {0} draws; R/I is probably not Cohen-Macaulay")]
    NotCohenMacaulay(usize),
    #[error("resolution continues past step {max_steps}; partial table:\n{partial}")]
    StepBound { max_steps: usize, partial: BettiTable },
}

/// Parses `R <- R^5(-2) <- R^11(-4)+R(-3) <- ...`.
pub fn parse_resolution(s: &str) -> Result<BettiTable, BettiError> {
    let err = || BettiError::Parse(s.to_string());
    let mut t = BettiTable::new();
    for (i, step) in s.split("<-").enumerate() {
        let step = step.trim();
        if step == "0" {
            continue;
        }
        for part in step.split('+') {
            let part = part.trim();
            let rest = part.strip_prefix('R').ok_or_else(err)?;
            let (rank, rest) = match rest.strip_prefix('^') {
                Some(r) => {
                    let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                    (r[..end].parse::<usize>().map_err(|_| err())?, &r[end..])
                }
                None => (1, rest),
            };
            let twist = if rest.is_empty() {
                0
            } else {
                let inner = rest
                    .strip_prefix("(-")
                    .and_then(|x| x.strip_suffix(')'))
                    .ok_or_else(err)?;
                inner.parse::<i64>().map_err(|_| err())?
            };
            t.add(i, twist, rank);
        }
    }
    Ok(t)
}

/// Parses rows `r:c0,c1,...;...` where column `i` of row `r` is
/// `β_{i,i+r}` and `.` means zero.
pub fn parse_betti_rows(s: &str) -> Result<BettiTable, BettiError> {
    let err = || BettiError::Parse(s.to_string());
    let mut t = BettiTable::new();
    for row in s.split(';') {
        let (r, cols) = row.split_once(':').ok_or_else(err)?;
        let r: i64 = r.trim().parse().map_err(|_| err())?;
        for (i, c) in cols.split(',').enumerate() {
            let c = c.trim();
            if c == "." {
                continue;
            }
            t.add(i, r + i as i64, c.parse().map_err(|_| err())?);
        }
    }
    Ok(t)
}

/// Minimal graded Betti numbers of `R/I` for a homogeneous `I` with `R/I`
/// Cohen-Macaulay.
///
/// Linear forms in `I` split off as a Koszul factor. The rest is cut down
/// by `dim` random linear forms; the cut is accepted only when the Artinian
/// quotient has the h-vector as Hilbert function, which certifies a regular
/// sequence. Betti numbers are then read off Koszul homology of the
/// Artinian algebra over `GF(p)`.
pub fn minimal_betti<F: Field>(
    ideal: &Ideal<F>,
    max_steps: usize,
    seed: u64,
) -> Result<BettiTable, BettiError> {
    let p = working_prime(ideal.ring().field());
    let ring_p = ideal.ring().over(PrimeField::new(p));
    let ip = ideal.reduce_mod(&ring_p).ok_or(BettiError::BadPrime(p))?;
    if ip.generators().iter().any(|g| g.homogeneous_degree().is_none()) {
        return Err(BettiError::Inhomogeneous);
    }
    if ip.is_unit() {
        return Err(BettiError::UnitIdeal);
    }
    let gb = ip.groebner_basis().to_vec();
    let (linear, rest): (Vec<_>, Vec<_>) = gb.into_iter().partition(|g| g.degree() == Some(1));
    let core = Ideal::new(&ring_p, rest).expect("same ring");
    let (core, _) = core.restrict_to_support();
    let table = artinian_betti(&core, seed)?.extend_by_linear(linear.len());
    if table.length() > max_steps {
        return Err(BettiError::StepBound {
            max_steps,
            partial: table.truncate(max_steps),
        });
    }
    Ok(table)
}

fn artinian_betti(ideal: &Ideal<PrimeField>, seed: u64) -> Result<BettiTable, BettiError> {
    let mut unit = BettiTable::new();
    unit.add(0, 0, 1);
    if ideal.is_zero() {
        return Ok(unit);
    }
    let hd = hilbert_series(ideal);
    let n = ideal.ring().nvars();
    let c = hd.codim;
    let field = *ideal.ring().field();
    let names: Vec<String> = ideal.ring().variables()[..c].to_vec();
    let small: Ring<PrimeField> = AmbientRing::new("A", &names, field).expect("subring");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const DRAWS: usize = 4;
    for _ in 0..DRAWS {
        // x_v -> Σ_u c_vu x_u for the last n - c variables
        let images: Vec<Polynomial<PrimeField>> = (0..n)
            .map(|v| {
                if v < c {
                    Polynomial::var(&small, v)
                } else {
                    let terms = (0..c)
                        .map(|u| (Monomial::var(u), rng.gen_range(1..field.modulus())))
                        .collect();
                    Polynomial::from_terms(&small, terms)
                }
            })
            .collect();
        let gens: Vec<Polynomial<PrimeField>> = ideal
            .generators()
            .iter()
            .map(|g| substitute(g, &images, &small))
            .collect();
        let red = Ideal::new(&small, gens).expect("same ring");
        let hf = crate::hilbert::hilbert_function_prefix(&red, hd.h_vector.degree().unwrap_or(0) + 1);
        let want: Vec<i64> = (0..hf.len()).map(|d| hd.h_vector.coeff(d)).collect();
        if hf.iter().map(|&x| x as i64).collect::<Vec<_>>() != want {
            continue;
        }
        return Ok(koszul_homology(&red));
    }
    Err(BettiError::NotCohenMacaulay(DRAWS))
}

fn substitute(
    f: &Polynomial<PrimeField>,
    images: &[Polynomial<PrimeField>],
    target: &Ring<PrimeField>,
) -> Polynomial<PrimeField> {
    let mut acc = Polynomial::zero(target);
    for (m, c) in f.terms() {
        let mut t = Polynomial::constant(target, *c);
        for v in m.support() {
            t = &t * &images[v].pow(m.exp(v));
        }
        acc = &acc + &t;
    }
    acc
}

/// Betti numbers of `A = S/J` over `S` for Artinian `J`, from the
/// homology of `K(x) ⊗ A` in each internal degree.
fn koszul_homology(j: &Ideal<PrimeField>) -> BettiTable {
    let ring = j.ring();
    let c = ring.nvars();
    let p = ring.field().modulus();
    let gb = j.groebner_basis().to_vec();
    let lt = j.leading_term_ideal();
    // standard monomials by degree
    let mut basis: Vec<Vec<Monomial>> = vec![vec![Monomial::one()]];
    loop {
        let prev = basis.last().unwrap();
        let mut next: Vec<Monomial> = prev
            .iter()
            .flat_map(|m| (0..c).map(move |v| m.mul(&Monomial::var(v))))
            .filter(|m| !lt.contains(m))
            .collect();
        next.sort_by(|a, b| ring.order().cmp(a, b));
        next.dedup();
        if next.is_empty() {
            break;
        }
        basis.push(next);
    }
    let top = basis.len() - 1;
    let pos: Vec<HashMap<Monomial, usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect())
        .collect();
    // mult[v][d][k] = coordinates of x_v * basis[d][k] in degree d+1
    let mult: Vec<Vec<Vec<Vec<(usize, u32)>>>> = (0..c)
        .map(|v| {
            (0..top)
                .map(|d| {
                    basis[d]
                        .iter()
                        .map(|m| {
                            let f = Polynomial::monomial(ring, m.mul(&Monomial::var(v)), 1);
                            normal_form(&f, &gb)
                                .terms()
                                .iter()
                                .map(|(mm, cc)| (pos[d + 1][mm], *cc))
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=c).map(|k| (0..c).combinations(k).collect()).collect();
    let sub_idx: Vec<HashMap<Vec<usize>, usize>> = subsets
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let dim_k = |i: usize, jdeg: usize| -> usize {
        if i > c || jdeg < i || jdeg - i > top {
            0
        } else {
            subsets[i].len() * basis[jdeg - i].len()
        }
    };
    // rank of ∂ : K_{i,j} -> K_{i-1,j}
    let rank = |i: usize, jdeg: usize| -> usize {
        if i == 0 || dim_k(i, jdeg) == 0 || dim_k(i - 1, jdeg) == 0 {
            return 0;
        }
        let d = jdeg - i;
        let tgt_len = basis[d + 1].len();
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(dim_k(i, jdeg));
        for s in &subsets[i] {
            for k in 0..basis[d].len() {
                let mut row = vec![0u32; dim_k(i - 1, jdeg)];
                for (q, &v) in s.iter().enumerate() {
                    let mut t = s.clone();
                    t.remove(q);
                    let base = sub_idx[i - 1][&t] * tgt_len;
                    for &(col, coef) in &mult[v][d][k] {
                        let val = if q % 2 == 0 { coef } else { (p - coef) % p };
                        let e = &mut row[base + col];
                        *e = ((*e as u64 + val as u64) % p as u64) as u32;
                    }
                }
                rows.push(row);
            }
        }
        rank_mod_p(&mut rows, p)
    };
    let mut t = BettiTable::new();
    for i in 0..=c {
        for jdeg in i..=i + top {
            let b = dim_k(i, jdeg) - rank(i, jdeg) - rank(i + 1, jdeg);
            t.add(i, jdeg as i64, b);
        }
    }
    t
}
