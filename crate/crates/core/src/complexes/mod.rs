//! Graded free complexes with polynomial differentials.
//!
//! `F_0 = R` and `d_i : F_i -> F_{i-1}` is stored as a `rank F_{i-1} x
//! rank F_i` matrix. Twists are the `n` in `R(-n)`.

mod betti;
mod linalg;
mod matrix;

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, DEFAULT_PRIME};
use crate::groebner::{Ideal, IdealError};
use crate::hilbert::{hilbert_series, UniPoly};
use crate::poly::{Polynomial, Ring};

pub use betti::{
    minimal_betti, parse_betti_rows, parse_resolution, BettiError, BettiTable,
};
pub use linalg::rank_mod_p;
pub use matrix::{determinant, minors2, pfaffian, submaximal_pfaffians, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("Pfaffian needs an even size, got {0}")]
    OddSize(usize),
    #[error("Buchsbaum-Eisenbud complex needs an odd size, got {0}")]
    EvenSize(usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("element {0} is zero")]
    ZeroElement(usize),
    #[error("entry is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("complexes live in different rings")]
    RingMismatch,
    #[error("empty element list")]
    Empty,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Clone, Debug)]
pub struct GradedFreeComplex<F: Field> {
    ring: Ring<F>,
    modules: Vec<Vec<i64>>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> GradedFreeComplex<F> {
    /// Checks shapes and that every nonzero entry has the degree its
    /// twists demand.
    pub fn new(
        ring: &Ring<F>,
        modules: Vec<Vec<i64>>,
        diffs: Vec<Matrix<F>>,
    ) -> Result<Self, ComplexError> {
        if modules.len() != diffs.len() + 1 {
            return Err(ComplexError::Shape(format!(
                "{} modules but {} differentials",
                modules.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            let (src, dst) = (&modules[i + 1], &modules[i]);
            if d.rows() != dst.len() || d.cols() != src.len() {
                return Err(ComplexError::Shape(format!(
                    "d{} is {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    dst.len(),
                    src.len()
                )));
            }
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let e = d.get(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    let want = src[c] - dst[r];
                    if e.homogeneous_degree().map(i64::from) != Some(want) {
                        return Err(ComplexError::Inhomogeneous(format!(
                            "d{}[{r}][{c}] = {e} should have degree {want}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(GradedFreeComplex {
            ring: ring.clone(),
            modules,
            diffs,
        })
    }

    /// `R <- 0`.
    pub fn unit(ring: &Ring<F>) -> Self {
        GradedFreeComplex {
            ring: ring.clone(),
            modules: vec![vec![0]],
            diffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn twists(&self, i: usize) -> &[i64] {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[Vec<i64>] {
        &self.modules
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.len()).collect()
    }

    /// `d_i`, for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &Matrix<F> {
        &self.diffs[i - 1]
    }

    pub fn differential_mut(&mut self, i: usize) -> &mut Matrix<F> {
        &mut self.diffs[i - 1]
    }

    /// Entries of `d_1`.
    pub fn first_syzygy_generators(&self) -> Vec<Polynomial<F>> {
        self.diffs
            .first()
            .map(|d| d.entries().to_vec())
            .unwrap_or_default()
    }

    /// `Σ (-1)^i Σ_j T^{n_ij}`.
    pub fn euler_polynomial(&self) -> UniPoly {
        self.betti().euler_polynomial()
    }

    /// Graded ranks as a table (minimal only if the complex is).
    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules)
    }

    /// Indices `i` with `d_{i-1} d_i != 0`.
    pub fn failing_compositions(&self) -> Vec<usize> {
        (2..=self.length())
            .filter(|&i| {
                !self
                    .differential(i - 1)
                    .mul(self.differential(i))
                    .expect("shapes checked")
                    .is_zero()
            })
            .collect()
    }
}

impl<F: Field> fmt::Display for GradedFreeComplex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.betti().display_resolution())
    }
}

fn degree_of<F: Field>(p: &Polynomial<F>) -> Result<i64, ComplexError> {
    p.homogeneous_degree()
        .map(i64::from)
        .ok_or_else(|| ComplexError::Inhomogeneous(p.to_string()))
}

/// Koszul complex on `elements`; `F_k` has the `k`-subsets as basis, in
/// lexicographic order.
pub fn koszul_complex<F: Field>(
    ring: &Ring<F>,
    elements: &[Polynomial<F>],
) -> Result<GradedFreeComplex<F>, ComplexError> {
    if elements.is_empty() {
        return Err(ComplexError::Empty);
    }
    if let Some(i) = elements.iter().position(|e| e.is_zero()) {
        return Err(ComplexError::ZeroElement(i));
    }
    let degs: Vec<i64> = elements.iter().map(degree_of).collect::<Result<_, _>>()?;
    let n = elements.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| (0..n).combinations(k).collect()).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = subsets
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let modules = subsets
        .iter()
        .map(|l| l.iter().map(|s| s.iter().map(|&i| degs[i]).sum()).collect())
        .collect();
    let mut diffs = Vec::new();
    for k in 1..=n {
        let mut d = Matrix::zeros(ring, subsets[k - 1].len(), subsets[k].len());
        for (c, s) in subsets[k].iter().enumerate() {
            for pos in 0..s.len() {
                let mut t = s.clone();
                let v = t.remove(pos);
                let e = &elements[v];
                d.set(index[k - 1][&t], c, if pos % 2 == 0 { e.clone() } else { -e });
            }
        }
        diffs.push(d);
    }
    GradedFreeComplex::new(ring, modules, diffs)
}

/// Buchsbaum-Eisenbud complex `R <- F1 <- F2 <- R` of an odd skew matrix:
/// `d1` = signed submaximal Pfaffians, `d2 = M`, `d3` = their transpose.
pub fn pfaffian_complex<F: Field>(m: &Matrix<F>) -> Result<GradedFreeComplex<F>, ComplexError> {
    let ring = m.ring().clone();
    let p = submaximal_pfaffians(m)?;
    let n = m.rows();
    let f1: Vec<i64> = p.iter().map(degree_of).collect::<Result<_, _>>()?;
    let entry_deg = m
        .entries()
        .iter()
        .find(|e| !e.is_zero())
        .map(degree_of)
        .transpose()?
        .ok_or_else(|| ComplexError::Shape("zero matrix".into()))?;
    // Column j of M maps F2_j into F1; its twist is F1_i + deg M_ij.
    let f2: Vec<i64> = (0..n)
        .map(|j| {
            (0..n)
                .find(|&i| !m.get(i, j).is_zero())
                .map(|i| f1[i] + entry_deg)
                .unwrap_or(f1[j] + entry_deg)
        })
        .collect();
    let top = f2[0] + f1[0];
    let d1 = Matrix::row_vector(&ring, p.clone());
    let d3 = Matrix::row_vector(&ring, p).transpose();
    GradedFreeComplex::new(&ring, vec![vec![0], f1, f2, vec![top]], vec![d1, m.clone(), d3])
}

/// Eagon-Northcott complex of a `2 x n` matrix with entries of one degree.
/// `F_k` (k >= 2) has basis `e_S ⊗ x^(a,b)` with `|S| = k+1`, `a+b = k-1`.
pub fn eagon_northcott<F: Field>(m: &Matrix<F>) -> Result<GradedFreeComplex<F>, ComplexError> {
    if m.rows() != 2 || m.cols() < 2 {
        return Err(ComplexError::Shape(format!(
            "Eagon-Northcott needs a 2 x n matrix with n >= 2, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let ring = m.ring().clone();
    let degs: Vec<i64> = m
        .entries()
        .iter()
        .filter(|e| !e.is_zero())
        .map(degree_of)
        .collect::<Result<_, _>>()?;
    let d = degs[0];
    if degs.iter().any(|&x| x != d) {
        return Err(ComplexError::Inhomogeneous("entries of mixed degree".into()));
    }
    let n = m.cols();
    let minors = minors2(m)?;
    let pairs: Vec<Vec<usize>> = (0..n).combinations(2).collect();
    let mut modules = vec![vec![0], vec![2 * d; pairs.len()]];
    let mut diffs = vec![Matrix::row_vector(&ring, minors)];
    // basis of F_k: (S, a) with b = k - 1 - a
    let basis = |k: usize| -> Vec<(Vec<usize>, usize)> {
        (0..n)
            .combinations(k + 1)
            .flat_map(|s| (0..k).map(move |a| (s.clone(), a)))
            .collect()
    };
    let mut prev: Vec<(Vec<usize>, usize)> = pairs.into_iter().map(|s| (s, 0)).collect();
    for k in 2..n {
        let cur = basis(k);
        let idx: HashMap<&(Vec<usize>, usize), usize> =
            prev.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut dk = Matrix::zeros(&ring, prev.len(), cur.len());
        for (c, (s, a)) in cur.iter().enumerate() {
            let b = k - 1 - a;
            for pos in 0..s.len() {
                let mut t = s.clone();
                let j = t.remove(pos);
                let sign = pos % 2 == 0;
                for (row, ok, na) in [(0, *a >= 1, a.wrapping_sub(1)), (1, b >= 1, *a)] {
                    if !ok {
                        continue;
                    }
                    let e = m.get(row, j);
                    if e.is_zero() {
                        continue;
                    }
                    let r = idx[&(t.clone(), na)];
                    let cur_e = dk.get(r, c).clone();
                    dk.set(r, c, if sign { &cur_e + e } else { &cur_e - e });
                }
            }
        }
        modules.push(vec![(k as i64 + 1) * d; cur.len()]);
        diffs.push(dk);
        prev = cur;
    }
    GradedFreeComplex::new(&ring, modules, diffs)
}

/// Total complex of `C ⊗ D` with `d(x ⊗ y) = dx ⊗ y + (-1)^i x ⊗ dy`.
pub fn tensor<F: Field>(
    c: &GradedFreeComplex<F>,
    d: &GradedFreeComplex<F>,
) -> Result<GradedFreeComplex<F>, ComplexError> {
    if c.ring.variables() != d.ring.variables() || c.ring.field() != d.ring.field() {
        return Err(ComplexError::RingMismatch);
    }
    let ring = c.ring.clone();
    let len = c.length() + d.length();
    // basis of degree k: (i, a, j, b) with i + j = k
    let mut bases: Vec<Vec<(usize, usize, usize, usize)>> = Vec::new();
    for k in 0..=len {
        let mut b = Vec::new();
        for i in 0..=k.min(c.length()) {
            let j = k - i;
            if j > d.length() {
                continue;
            }
            for a in 0..c.modules[i].len() {
                for bb in 0..d.modules[j].len() {
                    b.push((i, a, j, bb));
                }
            }
        }
        bases.push(b);
    }
    let modules: Vec<Vec<i64>> = bases
        .iter()
        .map(|b| {
            b.iter()
                .map(|&(i, a, j, bb)| c.modules[i][a] + d.modules[j][bb])
                .collect()
        })
        .collect();
    let mut diffs = Vec::new();
    for k in 1..=len {
        let idx: HashMap<(usize, usize, usize, usize), usize> =
            bases[k - 1].iter().enumerate().map(|(n, &x)| (x, n)).collect();
        let mut m = Matrix::zeros(&ring, bases[k - 1].len(), bases[k].len());
        for (col, &(i, a, j, bb)) in bases[k].iter().enumerate() {
            if i >= 1 {
                let dc = c.differential(i);
                for a2 in 0..dc.rows() {
                    let e = dc.get(a2, a);
                    if !e.is_zero() {
                        m.set(idx[&(i - 1, a2, j, bb)], col, e.clone());
                    }
                }
            }
            if j >= 1 {
                let dd = d.differential(j);
                for b2 in 0..dd.rows() {
                    let e = dd.get(b2, bb);
                    if !e.is_zero() {
                        let v = if i % 2 == 0 { e.clone() } else { -e };
                        m.set(idx[&(i, a, j - 1, b2)], col, v);
                    }
                }
            }
        }
        diffs.push(m);
    }
    GradedFreeComplex::new(&ring, modules, diffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    /// (a) `d_{i-1} d_i = 0` exactly.
    pub d_squared_zero: bool,
    pub failing_compositions: Vec<usize>,
    /// (b) graded Euler polynomial against the K-polynomial of `R/I`.
    pub euler: UniPoly,
    pub k_numerator: UniPoly,
    pub euler_matches: bool,
    /// `d_1` generates `I`.
    pub image_matches: bool,
    /// (c) `rank d_i + rank d_{i+1} = rank F_i` at every sampled point.
    pub generic_exact: bool,
    pub rank_defects: Vec<String>,
    pub prime: u32,
    pub seed: u64,
    pub points: usize,
    pub certificate: &'static str,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.euler_matches && self.image_matches && self.generic_exact
    }
}

/// Prime used for evaluations: the characteristic if positive.
pub(crate) fn working_prime<F: Field>(field: &F) -> u32 {
    match field.characteristic() {
        0 => DEFAULT_PRIME,
        p => p as u32,
    }
}

pub(crate) fn eval_mod_p<F: Field>(f: &Polynomial<F>, point: &[u32], p: u32) -> Option<u32> {
    let p64 = p as u64;
    let mut acc = 0u64;
    for (m, c) in f.terms() {
        let mut t = f.field().reduce_mod(c, p)? as u64;
        for v in m.support() {
            for _ in 0..m.exp(v) {
                t = t * point[v] as u64 % p64;
            }
        }
        acc = (acc + t) % p64;
    }
    Some(acc as u32)
}

fn rank_at<F: Field>(m: &Matrix<F>, point: &[u32], p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| eval_mod_p(m.get(i, j), point, p).expect("coefficient reduces mod p"))
                .collect()
        })
        .collect();
    rank_mod_p(&mut rows, p)
}

pub fn verify_resolution<F: Field>(
    c: &GradedFreeComplex<F>,
    ideal: &Ideal<F>,
    points: usize,
    seed: u64,
) -> Result<ResolutionReport, ComplexError> {
    use rand::Rng;
    let failing = c.failing_compositions();
    let k = hilbert_series(ideal).k_numerator;
    let euler = c.euler_polynomial();
    let image = Ideal::new(ideal.ring(), c.first_syzygy_generators())?;
    let image_matches = image.equals(ideal)?;
    let p = working_prime(ideal.ring().field());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut defects = Vec::new();
    let n = c.ring.nvars();
    for t in 0..points {
        let pt: Vec<u32> = (0..n).map(|_| rng.gen_range(1..p)).collect();
        let ranks: Vec<usize> = (1..=c.length())
            .map(|i| rank_at(c.differential(i), &pt, p))
            .collect();
        for i in 0..=c.length() {
            let left = if i == 0 { 0 } else { ranks[i - 1] };
            let right = if i == c.length() { 0 } else { ranks[i] };
            let f = c.modules[i].len();
            if left + right != f {
                defects.push(format!(
                    "point {t}: rank d{i} + rank d{} = {left} + {right} != rank F{i} = {f}",
                    i + 1
                ));
            }
        }
    }
    Ok(ResolutionReport {
        d_squared_zero: failing.is_empty(),
        failing_compositions: failing,
        euler_matches: euler == k,
        euler,
        k_numerator: k,
        image_matches,
        generic_exact: defects.is_empty(),
        rank_defects: defects,
        prime: p,
        seed,
        points,
        certificate: "d^2 = 0, Euler polynomial = K-polynomial, generic rank exactness",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::AmbientRing;

    fn ring(n: usize) -> Ring<Rationals> {
        AmbientRing::indexed("R", "x", n, Rationals)
    }

    fn vars(r: &Ring<Rationals>, idx: &[usize]) -> Vec<Polynomial<Rationals>> {
        idx.iter().map(|&i| Polynomial::var(r, i)).collect()
    }

    #[test]
    fn koszul_on_three_variables() {
        let r = ring(3);
        let k = koszul_complex(&r, &vars(&r, &[0, 1, 2])).unwrap();
        assert_eq!(k.ranks(), vec![1, 3, 3, 1]);
        assert!(k.failing_compositions().is_empty());
        let i = Ideal::new(&r, vars(&r, &[0, 1, 2])).unwrap();
        let rep = verify_resolution(&k, &i, 3, 1).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn corrupted_differential_is_caught() {
        let r = ring(3);
        let mut k = koszul_complex(&r, &vars(&r, &[0, 1, 2])).unwrap();
        let x = Polynomial::var(&r, 0);
        k.differential_mut(2).set(0, 0, x);
        let i = Ideal::new(&r, vars(&r, &[0, 1, 2])).unwrap();
        let rep = verify_resolution(&k, &i, 3, 1).unwrap();
        assert!(!rep.d_squared_zero);
        assert!(!rep.passed());
    }

    #[test]
    fn generic_pfaffian_complex() {
        let r = ring(10);
        let mut m = Matrix::zeros(&r, 5, 5);
        let mut v = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                let x = Polynomial::var(&r, v);
                m.set(i, j, x.clone());
                m.set(j, i, -x);
                v += 1;
            }
        }
        let c = pfaffian_complex(&m).unwrap();
        assert_eq!(c.ranks(), vec![1, 5, 5, 1]);
        assert_eq!(c.betti().display_resolution(), "R <- R^5(-2) <- R^5(-3) <- R(-5)");
        let i = Ideal::new(&r, c.first_syzygy_generators()).unwrap();
        assert!(verify_resolution(&c, &i, 3, 7).unwrap().passed());
    }

    #[test]
    fn eagon_northcott_shapes() {
        for n in 2..=5 {
            let r = ring(2 * n);
            let rows = (0..2)
                .map(|i| (0..n).map(|j| Polynomial::var(&r, i * n + j)).collect())
                .collect();
            let m = Matrix::from_rows(&r, rows).unwrap();
            let c = eagon_northcott(&m).unwrap();
            assert_eq!(c.length(), n - 1);
            let i = Ideal::new(&r, c.first_syzygy_generators()).unwrap();
            let rep = verify_resolution(&c, &i, 3, 3).unwrap();
            assert!(rep.passed(), "n = {n}: {rep:?}");
        }
    }

    #[test]
    fn tensor_with_unit_and_koszul() {
        let r = ring(2);
        let a = koszul_complex(&r, &vars(&r, &[0])).unwrap();
        let b = koszul_complex(&r, &vars(&r, &[1])).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let k = koszul_complex(&r, &vars(&r, &[0, 1])).unwrap();
        assert_eq!(ab.ranks(), k.ranks());
        assert_eq!(ab.euler_polynomial(), k.euler_polynomial());
        assert!(ab.failing_compositions().is_empty());
        let u = tensor(&a, &GradedFreeComplex::unit(&r)).unwrap();
        assert_eq!(u.ranks(), a.ranks());
    }
}
