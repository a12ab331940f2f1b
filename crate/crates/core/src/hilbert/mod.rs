//! Hilbert series of `R/I` from the leading-term ideal.

mod unipoly;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::groebner::{Ideal, MonomialIdeal};
use crate::poly::Monomial;

pub use unipoly::{UniPoly, UniPolyParseError};

/// `HS(R/I) = k_numerator / (1-T)^n = h_vector / (1-T)^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub nvars: usize,
    pub k_numerator: UniPoly,
    pub dim: usize,
    pub codim: usize,
    pub h_vector: UniPoly,
}

impl HilbertData {
    pub fn is_gorenstein_candidate(&self) -> bool {
        is_palindromic(&self.h_vector)
    }

    pub fn degree(&self) -> i64 {
        self.h_vector.eval_one()
    }

    /// Coefficients of the series for degrees `0..=d_max`.
    pub fn series_prefix(&self, d_max: usize) -> Vec<u64> {
        series_prefix(&self.h_vector, self.dim, d_max)
    }
}

/// Expansion of `h / (1-T)^dim` up to `d_max`.
pub fn series_prefix(h: &UniPoly, dim: usize, d_max: usize) -> Vec<u64> {
    (0..=d_max)
        .map(|d| {
            let mut s: i128 = 0;
            for (i, &c) in h.coeffs().iter().enumerate() {
                if i <= d {
                    s += c as i128 * multiset(dim, d - i) as i128;
                }
            }
            u64::try_from(s).expect("nonnegative Hilbert function")
        })
        .collect()
}

/// Number of monomials of degree `d` in `n` variables.
fn multiset(n: usize, d: usize) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial((n + d - 1) as u64, d as u64)
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// K-polynomial (numerator over `(1-T)^n`) of a monomial ideal.
pub fn k_numerator(m: &MonomialIdeal) -> UniPoly {
    if m.is_zero() {
        return UniPoly::one();
    }
    if m.is_unit() {
        return UniPoly::zero();
    }
    let gens = m.generators();
    let mut freq = [0usize; crate::poly::MAX_VARS];
    let mut linear = Vec::new();
    for g in gens {
        for v in g.support() {
            freq[v] += 1;
        }
        if g.degree() == 1 {
            linear.push(g.support().next().unwrap());
        }
    }
    if !linear.is_empty() {
        let mut rest = m.clone();
        for &v in &linear {
            rest = rest.without_var(v);
        }
        let mut out = k_numerator(&rest);
        for _ in &linear {
            out = out.mul(&UniPoly::one_minus_t_pow(1));
        }
        return out;
    }
    let (pivot, &count) = freq
        .iter()
        .enumerate()
        .max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i)))
        .unwrap();
    if count < 2 {
        return gens
            .iter()
            .fold(UniPoly::one(), |acc, g| acc.mul(&UniPoly::one_minus_t_pow(g.degree())));
    }
    // K(I) = (1-T)·K(I without x-generators) + T·K(I : x)
    let a = k_numerator(&m.without_var(pivot)).mul(&UniPoly::one_minus_t_pow(1));
    let b = k_numerator(&m.colon_var(pivot)).shift(1);
    a.add(&b)
}

pub fn hilbert_series<F: Field>(ideal: &Ideal<F>) -> HilbertData {
    from_monomial_ideal(&ideal.leading_term_ideal())
}

pub fn from_monomial_ideal(lt: &MonomialIdeal) -> HilbertData {
    let n = lt.nvars();
    let k = k_numerator(lt);
    if lt.is_unit() {
        return HilbertData {
            nvars: n,
            k_numerator: k,
            dim: 0,
            codim: n,
            h_vector: UniPoly::zero(),
        };
    }
    let dim = lt.krull_dimension();
    let codim = n - dim;
    let mut h = k.clone();
    for _ in 0..codim {
        h = h
            .div_one_minus_t()
            .expect("(1-T)^codim divides the K-polynomial");
    }
    HilbertData {
        nvars: n,
        k_numerator: k,
        dim,
        codim,
        h_vector: h,
    }
}

pub fn is_palindromic(h: &UniPoly) -> bool {
    h.is_palindromic()
}

/// `dim_k (R/I)_d` for `d = 0..=d_max`, counted from standard monomials.
pub fn hilbert_function_prefix<F: Field>(ideal: &Ideal<F>, d_max: usize) -> Vec<u64> {
    standard_monomial_counts(&ideal.leading_term_ideal(), d_max)
}

/// Counts monomials outside `lt` degree by degree. Variables are split off
/// one at a time: `x^e·m ∉ lt` iff `m` avoids the `x`-free part of `lt : x^e`.
pub fn standard_monomial_counts(lt: &MonomialIdeal, d_max: usize) -> Vec<u64> {
    let mut memo = HashMap::new();
    count(lt.nvars(), lt.generators().to_vec(), 0, d_max, &mut memo)
}

type Memo = HashMap<(usize, usize, Vec<Monomial>), Vec<u64>>;

fn count(n: usize, gens: Vec<Monomial>, k: usize, d_max: usize, memo: &mut Memo) -> Vec<u64> {
    if gens.iter().any(|g| g.is_one()) {
        return vec![0; d_max + 1];
    }
    if gens.is_empty() {
        return (0..=d_max).map(|d| multiset(n - k, d)).collect();
    }
    let key = (k, d_max, gens);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let gens = &key.2;
    let top = gens.iter().map(|g| g.exp(k)).max().unwrap_or(0) as usize;
    let mut out = vec![0u64; d_max + 1];
    for e in 0..=d_max {
        let ee = e.min(top) as u32;
        let sub: Vec<Monomial> = {
            let mut s: Vec<Monomial> = gens
                .iter()
                .map(|g| g.with_exp(k, g.exp(k).saturating_sub(ee)))
                .filter(|g| g.exp(k) == 0)
                .collect();
            s = MonomialIdeal::new(n, s).generators().to_vec();
            s
        };
        let c = count(n, sub, k + 1, d_max - e, memo);
        for (d, v) in c.into_iter().enumerate() {
            out[d + e] += v;
        }
    }
    memo.insert(key, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::AmbientRing;

    #[test]
    fn zero_and_maximal_ideals() {
        let r = AmbientRing::indexed("R", "x", 3, Rationals);
        let z = Ideal::zero(&r);
        let hd = hilbert_series(&z);
        assert_eq!(hd.k_numerator, UniPoly::one());
        assert_eq!(hd.codim, 0);
        assert_eq!(hilbert_function_prefix(&z, 2), vec![1, 3, 6]);
        let m = Ideal::parse(&r, &["x1", "x2", "x3"]).unwrap();
        assert_eq!(hilbert_function_prefix(&m, 3), vec![1, 0, 0, 0]);
        assert_eq!(hilbert_series(&m).h_vector, UniPoly::one());
    }

    #[test]
    fn complete_intersection() {
        let r = AmbientRing::indexed("R", "x", 4, Rationals);
        let i = Ideal::parse(&r, &["x1*x2 - x3*x4", "x1^2 + x2^2 + x3^2"]).unwrap();
        let hd = hilbert_series(&i);
        assert_eq!(hd.codim, 2);
        assert_eq!(hd.h_vector.to_string(), "1+2T+T^2");
        assert_eq!(hd.series_prefix(6), hilbert_function_prefix(&i, 6));
    }

    #[test]
    fn twisted_cubic_is_not_gorenstein() {
        let r = AmbientRing::indexed("R", "x", 4, Rationals);
        let i = Ideal::parse(&r, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]).unwrap();
        let hd = hilbert_series(&i);
        assert_eq!(hd.h_vector.to_string(), "1+2T");
        assert!(!hd.is_gorenstein_candidate());
        assert_eq!(hd.series_prefix(5), hilbert_function_prefix(&i, 5));
    }

    #[test]
    fn palindromes() {
        assert!(is_palindromic(&"1+3T+T^2".parse().unwrap()));
        assert!(!is_palindromic(&"1+4T+5T^2+T^3".parse().unwrap()));
        assert!(is_palindromic(&UniPoly::one()));
    }
}
