use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Integer polynomial in `T`, coefficients lowest degree first, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly(Vec<i64>);

impl UniPoly {
    pub fn new(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![1])
    }

    /// `1 - T^d`.
    pub fn one_minus_t_pow(d: u32) -> Self {
        let mut c = vec![0; d as usize + 1];
        c[0] += 1;
        c[d as usize] -= 1;
        UniPoly::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_one(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }

    /// `T^k · self`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.0);
        UniPoly(c)
    }

    /// Exact quotient by `1 - T`, if it divides.
    pub fn div_one_minus_t(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        // self = (1 - T) q  ⇔  q_i = Σ_{j ≤ i} c_j
        let mut q = Vec::with_capacity(self.0.len());
        let mut acc = 0;
        for &c in &self.0[..self.0.len() - 1] {
            acc += c;
            q.push(acc);
        }
        (acc + self.0[self.0.len() - 1] == 0).then(|| UniPoly::new(q))
    }

    /// Largest `k` with `(1 - T)^k | self` (the zero polynomial gives `None`).
    pub fn one_minus_t_valuation(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_one_minus_t() {
            p = q;
            k += 1;
        }
        Some(k)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for UniPoly {
    /// Compact form as in `1+3T+T^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "T")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed polynomial in T: `{0}`")]
pub struct UniPolyParseError(pub String);

impl FromStr for UniPoly {
    type Err = UniPolyParseError;

    /// Accepts the `Display` form, with optional spaces, `*` and `T^1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || UniPolyParseError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if t.is_empty() {
            return Err(err());
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let b = t.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let mut sign = 1;
            if b[i] == b'+' || b[i] == b'-' {
                if b[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i != 0 {
                return Err(err());
            }
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let num: Option<i64> = if i > start {
                Some(t[start..i].parse().map_err(|_| err())?)
            } else {
                None
            };
            let mut exp = 0usize;
            if i < b.len() && b[i] == b'T' {
                i += 1;
                exp = 1;
                if i < b.len() && b[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = t[es..i].parse().map_err(|_| err())?;
                }
            } else if num.is_none() {
                return Err(err());
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] += sign * num.unwrap_or(1);
        }
        Ok(UniPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for s in ["1+3T+T^2", "-T^3+1", "1", "0", "1+5T+9T^2+5T^3+T^4", "2-T"] {
            let p: UniPoly = s.parse().unwrap();
            let back: UniPoly = p.to_string().parse().unwrap();
            assert_eq!(p, back);
        }
        assert_eq!("-T^3+1".parse::<UniPoly>().unwrap().to_string(), "1-T^3");
        assert!("1+".parse::<UniPoly>().is_err());
        assert!("x".parse::<UniPoly>().is_err());
    }

    #[test]
    fn one_minus_t_division() {
        let p = UniPoly::one_minus_t_pow(2);
        assert_eq!(p.div_one_minus_t().unwrap().to_string(), "1+T");
        assert_eq!(p.one_minus_t_valuation(), Some(1));
        assert!(UniPoly::one().div_one_minus_t().is_none());
    }
}
