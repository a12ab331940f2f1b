use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported variable count (27 catalog variables plus a tag).
pub const MAX_VARS: usize = 32;

/// Dense exponent vector with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    /// Panics if an exponent exceeds 255 or there are too many variables.
    pub fn from_exponents(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (i, &x) in e.iter().enumerate() {
            m.exps[i] = u8::try_from(x).expect("exponent overflow");
            m.deg += x;
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] = r.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        r.deg += other.deg;
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut r = *other;
        for i in 0..MAX_VARS {
            r.exps[i] -= self.exps[i];
        }
        r.deg -= self.deg;
        Some(r)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = Self::one();
        for i in 0..MAX_VARS {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            r.deg += r.exps[i] as u32;
        }
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Exponent of variable `i` lowered by one (saturating).
    pub fn divide_var(&self, i: usize) -> Monomial {
        let mut r = *self;
        if r.exps[i] > 0 {
            r.exps[i] -= 1;
            r.deg -= 1;
        }
        r
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut r = *self;
        r.deg = r.deg - r.exps[i] as u32 + e;
        r.exps[i] = u8::try_from(e).expect("exponent overflow");
        r
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self
            .exps
            .iter()
            .rposition(|&e| e != 0)
            .map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    /// Block order: degrevlex on the first `k` variables, ties broken by
    /// degrevlex on the rest.
    Elimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(a, b, 0, MAX_VARS),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                degrevlex(a, b, 0, k).then_with(|| degrevlex(a, b, k, MAX_VARS))
            }
        }
    }
}

#[inline]
fn degrevlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (da, db) = if lo == 0 && hi == MAX_VARS {
        (a.deg, b.deg)
    } else {
        let s = |m: &Monomial| m.exps[lo..hi].iter().map(|&e| e as u32).sum::<u32>();
        (s(a), s(b))
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (lo..hi).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1])), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block_one() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(m(&[1, 1]).quotient_of(&a), Some(m(&[1])));
        assert!(a.quotient_of(&b).is_none());
        assert!(m(&[1]).is_coprime(&m(&[0, 1])));
    }
}
