//! Coefficient fields: the rationals and prime fields `F_p`.
//!
//! A field is a small value object that performs arithmetic on its element
//! type, so a prime field carries its modulus at run time.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Default characteristic for speed runs.
pub const DEFAULT_PRIME: u32 = 32003;

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `None` when the denominator vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Image in `F_p`, `None` when a denominator vanishes mod `p`.
    fn reduce_mod(&self, a: &Self::Elem, p: u32) -> Option<u32>;
    /// Sign and absolute value used by the text format.
    fn signed_repr(&self, a: &Self::Elem) -> (bool, String);
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn characteristic(&self) -> u64;
    fn name(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Panics unless `p` is a prime below 2^31.
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p) && p < (1 << 31), "{p} is not a usable prime");
        PrimeField { p }
    }

    pub fn try_new(p: u32) -> Option<Self> {
        (is_prime(p) && p < (1 << 31)).then_some(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut b: u32, mut e: u32) -> u32 {
        let mut r = 1u64;
        let mut b64 = b as u64;
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b64 % p;
            }
            b64 = b64 * b64 % p;
            e >>= 1;
        }
        b = r as u32;
        b
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn bigint_mod(a: &BigInt, p: u32) -> u32 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u32().expect("residue fits")
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let d = bigint_mod(den, self.p);
        if d == 0 {
            return None;
        }
        Some(self.mul(&bigint_mod(num, self.p), &self.inv(&d)))
    }
    fn reduce_mod(&self, a: &u32, p: u32) -> Option<u32> {
        if p == self.p {
            Some(*a)
        } else {
            None
        }
    }
    fn signed_repr(&self, a: &u32) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in QQ");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn reduce_mod(&self, a: &BigRational, p: u32) -> Option<u32> {
        PrimeField::new(p).from_ratio(a.numer(), a.denom())
    }
    fn signed_repr(&self, a: &BigRational) -> (bool, String) {
        let abs = a.abs();
        let s = if abs.denom().is_one() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (a.is_negative(), s)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
}
