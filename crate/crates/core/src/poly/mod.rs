//! Sparse multivariate polynomials over a [`Field`] in a named ambient ring.

mod monomial;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Field, PrimeField};
use crate::sparse;

pub use monomial::{Monomial, MonomialOrder, MAX_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("point has {got} coordinates, ring has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientRing<F: Field> {
    name: String,
    vars: Vec<String>,
    field: F,
    order: MonomialOrder,
}

pub type Ring<F> = Arc<AmbientRing<F>>;

impl<F: Field> AmbientRing<F> {
    pub fn new<S: AsRef<str>>(name: &str, vars: &[S], field: F) -> Result<Ring<F>, PolyError> {
        Self::with_order(name, vars, field, MonomialOrder::DegRevLex)
    }

    pub fn with_order<S: AsRef<str>>(
        name: &str,
        vars: &[S],
        field: F,
        order: MonomialOrder,
    ) -> Result<Ring<F>, PolyError> {
        if vars.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(vars.len()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(AmbientRing {
            name: name.to_string(),
            vars,
            field,
            order,
        }))
    }

    /// `x1, …, xn` style ring.
    pub fn indexed(name: &str, prefix: &str, n: usize, field: F) -> Ring<F> {
        let vars: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(name, &vars, field).expect("valid indexed ring")
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn variables(&self) -> &[String] {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
    pub fn var_index(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    /// Same variables and field under another order.
    pub fn reordered(&self, order: MonomialOrder) -> Ring<F> {
        Arc::new(AmbientRing {
            order,
            ..self.clone()
        })
    }

    /// Same variables and order over another field.
    pub fn over<G: Field>(&self, field: G) -> Ring<G> {
        Arc::new(AmbientRing {
            name: self.name.clone(),
            vars: self.vars.clone(),
            field,
            order: self.order,
        })
    }
}

/// Image of a variable under a ring map.
#[derive(Clone, Debug)]
pub enum VarImage<E> {
    Var(usize),
    Const(E),
}

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

pub type Term<F> = (Monomial, <F as Field>::Elem);

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring<F>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(i), ring.field().one())
    }

    pub fn var_named(ring: &Ring<F>, v: &str) -> Result<Self, PolyError> {
        let i = ring
            .var_index(v)
            .ok_or_else(|| PolyError::UnknownVariable(v.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms (unsorted, repeated, zero).
    pub fn from_terms(ring: &Ring<F>, terms: Vec<Term<F>>) -> Self {
        let order = ring.order();
        let terms = sparse::normalize(ring.field(), terms, |a, b| order.cmp(a, b));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees `terms` is already canonical for `ring`'s order.
    pub(crate) fn from_sorted(ring: &Ring<F>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0).is_gt()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn parse(ring: &Ring<F>, s: &str) -> Result<Self, PolyError> {
        text::parse(ring, s)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }
    pub fn field(&self) -> &F {
        self.ring.field()
    }
    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }
    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }
    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common degree of all terms; `None` if inhomogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn support_mask(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or_else(|| self.field().zero(), |(_, c)| c.clone())
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(
                self.ring.name().to_string(),
                other.ring.name().to_string(),
            ))
        }
    }

    /// `self + c * m * other`.
    pub(crate) fn add_scaled(&self, c: &F::Elem, m: &Monomial, other: &Self) -> Self {
        let order = self.ring.order();
        let terms = sparse::axpy(
            self.field(),
            &self.terms,
            c,
            &other.terms,
            |k| k.mul(m),
            |a, b| order.cmp(a, b),
        );
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(&self.field().one(), &Monomial::one(), other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let m1 = self.field().neg(&self.field().one());
        Ok(self.add_scaled(&m1, &Monomial::one(), other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(c, m, big);
        }
        Ok(acc)
    }

    pub fn scalar_mul(&self, c: &F::Elem) -> Self {
        if self.field().is_zero(c) {
            return Self::zero(&self.ring);
        }
        let mut terms = self.terms.clone();
        sparse::scale(self.field(), &mut terms, c);
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        Self::zero(&self.ring).add_scaled(c, m, self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.ring);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scalar_mul(&self.field().inv(c)),
        }
    }

    pub fn partial_derivative(&self, v: &str) -> Result<Self, PolyError> {
        let i = self
            .ring
            .var_index(v)
            .ok_or_else(|| PolyError::UnknownVariable(v.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Formal derivative with respect to variable index `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| (m.divide_var(i), f.mul(c, &f.from_i64(m.exp(i) as i64))))
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let f = self.field();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.support() {
                for _ in 0..m.exp(v) {
                    t = f.mul(&t, &point[v]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Ring homomorphism into `target` sending variable `i` to `images[i]`.
    pub fn map_into(&self, target: &Ring<F>, images: &[VarImage<F::Elem>]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let f = self.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        'outer: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::one();
            for v in m.support() {
                let e = m.exp(v);
                match &images[v] {
                    VarImage::Var(j) => {
                        mono = mono.with_exp(*j, mono.exp(*j) + e);
                    }
                    VarImage::Const(k) => {
                        if f.is_zero(k) {
                            continue 'outer;
                        }
                        for _ in 0..e {
                            coeff = f.mul(&coeff, k);
                        }
                    }
                }
            }
            terms.push((mono, coeff));
        }
        Self::from_terms(target, terms)
    }

    /// Same polynomial in a ring with identical variables (possibly another order).
    pub fn reorder(&self, target: &Ring<F>) -> Self {
        assert_eq!(target.variables(), self.ring.variables());
        Self::from_terms(target, self.terms.clone())
    }

    /// Renames into `target`, matching variables by name.
    pub fn rename_into(&self, target: &Ring<F>) -> Result<Self, PolyError> {
        let images = self
            .ring
            .variables()
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .map(VarImage::Var)
                    .ok_or_else(|| PolyError::UnknownVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        // Variables that do not occur may be absent from the target.
        Ok(self.map_into(target, &images))
    }

    /// Coefficient-wise image in `GF(p)`; `None` if a denominator vanishes.
    pub fn reduce_mod(&self, target: &Ring<PrimeField>) -> Option<Polynomial<PrimeField>> {
        let p = target.field().modulus();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, self.field().reduce_mod(c, p)?));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    pub fn to_text(&self) -> String {
        text::format(self)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format(self))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format(self))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<F: Field> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics on ring mismatch; use the `try_` form to handle it.
            fn $m(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scalar_mul(&self.field().neg(&self.field().one()))
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rationals, DEFAULT_PRIME};

    fn ring() -> Ring<Rationals> {
        AmbientRing::indexed("R", "x", 3, Rationals)
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let p = &(&x1 + &x2) * &(&x1 - &x2);
        assert_eq!(p.to_text(), "x1^2 - x2^2");
    }

    #[test]
    fn self_difference_is_empty() {
        let r = ring();
        let p = Polynomial::parse(&r, "3*x1^2*x3 - 1/2*x2 + 7").unwrap();
        let z = &p - &p;
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Polynomial::var(&ring(), 0);
        let other = AmbientRing::indexed("S", "x", 3, Rationals);
        let b = Polynomial::var(&other, 0);
        assert!(matches!(a.try_add(&b), Err(PolyError::RingMismatch(..))));
    }

    #[test]
    fn derivative_of_square() {
        let r = ring();
        let p = Polynomial::parse(&r, "x1^2").unwrap();
        assert_eq!(p.partial_derivative("x1").unwrap().to_text(), "2*x1");
        assert!(p.partial_derivative("y").is_err());
    }

    #[test]
    fn evaluation_checks_dimension() {
        let r = ring();
        let p = Polynomial::parse(&r, "x1*x2 + x3").unwrap();
        let f = Rationals;
        let v = p
            .evaluate(&[f.from_i64(2), f.from_i64(3), f.from_i64(-1)])
            .unwrap();
        assert_eq!(v, f.from_i64(5));
        assert!(p.evaluate(&[f.from_i64(1)]).is_err());
    }

    #[test]
    fn homogeneity() {
        let r = ring();
        assert_eq!(
            Polynomial::parse(&r, "x1*x2 - x3^2").unwrap().homogeneous_degree(),
            Some(2)
        );
        assert_eq!(
            Polynomial::parse(&r, "x1*x2 - x3").unwrap().homogeneous_degree(),
            None
        );
    }

    #[test]
    fn modular_reduction() {
        let r = ring();
        let p = Polynomial::parse(&r, "1/2*x1 + x2").unwrap();
        let rp = r.over(PrimeField::new(DEFAULT_PRIME));
        let q = p.reduce_mod(&rp).unwrap();
        assert_eq!(q.to_text(), "-16001*x1 + x2");
    }
}
