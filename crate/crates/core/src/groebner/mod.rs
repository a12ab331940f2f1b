//! Gröbner bases, normal forms and the derived ideal operations.

mod buchberger;
mod monomial_ideal;

use std::sync::OnceLock;

use thiserror::Error;

use crate::field::Field;
use crate::poly::{AmbientRing, Monomial, MonomialOrder, PolyError, Polynomial, Ring, VarImage};

pub use buchberger::{normal_form, GbStats};
pub use monomial_ideal::MonomialIdeal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("colon by the zero ideal")]
    ZeroDivisor,
    #[error("no room for a tag variable ({0} variables in use)")]
    NoTagRoom(usize),
}

/// An ideal given by generators, with its reduced Gröbner basis in the
/// ring's order computed on first use.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<(Vec<Polynomial<F>>, GbStats)>,
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Result<Self, IdealError> {
        for g in &gens {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch(ring.name().into(), g.ring().name().into()).into());
            }
        }
        Ok(Self::from_parts(ring, gens))
    }

    fn from_parts(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Self::from_parts(ring, Vec::new())
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Self::from_parts(ring, vec![Polynomial::one(ring)])
    }

    /// Parses each string as a polynomial in `ring`.
    pub fn parse<S: AsRef<str>>(ring: &Ring<F>, gens: &[S]) -> Result<Self, IdealError> {
        let gens = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_parts(ring, gens))
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Gröbner basis in the ring's order (cached).
    pub fn groebner_basis(&self) -> &[Polynomial<F>] {
        &self.gb_entry().0
    }

    pub fn gb_stats(&self) -> GbStats {
        self.gb_entry().1
    }

    fn gb_entry(&self) -> &(Vec<Polynomial<F>>, GbStats) {
        self.gb
            .get_or_init(|| buchberger::groebner(&self.ring, &self.gens))
    }

    /// Reduced Gröbner basis under `order`, living in the reordered ring.
    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Vec<Polynomial<F>> {
        if order == self.ring.order() {
            return self.groebner_basis().to_vec();
        }
        let r = self.ring.reordered(order);
        buchberger::groebner(&r, &self.gens).0
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, IdealError> {
        if f.ring() != &self.ring {
            return Err(
                PolyError::RingMismatch(self.ring.name().into(), f.ring().name().into()).into(),
            );
        }
        Ok(buchberger::normal_form(f, self.groebner_basis()))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, IdealError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool, IdealError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual reduction.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool, IdealError> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(|g| g.is_constant())
    }

    pub fn leading_term_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.ring.nvars(),
            self.groebner_basis()
                .iter()
                .map(|g| *g.leading_monomial().expect("nonzero"))
                .collect(),
        )
    }

    pub fn leading_term_ideal_in(&self, order: MonomialOrder) -> MonomialIdeal {
        MonomialIdeal::new(
            self.ring.nvars(),
            self.groebner_basis_in(order)
                .iter()
                .map(|g| *g.leading_monomial().expect("nonzero"))
                .collect(),
        )
    }

    /// Krull dimension of `R/I`; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        Some(self.leading_term_ideal().krull_dimension())
    }

    pub fn codim(&self) -> Option<usize> {
        self.krull_dimension().map(|d| self.ring.nvars() - d)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>, IdealError> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>, IdealError> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.try_mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ k[remaining variables]`, returned in the original ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal<F> {
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = vars.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|v| !vars.contains(v)));
        let names: Vec<&str> = perm.iter().map(|&v| self.ring.variables()[v].as_str()).collect();
        let er = AmbientRing::with_order(
            self.ring.name(),
            &names,
            self.ring.field().clone(),
            MonomialOrder::Elimination(k),
        )
        .expect("permuted ring");
        let mut fwd = vec![VarImage::Var(0); n];
        for (pos, &v) in perm.iter().enumerate() {
            fwd[v] = VarImage::Var(pos);
        }
        let back: Vec<VarImage<F::Elem>> = perm.iter().map(|&v| VarImage::Var(v)).collect();
        let gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.map_into(&er, &fwd)).collect();
        let (gb, _) = buchberger::groebner(&er, &gens);
        let low = if k == 0 { 0 } else { (1u32 << k) - 1 };
        let kept = gb
            .into_iter()
            .filter(|g| g.support_mask() & low == 0)
            .map(|g| g.map_into(&self.ring, &back))
            .collect();
        Ideal::from_parts(&self.ring, kept)
    }

    pub fn eliminate_named(&self, names: &[&str]) -> Result<Ideal<F>, IdealError> {
        let idx = names
            .iter()
            .map(|v| {
                self.ring
                    .var_index(v)
                    .ok_or_else(|| PolyError::UnknownVariable(v.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.eliminate(&idx))
    }

    /// `I ∩ J` by eliminating a tag `t` from `t·I + (1−t)·J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>, IdealError> {
        if self.ring != other.ring {
            return Err(
                PolyError::RingMismatch(self.ring.name().into(), other.ring.name().into()).into(),
            );
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        if n + 1 > crate::poly::MAX_VARS {
            return Err(IdealError::NoTagRoom(n));
        }
        let mut names = vec!["_t".to_string()];
        names.extend(self.ring.variables().iter().cloned());
        let tr = AmbientRing::with_order(
            self.ring.name(),
            &names,
            self.ring.field().clone(),
            MonomialOrder::Elimination(1),
        )?;
        let shift: Vec<VarImage<F::Elem>> = (0..n).map(|v| VarImage::Var(v + 1)).collect();
        let back: Vec<VarImage<F::Elem>> = std::iter::once(VarImage::Const(self.ring.field().zero()))
            .chain((0..n).map(VarImage::Var))
            .collect();
        let t = Polynomial::var(&tr, 0);
        let one_minus_t = &Polynomial::one(&tr) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.map_into(&tr, &shift));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.map_into(&tr, &shift));
        }
        let (gb, _) = buchberger::groebner(&tr, &gens);
        let kept = gb
            .into_iter()
            .filter(|g| g.support_mask() & 1 == 0)
            .map(|g| g.map_into(&self.ring, &back))
            .collect();
        Ok(Ideal::from_parts(&self.ring, kept))
    }

    /// `I : ⟨g⟩ = (I ∩ ⟨g⟩) / g`.
    pub fn quotient_by(&self, g: &Polynomial<F>) -> Result<Ideal<F>, IdealError> {
        if g.is_zero() {
            return Err(IdealError::ZeroDivisor);
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|h| exact_div(h, g).expect("element of (g) is divisible by g"))
            .collect();
        Ok(Ideal::from_parts(&self.ring, gens))
    }

    /// `I : J`.
    pub fn colon(&self, other: &Ideal<F>) -> Result<Ideal<F>, IdealError> {
        if other.is_zero() {
            return Err(IdealError::ZeroDivisor);
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.expect("nonempty"))
    }

    /// Generators rewritten by their reduced basis, so equal ideals compare
    /// equal as generator lists.
    pub fn canonical(&self) -> Ideal<F> {
        Ideal::from_parts(&self.ring, self.groebner_basis().to_vec())
    }

    /// Mask of variables occurring in some generator.
    pub fn support_mask(&self) -> u32 {
        self.gens.iter().fold(0, |m, g| m | g.support_mask())
    }

    /// The same ideal in the polynomial ring on its support variables.
    /// Returns the smaller ideal and the indices of the kept variables.
    pub fn restrict_to_support(&self) -> (Ideal<F>, Vec<usize>) {
        let mask = self.support_mask();
        let kept: Vec<usize> = (0..self.ring.nvars()).filter(|&v| mask >> v & 1 == 1).collect();
        let names: Vec<&str> = kept.iter().map(|&v| self.ring.variables()[v].as_str()).collect();
        let r = AmbientRing::with_order(
            self.ring.name(),
            &names,
            self.ring.field().clone(),
            self.ring.order(),
        )
        .expect("subring");
        let mut images = vec![VarImage::Const(self.ring.field().zero()); self.ring.nvars()];
        for (pos, &v) in kept.iter().enumerate() {
            images[v] = VarImage::Var(pos);
        }
        let gens = self.gens.iter().map(|g| g.map_into(&r, &images)).collect();
        (Ideal::from_parts(&r, gens), kept)
    }

    /// Image in the same ring over `GF(p)`.
    pub fn reduce_mod(
        &self,
        target: &Ring<crate::field::PrimeField>,
    ) -> Option<Ideal<crate::field::PrimeField>> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.reduce_mod(target))
            .collect::<Option<Vec<_>>>()?;
        Some(Ideal::from_parts(target, gens))
    }
}

/// Exact quotient `f / g`, if `g` divides `f`.
pub fn exact_div<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Option<Polynomial<F>> {
    let ring = f.ring();
    let field = ring.field();
    let lm = *g.leading_monomial()?;
    let lc_inv = field.inv(g.leading_coefficient()?);
    let mut rem = f.clone();
    let mut q: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some(m) = rem.leading_monomial().copied() {
        let t = lm.quotient_of(&m)?;
        let c = field.mul(rem.leading_coefficient().unwrap(), &lc_inv);
        rem = rem.add_scaled(&field.neg(&c), &t, g);
        q.push((t, c));
    }
    Some(Polynomial::from_terms(ring, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring(n: usize) -> Ring<Rationals> {
        AmbientRing::indexed("R", "x", n, Rationals)
    }

    fn ideal(r: &Ring<Rationals>, g: &[&str]) -> Ideal<Rationals> {
        Ideal::parse(r, g).unwrap()
    }

    fn texts<F: Field>(ps: &[Polynomial<F>]) -> Vec<String> {
        ps.iter().map(|p| p.to_text()).collect()
    }

    #[test]
    fn monomials_are_their_own_basis() {
        let r = ring(3);
        let i = ideal(&r, &["x1", "x2"]);
        assert_eq!(texts(i.groebner_basis()), ["x2", "x1"]);
        let j = ideal(&r, &["x1^2", "x1*x2"]);
        assert_eq!(texts(j.groebner_basis()), ["x1*x2", "x1^2"]);
    }

    #[test]
    fn twisted_cubic() {
        let r = AmbientRing::indexed("R", "x", 4, PrimeField::new(32003));
        let i = Ideal::parse(&r, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]).unwrap();
        assert_eq!(i.groebner_basis().len(), 3);
        assert_eq!(i.codim(), Some(2));
        for g in i.generators() {
            assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn normal_form_of_one() {
        let r = ring(2);
        let i = ideal(&r, &["x1*x2 - 1", "x1^2"]);
        assert!(i.is_unit());
        let j = ideal(&r, &["x1*x2 - 1"]);
        assert!(!j.contains(&Polynomial::one(&r)).unwrap());
    }

    #[test]
    fn leading_terms() {
        let r = ring(2);
        let i = ideal(&r, &["x1 + x2"]);
        let lt = i.leading_term_ideal();
        assert_eq!(lt.generators(), &[Monomial::var(0)]);
    }

    #[test]
    fn elimination() {
        let r = AmbientRing::new("R", &["t", "x1", "x2"], Rationals).unwrap();
        let i = Ideal::parse(&r, &["t - x1", "t - x2"]).unwrap();
        let e = i.eliminate_named(&["t"]).unwrap();
        assert!(e.equals(&Ideal::parse(&r, &["x1 - x2"]).unwrap()).unwrap());
        let i = Ideal::parse(&r, &["t*x1", "(1 - t)*x2"]).unwrap();
        let e = i.eliminate(&[0]);
        assert_eq!(texts(e.generators()), ["x1*x2"]);
        let i = Ideal::parse(&r, &["t - x1"]).unwrap();
        assert!(i.eliminate(&[0, 1, 2]).is_zero());
    }

    #[test]
    fn intersection_and_colon() {
        let r = ring(3);
        let a = ideal(&r, &["x1"]);
        let b = ideal(&r, &["x2"]);
        assert_eq!(texts(a.intersect(&b).unwrap().groebner_basis()), ["x1*x2"]);
        let i = ideal(&r, &["x1^2 - x2*x3", "x2^3"]);
        assert!(i.intersect(&i).unwrap().equals(&i).unwrap());
        let sq = ideal(&r, &["x1^2"]);
        assert!(sq.colon(&a).unwrap().equals(&a).unwrap());
        assert!(i.colon(&Ideal::unit(&r)).unwrap().equals(&i).unwrap());
        assert_eq!(i.colon(&Ideal::zero(&r)).unwrap_err(), IdealError::ZeroDivisor);
    }

    #[test]
    fn dimensions() {
        let r = AmbientRing::indexed("R", "y", 16, Rationals);
        assert_eq!(Ideal::zero(&r).krull_dimension(), Some(16));
        let r = ring(4);
        assert_eq!(ideal(&r, &["x1*x2", "x3"]).krull_dimension(), Some(2));
        assert_eq!(Ideal::unit(&r).krull_dimension(), None);
    }

    #[test]
    fn exact_division() {
        let r = ring(2);
        let f = Polynomial::parse(&r, "x1^2 - x2^2").unwrap();
        let g = Polynomial::parse(&r, "x1 + x2").unwrap();
        assert_eq!(exact_div(&f, &g).unwrap().to_text(), "x1 - x2");
        assert!(exact_div(&g, &f).is_none());
    }
}
