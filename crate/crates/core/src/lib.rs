//! Exact commutative algebra for the Schubert-cell ideals of the minuscule
//! spaces E6/P1 and E7/P7.

pub mod catalog;
pub mod complexes;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod linkage;
pub mod par;
pub mod poly;
pub mod sparse;
pub mod verify;
pub mod weyl;

pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use groebner::{Ideal, IdealError, MonomialIdeal};
pub use hilbert::{HilbertData, UniPoly};
pub use poly::{AmbientRing, Monomial, MonomialOrder, PolyError, Polynomial, Ring};
