//! Linkage of ideals by regular sequences, and a one-sided licci test.

use serde::Serialize;
use thiserror::Error;

use crate::complexes::BettiTable;
use crate::field::Field;
use crate::groebner::{Ideal, IdealError};
use crate::poly::Polynomial;

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("linking element `{element}` is not in {ideal}")]
    NotContained { ideal: String, element: String },
    #[error("empty linking sequence")]
    EmptySequence,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LinkReport {
    pub left: String,
    pub right: String,
    pub sequence: Vec<String>,
    pub regular_sequence_ok: bool,
    /// `(c):I = J`
    pub colon_forward_ok: bool,
    /// `(c):J = I`
    pub colon_backward_ok: bool,
    pub codim_left: Option<usize>,
    pub codim_right: Option<usize>,
}

impl LinkReport {
    pub fn linked(&self) -> bool {
        self.regular_sequence_ok && self.colon_forward_ok && self.colon_backward_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("plain struct");
        v["linked"] = self.linked().into();
        v
    }
}

/// Every prefix `(a_1..a_k)` has codimension `k`.
pub fn is_regular_sequence<F: Field>(seq: &[Polynomial<F>]) -> Result<bool, IdealError> {
    let Some(first) = seq.first() else {
        return Ok(true);
    };
    let ring = first.ring();
    for k in 1..=seq.len() {
        let prefix = Ideal::new(ring, seq[..k].to_vec())?;
        if prefix.codim() != Some(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `seq` links `i` and `j`. Requires `seq ⊆ i ∩ j`.
pub fn check_linked<F: Field>(
    names: (&str, &str),
    i: &Ideal<F>,
    j: &Ideal<F>,
    seq: &[Polynomial<F>],
) -> Result<LinkReport, LinkError> {
    if seq.is_empty() {
        return Err(LinkError::EmptySequence);
    }
    for (name, ideal) in [(names.0, i), (names.1, j)] {
        for f in seq {
            if !ideal.contains(f)? {
                return Err(LinkError::NotContained {
                    ideal: name.to_string(),
                    element: f.to_text(),
                });
            }
        }
    }
    let c = Ideal::new(i.ring(), seq.to_vec())?;
    Ok(LinkReport {
        left: names.0.to_string(),
        right: names.1.to_string(),
        sequence: seq.iter().map(|f| f.to_text()).collect(),
        regular_sequence_ok: is_regular_sequence(seq)?,
        colon_forward_ok: c.colon(i)?.equals(j)?,
        colon_backward_ok: c.colon(j)?.equals(i)?,
        codim_left: i.codim(),
        codim_right: j.codim(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LicciVerdict {
    NotLicci,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LicciReport {
    pub g: usize,
    pub max_last_twist: i64,
    pub min_first_twist: i64,
    pub verdict: LicciVerdict,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LicciError {
    #[error("resolution has length {length} but codimension is {codim}; R/I is not perfect")]
    NotPerfect { length: usize, codim: usize },
    #[error("resolution has no generators")]
    Trivial,
}

/// `R/I` is not licci when `max n_{g,j} <= (g-1) min n_{1,j}`, for a
/// minimal resolution of length `g = codim I`. Never claims licci.
pub fn licci_criterion(b: &BettiTable, codim: usize) -> Result<LicciReport, LicciError> {
    let g = b.length();
    if g != codim {
        return Err(LicciError::NotPerfect { length: g, codim });
    }
    let first = b.twists(1);
    let last = b.twists(g);
    let (Some(&min_first), Some(&max_last)) = (first.first(), last.last()) else {
        return Err(LicciError::Trivial);
    };
    let verdict = if max_last <= (g as i64 - 1) * min_first {
        LicciVerdict::NotLicci
    } else {
        LicciVerdict::Inconclusive
    };
    Ok(LicciReport {
        g,
        max_last_twist: max_last,
        min_first_twist: min_first,
        verdict,
    })
}
