//! Sorted sparse term vectors shared by polynomials and module elements.

use std::cmp::Ordering;

use crate::field::Field;

/// `a + c * shift(b)`, both inputs sorted descending by `cmp`.
///
/// `shift` must be order preserving (multiplication by a monomial).
pub fn axpy<K, F, S, C>(
    field: &F,
    a: &[(K, F::Elem)],
    c: &F::Elem,
    b: &[(K, F::Elem)],
    shift: S,
    cmp: C,
) -> Vec<(K, F::Elem)>
where
    K: Copy,
    F: Field,
    S: Fn(&K) -> K,
    C: Fn(&K, &K) -> Ordering,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<(K, F::Elem)> = None;
    while i < a.len() || j < b.len() {
        if pending.is_none() && j < b.len() {
            let (k, v) = &b[j];
            pending = Some((shift(k), field.mul(c, v)));
        }
        match (&pending, a.get(i)) {
            (Some((kb, vb)), Some((ka, va))) => match cmp(ka, kb) {
                Ordering::Greater => {
                    out.push((*ka, va.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*kb, vb.clone()));
                    pending = None;
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(va, vb);
                    if !field.is_zero(&s) {
                        out.push((*ka, s));
                    }
                    pending = None;
                    i += 1;
                    j += 1;
                }
            },
            (Some((kb, vb)), None) => {
                out.push((*kb, vb.clone()));
                pending = None;
                j += 1;
            }
            (None, Some((ka, va))) => {
                out.push((*ka, va.clone()));
                i += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// Sorts descending and merges equal keys, dropping zero coefficients.
pub fn normalize<K, F, C>(field: &F, mut terms: Vec<(K, F::Elem)>, cmp: C) -> Vec<(K, F::Elem)>
where
    K: Copy,
    F: Field,
    C: Fn(&K, &K) -> Ordering,
{
    terms.sort_by(|x, y| cmp(&y.0, &x.0));
    let mut out: Vec<(K, F::Elem)> = Vec::with_capacity(terms.len());
    for (k, v) in terms {
        if let Some(last) = out.last_mut() {
            if cmp(&last.0, &k) == Ordering::Equal {
                last.1 = field.add(&last.1, &v);
                continue;
            }
        }
        out.push((k, v));
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

/// Multiplies every coefficient by `c` (nonzero).
pub fn scale<K: Copy, F: Field>(field: &F, a: &mut [(K, F::Elem)], c: &F::Elem) {
    for (_, v) in a.iter_mut() {
        *v = field.mul(v, c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn axpy_cancels() {
        let f = PrimeField::new(101);
        let a = vec![(5u32, 1u32), (3, 2), (1, 3)];
        let b = vec![(4u32, 1u32), (2, 2), (0, 3)];
        let r = axpy(&f, &a, &f.neg(&1), &b, |k| k + 1, |x, y| x.cmp(y));
        assert!(r.is_empty());
    }

    #[test]
    fn normalize_merges() {
        let f = PrimeField::new(7);
        let r = normalize(&f, vec![(1u32, 3u32), (2, 1), (1, 4)], |x, y| x.cmp(y));
        assert_eq!(r, vec![(2, 1)]);
    }
}
