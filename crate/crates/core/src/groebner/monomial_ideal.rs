use crate::poly::{Monomial, MonomialOrder};

/// Monomial ideal kept as its minimal generators, sorted by degrevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        let o = MonomialOrder::DegRevLex;
        gens.sort_by(|a, b| o.cmp(a, b));
        gens.dedup();
        let mut min: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !min.iter().any(|m| m.divides(&g)) {
                min.push(g);
            }
        }
        MonomialIdeal { nvars, gens: min }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|m| m.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let mask = m.support_mask();
        self.gens
            .iter()
            .any(|g| g.support_mask() & !mask == 0 && g.divides(m))
    }

    /// `I : x_v`.
    pub fn colon_var(&self, v: usize) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.divide_var(v)).collect())
    }

    /// Generators not involving `x_v`.
    pub fn without_var(&self, v: usize) -> MonomialIdeal {
        MonomialIdeal {
            nvars: self.nvars,
            gens: self.gens.iter().filter(|g| g.exp(v) == 0).copied().collect(),
        }
    }

    pub fn support_mask(&self) -> u32 {
        self.gens.iter().fold(0, |m, g| m | g.support_mask())
    }

    /// Smallest number of variables meeting every generator's support.
    pub fn min_cover(&self) -> usize {
        let mut sets: Vec<u32> = self.gens.iter().map(|g| g.support_mask()).collect();
        sets.sort_by_key(|s| (s.count_ones(), *s));
        sets.dedup();
        let mut minimal: Vec<u32> = Vec::new();
        for s in sets {
            if !minimal.iter().any(|m| m & !s == 0) {
                minimal.push(s);
            }
        }
        let mut best = minimal.len().min(self.nvars);
        cover(&minimal, 0, 0, &mut best);
        best
    }

    /// Krull dimension of the quotient.
    pub fn krull_dimension(&self) -> usize {
        if self.is_unit() {
            return 0;
        }
        self.nvars - self.min_cover()
    }
}

fn lower_bound(sets: &[u32], chosen: u32) -> usize {
    let mut used = chosen;
    let mut n = 0;
    for &s in sets {
        if s & chosen == 0 && s & used == 0 {
            used |= s;
            n += 1;
        }
    }
    n
}

fn cover(sets: &[u32], chosen: u32, size: usize, best: &mut usize) {
    let Some(&open) = sets
        .iter()
        .filter(|&&s| s & chosen == 0)
        .min_by_key(|s| s.count_ones())
    else {
        *best = (*best).min(size);
        return;
    };
    if size + lower_bound(sets, chosen) >= *best {
        return;
    }
    let mut bits = open;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits ^= b;
        cover(sets, chosen | b, size + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn minimalizes() {
        let i = MonomialIdeal::new(3, vec![m(&[2, 1]), m(&[1]), m(&[0, 1, 1])]);
        assert_eq!(i.generators().len(), 2);
        assert!(i.contains(&m(&[3])));
        assert!(!i.contains(&m(&[0, 5])));
    }

    #[test]
    fn covers() {
        // x1x2, x2x3, x3x4, x4x5, x5x1: a pentagon needs three vertices
        let i = MonomialIdeal::new(
            5,
            vec![
                m(&[1, 1]),
                m(&[0, 1, 1]),
                m(&[0, 0, 1, 1]),
                m(&[0, 0, 0, 1, 1]),
                m(&[1, 0, 0, 0, 1]),
            ],
        );
        assert_eq!(i.min_cover(), 3);
        assert_eq!(i.krull_dimension(), 2);
        assert_eq!(MonomialIdeal::new(4, vec![]).krull_dimension(), 4);
    }
}
