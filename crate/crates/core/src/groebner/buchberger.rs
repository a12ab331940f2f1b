//! Buchberger's algorithm with the sugar strategy and Gebauer–Möller
//! pair elimination.

use std::cmp::Ordering;

use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, Term};
use crate::sparse;

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    /// `usize::MAX` marks an unprocessed input generator `i`.
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

impl Pair {
    fn is_input(&self) -> bool {
        self.j == usize::MAX
    }
}

#[derive(Default, Debug, Clone, Copy)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

struct Engine<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
    polys: Vec<Vec<Term<F>>>,
    lms: Vec<Monomial>,
    masks: Vec<u32>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    inputs: Vec<(Vec<Term<F>>, u32)>,
    queue: Vec<Pair>,
    sorted: bool,
    stats: GbStats,
}

impl<'a, F: Field> Engine<'a, F> {
    fn cmp_items(&self, a: &Pair, b: &Pair) -> Ordering {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| self.order.cmp(&a.lcm, &b.lcm))
            .then_with(|| a.i.cmp(&b.i))
            .then_with(|| a.j.cmp(&b.j))
    }

    fn pop(&mut self) -> Option<Pair> {
        if !self.sorted {
            let mut q = std::mem::take(&mut self.queue);
            q.sort_by(|a, b| self.cmp_items(b, a));
            self.queue = q;
            self.sorted = true;
        }
        self.queue.pop()
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        (0..self.lms.len()).find(|&k| {
            self.active[k] && self.masks[k] & !mask == 0 && self.lms[k].divides(m)
        })
    }

    /// Reduces `f`; with `full` the tail is reduced as well.
    fn reduce(&self, mut f: Vec<Term<F>>, mut sugar: u32, full: bool) -> (Vec<Term<F>>, u32) {
        let mut rem: Vec<Term<F>> = Vec::new();
        let mut start = 0;
        let order = self.order;
        while start < f.len() {
            let (m, c) = &f[start];
            match self.find_reducer(m) {
                Some(k) => {
                    let q = self.lms[k].quotient_of(m).expect("divides");
                    let coef = self.field.neg(c);
                    sugar = sugar.max(q.degree() + self.sugar[k]);
                    f = sparse::axpy(
                        self.field,
                        &f[start..],
                        &coef,
                        &self.polys[k],
                        |t| t.mul(&q),
                        |a, b| order.cmp(a, b),
                    );
                    start = 0;
                }
                None => {
                    if !full {
                        break;
                    }
                    rem.push(f[start].clone());
                    start += 1;
                }
            }
        }
        if full {
            (rem, sugar)
        } else {
            (f.split_off(start), sugar)
        }
    }

    fn spoly(&self, p: &Pair) -> (Vec<Term<F>>, u32) {
        let (i, j) = (p.i, p.j);
        let qi = self.lms[i].quotient_of(&p.lcm).expect("lcm");
        let qj = self.lms[j].quotient_of(&p.lcm).expect("lcm");
        let order = self.order;
        let left: Vec<Term<F>> = self.polys[i][1..]
            .iter()
            .map(|(m, c)| (m.mul(&qi), c.clone()))
            .collect();
        let minus = self.field.neg(&self.field.one());
        let s = sparse::axpy(
            self.field,
            &left,
            &minus,
            &self.polys[j][1..],
            |t| t.mul(&qj),
            |a, b| order.cmp(a, b),
        );
        (s, p.sugar)
    }

    fn insert(&mut self, mut f: Vec<Term<F>>, sugar: u32) {
        let inv = self.field.inv(&f[0].1);
        sparse::scale(self.field, &mut f, &inv);
        let lm = f[0].0;
        let n = self.polys.len();
        self.polys.push(f);
        self.lms.push(lm);
        self.masks.push(lm.support_mask());
        self.sugar.push(sugar);
        self.active.push(true);
        self.update(n);
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.lms[i].degree();
        let sj = self.sugar[j] + lcm.degree() - self.lms[j].degree();
        si.max(sj)
    }

    fn update(&mut self, h: usize) {
        let lh = self.lms[h];
        let mut cands: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| (g, lh.lcm(&self.lms[g])))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = (!cands.is_empty()).then(|| cands.remove(0)) {
            let coprime = lh.is_coprime(&self.lms[g1]);
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        self.queue.retain(|p| {
            if p.is_input() {
                return true;
            }
            let lij = p.lcm;
            !(lh.divides(&lij)
                && lh.lcm(&self.lms[p.i]) != lij
                && lh.lcm(&self.lms[p.j]) != lij)
        });
        for (g, l) in kept {
            if lh.is_coprime(&self.lms[g]) {
                continue;
            }
            let sugar = self.pair_sugar(g, h, &l);
            self.queue.push(Pair {
                i: g,
                j: h,
                lcm: l,
                sugar,
            });
        }
        self.sorted = false;
        for g in 0..h {
            if self.active[g] && lh.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
    }

    fn run(&mut self) {
        while let Some(p) = self.pop() {
            let (f, sugar) = if p.is_input() {
                self.inputs[p.i].clone()
            } else {
                self.stats.pairs_reduced += 1;
                self.spoly(&p)
            };
            let (r, sugar) = self.reduce(f, sugar, false);
            if r.is_empty() {
                if !p.is_input() {
                    self.stats.zero_reductions += 1;
                }
                continue;
            }
            let (r, sugar) = {
                let (head, rest) = r.split_at(1);
                let (tail, s) = self.reduce(rest.to_vec(), sugar, true);
                let mut v = head.to_vec();
                v.extend(tail);
                (v, s)
            };
            self.insert(r, sugar);
        }
    }

    fn reduced_basis(&self) -> Vec<Vec<Term<F>>> {
        let idx: Vec<usize> = (0..self.polys.len()).filter(|&k| self.active[k]).collect();
        let mut out = Vec::with_capacity(idx.len());
        for &k in &idx {
            let p = &self.polys[k];
            let (tail, _) = self.reduce(p[1..].to_vec(), 0, true);
            let mut v = vec![p[0].clone()];
            v.extend(tail);
            out.push(v);
        }
        out.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0));
        out
    }
}

/// Reduced Gröbner basis in `ring`'s own order, sorted by ascending leads.
pub fn groebner<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>]) -> (Vec<Polynomial<F>>, GbStats) {
    let field = ring.field();
    let mut inputs: Vec<(Vec<Term<F>>, u32)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let g = g.reorder(ring);
            let s = g.degree().unwrap_or(0);
            (g.into_terms(), s)
        })
        .collect();
    let order = ring.order();
    inputs.sort_by(|a, b| order.cmp(&a.0[0].0, &b.0[0].0));
    let queue = inputs
        .iter()
        .enumerate()
        .map(|(k, (t, s))| Pair {
            i: k,
            j: usize::MAX,
            lcm: t[0].0,
            sugar: *s,
        })
        .collect();
    let mut e = Engine {
        field,
        order,
        polys: Vec::new(),
        lms: Vec::new(),
        masks: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        inputs,
        queue,
        sorted: false,
        stats: GbStats::default(),
    };
    e.run();
    let basis = e.reduced_basis();
    let mut stats = e.stats;
    stats.basis_size = basis.len();
    let polys = basis
        .into_iter()
        .map(|t| Polynomial::from_sorted(ring, t))
        .collect();
    (polys, stats)
}

/// Full reduction of `f` by a Gröbner basis (monic leads) in `f`'s ring.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let ring = f.ring();
    let field = ring.field();
    let order = ring.order();
    let lms: Vec<Monomial> = basis.iter().map(|g| *g.leading_monomial().unwrap()).collect();
    let masks: Vec<u32> = lms.iter().map(|m| m.support_mask()).collect();
    let lcs: Vec<F::Elem> = basis
        .iter()
        .map(|g| field.inv(g.leading_coefficient().unwrap()))
        .collect();
    let mut cur: Vec<Term<F>> = f.terms().to_vec();
    let mut rem = Vec::new();
    let mut start = 0;
    while start < cur.len() {
        let (m, c) = &cur[start];
        let mask = m.support_mask();
        let hit = (0..lms.len()).find(|&k| masks[k] & !mask == 0 && lms[k].divides(m));
        match hit {
            Some(k) => {
                let q = lms[k].quotient_of(m).unwrap();
                let coef = field.neg(&field.mul(c, &lcs[k]));
                cur = sparse::axpy(
                    field,
                    &cur[start..],
                    &coef,
                    basis[k].terms(),
                    |t| t.mul(&q),
                    |a, b| order.cmp(a, b),
                );
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted(ring, rem)
}
