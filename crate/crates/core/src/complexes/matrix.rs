use std::collections::HashMap;

use crate::field::Field;
use crate::poly::{Polynomial, Ring};

use super::ComplexError;

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    ring: Ring<F>,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(ring: &Ring<F>, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn from_rows(ring: &Ring<F>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self, ComplexError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ComplexError::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn row_vector(ring: &Ring<F>, v: Vec<Polynomial<F>>) -> Self {
        Matrix {
            ring: ring.clone(),
            rows: 1,
            cols: v.len(),
            data: v,
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, ComplexError> {
        if self.cols != other.rows {
            return Err(ComplexError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (0..i).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
            })
    }

    /// Drops row and column `k`.
    pub fn minor_matrix(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let mut m = Matrix::zeros(&self.ring, keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

/// Pfaffian of an even skew matrix, by expansion along the first row.
pub fn pfaffian<F: Field>(m: &Matrix<F>) -> Result<Polynomial<F>, ComplexError> {
    if !m.is_skew() {
        return Err(ComplexError::NotSkew);
    }
    if m.rows() % 2 == 1 {
        return Err(ComplexError::OddSize(m.rows()));
    }
    let mut memo = HashMap::new();
    let full = if m.rows() == 32 { u32::MAX } else { (1u32 << m.rows()) - 1 };
    Ok(pf_rec(m, full, &mut memo))
}

fn pf_rec<F: Field>(
    m: &Matrix<F>,
    set: u32,
    memo: &mut HashMap<u32, Polynomial<F>>,
) -> Polynomial<F> {
    if set == 0 {
        return Polynomial::one(m.ring());
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let i = set.trailing_zeros() as usize;
    let rest = set & !(1 << i);
    let mut acc = Polynomial::zero(m.ring());
    let mut bits = rest;
    let mut sign = true;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(i, j);
        if !a.is_zero() {
            let sub = pf_rec(m, rest & !(1 << j), memo);
            if !sub.is_zero() {
                let t = a * &sub;
                acc = if sign { &acc + &t } else { &acc - &t };
            }
        }
        sign = !sign;
    }
    memo.insert(set, acc.clone());
    acc
}

/// Determinant by Laplace expansion along rows, memoised on column sets.
pub fn determinant<F: Field>(m: &Matrix<F>) -> Result<Polynomial<F>, ComplexError> {
    if m.rows() != m.cols() {
        return Err(ComplexError::Shape("determinant of a non-square matrix".into()));
    }
    let mut memo = HashMap::new();
    let full = if m.cols() == 32 { u32::MAX } else { (1u32 << m.cols()) - 1 };
    Ok(det_rec(m, 0, full, &mut memo))
}

fn det_rec<F: Field>(
    m: &Matrix<F>,
    row: usize,
    cols: u32,
    memo: &mut HashMap<u32, Polynomial<F>>,
) -> Polynomial<F> {
    if cols == 0 {
        return Polynomial::one(m.ring());
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(m.ring());
    let mut bits = cols;
    let mut sign = true;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(row, j);
        if !a.is_zero() {
            let t = a * &det_rec(m, row + 1, cols & !(1 << j), memo);
            acc = if sign { &acc + &t } else { &acc - &t };
        }
        sign = !sign;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Signed submaximal Pfaffians `p_k = (-1)^k Pf(M without k)` of an odd
/// skew matrix; they satisfy `p · M = 0`.
pub fn submaximal_pfaffians<F: Field>(m: &Matrix<F>) -> Result<Vec<Polynomial<F>>, ComplexError> {
    if !m.is_skew() {
        return Err(ComplexError::NotSkew);
    }
    if m.rows() % 2 == 0 {
        return Err(ComplexError::EvenSize(m.rows()));
    }
    (0..m.rows())
        .map(|k| {
            let p = pfaffian(&m.minor_matrix(k))?;
            Ok(if k % 2 == 0 { p } else { -p })
        })
        .collect()
}

/// 2x2 minors of a matrix with two rows (or two columns), in
/// lexicographic order of the column (row) pairs.
pub fn minors2<F: Field>(m: &Matrix<F>) -> Result<Vec<Polynomial<F>>, ComplexError> {
    let m = match (m.rows(), m.cols()) {
        (2, _) => m.clone(),
        (_, 2) => m.transpose(),
        (r, c) => {
            return Err(ComplexError::Shape(format!(
                "2x2 minors need a 2-row or 2-column matrix, got {r}x{c}"
            )))
        }
    };
    let mut out = Vec::new();
    for i in 0..m.cols() {
        for j in i + 1..m.cols() {
            out.push(&(m.get(0, i) * m.get(1, j)) - &(m.get(0, j) * m.get(1, i)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::AmbientRing;

    fn skew(ring: &Ring<Rationals>, n: usize) -> Matrix<Rationals> {
        let mut m = Matrix::zeros(ring, n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let v = Polynomial::var(ring, k);
                m.set(i, j, v.clone());
                m.set(j, i, -v);
                k += 1;
            }
        }
        m
    }

    #[test]
    fn pfaffian_4x4() {
        let r = AmbientRing::indexed("R", "m", 6, Rationals);
        let m = skew(&r, 4);
        // m1=a12 m2=a13 m3=a14 m4=a23 m5=a24 m6=a34
        let expect = Polynomial::parse(&r, "m1*m6 - m2*m5 + m3*m4").unwrap();
        assert_eq!(pfaffian(&m).unwrap(), expect);
        let pf = pfaffian(&m).unwrap();
        assert_eq!(&pf * &pf, determinant(&m).unwrap());
    }

    #[test]
    fn submaximal_pfaffians_kill_the_matrix() {
        let r = AmbientRing::indexed("R", "m", 10, Rationals);
        let m = skew(&r, 5);
        let p = submaximal_pfaffians(&m).unwrap();
        let pm = Matrix::row_vector(&r, p).mul(&m).unwrap();
        assert!(pm.is_zero());
        assert!(pfaffian(&m).is_err());
    }

    #[test]
    fn minors_of_2x3() {
        let r = AmbientRing::indexed("R", "x", 6, Rationals);
        let rows = (0..2)
            .map(|i| (0..3).map(|j| Polynomial::var(&r, 3 * i + j)).collect())
            .collect();
        let m = Matrix::from_rows(&r, rows).unwrap();
        let mm = minors2(&m).unwrap();
        assert_eq!(mm.len(), 3);
        assert_eq!(mm, minors2(&m.transpose()).unwrap());
    }
}
