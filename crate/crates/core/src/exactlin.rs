//! Exact linear algebra over the rationals.
//!
//! Everything downstream (ranks of differentials, kernels of constraint
//! systems, quotient normal forms) goes through this module, so no floating
//! point ever enters a certificate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A rational number in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^n`.
pub fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Scalar::new(n, d))
}

/// Which end of a row the pivot is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotChoice {
    First,
    Last,
}

/// Dense matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| q(rows[i][j]))
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[Scalar]) {
        for (r, x) in v.iter().enumerate() {
            self[(r, c)] = x.clone();
        }
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let a = &self[(r, c)];
                        if !a.is_zero() {
                            acc += a * x;
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if !m[(row, c)].is_zero() {
                        let v = &m[(row, c)] * &f;
                        m[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Columns form a basis of the null space; each basis vector has a 1 in
    /// its own free coordinate and 0 in the other free coordinates.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -r[(i, f)].clone();
            }
        }
        k
    }

    /// Solves `self · x = b`; `None` when some column of `b` is outside the
    /// column space. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        self.solve_with(b, PivotChoice::First)
    }

    /// As [`Matrix::solve`], but with `PivotChoice::Last` the unknowns are
    /// eliminated in reverse order, giving a different particular solution.
    pub fn solve_with(&self, b: &Matrix, choice: PivotChoice) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: row counts differ");
        let order: Vec<usize> = match choice {
            PivotChoice::First => (0..self.cols).collect(),
            PivotChoice::Last => (0..self.cols).rev().collect(),
        };
        let a = self.select_columns(&order);
        let aug = a.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(order[p], j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Indices of a maximal independent subset of columns, greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// A basis of the column space (a subset of the columns).
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }
}

/// Sparse vector: sorted `(index, nonzero coefficient)` pairs.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + s * b` on sparse vectors.
pub fn sparse_axpy(a: &SparseVec, s: &Scalar, b: &SparseVec) -> SparseVec {
    if s.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + s * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(a: &SparseVec, s: &Scalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * s)).collect()
}

pub fn sparse_get(a: &SparseVec, idx: usize) -> Scalar {
    match a.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(p) => a[p].1.clone(),
        Err(_) => Scalar::zero(),
    }
}

/// Accumulates `Σ coeff · vec` into a dense buffer, then sparsifies.
pub struct Accumulator {
    buf: Vec<Scalar>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator {
            buf: vec![Scalar::zero(); dim],
        }
    }
    pub fn add(&mut self, idx: usize, c: &Scalar) {
        self.buf[idx] += c;
    }
    pub fn add_scaled(&mut self, s: &Scalar, v: &SparseVec) {
        for (i, x) in v {
            self.buf[*i] += s * x;
        }
    }
    pub fn finish(self) -> SparseVec {
        sparse_from_dense(&self.buf)
    }
}

/// Incrementally maintained reduced row echelon basis of a subspace.
///
/// Every stored row is zero at the pivots of all other rows, so reduction
/// is a single pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    choice: PivotChoice,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize, choice: PivotChoice) -> Self {
        Echelon {
            dim,
            choice,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, idx: usize) -> bool {
        self.pivots.contains(&idx)
    }

    /// Normal form of `v` modulo the span: zero at every pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = sparse_get(&v, p);
            if !c.is_zero() {
                v = sparse_axpy(&v, &(-c), row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (p, lead) = match self.choice {
            PivotChoice::First => r[0].clone(),
            PivotChoice::Last => r[r.len() - 1].clone(),
        };
        let r = sparse_scale(&r, &lead.recip());
        for row in self.rows.iter_mut() {
            let c = sparse_get(row, p);
            if !c.is_zero() {
                *row = sparse_axpy(row, &(-c), &r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates outside the pivot set, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.pivots.contains(i)).collect()
    }
}

/// A quotient `k^n / U`, with basis the coordinates that are not pivots of `U`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Echelon,
    keep: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new(sub: Echelon) -> Self {
        let keep = sub.non_pivots();
        let mut pos = vec![None; sub.dim()];
        for (i, &k) in keep.iter().enumerate() {
            pos[k] = Some(i);
        }
        Quotient { sub, keep, pos }
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn dim(&self) -> usize {
        self.keep.len()
    }

    /// Ambient coordinate representing quotient basis element `i`.
    pub fn lift(&self, i: usize) -> usize {
        self.keep[i]
    }

    pub fn kept(&self) -> &[usize] {
        &self.keep
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.sub
            .reduce(v)
            .into_iter()
            .map(|(j, c)| (self.pos[j].expect("reduced vectors avoid pivots"), c))
            .collect()
    }
}

/// Whether two column sets span the same subspace.
pub fn same_span(a: &Matrix, b: &Matrix) -> bool {
    let ra = a.rank();
    let rb = b.rank();
    ra == rb && a.hstack(b).rank() == ra
}

pub fn is_integer(x: &Scalar) -> bool {
    x.is_integer()
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(3, 5).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(2, 2).kernel_basis().cols(), 2);
        let k = Matrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(&[&[-1], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(&[&[3], &[-7]]);
        assert_eq!(Matrix::identity(2).solve(&b), Some(b.clone()));
        let m = Matrix::from_i64(&[&[1], &[0]]);
        assert_eq!(m.solve(&Matrix::from_i64(&[&[0], &[1]])), None);
        let x = Matrix::from_i64(&[&[2]]).solve(&Matrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(x[(0, 0)], qf(1, 2));
    }

    #[test]
    fn solve_policies_differ_but_both_solve() {
        let m = Matrix::from_i64(&[&[1, 1]]);
        let b = Matrix::from_i64(&[&[5]]);
        let x1 = m.solve_with(&b, PivotChoice::First).unwrap();
        let x2 = m.solve_with(&b, PivotChoice::Last).unwrap();
        assert_ne!(x1, x2);
        assert_eq!(m.mul(&x1), b);
        assert_eq!(m.mul(&x2), b);
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("-3/6"), Some(qf(-1, 2)));
        assert_eq!(parse_scalar("4"), Some(q(4)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("x"), None);
    }

    #[test]
    fn echelon_reduces_to_normal_form() {
        let mut e = Echelon::new(3, PivotChoice::Last);
        assert!(e.insert(&vec![(0, q(1)), (2, q(-1))]));
        assert!(!e.insert(&vec![(0, q(2)), (2, q(-2))]));
        assert_eq!(e.pivots(), &[2]);
        assert_eq!(e.reduce(&vec![(2, q(1))]), vec![(0, q(1))]);
        assert_eq!(e.non_pivots(), vec![0, 1]);
    }
}
