//! Exact linear algebra: dense matrices, sparse echelon bases, kernels,
//! canonical solutions and quotient projections.
//!
//! Every subspace is stored in reduced row-echelon form (pivot = smallest
//! column), so equal subspaces have identical representations.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Sparse vector: strictly increasing column indices, no zero entries.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `v - c*w` for sparse vectors.
pub fn sub_scaled(v: &[(usize, Scalar)], c: &Scalar, w: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j == w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, -(c * &w[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - &(c * &w[j].1);
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Collects `(column, value)` pairs in any order into a canonical sparse vector.
pub fn sparse_from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(it: I) -> SparseVec {
    let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, v) in it {
        *m.entry(k).or_default() += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Incrementally built echelon basis over sparse columns.
///
/// Rows are keyed by pivot and normalized to leading coefficient 1.
/// Call [`Echelon::finalize`] to reach the canonical reduced form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
    reduced: bool,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon { rows: BTreeMap::new(), reduced: true }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut v = v;
        let mut i = 0;
        while i < v.len() {
            match self.rows.get(&v[i].0) {
                Some(row) => {
                    let c = v[i].1.clone();
                    v = sub_scaled(&v, &c, row);
                }
                None => i += 1,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].1.inv().expect("nonzero leading entry");
        if !lead.is_one() {
            for e in r.iter_mut() {
                e.1 = &e.1 * &lead;
            }
        }
        self.rows.insert(r[0].0, r);
        self.reduced = self.rows.len() <= 1;
        true
    }

    /// Back-substitution to the reduced row-echelon form.
    pub fn finalize(&mut self) {
        if self.reduced {
            return;
        }
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let row = self.rows.remove(&p).unwrap();
            let head = row[0].clone();
            let tail = self.reduce(row[1..].to_vec());
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push(head);
            full.extend(tail);
            self.rows.insert(p, full);
        }
        self.reduced = true;
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows.into_values().collect()
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(vs: I) -> Echelon {
        let mut e = Echelon::new();
        for v in vs {
            e.insert(v);
        }
        e.finalize();
        e
    }
}

impl PartialEq for Echelon {
    fn eq(&self, o: &Echelon) -> bool {
        assert!(self.reduced && o.reduced, "compare finalized echelon forms");
        self.rows == o.rows
    }
}

/// Dense matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_i64(x)).collect()).collect())
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let i = r * self.cols + c;
        self.data[i] = &self.data[i] + v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = vec![Scalar::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Kronecker product; index of `(i, k)` is `i * other.dim + k`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|r| dense_to_sparse(self.row(r))).collect()
    }

    /// Row space in reduced echelon form.
    pub fn row_echelon(&self) -> Echelon {
        Echelon::from_vectors(self.sparse_rows())
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().dim()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut e = Echelon::new();
        for r in 0..n {
            let mut v = dense_to_sparse(self.row(r));
            v.push((n + r, Scalar::one()));
            e.insert(v);
        }
        e.finalize();
        if e.pivots().take_while(|&p| p < n).count() != n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for row in e.rows() {
            let p = row[0].0;
            for (c, x) in row.iter().skip(1) {
                if *c >= n {
                    inv.set(p, c - n, x.clone());
                }
            }
        }
        Some(inv)
    }

    /// Nonzero entries `(row, col, value)` in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = vec![];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.push((i, j, x.clone()));
                }
            }
        }
        out
    }
}

/// A subspace of `k^ambient_dim` with its canonical echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub ambient_dim: usize,
    ech: Echelon,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, ech: Echelon::new() }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace::from_sparse(ambient_dim, (0..ambient_dim).map(|i| vec![(i, Scalar::one())]).collect())
    }

    pub fn from_sparse(ambient_dim: usize, vs: Vec<SparseVec>) -> Subspace {
        for v in &vs {
            assert!(v.last().is_none_or(|e| e.0 < ambient_dim), "vector outside ambient space");
        }
        Subspace { ambient_dim, ech: Echelon::from_vectors(vs) }
    }

    pub fn from_dense(ambient_dim: usize, vs: &[Vec<Scalar>]) -> Subspace {
        Subspace::from_sparse(ambient_dim, vs.iter().map(|v| dense_to_sparse(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.ech.rows().map(|r| sparse_to_dense(r, self.ambient_dim)).collect()
    }

    pub fn sparse_basis(&self) -> Vec<SparseVec> {
        self.ech.rows().cloned().collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.ech.contains(&dense_to_sparse(v))
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.ech.rows().all(|r| self.ech.contains(r))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, o.ambient_dim);
        let vs = self.ech.rows().chain(o.ech.rows()).cloned().collect();
        Subspace::from_sparse(self.ambient_dim, vs)
    }

    /// Coordinates of a member vector in the echelon basis (its pivot entries).
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.ech.pivots().map(|p| v[p].clone()).collect())
    }
}

/// Projection of `k^n` onto canonical coset representatives modulo a subspace.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub ambient_dim: usize,
    sub: Subspace,
    /// Non-pivot columns; the quotient coordinates.
    pub free: Vec<usize>,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    /// Quotient coordinates of `v`.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.project_sparse(dense_to_sparse(v))
    }

    pub fn project_sparse(&self, v: SparseVec) -> Vec<Scalar> {
        let r = self.sub.ech.reduce(v);
        let mut out = vec![Scalar::zero(); self.free.len()];
        for (c, x) in r {
            let k = self.free.binary_search(&c).expect("reduced vector has only free columns");
            out[k] = x;
        }
        out
    }

    /// The canonical representative of a class given in quotient coordinates.
    pub fn section(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ambient_dim];
        for (k, x) in coords.iter().enumerate() {
            out[self.free[k]] = x.clone();
        }
        out
    }

    /// Projection as a `dim × ambient` matrix.
    pub fn matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.ambient_dim).map(|i| self.project_sparse(vec![(i, Scalar::one())])).collect();
        Matrix::from_columns(self.dim(), &cols)
    }
}

/// Canonical basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let e = m.row_echelon();
    let pivots: Vec<usize> = e.pivots().collect();
    let mut vs = vec![];
    for f in 0..m.cols {
        if e.is_pivot(f) {
            continue;
        }
        let mut v = vec![(f, Scalar::one())];
        for &p in &pivots {
            let row = e.row(p).unwrap();
            if let Ok(k) = row.binary_search_by_key(&f, |x| x.0) {
                v.push((p, -&row[k].1));
            }
        }
        v.sort_by_key(|x| x.0);
        vs.push(v);
    }
    Subspace::from_sparse(m.cols, vs)
}

/// One solution of `m x = b` with free variables set to zero, or `None`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    solve_sparse(m.cols, &m.sparse_rows(), b)
}

/// As [`solve`], with the system given by sparse rows.
pub fn solve_sparse(ncols: usize, rows: &[SparseVec], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut e = Echelon::new();
    for (r, rhs) in rows.iter().zip(b) {
        let mut v = r.clone();
        if !rhs.is_zero() {
            v.push((ncols, rhs.clone()));
        }
        e.insert(v);
    }
    if e.is_pivot(ncols) {
        return None;
    }
    e.finalize();
    let mut x = vec![Scalar::zero(); ncols];
    for row in e.rows() {
        if let Some((c, v)) = row.last() {
            if *c == ncols {
                x[row[0].0] = v.clone();
            }
        }
    }
    Some(x)
}

/// `ambient - dim(sub)` together with the projection to coset representatives.
pub fn quotient_dim(ambient: usize, sub: &Subspace) -> (usize, QuotientMap) {
    assert_eq!(sub.ambient_dim, ambient);
    let free: Vec<usize> = (0..ambient).filter(|c| !sub.ech.is_pivot(*c)).collect();
    let q = QuotientMap { ambient_dim: ambient, sub: sub.clone(), free };
    (q.dim(), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(v)
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(kernel_basis(&Matrix::identity(2)).dim(), 0);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = kernel_basis(&Matrix::from_i64_rows(&[&[1, 1]]));
        assert_eq!(k.basis(), vec![vec![s(1), s(-1)]]);
    }

    #[test]
    fn canonical_solutions() {
        assert_eq!(solve(&Matrix::identity(2), &[s(3), s(5)]), Some(vec![s(3), s(5)]));
        assert_eq!(solve(&Matrix::from_i64_rows(&[&[1, 1]]), &[s(2)]), Some(vec![s(2), s(0)]));
        let m = Matrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&m, &[s(1), s(3)]), None);
    }

    #[test]
    fn quotient_extremes() {
        let (d, _) = quotient_dim(5, &Subspace::zero(5));
        assert_eq!(d, 5);
        let (d, q) = quotient_dim(5, &Subspace::full(5));
        assert_eq!(d, 0);
        assert!(q.project(&[s(1), s(2), s(3), s(4), s(5)]).is_empty());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let i = m.inverse().unwrap();
        assert_eq!(m.mul(&i), Matrix::identity(2));
        assert!(Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
