//! Finite-dimensional algebras by structure constants.

use crate::error::{Error, Result};
use crate::linalg::{solve_sparse, sparse_from_pairs, Matrix, SparseVec};
use crate::report::ValidationReport;
use crate::scalar::Scalar;

/// `e_i e_j = Σ_k γ_{ij}^k e_k` together with the coordinates of `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    pub dim: usize,
    /// `gamma[i * dim + j]` is the sparse product `e_i e_j`.
    gamma: Vec<SparseVec>,
    pub unit: Vec<Scalar>,
}

impl AlgebraSpec {
    /// Builds an algebra from sparse `(i, j, k, γ_{ij}^k)` quadruples.
    /// Only index ranges are checked here; see [`AlgebraSpec::check_algebra`].
    pub fn new(dim: usize, quads: Vec<(usize, usize, usize, Scalar)>, unit: Vec<Scalar>) -> Result<AlgebraSpec> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit has {} coordinates, algebra has dimension {dim}",
                unit.len()
            )));
        }
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![vec![]; dim * dim];
        for (n, (i, j, k, v)) in quads.into_iter().enumerate() {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant #{n} ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            buckets[i * dim + j].push((k, v));
        }
        let gamma = buckets.into_iter().map(sparse_from_pairs).collect();
        Ok(AlgebraSpec { dim, gamma, unit })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> AlgebraSpec {
        AlgebraSpec::new(1, vec![(0, 0, 0, Scalar::one())], vec![Scalar::one()]).unwrap()
    }

    /// `Map(Λ, k)` with `|Λ| = n`, on the basis of characteristic functions.
    pub fn function_algebra(n: usize) -> Result<AlgebraSpec> {
        if n == 0 {
            return Err(Error::EmptyIndexSet);
        }
        let quads = (0..n).map(|l| (l, l, l, Scalar::one())).collect();
        AlgebraSpec::new(n, quads, vec![Scalar::one(); n])
    }

    /// Upper-triangular `n × n` matrices on the basis `E_{ab}`, `a ≤ b`,
    /// ordered lexicographically.
    pub fn upper_triangular(n: usize) -> AlgebraSpec {
        let idx: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let pos = |a: usize, b: usize| idx.iter().position(|&x| x == (a, b)).unwrap();
        let mut quads = vec![];
        for (i, &(a, b)) in idx.iter().enumerate() {
            for (j, &(c, d)) in idx.iter().enumerate() {
                if b == c {
                    quads.push((i, j, pos(a, d), Scalar::one()));
                }
            }
        }
        let mut unit = vec![Scalar::zero(); idx.len()];
        for a in 0..n {
            unit[pos(a, a)] = Scalar::one();
        }
        AlgebraSpec::new(idx.len(), quads, unit).unwrap()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.gamma[i * self.dim + j]
    }

    /// Nonzero structure constants `(i, j, k, γ)` in lexicographic order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = vec![];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in self.basis_product(i, j) {
                    out.push((i, j, *k, v.clone()));
                }
            }
        }
        out
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.dim]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = Scalar::one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, g) in self.basis_product(i, j) {
                    out[*k] += &xy * g;
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, g) in self.basis_product(i, j) {
                m.set(*k, j, g.clone());
            }
        }
        m
    }

    /// Matrix of `x ↦ x e_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, g) in self.basis_product(j, i) {
                m.set(*k, j, g.clone());
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Associativity and unit law on all basis triples.
    pub fn check_algebra(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        for i in 0..self.dim {
            let ei = self.basis(i);
            for j in 0..self.dim {
                let ej = self.basis(j);
                let eij = self.mul(&ei, &ej);
                for k in 0..self.dim {
                    let ek = self.basis(k);
                    if self.mul(&eij, &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                        r.fail(format!("associativity fails on (e{i} e{j}) e{k}"));
                    }
                }
            }
            if self.mul(&self.unit, &ei) != ei {
                r.fail(format!("left unit law fails on e{i}"));
            }
            if self.mul(&ei, &self.unit) != ei {
                r.fail(format!("right unit law fails on e{i}"));
            }
        }
        r
    }

    /// `A^e = A ⊗ A^op` on the basis `e_i ⊗ e_j^op` (index `i * dim + j`).
    pub fn enveloping(&self) -> Result<AlgebraSpec> {
        let rep = self.check_algebra();
        if !rep.passed() {
            return Err(Error::InvalidAlgebra(rep.failures.join("; ")));
        }
        Ok(self.enveloping_unchecked())
    }

    pub(crate) fn enveloping_unchecked(&self) -> AlgebraSpec {
        let n = self.dim;
        let mut quads = vec![];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        // (e_i ⊗ e_j)(e_k ⊗ e_l) = e_i e_k ⊗ e_l e_j
                        for (a, x) in self.basis_product(i, k) {
                            for (b, y) in self.basis_product(l, j) {
                                quads.push((i * n + j, k * n + l, a * n + b, x * y));
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![Scalar::zero(); n * n];
        for (a, x) in self.unit.iter().enumerate() {
            for (b, y) in self.unit.iter().enumerate() {
                unit[a * n + b] = x * y;
            }
        }
        AlgebraSpec::new(n * n, quads, unit).unwrap()
    }

    /// A separability idempotent `e = Σ x_{ij} e_i ⊗ e_j` with `a e = e a` for all
    /// `a` and `μ(e) = 1`, or `None` if `A` is not separable.
    pub fn separability_idempotent(&self) -> Option<Vec<Scalar>> {
        let n = self.dim;
        // Unknown x_{ij} at column i*n+j. Rows: centrality coefficients, then μ(e) = 1.
        let mut rows: Vec<SparseVec> = vec![];
        let mut rhs = vec![];
        for a in 0..n {
            let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![vec![]; n * n];
            for i in 0..n {
                for j in 0..n {
                    let col = i * n + j;
                    for (p, g) in self.basis_product(a, i) {
                        eqs[p * n + j].push((col, g.clone()));
                    }
                    for (q, g) in self.basis_product(j, a) {
                        eqs[i * n + q].push((col, -g));
                    }
                }
            }
            for e in eqs {
                rows.push(sparse_from_pairs(e));
                rhs.push(Scalar::zero());
            }
        }
        let mut mu: Vec<Vec<(usize, Scalar)>> = vec![vec![]; n];
        for i in 0..n {
            for j in 0..n {
                for (k, g) in self.basis_product(i, j) {
                    mu[*k].push((i * n + j, g.clone()));
                }
            }
        }
        for (k, e) in mu.into_iter().enumerate() {
            rows.push(sparse_from_pairs(e));
            rhs.push(self.unit[k].clone());
        }
        solve_sparse(n * n, &rows, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_and_function_algebras_pass() {
        assert!(AlgebraSpec::ground().check_algebra().passed());
        for n in 1..=3 {
            let a = AlgebraSpec::function_algebra(n).unwrap();
            assert_eq!(a.dim, n);
            assert!(a.check_algebra().passed());
        }
        assert!(matches!(AlgebraSpec::function_algebra(0), Err(Error::EmptyIndexSet)));
    }

    #[test]
    fn swapped_squares_fail_unit_law() {
        let one = Scalar::one();
        let a = AlgebraSpec::new(2, vec![(0, 0, 1, one.clone()), (1, 1, 0, one.clone())], vec![one, Scalar::zero()])
            .unwrap();
        let rep = a.check_algebra();
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|f| f.contains("unit law")));
        assert!(a.enveloping().is_err());
    }

    #[test]
    fn enveloping_dimensions() {
        let k = AlgebraSpec::ground().enveloping().unwrap();
        assert_eq!(k.dim, 1);
        let m = AlgebraSpec::function_algebra(2).unwrap().enveloping().unwrap();
        assert_eq!(m.dim, 4);
        assert!(m.is_commutative());
        let u = AlgebraSpec::upper_triangular(2);
        assert_eq!(u.dim, 3);
        let ue = u.enveloping().unwrap();
        assert_eq!(ue.dim, 9);
        assert!(ue.check_algebra().passed());
        assert!(!ue.is_commutative());
    }

    #[test]
    fn separability() {
        assert!(AlgebraSpec::function_algebra(3).unwrap().separability_idempotent().is_some());
        assert!(AlgebraSpec::upper_triangular(2).separability_idempotent().is_none());
    }
}
