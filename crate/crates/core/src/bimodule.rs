//! Bimodules over a finite-dimensional algebra, balanced tensor products,
//! left duals, dual bases, evaluation/coevaluation and the flat transform.

use std::sync::Arc;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::{
    dense_to_sparse, kernel_basis, quotient_dim, solve_sparse, sparse_from_pairs, Matrix, QuotientMap, SparseVec,
    Subspace,
};
use crate::report::ValidationReport;
use crate::scalar::Scalar;

/// An `A`-bimodule with `L_i` (action of `e_i` on the left) and `R_i`
/// (action of `e_i` on the right), both acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    pub algebra: Arc<AlgebraSpec>,
    pub dim: usize,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

fn combo(ms: &[Matrix], a: &[Scalar], n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for (m, x) in ms.iter().zip(a) {
        if !x.is_zero() {
            out = out.add(&m.scale(x));
        }
    }
    out
}

impl Bimodule {
    /// Builds a bimodule and validates the action axioms.
    pub fn new(algebra: Arc<AlgebraSpec>, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Bimodule> {
        let m = Bimodule::new_unchecked(algebra, dim, left, right)?;
        let rep = m.check();
        if !rep.passed() {
            return Err(Error::InvalidAlgebra(format!("bimodule axioms fail: {}", rep.failures.join("; "))));
        }
        Ok(m)
    }

    /// Builds a bimodule checking only shapes.
    pub fn new_unchecked(
        algebra: Arc<AlgebraSpec>,
        dim: usize,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let n = algebra.dim;
        if left.len() != n || right.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} action matrices per side, got {} and {}",
                left.len(),
                right.len()
            )));
        }
        for m in left.iter().chain(&right) {
            if m.rows != dim || m.cols != dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix is {}x{}, module has dimension {dim}",
                    m.rows, m.cols
                )));
            }
        }
        Ok(Bimodule { algebra, dim, left, right })
    }

    /// `A` as a bimodule over itself.
    pub fn regular(algebra: Arc<AlgebraSpec>) -> Bimodule {
        let left = (0..algebra.dim).map(|i| algebra.left_mult(i)).collect();
        let right = (0..algebra.dim).map(|i| algebra.right_mult(i)).collect();
        let dim = algebra.dim;
        Bimodule { algebra, dim, left, right }
    }

    /// Free bimodule `k^n` over the ground field (all actions scalar).
    pub fn over_ground(n: usize) -> Bimodule {
        let a = Arc::new(AlgebraSpec::ground());
        Bimodule { algebra: a, dim: n, left: vec![Matrix::identity(n)], right: vec![Matrix::identity(n)] }
    }

    /// Unital algebra map, anti-multiplicative right action, commuting actions.
    pub fn check(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let a = &self.algebra;
        let n = a.dim;
        let id = Matrix::identity(self.dim);
        if self.left_by(&a.unit) != id {
            r.fail("left action of 1 is not the identity");
        }
        if self.right_by(&a.unit) != id {
            r.fail("right action of 1 is not the identity");
        }
        for i in 0..n {
            for j in 0..n {
                let prod = a.mul(&a.basis(i), &a.basis(j));
                if self.left[i].mul(&self.left[j]) != self.left_by(&prod) {
                    r.fail(format!("L_{i} L_{j} differs from L(e{i} e{j})"));
                }
                if self.right[j].mul(&self.right[i]) != self.right_by(&prod) {
                    r.fail(format!("R_{j} R_{i} differs from R(e{i} e{j})"));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    r.fail(format!("L_{i} and R_{j} do not commute"));
                }
            }
        }
        r
    }

    pub fn left_by(&self, a: &[Scalar]) -> Matrix {
        combo(&self.left, a, self.dim)
    }

    pub fn right_by(&self, a: &[Scalar]) -> Matrix {
        combo(&self.right, a, self.dim)
    }

    /// `a · v`.
    pub fn act_left(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(self.left[i].mul_vec(v)) {
                *o += x * &y;
            }
        }
        out
    }

    /// `v · a`.
    pub fn act_right(&self, v: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(self.right[i].mul_vec(v)) {
                *o += x * &y;
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// Direct sum `self ⊕ other`.
    pub fn direct_sum(&self, o: &Bimodule) -> Result<Bimodule> {
        if self.algebra != o.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let n = self.dim + o.dim;
        let blk = |a: &Matrix, b: &Matrix| {
            let mut m = Matrix::zeros(n, n);
            for (i, j, x) in a.entries() {
                m.set(i, j, x);
            }
            for (i, j, x) in b.entries() {
                m.set(self.dim + i, self.dim + j, x);
            }
            m
        };
        let left = self.left.iter().zip(&o.left).map(|(a, b)| blk(a, b)).collect();
        let right = self.right.iter().zip(&o.right).map(|(a, b)| blk(a, b)).collect();
        Ok(Bimodule { algebra: self.algebra.clone(), dim: n, left, right })
    }
}

/// Checks that `f: src → tgt` intertwines both actions of every basis element.
pub fn check_bimodule_map(f: &Matrix, src: &Bimodule, tgt: &Bimodule) -> Result<ValidationReport> {
    if f.cols != src.dim || f.rows != tgt.dim {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, expected {}x{}",
            f.rows, f.cols, tgt.dim, src.dim
        )));
    }
    if src.algebra != tgt.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let mut r = ValidationReport::default();
    for i in 0..src.algebra.dim {
        if f.mul(&src.left[i]) != tgt.left[i].mul(f) {
            r.fail(format!("fails to intertwine the left action of e{i}"));
        }
        if f.mul(&src.right[i]) != tgt.right[i].mul(f) {
            r.fail(format!("fails to intertwine the right action of e{i}"));
        }
    }
    Ok(r)
}

/// `M ⊗_A N` with explicit projection from, and section into, `M ⊗_k N`.
///
/// The ambient index of `m_a ⊗ n_b` is `a * dim(N) + b`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub left: Arc<Bimodule>,
    pub right: Arc<Bimodule>,
    quot: QuotientMap,
    /// `M ⊗_A N` with the outer actions, on the quotient coordinates.
    pub module: Arc<Bimodule>,
}

impl TensorSpace {
    pub fn dim(&self) -> usize {
        self.quot.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.left.dim * self.right.dim
    }

    /// The balancing relations `m a ⊗ n − m ⊗ a n`.
    pub fn relations(&self) -> &Subspace {
        self.quot.subspace()
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.quot.project(v)
    }

    pub fn project_sparse(&self, v: SparseVec) -> Vec<Scalar> {
        self.quot.project_sparse(v)
    }

    /// Coordinates of `x ⊗ y`.
    pub fn project_pair(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.right.dim;
        let mut v = vec![];
        for (a, p) in x.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, q) in y.iter().enumerate() {
                if !q.is_zero() {
                    v.push((a * n + b, p * q));
                }
            }
        }
        self.quot.project_sparse(v)
    }

    pub fn section(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.quot.section(coords)
    }

    /// The section as a list of `((a, b), coefficient)` simple tensors.
    pub fn section_terms(&self, coords: &[Scalar]) -> Vec<((usize, usize), Scalar)> {
        let n = self.right.dim;
        coords
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| {
                let c = self.quot.free[k];
                ((c / n, c % n), x.clone())
            })
            .collect()
    }

    /// The simple tensor `(a, b)` that the `k`-th basis vector is a lift of.
    pub fn basis_pair(&self, k: usize) -> (usize, usize) {
        let c = self.quot.free[k];
        (c / self.right.dim, c % self.right.dim)
    }

    /// Projection matrix `M ⊗_k N → M ⊗_A N`.
    pub fn projection_matrix(&self) -> Matrix {
        self.quot.matrix()
    }

    /// Matrix of `f ⊗ g` from `self` to `target`.
    pub fn map_tensor(&self, f: &Matrix, g: &Matrix, target: &TensorSpace) -> Matrix {
        let n2 = target.right.dim;
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|k| {
                let (a, b) = self.basis_pair(k);
                let fa = f.column(a);
                let gb = g.column(b);
                let mut v = vec![];
                for (i, x) in fa.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in gb.iter().enumerate() {
                        if !y.is_zero() {
                            v.push((i * n2 + j, x * y));
                        }
                    }
                }
                target.project_sparse(sparse_from_pairs(v))
            })
            .collect();
        Matrix::from_columns(target.dim(), &cols)
    }
}

/// Computes `M ⊗_A N`.
pub fn tensor_over_a(m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<TensorSpace> {
    if m.algebra != n.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let (dm, dn) = (m.dim, n.dim);
    let mut rels = vec![];
    for i in 0..m.algebra.dim {
        for a in 0..dm {
            let ma = m.right[i].column(a);
            for b in 0..dn {
                let nb = n.left[i].column(b);
                let mut v = vec![];
                for (x, s) in ma.iter().enumerate() {
                    if !s.is_zero() {
                        v.push((x * dn + b, s.clone()));
                    }
                }
                for (y, s) in nb.iter().enumerate() {
                    if !s.is_zero() {
                        v.push((a * dn + y, -s));
                    }
                }
                let v = sparse_from_pairs(v);
                if !v.is_empty() {
                    rels.push(v);
                }
            }
        }
    }
    let sub = Subspace::from_sparse(dm * dn, rels);
    let (_, quot) = quotient_dim(dm * dn, &sub);
    let mut ts = TensorSpace { left: m.clone(), right: n.clone(), quot, module: m.clone() };
    let idm = Matrix::identity(dm);
    let idn = Matrix::identity(dn);
    let left = m.left.iter().map(|l| ts.map_tensor(l, &idn, &ts)).collect();
    let right = n.right.iter().map(|r| ts.map_tensor(&idm, r, &ts)).collect();
    ts.module = Arc::new(Bimodule { algebra: m.algebra.clone(), dim: ts.dim(), left, right });
    Ok(ts)
}

/// `M^∨`: left `A`-linear maps `M → A`, with `⟨a·f·a', m⟩ = ⟨f, m a⟩ a'`.
///
/// Functionals are stored as `dim(A) × dim(M)` matrices; the basis is the
/// canonical echelon basis of the solution space of the linearity constraints.
#[derive(Clone, Debug)]
pub struct DualModule {
    pub base: Arc<Bimodule>,
    pub module: Arc<Bimodule>,
    pub functionals: Vec<Matrix>,
    pivots: Vec<usize>,
}

fn vectorize(f: &Matrix) -> Vec<Scalar> {
    // index m * dim(A) + a, so pivots follow the module basis order
    let mut v = vec![Scalar::zero(); f.rows * f.cols];
    for a in 0..f.rows {
        for m in 0..f.cols {
            v[m * f.rows + a] = f.get(a, m).clone();
        }
    }
    v
}

impl DualModule {
    pub fn dim(&self) -> usize {
        self.functionals.len()
    }

    /// Coordinates of a left-linear functional given as a matrix.
    pub fn coords_of(&self, f: &Matrix) -> Vec<Scalar> {
        let v = vectorize(f);
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// The functional with the given coordinates, as a matrix.
    pub fn functional(&self, xi: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.base.algebra.dim, self.base.dim);
        for (c, x) in xi.iter().enumerate() {
            if !x.is_zero() {
                out = out.add(&self.functionals[c].scale(x));
            }
        }
        out
    }

    /// `⟨ξ, m⟩ ∈ A`.
    pub fn pair(&self, xi: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.base.algebra.dim];
        for (c, x) in xi.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(self.functionals[c].mul_vec(m)) {
                *o += x * &y;
            }
        }
        out
    }

    /// `⟨f_c, e_a⟩` for basis functional `c` and basis vector `a`.
    pub fn pair_basis(&self, c: usize, a: usize) -> Vec<Scalar> {
        self.functionals[c].column(a)
    }
}

/// Computes `M^∨`.
pub fn left_dual(m: &Arc<Bimodule>) -> DualModule {
    let alg = m.algebra.clone();
    let (na, nm) = (alg.dim, m.dim);
    let nvar = na * nm;
    let var = |a: usize, k: usize| k * na + a;
    // ξ L_i − λ_i ξ = 0 entrywise, for every basis element e_i.
    let mut rows = vec![];
    for i in 0..na {
        let lam = alg.left_mult(i);
        for r in 0..na {
            for col in 0..nm {
                let mut v = vec![];
                for k in 0..nm {
                    let l = m.left[i].get(k, col);
                    if !l.is_zero() {
                        v.push((var(r, k), l.clone()));
                    }
                }
                for s in 0..na {
                    let l = lam.get(r, s);
                    if !l.is_zero() {
                        v.push((var(s, col), -l));
                    }
                }
                rows.push(sparse_from_pairs(v));
            }
        }
    }
    let mut cons = Matrix::zeros(rows.len(), nvar);
    for (r, v) in rows.iter().enumerate() {
        for (c, x) in v {
            cons.set(r, *c, x.clone());
        }
    }
    let ker = kernel_basis(&cons);
    let pivots: Vec<usize> = ker.echelon().pivots().collect();
    let functionals: Vec<Matrix> = ker
        .basis()
        .into_iter()
        .map(|v| {
            let mut f = Matrix::zeros(na, nm);
            for a in 0..na {
                for k in 0..nm {
                    f.set(a, k, v[var(a, k)].clone());
                }
            }
            f
        })
        .collect();
    let mut dual = DualModule { base: m.clone(), module: m.clone(), functionals, pivots };
    let r = dual.dim();
    let mut left = vec![];
    let mut right = vec![];
    for i in 0..na {
        let ri = &m.right[i];
        let rho = alg.right_mult(i);
        let lcols: Vec<Vec<Scalar>> = (0..r).map(|c| dual.coords_of(&dual.functionals[c].mul(ri))).collect();
        let rcols: Vec<Vec<Scalar>> = (0..r).map(|c| dual.coords_of(&rho.mul(&dual.functionals[c]))).collect();
        left.push(Matrix::from_columns(r, &lcols));
        right.push(Matrix::from_columns(r, &rcols));
    }
    dual.module = Arc::new(Bimodule { algebra: alg, dim: r, left, right });
    dual
}

/// Finite families `m_i ∈ M`, `m^i ∈ M^∨` (and optionally `m̂_i ∈ M^∨∨`).
#[derive(Clone, Debug, PartialEq)]
pub struct DualBases {
    pub elements: Vec<Vec<Scalar>>,
    /// Coordinates in the basis of the associated [`DualModule`].
    pub functionals: Vec<Vec<Scalar>>,
    /// Coordinates in the basis of `M^∨∨`, when padded.
    pub hats: Option<Vec<Vec<Scalar>>>,
}

impl DualBases {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Checks `Σ ⟨m^i, m⟩ m_i = m` and `Σ m^i ⟨ξ, m_i⟩ = ξ` on bases.
    pub fn certify(&self, m: &Bimodule, dual: &DualModule) -> ValidationReport {
        let mut rep = ValidationReport::default();
        for b in 0..m.dim {
            let e = m.basis(b);
            let mut acc = vec![Scalar::zero(); m.dim];
            for (mi, fi) in self.elements.iter().zip(&self.functionals) {
                let a = dual.pair(fi, &e);
                for (o, y) in acc.iter_mut().zip(m.act_left(&a, mi)) {
                    *o += y;
                }
            }
            if acc != e {
                rep.fail(format!("Σ⟨m^i, m⟩ m_i ≠ m for basis vector {b}"));
            }
        }
        let dm = &dual.module;
        for c in 0..dm.dim {
            let xi = dm.basis(c);
            let mut acc = vec![Scalar::zero(); dm.dim];
            for (mi, fi) in self.elements.iter().zip(&self.functionals) {
                let a = dual.pair(&xi, mi);
                for (o, y) in acc.iter_mut().zip(dm.act_right(fi, &a)) {
                    *o += y;
                }
            }
            if acc != xi {
                rep.fail(format!("Σ m^i ⟨ξ, m_i⟩ ≠ ξ for basis functional {c}"));
            }
        }
        rep
    }

    /// Checks `Σ ⟨m̂_i, ξ⟩ m^i = ξ` and `Σ m̂_i ⟨θ, m^i⟩ = θ`.
    pub fn certify_hats(&self, dual: &DualModule, ddual: &DualModule) -> ValidationReport {
        let Some(h) = &self.hats else {
            let mut r = ValidationReport::default();
            r.fail("no double-dual elements");
            return r;
        };
        DualBases { elements: self.functionals.clone(), functionals: h.clone(), hats: None }
            .certify(&dual.module, ddual)
    }
}

/// Solves the dual-basis system for `M`; `NotProjective` if infeasible.
pub fn find_dual_bases(m: &Bimodule, dual: &DualModule) -> Result<DualBases> {
    let (r, n, na) = (dual.dim(), m.dim, m.algebra.dim);
    // Unknown x_{c,a} at column c*n + a; equation (b, o): Σ x_{c,a} [L(⟨F_c, e_b⟩) e_a]_o = δ_{ob}.
    let mut rows = vec![];
    let mut rhs = vec![];
    for b in 0..n {
        let mut eq: Vec<Vec<(usize, Scalar)>> = vec![vec![]; n];
        for c in 0..r {
            let p = dual.pair_basis(c, b);
            for (i, pi) in p.iter().enumerate().take(na) {
                if pi.is_zero() {
                    continue;
                }
                for a in 0..n {
                    for (o, e) in eq.iter_mut().enumerate() {
                        let l = m.left[i].get(o, a);
                        if !l.is_zero() {
                            e.push((c * n + a, pi * l));
                        }
                    }
                }
            }
        }
        for (o, e) in eq.into_iter().enumerate() {
            rows.push(sparse_from_pairs(e));
            rhs.push(if o == b { Scalar::one() } else { Scalar::zero() });
        }
    }
    let x = solve_sparse(r * n, &rows, &rhs).ok_or(Error::NotProjective)?;
    let mut db = DualBases { elements: vec![], functionals: vec![], hats: None };
    for c in 0..r {
        let el: Vec<Scalar> = x[c * n..(c + 1) * n].to_vec();
        if el.iter().all(|s| s.is_zero()) {
            continue;
        }
        let mut f = vec![Scalar::zero(); r];
        f[c] = Scalar::one();
        db.elements.push(el);
        db.functionals.push(f);
    }
    let rep = db.certify(m, dual);
    if !rep.passed() {
        return Err(Error::InvalidDualBases(rep.failures.join("; ")));
    }
    Ok(db)
}

/// Extends `db` (for `M`) with `m̂_i ∈ M^∨∨` so that `coev_M = Σ m^i ⊗ m_i` and
/// `coev_{M^∨} = Σ m̂_i ⊗ m^i` hold simultaneously.
///
/// Tries the same index set first; otherwise pads to `N = r + s` with the
/// block recipe `(m_i, m^i, 0)_{i ≤ r}`, `(0, φ_j, φ^j)_{j ≤ s}`.
pub fn pad_dual_triples(
    db: &DualBases,
    db_dual: &DualBases,
    m: &Bimodule,
    dual: &DualModule,
    ddual: &DualModule,
) -> Result<DualBases> {
    if let Some(t) = shortcut_triples(db, dual, ddual) {
        return Ok(t);
    }
    pad_dual_triples_block(db, db_dual, m, dual, ddual)
}

/// The block recipe only, without trying the shortcut.
pub fn pad_dual_triples_block(
    db: &DualBases,
    db_dual: &DualBases,
    m: &Bimodule,
    dual: &DualModule,
    ddual: &DualModule,
) -> Result<DualBases> {
    let zm = vec![Scalar::zero(); m.dim];
    let zdd = vec![Scalar::zero(); ddual.dim()];
    let mut out = DualBases { elements: vec![], functionals: vec![], hats: Some(vec![]) };
    for (e, f) in db.elements.iter().zip(&db.functionals) {
        out.elements.push(e.clone());
        out.functionals.push(f.clone());
        out.hats.as_mut().unwrap().push(zdd.clone());
    }
    for (e, f) in db_dual.elements.iter().zip(&db_dual.functionals) {
        out.elements.push(zm.clone());
        out.functionals.push(e.clone());
        out.hats.as_mut().unwrap().push(f.clone());
    }
    let mut rep = out.certify(m, dual);
    rep.failures.extend(out.certify_hats(dual, ddual).failures);
    if !rep.passed() {
        return Err(Error::InvalidDualBases(rep.failures.join("; ")));
    }
    Ok(out)
}

fn shortcut_triples(db: &DualBases, dual: &DualModule, ddual: &DualModule) -> Option<DualBases> {
    let nn = db.len();
    let dm = &dual.module;
    let (r, h) = (dm.dim, ddual.dim());
    // Unknown y_{i,c} at column i*h + c: Σ_i ⟨m̂_i, ξ_b⟩ · m^i = ξ_b.
    let mut rows = vec![];
    let mut rhs = vec![];
    for b in 0..r {
        let mut eq: Vec<Vec<(usize, Scalar)>> = vec![vec![]; r];
        for i in 0..nn {
            for c in 0..h {
                let p = ddual.pair_basis(c, b);
                let v = dm.act_left(&p, &db.functionals[i]);
                for (o, x) in v.into_iter().enumerate() {
                    if !x.is_zero() {
                        eq[o].push((i * h + c, x));
                    }
                }
            }
        }
        for (o, e) in eq.into_iter().enumerate() {
            rows.push(sparse_from_pairs(e));
            rhs.push(if o == b { Scalar::one() } else { Scalar::zero() });
        }
    }
    let y = solve_sparse(nn * h, &rows, &rhs)?;
    let hats = (0..nn).map(|i| y[i * h..(i + 1) * h].to_vec()).collect();
    let out = DualBases { elements: db.elements.clone(), functionals: db.functionals.clone(), hats: Some(hats) };
    if out.certify_hats(dual, ddual).passed() {
        Some(out)
    } else {
        None
    }
}

/// A bimodule with its dual, double dual and certified dual bases.
#[derive(Clone, Debug)]
pub struct RigidModule {
    pub module: Arc<Bimodule>,
    pub dual: DualModule,
    pub dual_bases: DualBases,
}

impl RigidModule {
    pub fn new(m: Arc<Bimodule>) -> Result<RigidModule> {
        let dual = left_dual(&m);
        let db = find_dual_bases(&m, &dual)?;
        Ok(RigidModule { module: m, dual, dual_bases: db })
    }

    /// Uses the supplied dual bases after certifying them.
    pub fn with_dual_bases(m: Arc<Bimodule>, db: DualBases) -> Result<RigidModule> {
        let dual = left_dual(&m);
        let rep = db.certify(&m, &dual);
        if !rep.passed() {
            return Err(Error::InvalidDualBases(rep.failures.join("; ")));
        }
        Ok(RigidModule { module: m, dual, dual_bases: db })
    }

    /// `eval: M ⊗_A M^∨ → A` on the coordinates of `ts = M ⊗_A M^∨`.
    pub fn eval_matrix(&self, ts: &TensorSpace) -> Matrix {
        let na = self.module.algebra.dim;
        let cols: Vec<Vec<Scalar>> = (0..ts.dim())
            .map(|k| {
                let (a, c) = ts.basis_pair(k);
                self.dual.pair_basis(c, a)
            })
            .collect();
        Matrix::from_columns(na, &cols)
    }

    /// `coev: A → M^∨ ⊗_A M` into the coordinates of `ts = M^∨ ⊗_A M`.
    pub fn coev_matrix(&self, ts: &TensorSpace) -> Matrix {
        let alg = &self.module.algebra;
        let dm = &self.dual.module;
        let cols: Vec<Vec<Scalar>> = (0..alg.dim)
            .map(|k| {
                let ek = alg.basis(k);
                let mut acc = vec![Scalar::zero(); ts.dim()];
                for (mi, fi) in self.dual_bases.elements.iter().zip(&self.dual_bases.functionals) {
                    let f = dm.act_left(&ek, fi);
                    for (o, y) in acc.iter_mut().zip(ts.project_pair(&f, mi)) {
                        *o += y;
                    }
                }
                acc
            })
            .collect();
        Matrix::from_columns(ts.dim(), &cols)
    }
}

/// `f^♭: X ⊗ V^∨ → V^∨ ⊗ X` for `f: V ⊗ X → X ⊗ V`, given on the coordinates of
/// `vx = V ⊗_A X` and `xv = X ⊗_A V`.
pub struct FlatTransform {
    pub source: TensorSpace,
    pub target: TensorSpace,
    pub matrix: Matrix,
}

pub fn flat_transform(f: &Matrix, vx: &TensorSpace, xv: &TensorSpace, v: &RigidModule) -> Result<FlatTransform> {
    let x = vx.right.clone();
    if !Arc::ptr_eq(&vx.left, &v.module) && *vx.left != *v.module {
        return Err(Error::InvalidDualBases("dual bases belong to a different module".into()));
    }
    let rep = v.dual_bases.certify(&v.module, &v.dual);
    if !rep.passed() {
        return Err(Error::InvalidDualBases(rep.failures.join("; ")));
    }
    if f.cols != vx.dim() || f.rows != xv.dim() {
        return Err(Error::DimensionMismatch("flat transform input shape".into()));
    }
    let vd = v.dual.module.clone();
    let source = tensor_over_a(&x, &vd)?;
    let target = tensor_over_a(&vd, &x)?;
    let nx = x.dim;
    let nvd = vd.dim;
    let mut cols = vec![];
    for k in 0..source.dim() {
        let (a, c) = source.basis_pair(k);
        let mut acc: Vec<(usize, Scalar)> = vec![];
        for (mi, fi) in v.dual_bases.elements.iter().zip(&v.dual_bases.functionals) {
            let u = vx.project_pair(mi, &x.basis(a));
            let fu = f.mul_vec(&u);
            for ((b, d), s) in xv.section_terms(&fu) {
                // e_b · ⟨ξ_c, v_d⟩
                let pa = v.dual.pair_basis(c, d);
                let xb = x.act_right(&x.basis(b), &pa);
                for (i, fii) in fi.iter().enumerate() {
                    if fii.is_zero() {
                        continue;
                    }
                    for (j, xj) in xb.iter().enumerate() {
                        if !xj.is_zero() {
                            acc.push((i * nx + j, &(&s * fii) * xj));
                        }
                    }
                }
            }
        }
        let _ = nvd;
        cols.push(target.project_sparse(sparse_from_pairs(acc)));
    }
    let matrix = Matrix::from_columns(target.dim(), &cols);
    Ok(FlatTransform { source, target, matrix })
}

/// Convenience: coordinates of a dense ambient vector as a sparse vector.
pub fn sparse(v: &[Scalar]) -> SparseVec {
    dense_to_sparse(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize) -> Arc<Bimodule> {
        Arc::new(Bimodule::over_ground(n))
    }

    #[test]
    fn ground_tensor_dims_multiply() {
        let t = tensor_over_a(&q(2), &q(3)).unwrap();
        assert_eq!(t.dim(), 6);
    }

    #[test]
    fn unit_constraint_preserves_dim() {
        let a = Arc::new(AlgebraSpec::function_algebra(2).unwrap());
        let reg = Arc::new(Bimodule::regular(a));
        let t = tensor_over_a(&reg, &reg).unwrap();
        assert_eq!(t.dim(), 2);
    }

    #[test]
    fn standard_dual_bases_over_ground() {
        let m = q(2);
        let r = RigidModule::new(m).unwrap();
        assert_eq!(r.dual.dim(), 2);
        assert_eq!(r.dual_bases.len(), 2);
        assert_eq!(r.dual_bases.elements[0], vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn dual_of_regular_is_regular() {
        let a = Arc::new(AlgebraSpec::function_algebra(2).unwrap());
        let reg = Arc::new(Bimodule::regular(a));
        let d = left_dual(&reg);
        assert_eq!(d.dim(), 2);
        assert!(d.module.check().passed());
    }
}
