//! Lazy iterated tensor products `X_1 ⊗_A ⋯ ⊗_A X_k`.
//!
//! Elements are finite sums of simple tensors of basis vectors. Maps on two
//! adjacent factors act through the materialized `X_i ⊗_A X_{i+1}`: the pair is
//! projected, mapped and lifted back by the canonical section, which is
//! well defined on the balanced product.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bimodule::{Bimodule, DualModule, TensorSpace};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A sum of simple tensors keyed by basis multi-indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MultiTensor {
    pub terms: BTreeMap<Vec<usize>, Scalar>,
}

impl MultiTensor {
    pub fn simple(key: Vec<usize>) -> MultiTensor {
        let mut terms = BTreeMap::new();
        terms.insert(key, Scalar::one());
        MultiTensor { terms }
    }

    pub fn add_term(&mut self, key: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A bimodule map `X ⊗_A Y → Z ⊗_A W`, tabulated on simple basis tensors.
#[derive(Clone, Debug)]
pub struct PairMap {
    pub src: (Arc<Bimodule>, Arc<Bimodule>),
    pub tgt: (Arc<Bimodule>, Arc<Bimodule>),
    images: Vec<Vec<((usize, usize), Scalar)>>,
}

impl PairMap {
    /// `m` acts on the coordinates of `src` and lands in those of `tgt`.
    pub fn from_matrix(src: &TensorSpace, tgt: &TensorSpace, m: &Matrix) -> PairMap {
        let (dl, dr) = (src.left.dim, src.right.dim);
        let mut images = Vec::with_capacity(dl * dr);
        for a in 0..dl {
            for b in 0..dr {
                let v = vec![(a * dr + b, Scalar::one())];
                let coords = src.project_sparse(v);
                images.push(tgt.section_terms(&m.mul_vec(&coords)));
            }
        }
        PairMap { src: (src.left.clone(), src.right.clone()), tgt: (tgt.left.clone(), tgt.right.clone()), images }
    }

    pub fn image(&self, a: usize, b: usize) -> &[((usize, usize), Scalar)] {
        &self.images[a * self.src.1.dim + b]
    }
}

/// Applies `pm` to the factors at `slot` and `slot + 1`.
pub fn apply_pair(t: &MultiTensor, slot: usize, pm: &PairMap) -> MultiTensor {
    let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (k, c) in &t.terms {
        for ((x, y), s) in pm.image(k[slot], k[slot + 1]) {
            let mut nk = k.clone();
            nk[slot] = *x;
            nk[slot + 1] = *y;
            *out.entry(nk).or_default() += c * s;
        }
    }
    out.retain(|_, v| !v.is_zero());
    MultiTensor { terms: out }
}

/// Right action of `a` on the factor at `slot`.
pub fn act_right_slot(t: &MultiTensor, slot: usize, module: &Bimodule, a: &[Scalar]) -> MultiTensor {
    let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (k, c) in &t.terms {
        let v = module.act_right(&module.basis(k[slot]), a);
        for (i, s) in v.into_iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut nk = k.clone();
            nk[slot] = i;
            *out.entry(nk).or_default() += c * &s;
        }
    }
    out.retain(|_, v| !v.is_zero());
    MultiTensor { terms: out }
}

/// Left action of `a` on the factor at `slot`.
pub fn act_left_slot(t: &MultiTensor, slot: usize, module: &Bimodule, a: &[Scalar]) -> MultiTensor {
    let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (k, c) in &t.terms {
        let v = module.act_left(a, &module.basis(k[slot]));
        for (i, s) in v.into_iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut nk = k.clone();
            nk[slot] = i;
            *out.entry(nk).or_default() += c * &s;
        }
    }
    out.retain(|_, v| !v.is_zero());
    MultiTensor { terms: out }
}

/// `⟨ξ_1, x_1 ⟨ξ_2, x_2 ⋯ ⟨ξ_n, x_n⟩⟩⟩` on simple basis tensors
/// `x_1 ⊗ ⋯ ⊗ x_n ⊗ ξ_n ⊗ ⋯ ⊗ ξ_1`, where `duals[i]` is the dual of `X_{i+1}`.
pub fn nested_eval_key(key: &[usize], duals: &[&DualModule]) -> Vec<Scalar> {
    let n = duals.len();
    debug_assert_eq!(key.len(), 2 * n);
    if n == 0 {
        unreachable!("empty evaluation has no algebra");
    }
    let mut val = duals[n - 1].pair_basis(key[n], key[n - 1]);
    for i in (0..n - 1).rev() {
        let d = duals[i];
        let x = d.base.act_right(&d.base.basis(key[i]), &val);
        val = d.pair(&d.module.basis(key[2 * n - 1 - i]), &x);
    }
    val
}

/// Nested evaluation extended linearly; `dim_a` sizes the result.
pub fn nested_eval(t: &MultiTensor, duals: &[&DualModule], dim_a: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim_a];
    for (k, c) in &t.terms {
        for (o, v) in out.iter_mut().zip(nested_eval_key(k, duals)) {
            *o += c * &v;
        }
    }
    out
}

/// Supplies the elementary crossings `X_s ⊗ X_t → X_t ⊗ X_s` and their inverses
/// `X_t ⊗ X_s → X_s ⊗ X_t` between object types.
pub trait Crossings {
    fn forward(&self, s: usize, t: usize) -> &PairMap;
    fn inverse(&self, s: usize, t: usize) -> &PairMap;
}

/// The elementary crossing positions moving a left block of `b` strands past a
/// right block of `a` strands, starting at `start`: the rightmost strand of the
/// left block moves first.
pub fn block_crossing_positions(start: usize, b: usize, a: usize) -> Vec<usize> {
    let mut out = vec![];
    for j in (1..=b).rev() {
        for k in 0..a {
            out.push(start + j - 1 + k);
        }
    }
    out
}

/// Moves the block of `b` factors at `start` past the following `a` factors.
pub fn block_cross<C: Crossings + ?Sized>(
    t: &MultiTensor,
    types: &mut [usize],
    start: usize,
    b: usize,
    a: usize,
    cr: &C,
) -> MultiTensor {
    let mut cur = t.clone();
    for p in block_crossing_positions(start, b, a) {
        let (s, u) = (types[p], types[p + 1]);
        cur = apply_pair(&cur, p, cr.forward(s, u));
        types.swap(p, p + 1);
    }
    cur
}

/// Inverse of [`block_cross`]: takes the result layout (the `a` block first,
/// then the `b` block) back to the original order.
pub fn block_cross_inverse<C: Crossings + ?Sized>(
    t: &MultiTensor,
    types: &mut [usize],
    start: usize,
    b: usize,
    a: usize,
    cr: &C,
) -> MultiTensor {
    let mut cur = t.clone();
    for p in block_crossing_positions(start, b, a).into_iter().rev() {
        // the forward crossing here produced (u, s) from (s, u)
        let (u, s) = (types[p], types[p + 1]);
        cur = apply_pair(&cur, p, cr.inverse(s, u));
        types.swap(p, p + 1);
    }
    cur
}

/// `M^{⊗_A k}` materialized as left-nested balanced products.
#[derive(Clone, Debug)]
pub struct IteratedTensor {
    pub factors: Vec<Arc<Bimodule>>,
    /// `levels[i]` is `(X_1 ⊗ ⋯ ⊗ X_{i+1}) ⊗ X_{i+2}`.
    pub levels: Vec<TensorSpace>,
}

impl IteratedTensor {
    pub fn new(factors: Vec<Arc<Bimodule>>) -> crate::Result<IteratedTensor> {
        assert!(!factors.is_empty());
        let mut levels: Vec<TensorSpace> = vec![];
        let mut cur = factors[0].clone();
        for f in &factors[1..] {
            let ts = crate::bimodule::tensor_over_a(&cur, f)?;
            cur = ts.module.clone();
            levels.push(ts);
        }
        Ok(IteratedTensor { factors, levels })
    }

    pub fn dim(&self) -> usize {
        match self.levels.last() {
            Some(t) => t.dim(),
            None => self.factors[0].dim,
        }
    }

    /// Coordinates of the simple tensor with the given basis indices.
    pub fn project_key(&self, key: &[usize]) -> Vec<Scalar> {
        let mut v = self.factors[0].basis(key[0]);
        for (i, ts) in self.levels.iter().enumerate() {
            v = ts.project_pair(&v, &self.factors[i + 1].basis(key[i + 1]));
        }
        v
    }

    pub fn project(&self, t: &MultiTensor) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (k, c) in &t.terms {
            for (o, v) in out.iter_mut().zip(self.project_key(k)) {
                *o += c * &v;
            }
        }
        out
    }

    /// A simple-tensor representative of the `k`-th basis vector.
    pub fn basis_key(&self, k: usize) -> Vec<usize> {
        let mut key = vec![0; self.factors.len()];
        let mut idx = k;
        for i in (0..self.levels.len()).rev() {
            let (a, b) = self.levels[i].basis_pair(idx);
            key[i + 1] = b;
            idx = a;
        }
        key[0] = idx;
        key
    }

    /// Matrix of a map given on simple tensors.
    pub fn matrix_of<F: Fn(&MultiTensor) -> MultiTensor>(&self, f: F) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|k| self.project(&f(&MultiTensor::simple(self.basis_key(k))))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }
}
