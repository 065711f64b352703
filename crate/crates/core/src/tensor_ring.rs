//! The tensor `A^e`-ring `T_{A^e}(G)` over a generator bimodule
//! `G = ⊕_x X ⊗_k X^∨`, its homogeneous components, ideal spans and quotients.
//!
//! A degree-`d` element is stored as a combination of words in the `k`-basis
//! letters of `G`, normalized at every junction by the separability idempotent
//! of `A^e`, which picks a canonical complement of the balancing relations.
//! Degree 0 is `A^e` itself.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::AlgebraSpec;
use crate::bimodule::RigidModule;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::Scalar;

/// Sparse element of the tensor ring keyed by [`GeneratorBundle::key`].
pub type Nc = BTreeMap<u64, Scalar>;

const DEG_SHIFT: u32 = 56;
const NUM_MASK: u64 = (1 << DEG_SHIFT) - 1;

static BUNDLE_IDS: AtomicU64 = AtomicU64::new(1);

/// A `k`-basis letter `e_m ⊗ f_f` of `X ⊗_k X^∨` for the object `obj`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub obj: usize,
    pub m: usize,
    pub f: usize,
}

/// One object generator with its rigid data.
#[derive(Clone, Debug)]
pub struct GeneratorObject {
    pub name: String,
    pub rigid: RigidModule,
}

impl GeneratorObject {
    pub fn dim(&self) -> usize {
        self.rigid.module.dim
    }

    pub fn dual_dim(&self) -> usize {
        self.rigid.dual.dim()
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorBundle {
    id: u64,
    pub algebra: Arc<AlgebraSpec>,
    pub env: AlgebraSpec,
    pub objects: Vec<GeneratorObject>,
    pub letters: Vec<Letter>,
    offsets: Vec<usize>,
    /// `left_act[e][l]`: the letters of `e · l` for an `A^e` basis element `e`.
    left_act: Vec<Vec<Vec<(usize, Scalar)>>>,
    right_act: Vec<Vec<Vec<(usize, Scalar)>>>,
    sep_env: Vec<(usize, usize, Scalar)>,
    sep_a: Vec<(usize, usize, Scalar)>,
}

fn idempotent_terms(v: &[Scalar], n: usize) -> Vec<(usize, usize, Scalar)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i / n, i % n, x.clone())).collect()
}

impl GeneratorBundle {
    /// Builds `G = ⊕_x X ⊗_k X^∨` with the actions
    /// `(a_1 ⊗ a_2^op)(m ⊗ ξ)(a_3 ⊗ a_4^op) = a_1 m a_3 ⊗ a_4 ξ a_2`.
    pub fn new(objects: Vec<GeneratorObject>) -> Result<GeneratorBundle> {
        if objects.is_empty() {
            return Err(Error::Signature("no object generators".into()));
        }
        let algebra = objects[0].rigid.module.algebra.clone();
        if objects.iter().any(|o| o.rigid.module.algebra != algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let sep_a = algebra
            .separability_idempotent()
            .ok_or_else(|| Error::NotSeparable("no separability idempotent for A".into()))?;
        let env = algebra.enveloping()?;
        let sep_env = env
            .separability_idempotent()
            .ok_or_else(|| Error::NotSeparable("no separability idempotent for A^e".into()))?;
        let mut letters = vec![];
        let mut offsets = vec![];
        for (o, x) in objects.iter().enumerate() {
            offsets.push(letters.len());
            for m in 0..x.dim() {
                for f in 0..x.dual_dim() {
                    letters.push(Letter { obj: o, m, f });
                }
            }
        }
        if letters.len() >= 1 << 16 {
            return Err(Error::DimensionMismatch("too many generator letters".into()));
        }
        let n = algebra.dim;
        let mut bundle = GeneratorBundle {
            id: BUNDLE_IDS.fetch_add(1, Ordering::Relaxed),
            algebra: algebra.clone(),
            env,
            objects,
            letters,
            offsets,
            left_act: vec![],
            right_act: vec![],
            sep_env: idempotent_terms(&sep_env, n * n),
            sep_a: idempotent_terms(&sep_a, n),
        };
        for e in 0..n * n {
            let (i, j) = (e / n, e % n);
            let mut la = vec![];
            let mut ra = vec![];
            for l in &bundle.letters {
                let x = &bundle.objects[l.obj];
                let md = &x.rigid.module;
                let dd = &x.rigid.dual.module;
                // left (i, j): e_i m ⊗ ξ e_j ; right (i, j): m e_i ⊗ e_j ξ
                let lm = md.left[i].column(l.m);
                let lf = dd.right[j].column(l.f);
                let rm = md.right[i].column(l.m);
                let rf = dd.left[j].column(l.f);
                la.push(bundle.combine(l.obj, &lm, &lf));
                ra.push(bundle.combine(l.obj, &rm, &rf));
            }
            bundle.left_act.push(la);
            bundle.right_act.push(ra);
        }
        Ok(bundle)
    }

    fn combine(&self, obj: usize, m: &[Scalar], f: &[Scalar]) -> Vec<(usize, Scalar)> {
        let mut out = vec![];
        for (a, x) in m.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in f.iter().enumerate() {
                if !y.is_zero() {
                    out.push((self.letter_index(obj, a, b), x * y));
                }
            }
        }
        out
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letter_index(&self, obj: usize, m: usize, f: usize) -> usize {
        self.offsets[obj] + m * self.objects[obj].dual_dim() + f
    }

    pub fn env_dim(&self) -> usize {
        self.env.dim
    }

    // ---- keys -------------------------------------------------------------

    pub fn key(&self, word: &[usize]) -> u64 {
        let g = self.letters.len() as u64;
        let mut num: u64 = 0;
        for &l in word {
            num = num.checked_mul(g).and_then(|x| x.checked_add(l as u64)).expect("word too long for key space");
        }
        assert!(num <= NUM_MASK, "word too long for key space");
        ((word.len() as u64) << DEG_SHIFT) | num
    }

    pub fn deg0_key(&self, e: usize) -> u64 {
        e as u64
    }

    pub fn degree(key: u64) -> usize {
        (key >> DEG_SHIFT) as usize
    }

    pub fn word(&self, key: u64) -> Vec<usize> {
        let d = Self::degree(key);
        let g = self.letters.len() as u64;
        let mut num = key & NUM_MASK;
        let mut w = vec![0; d];
        for i in (0..d).rev() {
            w[i] = (num % g) as usize;
            num /= g;
        }
        w
    }

    /// Echelon column of a key: higher degrees first, words lexicographic.
    pub fn column(key: u64) -> usize {
        let d = Self::degree(key) as u64;
        (((255 - d) << DEG_SHIFT) | (key & NUM_MASK)) as usize
    }

    pub fn key_of_column(c: usize) -> u64 {
        let c = c as u64;
        let d = 255 - (c >> DEG_SHIFT);
        (d << DEG_SHIFT) | (c & NUM_MASK)
    }

    pub fn to_sparse(x: &Nc) -> SparseVec {
        let mut v: SparseVec =
            x.iter().filter(|(_, s)| !s.is_zero()).map(|(k, s)| (Self::column(*k), s.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn from_sparse(v: &[(usize, Scalar)]) -> Nc {
        v.iter().map(|(c, s)| (Self::key_of_column(*c), s.clone())).collect()
    }

    // ---- elements ---------------------------------------------------------

    pub fn one(&self) -> Nc {
        self.deg0(&self.env.unit)
    }

    pub fn deg0(&self, e: &[Scalar]) -> Nc {
        e.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (self.deg0_key(i), x.clone())).collect()
    }

    /// `s(a) t(b) = a ⊗ b^op`.
    pub fn st(&self, a: &[Scalar], b: &[Scalar]) -> Nc {
        let n = self.algebra.dim;
        let mut v = vec![Scalar::zero(); n * n];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i * n + j] = x * y;
            }
        }
        self.deg0(&v)
    }

    pub fn source(&self, a: &[Scalar]) -> Nc {
        self.st(a, &self.algebra.unit)
    }

    pub fn target(&self, a: &[Scalar]) -> Nc {
        self.st(&self.algebra.unit, a)
    }

    pub fn letter(&self, l: usize) -> Nc {
        let mut x = Nc::new();
        x.insert(self.key(&[l]), Scalar::one());
        x
    }

    /// `[m | ξ]` for `m ∈ X` and `ξ ∈ X^∨` in coordinates.
    pub fn element(&self, obj: usize, m: &[Scalar], xi: &[Scalar]) -> Nc {
        let mut x = Nc::new();
        for (l, c) in self.combine(obj, m, xi) {
            add(&mut x, self.key(&[l]), c);
        }
        x
    }

    /// A word of letters, normalized.
    pub fn word_element(&self, w: &[usize]) -> Nc {
        let mut x = Nc::new();
        x.insert(self.key(w), Scalar::one());
        self.normalize(&x)
    }

    // ---- multiplication ---------------------------------------------------

    fn env_mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        self.env.basis_product(i, j)
    }

    /// `e · w` for an `A^e` basis element and a word key.
    fn act_left_key(&self, e: usize, key: u64, c: &Scalar, out: &mut Nc) {
        let d = Self::degree(key);
        if d == 0 {
            for (k, g) in self.env_mul_basis(e, key as usize) {
                add(out, *k as u64, c * g);
            }
            return;
        }
        let mut w = self.word(key);
        let first = w[0];
        for (l, s) in &self.left_act[e][first] {
            w[0] = *l;
            add(out, self.key(&w), c * s);
        }
    }

    fn act_right_key(&self, key: u64, e: usize, c: &Scalar, out: &mut Nc) {
        let d = Self::degree(key);
        if d == 0 {
            for (k, g) in self.env_mul_basis(key as usize, e) {
                add(out, *k as u64, c * g);
            }
            return;
        }
        let mut w = self.word(key);
        let last = w[d - 1];
        for (l, s) in &self.right_act[e][last] {
            w[d - 1] = *l;
            add(out, self.key(&w), c * s);
        }
    }

    pub fn act_left(&self, e: &[Scalar], x: &Nc) -> Nc {
        let mut out = Nc::new();
        for (i, a) in e.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in x {
                self.act_left_key(i, *k, &(a * c), &mut out);
            }
        }
        out
    }

    pub fn act_right(&self, x: &Nc, e: &[Scalar]) -> Nc {
        let mut out = Nc::new();
        for (i, a) in e.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in x {
                self.act_right_key(*k, i, &(a * c), &mut out);
            }
        }
        out
    }

    /// Product of two normalized monomials, normalized.
    fn mul_keys(&self, kx: u64, ky: u64, c: &Scalar, out: &mut Nc) {
        let (dx, dy) = (Self::degree(kx), Self::degree(ky));
        if dx == 0 {
            self.act_left_key(kx as usize, ky, c, out);
            return;
        }
        if dy == 0 {
            self.act_right_key(kx, ky as usize, c, out);
            return;
        }
        let wx = self.word(kx);
        let wy = self.word(ky);
        let (lx, ly) = (wx[dx - 1], wy[0]);
        let mut w = wx.clone();
        w.extend_from_slice(&wy);
        for (u, v, s) in &self.sep_env {
            for (a, p) in &self.right_act[*u][lx] {
                for (b, q) in &self.left_act[*v][ly] {
                    w[dx - 1] = *a;
                    w[dx] = *b;
                    add(out, self.key(&w), &(c * s) * &(p * q));
                }
            }
        }
    }

    pub fn mul(&self, x: &Nc, y: &Nc) -> Nc {
        let mut out = Nc::new();
        for (kx, a) in x {
            for (ky, b) in y {
                self.mul_keys(*kx, *ky, &(a * b), &mut out);
            }
        }
        out
    }

    /// Word concatenation without normalization (a representative in `G^{⊗_k d}`).
    pub fn concat_raw(&self, x: &Nc, y: &Nc) -> Nc {
        let mut out = Nc::new();
        for (kx, a) in x {
            for (ky, b) in y {
                let c = a * b;
                let (dx, dy) = (Self::degree(*kx), Self::degree(*ky));
                if dx == 0 || dy == 0 {
                    self.mul_keys(*kx, *ky, &c, &mut out);
                } else {
                    let mut w = self.word(*kx);
                    w.extend(self.word(*ky));
                    add(&mut out, self.key(&w), c);
                }
            }
        }
        out
    }

    /// Applies the junction idempotent at every junction.
    pub fn normalize(&self, x: &Nc) -> Nc {
        let mut cur = x.clone();
        let maxd = x.keys().map(|k| Self::degree(*k)).max().unwrap_or(0);
        for j in 0..maxd.saturating_sub(1) {
            let mut next = Nc::new();
            for (k, c) in &cur {
                let d = Self::degree(*k);
                if d < j + 2 {
                    add(&mut next, *k, c.clone());
                    continue;
                }
                let mut w = self.word(*k);
                let (lx, ly) = (w[j], w[j + 1]);
                for (u, v, s) in &self.sep_env {
                    for (a, p) in &self.right_act[*u][lx] {
                        for (b, q) in &self.left_act[*v][ly] {
                            w[j] = *a;
                            w[j + 1] = *b;
                            add(&mut next, self.key(&w), &(c * s) * &(p * q));
                        }
                    }
                }
            }
            cur = next;
        }
        cur
    }

    // ---- components -------------------------------------------------------

    /// Canonical basis of the degree-`d` component `G^{⊗_{A^e} d}`.
    pub fn degree_component(&self, d: usize) -> Vec<Nc> {
        if d == 0 {
            return (0..self.env.dim).map(|e| self.deg0(&self.env.basis(e))).collect();
        }
        let g = self.letters.len();
        let total = g.checked_pow(d as u32).expect("degree component too large");
        let vecs: Vec<SparseVec> = (0..total)
            .into_par_iter()
            .map(|n| {
                let mut w = vec![0; d];
                let mut r = n;
                for i in (0..d).rev() {
                    w[i] = r % g;
                    r /= g;
                }
                Self::to_sparse(&self.word_element(&w))
            })
            .collect();
        let ech = Echelon::from_vectors(vecs);
        ech.rows().map(|r| Self::from_sparse(r)).collect()
    }

    /// Separability idempotent of `A` as `(u, v, coefficient)` on basis indices.
    pub fn sep_a(&self) -> &[(usize, usize, Scalar)] {
        &self.sep_a
    }

    /// `A^e` index of `a ⊗ b^op` for basis elements.
    pub fn env_index(&self, a: usize, b: usize) -> usize {
        a * self.algebra.dim + b
    }

    /// Source of the `i`-th basis element of `A` as an `A^e` index.
    pub fn s_index(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.env.dim];
        let n = self.algebra.dim;
        for (j, u) in self.algebra.unit.iter().enumerate() {
            v[i * n + j] = u.clone();
        }
        v
    }

    pub fn t_index(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.env.dim];
        let n = self.algebra.dim;
        for (j, u) in self.algebra.unit.iter().enumerate() {
            v[j * n + i] = u.clone();
        }
        v
    }

    pub fn check_same(&self, x: &NcElement) -> Result<()> {
        if x.bundle != self.id {
            return Err(Error::BundleMismatch);
        }
        Ok(())
    }
}

/// Adds `c` at key `k`, dropping zero coefficients.
pub fn add(x: &mut Nc, k: u64, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        x.remove(&k);
    }
}

pub fn nc_add(x: &Nc, y: &Nc) -> Nc {
    let mut out = x.clone();
    for (k, c) in y {
        add(&mut out, *k, c.clone());
    }
    out
}

pub fn nc_sub(x: &Nc, y: &Nc) -> Nc {
    let mut out = x.clone();
    for (k, c) in y {
        add(&mut out, *k, -c);
    }
    out
}

pub fn nc_scale(x: &Nc, c: &Scalar) -> Nc {
    if c.is_zero() {
        return Nc::new();
    }
    x.iter().map(|(k, v)| (*k, v * c)).collect()
}

pub fn max_degree(x: &Nc) -> usize {
    x.keys().map(|k| GeneratorBundle::degree(*k)).max().unwrap_or(0)
}

/// An element tagged with the bundle it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct NcElement {
    pub bundle: u64,
    pub terms: Nc,
}

impl NcElement {
    pub fn new(b: &GeneratorBundle, terms: Nc) -> NcElement {
        NcElement { bundle: b.id, terms }
    }

    /// Homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<usize, Nc> {
        let mut out: BTreeMap<usize, Nc> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(GeneratorBundle::degree(*k)).or_default().insert(*k, c.clone());
        }
        out
    }
}

/// `x · y` with the bundle check.
pub fn multiply(b: &GeneratorBundle, x: &NcElement, y: &NcElement) -> Result<NcElement> {
    b.check_same(x)?;
    b.check_same(y)?;
    Ok(NcElement::new(b, b.mul(&x.terms, &y.terms)))
}

// ---- ideals and quotients -------------------------------------------------

/// Relation generators of a two-sided ideal.
#[derive(Clone, Debug)]
pub struct IdealSpan {
    pub relations: Vec<Nc>,
}

impl IdealSpan {
    pub fn new(relations: Vec<Nc>) -> IdealSpan {
        IdealSpan { relations: relations.into_iter().filter(|r| !r.is_empty()).collect() }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| {
            let mut ds = r.keys().map(|k| GeneratorBundle::degree(*k));
            let d0 = ds.next();
            ds.all(|d| Some(d) == d0)
        })
    }

    /// Span of `{u r v : deg u + top(r) + deg v ≤ top}` as one echelon form.
    pub fn span_upto(&self, b: &GeneratorBundle, top: usize) -> Echelon {
        let mut ech = Echelon::new();
        let mut fresh_rows: Vec<Nc> = vec![];
        let ne = b.env_dim();
        let g = b.num_letters();
        for n in 0..=top {
            let mut cands: Vec<Nc> = fresh_rows
                .par_iter()
                .flat_map_iter(|r| {
                    (0..g).flat_map(move |l| {
                        let lx = b.letter(l);
                        [b.mul(&lx, r), b.mul(r, &lx)]
                    })
                })
                .collect();
            for r in self.relations.iter().filter(|r| max_degree(r) == n) {
                for i in 0..ne {
                    let left = b.act_left(&b.env.basis(i), r);
                    for j in 0..ne {
                        cands.push(b.act_right(&left, &b.env.basis(j)));
                    }
                }
            }
            fresh_rows.clear();
            for c in cands {
                let before = ech.dim();
                let v = GeneratorBundle::to_sparse(&c);
                let r = ech.reduce(v);
                if !r.is_empty() {
                    fresh_rows.push(GeneratorBundle::from_sparse(&r));
                    ech.insert(r);
                }
                debug_assert!(ech.dim() >= before);
            }
        }
        ech
    }

    /// `I_d` for homogeneous relations, as a basis of elements.
    pub fn degree_span(&self, b: &GeneratorBundle, d: usize) -> Result<Vec<Nc>> {
        if !self.is_homogeneous() {
            return Err(Error::InhomogeneousRelations);
        }
        let mut ech = self.span_upto(b, d);
        ech.finalize();
        Ok(ech
            .rows()
            .filter(|r| GeneratorBundle::degree(GeneratorBundle::key_of_column(r[0].0)) == d)
            .map(|r| GeneratorBundle::from_sparse(r))
            .collect())
    }
}

/// Result of the stabilization loop for inhomogeneous ideals.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Stabilization {
    /// `dim(V_{D+h} ∩ T_{≤D})` for `h = 0, 1, …`.
    pub sequence: Vec<usize>,
    pub horizon_used: usize,
    pub stabilized: bool,
}

/// A truncated quotient `T_{A^e}(G)/I`.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    pub max_d: usize,
    pub homogeneous: bool,
    /// `dim G^{⊗d}` for `d ≤ max_d`.
    pub ambient_dims: Vec<usize>,
    /// Graded: `dim I_d`. Filtered: `dim I ∩ T_{≤d}`.
    pub ideal_dims: Vec<usize>,
    /// Graded: `dim (T/I)_d`. Filtered: `dim T_{≤d} / (I ∩ T_{≤d})`.
    pub dims: Vec<usize>,
    /// Ideal rows whose pivot degree is at most `max_d`.
    pub ideal: Echelon,
    /// Coset representatives grouped by the degree of the spanning word.
    pub coset_basis: Vec<Vec<Nc>>,
    pub stabilization: Option<Stabilization>,
}

impl GradedQuotient {
    /// Canonical representative of the class of `x` (`x` of degree ≤ `max_d`).
    pub fn rep(&self, x: &Nc) -> Nc {
        GeneratorBundle::from_sparse(&self.ideal.reduce(GeneratorBundle::to_sparse(x)))
    }

    pub fn is_zero(&self, x: &Nc) -> bool {
        self.ideal.reduce(GeneratorBundle::to_sparse(x)).is_empty()
    }

    pub fn contains_ideal(&self, x: &Nc) -> bool {
        self.is_zero(x)
    }

    pub fn stable(&self) -> bool {
        self.stabilization.as_ref().map(|s| s.stabilized).unwrap_or(true)
    }

    /// All coset representatives of degree ≤ `d`.
    pub fn spanning_set(&self, d: usize) -> Vec<Nc> {
        self.coset_basis.iter().take(d + 1).flatten().cloned().collect()
    }
}

fn rows_upto(ech: &Echelon, d: usize) -> Echelon {
    let mut out = Echelon::new();
    for r in ech.rows() {
        if GeneratorBundle::degree(GeneratorBundle::key_of_column(r[0].0)) <= d {
            out.insert(r.clone());
        }
    }
    out.finalize();
    out
}

fn coset_bases(b: &GeneratorBundle, ideal: &Echelon, comps: &[Vec<Nc>]) -> Vec<Vec<Nc>> {
    let mut acc = ideal.clone();
    comps
        .iter()
        .map(|basis| {
            let mut out = vec![];
            for v in basis {
                let s = GeneratorBundle::to_sparse(v);
                if acc.insert(s.clone()) {
                    out.push(GeneratorBundle::from_sparse(&ideal.reduce(s)));
                }
            }
            let _ = b;
            out
        })
        .collect()
}

/// Per-degree quotient for homogeneous relations.
pub fn graded_quotient_dims(b: &GeneratorBundle, ideal: &IdealSpan, max_d: usize) -> Result<GradedQuotient> {
    if !ideal.is_homogeneous() {
        return Err(Error::InhomogeneousRelations);
    }
    let mut ech = ideal.span_upto(b, max_d);
    ech.finalize();
    let comps: Vec<Vec<Nc>> = (0..=max_d).map(|d| b.degree_component(d)).collect();
    let ambient_dims: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let mut ideal_dims = vec![0; max_d + 1];
    for r in ech.rows() {
        ideal_dims[GeneratorBundle::degree(GeneratorBundle::key_of_column(r[0].0))] += 1;
    }
    let dims = ambient_dims.iter().zip(&ideal_dims).map(|(a, i)| a - i).collect();
    let coset_basis = coset_bases(b, &ech, &comps);
    Ok(GradedQuotient {
        max_d,
        homogeneous: true,
        ambient_dims,
        ideal_dims,
        dims,
        ideal: ech,
        coset_basis,
        stabilization: None,
    })
}

/// Filtered quotient `T_{≤D} / (I ∩ T_{≤D})`, approximating `I ∩ T_{≤D}` by
/// `V_{D+h} ∩ T_{≤D}` for `h = 0..=horizon` until two consecutive values agree.
pub fn filtered_quotient(
    b: &GeneratorBundle,
    ideal: &IdealSpan,
    max_d: usize,
    horizon: usize,
) -> Result<GradedQuotient> {
    let mut seq = vec![];
    let mut last: Option<Echelon> = None;
    let mut stabilized = false;
    let mut used = 0;
    for h in 0..=horizon {
        let ech = ideal.span_upto(b, max_d + h);
        let cut = rows_upto(&ech, max_d);
        seq.push(cut.dim());
        used = h;
        let same = last.as_ref().map(|l| l.dim() == cut.dim()).unwrap_or(false);
        last = Some(cut);
        if same {
            stabilized = true;
            break;
        }
    }
    let ech = last.unwrap();
    let comps: Vec<Vec<Nc>> = (0..=max_d).map(|d| b.degree_component(d)).collect();
    let ambient_dims: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    let mut ideal_dims = vec![0; max_d + 1];
    for r in ech.rows() {
        let d = GeneratorBundle::degree(GeneratorBundle::key_of_column(r[0].0));
        for x in ideal_dims.iter_mut().skip(d) {
            *x += 1;
        }
    }
    let mut dims = vec![];
    let mut total = 0;
    for d in 0..=max_d {
        total += ambient_dims[d];
        dims.push(total - ideal_dims[d]);
    }
    let coset_basis = coset_bases(b, &ech, &comps);
    Ok(GradedQuotient {
        max_d,
        homogeneous: false,
        ambient_dims,
        ideal_dims,
        dims,
        ideal: ech,
        coset_basis,
        stabilization: Some(Stabilization { sequence: seq, horizon_used: used, stabilized }),
    })
}

// ---- tensor products over A -----------------------------------------------

/// Element of `B ⊗_k B` keyed by pairs of monomial keys.
pub type Nc2 = BTreeMap<(u64, u64), Scalar>;
/// Element of `B ⊗_k B ⊗_k B`.
pub type Nc3 = BTreeMap<(u64, u64, u64), Scalar>;

pub fn add2(x: &mut Nc2, k: (u64, u64), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        x.remove(&k);
    }
}

pub fn add3(x: &mut Nc3, k: (u64, u64, u64), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        x.remove(&k);
    }
}

pub fn tensor2(x: &Nc, y: &Nc) -> Nc2 {
    let mut out = Nc2::new();
    for (a, p) in x {
        for (b, q) in y {
            add2(&mut out, (*a, *b), p * q);
        }
    }
    out
}

/// Applies `f` to the first leg and `g` to the second leg of every term.
fn map_legs2<F, G>(x: &Nc2, f: F, g: G) -> Nc2
where
    F: Fn(u64) -> Nc,
    G: Fn(u64) -> Nc,
{
    // first leg grouped by second key, then second leg grouped by first key
    let mut by_second: BTreeMap<u64, Nc> = BTreeMap::new();
    for ((a, b), c) in x {
        add(by_second.entry(*b).or_default(), *a, c.clone());
    }
    let mut mid = Nc2::new();
    for (b, firsts) in by_second {
        let mut img = Nc::new();
        for (a, c) in firsts {
            for (k, s) in f(a) {
                add(&mut img, k, &c * &s);
            }
        }
        for (k, s) in img {
            add2(&mut mid, (k, b), s);
        }
    }
    let mut by_first: BTreeMap<u64, Nc> = BTreeMap::new();
    for ((a, b), c) in mid {
        add(by_first.entry(a).or_default(), b, c);
    }
    let mut out = Nc2::new();
    for (a, seconds) in by_first {
        let mut img = Nc::new();
        for (b, c) in seconds {
            for (k, s) in g(b) {
                add(&mut img, k, &c * &s);
            }
        }
        for (k, s) in img {
            add2(&mut out, (a, k), s);
        }
    }
    out
}

/// Normal forms in `B ⊗_A B` (balanced by `t(a) x ⊗ y = x ⊗ s(a) y`) and in the
/// Galois domain `B ⊗_{A^op} B` (balanced by `x t(a) ⊗ y = x ⊗ t(a) y`).
pub struct Quotients<'a> {
    pub bundle: &'a GeneratorBundle,
    pub quotient: &'a GradedQuotient,
}

impl<'a> Quotients<'a> {
    fn rep_key(&self, k: u64) -> Nc {
        let mut x = Nc::new();
        x.insert(k, Scalar::one());
        self.quotient.rep(&self.bundle.normalize(&x))
    }

    fn rep_nc(&self, x: &Nc) -> Nc {
        self.quotient.rep(&self.bundle.normalize(x))
    }

    /// Normal form of `Σ x ⊗ y` in `B ⊗_A B`.
    pub fn nf2(&self, x: &Nc2) -> Nc2 {
        let b = self.bundle;
        // legs first in T, then the balancing idempotent, then the ideal
        let norm = map_legs2(x, |k| self.single_norm(k), |k| self.single_norm(k));
        let mut p = Nc2::new();
        for (u, v, s) in b.sep_a() {
            let tu = b.t_index(*u);
            let sv = b.s_index(*v);
            let mut by_first: BTreeMap<u64, Nc> = BTreeMap::new();
            for ((a, c), w) in &norm {
                add(by_first.entry(*a).or_default(), *c, w.clone());
            }
            for (a, seconds) in by_first {
                let mut xa = Nc::new();
                xa.insert(a, Scalar::one());
                let left = b.act_left(&tu, &xa);
                let right = b.act_left(&sv, &seconds);
                for ((k1, k2), c) in tensor2(&left, &right) {
                    add2(&mut p, (k1, k2), c * s);
                }
            }
        }
        map_legs2(&p, |k| self.rep_key(k), |k| self.rep_key(k))
    }

    fn single_norm(&self, k: u64) -> Nc {
        let mut x = Nc::new();
        x.insert(k, Scalar::one());
        self.bundle.normalize(&x)
    }

    /// Normal form in the Galois domain `B_t ⊗_{A^op} {}_t B`.
    pub fn nf_galois(&self, x: &Nc2) -> Nc2 {
        let b = self.bundle;
        let norm = map_legs2(x, |k| self.single_norm(k), |k| self.single_norm(k));
        let mut p = Nc2::new();
        for (u, v, s) in b.sep_a() {
            // Σ x t(v_i) ⊗ t(u_i) y
            let tv = b.t_index(*v);
            let tu = b.t_index(*u);
            let mut by_first: BTreeMap<u64, Nc> = BTreeMap::new();
            for ((a, c), w) in &norm {
                add(by_first.entry(*a).or_default(), *c, w.clone());
            }
            for (a, seconds) in by_first {
                let mut xa = Nc::new();
                xa.insert(a, Scalar::one());
                let left = b.act_right(&xa, &tv);
                let right = b.act_left(&tu, &seconds);
                for ((k1, k2), c) in tensor2(&left, &right) {
                    add2(&mut p, (k1, k2), c * s);
                }
            }
        }
        map_legs2(&p, |k| self.rep_key(k), |k| self.rep_key(k))
    }

    /// Normal form of `Σ x ⊗ y ⊗ z` in `B ⊗_A B ⊗_A B`.
    pub fn nf3(&self, x: &Nc3) -> Nc3 {
        let b = self.bundle;
        // treat as (x ⊗ y) ⊗ z then x ⊗ (y ⊗ z), applying one balancing
        // idempotent per junction; junction projections commute
        let mut cur = Nc3::new();
        for ((k1, k2, k3), c) in x {
            let a = self.single_norm(*k1);
            let bb = self.single_norm(*k2);
            let cc = self.single_norm(*k3);
            for (p, u) in &a {
                for (q, v) in &bb {
                    for (r, w) in &cc {
                        add3(&mut cur, (*p, *q, *r), &(c * u) * &(v * w));
                    }
                }
            }
        }
        for junction in 0..2 {
            let mut next = Nc3::new();
            for (u, v, s) in b.sep_a() {
                let tu = b.t_index(*u);
                let sv = b.s_index(*v);
                for ((k1, k2, k3), c) in &cur {
                    let keys = [*k1, *k2, *k3];
                    let mut x1 = Nc::new();
                    x1.insert(keys[junction], Scalar::one());
                    let mut x2 = Nc::new();
                    x2.insert(keys[junction + 1], Scalar::one());
                    let l = b.act_left(&tu, &x1);
                    let r = b.act_left(&sv, &x2);
                    for (p, pc) in &l {
                        for (q, qc) in &r {
                            let mut nk = keys;
                            nk[junction] = *p;
                            nk[junction + 1] = *q;
                            add3(&mut next, (nk[0], nk[1], nk[2]), &(c * s) * &(pc * qc));
                        }
                    }
                }
            }
            cur = next;
        }
        // ideal reduction leg by leg
        for leg in 0..3 {
            let mut groups: BTreeMap<(u64, u64), Nc> = BTreeMap::new();
            for ((k1, k2, k3), c) in &cur {
                let keys = [*k1, *k2, *k3];
                let rest = match leg {
                    0 => (keys[1], keys[2]),
                    1 => (keys[0], keys[2]),
                    _ => (keys[0], keys[1]),
                };
                add(groups.entry(rest).or_default(), keys[leg], c.clone());
            }
            let mut next = Nc3::new();
            for (rest, xs) in groups {
                for (k, c) in self.quotient.rep(&xs) {
                    let nk = match leg {
                        0 => (k, rest.0, rest.1),
                        1 => (rest.0, k, rest.1),
                        _ => (rest.0, rest.1, k),
                    };
                    add3(&mut next, nk, c);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn rep(&self, x: &Nc) -> Nc {
        self.rep_nc(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{Bimodule, RigidModule};

    fn one_gen_bundle() -> GeneratorBundle {
        let m = Arc::new(Bimodule::over_ground(1));
        let rigid = RigidModule::new(m).unwrap();
        GeneratorBundle::new(vec![GeneratorObject { name: "x".into(), rigid }]).unwrap()
    }

    #[test]
    fn keys_round_trip() {
        let b = one_gen_bundle();
        let k = b.key(&[0, 0, 0]);
        assert_eq!(GeneratorBundle::degree(k), 3);
        assert_eq!(GeneratorBundle::key_of_column(GeneratorBundle::column(k)), k);
    }

    #[test]
    fn one_generator_components_are_lines() {
        let b = one_gen_bundle();
        for d in 0..4 {
            assert_eq!(b.degree_component(d).len(), 1);
        }
    }

    #[test]
    fn t_squared_minus_one() {
        let b = one_gen_bundle();
        let t = b.letter(0);
        let rel = nc_sub(&b.mul(&t, &t), &b.one());
        let q = filtered_quotient(&b, &IdealSpan::new(vec![rel]), 1, 2).unwrap();
        assert_eq!(q.dims[1], 2);
        let s = q.stabilization.unwrap();
        assert!(s.stabilized);
    }
}
