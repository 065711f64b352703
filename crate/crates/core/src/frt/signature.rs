//! Presentations from a tensor scheme: object generators mapped to rigid
//! bimodules, morphism generators to bimodule maps between tensor words.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Flavor, Presentation};
use crate::bimodule::RigidModule;
use crate::braiding::BraidedObject;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::multitensor::{
    act_left_slot, act_right_slot, apply_pair, nested_eval_key, Crossings, IteratedTensor, MultiTensor,
};
use crate::report::{Tally, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor_ring::{add, GeneratorBundle, GeneratorObject, IdealSpan, Nc};

/// A morphism generator `f: x_1 ⋯ x_a → y_1 ⋯ y_b` with its image, a matrix
/// on the coordinates of the left-nested tensor products (of `A` for empty words).
#[derive(Clone, Debug)]
pub struct MorphismGen {
    pub name: String,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct MonoidalSignature {
    pub objects: Vec<(String, RigidModule)>,
    pub morphisms: Vec<MorphismGen>,
}

/// Morphisms of the free monoidal category on a signature.
#[derive(Clone, Debug)]
pub enum MorphismExpr {
    Gen(usize),
    Id(Vec<usize>),
    /// `f ∘ g`: apply `g` first.
    Compose(Box<MorphismExpr>, Box<MorphismExpr>),
    Tensor(Box<MorphismExpr>, Box<MorphismExpr>),
}

impl MorphismExpr {
    pub fn compose(f: MorphismExpr, g: MorphismExpr) -> MorphismExpr {
        MorphismExpr::Compose(Box::new(f), Box::new(g))
    }

    pub fn tensor(f: MorphismExpr, g: MorphismExpr) -> MorphismExpr {
        MorphismExpr::Tensor(Box::new(f), Box::new(g))
    }
}

/// An element of `ω(w)`: a sum of simple tensors, or an element of `A` for
/// the empty word.
#[derive(Clone, Debug, PartialEq)]
enum WordElem {
    Base(Vec<Scalar>),
    Tensor(MultiTensor),
}

struct WordSpace<'a> {
    sig: &'a MonoidalSignature,
    word: Vec<usize>,
    it: Option<IteratedTensor>,
}

impl<'a> WordSpace<'a> {
    fn new(sig: &'a MonoidalSignature, word: &[usize]) -> Result<WordSpace<'a>> {
        let it = if word.is_empty() {
            None
        } else {
            Some(IteratedTensor::new(word.iter().map(|&o| sig.objects[o].1.module.clone()).collect())?)
        };
        Ok(WordSpace { sig, word: word.to_vec(), it })
    }

    fn dim(&self) -> usize {
        match &self.it {
            Some(it) => it.dim(),
            None => self.sig.algebra().dim,
        }
    }

    fn coords(&self, x: &WordElem) -> Vec<Scalar> {
        match (x, &self.it) {
            (WordElem::Base(a), None) => a.clone(),
            (WordElem::Tensor(t), Some(it)) => it.project(t),
            _ => unreachable!("element does not match its word"),
        }
    }

    fn lift(&self, v: &[Scalar]) -> WordElem {
        match &self.it {
            None => WordElem::Base(v.to_vec()),
            Some(it) => {
                let mut t = MultiTensor::default();
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        t.add_term(it.basis_key(k), c.clone());
                    }
                }
                WordElem::Tensor(t)
            }
        }
    }

    /// All simple tensors of basis vectors (the unit for the empty word).
    fn simple_basis(&self) -> Vec<WordElem> {
        if self.word.is_empty() {
            return vec![WordElem::Base(self.sig.algebra().unit.clone())];
        }
        let dims: Vec<usize> = self.word.iter().map(|&o| self.sig.objects[o].1.module.dim).collect();
        product_keys(&dims).into_iter().map(|k| WordElem::Tensor(MultiTensor::simple(k))).collect()
    }

    /// Simple tensors `ζ_b ⊗ ⋯ ⊗ ζ_1` of basis functionals (basis of `A` when empty).
    fn dual_keys(&self) -> Vec<Vec<usize>> {
        if self.word.is_empty() {
            return (0..self.sig.algebra().dim).map(|k| vec![k]).collect();
        }
        let dims: Vec<usize> = self.word.iter().rev().map(|&o| self.sig.objects[o].1.dual.dim()).collect();
        product_keys(&dims)
    }

    /// `⟨ζ, n⟩` for `ζ` given by [`WordSpace::dual_keys`].
    fn pair(&self, zeta: &[usize], n: &WordElem) -> Vec<Scalar> {
        let alg = self.sig.algebra();
        match n {
            WordElem::Base(a) => alg.mul(a, &alg.basis(zeta[0])),
            WordElem::Tensor(t) => {
                let duals: Vec<_> = self.word.iter().map(|&o| &self.sig.objects[o].1.dual).collect();
                let mut out = vec![Scalar::zero(); alg.dim];
                for (k, c) in &t.terms {
                    let mut full = k.clone();
                    full.extend_from_slice(zeta);
                    for (o, v) in out.iter_mut().zip(nested_eval_key(&full, &duals)) {
                        *o += c * &v;
                    }
                }
                out
            }
        }
    }

    /// Product dual bases `D_J = x_{j_1} ⊗ ⋯ ⊗ x_{j_a}`, `D^J = η^{j_a} ⊗ ⋯ ⊗ η^{j_1}`,
    /// the latter as sparse combinations of dual keys.
    fn product_dual_bases(&self) -> Vec<(WordElem, Vec<(Vec<usize>, Scalar)>)> {
        let alg = self.sig.algebra();
        if self.word.is_empty() {
            return vec![(WordElem::Base(alg.unit.clone()), vec![(vec![], Scalar::one())])];
        }
        let lens: Vec<usize> = self.word.iter().map(|&o| self.sig.objects[o].1.dual_bases.len()).collect();
        let mut out = vec![];
        for j in product_keys(&lens) {
            let mut el: Vec<(Vec<usize>, Scalar)> = vec![(vec![], Scalar::one())];
            let mut du: Vec<(Vec<usize>, Scalar)> = vec![(vec![], Scalar::one())];
            for (pos, &o) in self.word.iter().enumerate() {
                let db = &self.sig.objects[o].1.dual_bases;
                el = extend(&el, &db.elements[j[pos]]);
            }
            for (pos, &o) in self.word.iter().enumerate().rev() {
                let db = &self.sig.objects[o].1.dual_bases;
                du = extend(&du, &db.functionals[j[pos]]);
            }
            let mut t = MultiTensor::default();
            for (k, c) in el {
                t.add_term(k, c);
            }
            out.push((WordElem::Tensor(t), du));
        }
        out
    }
}

fn extend(acc: &[(Vec<usize>, Scalar)], v: &[Scalar]) -> Vec<(Vec<usize>, Scalar)> {
    let mut out = vec![];
    for (k, c) in acc {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let mut nk = k.clone();
                nk.push(i);
                out.push((nk, c * x));
            }
        }
    }
    out
}

fn product_keys(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|k| {
                (0..d).map(move |i| {
                    let mut nk = k.clone();
                    nk.push(i);
                    nk
                })
            })
            .collect();
    }
    out
}

fn tensor_elems(sig: &MonoidalSignature, x: &WordElem, y: &WordElem, wx: &[usize], wy: &[usize]) -> WordElem {
    let alg = sig.algebra();
    match (x, y) {
        (WordElem::Base(a), WordElem::Base(b)) => WordElem::Base(alg.mul(a, b)),
        (WordElem::Base(a), WordElem::Tensor(t)) => {
            WordElem::Tensor(act_left_slot(t, 0, &sig.objects[wy[0]].1.module, a))
        }
        (WordElem::Tensor(t), WordElem::Base(b)) => {
            let last = wx.len() - 1;
            WordElem::Tensor(act_right_slot(t, last, &sig.objects[wx[last]].1.module, b))
        }
        (WordElem::Tensor(s), WordElem::Tensor(t)) => {
            let mut out = MultiTensor::default();
            for (k1, c1) in &s.terms {
                for (k2, c2) in &t.terms {
                    let mut k = k1.clone();
                    k.extend_from_slice(k2);
                    out.add_term(k, c1 * c2);
                }
            }
            WordElem::Tensor(out)
        }
    }
}

/// A morphism evaluated to its source, target and matrix.
#[derive(Clone, Debug)]
pub struct EvaluatedMorphism {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub matrix: Matrix,
}

impl MonoidalSignature {
    pub fn algebra(&self) -> &crate::algebra::AlgebraSpec {
        &self.objects[0].1.module.algebra
    }

    pub fn validate(&self) -> Result<()> {
        if self.objects.is_empty() {
            return Err(Error::Signature("no object generators".into()));
        }
        for f in &self.morphisms {
            for &o in f.source.iter().chain(&f.target) {
                if o >= self.objects.len() {
                    return Err(Error::Signature(format!("{}: unknown object {o}", f.name)));
                }
            }
            let (s, t) = (WordSpace::new(self, &f.source)?, WordSpace::new(self, &f.target)?);
            if f.matrix.rows != t.dim() || f.matrix.cols != s.dim() {
                return Err(Error::Signature(format!(
                    "{}: matrix is {}x{}, expected {}x{}",
                    f.name,
                    f.matrix.rows,
                    f.matrix.cols,
                    t.dim(),
                    s.dim()
                )));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, e: &MorphismExpr) -> Result<EvaluatedMorphism> {
        match e {
            MorphismExpr::Gen(i) => {
                let f = self.morphisms.get(*i).ok_or_else(|| Error::Signature(format!("no morphism {i}")))?;
                Ok(EvaluatedMorphism { source: f.source.clone(), target: f.target.clone(), matrix: f.matrix.clone() })
            }
            MorphismExpr::Id(w) => {
                let d = WordSpace::new(self, w)?.dim();
                Ok(EvaluatedMorphism { source: w.clone(), target: w.clone(), matrix: Matrix::identity(d) })
            }
            MorphismExpr::Compose(f, g) => {
                let (f, g) = (self.evaluate(f)?, self.evaluate(g)?);
                if g.target != f.source {
                    return Err(Error::NotComposable(format!("{:?} then {:?}", g.target, f.source)));
                }
                Ok(EvaluatedMorphism { source: g.source, target: f.target, matrix: f.matrix.mul(&g.matrix) })
            }
            MorphismExpr::Tensor(f, g) => {
                let (f, g) = (self.evaluate(f)?, self.evaluate(g)?);
                let src: Vec<usize> = f.source.iter().chain(&g.source).copied().collect();
                let tgt: Vec<usize> = f.target.iter().chain(&g.target).copied().collect();
                let (ss, ts) = (WordSpace::new(self, &src)?, WordSpace::new(self, &tgt)?);
                let (fs, ft) = (WordSpace::new(self, &f.source)?, WordSpace::new(self, &f.target)?);
                let (gs, gt) = (WordSpace::new(self, &g.source)?, WordSpace::new(self, &g.target)?);
                let split = f.source.len();
                let cols: Vec<Vec<Scalar>> = (0..ss.dim())
                    .map(|k| {
                        let mut e = vec![Scalar::zero(); ss.dim()];
                        e[k] = Scalar::one();
                        let x = ss.lift(&e);
                        let mut acc = vec![Scalar::zero(); ts.dim()];
                        // split each simple tensor as (first |f.source| factors, rest)
                        let parts: Vec<(WordElem, WordElem)> = match &x {
                            WordElem::Base(a) => {
                                vec![(WordElem::Base(a.clone()), WordElem::Base(self.algebra().unit.clone()))]
                            }
                            WordElem::Tensor(t) => t
                                .terms
                                .iter()
                                .map(|(key, c)| {
                                    let left = if split == 0 {
                                        WordElem::Base(self.algebra().unit.iter().map(|u| u * c).collect())
                                    } else {
                                        let mut m = MultiTensor::default();
                                        m.add_term(key[..split].to_vec(), c.clone());
                                        WordElem::Tensor(m)
                                    };
                                    let right = if split == key.len() {
                                        WordElem::Base(self.algebra().unit.clone())
                                    } else {
                                        WordElem::Tensor(MultiTensor::simple(key[split..].to_vec()))
                                    };
                                    (left, right)
                                })
                                .collect(),
                        };
                        for (l, r) in parts {
                            let fl = ft.lift(&f.matrix.mul_vec(&fs.coords(&l)));
                            let gr = gt.lift(&g.matrix.mul_vec(&gs.coords(&r)));
                            let img = tensor_elems(self, &fl, &gr, &f.target, &g.target);
                            for (o, y) in acc.iter_mut().zip(ts.coords(&img)) {
                                *o += y;
                            }
                        }
                        acc
                    })
                    .collect();
                Ok(EvaluatedMorphism { source: src, target: tgt, matrix: Matrix::from_columns(ts.dim(), &cols) })
            }
        }
    }

    pub fn bundle(&self) -> Result<GeneratorBundle> {
        GeneratorBundle::new(
            self.objects.iter().map(|(n, r)| GeneratorObject { name: n.clone(), rigid: r.clone() }).collect(),
        )
    }
}

/// `[n | ζ]` as an element of the tensor ring.
fn e_element(bundle: &GeneratorBundle, word: &[usize], n: &WordElem, zeta: &[(Vec<usize>, Scalar)]) -> Nc {
    let mut out = Nc::new();
    match n {
        WordElem::Base(a) => {
            for (z, c) in zeta {
                let v: Vec<Scalar> =
                    if z.is_empty() { bundle.algebra.unit.clone() } else { bundle.algebra.basis(z[0]) };
                for (k, x) in bundle.st(a, &v) {
                    add(&mut out, k, c * &x);
                }
            }
        }
        WordElem::Tensor(t) => {
            let d = word.len();
            for (key, c) in &t.terms {
                for (z, cz) in zeta {
                    let letters: Vec<usize> =
                        (0..d).map(|i| bundle.letter_index(word[i], key[i], z[d - 1 - i])).collect();
                    for (k, x) in bundle.word_element(&letters) {
                        add(&mut out, k, &(c * cz) * &x);
                    }
                }
            }
        }
    }
    out
}

/// `Rel^Σ_f(m ⊗ ξ) = [f(m) | ξ] − Σ_J t(⟨ξ, f(D_J)⟩) [m | D^J]` on all simple
/// tensors of basis vectors.
pub fn relation_image(sig: &MonoidalSignature, bundle: &GeneratorBundle, f: &EvaluatedMorphism) -> Result<Vec<Nc>> {
    let (ss, ts) = (WordSpace::new(sig, &f.source)?, WordSpace::new(sig, &f.target)?);
    let apply = |x: &WordElem| ts.lift(&f.matrix.mul_vec(&ss.coords(x)));
    let pdb: Vec<(WordElem, Vec<(Vec<usize>, Scalar)>)> =
        ss.product_dual_bases().into_iter().map(|(dj, du)| (apply(&dj), du)).collect();
    let mut out = vec![];
    for m in ss.simple_basis() {
        let fm = apply(&m);
        for z in ts.dual_keys() {
            let zeta: Vec<(Vec<usize>, Scalar)> = vec![(z.clone(), Scalar::one())];
            let mut rel = e_element(bundle, &f.target, &fm, &zeta);
            for (fdj, du) in &pdb {
                let v = ts.pair(&z, fdj);
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let term = bundle.mul(&bundle.target(&v), &e_element(bundle, &f.source, &m, du));
                for (k, c) in term {
                    add(&mut rel, k, -c);
                }
            }
            out.push(rel);
        }
    }
    Ok(out)
}

/// Tensor ring presentation with one relation family per morphism generator.
pub fn build_from_signature(sig: &MonoidalSignature) -> Result<Presentation> {
    sig.validate()?;
    let bundle = Arc::new(sig.bundle()?);
    let mut rels = vec![];
    let mut homogeneous = true;
    for (i, f) in sig.morphisms.iter().enumerate() {
        if f.source.len() != f.target.len() {
            homogeneous = false;
        }
        let ev = sig.evaluate(&MorphismExpr::Gen(i))?;
        rels.extend(relation_image(sig, &bundle, &ev)?);
    }
    let mut generators = vec![];
    for (o, (name, r)) in sig.objects.iter().enumerate() {
        for (i, mi) in r.dual_bases.elements.iter().enumerate() {
            for (j, fj) in r.dual_bases.functionals.iter().enumerate() {
                generators.push(super::NamedGenerator {
                    name: format!("{name}[{},{}]", i + 1, j + 1),
                    element: bundle.element(o, mi, fj),
                });
            }
        }
    }
    Ok(Presentation {
        bundle,
        relations: IdealSpan::new(rels),
        homogeneous,
        flavor: Flavor::Bialgebroid,
        generators,
        braided: None,
        cert: None,
        w: None,
        wbar: None,
        crossings: None,
        delta_override: BTreeMap::new(),
        r_override: BTreeMap::new(),
    })
}

/// Crossing morphisms `x_s x_t → x_t x_s` for the given type pairs.
pub fn crossing_morphisms(
    objects: &[(String, RigidModule)],
    cr: &(dyn Crossings + Send + Sync),
    pairs: &[(usize, usize)],
) -> Result<Vec<MorphismGen>> {
    let mut out = vec![];
    for &(s, t) in pairs {
        let src = IteratedTensor::new(vec![objects[s].1.module.clone(), objects[t].1.module.clone()])?;
        let tgt = IteratedTensor::new(vec![objects[t].1.module.clone(), objects[s].1.module.clone()])?;
        let cols: Vec<Vec<Scalar>> = (0..src.dim())
            .map(|k| tgt.project(&apply_pair(&MultiTensor::simple(src.basis_key(k)), 0, cr.forward(s, t))))
            .collect();
        out.push(MorphismGen {
            name: format!("sigma[{},{}]", objects[s].0, objects[t].0),
            source: vec![s, t],
            target: vec![t, s],
            matrix: Matrix::from_columns(tgt.dim(), &cols),
        });
    }
    Ok(out)
}

/// All relations of the morphism generators of `sig` over `bundle`.
pub fn signature_relations(sig: &MonoidalSignature, bundle: &GeneratorBundle) -> Result<Vec<Nc>> {
    let mut rels = vec![];
    for i in 0..sig.morphisms.len() {
        rels.extend(relation_image(sig, bundle, &sig.evaluate(&MorphismExpr::Gen(i))?)?);
    }
    Ok(rels)
}

/// One object `x ↦ M` and the crossings `σ ↦ c`, `σ̄ ↦ c^{-1}` on `xx`.
pub fn braid_signature(b: &BraidedObject) -> MonoidalSignature {
    MonoidalSignature {
        objects: vec![("T".into(), b.rigid.clone())],
        morphisms: vec![
            MorphismGen { name: "sigma".into(), source: vec![0, 0], target: vec![0, 0], matrix: b.c.clone() },
            MorphismGen { name: "sigma_bar".into(), source: vec![0, 0], target: vec![0, 0], matrix: b.c_inv.clone() },
        ],
    }
}

fn span_of(vs: &[Nc]) -> Echelon {
    let mut e = Echelon::from_vectors(vs.iter().map(GeneratorBundle::to_sparse));
    e.finalize();
    e
}

fn contained(sub: &[Nc], sup: &Echelon) -> Option<usize> {
    sub.iter().position(|v| !sup.reduce(GeneratorBundle::to_sparse(v)).is_empty())
}

/// Products `r w` (`right = true`) or `w r` with all normalized words `w` keeping
/// the total degree at most `d`, including degree 0.
fn one_sided(bundle: &GeneratorBundle, rels: &[Nc], d: usize, right: bool) -> Vec<Nc> {
    let mut out = vec![];
    for r in rels {
        let dr = crate::tensor_ring::max_degree(r);
        for k in 0..=d.saturating_sub(dr) {
            for w in bundle.degree_component(k) {
                out.push(if right { bundle.mul(r, &w) } else { bundle.mul(&w, r) });
            }
        }
    }
    out
}

/// `Im Rel_{fg} ⊂ Im Rel_f + Im Rel_g`, `Im Rel_{f⊗g} ⊂ Im Rel_f · B̃ + B̃ · Im Rel_g`
/// (truncated at degree `d`) and, when `g` inverts `f`, `Im Rel_f = Im Rel_g`.
pub fn relation_reduction_check(
    sig: &MonoidalSignature,
    f: &MorphismExpr,
    g: &MorphismExpr,
    d: usize,
) -> Result<VerificationReport> {
    let bundle = sig.bundle()?;
    let (ef, eg) = (sig.evaluate(f)?, sig.evaluate(g)?);
    let rf = relation_image(sig, &bundle, &ef)?;
    let rg = relation_image(sig, &bundle, &eg)?;
    let mut rep = VerificationReport::default();

    let mut t = Tally::new("rel-composition", d);
    match sig.evaluate(&MorphismExpr::compose(f.clone(), g.clone())) {
        Ok(efg) => {
            let rfg = relation_image(sig, &bundle, &efg)?;
            let sum: Vec<Nc> = rf.iter().chain(&rg).cloned().collect();
            let bad = contained(&rfg, &span_of(&sum));
            t.record(bad.is_none(), || format!("Rel_(f∘g) element #{} is outside Im Rel_f + Im Rel_g", bad.unwrap()));
        }
        Err(Error::NotComposable(_)) if ef.source != eg.target => {}
        Err(e) => return Err(e),
    }
    rep.push(t.finish());

    let mut t = Tally::new("rel-tensor", d);
    let eft = sig.evaluate(&MorphismExpr::tensor(f.clone(), g.clone()))?;
    let rt = relation_image(sig, &bundle, &eft)?;
    let mut gens = one_sided(&bundle, &rf, d, true);
    gens.extend(one_sided(&bundle, &rg, d, false));
    let bad = contained(&rt, &span_of(&gens));
    t.record(bad.is_none(), || format!("Rel_(f⊗g) element #{} is outside Im Rel_f·B + B·Im Rel_g", bad.unwrap()));
    rep.push(t.finish());

    if ef.source == eg.target && ef.target == eg.source {
        let inverse = ef.matrix.mul(&eg.matrix) == Matrix::identity(ef.matrix.rows)
            && eg.matrix.mul(&ef.matrix) == Matrix::identity(ef.matrix.cols);
        if inverse {
            let mut t = Tally::new("rel-inverse", d);
            let (sf, sg) = (span_of(&rf), span_of(&rg));
            t.record(sf == sg, || format!("Im Rel_f (dim {}) ≠ Im Rel_f^-1 (dim {})", sf.dim(), sg.dim()));
            rep.push(t.finish());
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::frt::build_frt;

    #[test]
    fn braid_signature_matches_frt() {
        for b in [fixtures::flip().unwrap(), fixtures::q_braiding(Scalar::from_i64(2)).unwrap()] {
            let p = build_from_signature(&braid_signature(&b)).unwrap();
            let f = build_frt(&b).unwrap();
            assert_eq!(p.relations.relations.len(), 2 * f.relations.relations.len());
            for d in 0..=3 {
                let a = p.relations.degree_span(&p.bundle, d).unwrap();
                let c = f.relations.degree_span(&f.bundle, d).unwrap();
                assert_eq!(span_of(&a), span_of(&c), "degree {d}");
            }
        }
    }

    #[test]
    fn no_morphisms_is_free() {
        let b = fixtures::flip().unwrap();
        let sig = MonoidalSignature { objects: vec![("T".into(), b.rigid.clone())], morphisms: vec![] };
        let p = build_from_signature(&sig).unwrap();
        assert_eq!(p.quotient(2, 0).unwrap().dims, vec![1, 4, 16]);
    }

    #[test]
    fn reduction_containments() {
        let b = fixtures::q_braiding(Scalar::from_i64(2)).unwrap();
        let sig = braid_signature(&b);
        let s = MorphismExpr::Gen(0);
        let sb = MorphismExpr::Gen(1);
        let rep = relation_reduction_check(&sig, &s, &sb, 4).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.get("rel-inverse").is_some());
        let id = MorphismExpr::Id(vec![0]);
        let rep = relation_reduction_check(&sig, &s, &id, 3).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
