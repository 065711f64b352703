//! Quivers, path bimodules over `Map(Λ, k)` and face models.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::AlgebraSpec;
use crate::bimodule::{left_dual, Bimodule, DualBases, RigidModule};
use crate::braiding::{check_dualizable, check_yang_baxter, BraidedObject, Coordinates};
use crate::error::{Error, Result};
use crate::frt::signature::{crossing_morphisms, signature_relations, MonoidalSignature};
use crate::frt::{build_frt, build_frt_hopf, Flavor, Presentation};
use crate::linalg::{Echelon, Matrix};
use crate::report::{Tally, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor_ring::{add, GeneratorBundle, IdealSpan, Nc};

/// Arrows `q` with source `s(q)` and target `t(q)` in `Λ = {0, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        if vertices == 0 || arrows.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if let Some(a) = arrows.iter().find(|(s, t)| *s >= vertices || *t >= vertices) {
            return Err(Error::DimensionMismatch(format!("arrow {a:?} leaves the vertex set of size {vertices}")));
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Every ordered pair of vertices joined by one arrow.
    pub fn full(vertices: usize) -> Result<Quiver> {
        Quiver::new(vertices, (0..vertices).flat_map(|s| (0..vertices).map(move |t| (s, t))).collect())
    }

    pub fn source(&self, q: usize) -> usize {
        self.arrows[q].0
    }

    pub fn target(&self, q: usize) -> usize {
        self.arrows[q].1
    }

    pub fn composable(&self, p: usize, q: usize) -> bool {
        self.target(p) == self.source(q)
    }

    /// `(p, q, r, s)` with `pq` and `rs` paths sharing both endpoints.
    pub fn is_face(&self, p: usize, q: usize, r: usize, s: usize) -> bool {
        self.composable(p, q)
            && self.composable(r, s)
            && self.source(p) == self.source(r)
            && self.target(q) == self.target(s)
    }

    /// Number of paths of length `n` (vertices for `n = 0`).
    pub fn path_count(&self, n: usize) -> usize {
        let mut counts = vec![1usize; self.vertices];
        for _ in 0..n {
            let mut next = vec![0; self.vertices];
            for &(s, t) in &self.arrows {
                next[s] += counts[t];
            }
            counts = next;
        }
        counts.iter().sum()
    }
}

/// A quiver with coefficients `w_{pq}^{rs}`: `c(m_p ⊗ m_q) = Σ w_{pq}^{rs} m_r ⊗ m_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceModel {
    pub quiver: Quiver,
    pub w: BTreeMap<(usize, usize, usize, usize), Scalar>,
}

impl FaceModel {
    /// `w_{pq}^{rs} = δ_{pr} δ_{qs}` on composable pairs.
    pub fn identity(quiver: Quiver) -> FaceModel {
        let n = quiver.arrows.len();
        let mut w = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                if quiver.composable(p, q) {
                    w.insert((p, q, p, q), Scalar::one());
                }
            }
        }
        FaceModel { quiver, w }
    }

    pub fn check_support(&self) -> Result<()> {
        for (&(p, q, r, s), v) in &self.w {
            let n = self.quiver.arrows.len();
            if p >= n || q >= n || r >= n || s >= n {
                return Err(Error::DimensionMismatch(format!("arrow index out of range in ({p},{q},{r},{s})")));
            }
            if !v.is_zero() && !self.quiver.is_face(p, q, r, s) {
                return Err(Error::NotFaceSupported(format!(
                    "w_{{{p}{q}}}^{{{r}{s}}} = {v} but ({p},{q},{r},{s}) is not a face"
                )));
            }
        }
        Ok(())
    }
}

/// `A = Map(Λ, k)`, `M_Q` free on arrows with `f·m_q·f' = f(s(q)) f'(t(q)) m_q`,
/// and the triple `m^q(m_p) = δ_{pq} e_{s(q)}`, `m̂_q(m^p) = δ_{pq} e_{t(q)}`.
pub fn build_path_bimodule(q: &Quiver) -> Result<(Arc<AlgebraSpec>, Arc<Bimodule>, DualBases)> {
    let alg = Arc::new(AlgebraSpec::function_algebra(q.vertices)?);
    let n = q.arrows.len();
    let diag = |pick: &dyn Fn(usize) -> usize, v: usize| {
        let mut m = Matrix::zeros(n, n);
        for a in 0..n {
            if pick(a) == v {
                m.set(a, a, Scalar::one());
            }
        }
        m
    };
    let left = (0..q.vertices).map(|v| diag(&|a| q.source(a), v)).collect();
    let right = (0..q.vertices).map(|v| diag(&|a| q.target(a), v)).collect();
    let m = Arc::new(Bimodule::new(alg.clone(), n, left, right)?);
    let dual = left_dual(&m);
    let ddual = left_dual(&dual.module);
    let mut db = DualBases { elements: vec![], functionals: vec![], hats: Some(vec![]) };
    for a in 0..n {
        let mut f = Matrix::zeros(q.vertices, n);
        f.set(q.source(a), a, Scalar::one());
        db.elements.push(m.basis(a));
        db.functionals.push(dual.coords_of(&f));
        // m̂_a reads the m^a-coordinate of ξ, i.e. the e_{s(a)} part of ξ(m_a)
        let mut h = Matrix::zeros(q.vertices, dual.dim());
        for c in 0..dual.dim() {
            let lam = dual.pair_basis(c, a)[q.source(a)].clone();
            h.set(q.target(a), c, lam);
        }
        db.hats.as_mut().unwrap().push(ddual.coords_of(&h));
    }
    let mut rep = db.certify(&m, &dual);
    rep.failures.extend(db.certify_hats(&dual, &ddual).failures);
    if !rep.passed() {
        return Err(Error::InvalidDualBases(rep.failures.join("; ")));
    }
    Ok((alg, m, db))
}

/// Assembles `c` on `M_Q ⊗_A M_Q` and certifies it.
pub fn face_braiding(fm: &FaceModel) -> Result<BraidedObject> {
    fm.check_support()?;
    let (_, m, db) = build_path_bimodule(&fm.quiver)?;
    let n = m.dim;
    let mut ck = Matrix::zeros(n * n, n * n);
    for (&(p, q, r, s), v) in &fm.w {
        if fm.quiver.composable(p, q) {
            ck.set(r * n + s, p * n + q, v.clone());
        }
    }
    let rigid = RigidModule::with_dual_bases(m, db)?;
    check_yang_baxter(rigid, &ck, Coordinates::TensorOverK)
}

/// The face-algebra presentation: `Σ w_{ij}^{rs} T_r^p T_s^q − Σ w_{rs}^{pq} T_i^r T_j^s`
/// and, when `(M, w)` is dualizable, `δ_{ij} s(e_{s(i)}) − Σ_r T_i^r T̄_r^j`,
/// `δ_{ij} t(e_{t(i)}) − Σ_r T̄_i^r T_r^j` together with the mixed crossing relations.
/// Generators and coring structure are those of the FRT construction on the same data.
pub fn hayashi_presentation(fm: &FaceModel) -> Result<Presentation> {
    let b = face_braiding(fm)?;
    let base = match check_dualizable(&b) {
        Ok(cert) => build_frt_hopf(&b, &cert)?,
        Err(Error::NotDualizable(_)) => build_frt(&b)?,
        Err(e) => return Err(e),
    };
    let bundle = base.bundle.clone();
    let n = fm.quiver.arrows.len();
    let w = |p: usize, q: usize, r: usize, s: usize| fm.w.get(&(p, q, r, s)).cloned().unwrap_or_else(Scalar::zero);
    let plus = &bundle.objects[0].rigid;
    let t = |i: usize, j: usize| bundle.element(0, &plus.dual_bases.elements[i], &plus.dual_bases.functionals[j]);
    let mut rels = vec![];
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let mut rel = Nc::new();
                    for r in 0..n {
                        for s in 0..n {
                            let (a, c) = (w(i, j, r, s), w(r, s, p, q));
                            if !a.is_zero() {
                                for (k, v) in bundle.mul(&t(r, p), &t(s, q)) {
                                    add(&mut rel, k, &a * &v);
                                }
                            }
                            if !c.is_zero() {
                                for (k, v) in bundle.mul(&t(i, r), &t(j, s)) {
                                    add(&mut rel, k, -(&c * &v));
                                }
                            }
                        }
                    }
                    rels.push(rel);
                }
            }
        }
    }
    if base.flavor == Flavor::Hopf {
        let minus = &bundle.objects[1].rigid;
        // T̄_i^j = [m^j | m̂_i]
        let tb =
            |i: usize, j: usize| bundle.element(1, &minus.dual_bases.elements[j], &minus.dual_bases.functionals[i]);
        let e = |v: usize| bundle.algebra.basis(v);
        for i in 0..n {
            for j in 0..n {
                let mut r1 = if i == j { bundle.source(&e(fm.quiver.source(i))) } else { Nc::new() };
                let mut r2 = if i == j { bundle.target(&e(fm.quiver.target(i))) } else { Nc::new() };
                for r in 0..n {
                    for (k, v) in bundle.mul(&t(i, r), &tb(r, j)) {
                        add(&mut r1, k, -v);
                    }
                    for (k, v) in bundle.mul(&tb(i, r), &t(r, j)) {
                        add(&mut r2, k, -v);
                    }
                }
                rels.push(r1);
                rels.push(r2);
            }
        }
        let objects: Vec<(String, RigidModule)> =
            bundle.objects.iter().map(|o| (o.name.clone(), o.rigid.clone())).collect();
        let cr = base.crossings.clone().expect("Hopf presentations carry crossings");
        let sig = MonoidalSignature {
            morphisms: crossing_morphisms(&objects, cr.as_ref(), &[(0, 1), (1, 0), (1, 1)])?,
            objects,
        };
        rels.extend(signature_relations(&sig, &bundle)?);
    }
    Ok(Presentation { relations: IdealSpan::new(rels), ..base })
}

/// Per-degree comparison of the face-algebra ideal with the FRT ideal: graded
/// spans for the bialgebroid, the degree `≤ max_d` part of the filtered ideal
/// at the given horizon for the Hopf form.
pub fn hayashi_span_check(fm: &FaceModel, max_d: usize, horizon: usize) -> Result<VerificationReport> {
    let h = hayashi_presentation(fm)?;
    let b = face_braiding(fm)?;
    let f = if h.flavor == Flavor::Hopf { build_frt_hopf(&b, &check_dualizable(&b)?)? } else { build_frt(&b)? };
    let mut rep = VerificationReport::default();
    for d in 0..=max_d {
        let mut t = Tally::new("hayashi-span", d);
        let (x, y) = if h.homogeneous {
            (span(h.relations.degree_span(&h.bundle, d)?), span(f.relations.degree_span(&f.bundle, d)?))
        } else {
            (filtered_part(&h, d, horizon)?, filtered_part(&f, d, horizon)?)
        };
        t.record(x == y, || format!("degree {d}: face ideal dim {} vs FRT ideal dim {}", x.dim(), y.dim()));
        rep.push(t.finish());
    }
    Ok(rep)
}

fn span(vs: Vec<Nc>) -> Echelon {
    let mut e = Echelon::from_vectors(vs.iter().map(GeneratorBundle::to_sparse));
    e.finalize();
    e
}

fn filtered_part(p: &Presentation, d: usize, horizon: usize) -> Result<Echelon> {
    let q = p.quotient(d, horizon)?;
    let mut e = Echelon::from_vectors(q.ideal.rows().cloned());
    e.finalize();
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::tensor_over_a;

    #[test]
    fn single_loop_is_ground() {
        let (a, m, _) = build_path_bimodule(&Quiver::new(1, vec![(0, 0)]).unwrap()).unwrap();
        assert_eq!((a.dim, m.dim), (1, 1));
    }

    #[test]
    fn one_arrow_square_vanishes() {
        let (_, m, _) = build_path_bimodule(&Quiver::new(2, vec![(0, 1)]).unwrap()).unwrap();
        assert_eq!(tensor_over_a(&m, &m).unwrap().dim(), 0);
    }

    #[test]
    fn full_quiver_dimensions() {
        let q = Quiver::full(2).unwrap();
        let (a, m, db) = build_path_bimodule(&q).unwrap();
        assert_eq!((a.dim, m.dim, db.len()), (2, 4, 4));
        let mm = tensor_over_a(&m, &m).unwrap();
        assert_eq!(mm.dim(), q.path_count(2));
    }

    #[test]
    fn non_face_rejected() {
        let q = Quiver::full(2).unwrap();
        let mut fm = FaceModel::identity(q);
        // arrows: 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1); arrow 2 starts at vertex 1
        fm.w.insert((0, 0, 2, 0), Scalar::one());
        assert!(matches!(fm.check_support(), Err(Error::NotFaceSupported(_))));
    }

    #[test]
    fn identity_model_braids() {
        let b = face_braiding(&FaceModel::identity(Quiver::full(2).unwrap())).unwrap();
        assert_eq!(b.c, Matrix::identity(8));
    }

    #[test]
    fn identity_model_rel1_vanishes() {
        let h = hayashi_presentation(&FaceModel::identity(Quiver::full(2).unwrap())).unwrap();
        assert_eq!(h.flavor, Flavor::Bialgebroid);
        assert!(h.relations.relations.is_empty());
    }

    #[test]
    fn identity_model_spans_match() {
        let rep = hayashi_span_check(&FaceModel::identity(Quiver::full(2).unwrap()), 2, 0).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn cycle_model_spans_match() {
        let fm = crate::fixtures::face_cycle_model(Scalar::from_i64(2), Scalar::from_i64(2)).unwrap();
        let h = hayashi_presentation(&fm).unwrap();
        assert_eq!(h.flavor, Flavor::Hopf);
        let rep = hayashi_span_check(&fm, 2, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
