//! FRT bialgebroids and Hopf algebroids as presentations of the tensor
//! `A^e`-ring, with comultiplication, counit and the universal R-form.

pub mod galois;
pub mod rform;
pub mod signature;
pub mod verify;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bimodule::{find_dual_bases, left_dual, pad_dual_triples, DualBases, RigidModule};
use crate::braiding::{BraidedObject, DualizabilityCertificate, HopfCrossings, SingleCrossing};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::multitensor::Crossings;
use crate::scalar::Scalar;
use crate::tensor_ring::{
    add, add2, filtered_quotient, graded_quotient_dims, max_degree, nc_sub, tensor2, GeneratorBundle, GeneratorObject,
    GradedQuotient, IdealSpan, Nc, Nc2, Quotients,
};

pub use rform::RForm;

/// `A`-valued coefficients `x_{ij}^{rs}` for indices below `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    pub n: usize,
    data: Vec<Vec<Scalar>>,
}

impl CoeffTable {
    pub fn zeros(n: usize, dim_a: usize) -> CoeffTable {
        CoeffTable { n, data: vec![vec![Scalar::zero(); dim_a]; n * n * n * n] }
    }

    fn idx(&self, i: usize, j: usize, r: usize, s: usize) -> usize {
        ((i * self.n + j) * self.n + r) * self.n + s
    }

    pub fn get(&self, i: usize, j: usize, r: usize, s: usize) -> &[Scalar] {
        &self.data[self.idx(i, j, r, s)]
    }

    pub fn set(&mut self, i: usize, j: usize, r: usize, s: usize, v: Vec<Scalar>) {
        let k = self.idx(i, j, r, s);
        self.data[k] = v;
    }
}

/// Which structure a presentation carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Flavor {
    Bialgebroid,
    Hopf,
}

/// A named element of degree 1, such as `T_i^j`.
#[derive(Clone, Debug)]
pub struct NamedGenerator {
    pub name: String,
    pub element: Nc,
}

/// Generators, relations and structure maps of an FRT-type algebroid.
#[derive(Clone)]
pub struct Presentation {
    pub bundle: Arc<GeneratorBundle>,
    pub relations: IdealSpan,
    pub homogeneous: bool,
    pub flavor: Flavor,
    pub generators: Vec<NamedGenerator>,
    pub braided: Option<BraidedObject>,
    pub cert: Option<DualizabilityCertificate>,
    /// The chosen expression `c(m_i ⊗ m_j) = Σ w_{ij}^{rs} m_r ⊗ m_s`.
    pub w: Option<CoeffTable>,
    pub wbar: Option<CoeffTable>,
    pub(crate) crossings: Option<Arc<dyn Crossings + Send + Sync>>,
    /// Replacement comultiplication on individual letters (for negative tests).
    pub delta_override: BTreeMap<usize, Nc2>,
    /// Replacement values `r(letter, letter)` (for negative tests).
    pub r_override: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Presentation")
            .field("flavor", &self.flavor)
            .field("letters", &self.bundle.num_letters())
            .field("relations", &self.relations.relations.len())
            .field("homogeneous", &self.homogeneous)
            .finish()
    }
}

/// `w̄_{rs}^{pq} = Σ_{ij} w_{rs}^{ij} ⟨m^p, m_i ⟨m^q, m_j⟩⟩`.
pub fn wbar_coefficients(rigid: &RigidModule, w: &CoeffTable) -> CoeffTable {
    let alg = &rigid.module.algebra;
    let db = &rigid.dual_bases;
    let n = db.len();
    // inner[p][q][i][j] = ⟨m^p, m_i ⟨m^q, m_j⟩⟩
    let pair = |f: &[Scalar], m: &[Scalar]| rigid.dual.pair(f, m);
    let mut inner = vec![vec![Scalar::zero(); alg.dim]; n * n * n * n];
    for p in 0..n {
        for q in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let a = pair(&db.functionals[q], &db.elements[j]);
                    let mi = rigid.module.act_right(&db.elements[i], &a);
                    inner[((p * n + q) * n + i) * n + j] = pair(&db.functionals[p], &mi);
                }
            }
        }
    }
    let mut out = CoeffTable::zeros(n, alg.dim);
    for r in 0..n {
        for s in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let mut acc = vec![Scalar::zero(); alg.dim];
                    for i in 0..n {
                        for j in 0..n {
                            let wv = w.get(r, s, i, j);
                            if wv.iter().all(|x| x.is_zero()) {
                                continue;
                            }
                            let v = alg.mul(wv, &inner[((p * n + q) * n + i) * n + j]);
                            for (o, x) in acc.iter_mut().zip(v) {
                                *o += x;
                            }
                        }
                    }
                    out.set(r, s, p, q, acc);
                }
            }
        }
    }
    out
}

/// The canonical expression of `c` through the dual basis: for each `(i, j)`
/// the solution of `Σ_{rs} w_{ij}^{rs} m_r ⊗ m_s = c(m_i ⊗ m_j)` with free
/// variables set to zero.
pub fn solve_w(b: &BraidedObject, rigid: &RigidModule) -> Result<CoeffTable> {
    let alg = &rigid.module.algebra;
    let db = &rigid.dual_bases;
    let n = db.len();
    let na = alg.dim;
    let mm = &b.mm;
    let mut cols = vec![];
    for r in 0..n {
        for s in 0..n {
            for a in 0..na {
                let x = rigid.module.act_left(&alg.basis(a), &db.elements[r]);
                cols.push(mm.project_pair(&x, &db.elements[s]));
            }
        }
    }
    let sys = Matrix::from_columns(mm.dim(), &cols);
    let mut w = CoeffTable::zeros(n, na);
    for i in 0..n {
        for j in 0..n {
            let rhs = b.c.mul_vec(&mm.project_pair(&db.elements[i], &db.elements[j]));
            let x = solve(&sys, &rhs)
                .ok_or_else(|| Error::InvalidDualBases("c(m_i ⊗ m_j) is not in the span of m_r ⊗ m_s".into()))?;
            for r in 0..n {
                for s in 0..n {
                    let k = (r * n + s) * na;
                    w.set(i, j, r, s, x[k..k + na].to_vec());
                }
            }
        }
    }
    Ok(w)
}

/// Checks that `w` expresses `c` on every `m_i ⊗ m_j`.
pub fn check_w(b: &BraidedObject, rigid: &RigidModule, w: &CoeffTable) -> Result<()> {
    let db = &rigid.dual_bases;
    let n = db.len();
    let mm = &b.mm;
    for i in 0..n {
        for j in 0..n {
            let lhs = b.c.mul_vec(&mm.project_pair(&db.elements[i], &db.elements[j]));
            let mut rhs = vec![Scalar::zero(); mm.dim()];
            for r in 0..n {
                for s in 0..n {
                    let x = rigid.module.act_left(w.get(i, j, r, s), &db.elements[r]);
                    for (o, y) in rhs.iter_mut().zip(mm.project_pair(&x, &db.elements[s])) {
                        *o += y;
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::InvalidDualBases(format!("w does not express c on m_{i} ⊗ m_{j}")));
            }
        }
    }
    Ok(())
}

fn t_gen(bundle: &GeneratorBundle, obj: usize, i: usize, j: usize) -> Nc {
    let x = &bundle.objects[obj].rigid;
    bundle.element(obj, &x.dual_bases.elements[i], &x.dual_bases.functionals[j])
}

/// `Σ_{rs} s(w_{ij}^{rs}) T_r^p T_s^q − Σ_{rs} t(w̄_{rs}^{pq}) T_i^r T_j^s`.
fn frt_relations(bundle: &GeneratorBundle, w: &CoeffTable, wbar: &CoeffTable) -> Vec<Nc> {
    let n = w.n;
    let t: Vec<Vec<Nc>> = (0..n).map(|i| (0..n).map(|j| t_gen(bundle, 0, i, j)).collect()).collect();
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let mut rel = Nc::new();
                    for r in 0..n {
                        for s in 0..n {
                            let wv = w.get(i, j, r, s);
                            if wv.iter().any(|x| !x.is_zero()) {
                                let prod = bundle.mul(&t[r][p], &t[s][q]);
                                for (k, c) in bundle.mul(&bundle.source(wv), &prod) {
                                    add(&mut rel, k, c);
                                }
                            }
                            let wb = wbar.get(r, s, p, q);
                            if wb.iter().any(|x| !x.is_zero()) {
                                let prod = bundle.mul(&t[i][r], &t[j][s]);
                                for (k, c) in bundle.mul(&bundle.target(wb), &prod) {
                                    add(&mut rel, k, -c);
                                }
                            }
                        }
                    }
                    out.push(rel);
                }
            }
        }
    }
    out
}

fn t_generators(bundle: &GeneratorBundle, obj: usize, n: usize, name: &str) -> Vec<NamedGenerator> {
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            let element = if obj == 0 { t_gen(bundle, 0, i, j) } else { tbar_gen(bundle, i, j) };
            out.push(NamedGenerator { name: format!("{name}[{},{}]", i + 1, j + 1), element });
        }
    }
    out
}

/// `T̄_i^j = [m^j | m̂_i]`.
fn tbar_gen(bundle: &GeneratorBundle, i: usize, j: usize) -> Nc {
    let x = &bundle.objects[1].rigid;
    bundle.element(1, &x.dual_bases.elements[j], &x.dual_bases.functionals[i])
}

/// `B(M, c)` with the canonical expression of `c`.
pub fn build_frt(b: &BraidedObject) -> Result<Presentation> {
    let w = solve_w(b, &b.rigid)?;
    build_frt_with_w(b, w)
}

/// `B(M, c)` for a supplied expression `w` of `c`.
pub fn build_frt_with_w(b: &BraidedObject, w: CoeffTable) -> Result<Presentation> {
    check_w(b, &b.rigid, &w)?;
    let wbar = wbar_coefficients(&b.rigid, &w);
    let bundle = Arc::new(GeneratorBundle::new(vec![GeneratorObject { name: "T".into(), rigid: b.rigid.clone() }])?);
    let relations = IdealSpan::new(frt_relations(&bundle, &w, &wbar));
    let n = w.n;
    Ok(Presentation {
        generators: t_generators(&bundle, 0, n, "T"),
        bundle,
        relations,
        homogeneous: true,
        flavor: Flavor::Bialgebroid,
        braided: Some(b.clone()),
        cert: None,
        w: Some(w),
        wbar: Some(wbar),
        crossings: Some(Arc::new(SingleCrossing::new(b))),
        delta_override: BTreeMap::new(),
        r_override: BTreeMap::new(),
    })
}

/// The padded triple `(m_i, m^i, m̂_i)` of `M`.
pub fn padded_triple(rigid: &RigidModule) -> Result<DualBases> {
    let dual = &rigid.dual;
    let ddual = left_dual(&dual.module);
    let db_dual = find_dual_bases(&dual.module, &ddual)?;
    pad_dual_triples(&rigid.dual_bases, &db_dual, &rigid.module, dual, &ddual)
}

/// `H(M, c)`: generators `T_i^j = [m_i | m^j]`, `T̄_i^j = [m^j | m̂_i]`.
pub fn build_frt_hopf(b: &BraidedObject, cert: &DualizabilityCertificate) -> Result<Presentation> {
    let triple = padded_triple(&b.rigid)?;
    let plus = RigidModule::with_dual_bases(
        b.rigid.module.clone(),
        DualBases { elements: triple.elements.clone(), functionals: triple.functionals.clone(), hats: None },
    )?;
    let minus = RigidModule::with_dual_bases(
        b.rigid.dual.module.clone(),
        DualBases { elements: triple.functionals.clone(), functionals: triple.hats.clone().unwrap(), hats: None },
    )?;
    let w = {
        let bb = BraidedObject { rigid: plus.clone(), ..b.clone() };
        solve_w(&bb, &plus)?
    };
    let wbar = wbar_coefficients(&plus, &w);
    let bundle = Arc::new(GeneratorBundle::new(vec![
        GeneratorObject { name: "T".into(), rigid: plus.clone() },
        GeneratorObject { name: "Tbar".into(), rigid: minus },
    ])?);
    let n = triple.len();
    let mut rels = frt_relations(&bundle, &w, &wbar);
    let t: Vec<Vec<Nc>> = (0..n).map(|i| (0..n).map(|j| t_gen(&bundle, 0, i, j)).collect()).collect();
    let tb: Vec<Vec<Nc>> = (0..n).map(|i| (0..n).map(|j| tbar_gen(&bundle, i, j)).collect()).collect();
    let ddual = &bundle.objects[1].rigid.dual;
    for i in 0..n {
        for j in 0..n {
            // β_{ij} = s(⟨m^j, m_i⟩)
            let beta = bundle.source(&plus.dual.pair(&triple.functionals[j], &triple.elements[i]));
            let mut sum = Nc::new();
            for r in 0..n {
                for (k, c) in bundle.mul(&t[i][r], &tb[r][j]) {
                    add(&mut sum, k, c);
                }
            }
            rels.push(nc_sub(&beta, &sum));
        }
    }
    for i in 0..n {
        for j in 0..n {
            // β̄_{ij} = t(⟨m̂_i, m^j⟩)
            let hats = triple.hats.as_ref().unwrap();
            let beta = bundle.target(&ddual.pair(&hats[i], &triple.functionals[j]));
            let mut sum = Nc::new();
            for r in 0..n {
                for (k, c) in bundle.mul(&tb[i][r], &t[r][j]) {
                    add(&mut sum, k, c);
                }
            }
            rels.push(nc_sub(&beta, &sum));
        }
    }
    // Mixed crossings lie in the ideal already; listing them keeps truncations exact at low degree.
    let cr = Arc::new(HopfCrossings::new(b, cert)?);
    let objects: Vec<(String, RigidModule)> =
        bundle.objects.iter().map(|o| (o.name.clone(), o.rigid.clone())).collect();
    let sig = signature::MonoidalSignature {
        morphisms: signature::crossing_morphisms(&objects, cr.as_ref(), &[(0, 1), (1, 0), (1, 1)])?,
        objects,
    };
    rels.extend(signature::signature_relations(&sig, &bundle)?);
    let mut generators = t_generators(&bundle, 0, n, "T");
    generators.extend(t_generators(&bundle, 1, n, "Tbar"));
    Ok(Presentation {
        generators,
        bundle,
        relations: IdealSpan::new(rels),
        homogeneous: false,
        flavor: Flavor::Hopf,
        braided: Some(BraidedObject { rigid: plus, ..b.clone() }),
        cert: Some(cert.clone()),
        w: Some(w),
        wbar: Some(wbar),
        crossings: Some(cr),
        delta_override: BTreeMap::new(),
        r_override: BTreeMap::new(),
    })
}

impl Presentation {
    pub fn algebra(&self) -> &crate::algebra::AlgebraSpec {
        &self.bundle.algebra
    }

    /// Graded quotient for homogeneous presentations, filtered otherwise.
    pub fn quotient(&self, max_d: usize, horizon: usize) -> Result<GradedQuotient> {
        if self.homogeneous {
            graded_quotient_dims(&self.bundle, &self.relations, max_d)
        } else {
            filtered_quotient(&self.bundle, &self.relations, max_d, horizon)
        }
    }

    pub fn generator(&self, name: &str) -> Option<&Nc> {
        self.generators.iter().find(|g| g.name == name).map(|g| &g.element)
    }

    /// `Σ_j [e_a | m^j] ⊗ [m_j | f_b]` for the letter `(o, a, b)`.
    pub fn delta_letter(&self, l: usize) -> Nc2 {
        if let Some(d) = self.delta_override.get(&l) {
            return d.clone();
        }
        let b = &self.bundle;
        let lt = b.letters[l];
        let x = &b.objects[lt.obj].rigid;
        let mut out = Nc2::new();
        let em = x.module.basis(lt.m);
        let ef = x.dual.module.basis(lt.f);
        for (mj, fj) in x.dual_bases.elements.iter().zip(&x.dual_bases.functionals) {
            let left = b.element(lt.obj, &em, fj);
            let right = b.element(lt.obj, mj, &ef);
            for (k, c) in tensor2(&left, &right) {
                add2(&mut out, k, c);
            }
        }
        out
    }

    /// A representative of `Δ(x)` in `B ⊗_k B`, multiplicative over letters.
    pub fn delta_raw(&self, x: &Nc) -> Nc2 {
        let b = &self.bundle;
        let n = b.algebra.dim;
        let mut out = Nc2::new();
        for (key, c) in x {
            let d = GeneratorBundle::degree(*key);
            if d == 0 {
                let e = *key as usize;
                let (i, j) = (e / n, e % n);
                let l = b.source(&b.algebra.basis(i));
                let r = b.target(&b.algebra.basis(j));
                for (k, v) in tensor2(&l, &r) {
                    add2(&mut out, k, c * &v);
                }
                continue;
            }
            let word = b.word(*key);
            let mut acc: Nc2 = tensor2(&b.one(), &b.one());
            for l in word {
                let dl = self.delta_letter(l);
                let mut next = Nc2::new();
                for ((a1, a2), p) in &acc {
                    for ((b1, b2), q) in &dl {
                        let x1 = b.mul(&single(*a1), &single(*b1));
                        let x2 = b.mul(&single(*a2), &single(*b2));
                        let pq = p * q;
                        for ((k1, k2), v) in tensor2(&x1, &x2) {
                            add2(&mut next, (k1, k2), &pq * &v);
                        }
                    }
                }
                acc = next;
            }
            for (k, v) in acc {
                add2(&mut out, k, c * &v);
            }
        }
        out
    }

    /// `Δ(x)` in normal form in `B ⊗_A B` truncated at the quotient's degree.
    pub fn comultiply(&self, q: &GradedQuotient, x: &Nc) -> Result<Nc2> {
        if max_degree(x) > q.max_d {
            return Err(Error::TruncationExceeded { degree: max_degree(x), limit: q.max_d });
        }
        Ok(Quotients { bundle: &self.bundle, quotient: q }.nf2(&self.delta_raw(x)))
    }

    /// `π` by nested evaluation `⟨ξ_1, m_1 ⟨ξ_2, … ⟨ξ_d, m_d⟩⟩⟩`.
    pub fn counit(&self, x: &Nc) -> Vec<Scalar> {
        let alg = &self.bundle.algebra;
        let mut out = vec![Scalar::zero(); alg.dim];
        for (k, c) in x {
            for (o, v) in out.iter_mut().zip(self.counit_key(*k)) {
                *o += c * &v;
            }
        }
        out
    }

    pub fn counit_key(&self, key: u64) -> Vec<Scalar> {
        let b = &self.bundle;
        let alg = &b.algebra;
        let n = alg.dim;
        if GeneratorBundle::degree(key) == 0 {
            let e = key as usize;
            return alg.mul(&alg.basis(e / n), &alg.basis(e % n));
        }
        let word = b.word(key);
        let last = b.letters[*word.last().unwrap()];
        let mut val = b.objects[last.obj].rigid.dual.pair_basis(last.f, last.m);
        for &l in word.iter().rev().skip(1) {
            let lt = b.letters[l];
            let x = &b.objects[lt.obj].rigid;
            let mv = x.module.act_right(&x.module.basis(lt.m), &val);
            val = x.dual.pair(&x.dual.module.basis(lt.f), &mv);
        }
        val
    }

    /// The R-form evaluator (`None` for presentations without a braiding).
    pub fn rform(&self) -> Option<RForm<'_>> {
        self.crossings.as_ref().map(|c| RForm::new(self, c.clone()))
    }
}

pub(crate) fn single(k: u64) -> Nc {
    let mut x = Nc::new();
    x.insert(k, Scalar::one());
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::check_dualizable;
    use crate::fixtures;

    fn dims(p: &Presentation, d: usize) -> Vec<usize> {
        p.quotient(d, 0).unwrap().dims
    }

    #[test]
    fn flip_wbar_is_delta() {
        let b = fixtures::flip().unwrap();
        let p = build_frt(&b).unwrap();
        let wb = p.wbar.as_ref().unwrap();
        for r in 0..2 {
            for s in 0..2 {
                for pp in 0..2 {
                    for q in 0..2 {
                        let e = if s == pp && r == q { Scalar::one() } else { Scalar::zero() };
                        assert_eq!(wb.get(r, s, pp, q), &[e][..]);
                    }
                }
            }
        }
    }

    #[test]
    fn q2_wbar_entry() {
        let b = fixtures::q_braiding(Scalar::from_i64(2)).unwrap();
        let p = build_frt(&b).unwrap();
        assert_eq!(p.wbar.as_ref().unwrap().get(1, 0, 1, 0), &[Scalar::ratio(3, 2)][..]);
    }

    #[test]
    fn flip_hilbert() {
        let p = build_frt(&fixtures::flip().unwrap()).unwrap();
        assert_eq!(dims(&p, 3), vec![1, 4, 10, 20]);
        assert_eq!(p.relations.relations.len(), 12);
    }

    #[test]
    fn identity_tower() {
        let p = build_frt(&fixtures::identity(1).unwrap()).unwrap();
        assert!(p.relations.relations.is_empty());
        assert_eq!(dims(&p, 3), vec![1, 1, 1, 1]);
    }

    #[test]
    fn counit_examples() {
        let p = build_frt(&fixtures::flip().unwrap()).unwrap();
        let t = |i: usize, j: usize| p.generator(&format!("T[{i},{j}]")).unwrap().clone();
        assert_eq!(p.counit(&t(1, 1)), vec![Scalar::one()]);
        assert_eq!(p.counit(&t(1, 2)), vec![Scalar::zero()]);
        let x = p.bundle.mul(&t(2, 1), &t(1, 2));
        assert_eq!(p.counit(&x), vec![Scalar::zero()]);
        assert_eq!(p.counit(&p.bundle.one()), vec![Scalar::one()]);
    }

    #[test]
    fn hopf_flip_filtration_one() {
        let b = fixtures::flip().unwrap();
        let cert = check_dualizable(&b).unwrap();
        let p = build_frt_hopf(&b, &cert).unwrap();
        assert_eq!(p.bundle.num_letters(), 8);
        let q = p.quotient(1, 2).unwrap();
        assert_eq!(q.dims[1], 9);
        assert!(q.stable());
    }
}
