//! The Galois map `β(x ⊗ y) = x_{(1)} ⊗ x_{(2)} y` of a Hopf presentation and
//! its inverse `β^{-1}(x ⊗ y) = x_+ ⊗ x_- y`.

use rayon::prelude::*;

use super::{Flavor, Presentation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Tally, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor_ring::{add2, tensor2, GeneratorBundle, GradedQuotient, Nc, Nc2, Quotients};

/// `ζ: M^∨∨ → M`, `ζ(θ) = Σ W_1 ⟨θ, W_2⟩` with `W = ((c^{-1})^♭)^{-1}(coev(1))`.
pub fn zeta_matrix(p: &Presentation) -> Result<Matrix> {
    let cert = p.cert.as_ref().ok_or_else(|| Error::NotDualizable("presentation has no certificate".into()))?;
    let b = &p.bundle;
    let plus = &b.objects[0].rigid;
    let ddual = &b.objects[1].rigid.dual;
    let alg = &b.algebra;
    let coev = plus.coev_matrix(&cert.md_m).mul_vec(&alg.unit);
    let w = cert.cinv_flat_inv.mul_vec(&coev);
    let terms = cert.m_md.section_terms(&w);
    let cols: Vec<Vec<Scalar>> = (0..ddual.dim())
        .map(|h| {
            let mut acc = vec![Scalar::zero(); plus.module.dim];
            for ((a, c), s) in &terms {
                let v = ddual.pair_basis(h, *c);
                for (o, y) in acc.iter_mut().zip(plus.module.act_right(&plus.module.basis(*a), &v)) {
                    *o += s * &y;
                }
            }
            acc
        })
        .collect();
    Ok(Matrix::from_columns(plus.module.dim, &cols))
}

/// Tables of `x_+ ⊗ x_-` on letters.
pub struct GaloisData<'a> {
    p: &'a Presentation,
    pm: Vec<Nc2>,
}

impl<'a> GaloisData<'a> {
    pub fn new(p: &'a Presentation) -> Result<GaloisData<'a>> {
        if p.flavor != Flavor::Hopf {
            return Err(Error::NotDualizable("Galois inverse needs a Hopf presentation".into()));
        }
        let zeta = zeta_matrix(p)?;
        let zeta_inv = zeta.inverse().ok_or_else(|| Error::NotInvertible("ζ: M^∨∨ → M".into()))?;
        let b = &p.bundle;
        let plus = &b.objects[0].rigid;
        let minus = &b.objects[1].rigid;
        let n = plus.dual_bases.len();
        let pm = b
            .letters
            .iter()
            .map(|lt| {
                let mut out = Nc2::new();
                for k in 0..n {
                    let (x, y) = if lt.obj == 0 {
                        // [m|ξ] ↦ Σ_k [m|m^k] ⊗ [ξ|m̂_k]
                        (
                            b.element(0, &plus.module.basis(lt.m), &plus.dual_bases.functionals[k]),
                            b.element(1, &minus.module.basis(lt.f), &minus.dual_bases.functionals[k]),
                        )
                    } else {
                        // [μ|θ] ↦ Σ_k [μ|ζ^{-1}(m_k)] ⊗ [ζ(θ)|m^k]
                        let zi = zeta_inv.mul_vec(&plus.dual_bases.elements[k]);
                        let z = zeta.column(lt.f);
                        (
                            b.element(1, &minus.module.basis(lt.m), &zi),
                            b.element(0, &z, &plus.dual_bases.functionals[k]),
                        )
                    };
                    for (key, c) in tensor2(&x, &y) {
                        add2(&mut out, key, c);
                    }
                }
                out
            })
            .collect();
        Ok(GaloisData { p, pm })
    }

    /// `x_+ ⊗ x_-`, with `(xy)_+ ⊗ (xy)_- = x_+ y_+ ⊗ y_- x_-`.
    pub fn plus_minus(&self, x: &Nc) -> Nc2 {
        let b = &self.p.bundle;
        let n = b.algebra.dim;
        let mut out = Nc2::new();
        for (key, c) in x {
            if GeneratorBundle::degree(*key) == 0 {
                let e = *key as usize;
                let l = b.source(&b.algebra.basis(e / n));
                let r = b.source(&b.algebra.basis(e % n));
                for (k, v) in tensor2(&l, &r) {
                    add2(&mut out, k, c * &v);
                }
                continue;
            }
            let mut acc = tensor2(&b.one(), &b.one());
            for l in b.word(*key) {
                let mut next = Nc2::new();
                for ((a1, a2), p) in &acc {
                    for ((b1, b2), q) in &self.pm[l] {
                        let x1 = b.mul(&super::single(*a1), &super::single(*b1));
                        let x2 = b.mul(&super::single(*b2), &super::single(*a2));
                        let pq = p * q;
                        for (k, v) in tensor2(&x1, &x2) {
                            add2(&mut next, k, &pq * &v);
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

    /// `β(Σ x ⊗ y) = Σ x_{(1)} ⊗ x_{(2)} y`.
    pub fn beta(&self, t: &Nc2) -> Nc2 {
        let b = &self.p.bundle;
        let mut out = Nc2::new();
        for ((kx, ky), c) in t {
            let mut x = Nc::new();
            x.insert(*kx, c.clone());
            for ((d1, d2), v) in self.p.delta_raw(&x) {
                for (k, w) in b.mul(&super::single(d2), &super::single(*ky)) {
                    add2(&mut out, (d1, k), &v * &w);
                }
            }
        }
        out
    }

    /// `β^{-1}(Σ x ⊗ y) = Σ x_+ ⊗ x_- y`.
    pub fn beta_inv(&self, t: &Nc2) -> Nc2 {
        let b = &self.p.bundle;
        let mut out = Nc2::new();
        for ((kx, ky), c) in t {
            let mut x = Nc::new();
            x.insert(*kx, c.clone());
            for ((p1, p2), v) in self.plus_minus(&x) {
                for (k, w) in b.mul(&super::single(p2), &super::single(*ky)) {
                    add2(&mut out, (p1, k), &v * &w);
                }
            }
        }
        out
    }
}

/// `β ∘ β^{-1} = id` on `x ⊗ 1` for letters and degree 0, and
/// `β^{-1} ∘ β = id` on `b ⊗ b'` with `2 deg b + deg b' ≤ max_d`.
pub fn galois_roundtrip(p: &Presentation, q: &GradedQuotient, max_d: usize) -> Result<VerificationReport> {
    let gd = GaloisData::new(p)?;
    let b = &p.bundle;
    let qs = Quotients { bundle: b, quotient: q };
    let max_d = max_d.min(q.max_d);
    let mut rep = VerificationReport::default();
    let one = b.one();

    let mut slice: Vec<Nc> = (0..b.env_dim()).map(|e| b.deg0(&b.env.basis(e))).collect();
    slice.extend((0..b.num_letters()).map(|l| b.letter(l)));
    let res: Vec<bool> = slice
        .par_iter()
        .map(|x| {
            let t = tensor2(x, &one);
            qs.nf2(&gd.beta(&gd.beta_inv(&t))) == qs.nf2(&t)
        })
        .collect();
    let mut t = Tally::new("galois-beta-beta-inv", 1);
    for (x, ok) in slice.iter().zip(res) {
        t.record(ok, || format!("β(β^-1(x ⊗ 1)) ≠ x ⊗ 1 for x = {}", super::verify::fmt_nc(b, x)));
    }
    rep.push(t.finish());

    let span = super::verify::spanning_set(q, max_d);
    let pairs: Vec<(Nc, Nc)> = span
        .iter()
        .flat_map(|(dx, x)| {
            span.iter().filter(move |(dy, _)| 2 * dx + dy <= max_d).map(move |(_, y)| (x.clone(), y.clone()))
        })
        .collect();
    let res: Vec<bool> = pairs
        .par_iter()
        .map(|(x, y)| {
            let t = tensor2(x, y);
            qs.nf_galois(&gd.beta_inv(&gd.beta(&t))) == qs.nf_galois(&t)
        })
        .collect();
    let mut t = Tally::new("galois-beta-inv-beta", max_d);
    for ((x, y), ok) in pairs.iter().zip(res) {
        t.record(ok, || {
            format!(
                "β^-1(β(x ⊗ y)) ≠ x ⊗ y for x = {}, y = {}",
                super::verify::fmt_nc(b, x),
                super::verify::fmt_nc(b, y)
            )
        });
    }
    rep.push(t.finish());
    Ok(rep)
}

/// The Hopf relations vanish in the quotient.
pub fn hopf_relations_hold(p: &Presentation, q: &GradedQuotient) -> VerificationReport {
    let mut t = Tally::new("hopf-relations", q.max_d);
    for r in p.relations.relations.iter().filter(|r| crate::tensor_ring::max_degree(r) <= q.max_d) {
        t.record(q.is_zero(&p.bundle.normalize(r)), || {
            format!("relation {} is nonzero in the quotient", super::verify::fmt_nc(&p.bundle, r))
        });
    }
    let mut rep = VerificationReport::default();
    rep.push(t.finish());
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::check_dualizable;
    use crate::fixtures;
    use crate::frt::build_frt_hopf;

    #[test]
    fn flip_roundtrip() {
        let b = fixtures::flip().unwrap();
        let cert = check_dualizable(&b).unwrap();
        let p = build_frt_hopf(&b, &cert).unwrap();
        let q = p.quotient(2, 2).unwrap();
        let rep = galois_roundtrip(&p, &q, 2).unwrap();
        for e in &rep.entries {
            assert!(e.passed, "{e:?}");
        }
    }
}
