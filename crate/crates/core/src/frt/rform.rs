//! Evaluation of the universal R-form `r` and its inverse `r̄` on words.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{single, Presentation};
use crate::multitensor::{block_cross, block_cross_inverse, nested_eval_key, Crossings, MultiTensor};
use crate::scalar::Scalar;
use crate::tensor_ring::{GeneratorBundle, Nc};

/// Memoizing evaluator of `r(u, v) = eval(Σ_{y,x}(n ⊗ m) ⊗ ζ ⊗ ξ)` and of
/// `r̄(u, v) = eval(Σ_{x,y}^{-1}(n ⊗ m) ⊗ ζ ⊗ ξ)`.
pub struct RForm<'a> {
    p: &'a Presentation,
    cr: Arc<dyn Crossings + Send + Sync>,
    cache: Mutex<HashMap<(u64, u64, bool), Vec<Scalar>>>,
}

impl<'a> RForm<'a> {
    pub(crate) fn new(p: &'a Presentation, cr: Arc<dyn Crossings + Send + Sync>) -> RForm<'a> {
        RForm { p, cr, cache: Mutex::new(HashMap::new()) }
    }

    pub fn r(&self, x: &Nc, y: &Nc) -> Vec<Scalar> {
        self.bilinear(x, y, false)
    }

    pub fn rbar(&self, x: &Nc, y: &Nc) -> Vec<Scalar> {
        self.bilinear(x, y, true)
    }

    fn bilinear(&self, x: &Nc, y: &Nc, bar: bool) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.p.bundle.algebra.dim];
        for (ku, a) in x {
            for (kv, b) in y {
                let c = a * b;
                for (o, v) in out.iter_mut().zip(self.keys(*ku, *kv, bar)) {
                    *o += &c * &v;
                }
            }
        }
        out
    }

    /// Value on two normalized monomials.
    pub fn keys(&self, u: u64, v: u64, bar: bool) -> Vec<Scalar> {
        if let Some(x) = self.cache.lock().unwrap().get(&(u, v, bar)) {
            return x.clone();
        }
        let val = self.compute(u, v, bar);
        self.cache.lock().unwrap().insert((u, v, bar), val.clone());
        val
    }

    fn compute(&self, u: u64, v: u64, bar: bool) -> Vec<Scalar> {
        let p = self.p;
        let b = &p.bundle;
        let alg = &b.algebra;
        let n = alg.dim;
        let (du, dv) = (GeneratorBundle::degree(u), GeneratorBundle::degree(v));
        let pair = |e: u64| (alg.basis(e as usize / n), alg.basis(e as usize % n));
        match (du, dv) {
            (0, 0) => {
                let ((a, a2), (bb, b2)) = (pair(u), pair(v));
                alg.mul(&alg.mul(&alg.mul(&bb, &a), &b2), &a2)
            }
            (0, _) => {
                // r(s(a) t(a'), y) = π(y s(a)) a'
                let (a, a2) = pair(u);
                let ys = b.mul(&single(v), &b.source(&a));
                alg.mul(&p.counit(&ys), &a2)
            }
            (_, 0) => {
                // r(x, s(b) t(b')) = b π(x t(b'))
                let (bb, b2) = pair(v);
                let xt = b.mul(&single(u), &b.target(&b2));
                alg.mul(&bb, &p.counit(&xt))
            }
            _ => {
                let wu = b.word(u);
                let wv = b.word(v);
                if !bar && du == 1 && dv == 1 {
                    if let Some(x) = p.r_override.get(&(wu[0], wv[0])) {
                        return x.clone();
                    }
                }
                self.eval_words(&wu, &wv, bar)
            }
        }
    }

    fn eval_words(&self, wu: &[usize], wv: &[usize], bar: bool) -> Vec<Scalar> {
        let b = &self.p.bundle;
        let (a, bdeg) = (wu.len(), wv.len());
        let letters = |w: &[usize]| w.iter().map(|&l| b.letters[l]).collect::<Vec<_>>();
        let (lu, lv) = (letters(wu), letters(wv));
        let key: Vec<usize> = lv.iter().chain(&lu).map(|l| l.m).collect();
        let mut types: Vec<usize> = lv.iter().chain(&lu).map(|l| l.obj).collect();
        let t = MultiTensor::simple(key);
        let t = if bar {
            block_cross_inverse(&t, &mut types, 0, a, bdeg, self.cr.as_ref())
        } else {
            block_cross(&t, &mut types, 0, bdeg, a, self.cr.as_ref())
        };
        let tail: Vec<usize> = lv.iter().rev().chain(lu.iter().rev()).map(|l| l.f).collect();
        let duals: Vec<_> = types.iter().map(|&o| &b.objects[o].rigid.dual).collect();
        let mut out = vec![Scalar::zero(); b.algebra.dim];
        for (k, c) in &t.terms {
            let mut full = k.clone();
            full.extend_from_slice(&tail);
            for (o, v) in out.iter_mut().zip(nested_eval_key(&full, &duals)) {
                *o += c * &v;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;
    use crate::frt::build_frt;
    use crate::scalar::Scalar;

    #[test]
    fn generator_values() {
        let p = build_frt(&fixtures::flip().unwrap()).unwrap();
        let r = p.rform().unwrap();
        let t = |i: usize, j: usize| p.generator(&format!("T[{i},{j}]")).unwrap().clone();
        assert_eq!(r.r(&t(1, 1), &t(2, 2)), vec![Scalar::one()]);
        assert_eq!(r.r(&t(1, 2), &t(2, 1)), vec![Scalar::zero()]);
        let q = build_frt(&fixtures::q_braiding(Scalar::from_i64(2)).unwrap()).unwrap();
        let rq = q.rform().unwrap();
        let tq = |i: usize, j: usize| q.generator(&format!("T[{i},{j}]")).unwrap().clone();
        assert_eq!(rq.r(&tq(1, 1), &tq(1, 1)), vec![Scalar::from_i64(2)]);
    }

    #[test]
    fn generator_formula_matches_wbar() {
        // r(T_i^r, T_j^s) = w̄_{ji}^{rs}
        for b in [fixtures::flip().unwrap(), fixtures::q_braiding(Scalar::ratio(-3, 5)).unwrap()] {
            let p = build_frt(&b).unwrap();
            let r = p.rform().unwrap();
            let wb = p.wbar.as_ref().unwrap();
            let t = |i: usize, j: usize| p.generator(&format!("T[{},{}]", i + 1, j + 1)).unwrap().clone();
            for i in 0..2 {
                for rr in 0..2 {
                    for j in 0..2 {
                        for s in 0..2 {
                            assert_eq!(r.r(&t(i, rr), &t(j, s)), wb.get(j, i, rr, s).to_vec(), "{i}{rr}{j}{s}");
                        }
                    }
                }
            }
        }
    }
}
