//! Braided objects in `A`-bimodules: the braid equation, invertibility,
//! dualizability, the double `M ⊕ M^∨` and braidings of tensor powers.

use std::sync::Arc;

use crate::bimodule::{
    check_bimodule_map, flat_transform, tensor_over_a, Bimodule, FlatTransform, RigidModule, TensorSpace,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::multitensor::{block_cross, Crossings, IteratedTensor, MultiTensor, PairMap};
use crate::scalar::Scalar;

/// Coordinates in which a braiding matrix is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinates {
    /// On the canonical basis of `M ⊗_A M`.
    TensorOverA,
    /// On `M ⊗_k M` (index `a * dim M + b`); must descend to `M ⊗_A M`.
    TensorOverK,
}

/// `(M, c, c^{-1})` with a certified braid equation.
#[derive(Clone, Debug)]
pub struct BraidedObject {
    pub rigid: RigidModule,
    pub mm: TensorSpace,
    pub c: Matrix,
    pub c_inv: Matrix,
}

impl BraidedObject {
    pub fn module(&self) -> &Arc<Bimodule> {
        &self.rigid.module
    }
}

/// Converts a matrix on `M ⊗_k M` to one on `M ⊗_A M`, checking that it
/// preserves the balancing relations.
pub fn descend(mm: &TensorSpace, ck: &Matrix) -> Result<Matrix> {
    let n = mm.ambient_dim();
    if ck.rows != n || ck.cols != n {
        return Err(Error::DimensionMismatch(format!("braiding on M⊗_kM must be {n}x{n}")));
    }
    for (i, r) in mm.relations().basis().iter().enumerate() {
        let img = ck.mul_vec(r);
        if mm.project(&img).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotBimoduleMap(format!(
                "map does not preserve balancing relation #{i}; it does not descend to M⊗_AM"
            )));
        }
    }
    let cols: Vec<Vec<Scalar>> = (0..mm.dim())
        .map(|k| {
            let mut e = vec![Scalar::zero(); mm.dim()];
            e[k] = Scalar::one();
            mm.project(&ck.mul_vec(&mm.section(&e)))
        })
        .collect();
    Ok(Matrix::from_columns(mm.dim(), &cols))
}

/// The spaces and maps needed to compare both sides of the braid equation.
struct TripleSpaces {
    t3: TensorSpace,
    alpha: Matrix,
    alpha_inv: Matrix,
    t3r: TensorSpace,
}

fn triple_spaces(mm: &TensorSpace) -> Result<TripleSpaces> {
    let m = mm.left.clone();
    let t3 = tensor_over_a(&mm.module, &m)?;
    let t3r = tensor_over_a(&m, &mm.module)?;
    let cols: Vec<Vec<Scalar>> = (0..t3.dim())
        .map(|k| {
            let (p, b) = t3.basis_pair(k);
            let mut acc = vec![Scalar::zero(); t3r.dim()];
            let mut e = vec![Scalar::zero(); mm.dim()];
            e[p] = Scalar::one();
            for ((a1, a2), s) in mm.section_terms(&e) {
                let inner = mm.project_pair(&m.basis(a2), &m.basis(b));
                for (o, y) in acc.iter_mut().zip(t3r.project_pair(&m.basis(a1), &inner)) {
                    *o += &s * &y;
                }
            }
            acc
        })
        .collect();
    let alpha = Matrix::from_columns(t3r.dim(), &cols);
    let alpha_inv = alpha.inverse().ok_or_else(|| Error::NotInvertible("reassociation (M⊗M)⊗M → M⊗(M⊗M)".into()))?;
    Ok(TripleSpaces { t3, alpha, alpha_inv, t3r })
}

/// `(c⊗id)(id⊗c)(c⊗id) − (id⊗c)(c⊗id)(id⊗c)` on `(M ⊗_A M) ⊗_A M`.
pub fn ybe_residual(mm: &TensorSpace, c: &Matrix) -> Result<Matrix> {
    let ts = triple_spaces(mm)?;
    let m = &mm.left;
    let id = Matrix::identity(m.dim);
    let c1 = ts.t3.map_tensor(c, &id, &ts.t3);
    let c2r = ts.t3r.map_tensor(&id, c, &ts.t3r);
    let c2 = ts.alpha_inv.mul(&c2r).mul(&ts.alpha);
    let lhs = c1.mul(&c2).mul(&c1);
    let rhs = c2.mul(&c1).mul(&c2);
    Ok(lhs.sub(&rhs))
}

fn describe_residual(r: &Matrix) -> String {
    let e = r.entries();
    let shown: Vec<String> = e.iter().take(4).map(|(i, j, x)| format!("[{i},{j}]={x}")).collect();
    format!("{} nonzero residual entries, e.g. {}", e.len(), shown.join(", "))
}

/// Certifies `c` as a braiding on `M`; computes `c^{-1}`.
pub fn check_yang_baxter(rigid: RigidModule, c: &Matrix, coords: Coordinates) -> Result<BraidedObject> {
    let m = rigid.module.clone();
    let mm = tensor_over_a(&m, &m)?;
    let c = match coords {
        Coordinates::TensorOverA => {
            if c.rows != mm.dim() || c.cols != mm.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "braiding is {}x{}, M⊗_AM has dimension {}",
                    c.rows,
                    c.cols,
                    mm.dim()
                )));
            }
            c.clone()
        }
        Coordinates::TensorOverK => descend(&mm, c)?,
    };
    let rep = check_bimodule_map(&c, &mm.module, &mm.module)?;
    if !rep.passed() {
        return Err(Error::NotBimoduleMap(rep.failures.join("; ")));
    }
    let res = ybe_residual(&mm, &c)?;
    if !res.is_zero() {
        return Err(Error::NotYangBaxter(describe_residual(&res)));
    }
    let c_inv = c.inverse().ok_or_else(|| Error::NotInvertible("c has a nontrivial kernel".into()))?;
    Ok(BraidedObject { rigid, mm, c, c_inv })
}

/// `c^♭`, `(c^{-1})^♭`, their inverses, and `c^♭♭`.
#[derive(Clone, Debug)]
pub struct DualizabilityCertificate {
    /// `M ⊗_A M^∨`.
    pub m_md: TensorSpace,
    /// `M^∨ ⊗_A M`.
    pub md_m: TensorSpace,
    /// `M^∨ ⊗_A M^∨`.
    pub md_md: TensorSpace,
    /// `c^♭: M⊗M^∨ → M^∨⊗M`.
    pub c_flat: Matrix,
    pub c_flat_inv: Matrix,
    /// `(c^{-1})^♭: M⊗M^∨ → M^∨⊗M`.
    pub cinv_flat: Matrix,
    pub cinv_flat_inv: Matrix,
    /// `c^♭♭` on `M^∨ ⊗ M^∨`.
    pub c_flatflat: Matrix,
}

pub fn check_dualizable(b: &BraidedObject) -> Result<DualizabilityCertificate> {
    let FlatTransform { source: m_md, target: md_m, matrix: c_flat } = flat_transform(&b.c, &b.mm, &b.mm, &b.rigid)?;
    let cinv_flat = flat_transform(&b.c_inv, &b.mm, &b.mm, &b.rigid)?.matrix;
    let c_flat_inv = c_flat.inverse().ok_or_else(|| {
        Error::NotDualizable(format!("c^♭ is not invertible (rank {} of {})", c_flat.rank(), c_flat.rows))
    })?;
    let cinv_flat_inv = cinv_flat.inverse().ok_or_else(|| {
        Error::NotDualizable(format!("(c^-1)^♭ is not invertible (rank {} of {})", cinv_flat.rank(), cinv_flat.rows))
    })?;
    let ff = flat_transform(&c_flat, &m_md, &md_m, &b.rigid)?;
    Ok(DualizabilityCertificate {
        m_md,
        md_m,
        md_md: ff.source,
        c_flat,
        c_flat_inv,
        cinv_flat,
        cinv_flat_inv,
        c_flatflat: ff.matrix,
    })
}

/// Crossings between the object types `0 = M` and `1 = M^∨` of a dualizable
/// braided object: `c`, `(c^♭)^{-1}`, `(c^{-1})^♭` and `c^♭♭`.
#[derive(Clone, Debug)]
pub struct HopfCrossings {
    fwd: [[PairMap; 2]; 2],
    inv: [[PairMap; 2]; 2],
}

impl HopfCrossings {
    pub fn new(b: &BraidedObject, cert: &DualizabilityCertificate) -> Result<HopfCrossings> {
        let cff_inv = cert.c_flatflat.inverse().ok_or_else(|| Error::NotDualizable("c^♭♭ is not invertible".into()))?;
        let (mm, m_md, md_m, md_md) = (&b.mm, &cert.m_md, &cert.md_m, &cert.md_md);
        let pm = PairMap::from_matrix;
        let fwd = [
            [pm(mm, mm, &b.c), pm(m_md, md_m, &cert.cinv_flat)],
            [pm(md_m, m_md, &cert.c_flat_inv), pm(md_md, md_md, &cert.c_flatflat)],
        ];
        let inv = [
            [pm(mm, mm, &b.c_inv), pm(md_m, m_md, &cert.cinv_flat_inv)],
            [pm(m_md, md_m, &cert.c_flat), pm(md_md, md_md, &cff_inv)],
        ];
        Ok(HopfCrossings { fwd, inv })
    }
}

impl Crossings for HopfCrossings {
    fn forward(&self, s: usize, t: usize) -> &PairMap {
        &self.fwd[s][t]
    }
    fn inverse(&self, s: usize, t: usize) -> &PairMap {
        &self.inv[s][t]
    }
}

/// The single crossing `c` of a braided object.
#[derive(Clone, Debug)]
pub struct SingleCrossing {
    fwd: PairMap,
    inv: PairMap,
}

impl SingleCrossing {
    pub fn new(b: &BraidedObject) -> SingleCrossing {
        SingleCrossing {
            fwd: PairMap::from_matrix(&b.mm, &b.mm, &b.c),
            inv: PairMap::from_matrix(&b.mm, &b.mm, &b.c_inv),
        }
    }
}

impl Crossings for SingleCrossing {
    fn forward(&self, _: usize, _: usize) -> &PairMap {
        &self.fwd
    }
    fn inverse(&self, _: usize, _: usize) -> &PairMap {
        &self.inv
    }
}

/// The braiding `w̃` on `M ⊕ M^∨` assembled from the four crossings, re-certified.
pub fn double_extension(b: &BraidedObject, cert: &DualizabilityCertificate) -> Result<BraidedObject> {
    let m = b.module().clone();
    let md = b.rigid.dual.module.clone();
    let n = m.dim;
    let d = Arc::new(m.direct_sum(&md)?);
    let dd = tensor_over_a(&d, &d)?;
    let cr = HopfCrossings::new(b, cert)?;
    let local = |x: usize| if x < n { (0, x) } else { (1, x - n) };
    let global = |t: usize, x: usize| if t == 0 { x } else { x + n };
    let cols: Vec<Vec<Scalar>> = (0..dd.dim())
        .map(|k| {
            let (a, bb) = dd.basis_pair(k);
            let (ta, la) = local(a);
            let (tb, lb) = local(bb);
            let mut acc = vec![Scalar::zero(); dd.dim()];
            for ((x, y), s) in cr.forward(ta, tb).image(la, lb) {
                let gx = global(tb, *x);
                let gy = global(ta, *y);
                for (o, v) in acc.iter_mut().zip(dd.project_pair(&d.basis(gx), &d.basis(gy))) {
                    *o += s * &v;
                }
            }
            acc
        })
        .collect();
    let w = Matrix::from_columns(dd.dim(), &cols);
    let rigid = RigidModule::new(d)?;
    check_yang_baxter(rigid, &w, Coordinates::TensorOverA).map_err(|e| match e {
        Error::NotYangBaxter(s) => Error::NotYangBaxter(format!("double extension (internal inconsistency): {s}")),
        e => e,
    })
}

/// `Σ_{x^m, x^n}`: the braiding of `M^{⊗m}` past `M^{⊗n}` on `M^{⊗(m+n)}`.
pub fn braid_power_braiding(b: &BraidedObject, m: usize, n: usize) -> Result<Matrix> {
    let k = m + n;
    if k == 0 {
        return Ok(Matrix::identity(b.module().algebra.dim));
    }
    let it = IteratedTensor::new(vec![b.module().clone(); k])?;
    if m == 0 || n == 0 {
        return Ok(Matrix::identity(it.dim()));
    }
    let cr = SingleCrossing::new(b);
    Ok(it.matrix_of(|t: &MultiTensor| {
        let mut types = vec![0; k];
        block_cross(t, &mut types, 0, m, n, &cr)
    }))
}

/// Sparse list of nonzero entries in a matrix column (used in reports).
pub fn column_sparse(m: &Matrix, j: usize) -> SparseVec {
    crate::linalg::dense_to_sparse(&m.column(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn flip_and_q2_pass() {
        assert!(fixtures::flip().is_ok());
        assert!(fixtures::q_braiding(Scalar::from_i64(2)).is_ok());
    }

    #[test]
    fn perturbed_flip_fails() {
        match fixtures::flip_broken() {
            Err(Error::NotYangBaxter(msg)) => assert!(msg.contains("nonzero")),
            other => panic!("expected NotYangBaxter, got {other:?}"),
        }
    }

    #[test]
    fn braid_power_one_one_is_c() {
        let b = fixtures::q_braiding(Scalar::from_i64(2)).unwrap();
        assert_eq!(braid_power_braiding(&b, 1, 1).unwrap(), b.c);
    }

    #[test]
    fn double_of_flip_is_braided() {
        let b = fixtures::flip().unwrap();
        let cert = check_dualizable(&b).unwrap();
        let d = double_extension(&b, &cert).unwrap();
        assert_eq!(d.mm.dim(), 16);
    }
}
