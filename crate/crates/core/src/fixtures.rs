//! Built-in braided objects used by the examples, the tests and the CLI.

use std::sync::Arc;

use crate::algebra::AlgebraSpec;
use crate::bimodule::{Bimodule, RigidModule};
use crate::braiding::{check_yang_baxter, BraidedObject, Coordinates};
use crate::error::Result;
use crate::face::{face_braiding, FaceModel, Quiver};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `ℚ²` over `A = k`, with `M ⊗ M` indexed by `a * 2 + b`.
pub fn plane() -> RigidModule {
    RigidModule::new(Arc::new(Bimodule::over_ground(2))).expect("free module is rigid")
}

/// `m_a ⊗ m_b ↦ m_b ⊗ m_a` on `ℚ²`.
pub fn flip_matrix() -> Matrix {
    Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
}

pub fn flip() -> Result<BraidedObject> {
    check_yang_baxter(plane(), &flip_matrix(), Coordinates::TensorOverA)
}

/// The standard Hecke-type braiding: `c(m_i ⊗ m_i) = q m_i ⊗ m_i`,
/// `c(m_1 ⊗ m_2) = m_2 ⊗ m_1`, `c(m_2 ⊗ m_1) = m_1 ⊗ m_2 + (q − q⁻¹) m_2 ⊗ m_1`.
pub fn q_matrix(q: &Scalar) -> Matrix {
    let z = Scalar::zero;
    let o = Scalar::one;
    let d = q - &q.inv().expect("q must be nonzero");
    Matrix::from_rows(vec![
        vec![q.clone(), z(), z(), z()],
        vec![z(), z(), o(), z()],
        vec![z(), o(), d, z()],
        vec![z(), z(), z(), q.clone()],
    ])
}

pub fn q_braiding(q: Scalar) -> Result<BraidedObject> {
    check_yang_baxter(plane(), &q_matrix(&q), Coordinates::TensorOverA)
}

/// The flip with the zero entry at `(1, 1)` replaced by 2.
pub fn flip_broken_matrix() -> Matrix {
    let mut m = flip_matrix();
    m.set(1, 1, Scalar::from_i64(2));
    m
}

pub fn flip_broken() -> Result<BraidedObject> {
    check_yang_baxter(plane(), &flip_broken_matrix(), Coordinates::TensorOverA)
}

/// The identity braiding on `ℚ^n` over `k`.
pub fn identity(n: usize) -> Result<BraidedObject> {
    let m = RigidModule::new(Arc::new(Bimodule::over_ground(n)))?;
    check_yang_baxter(m, &Matrix::identity(n * n), Coordinates::TensorOverA)
}

/// Identity face model on the full quiver with two vertices.
pub fn face_identity_model() -> Result<FaceModel> {
    Ok(FaceModel::identity(Quiver::full(2)?))
}

pub fn face_identity() -> Result<BraidedObject> {
    face_braiding(&face_identity_model()?)
}

/// The 2-cycle `0 ⇄ 1` with `c = λ` on the path `ab` and `μ` on `ba`; the
/// braid equation holds iff `λ = μ`. Unlike the full quiver, its flat
/// transforms are invertible.
pub fn face_cycle(lambda: Scalar, mu: Scalar) -> Result<BraidedObject> {
    face_braiding(&face_cycle_model(lambda, mu)?)
}

pub fn face_cycle_model(lambda: Scalar, mu: Scalar) -> Result<FaceModel> {
    let q = Quiver::new(2, vec![(0, 1), (1, 0)])?;
    let mut fm = FaceModel::identity(q);
    fm.w.insert((0, 1, 0, 1), lambda);
    fm.w.insert((1, 0, 1, 0), mu);
    Ok(fm)
}

/// `ℚ[x]/(x²)` on the basis `1, x`.
pub fn dual_numbers() -> AlgebraSpec {
    AlgebraSpec::new(
        2,
        vec![(0, 0, 0, Scalar::one()), (0, 1, 1, Scalar::one()), (1, 0, 1, Scalar::one())],
        vec![Scalar::one(), Scalar::zero()],
    )
    .expect("valid structure constants")
}

/// `ℚ` with `x` acting by zero on both sides: not projective over `ℚ[x]/(x²)`.
pub fn non_projective() -> Bimodule {
    let a = Arc::new(dual_numbers());
    let act = vec![Matrix::identity(1), Matrix::zeros(1, 1)];
    Bimodule::new(a, 1, act.clone(), act).expect("valid bimodule")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{find_dual_bases, left_dual};
    use crate::error::Error;

    #[test]
    fn dual_numbers_counterexample() {
        let m = Arc::new(non_projective());
        let d = left_dual(&m);
        assert!(matches!(find_dual_bases(&m, &d), Err(Error::NotProjective)));
    }

    #[test]
    fn fixtures_certify() {
        assert!(identity(1).is_ok());
        assert!(face_identity().is_ok());
        assert!(face_cycle(Scalar::from_i64(2), Scalar::from_i64(2)).is_ok());
        assert!(matches!(face_cycle(Scalar::from_i64(2), Scalar::from_i64(3)), Err(Error::NotYangBaxter(_))));
    }
}
