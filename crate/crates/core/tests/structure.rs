//! Dualizability and degree-component checks on the built-in fixtures.

use frt::braiding::check_dualizable;
use frt::error::Error;
use frt::fixtures;
use frt::frt::build_frt;
use frt::scalar::Scalar;

#[test]
fn dualizability_of_fixtures() {
    assert!(check_dualizable(&fixtures::flip().unwrap()).is_ok());
    assert!(check_dualizable(&fixtures::q_braiding(Scalar::from_i64(2)).unwrap()).is_ok());
    assert!(check_dualizable(&fixtures::identity(1).unwrap()).is_ok());
    assert!(check_dualizable(&fixtures::face_cycle(Scalar::from_i64(2), Scalar::from_i64(2)).unwrap()).is_ok());
    for b in [fixtures::identity(2).unwrap(), fixtures::face_identity().unwrap()] {
        assert!(matches!(check_dualizable(&b), Err(Error::NotDualizable(_))));
    }
}

#[test]
fn face_cycle_needs_equal_weights() {
    let e = fixtures::face_cycle(Scalar::from_i64(2), Scalar::from_i64(3)).unwrap_err();
    assert!(matches!(e, Error::NotYangBaxter(_)), "{e}");
}

#[test]
fn degree_component_sizes() {
    let face = build_frt(&fixtures::face_identity().unwrap()).unwrap();
    assert_eq!(face.bundle.degree_component(2).len(), 64);
    let flip = build_frt(&fixtures::flip().unwrap()).unwrap();
    assert_eq!(flip.bundle.degree_component(2).len(), 16);
    assert_eq!(flip.bundle.degree_component(0).len(), 1);
}
