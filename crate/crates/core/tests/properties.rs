//! Property tests for the tensor ring, quotients and braidings.

use proptest::prelude::*;

use frt::braiding::check_dualizable;
use frt::fixtures;
use frt::frt::build_frt;
use frt::scalar::Scalar;
use frt::tensor_ring::{add, GeneratorBundle, Nc};

/// Degree-0 elements and letters of the bundle, as a spanning list for small random elements.
fn atoms(b: &GeneratorBundle) -> Vec<Nc> {
    let mut v: Vec<Nc> = (0..b.env_dim()).map(|e| b.deg0(&b.env.basis(e))).collect();
    v.extend((0..b.num_letters()).map(|l| b.letter(l)));
    v
}

fn combine(atoms: &[Nc], coeffs: &[(usize, i64)]) -> Nc {
    let mut out = Nc::new();
    for (i, c) in coeffs {
        for (k, s) in &atoms[i % atoms.len()] {
            add(&mut out, *k, s * &Scalar::from_i64(*c));
        }
    }
    out
}

fn coeffs() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..64, -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(x in coeffs(), y in coeffs(), z in coeffs()) {
        let p = build_frt(&fixtures::face_identity().unwrap()).unwrap();
        let b = &p.bundle;
        let a = atoms(b);
        let (x, y, z) = (combine(&a, &x), combine(&a, &y), combine(&a, &z));
        prop_assert_eq!(b.mul(&b.mul(&x, &y), &z), b.mul(&x, &b.mul(&y, &z)));
    }

    #[test]
    fn quotient_respects_products(x in coeffs(), y in coeffs()) {
        let p = build_frt(&fixtures::q_braiding(Scalar::from_i64(2)).unwrap()).unwrap();
        let b = &p.bundle;
        let q = p.quotient(2, 0).unwrap();
        let a = atoms(b);
        let (x, y) = (combine(&a, &x), combine(&a, &y));
        let lhs = q.rep(&b.normalize(&b.mul(&x, &y)));
        let rx = q.rep(&b.normalize(&x));
        let ry = q.rep(&b.normalize(&y));
        prop_assert_eq!(lhs, q.rep(&b.normalize(&b.mul(&rx, &ry))));
    }

    #[test]
    fn quotient_is_linear(x in coeffs(), y in coeffs(), c in -4i64..=4) {
        let p = build_frt(&fixtures::flip().unwrap()).unwrap();
        let b = &p.bundle;
        let q = p.quotient(2, 0).unwrap();
        let a = atoms(b);
        let (x, y) = (combine(&a, &x), combine(&a, &y));
        let mut sum = x.clone();
        for (k, s) in &y {
            add(&mut sum, *k, s * &Scalar::from_i64(c));
        }
        let mut rhs = q.rep(&b.normalize(&x));
        for (k, s) in q.rep(&b.normalize(&y)) {
            add(&mut rhs, k, &s * &Scalar::from_i64(c));
        }
        prop_assert_eq!(q.rep(&b.normalize(&sum)), rhs);
    }

    /// Every nonzero rational q gives a dualizable braiding with the quadratic Hilbert numbers 1, 4, 10.
    #[test]
    fn q_family_hilbert(n in 1i64..7, d in 1i64..5, neg in any::<bool>()) {
        let q = Scalar::ratio(if neg { -n } else { n }, d);
        let b = fixtures::q_braiding(q).unwrap();
        prop_assert!(check_dualizable(&b).is_ok());
        let dims = build_frt(&b).unwrap().quotient(2, 0).unwrap().dims;
        prop_assert_eq!(dims, vec![1, 4, 10]);
    }
}
