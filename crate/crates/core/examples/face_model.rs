//! Face models on quivers: path-count dimensions and the face-algebra presentation.

use frt::face::hayashi_span_check;
use frt::fixtures;
use frt::frt::build_frt;
use frt::scalar::Scalar;

fn main() {
    let fm = fixtures::face_identity_model().unwrap();
    let p = build_frt(&fixtures::face_identity().unwrap()).unwrap();
    let q = p.quotient(2, 0).unwrap();
    let paths: Vec<usize> = (0..=2).map(|d| fm.quiver.path_count(d)).collect();
    println!("full 2-vertex quiver: paths {paths:?}, FRT dims {:?}", q.dims);
    for e in hayashi_span_check(&fm, 2, 0).unwrap().entries {
        println!("  {} degree {}: {}", e.axiom, e.degree, e.passed);
    }
    let cycle = fixtures::face_cycle_model(Scalar::from_i64(2), Scalar::from_i64(2)).unwrap();
    for e in hayashi_span_check(&cycle, 2, 2).unwrap().entries {
        println!("2-cycle (Hopf) {} degree {}: {}", e.axiom, e.degree, e.passed);
    }
}
