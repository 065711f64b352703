//! Generators and relations from a monoidal signature: the braid signature
//! recovers the FRT ideal, and relation images compose.

use frt::fixtures;
use frt::frt::build_frt;
use frt::frt::signature::{braid_signature, build_from_signature, relation_reduction_check, MorphismExpr};
use frt::linalg::Echelon;
use frt::scalar::Scalar;
use frt::tensor_ring::GeneratorBundle;

fn main() {
    let b = fixtures::q_braiding(Scalar::from_i64(2)).unwrap();
    let sig = braid_signature(&b);
    let s = build_from_signature(&sig).unwrap();
    let f = build_frt(&b).unwrap();
    for d in 0..=3 {
        let dim = |p: &frt::frt::Presentation| {
            let v = p.relations.degree_span(&p.bundle, d).unwrap();
            Echelon::from_vectors(v.iter().map(GeneratorBundle::to_sparse)).dim()
        };
        println!("degree {d}: signature ideal {}, FRT ideal {}", dim(&s), dim(&f));
    }
    let rep = relation_reduction_check(&sig, &MorphismExpr::Gen(0), &MorphismExpr::Gen(1), 4).unwrap();
    for e in rep.entries {
        println!("{}: {}", e.axiom, e.passed);
    }
}
