//! Dual bases of projective bimodules, padded triples, and the non-projective counterexample.

use std::sync::Arc;

use frt::bimodule::{find_dual_bases, left_dual, RigidModule};
use frt::face::{build_path_bimodule, Quiver};
use frt::fixtures;
use frt::frt::padded_triple;

fn main() {
    let (_, m, _) = build_path_bimodule(&Quiver::full(2).unwrap()).unwrap();
    let d = left_dual(&m);
    let db = find_dual_bases(&m, &d).unwrap();
    println!(
        "path bimodule of the full 2-vertex quiver: {} dual-basis pairs, certified {}",
        db.len(),
        db.certify(&m, &d).passed()
    );
    let tr = padded_triple(&RigidModule::new(m.clone()).unwrap()).unwrap();
    let dd = left_dual(&d.module);
    println!("padded triple: certified {} / {}", tr.certify(&m, &d).passed(), tr.certify_hats(&d, &dd).passed());
    let np = Arc::new(fixtures::non_projective());
    println!("Q[x]/(x^2) acting on Q: {:?}", find_dual_bases(&np, &left_dual(&np)).err());
}
