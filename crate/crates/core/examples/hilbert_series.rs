//! Hilbert numbers of FRT bialgebroids and their bialgebroid axioms.

use frt::fixtures;
use frt::frt::build_frt;
use frt::frt::verify::verify_bialgebroid_axioms;
use frt::scalar::Scalar;

fn main() {
    for (name, b) in [
        ("flip", fixtures::flip().unwrap()),
        ("q = 2", fixtures::q_braiding(Scalar::from_i64(2)).unwrap()),
        ("face identity", fixtures::face_identity().unwrap()),
    ] {
        let p = build_frt(&b).unwrap();
        let q = p.quotient(3, 0).unwrap();
        let rep = verify_bialgebroid_axioms(&p, &q, 2);
        let n: usize = rep.entries.iter().map(|e| e.instances).sum();
        println!(
            "{name}: {} relations, dims {:?}, axioms {} ({n} instances)",
            p.relations.relations.len(),
            q.dims,
            if rep.passed() { "hold" } else { "FAIL" }
        );
    }
}
