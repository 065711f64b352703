//! The Hopf algebroid of a dualizable braiding: filtered quotient and Galois round trip.

use frt::braiding::check_dualizable;
use frt::fixtures;
use frt::frt::build_frt_hopf;
use frt::frt::galois::{galois_roundtrip, hopf_relations_hold};
use frt::scalar::Scalar;

fn main() {
    for (name, b) in [
        ("flip", fixtures::flip().unwrap()),
        ("q = 2", fixtures::q_braiding(Scalar::from_i64(2)).unwrap()),
        ("face 2-cycle", fixtures::face_cycle(Scalar::from_i64(2), Scalar::from_i64(2)).unwrap()),
    ] {
        let cert = check_dualizable(&b).unwrap();
        let p = build_frt_hopf(&b, &cert).unwrap();
        let q = p.quotient(2, 2).unwrap();
        let s = q.stabilization.as_ref().unwrap();
        let rel = hopf_relations_hold(&p, &q);
        let gal = galois_roundtrip(&p, &q, 2).unwrap();
        println!(
            "{name}: filtered dims {:?}, stable {} at horizon {}, relations {}, Galois {}",
            q.dims,
            s.stabilized,
            s.horizon_used,
            rel.passed(),
            gal.passed()
        );
    }
}
