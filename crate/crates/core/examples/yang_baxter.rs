//! Certify braidings and their dualizability; reject a perturbed flip.

use frt::braiding::check_dualizable;
use frt::fixtures;
use frt::scalar::Scalar;

fn main() {
    for (name, b) in [
        ("flip", fixtures::flip()),
        ("q = 3/2", fixtures::q_braiding(Scalar::ratio(3, 2))),
        ("identity on Q^2", fixtures::identity(2)),
        ("face 2-cycle", fixtures::face_cycle(Scalar::from_i64(2), Scalar::from_i64(2))),
    ] {
        let b = b.expect("braid equation holds");
        let dual = match check_dualizable(&b) {
            Ok(_) => "dualizable".to_string(),
            Err(e) => e.to_string(),
        };
        println!("{name}: braided, {dual}");
    }
    match fixtures::flip_broken() {
        Err(e) => println!("perturbed flip: {e}"),
        Ok(_) => println!("perturbed flip: unexpectedly braided"),
    }
}
