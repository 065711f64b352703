//! The universal R-form on generators and the braiding it induces.

use frt::fixtures;
use frt::frt::build_frt;
use frt::frt::verify::{sigma_r_check, verify_rform_axioms};
use frt::scalar::Scalar;

fn main() {
    let b = fixtures::q_braiding(Scalar::from_i64(2)).unwrap();
    let p = build_frt(&b).unwrap();
    let r = p.rform().expect("bialgebroid presentations carry r");
    for g in &p.generators {
        for h in &p.generators {
            let v = r.r(&g.element, &h.element);
            if v.iter().any(|s| !s.is_zero()) {
                println!("r({}, {}) = {}", g.name, h.name, v[0]);
            }
        }
    }
    let q = p.quotient(2, 0).unwrap();
    let rep = verify_rform_axioms(&p, &q, 2);
    for e in &rep.entries {
        println!("{}: {} ({} instances)", e.axiom, if e.passed { "ok" } else { "FAIL" }, e.instances);
    }
    println!("sigma^r = c: {}", sigma_r_check(&p, &b).passed);
}
