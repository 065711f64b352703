//! End-to-end acceptance run: one pass/fail line per criterion.
//! Built with `harness = false`, so the lines are printed on every `cargo test`.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use frt::bimodule::{find_dual_bases, left_dual, RigidModule};
use frt::braiding::{check_dualizable, check_yang_baxter, BraidedObject, Coordinates};
use frt::error::Error;
use frt::face::{build_path_bimodule, hayashi_span_check, Quiver};
use frt::fixtures;
use frt::frt::galois::{galois_roundtrip, hopf_relations_hold};
use frt::frt::signature::{braid_signature, build_from_signature, relation_reduction_check, MorphismExpr};
use frt::frt::verify::{sigma_r_check, verify_bialgebroid_axioms, verify_rform_axioms};
use frt::frt::{build_frt, build_frt_hopf, padded_triple, Presentation};
use frt::linalg::{Echelon, Matrix};
use frt::pipeline::FIXTURES;
use frt::report::VerificationReport;
use frt::scalar::Scalar;
use frt::tensor_ring::{GeneratorBundle, Nc};

/// Arithmetic is exact, so residuals are compared with zero; only wall-clock bounds are tolerances.
const YBE_BUDGET: Duration = Duration::from_secs(1);
const HILBERT_BUDGET: Duration = Duration::from_secs(10);
const HOPF_BUDGET: Duration = Duration::from_secs(60);
const HOPF_DEGREE: usize = 2;
const HOPF_HORIZON: usize = 2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(label: &str, rep: &VerificationReport) -> Result<(), String> {
    match rep.entries.iter().find(|e| !e.passed) {
        None => Ok(()),
        Some(e) => Err(format!("{label}: {} failed: {}", e.axiom, e.witness.clone().unwrap_or_default())),
    }
}

fn q2() -> BraidedObject {
    fixtures::q_braiding(Scalar::from_i64(2)).unwrap()
}

fn within(label: &str, t: Instant, budget: Duration) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < budget, || format!("{label} took {e:?}, budget {budget:?}"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of degree `d` of `k⟨T_i^j⟩ / (c T₁T₂ − T₁T₂ c)` for a 2-dimensional `c`,
/// by direct rank computation over words. Words are indexed in base 4 with letter `2i + j`.
fn classical_frt_dim(c: &Matrix, d: usize) -> usize {
    let n = 2;
    let letter = |i: usize, j: usize| i * n + j;
    let mut rels: Vec<BTreeMap<usize, Scalar>> = vec![];
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                for nn in 0..n {
                    let mut r: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for k in 0..n {
                        for l in 0..n {
                            let w = letter(k, m) * 4 + letter(l, nn);
                            *r.entry(w).or_insert_with(Scalar::zero) += c.get(i * n + j, k * n + l);
                            let w = letter(i, k) * 4 + letter(j, l);
                            *r.entry(w).or_insert_with(Scalar::zero) -= c.get(k * n + l, m * n + nn);
                        }
                    }
                    rels.push(r);
                }
            }
        }
    }
    if d < 2 {
        return 4usize.pow(d as u32);
    }
    let mut rows = vec![];
    for pos in 0..=d - 2 {
        let (pre, post) = (4usize.pow(pos as u32), 4usize.pow((d - 2 - pos) as u32));
        for u in 0..pre {
            for v in 0..post {
                for r in &rels {
                    let row: Vec<(usize, Scalar)> = r
                        .iter()
                        .filter(|(_, s)| !s.is_zero())
                        .map(|(w, s)| ((u * 16 + w) * post + v, s.clone()))
                        .collect();
                    rows.push(row);
                }
            }
        }
    }
    let mut rows: Vec<_> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    for r in rows.iter_mut() {
        r.sort_by_key(|(k, _)| *k);
    }
    4usize.pow(d as u32) - Echelon::from_vectors(rows).dim()
}

/// Paths of length `d` in the quiver, enumerated as arrow sequences.
fn enumerate_paths(q: &[(usize, usize)], d: usize) -> usize {
    fn go(q: &[(usize, usize)], d: usize, at: Option<usize>) -> usize {
        if d == 0 {
            return 1;
        }
        q.iter().filter(|(s, _)| at.is_none_or(|v| v == *s)).map(|(_, t)| go(q, d - 1, Some(*t))).sum()
    }
    if d == 0 {
        let mut vs: Vec<usize> = q.iter().flat_map(|(s, t)| [*s, *t]).collect();
        vs.sort();
        vs.dedup();
        return vs.len();
    }
    go(q, d, None)
}

fn c1_ybe_gate() -> Outcome {
    let t = Instant::now();
    check_yang_baxter(fixtures::plane(), &fixtures::flip_matrix(), Coordinates::TensorOverA)
        .map_err(|e| e.to_string())?;
    check_yang_baxter(fixtures::plane(), &fixtures::q_matrix(&Scalar::from_i64(2)), Coordinates::TensorOverA)
        .map_err(|e| e.to_string())?;
    let residual = match check_yang_baxter(fixtures::plane(), &fixtures::flip_broken_matrix(), Coordinates::TensorOverA)
    {
        Err(Error::NotYangBaxter(msg)) => msg,
        other => return Err(format!("perturbed flip not rejected: {other:?}")),
    };
    ensure(residual.contains("nonzero"), || format!("no residual reported: {residual}"))?;
    within("YBE gate", t, YBE_BUDGET)?;
    Ok(format!("flip, q=2 certified; perturbed flip rejected ({residual}) in {:?}", t.elapsed()))
}

fn c2_hilbert() -> Outcome {
    let t = Instant::now();
    let flip = build_frt(&fixtures::flip().unwrap()).unwrap().quotient(3, 0).map_err(|e| e.to_string())?;
    let oracle: Vec<usize> = (0..=3).map(|d| binomial(d + 3, 3)).collect();
    ensure(flip.dims == oracle, || format!("flip dims {:?}, symmetric-algebra oracle {oracle:?}", flip.dims))?;
    let q = q2();
    let qd = build_frt(&q).unwrap().quotient(3, 0).map_err(|e| e.to_string())?;
    let rank_oracle: Vec<usize> =
        (0..=3).map(|d| classical_frt_dim(&fixtures::q_matrix(&Scalar::from_i64(2)), d)).collect();
    ensure(qd.dims == rank_oracle, || format!("q=2 dims {:?}, rank oracle {rank_oracle:?}", qd.dims))?;
    within("Hilbert", t, HILBERT_BUDGET)?;
    Ok(format!("flip {:?} = C(d+3,3); q=2 {:?} = rank oracle; {:?}", flip.dims, qd.dims, t.elapsed()))
}

fn c3_face() -> Outcome {
    let fm = fixtures::face_identity_model().unwrap();
    let p = build_frt(&fixtures::face_identity().unwrap()).unwrap();
    let q = p.quotient(2, 0).map_err(|e| e.to_string())?;
    let counted: Vec<usize> = (0..=2).map(|d| enumerate_paths(&fm.quiver.arrows, d).pow(2)).collect();
    let formula: Vec<usize> = (0..=2u32).map(|d| 16 * 4usize.pow(d) / 4).collect();
    ensure(counted == formula, || format!("path count {counted:?} vs 16·4^(d-1) = {formula:?}"))?;
    ensure(q.dims == formula, || format!("face dims {:?}, path-count oracle {formula:?}", q.dims))?;
    let rep = hayashi_span_check(&fm, 2, 0).map_err(|e| e.to_string())?;
    all_pass("face", &rep)?;
    Ok(format!("face dims {:?} = 16·4^(d-1); Hayashi spans equal in degrees 0..=2", q.dims))
}

fn c4_bialgebroid() -> Outcome {
    let fixtures = [("flip", fixtures::flip().unwrap()), ("q=2", q2()), ("face", fixtures::face_identity().unwrap())];
    let mut insts = 0;
    for (name, b) in &fixtures {
        let p = build_frt(b).unwrap();
        let q = p.quotient(3, 0).map_err(|e| e.to_string())?;
        let rep = verify_bialgebroid_axioms(&p, &q, 3);
        all_pass(name, &rep)?;
        insts += rep.entries.iter().map(|e| e.instances).sum::<usize>();
    }
    let mut p = build_frt(&fixtures::flip().unwrap()).unwrap();
    let (t11, t22) = (p.generator("T[1,1]").unwrap().clone(), p.generator("T[2,2]").unwrap().clone());
    let l = p.bundle.letter_index(0, 0, 0);
    p.delta_override.insert(l, frt::tensor_ring::tensor2(&t11, &t22));
    let q = p.quotient(2, 0).map_err(|e| e.to_string())?;
    let rep = verify_bialgebroid_axioms(&p, &q, 2);
    let bad = rep.failed().next().ok_or("corrupted Δ passed every axiom")?;
    let w = bad.witness.clone().ok_or("corrupted Δ failure carries no witness")?;
    Ok(format!("{insts} instances pass at degree ≤ 3; corrupted Δ fails {} ({w})", bad.axiom))
}

fn c5_rform() -> Outcome {
    let fixtures = [("flip", fixtures::flip().unwrap()), ("q=2", q2()), ("face", fixtures::face_identity().unwrap())];
    let mut insts = 0;
    for (name, b) in &fixtures {
        let p = build_frt(b).unwrap();
        let q = p.quotient(2, 0).map_err(|e| e.to_string())?;
        let rep = verify_rform_axioms(&p, &q, 2);
        for ax in
            ["rform-1", "rform-2", "rform-4", "rform-5", "rform-6", "rform-7", "rform-well-defined", "rform-strong"]
        {
            ensure(rep.get(ax).is_some(), || format!("{name}: {ax} not run"))?;
        }
        all_pass(name, &rep)?;
        insts += rep.entries.iter().map(|e| e.instances).sum::<usize>();
    }
    Ok(format!("rform-1,2,4..7, ideal vanishing and strong form: {insts} instances at degree ≤ 2"))
}

fn hopf(b: &BraidedObject) -> Presentation {
    build_frt_hopf(b, &check_dualizable(b).unwrap()).unwrap()
}

fn c6_sigma_r() -> Outcome {
    let cases: Vec<(&str, Presentation, BraidedObject)> = vec![
        ("flip", build_frt(&fixtures::flip().unwrap()).unwrap(), fixtures::flip().unwrap()),
        ("q=2", build_frt(&q2()).unwrap(), q2()),
        ("face", build_frt(&fixtures::face_identity().unwrap()).unwrap(), fixtures::face_identity().unwrap()),
        ("identity", build_frt(&fixtures::identity(2).unwrap()).unwrap(), fixtures::identity(2).unwrap()),
        ("flip-hopf", hopf(&fixtures::flip().unwrap()), fixtures::flip().unwrap()),
    ];
    for (name, p, b) in &cases {
        let b = p.braided.as_ref().unwrap_or(b);
        let e = sigma_r_check(p, b);
        ensure(e.passed, || format!("{name}: {}", e.witness.clone().unwrap_or_default()))?;
    }
    Ok(format!("σ^r = c exactly on {} fixtures", cases.len()))
}

fn c7_hopf() -> Outcome {
    let t = Instant::now();
    let mut dims = vec![];
    for (name, b) in [("flip", fixtures::flip().unwrap()), ("q=2", q2())] {
        let p = hopf(&b);
        let q = p.quotient(HOPF_DEGREE, HOPF_HORIZON).map_err(|e| e.to_string())?;
        let s = q.stabilization.as_ref().ok_or("no stabilization record")?;
        ensure(s.stabilized && s.horizon_used <= HOPF_HORIZON, || format!("{name}: not stable: {s:?}"))?;
        all_pass(name, &hopf_relations_hold(&p, &q))?;
        all_pass(name, &galois_roundtrip(&p, &q, HOPF_DEGREE).map_err(|e| e.to_string())?)?;
        dims.push(format!("{name} {:?} (horizon {})", q.dims, s.horizon_used));
    }
    within("Hopf", t, HOPF_BUDGET)?;
    Ok(format!("{}; relations and Galois round-trips hold; {:?}", dims.join(", "), t.elapsed()))
}

fn span(vs: Vec<Nc>) -> Echelon {
    let mut e = Echelon::from_vectors(vs.iter().map(GeneratorBundle::to_sparse));
    e.finalize();
    e
}

fn c8_signature() -> Outcome {
    for (name, b) in [("flip", fixtures::flip().unwrap()), ("q=2", q2())] {
        let s = build_from_signature(&braid_signature(&b)).map_err(|e| e.to_string())?;
        let f = build_frt(&b).unwrap();
        for d in 0..=3 {
            let x = span(s.relations.degree_span(&s.bundle, d).map_err(|e| e.to_string())?);
            let y = span(f.relations.degree_span(&f.bundle, d).map_err(|e| e.to_string())?);
            ensure(x == y, || format!("{name} degree {d}: spans differ ({} vs {})", x.dim(), y.dim()))?;
        }
    }
    let sig = braid_signature(&q2());
    let (s, sb, id) = (MorphismExpr::Gen(0), MorphismExpr::Gen(1), MorphismExpr::Id(vec![0]));
    let id2 = MorphismExpr::Id(vec![0, 0]);
    let mut names = vec![];
    for (label, f, g) in [("σσ̄", &s, &sb), ("identity", &id2, &id2), ("σ⊗id", &s, &id)] {
        let rep = relation_reduction_check(&sig, f, g, 4).map_err(|e| e.to_string())?;
        all_pass(label, &rep)?;
        names
            .push(format!("{label} ({})", rep.entries.iter().map(|e| e.axiom.as_str()).collect::<Vec<_>>().join(", ")));
    }
    Ok(format!("signature spans = FRT spans for d ≤ 3; containments: {}", names.join("; ")))
}

fn c9_dual_bases() -> Outcome {
    let (_, path, _) = build_path_bimodule(&Quiver::full(2).unwrap()).map_err(|e| e.to_string())?;
    let (_, cycle, _) =
        build_path_bimodule(&Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap()).map_err(|e| e.to_string())?;
    let modules = [("plane", fixtures::plane().module.clone()), ("full quiver", path), ("2-cycle", cycle)];
    for (name, m) in &modules {
        let d = left_dual(m);
        let db = find_dual_bases(m, &d).map_err(|e| format!("{name}: {e}"))?;
        let r = db.certify(m, &d);
        ensure(r.passed(), || format!("{name}: {}", r.failures.join("; ")))?;
        let tr = padded_triple(&RigidModule::new(m.clone()).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        let dd = left_dual(&d.module);
        let mut r = tr.certify(m, &d);
        r.failures.extend(tr.certify_hats(&d, &dd).failures);
        ensure(r.passed(), || format!("{name} padded triple: {}", r.failures.join("; ")))?;
    }
    let np = std::sync::Arc::new(fixtures::non_projective());
    match find_dual_bases(&np, &left_dual(&np)) {
        Err(Error::NotProjective) => {}
        other => return Err(format!("ℚ[x]/(x²) counterexample: expected NotProjective, got {other:?}")),
    }
    Ok(format!("dual bases and padded triples certified on {} modules; ℚ[x]/(x²) → NotProjective", modules.len()))
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_frt");
    for name in FIXTURES {
        let mut outs = vec![];
        for run in 0..2 {
            let (p, r) =
                (dir.path().join(format!("{name}-{run}.p.json")), dir.path().join(format!("{name}-{run}.r.json")));
            let st = Command::new(bin)
                .args(["build", "--fixture", name, "--emit-presentation"])
                .arg(&p)
                .arg("--emit-report")
                .arg(&r)
                .output()
                .map_err(|e| e.to_string())?;
            let report = std::fs::read(&r).map_err(|e| format!("{name}: {e}"))?;
            let pres = std::fs::read(&p).unwrap_or_default();
            outs.push((st.status.code(), report, pres));
        }
        ensure(outs[0] == outs[1], || format!("{name}: artifacts differ between runs"))?;
        let expected = if *name == "flip-broken" { 1 } else { 0 };
        ensure(outs[0].0 == Some(expected), || format!("{name}: exit {:?}, expected {expected}", outs[0].0))?;
    }
    Ok(format!("{} fixtures byte-identical across two runs", FIXTURES.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("YBE gate", c1_ybe_gate),
        ("FRT Hilbert series", c2_hilbert),
        ("face fixture", c3_face),
        ("bialgebroid axioms", c4_bialgebroid),
        ("R-form suite", c5_rform),
        ("braiding recovery", c6_sigma_r),
        ("Hopf suite", c7_hopf),
        ("generators and relations", c8_signature),
        ("dual-basis machinery", c9_dual_bases),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match out {
            Ok(msg) => println!("criterion {:2} PASS  {name}: {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {msg}", n + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
