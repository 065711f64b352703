//! Batch pipeline: problem files in, presentation / Hilbert / verification artifacts out.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::AlgebraSpec;
use crate::bimodule::{left_dual, Bimodule, RigidModule};
use crate::braiding::{check_dualizable, check_yang_baxter, BraidedObject, Coordinates};
use crate::error::{Error, Result};
use crate::face::{face_braiding, hayashi_presentation, hayashi_span_check, FaceModel, Quiver};
use crate::fixtures;
use crate::frt::galois::{galois_roundtrip, hopf_relations_hold};
use crate::frt::signature::{braid_signature, build_from_signature, relation_reduction_check, MorphismExpr};
use crate::frt::verify::{sigma_r_check, verify_bialgebroid_axioms, verify_rform_axioms};
use crate::frt::{build_frt, build_frt_hopf, padded_triple, Flavor, Presentation};
use crate::linalg::{Echelon, Matrix};
use crate::report::{CheckEntry, Tally, VerificationReport};
use crate::scalar::{Field, Scalar};
use crate::tensor_ring::{GeneratorBundle, GradedQuotient, Nc, Nc2};

pub const FORMAT_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bialgebroid,
    Hopf,
    Face,
}

/// Sparse matrix: `entries` are `(row, column, value)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub dim: usize,
    /// `(i, j, k, γ_{ij}^k)` with `e_i e_j = Σ_k γ_{ij}^k e_k`.
    pub structure: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionAlgebraBlock {
    pub vertices: usize,
}

/// One left and one right action matrix per basis element of `A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleBlock {
    pub dim: usize,
    pub left: Vec<SparseMatrix>,
    pub right: Vec<SparseMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverBlock {
    pub vertices: usize,
    /// `(source, target)` per arrow.
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidingBlock {
    /// `"tensor_over_A"` or `"tensor_over_k"`.
    pub coordinates: String,
    pub matrix: SparseMatrix,
}

/// Face weights `(p, q, r, s, w_{pq}^{rs})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceBlock {
    pub w: Vec<(usize, usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function_algebra: Option<FunctionAlgebraBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braiding: Option<BraidingBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<FaceBlock>,
    pub mode: Mode,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    /// Degree bound for the R-form suite (capped by `degree`).
    #[serde(default = "default_rform_degree")]
    pub rform_degree: usize,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    /// Exit with status 3 when the filtered quotient has not stabilized.
    #[serde(default)]
    pub require_stable: bool,
}

fn default_degree() -> usize {
    2
}

fn default_horizon() -> usize {
    2
}

fn default_rform_degree() -> usize {
    2
}

fn default_checks() -> Vec<String> {
    vec!["all".into()]
}

pub const CHECKS: &[&str] = &[
    "ybe",
    "dual-bases",
    "stability",
    "bialgebroid",
    "rform",
    "sigma-r",
    "hopf-relations",
    "galois",
    "signature",
    "hayashi",
];

fn applicable(check: &str, mode: Mode, flavor: Flavor) -> bool {
    match check {
        "stability" | "hopf-relations" | "galois" => flavor == Flavor::Hopf,
        "signature" => mode == Mode::Bialgebroid,
        "hayashi" => mode == Mode::Face,
        _ => true,
    }
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<ProblemSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

/// Names of the built-in fixtures.
pub const FIXTURES: &[&str] = &["flip", "q2", "face", "flip-hopf", "q2-hopf", "face-cycle", "flip-broken"];

fn sparse_matrix(m: &Matrix) -> SparseMatrix {
    SparseMatrix {
        rows: m.rows,
        cols: m.cols,
        entries: m.entries().into_iter().map(|(r, c, v)| (r, c, v.to_string())).collect(),
    }
}

fn ground_plane_spec(c: &Matrix, mode: Mode) -> ProblemSpec {
    let id = sparse_matrix(&Matrix::identity(2));
    ProblemSpec {
        field: "Q".into(),
        algebra: Some(AlgebraBlock { dim: 1, structure: vec![(0, 0, 0, "1".into())], unit: vec!["1".into()] }),
        function_algebra: None,
        bimodule: Some(BimoduleBlock { dim: 2, left: vec![id.clone()], right: vec![id] }),
        quiver: None,
        braiding: Some(BraidingBlock { coordinates: "tensor_over_A".into(), matrix: sparse_matrix(c) }),
        face: None,
        mode,
        degree: if mode == Mode::Hopf { 2 } else { 3 },
        horizon: 2,
        rform_degree: 2,
        checks: default_checks(),
        require_stable: mode == Mode::Hopf,
    }
}

fn face_spec(fm: &FaceModel, degree: usize) -> ProblemSpec {
    ProblemSpec {
        field: "Q".into(),
        algebra: None,
        function_algebra: None,
        bimodule: None,
        quiver: Some(QuiverBlock { vertices: fm.quiver.vertices, arrows: fm.quiver.arrows.clone() }),
        braiding: None,
        face: Some(FaceBlock { w: fm.w.iter().map(|(&(p, q, r, s), v)| (p, q, r, s, v.to_string())).collect() }),
        mode: Mode::Face,
        degree,
        horizon: 2,
        rform_degree: 2,
        checks: default_checks(),
        require_stable: false,
    }
}

/// A built-in problem spec.
pub fn fixture(name: &str) -> Result<ProblemSpec> {
    let two = Scalar::from_i64(2);
    Ok(match name {
        "flip" => ground_plane_spec(&fixtures::flip_matrix(), Mode::Bialgebroid),
        "q2" => ground_plane_spec(&fixtures::q_matrix(&two), Mode::Bialgebroid),
        "flip-hopf" => ground_plane_spec(&fixtures::flip_matrix(), Mode::Hopf),
        "q2-hopf" => ground_plane_spec(&fixtures::q_matrix(&two), Mode::Hopf),
        "flip-broken" => ground_plane_spec(&fixtures::flip_broken_matrix(), Mode::Bialgebroid),
        "face" => face_spec(&fixtures::face_identity_model()?, 3),
        "face-cycle" => face_spec(&fixtures::face_cycle_model(two.clone(), two)?, 2),
        _ => {
            return Err(Error::Parse(format!("unknown fixture {name:?}; available: {}", FIXTURES.join(", "))));
        }
    })
}

fn scalar(field: &Field, s: &str, ctx: &str) -> Result<Scalar> {
    field.scalar(s).map_err(|e| Error::Parse(format!("{ctx}: {e}")))
}

fn matrix(field: &Field, m: &SparseMatrix, ctx: &str) -> Result<Matrix> {
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (n, (r, c, v)) in m.entries.iter().enumerate() {
        if *r >= m.rows || *c >= m.cols {
            return Err(Error::Parse(format!("{ctx}.entries[{n}]: ({r},{c}) outside {}x{}", m.rows, m.cols)));
        }
        out.set(*r, *c, scalar(field, v, &format!("{ctx}.entries[{n}]"))?);
    }
    Ok(out)
}

/// What a spec builds before any quotient is taken.
pub struct Built {
    pub field: Field,
    pub braided: BraidedObject,
    pub face: Option<FaceModel>,
    pub presentation: Presentation,
}

fn build_face_model(field: &Field, q: &Quiver, fb: &FaceBlock) -> Result<FaceModel> {
    let mut fm = FaceModel { quiver: q.clone(), w: Default::default() };
    for (n, (p, qq, r, s, v)) in fb.w.iter().enumerate() {
        fm.w.insert((*p, *qq, *r, *s), scalar(field, v, &format!("face.w[{n}]"))?);
    }
    Ok(fm)
}

/// Input validation and construction. Input errors are `Parse`, `DimensionMismatch`,
/// `InvalidAlgebra`, `EmptyIndexSet`; everything else is a mathematical failure.
pub fn build(spec: &ProblemSpec) -> Result<Built> {
    let field = Field::parse(&spec.field)?;
    let quiver = match &spec.quiver {
        Some(qb) => Some(Quiver::new(qb.vertices, qb.arrows.clone())?),
        None => None,
    };
    let face = match (&spec.face, &quiver) {
        (Some(fb), Some(q)) => Some(build_face_model(&field, q, fb)?),
        (None, None) => None,
        _ => return Err(Error::Parse("`quiver` and `face` blocks go together".into())),
    };
    if (spec.mode == Mode::Face) != face.is_some() {
        return Err(Error::Parse("mode `face` goes with `quiver` and `face` blocks".into()));
    }
    let braided = match (&spec.algebra, &spec.function_algebra, &spec.bimodule, &spec.braiding, &face) {
        (None, None, None, None, Some(fm)) => face_braiding(fm)?,
        (a, f, Some(mb), Some(bb), None) => {
            let alg = match (a, f) {
                (Some(ab), None) => {
                    let quads = ab
                        .structure
                        .iter()
                        .enumerate()
                        .map(|(n, (i, j, k, v))| {
                            Ok((*i, *j, *k, scalar(&field, v, &format!("algebra.structure[{n}]"))?))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let unit = ab
                        .unit
                        .iter()
                        .enumerate()
                        .map(|(n, v)| scalar(&field, v, &format!("algebra.unit[{n}]")))
                        .collect::<Result<Vec<_>>>()?;
                    let alg = AlgebraSpec::new(ab.dim, quads, unit)?;
                    let rep = alg.check_algebra();
                    if !rep.passed() {
                        return Err(Error::InvalidAlgebra(rep.failures.join("; ")));
                    }
                    alg
                }
                (None, Some(fb)) => AlgebraSpec::function_algebra(fb.vertices)?,
                _ => return Err(Error::Parse("give exactly one of `algebra`, `function_algebra`".into())),
            };
            let alg = Arc::new(alg);
            let side = |ms: &[SparseMatrix], name: &str| {
                ms.iter()
                    .enumerate()
                    .map(|(n, m)| matrix(&field, m, &format!("bimodule.{name}[{n}]")))
                    .collect::<Result<Vec<_>>>()
            };
            let m = Bimodule::new(alg, mb.dim, side(&mb.left, "left")?, side(&mb.right, "right")?)?;
            let rigid = RigidModule::new(Arc::new(m))?;
            let coords = match bb.coordinates.as_str() {
                "tensor_over_A" => Coordinates::TensorOverA,
                "tensor_over_k" => Coordinates::TensorOverK,
                other => return Err(Error::Parse(format!("braiding.coordinates: unknown value {other:?}"))),
            };
            check_yang_baxter(rigid, &matrix(&field, &bb.matrix, "braiding.matrix")?, coords)?
        }
        _ => {
            return Err(Error::Parse(
                "give either `quiver` + `face`, or an algebra with `bimodule` + `braiding`".into(),
            ))
        }
    };
    let presentation = match spec.mode {
        Mode::Bialgebroid => build_frt(&braided)?,
        Mode::Hopf => build_frt_hopf(&braided, &check_dualizable(&braided)?)?,
        Mode::Face => hayashi_presentation(face.as_ref().unwrap())?,
    };
    Ok(Built { field, braided, face, presentation })
}

/// Result of one pipeline run.
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
    pub presentation: Option<Value>,
}

impl Outcome {
    pub fn report_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n"
    }

    pub fn presentation_json(&self) -> Option<String> {
        self.presentation.as_ref().map(|p| serde_json::to_string_pretty(p).expect("presentation serializes") + "\n")
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::DimensionMismatch(_) | Error::InvalidAlgebra(_) | Error::EmptyIndexSet | Error::Io(_)
    )
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "ParseError",
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::InvalidAlgebra(_) => "InvalidAlgebra",
        Error::EmptyIndexSet => "EmptyIndexSet",
        Error::NotProjective => "NotProjective",
        Error::NotYangBaxter(_) => "NotYangBaxter",
        Error::NotInvertible(_) => "NotInvertible",
        Error::NotDualizable(_) => "NotDualizable",
        Error::NotBimoduleMap(_) => "NotBimoduleMap",
        Error::NotFaceSupported(_) => "NotFaceSupported",
        Error::NotSeparable(_) => "NotSeparable",
        Error::InvalidDualBases(_) => "InvalidDualBases",
        _ => "Error",
    }
}

fn spec_summary(spec: &ProblemSpec) -> Value {
    json!({
        "field": spec.field,
        "mode": spec.mode,
        "degree": spec.degree,
        "horizon": spec.horizon,
        "rform_degree": spec.rform_degree,
        "checks": spec.checks,
        "require_stable": spec.require_stable,
    })
}

fn error_outcome(spec: &ProblemSpec, e: &Error, checks: Vec<CheckEntry>) -> Outcome {
    let code = if is_input_error(e) { EXIT_INPUT_ERROR } else { EXIT_CHECK_FAILED };
    Outcome {
        exit_code: code,
        report: json!({
            "format_version": FORMAT_VERSION,
            "spec": spec_summary(spec),
            "status": if code == EXIT_INPUT_ERROR { "input-error" } else { "fail" },
            "exit_code": code,
            "error": {"kind": error_kind(e), "message": e.to_string()},
            "checks": checks,
        }),
        presentation: None,
    }
}

fn requested_checks(spec: &ProblemSpec, flavor: Flavor) -> Result<Vec<&'static str>> {
    let mut out = BTreeSet::new();
    for c in &spec.checks {
        let c = c.trim();
        if c == "all" {
            for k in CHECKS {
                if applicable(k, spec.mode, flavor) {
                    out.insert(*k);
                }
            }
            continue;
        }
        let k = CHECKS
            .iter()
            .find(|k| **k == c)
            .ok_or_else(|| Error::Parse(format!("unknown check {c:?}; available: all, {}", CHECKS.join(", "))))?;
        if !applicable(k, spec.mode, flavor) {
            return Err(Error::Parse(format!("check {k:?} does not apply to this mode")));
        }
        out.insert(*k);
    }
    // report in the canonical order of CHECKS
    Ok(CHECKS.iter().copied().filter(|k| out.contains(k)).collect())
}

fn span(vs: Vec<Nc>) -> Echelon {
    let mut e = Echelon::from_vectors(vs.iter().map(GeneratorBundle::to_sparse));
    e.finalize();
    e
}

fn run_check(name: &str, spec: &ProblemSpec, built: &Built, q: &GradedQuotient) -> Result<VerificationReport> {
    let p = &built.presentation;
    let d = spec.degree;
    let mut rep = VerificationReport::default();
    match name {
        "ybe" => {
            let mut t = Tally::new("ybe", 2);
            t.record(true, String::new);
            rep.push(t.finish());
        }
        "dual-bases" => {
            let mut t = Tally::new("dual-bases", 1);
            for o in &p.bundle.objects {
                let r = o.rigid.dual_bases.certify(&o.rigid.module, &o.rigid.dual);
                t.record(r.passed(), || format!("{}: {}", o.name, r.failures.join("; ")));
            }
            rep.push(t.finish());
            if p.flavor == Flavor::Hopf {
                let mut t = Tally::new("padded-triple", 1);
                let r = padded_triple(&built.braided.rigid).map(|tr| {
                    let dual = &built.braided.rigid.dual;
                    let ddual = left_dual(&dual.module);
                    let mut r = tr.certify(&built.braided.rigid.module, dual);
                    r.failures.extend(tr.certify_hats(dual, &ddual).failures);
                    r
                })?;
                t.record(r.passed(), || r.failures.join("; "));
                rep.push(t.finish());
            }
        }
        "stability" => {
            let mut t = Tally::new("stability", d);
            let s = q.stabilization.as_ref();
            t.record(s.map(|s| s.stabilized).unwrap_or(true), || {
                format!("ideal dimensions {:?} did not repeat within horizon {}", s.unwrap().sequence, spec.horizon)
            });
            rep.push(t.finish());
        }
        "bialgebroid" => rep.extend(verify_bialgebroid_axioms(p, q, d)),
        "rform" => rep.extend(verify_rform_axioms(p, q, d.min(spec.rform_degree))),
        "sigma-r" => {
            let b = p.braided.as_ref().unwrap_or(&built.braided);
            rep.push(sigma_r_check(p, b));
        }
        "hopf-relations" => rep.extend(hopf_relations_hold(p, q)),
        "galois" => rep.extend(galois_roundtrip(p, q, d)?),
        "signature" => {
            let sig = braid_signature(&built.braided);
            let s = build_from_signature(&sig)?;
            for k in 0..=d {
                let mut t = Tally::new("signature-span", k);
                let (a, b) =
                    (span(s.relations.degree_span(&s.bundle, k)?), span(p.relations.degree_span(&p.bundle, k)?));
                t.record(a == b, || {
                    format!("degree {k}: signature ideal dim {} vs FRT ideal dim {}", a.dim(), b.dim())
                });
                rep.push(t.finish());
            }
            let (s0, s1) = (MorphismExpr::Gen(0), MorphismExpr::Gen(1));
            let id = MorphismExpr::Id(vec![0]);
            // degree of the tensor relation: strands of f⊗g
            rep.extend(relation_reduction_check(&sig, &s0, &s1, 4)?);
            rep.extend(relation_reduction_check(&sig, &s0, &id, 3)?);
        }
        "hayashi" => rep.extend(hayashi_span_check(built.face.as_ref().unwrap(), d, spec.horizon)?),
        _ => unreachable!("check names are validated"),
    }
    Ok(rep)
}

fn mono(b: &GeneratorBundle, key: u64) -> Value {
    if GeneratorBundle::degree(key) == 0 {
        let n = b.algebra.dim;
        let e = key as usize;
        json!({"s": e / n, "t": e % n})
    } else {
        json!({"word": b.word(key)})
    }
}

fn nc_json(b: &GeneratorBundle, x: &Nc) -> Value {
    Value::Array(x.iter().map(|(k, c)| json!([mono(b, *k), c.to_string()])).collect())
}

fn nc2_json(b: &GeneratorBundle, x: &Nc2) -> Value {
    Value::Array(x.iter().map(|((k1, k2), c)| json!([mono(b, *k1), mono(b, *k2), c.to_string()])).collect())
}

fn a_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| json!(s.to_string())).collect())
}

fn hilbert_json(q: &GradedQuotient) -> Value {
    Value::Array(q.dims.iter().enumerate().map(|(d, n)| json!({"degree": d, "dim": n})).collect())
}

fn presentation_json(spec: &ProblemSpec, built: &Built, q: &GradedQuotient) -> Value {
    let p = &built.presentation;
    let b = &p.bundle;
    let alg = &b.algebra;
    let env: Vec<(usize, Nc)> = (0..b.env_dim()).map(|e| (e, b.deg0(&b.env.basis(e)))).collect();
    let generators: Vec<Value> = p
        .generators
        .iter()
        .map(|g| {
            let left: Vec<Value> =
                env.iter().map(|(e, x)| json!({"env": e, "result": nc_json(b, &b.mul(x, &g.element))})).collect();
            let right: Vec<Value> =
                env.iter().map(|(e, x)| json!({"env": e, "result": nc_json(b, &b.mul(&g.element, x))})).collect();
            json!({"name": g.name, "element": nc_json(b, &g.element), "left_action": left, "right_action": right})
        })
        .collect();
    let letters: Vec<Value> = b
        .letters
        .iter()
        .enumerate()
        .map(|(i, l)| json!({"index": i, "object": b.objects[l.obj].name, "m": l.m, "f": l.f}))
        .collect();
    let delta: Vec<Value> = p
        .generators
        .iter()
        .map(|g| json!({"generator": g.name, "value": nc2_json(b, &p.delta_raw(&g.element))}))
        .collect();
    let counit: Vec<Value> =
        p.generators.iter().map(|g| json!({"generator": g.name, "value": a_json(&p.counit(&g.element))})).collect();
    let rform: Vec<Value> = match p.rform() {
        Some(rf) => p
            .generators
            .iter()
            .flat_map(|g| p.generators.iter().map(move |h| (g, h)))
            .map(|(g, h)| json!({"left": g.name, "right": h.name, "value": a_json(&rf.r(&g.element, &h.element))}))
            .collect(),
        None => vec![],
    };
    json!({
        "format_version": FORMAT_VERSION,
        "field": built.field.descriptor(),
        "mode": spec.mode,
        "flavor": p.flavor,
        "homogeneous": p.homogeneous,
        "algebra": {
            "dim": alg.dim,
            "unit": a_json(&alg.unit),
            "structure": alg.structure_constants().iter().map(|(i, j, k, v)| json!([i, j, k, v.to_string()])).collect::<Vec<_>>(),
        },
        "objects": b.objects.iter().map(|o| json!({
            "name": o.name,
            "module_dim": o.rigid.module.dim,
            "dual_basis_size": o.rigid.dual_bases.len(),
        })).collect::<Vec<_>>(),
        "letters": letters,
        "generators": generators,
        "relations": p.relations.relations.iter().map(|r| nc_json(b, r)).collect::<Vec<_>>(),
        "hilbert": hilbert_json(q),
        "delta": delta,
        "counit": counit,
        "rform": rform,
    })
}

/// Runs construction, quotient and the requested checks.
pub fn run_pipeline(spec: &ProblemSpec) -> Outcome {
    let built = match build(spec) {
        Ok(b) => b,
        Err(e) => {
            let mut checks = vec![];
            if let Error::NotYangBaxter(msg) = &e {
                let mut t = Tally::new("ybe", 2);
                t.record(false, || msg.clone());
                checks.push(t.finish());
            }
            return error_outcome(spec, &e, checks);
        }
    };
    let p = &built.presentation;
    let names = match requested_checks(spec, p.flavor) {
        Ok(n) => n,
        Err(e) => return error_outcome(spec, &e, vec![]),
    };
    let horizon = if p.homogeneous { 0 } else { spec.horizon };
    let q = match p.quotient(spec.degree, horizon) {
        Ok(q) => q,
        Err(e) => return error_outcome(spec, &e, vec![]),
    };
    let mut rep = VerificationReport::default();
    for n in &names {
        match run_check(n, spec, &built, &q) {
            Ok(r) => rep.extend(r),
            Err(e) => return error_outcome(spec, &e, rep.entries),
        }
    }
    let unstable = spec.require_stable && q.stabilization.as_ref().map(|s| !s.stabilized).unwrap_or(false);
    let exit_code = if !rep.passed() {
        EXIT_CHECK_FAILED
    } else if unstable {
        EXIT_UNSTABLE
    } else {
        EXIT_PASS
    };
    let status = match exit_code {
        EXIT_PASS => "pass",
        EXIT_UNSTABLE => "unstable",
        _ => "fail",
    };
    let report = json!({
        "format_version": FORMAT_VERSION,
        "spec": spec_summary(spec),
        "status": status,
        "exit_code": exit_code,
        "flavor": p.flavor,
        "hilbert": hilbert_json(&q),
        "ambient_dims": q.ambient_dims,
        "ideal_dims": q.ideal_dims,
        "stabilization": q.stabilization,
        "checks": rep.entries,
    });
    Outcome { exit_code, presentation: Some(presentation_json(spec, &built, &q)), report }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_roundtrip_through_json() {
        for name in FIXTURES {
            let s = fixture(name).unwrap();
            assert_eq!(ProblemSpec::from_json(&s.to_json()).unwrap(), s, "{name}");
        }
    }

    #[test]
    fn malformed_quadruple_is_parse_error() {
        let mut v: Value = serde_json::from_str(&fixture("flip").unwrap().to_json()).unwrap();
        v["algebra"]["structure"][0] = json!([0, 0, "x", "1"]);
        let e = ProblemSpec::from_json(&v.to_string()).unwrap_err();
        assert!(matches!(e, Error::Parse(_)), "{e}");
    }

    #[test]
    fn exit_codes() {
        let mut s = fixture("flip").unwrap();
        s.degree = 2;
        let o = run_pipeline(&s);
        assert_eq!(o.exit_code, EXIT_PASS, "{}", o.report_json());
        let o = run_pipeline(&fixture("flip-broken").unwrap());
        assert_eq!(o.exit_code, EXIT_CHECK_FAILED);
        assert_eq!(o.report["error"]["kind"], "NotYangBaxter");
        s.field = "Fp:4".into();
        assert_eq!(run_pipeline(&s).exit_code, EXIT_INPUT_ERROR);
        let mut s = fixture("flip").unwrap();
        s.checks = vec!["galois".into()];
        assert_eq!(run_pipeline(&s).exit_code, EXIT_INPUT_ERROR);
    }

    #[test]
    fn unstable_horizon_exits_3() {
        let mut s = fixture("flip-hopf").unwrap();
        s.horizon = 0;
        s.checks = vec!["stability".into()];
        let o = run_pipeline(&s);
        assert_eq!(o.exit_code, EXIT_CHECK_FAILED, "{}", o.report_json());
        s.checks = vec!["dual-bases".into()];
        assert_eq!(run_pipeline(&s).exit_code, EXIT_UNSTABLE);
    }
}
