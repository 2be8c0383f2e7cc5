use std::path::Path;

use exactnum::{ComplexBox, Interval, Rational};
use otkit::converse::{converse_with_cap, find_simplicity_witness, sol3_demo, ConverseVerdict, SimplicityWitness};
use otkit::liealg::NijenhuisReport;
use otkit::metrics::{lck_condition, pluriclosed_condition, rank_bound_probe, RankBranch, RankVerdict};
use otkit::unitlat::{check_admissible_with_cap, log_image, log_vector, matrix_c_with_cap};
use otkit::wire::{from_q_mat, to_q, Q};
use otkit::{
    forward_lattice, nijenhuis, normalize_meta_abelian_lck, standard_hermitian, verify_lck, verify_vaisman,
    Admissibility, Branch, FieldSpec, HermitianStructure, KForm, LckReport, LieAlgebra, LieAlgebraSpec, MatrixFamily,
    OtError, OtLikeSpec, UnitGroup, UnitGroupSpec,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::job::{Branch as JobBranch, Command, JobSpec};
use crate::report::{Outcome, Provenance};

/// Precision used for the Sol³ eigenvalue enclosures (width < 2^-128).
const SOL3_BITS: u32 = 128;

struct Ctx {
    precision: u32,
    cap: u32,
    hashes: Vec<String>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Error(format!("reading {}: {e}", path.display())))?;
        self.hashes.push(hex::encode(Sha256::digest(&bytes)));
        Ok(bytes)
    }

    fn parse<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, Failure> {
        let bytes = self.read(path)?;
        serde_json::from_slice(&bytes).map_err(|e| Failure::Error(format!("parsing {}: {e}", path.display())))
    }
}

enum Failure {
    /// A verdict-level rejection with whatever partial report exists.
    Rejected(String, Value),
    Error(String),
}

impl From<OtError> for Failure {
    fn from(e: OtError) -> Self {
        if is_rejection(&e) {
            Failure::Rejected(e.to_string(), json!({ "error": error_kind(&e), "message": e.to_string() }))
        } else {
            Failure::Error(e.to_string())
        }
    }
}

/// Errors that are answers about the input rather than failures to compute.
fn is_rejection(e: &OtError) -> bool {
    matches!(
        e,
        OtError::NotUnit(_)
            | OtError::NotTotallyPositive(_)
            | OtError::NotAdmissible(_)
            | OtError::WrongRank { .. }
            | OtError::ColumnSumViolation { .. }
            | OtError::NotLckOtLike
            | OtError::NoLeeCandidate
            | OtError::AssumptionFailure(_)
            | OtError::NotLck(_)
            | OtError::NotUnimodular
            | OtError::NonCommuting(..)
            | OtError::NonUnimodularDet(_)
            | OtError::SignatureMismatch(_)
            | OtError::SignatureViolation { .. }
            | OtError::NonIntegerAction(_)
    )
}

fn error_kind(e: &OtError) -> &'static str {
    match e {
        OtError::NotUnit(_) => "not_unit",
        OtError::NotTotallyPositive(_) => "not_totally_positive",
        OtError::NotAdmissible(_) => "not_admissible",
        OtError::WrongRank { .. } => "wrong_rank",
        OtError::ColumnSumViolation { .. } => "column_sum_violation",
        OtError::NotLckOtLike => "not_lck_ot_like",
        OtError::NoLeeCandidate => "no_lee_candidate",
        OtError::AssumptionFailure(_) => "assumption_failure",
        OtError::NotLck(_) => "not_lck",
        OtError::NotUnimodular => "not_unimodular",
        OtError::NonCommuting(..) => "non_commuting",
        OtError::NonUnimodularDet(_) => "non_unimodular_det",
        OtError::SignatureMismatch(_) => "signature_mismatch",
        OtError::SignatureViolation { .. } => "signature_violation",
        OtError::NonIntegerAction(_) => "non_integer_action",
        _ => "error",
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

type Step = Result<(String, u8, Value), Failure>;

pub fn run(job: &JobSpec, env_cap: u32) -> Outcome {
    let mut ctx = Ctx {
        precision: job.precision.unwrap_or(64).max(16),
        cap: job.precision_cap.unwrap_or(env_cap),
        hashes: Vec::new(),
    };
    let result = dispatch(job, &mut ctx);
    let provenance = Provenance {
        input_sha256: ctx.hashes,
        tool_version: env!("CARGO_PKG_VERSION"),
        precision: ctx.precision,
        precision_cap: ctx.cap,
    };
    let name = job.command.name();
    match result {
        Ok((verdict, code, report)) => Outcome::new(name, verdict, code, provenance, report),
        Err(Failure::Rejected(msg, report)) => {
            let mut report = report;
            if let Value::Object(m) = &mut report {
                m.entry("message").or_insert(Value::String(msg));
            }
            Outcome::new(name, "rejected", 2, provenance, report)
        }
        Err(Failure::Error(msg)) => Outcome::new(name, "error", 1, provenance, json!({ "error": msg })),
    }
}

fn input(job: &JobSpec) -> Result<&Path, Failure> {
    job.input.as_deref().ok_or_else(|| Failure::Error("the job has no input file".into()))
}

fn dispatch(job: &JobSpec, ctx: &mut Ctx) -> Step {
    match job.command {
        Command::FieldInspect => field_inspect(ctx.parse(input(job)?)?, ctx),
        Command::UnitsVerify => units_verify(ctx.parse(input(job)?)?, ctx),
        Command::Admissible => admissible(ctx.parse(input(job)?)?, ctx),
        Command::BuildOt => build_ot(ctx.parse(input(job)?)?, job.branch_offsets.clone(), ctx),
        Command::VerifyLck => verify_lck_cmd(ctx.parse(input(job)?)?, ctx),
        Command::Normalize => {
            let v = ctx.parse(input(job)?)?;
            let ideal: Option<Vec<Vec<Q>>> = match &job.ideal {
                Some(p) => Some(ctx.parse(p)?),
                None => None,
            };
            normalize(v, ideal, ctx)
        }
        Command::Converse => converse_cmd(ctx.parse(input(job)?)?, job.bound.unwrap_or(5), ctx),
        Command::Metrics => {
            let branch = match job.branch.unwrap_or(JobBranch::A1) {
                JobBranch::A1 => RankBranch::A1,
                JobBranch::A3 => RankBranch::A3,
            };
            metrics(ctx.parse(input(job)?)?, job.bound.unwrap_or(3), branch, job.pairing_search.unwrap_or(true), ctx)
        }
        Command::Sol3Demo => {
            let m: Vec<Vec<i64>> = match &job.input {
                Some(p) => ctx.parse(p)?,
                None => vec![vec![2, 1], vec![1, 1]],
            };
            sol3(m, ctx)
        }
    }
}

fn field_inspect(spec: FieldSpec, ctx: &mut Ctx) -> Step {
    let (k, module) = spec.build()?;
    let (s, t) = k.signature();
    let real: Vec<Interval> = k.roots().real.iter().map(|r| r.enclosure(ctx.precision)).collect();
    let complex: Vec<ComplexBox> = k.roots().complex.iter().map(|c| c.enclosure(ctx.precision)).collect();
    let basis: Vec<Vec<Q>> = module.basis().iter().map(|b| to_q(b.coords())).collect();
    let report = json!({
        "min_poly": k.min_poly(),
        "degree": k.degree(),
        "signature": [s, t],
        "discriminant": k.min_poly().discriminant().to_string(),
        "irreducible": true,
        "real_roots": real,
        "complex_roots": complex,
        "module_basis": basis,
    });
    Ok((format!("signature ({s}, {t})"), 0, report))
}

fn units_verify(spec: UnitGroupSpec, ctx: &mut Ctx) -> Step {
    let (k, _) = spec.field.build()?;
    let mut rows = Vec::new();
    let mut ok = true;
    for g in &spec.generators {
        let e = k.element(g.iter().map(|q| q.0.clone()).collect())?;
        let unit = e.is_unit();
        let positive = e.is_totally_positive();
        ok &= unit && positive;
        let signs: Vec<i32> = (0..k.signature().0).map(|i| e.real_sign(i)).collect::<Result<_, _>>()?;
        let log = if unit { Some(log_vector(&e, ctx.precision)?) } else { None };
        rows.push(json!({
            "coords": to_q(e.coords()),
            "min_poly": e.min_poly().to_int_primitive(),
            "norm": Q(e.norm()),
            "unit": unit,
            "totally_positive": positive,
            "real_signs": signs,
            "log_vector": log,
        }));
    }
    let verdict = if ok { "verified" } else { "rejected" };
    Ok((verdict.into(), if ok { 0 } else { 2 }, json!({ "generators": rows })))
}

fn admissible(spec: UnitGroupSpec, ctx: &mut Ctx) -> Step {
    let u = spec.build()?;
    let adm = check_admissible_with_cap(&u, ctx.precision, ctx.cap)?;
    let img = log_image(&u, ctx.precision)?;
    let (verdict, code) = match &adm {
        Admissibility::Admissible { .. } => ("admissible", 0),
        Admissibility::NotAdmissible { .. } => ("not_admissible", 2),
        Admissibility::Inconclusive { .. } => ("inconclusive", 2),
    };
    Ok((verdict.into(), code, json!({ "admissibility": adm, "log_image": img })))
}

fn build_ot(spec: UnitGroupSpec, offsets: Option<Vec<Vec<i64>>>, ctx: &mut Ctx) -> Step {
    let (_, module) = spec.field.build()?;
    let u = spec.build()?;
    let adm = check_admissible_with_cap(&u, ctx.precision, ctx.cap)?;
    if !adm.is_admissible() {
        return Err(Failure::Rejected("the unit group is not admissible".into(), json!({ "admissibility": adm })));
    }
    let branch = offsets.map_or(Branch::Principal, Branch::Offsets);
    let c = matrix_c_with_cap(&u, ctx.precision, &branch, ctx.cap)?;
    let lattice = forward_lattice(&u, &module, &c)?;
    let lck = lck_condition(&u)?;
    let verdict = if c.lck { "ot_like_lck" } else { "ot_like" };
    Ok((verdict.into(), 0, json!({ "admissibility": adm, "C": c, "lck_condition": lck, "forward_lattice": lattice })))
}

fn form_json(f: &KForm<Rational>) -> Value {
    let terms: Vec<Value> = f.coeffs.iter().map(|(idx, c)| json!({ "idx": idx, "value": Q(c.clone()) })).collect();
    json!({ "degree": f.degree, "terms": terms })
}

fn lck_json(r: &LckReport<Rational>) -> Value {
    json!({
        "lck": r.lck,
        "d_theta_zero": r.d_theta_zero,
        "lee_form": to_q(&r.lee_form),
        "lee_vector": to_q(&r.lee_vector),
        "unique": r.unique,
        "solved": r.solved,
        "residual": form_json(&r.lck_residual),
    })
}

fn nijenhuis_json(r: &NijenhuisReport<Rational>) -> Value {
    json!({
        "integrable": r.integrable,
        "witness": r.witness,
        "witness_value": r.witness_value.as_ref().map(|v| to_q(v)),
    })
}

fn structure_of(v: Value) -> Result<(LieAlgebra<Rational>, HermitianStructure, Value), Failure> {
    if v.get("C").is_some() {
        let spec: OtLikeSpec = serde_json::from_value(v).map_err(|e| Failure::Error(format!("OT-like spec: {e}")))?;
        let g = spec.build()?;
        let h = standard_hermitian(spec.s, spec.t);
        let info = json!({ "kind": "ot_like", "s": spec.s, "t": spec.t, "lck_ot_like": g.is_lck_ot_like() });
        Ok((g.algebra, h, info))
    } else {
        let spec: LieAlgebraSpec =
            serde_json::from_value(v).map_err(|e| Failure::Error(format!("Lie-algebra spec: {e}")))?;
        let alg = spec.algebra()?;
        let h = spec.structure()?.ok_or_else(|| Failure::Error("the spec needs \"J\" and \"metric\"".into()))?;
        Ok((alg, h, json!({ "kind": "lie_algebra", "dim": spec.dim })))
    }
}

fn verify_lck_cmd(v: Value, _ctx: &mut Ctx) -> Step {
    let (alg, h, input) = structure_of(v)?;
    let nij = nijenhuis(&alg, &h);
    let report = match verify_lck(&alg, &h, None) {
        Ok(r) => r,
        Err(OtError::NoLeeCandidate) => {
            let body = json!({ "input": input, "nijenhuis": nijenhuis_json(&nij), "lck": null });
            return Ok(("not_lck".into(), 2, body));
        }
        Err(e) => return Err(e.into()),
    };
    let vaisman = verify_vaisman(&alg, &h, &report);
    let verdict = match (nij.integrable, report.lck, report.theta_vanishes()) {
        (false, _, _) => "not_integrable",
        (true, false, _) => "not_lck",
        (true, true, true) => "kahler",
        (true, true, false) => "lck",
    };
    let code = if verdict == "lck" || verdict == "kahler" { 0 } else { 2 };
    let body = json!({
        "input": input,
        "nijenhuis": nijenhuis_json(&nij),
        "lck": lck_json(&report),
        "vaisman": vaisman,
    });
    Ok((verdict.into(), code, body))
}

fn normalize(v: Value, ideal: Option<Vec<Vec<Q>>>, _ctx: &mut Ctx) -> Step {
    let (alg, h, _) = structure_of(v)?;
    let ideal = ideal.map(|i| from_q_mat(&i));
    let res = normalize_meta_abelian_lck(&alg, &h, ideal.as_deref())?;
    let verdict = match res.branch {
        otkit::NormalizationBranch::OtLike => "ot_like",
        otkit::NormalizationBranch::VaismanHeisenberg => "vaisman_heisenberg",
    };
    Ok((verdict.into(), 0, to_value(&res)))
}

fn verdict_name(v: &ConverseVerdict) -> &'static str {
    match v {
        ConverseVerdict::Ot => "ot",
        ConverseVerdict::NotSimple { .. } => "not_simple",
        ConverseVerdict::NotOtLike { .. } => "not_ot_like",
        ConverseVerdict::Rejected { .. } => "rejected",
    }
}

fn converse_cmd(fam: MatrixFamily, bound: i64, ctx: &mut Ctx) -> Step {
    let rep = converse_with_cap(&fam, ctx.precision, ctx.cap)?;
    let witness = if rep.verdict.is_ot() { Some(find_simplicity_witness(&fam, &rep, bound)?) } else { None };
    let code = if rep.verdict.is_ot() { 0 } else { 2 };
    let found = matches!(witness, Some(SimplicityWitness::Found { .. }));
    let body = json!({ "converse": rep, "simplicity_witness": witness, "witness_found": found });
    Ok((verdict_name(&rep.verdict).into(), code, body))
}

fn metrics(v: Value, bound: i64, branch: RankBranch, pairing_search: bool, _ctx: &mut Ctx) -> Step {
    let (field, group): (FieldSpec, Option<UnitGroup>) = if v.get("generators").is_some() {
        let spec: UnitGroupSpec =
            serde_json::from_value(v).map_err(|e| Failure::Error(format!("unit-group spec: {e}")))?;
        let u = spec.build()?;
        (spec.field, Some(u))
    } else {
        (serde_json::from_value(v).map_err(|e| Failure::Error(format!("field spec: {e}")))?, None)
    };
    let (k, _) = field.build()?;
    let mut body = serde_json::Map::new();
    if let Some(u) = &group {
        body.insert("lck_condition".into(), to_value(&lck_condition(u)?));
        let pc = match pluriclosed_condition(u, pairing_search) {
            Ok(p) => to_value(&p),
            Err(e @ OtError::SignatureViolation { .. }) => json!({ "error": error_kind(&e), "message": e.to_string() }),
            Err(e) => return Err(e.into()),
        };
        body.insert("pluriclosed".into(), pc);
    }
    let probe = rank_bound_probe(&k, bound, branch, pairing_search)?;
    let (verdict, code) = match probe.verdict {
        RankVerdict::Consistent => ("consistent", 0),
        RankVerdict::PreconditionFailed => ("precondition_failed", 0),
        RankVerdict::Inconclusive => ("inconclusive", 0),
        RankVerdict::Violation => ("violation", 2),
    };
    body.insert("rank_probe".into(), to_value(&probe));
    Ok((verdict.into(), code, Value::Object(body)))
}

fn sol3(m: Vec<Vec<i64>>, ctx: &mut Ctx) -> Step {
    let r = sol3_demo(&m, SOL3_BITS.max(ctx.precision), ctx.cap)?;
    let verdict = verdict_name(&r.converse.verdict);
    Ok((verdict.into(), 0, to_value(&r)))
}
