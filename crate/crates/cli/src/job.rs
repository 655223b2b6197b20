//! Job specifications and their execution.

use std::path::PathBuf;
use std::time::Instant;

use fplift_core::arith::is_prime;
use fplift_core::chain::{adversarial_set, build_chain, build_special_chain, verify_chain, Chain, Construction, SpecialForm};
use fplift_core::demos::{
    count_incidences, lattice_side, normalize_line, sharpness_lattice, sparse_square_terms, transfer_report, PointLineConfig, TransferMode,
    TransferReport,
};
use fplift_core::domain::{IntPolyRing, Integers};
use fplift_core::linalg::{check_linear_isomorphism, rectify_linear};
use fplift_core::poly::{BoundProfile, IntPoly};
use fplift_core::rectify::{guarantee_gate, rectify_with, verify_ring_isomorphism, BoundPolicy, RectifiedSet, RectifyOptions, StopReason, VerificationReport};
use fplift_core::resultant::{first_nonzero_principal, resultant, subresultants};
use fplift_core::text::{format_poly, max_var_index, parse_poly, VarStyle};
use fplift_core::tower::{Certificate, Tower, TowerElem};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::doc::{self, field, field_str, field_u64, Format};
use crate::error::CliError;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Rectify,
    Verify,
    LiftLinear,
    Resultant,
    Subres,
    Chain,
    Adversarial,
    Demo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Rectify => "rectify",
            Command::Verify => "verify",
            Command::LiftLinear => "lift-linear",
            Command::Resultant => "resultant",
            Command::Subres => "subres",
            Command::Chain => "chain",
            Command::Adversarial => "adversarial",
            Command::Demo => "demo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Special {
    Mersenne,
    Fermat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoMode {
    /// The `r^4`-incidence lattice over `Z`.
    Lattice,
    Sumproduct,
    Inverse,
    PolyImage,
    Incidence,
    SparseSquare,
    /// Seeded random rectifications.
    Sweep,
}

impl DemoMode {
    fn name(self) -> &'static str {
        match self {
            DemoMode::Lattice => "lattice",
            DemoMode::Sumproduct => "sumproduct",
            DemoMode::Inverse => "inverse",
            DemoMode::PolyImage => "poly-image",
            DemoMode::Incidence => "incidence",
            DemoMode::SparseSquare => "sparse-square",
            DemoMode::Sweep => "sweep",
        }
    }
}

/// One job. Which fields matter depends on `command`; [`validate`] checks
/// them before anything runs.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub t: Option<u32>,
    pub set: Vec<u64>,
    /// Elimination order, 1-based.
    pub order: Option<Vec<usize>>,
    /// `f` and `g` for resultants; `f` for the polynomial demos.
    pub polys: Vec<String>,
    /// Variable to eliminate, 1-based.
    pub var: usize,
    pub target: Option<String>,
    pub special: Option<Special>,
    pub mode: Option<DemoMode>,
    pub n: Option<u64>,
    pub points: Vec<(u64, u64)>,
    pub lines: Vec<(u64, u64, u64)>,
    pub count: Option<usize>,
    /// Document to re-verify.
    pub input: Option<PathBuf>,
    pub force: bool,
    pub require_guarantee: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            p: None,
            k: None,
            t: None,
            set: Vec::new(),
            order: None,
            polys: Vec::new(),
            var: 1,
            target: None,
            special: None,
            mode: None,
            n: None,
            points: Vec::new(),
            lines: Vec::new(),
            count: None,
            input: None,
            force: false,
            require_guarantee: false,
            seed: DEFAULT_SEED,
            out: None,
            format: Format::Text,
        }
    }
}

/// Exit status and document of a finished job.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: u8,
    pub doc: Value,
}

fn usage(s: impl Into<String>) -> CliError {
    CliError::Usage(s.into())
}

fn need<T: Copy>(v: Option<T>, flag: &str, cmd: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{cmd} needs --{flag}")))
}

fn need_poly<'a>(spec: &'a JobSpec, i: usize, flag: &str) -> Result<&'a str, CliError> {
    spec.polys.get(i).map(String::as_str).ok_or_else(|| usage(format!("{} needs --{flag}", spec.command.name())))
}

/// Per-command parameter checks.
pub fn validate(spec: &JobSpec) -> Result<(), CliError> {
    let cmd = spec.command.name();
    let k_ok = |k: u32, min: u32| if k < min { Err(usage(format!("{cmd} needs --k >= {min}"))) } else { Ok(()) };
    if spec.t == Some(0) {
        return Err(usage("--t must be at least 1"));
    }
    match spec.command {
        Command::Rectify | Command::LiftLinear => {
            need(spec.p, "p", cmd)?;
            k_ok(need(spec.k, "k", cmd)?, 1)?;
            if spec.set.is_empty() {
                return Err(usage(format!("{cmd} needs a non-empty --set")));
            }
            if let Some(order) = &spec.order {
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != (1..=spec.set.len()).collect::<Vec<_>>() {
                    return Err(usage(format!("--order must be a permutation of 1..{}", spec.set.len())));
                }
            }
        }
        Command::Verify => {
            if spec.input.is_none() {
                return Err(usage("verify needs a document path"));
            }
        }
        Command::Resultant | Command::Subres => {
            need_poly(spec, 0, "f")?;
            need_poly(spec, 1, "g")?;
            if spec.var == 0 {
                return Err(usage("--var is 1-based"));
            }
        }
        Command::Chain => {
            let target = spec.target.as_deref().ok_or_else(|| usage("chain needs --target"))?;
            target.parse::<BigUint>().map_err(|_| usage(format!("--target {target:?} is not a non-negative integer")))?;
            k_ok(spec.k.unwrap_or(2), if spec.special.is_some() { 2 } else { 1 })?;
        }
        Command::Adversarial => {
            need(spec.p, "p", cmd)?;
            k_ok(need(spec.k, "k", cmd)?, 3)?;
        }
        Command::Demo => {
            let mode = spec.mode.ok_or_else(|| usage("demo needs --mode"))?;
            match mode {
                DemoMode::Lattice => {
                    need(spec.n, "n", "demo lattice")?;
                }
                DemoMode::Sumproduct | DemoMode::Inverse | DemoMode::PolyImage => {
                    need(spec.p, "p", "this demo")?;
                    if spec.set.is_empty() {
                        return Err(usage("this demo needs a non-empty --set"));
                    }
                    if mode == DemoMode::PolyImage {
                        need_poly(spec, 0, "f")?;
                    }
                }
                DemoMode::Incidence => {
                    need(spec.p, "p", "demo incidence")?;
                    if spec.points.is_empty() || spec.lines.is_empty() {
                        return Err(usage("demo incidence needs --points and --lines"));
                    }
                }
                DemoMode::SparseSquare => {
                    need_poly(spec, 0, "f")?;
                }
                DemoMode::Sweep => {}
            }
        }
    }
    Ok(())
}

/// Validates and runs a job. Failures become documents too, with the
/// matching exit status.
pub fn run(spec: &JobSpec) -> Outcome {
    let start = Instant::now();
    let (code, mut doc) = match validate(spec).and_then(|()| dispatch(spec)) {
        Ok(done) => done,
        Err(e) => (e.exit_code(), failure(spec, &e)),
    };
    if let Some(m) = doc.as_object_mut() {
        m.insert("timing".into(), json!({ "elapsed_ms": start.elapsed().as_millis() as u64 }));
    }
    Outcome { code, doc }
}

fn dispatch(spec: &JobSpec) -> Result<(u8, Value), CliError> {
    match spec.command {
        Command::Rectify => run_rectify(spec),
        Command::Verify => run_verify(spec),
        Command::LiftLinear => run_lift_linear(spec),
        Command::Resultant => run_resultant(spec, false),
        Command::Subres => run_resultant(spec, true),
        Command::Chain => run_chain(spec),
        Command::Adversarial => run_adversarial(spec),
        Command::Demo => run_demo(spec),
    }
}

/// `command` and `input`, the head of every document.
fn head(spec: &JobSpec) -> Map<String, Value> {
    let mut input = Map::new();
    let mut put = |k: &str, v: Value| {
        input.insert(k.into(), v);
    };
    match spec.command {
        Command::Rectify => {
            let k = spec.k.unwrap_or(0);
            put("p", json!(spec.p));
            put("k", json!(k));
            put("t", json!(spec.t.unwrap_or(k)));
            put("set", json!(spec.set));
            if let Some(o) = &spec.order {
                put("order", json!(o));
            }
            put("force", json!(spec.force));
            put("require_guarantee", json!(spec.require_guarantee));
        }
        Command::Verify => put("document", json!(spec.input.as_ref().map(|p| p.display().to_string()))),
        Command::LiftLinear => {
            put("p", json!(spec.p));
            put("k", json!(spec.k));
            put("set", json!(spec.set));
        }
        Command::Resultant | Command::Subres => {
            put("f", json!(spec.polys.first()));
            put("g", json!(spec.polys.get(1)));
            put("var", json!(format!("x{}", spec.var)));
        }
        Command::Chain => {
            put("target", json!(spec.target));
            put("k", json!(spec.k.unwrap_or(2)));
            put("special", json!(spec.special.map(|s| if s == Special::Mersenne { "mersenne" } else { "fermat" })));
        }
        Command::Adversarial => {
            put("p", json!(spec.p));
            put("k", json!(spec.k));
        }
        Command::Demo => {
            let mode = spec.mode;
            put("mode", json!(mode.map(DemoMode::name)));
            match mode {
                Some(DemoMode::Lattice) => put("n", json!(spec.n)),
                Some(DemoMode::Sumproduct | DemoMode::Inverse | DemoMode::PolyImage) => {
                    put("p", json!(spec.p));
                    put("set", json!(spec.set));
                    if mode == Some(DemoMode::PolyImage) {
                        put("f", json!(spec.polys.first()));
                    }
                    put("force", json!(spec.force));
                }
                Some(DemoMode::Incidence) => {
                    put("p", json!(spec.p));
                    put("points", json!(spec.points.iter().map(|&(x, y)| format!("{x}:{y}")).collect::<Vec<_>>()));
                    put("lines", json!(spec.lines.iter().map(|&(a, b, c)| format!("{a}:{b}:{c}")).collect::<Vec<_>>()));
                    put("force", json!(spec.force));
                }
                Some(DemoMode::SparseSquare) => put("f", json!(spec.polys.first())),
                Some(DemoMode::Sweep) => {
                    put("seed", json!(spec.seed));
                    put("count", json!(spec.count.unwrap_or(SWEEP_COUNT)));
                }
                None => {}
            }
        }
    }
    let mut m = Map::new();
    m.insert("command".into(), json!(spec.command.name()));
    m.insert("input".into(), Value::Object(input));
    m
}

fn failure(spec: &JobSpec, e: &CliError) -> Value {
    let mut m = head(spec);
    m.insert("status".into(), json!(e.status()));
    if let (Command::Rectify, Some(p), Some(k)) = (spec.command, spec.p, spec.k) {
        if !spec.set.is_empty() && k >= 1 {
            let gate = guarantee_gate(spec.set.len(), k as u64, spec.t.unwrap_or(k), p);
            m.insert("flags".into(), json!({ "guaranteed": gate.guaranteed, "exact_ok": gate.exact_ok, "verified": false }));
        }
    }
    m.insert("error".into(), json!(e.to_string()));
    Value::Object(m)
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::RationalFactorization => "rational-factorization".into(),
        Certificate::NormShift(s) => format!("norm-shift {s}"),
        Certificate::Checked => "checked".into(),
    }
}

fn tower_value(t: &Tower) -> Value {
    let levels: Vec<Value> = t
        .serialize()
        .into_iter()
        .zip(t.levels())
        .map(|((g, poly, anchor), l)| json!({ "generator": g, "poly": poly, "anchor": anchor, "certificate": certificate_text(&l.certificate) }))
        .collect();
    json!({ "degree": t.degree(), "levels": levels })
}

fn points_value(t: &Tower, residues: &[u64], points: &[TowerElem]) -> Value {
    residues.iter().zip(points).map(|(a, b)| json!({ "residue": a, "lift": t.elem_text(b) })).collect()
}

fn verification_value(profile: BoundProfile, r: &VerificationReport) -> Value {
    let discrepancy = r.discrepancy.as_ref().map(|d| {
        json!({ "poly": format_poly(&d.poly, &VarStyle::X), "zero_mod_p": d.zero_mod_p, "zero_lifted": d.zero_lifted })
    });
    json!({
        "profile": { "k": profile.k, "t": profile.t },
        "checked": r.checked,
        "relations": r.relations,
        "discrepancy": discrepancy,
    })
}

/// Flags, tower, points, ledger, levels and verification of a rectification.
fn rectified_fields(m: &mut Map<String, Value>, r: &RectifiedSet) {
    m.insert("flags".into(), json!({ "guaranteed": r.guaranteed, "exact_ok": r.exact_ok, "verified": r.verified }));
    m.insert("tower".into(), tower_value(&r.tower));
    m.insert("points".into(), points_value(&r.tower, &r.input, &r.points));
    m.insert("anchors".into(), json!(r.anchors));
    let ledger = &r.chain.ledger;
    m.insert(
        "ledger".into(),
        json!({
            "k": ledger.k,
            "t": ledger.t,
            "u": ledger.u.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "v": ledger.v.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }),
    );
    let levels: Vec<Value> = r
        .chain
        .levels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            json!({
                "level": i,
                "relations": l.relations.len(),
                "pivot": l.pivot,
                "delta": l.delta,
                "y_vars": l.y_vars,
                "max_norm": l.max_norm.to_string(),
            })
        })
        .collect();
    m.insert("levels".into(), Value::Array(levels));
    m.insert("stop".into(), json!(if r.chain.stop == StopReason::Empty { "empty" } else { "zero" }));
    m.insert("verification".into(), verification_value(r.profile, &r.report));
}

fn run_rectify(spec: &JobSpec) -> Result<(u8, Value), CliError> {
    let (p, k) = (spec.p.unwrap(), spec.k.unwrap());
    let mut opts = RectifyOptions::new(k);
    opts.t = spec.t;
    opts.order = spec.order.as_ref().map(|o| o.iter().map(|i| i - 1).collect());
    opts.require_guarantee = spec.require_guarantee;
    if spec.force {
        opts.policy = BoundPolicy::Force;
    }
    let r = rectify_with(&spec.set, p, &opts)?;
    let mut m = head(spec);
    m.insert("status".into(), json!(if r.verified { "verified" } else { "verification-failed" }));
    rectified_fields(&mut m, &r);
    Ok((if r.verified { 0 } else { 3 }, Value::Object(m)))
}

fn run_verify(spec: &JobSpec) -> Result<(u8, Value), CliError> {
    let path = spec.input.as_ref().unwrap();
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let recorded = doc::parse(&src)?;
    let command = field_str(&recorded, &["command"])?;
    let mut m = head(spec);
    m.insert("recorded_command".into(), json!(command));
    let (verified, fresh, recorded_part) = match command {
        "rectify" => {
            if field_str(&recorded, &["status"])? != "verified" {
                return Err(CliError::Format("only verified rectifications can be re-verified".into()));
            }
            let p = field_u64(&recorded, &["input", "p"])?;
            let k = field_u64(&recorded, &["verification", "profile", "k"])?;
            let t = field_u64(&recorded, &["verification", "profile", "t"])?;
            let t = u32::try_from(t).map_err(|_| CliError::Format("profile degree too large".into()))?;
            if k == 0 || t == 0 {
                return Err(CliError::Format("profile entries must be positive".into()));
            }
            let levels = field(&recorded, &["tower", "levels"])?
                .as_array()
                .ok_or_else(|| CliError::Format("`tower.levels` is not a list".into()))?
                .iter()
                .map(|l| Ok((field_str(l, &["generator"])?.to_owned(), field_str(l, &["poly"])?.to_owned(), field_u64(l, &["anchor"])?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let tower = Tower::deserialize(p, &levels)?;
            let pts = field(&recorded, &["points"])?.as_array().ok_or_else(|| CliError::Format("`points` is not a list".into()))?;
            let mut residues = Vec::new();
            let mut points = Vec::new();
            let mut anchored = true;
            for pt in pts {
                let a = field_u64(pt, &["residue"])?;
                let b = tower.parse_elem(field_str(pt, &["lift"])?)?;
                anchored &= tower.apply_anchor(&b).ok() == Some(a % p);
                residues.push(a);
                points.push(b);
            }
            let profile = BoundProfile::new(k, t);
            let report = verify_ring_isomorphism(&residues, p, &tower, &points, profile)?;
            m.insert("tower_degree".into(), json!(tower.degree()));
            m.insert("anchored".into(), json!(anchored));
            (report.passed() && anchored, verification_value(profile, &report), field(&recorded, &["verification"])?.clone())
        }
        "chain" | "adversarial" => {
            let k = field_u64(&recorded, &["chain", "profile", "k"])?;
            let t = field_u64(&recorded, &["chain", "profile", "t"])?;
            let t = u32::try_from(t).map_err(|_| CliError::Format("profile degree too large".into()))?;
            if k == 0 || t == 0 {
                return Err(CliError::Format("profile entries must be positive".into()));
            }
            let lines = field(&recorded, &["chain", "lines"])?
                .as_array()
                .ok_or_else(|| CliError::Format("`chain.lines` is not a list".into()))?
                .iter()
                .map(|l| l.as_str().ok_or_else(|| CliError::Format("chain lines must be strings".into())))
                .collect::<Result<Vec<_>, _>>()?;
            let c = Chain::from_text(&lines.join("\n"), BoundProfile::new(k, t))?;
            let mut ok = verify_chain(&c);
            let end = match command {
                "chain" => field_str(&recorded, &["input", "target"])?.to_owned(),
                _ => field_u64(&recorded, &["input", "p"])?.to_string(),
            };
            ok &= c.last().to_string() == end;
            let fresh = json!({ "steps": c.steps(), "distinct_values": c.distinct_values(), "ends_at": c.last().to_string() });
            let recorded_part = json!({
                "steps": field(&recorded, &["chain", "steps"])?,
                "distinct_values": field(&recorded, &["chain", "distinct_values"])?,
                "ends_at": end,
            });
            (ok, fresh, recorded_part)
        }
        other => return Err(usage(format!("verify handles rectify, chain and adversarial documents, not {other}"))),
    };
    let matches = fresh == recorded_part;
    m.insert("status".into(), json!(if verified && matches { "verified" } else { "verification-failed" }));
    m.insert("flags".into(), json!({ "verified": verified, "matches_recorded": matches }));
    m.insert("verification".into(), fresh);
    Ok((if verified && matches { 0 } else { 3 }, Value::Object(m)))
}

fn run_lift_linear(spec: &JobSpec) -> Result<(u8, Value), CliError> {
    let (p, k) = (spec.p.unwrap(), spec.k.unwrap());
    let lin = rectify_linear(&spec.set, p, k)?;
    let residues: Vec<u64> = spec.set.iter().map(|v| v % p).collect();
    let verified = check_linear_isomorphism(&residues, p, &lin.points, k)?;
    let mut m = head(spec);
    m.insert("status".into(), json!(if verified { "verified" } else { "verification-failed" }));
    m.insert("flags".into(), json!({ "guaranteed": lin.guaranteed, "verified": verified }));
    m.insert("multiplier".into(), json!(lin.multiplier.to_string()));
    m.insert(
        "points".into(),
        residues.iter().zip(&lin.points).map(|(a, b)| json!({ "residue": a, "lift": b.to_string() })).collect(),
    );
    Ok((if verified { 0 } else { 3 }, Value::Object(m)))
}

fn run_resultant(spec: &JobSpec, full: bool) -> Result<(u8, Value), CliError> {
    let (fs, gs) = (spec.polys[0].as_str(), spec.polys[1].as_str());
    let style = VarStyle::X;
    let nvars = [max_var_index(fs, &style), max_var_index(gs, &style), Some(spec.var - 1)].into_iter().flatten().max().unwrap() + 1;
    let var = spec.var - 1;
    let f = parse_poly(fs, nvars, &style)?;
    let g = parse_poly(gs, nvars, &style)?;
    let ring = IntPolyRing::new(nvars);
    let (fu, gu) = (f.to_univariate(var), g.to_univariate(var));
    let mut m = head(spec);
    m.insert("status".into(), json!("ok"));
    m.insert("degrees".into(), json!([fu.deg_usize(), gu.deg_usize()]));
    if full {
        let seq = subresultants(&ring, &fu, &gu)?;
        let entries: Vec<Value> = seq
            .entries
            .iter()
            .enumerate()
            .map(|(i, s)| {
                json!({
                    "index": i,
                    "principal": format_poly(seq.principal(i), &style),
                    "poly": format_poly(&IntPoly::from_univariate(nvars, var, s), &style),
                })
            })
            .collect();
        m.insert("first_nonzero_principal".into(), json!(first_nonzero_principal(&ring, &seq)));
        m.insert("subresultants".into(), Value::Array(entries));
    } else {
        let r = resultant(&ring, &fu, &gu);
        m.insert("resultant".into(), json!(format_poly(&r, &style)));
    }
    Ok((0, Value::Object(m)))
}

fn construction_text(c: Construction) -> String {
    match c {
        Construction::Unary => "unary".into(),
        Construction::Blocks { s, ell } => format!("blocks (s = {s}, ell = {ell})"),
        Construction::Mersenne { n } => format!("mersenne (n = {n})"),
        Construction::Fermat { n } => format!("fermat (n = {n})"),
        Construction::External => "external".into(),
    }
}

fn chain_value(c: &Chain) -> Value {
    json!({
        "construction": construction_text(c.construction),
        "profile": { "k": c.profile.k, "t": c.profile.t },
        "steps": c.steps(),
        "step_bound": c.step_bound(),
        "distinct_values": c.distinct_values(),
        "lines": c.to_text().lines().collect::<Vec<_>>(),
    })
}

fn run_chain(spec: &JobSpec) -> Result<(u8, Value), CliError> {
    let target: BigUint = spec.target.as_deref().unwrap().parse().unwrap();
    let k = spec.k.unwrap_or(2);
    let c = match spec.special {
        Some(s) => {
            let form = if s == Special::Mersenne { SpecialForm::Mersenne } else { SpecialForm::Fermat };
            let mut c = build_special_chain(&target, form)?;
            // A (2,2)-chain is a (k,k)-chain for every k >= 2.
            c.profile = BoundProfile::square(k);
            c
        }
        None => build_chain(&target, k)?,
    };
    let verified = verify_chain(&c) && c.last().to_biguint().as_ref() == Some(&target);
    let mut m = head(spec);
    m.insert("status".into(), json!(if verified { "verified" } else { "verification-failed" }));
    m.insert("flags".into(), json!({ "verified": verified }));
    m.insert("chain".into(), chain_value(&c));
    Ok((if verified { 0 } else { 3 }, Value::Object(m)))
}

fn run_adversarial(spec: &JobSpec) -> Result<(u8, Value), CliError> {
    let s = adversarial_set(spec.p.unwrap(), spec.k.unwrap())?;
    let verified = verify_chain(&s.chain);
    let mut m = head(spec);
    m.insert("status".into(), json!(if verified { "verified" } else { "verification-failed" }));
    m.insert("flags".into(), json!({ "verified": verified }));
    m.insert("residues".into(), json!(s.residues));
    m.insert("residue_count".into(), json!(s.residues.len()));
    m.insert("chain_value_count".into(), json!(s.chain_value_count()));
    m.insert("chain".into(), chain_value(&s.chain));
    Ok((if verified { 0 } else { 3 }, Value::Object(m)))
}

const SWEEP_COUNT: usize = 10;

fn transfer_fields(m: &mut Map<String, Value>, rep: &TransferReport) -> u8 {
    let equal = rep.all_equal();
    m.insert("status".into(), json!(if equal { "verified" } else { "verification-failed" }));
    m.insert("lifted_set".into(), json!(rep.lifted_set));
    m.insert("profile".into(), json!({ "k": rep.profile.k, "t": rep.profile.t }));
    m.insert(
        "quantities".into(),
        rep.quantities.iter().map(|q| json!({ "name": q.name, "over_fp": q.over_fp, "over_tower": q.over_tower })).collect(),
    );
    m.insert("all_equal".into(), json!(equal));
    rectified_fields(m, &rep.rectified);
    if equal {
        0
    } else {
        3
    }
}

fn run_demo(spec: &JobSpec) -> Result<(u8, Value), CliError> {
    let mode = spec.mode.unwrap();
    let mut m = head(spec);
    let code = match mode {
        DemoMode::Lattice => {
            let n = spec.n.unwrap();
            let cfg = sharpness_lattice(n)?;
            let r = lattice_side(n);
            let inc = count_incidences(&cfg, &Integers);
            let equal = inc == r.pow(4);
            m.insert("status".into(), json!(if equal { "verified" } else { "verification-failed" }));
            m.insert("r".into(), json!(r));
            m.insert("points".into(), json!(cfg.points.len()));
            m.insert("lines".into(), json!(cfg.lines.len()));
            m.insert("incidences".into(), json!(inc));
            m.insert("r4".into(), json!(r.pow(4)));
            if equal {
                0
            } else {
                3
            }
        }
        DemoMode::Sumproduct | DemoMode::Inverse | DemoMode::PolyImage | DemoMode::Incidence => {
            let p = spec.p.unwrap();
            let tm = match mode {
                DemoMode::Sumproduct => TransferMode::SumProduct,
                DemoMode::Inverse => TransferMode::Inverse,
                DemoMode::PolyImage => TransferMode::PolynomialImage(parse_poly(&spec.polys[0], 1, &VarStyle::X)?),
                _ => {
                    let lines = spec
                        .lines
                        .iter()
                        .map(|&l| normalize_line(l, p).ok_or_else(|| usage(format!("{l:?} is not a line mod {p}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let points = spec.points.iter().map(|&(x, y)| (x % p, y % p)).collect();
                    TransferMode::Incidence(PointLineConfig { points, lines })
                }
            };
            let rep = transfer_report(&spec.set, p, &tm, spec.force)?;
            transfer_fields(&mut m, &rep)
        }
        DemoMode::SparseSquare => {
            let src = &spec.polys[0];
            let nvars = max_var_index(src, &VarStyle::X).map_or(1, |i| i + 1);
            let f = parse_poly(src, nvars, &VarStyle::X)?;
            let (n, n2) = sparse_square_terms(&f);
            m.insert("status".into(), json!("ok"));
            m.insert("terms".into(), json!(n));
            m.insert("square_terms".into(), json!(n2));
            m.insert("square".into(), json!(format_poly(&f.pow(2), &VarStyle::X)));
            0
        }
        DemoMode::Sweep => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut runs = Vec::new();
            let (mut verified, mut aborted, mut failed) = (0, 0, 0);
            for _ in 0..spec.count.unwrap_or(SWEEP_COUNT) {
                let p = loop {
                    let c = rng.gen_range(101..10_007u64);
                    if is_prime(c) {
                        break c;
                    }
                };
                let k = rng.gen_range(2..=3u32);
                let n = rng.gen_range(1..=2usize);
                let mut set: Vec<u64> = Vec::new();
                while set.len() < n {
                    let a = rng.gen_range(0..p);
                    if !set.contains(&a) {
                        set.push(a);
                    }
                }
                let (status, degree) = match rectify_with(&set, p, &RectifyOptions::new(k)) {
                    Ok(r) if r.verified => {
                        verified += 1;
                        ("verified", Some(r.tower_degree()))
                    }
                    Ok(r) => {
                        failed += 1;
                        ("verification-failed", Some(r.tower_degree()))
                    }
                    Err(e) => {
                        let e = CliError::from(e);
                        if e.exit_code() == 2 {
                            aborted += 1;
                        } else {
                            failed += 1;
                        }
                        (e.status(), None)
                    }
                };
                runs.push(json!({ "p": p, "k": k, "set": set, "status": status, "tower_degree": degree }));
            }
            m.insert("status".into(), json!(if failed == 0 { "verified" } else { "verification-failed" }));
            m.insert("summary".into(), json!({ "verified": verified, "bound_exceeded": aborted, "failed": failed }));
            m.insert("runs".into(), Value::Array(runs));
            if failed == 0 {
                0
            } else {
                3
            }
        }
    };
    Ok((code, Value::Object(m)))
}
