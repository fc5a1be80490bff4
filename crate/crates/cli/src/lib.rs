//! Command dispatch for the `freelocus` binary: parses inputs, runs one
//! decision procedure and renders a deterministic JSON or text report.

pub mod expr;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use freelocus::eval::{evaluate, fullness_test, unit_test, FullnessVerdict, MatrixTuple, UnitVerdict};
use freelocus::freealg::{FreePoly, MatrixPoly};
use freelocus::hermitian::{
    gleichstellensatz_analytic, gleichstellensatz_hermitian, real_containment_analytic, real_containment_hermitian,
    real_containment_montecarlo, real_line_probe, unsignatured_search, RealProbeVerdict, UnsignaturedVerdict,
};
use freelocus::linalg::{hermitian_signature, DenseMatrix, PrimeField};
use freelocus::linearize::{epic_linearization, identity_holds_mod_p, linearize, LinearPencil};
use freelocus::slack::{is_member_semantic, psatz_spot_check, reduce, verify_psatz, PsatzCertificate};
use freelocus::structure::{
    atomic_blocks, contain_intersection, is_atom, locus_contains, pencil_equiv, stable_assoc, AtomVerdict,
    ContainMode, ContainOptions, ContainmentStatus, StableAssocVerdict,
};
use freelocus::{Budget, Error};

use expr::{parse, ParseError};

pub const SCHEMA: &str = "freelocus/1";

pub const COMMANDS: [&str; 19] = [
    "full",
    "unit",
    "atom",
    "blocks",
    "linearize",
    "equiv",
    "stable-assoc",
    "contain",
    "contain-real-analytic",
    "contain-real-hermitian",
    "gleich",
    "gleich-hermitian",
    "signature",
    "unsignatured",
    "slack-reduce",
    "slack-member",
    "psatz-verify",
    "eval",
    "probe-real",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub n_max: usize,
    pub trials: usize,
    pub prime: u64,
    pub certified: bool,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let b = Budget::default();
        RunConfig { seed: b.seed, n_max: b.n_max, trials: b.trials, prime: b.prime, certified: false, format: Format::Json }
    }
}

impl RunConfig {
    pub fn budget(&self) -> Budget {
        Budget { seed: self.seed, n_max: self.n_max, trials: self.trials, prime: self.prime, ..Budget::default() }
    }

    fn contain_options(&self) -> ContainOptions {
        let mode = if self.certified { ContainMode::Certified } else { ContainMode::MonteCarlo };
        ContainOptions { budget: self.budget(), mode }
    }

    fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "max_size": self.n_max,
            "trials": self.trials,
            "prime": self.prime,
            "mode": if self.certified { "certified" } else { "montecarlo" },
        })
    }
}

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub body: String,
}

#[derive(Debug, thiserror::Error)]
enum InputError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl InputError {
    fn kind(&self) -> &'static str {
        match self {
            InputError::Parse(ParseError::Syntax { .. }) => "syntax_error",
            InputError::Parse(ParseError::UnknownVariable { .. }) => "unknown_variable",
            InputError::Core(_) => "precondition",
            InputError::Usage(_) => "usage",
        }
    }
}

fn usage(msg: impl Into<String>) -> InputError {
    InputError::Usage(msg.into())
}

/// `key=value` arguments, with bare values filling the expected keys in order.
struct Args {
    named: Vec<(String, String)>,
    positional: Vec<String>,
    inputs: Map<String, Value>,
}

impl Args {
    fn new(raw: &[String]) -> Self {
        let mut named = Vec::new();
        let mut positional = Vec::new();
        for a in raw {
            match a.split_once('=') {
                Some((k, v)) if !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => {
                    named.push((k.to_string(), v.to_string()))
                }
                _ => positional.push(a.clone()),
            }
        }
        positional.reverse();
        Args { named, positional, inputs: Map::new() }
    }

    fn take(&mut self, key: &str) -> Option<String> {
        if let Some(k) = self.named.iter().position(|(n, _)| n == key) {
            return Some(self.named.remove(k).1);
        }
        self.positional.pop()
    }

    fn take_all(&mut self, key: &str) -> Vec<String> {
        let mut out = Vec::new();
        while let Some(k) = self.named.iter().position(|(n, _)| n == key) {
            out.push(self.named.remove(k).1);
        }
        if out.is_empty() {
            out.extend(self.positional.pop());
        }
        out
    }

    fn required(&mut self, key: &str) -> Result<String, InputError> {
        self.take(key).ok_or_else(|| usage(format!("missing argument {key}")))
    }

    fn record(&mut self, key: &str, v: Value) {
        self.inputs.insert(key.to_string(), v);
    }

    fn matrix(&mut self, key: &str) -> Result<MatrixPoly, InputError> {
        let text = self.required(key)?;
        let m = to_matrix(&text)?;
        self.record(key, Value::String(m.to_string()));
        Ok(m)
    }

    fn free(&mut self, key: &str) -> Result<FreePoly, InputError> {
        let text = self.required(key)?;
        let p = to_free(&text)?;
        self.record(key, Value::String(p.to_string()));
        Ok(p)
    }

    fn pencil(&mut self, key: &str) -> Result<MatrixPoly, InputError> {
        let m = self.matrix(key)?;
        LinearPencil::from_matrix_poly(&m)?;
        Ok(m)
    }

    fn finish(&self) -> Result<(), InputError> {
        if let Some((k, _)) = self.named.first() {
            return Err(usage(format!("unexpected argument {k}")));
        }
        if let Some(v) = self.positional.last() {
            return Err(usage(format!("unexpected argument {v:?}")));
        }
        Ok(())
    }
}

fn to_matrix(text: &str) -> Result<MatrixPoly, InputError> {
    parse(text)?.to_matrix().map_err(|e| usage(e.0))
}

fn to_free(text: &str) -> Result<FreePoly, InputError> {
    parse(text)?.to_free().map_err(|e| usage(e.0))
}

/// Two matrix polynomials over their joint alphabet, as pencils.
fn joint_pencils(l: &MatrixPoly, m: &MatrixPoly) -> Result<(LinearPencil, LinearPencil), InputError> {
    let a = l.alphabet().join(m.alphabet());
    Ok((
        LinearPencil::from_matrix_poly(&l.clone().with_alphabet(a))?,
        LinearPencil::from_matrix_poly(&m.clone().with_alphabet(a))?,
    ))
}

struct Outcome {
    exit_code: i32,
    status: String,
    result: Value,
}

fn outcome(exit_code: i32, status: &str, result: Value) -> Outcome {
    Outcome { exit_code, status: status.to_string(), result }
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn containment_exit(s: ContainmentStatus) -> (i32, &'static str) {
    match s {
        ContainmentStatus::Proved => (EXIT_YES, "proved"),
        ContainmentStatus::Refuted => (EXIT_NO, "refuted"),
        ContainmentStatus::ConsistentUpTo => (EXIT_INCONCLUSIVE, "consistent_up_to"),
    }
}

fn cmd_full(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let f = args.matrix("f")?;
    if !f.is_square() || f.is_zero() {
        return Ok(outcome(EXIT_NO, "not_full", json!({ "reason": "not a nonzero square matrix" })));
    }
    let v = fullness_test(&f, &cfg.budget())?;
    if let FullnessVerdict::Full { .. } = v {
        return Ok(outcome(EXIT_YES, "full", value(&v)));
    }
    // an epic pencil with a zero column is an exact certificate of non-fullness
    if epic_linearization(&f) == Err(Error::NotFull) {
        let result = json!({ "verdict": v, "linearization": "zero column after constant basis change" });
        return Ok(outcome(EXIT_NO, "not_full", result));
    }
    Ok(outcome(EXIT_INCONCLUSIVE, "probably_not_full", value(&v)))
}

fn cmd_unit(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let f = args.matrix("f")?;
    if !f.is_square() {
        return Ok(outcome(EXIT_NO, "not_unit", json!({ "reason": "not square" })));
    }
    if f.degree().unwrap_or(0) == 0 {
        let det = f.constant_term().det();
        let code = if det.is_zero() { EXIT_NO } else { EXIT_YES };
        let status = if det.is_zero() { "not_unit" } else { "unit" };
        return Ok(outcome(code, status, json!({ "constant": true, "det": det })));
    }
    let v = unit_test(&f, &cfg.budget())?;
    Ok(match v {
        UnitVerdict::NotUnit { .. } => outcome(EXIT_NO, "not_unit", value(&v)),
        UnitVerdict::ProbablyUnit { .. } => outcome(EXIT_INCONCLUSIVE, "probably_unit", value(&v)),
    })
}

fn cmd_atom(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let f = args.matrix("f")?;
    let v = is_atom(&f, &cfg.budget())?;
    let (code, status) = match v {
        AtomVerdict::Yes { .. } => (EXIT_YES, "atom"),
        AtomVerdict::No { .. } => (EXIT_NO, "not_atom"),
        AtomVerdict::Inconclusive { .. } => (EXIT_INCONCLUSIVE, "inconclusive"),
    };
    Ok(outcome(code, status, value(&v)))
}

fn cmd_blocks(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let f = args.matrix("f")?;
    let d = atomic_blocks(&f, &cfg.budget())?;
    let mut result = value(&d);
    result["block_count"] = json!(d.block_count());
    Ok(if d.complete {
        outcome(EXIT_YES, "complete", result)
    } else {
        outcome(EXIT_INCONCLUSIVE, "incomplete", result)
    })
}

fn cmd_linearize(args: &mut Args) -> Result<Outcome, InputError> {
    let f = args.matrix("f")?;
    let raw = linearize(&f)?;
    let epic = match epic_linearization(&f) {
        Ok(r) => Some(r),
        Err(Error::NotFull) => None,
        Err(e) => return Err(e.into()),
    };
    let checked = identity_holds_mod_p(&f, &raw, &[1, 2, 3], 10, 0);
    let result = json!({
        "linearization": raw,
        "epic": epic,
        "identity_checked_mod_p": checked,
    });
    Ok(outcome(EXIT_YES, "linearized", result))
}

fn cmd_equiv(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (l, m) = (args.pencil("l")?, args.pencil("m")?);
    let (l, m) = joint_pencils(&l, &m)?;
    Ok(match pencil_equiv(&l, &m, cfg.seed)? {
        Some(w) => outcome(EXIT_YES, "equivalent", json!({ "witness": w })),
        None => outcome(EXIT_NO, "not_equivalent", json!({ "witness": null })),
    })
}

fn cmd_stable_assoc(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (f, g) = (args.matrix("f")?, args.matrix("g")?);
    let v = stable_assoc(&f, &g, &cfg.budget())?;
    let (code, status) = match v {
        StableAssocVerdict::Equivalent { .. } => (EXIT_YES, "equivalent"),
        StableAssocVerdict::NotEquivalent { .. } => (EXIT_NO, "not_equivalent"),
        StableAssocVerdict::Inconclusive { .. } => (EXIT_INCONCLUSIVE, "inconclusive"),
    };
    Ok(outcome(code, status, value(&v)))
}

fn cmd_contain(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let texts = args.take_all("f");
    if texts.is_empty() {
        return Err(usage("missing argument f"));
    }
    let fs = texts.iter().map(|t| to_matrix(t)).collect::<Result<Vec<_>, _>>()?;
    let h = args.matrix("h")?;
    let opts = cfg.contain_options();
    if let [f] = fs.as_slice() {
        args.record("f", Value::String(f.to_string()));
        let v = locus_contains(f, &h, &opts)?;
        let (code, status) = containment_exit(v.status());
        return Ok(outcome(code, status, value(&v)));
    }
    args.record("f", fs.iter().map(|f| Value::String(f.to_string())).collect());
    let v = contain_intersection(&fs, &h, &opts)?;
    let (code, status) = containment_exit(v.status);
    Ok(outcome(code, status, value(&v)))
}

fn cmd_contain_real_analytic(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (f, h) = (args.matrix("f")?, args.matrix("h")?);
    let v = real_containment_analytic(&f, &h, &cfg.contain_options())?;
    let (code, status) = containment_exit(v.status());
    Ok(outcome(code, status, value(&v)))
}

fn cmd_contain_real_hermitian(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (f, h) = (args.matrix("f")?, args.matrix("h")?);
    let search = unsignatured_search(&f, &cfg.budget())?;
    let v = match search.witness() {
        Some(w) => real_containment_hermitian(&f, &h, w, &cfg.contain_options())?,
        None => {
            // the precondition is unmet, so only real refutations are meaningful
            let v = real_containment_montecarlo(&f, &h, &cfg.budget())?;
            let result = json!({ "precondition": "no unsignatured witness found", "unsignatured": search, "fallback": v });
            let (code, status) = match v.status() {
                ContainmentStatus::Refuted => (EXIT_NO, "refuted"),
                _ => (EXIT_INCONCLUSIVE, "precondition_unmet"),
            };
            return Ok(outcome(code, status, result));
        }
    };
    let (code, status) = containment_exit(v.status());
    let mut result = value(&v);
    result["unsignatured_witness"] = value(&search.witness());
    Ok(outcome(code, status, result))
}

fn cmd_gleich(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (l, m) = (args.pencil("l")?, args.pencil("m")?);
    let (l, m) = joint_pencils(&l, &m)?;
    Ok(match gleichstellensatz_analytic(&l, &m, cfg.seed)? {
        Some(w) => outcome(EXIT_YES, "equivalent", value(&w)),
        None => outcome(EXIT_NO, "not_equivalent", Value::Null),
    })
}

fn cmd_gleich_hermitian(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (l, m) = (args.pencil("l")?, args.pencil("m")?);
    let (l, m) = joint_pencils(&l, &m)?;
    let search = unsignatured_search(&l.to_matrix_poly(), &cfg.budget())?;
    let Some(witness) = search.witness() else {
        let result = json!({ "precondition": "no unsignatured witness found", "unsignatured": search });
        return Ok(outcome(EXIT_INCONCLUSIVE, "precondition_unmet", result));
    };
    Ok(match gleichstellensatz_hermitian(&l, &m, witness, cfg.seed)? {
        Some(w) => outcome(EXIT_YES, "equivalent", json!({ "equivalence": w, "unsignatured_witness": witness })),
        None => outcome(EXIT_NO, "not_equivalent", json!({ "unsignatured_witness": witness })),
    })
}

fn constant_matrix(m: &MatrixPoly, key: &str) -> Result<DenseMatrix, InputError> {
    if m.degree().unwrap_or(0) > 0 {
        return Err(usage(format!("{key} must be a constant matrix")));
    }
    Ok(m.constant_term())
}

fn cmd_signature(args: &mut Args) -> Result<Outcome, InputError> {
    let m = args.matrix("m")?;
    let s = hermitian_signature(&constant_matrix(&m, "m")?)?;
    Ok(outcome(EXIT_YES, "signature", json!({ "signature": s })))
}

fn cmd_unsignatured(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let f = args.matrix("f")?;
    let v = unsignatured_search(&f, &cfg.budget())?;
    let (code, status) = match v {
        UnsignaturedVerdict::Witness { .. } | UnsignaturedVerdict::KnownByMonicPencil { .. } => (EXIT_YES, "unsignatured"),
        UnsignaturedVerdict::Unknown { .. } => (EXIT_INCONCLUSIVE, "unknown"),
    };
    Ok(outcome(code, status, value(&v)))
}

fn cmd_slack_reduce(args: &mut Args) -> Result<Outcome, InputError> {
    let (h, f) = (args.free("h")?, args.free("f")?);
    let nf = reduce(&h, &f)?;
    Ok(outcome(EXIT_YES, "reduced", json!({ "normal_form": nf })))
}

fn cmd_slack_member(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (h, f) = (args.free("h")?, args.free("f")?);
    let v = is_member_semantic(&h, &f, &cfg.budget())?;
    Ok(if v.membership.is_yes() {
        outcome(EXIT_YES, "member", value(&v))
    } else {
        outcome(EXIT_NO, "not_member", value(&v))
    })
}

#[derive(Deserialize)]
struct CertificateFile {
    f: String,
    fj: Vec<String>,
    h: String,
}

fn cmd_psatz_verify(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (h, f, fj) = match args.take("cert") {
        Some(text) => {
            let c: CertificateFile = serde_json::from_str(&text)
                .map_err(|e| InputError::Core(Error::MalformedCertificate(e.to_string())))?;
            (to_free(&c.h)?, to_free(&c.f)?, c.fj.iter().map(|t| to_free(t)).collect::<Result<Vec<_>, _>>()?)
        }
        None => {
            let h = to_free(&args.required("h")?)?;
            let f = to_free(&args.required("f")?)?;
            let fj = args.take_all("fj").iter().map(|t| to_free(t)).collect::<Result<Vec<_>, _>>()?;
            (h, f, fj)
        }
    };
    args.record("h", Value::String(h.to_string()));
    args.record("f", Value::String(f.to_string()));
    args.record("fj", fj.iter().map(|p| Value::String(p.to_string())).collect());
    let cert = PsatzCertificate { fj };
    let v = verify_psatz(&h, &f, &cert, &cfg.budget())?;
    if !v.is_accept() {
        return Ok(outcome(EXIT_NO, "reject", value(&v)));
    }
    let spot = psatz_spot_check(&h, &f, 50, &cfg.budget())?;
    Ok(outcome(EXIT_YES, "accept", json!({ "verdict": v, "spot_check": spot })))
}

fn cmd_eval(args: &mut Args) -> Result<Outcome, InputError> {
    let f = args.matrix("f")?;
    let g = f.alphabet().nvars;
    let mut xs = Vec::new();
    for k in 1..=g {
        let key = format!("x{k}");
        let m = args.matrix(&key)?;
        xs.push(constant_matrix(&m, &key)?);
    }
    let mut point = MatrixTuple::star(xs);
    if f.has_slack() {
        let m = args.matrix("y")?;
        point = point.with_slack(constant_matrix(&m, "y")?, None);
    }
    let v = evaluate(&f, &point)?;
    let det = if v.is_square() { Some(v.det()) } else { None };
    Ok(outcome(EXIT_YES, "evaluated", json!({ "value": v, "det": det })))
}

fn cmd_probe_real(args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    let (f, h) = (args.matrix("f")?, args.matrix("h")?);
    let v = real_line_probe(&f, &h, &cfg.budget())?;
    Ok(match v {
        RealProbeVerdict::Refuted { .. } => outcome(EXIT_NO, "refuted", value(&v)),
        RealProbeVerdict::Consistent { .. } => outcome(EXIT_INCONCLUSIVE, "consistent", value(&v)),
    })
}

fn dispatch(command: &str, args: &mut Args, cfg: &RunConfig) -> Result<Outcome, InputError> {
    if PrimeField::new(cfg.prime).is_err() {
        return Err(usage(format!("--prime {} is not a usable prime", cfg.prime)));
    }
    if cfg.n_max == 0 || cfg.trials == 0 {
        return Err(usage("--max-size and --trials must be positive"));
    }
    let out = match command {
        "full" => cmd_full(args, cfg),
        "unit" => cmd_unit(args, cfg),
        "atom" => cmd_atom(args, cfg),
        "blocks" => cmd_blocks(args, cfg),
        "linearize" => cmd_linearize(args),
        "equiv" => cmd_equiv(args, cfg),
        "stable-assoc" => cmd_stable_assoc(args, cfg),
        "contain" => cmd_contain(args, cfg),
        "contain-real-analytic" => cmd_contain_real_analytic(args, cfg),
        "contain-real-hermitian" => cmd_contain_real_hermitian(args, cfg),
        "gleich" => cmd_gleich(args, cfg),
        "gleich-hermitian" => cmd_gleich_hermitian(args, cfg),
        "signature" => cmd_signature(args),
        "unsignatured" => cmd_unsignatured(args, cfg),
        "slack-reduce" => cmd_slack_reduce(args),
        "slack-member" => cmd_slack_member(args, cfg),
        "psatz-verify" => cmd_psatz_verify(args, cfg),
        "eval" => cmd_eval(args),
        "probe-real" => cmd_probe_real(args, cfg),
        other => return Err(usage(format!("unknown command {other:?}"))),
    }?;
    args.finish()?;
    Ok(out)
}

/// Runs one command. Identical inputs and configuration give byte-identical output.
pub fn run(command: &str, args: &[String], config: &RunConfig) -> RunOutput {
    let mut parsed = Args::new(args);
    let mut report = Map::new();
    report.insert("schema".into(), json!(SCHEMA));
    report.insert("command".into(), json!(command));
    report.insert("config".into(), config.to_json());
    let exit_code = match dispatch(command, &mut parsed, config) {
        Ok(o) => {
            report.insert("status".into(), json!(o.status));
            report.insert("result".into(), o.result);
            o.exit_code
        }
        Err(e) => {
            report.insert("status".into(), json!("input_error"));
            report.insert("error".into(), json!({ "kind": e.kind(), "message": e.to_string() }));
            EXIT_INPUT
        }
    };
    report.insert("inputs".into(), Value::Object(parsed.inputs));
    report.insert("exit_code".into(), json!(exit_code));
    let report = Value::Object(report);
    let body = match config.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("json"),
        Format::Text => render_text(&report),
    };
    RunOutput { exit_code, body }
}

fn render_text(report: &Value) -> String {
    let mut out = String::new();
    for key in ["command", "status", "exit_code"] {
        out.push_str(&format!("{key}: {}\n", plain(&report[key])));
    }
    out.push_str(&format!("seed: {}\n", report["config"]["seed"]));
    if let Some(inputs) = report["inputs"].as_object() {
        for (k, v) in inputs {
            out.push_str(&format!("{k} = {}\n", plain(v)));
        }
    }
    for key in ["error", "result"] {
        if !report[key].is_null() {
            out.push_str(&format!("{key}:\n{}\n", serde_json::to_string_pretty(&report[key]).expect("json")));
        }
    }
    out
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
