//! Command dispatch shared by single-shot and batch modes.
//!
//! Every command is a name plus a JSON object of parameters. Single-shot
//! invocations are turned into the same shape, so both modes produce
//! identical reports.

use std::collections::BTreeSet;

use hasse_witt::arith::{parse_integer, parse_rational};
use hasse_witt::motive::motive_report;
use hasse_witt::obstructions::S4_ASSUMPTION;
use hasse_witt::{
    cup, delta_comparison, hilbert_symbol, isometric, jehanne_local, lifting_decisions,
    trace_form_report, CompleteIntersectionSpec, DecompositionType, EtaleAlgebra, Error, Place,
    QuadraticForm, SquareClass,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

pub mod args;

pub const COMMANDS: [&str; 8] = [
    "hilbert",
    "form_invariants",
    "form_isometric",
    "tracefield",
    "embedding",
    "jehanne",
    "hypersurface",
    "delta",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    InputError,
    InternalError,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InputError => "input_error",
            Status::InternalError => "internal_error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::InternalError => 2,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure { status: Status::InputError, message: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Invariant(_) => Status::InternalError,
            _ => Status::InputError,
        };
        Failure { status, message: e.to_string() }
    }
}

pub struct Outcome {
    pub outputs: Value,
    pub assumptions: Vec<String>,
}

type Params = Map<String, Value>;

fn param_text(params: &Params, key: &str) -> Result<String, Failure> {
    match params.get(key) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(Value::Number(n)) => Ok(n.to_string()),
        Some(other) => Err(Failure::input(format!("parameter {key:?} must be a string or number, got {other}"))),
        None => Err(Failure::input(format!("missing parameter {key:?}"))),
    }
}

fn optional_text(params: &Params, key: &str) -> Result<Option<String>, Failure> {
    match params.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => param_text(params, key).map(Some),
    }
}

fn param_u64(params: &Params, key: &str) -> Result<u64, Failure> {
    let s = param_text(params, key)?;
    s.trim().parse().map_err(|_| Failure::input(format!("parameter {key:?} must be a nonnegative integer, got {s:?}")))
}

fn param_degrees(params: &Params) -> Result<Vec<u64>, Failure> {
    match (params.get("d"), params.get("degrees")) {
        (Some(_), Some(_)) => Err(Failure::input("give either \"d\" or \"degrees\", not both")),
        (Some(_), None) => Ok(vec![param_u64(params, "d")?]),
        (None, Some(Value::Array(items))) => items
            .iter()
            .map(|v| v.as_u64().ok_or_else(|| Failure::input(format!("bad degree {v}"))))
            .collect(),
        (None, Some(_)) => {
            let s = param_text(params, "degrees")?;
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| Failure::input(format!("bad degree {t:?}"))))
                .collect()
        }
        (None, None) => Err(Failure::input("missing parameter \"d\" or \"degrees\"")),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize to JSON")
}

/// Runs one command.
pub fn execute(command: &str, params: &Params) -> Result<Outcome, Failure> {
    let mut assumptions = Vec::new();
    let outputs = match command {
        "hilbert" => {
            let a = parse_rational(&param_text(params, "a")?)?;
            let b = parse_rational(&param_text(params, "b")?)?;
            match optional_text(params, "place")? {
                Some(p) => {
                    let place: Place = p.parse()?;
                    json!({ "place": to_value(&place), "symbol": hilbert_symbol(&a, &b, &place)? })
                }
                None => {
                    let (sa, sb) = (SquareClass::new(&a)?, SquareClass::new(&b)?);
                    let mut places: BTreeSet<Place> = [Place::Infinite, Place::prime(2)?].into();
                    places.extend(sa.primes().into_iter().chain(sb.primes()).map(Place::Finite));
                    let mut symbols = Map::new();
                    for v in &places {
                        symbols.insert(v.to_string(), json!(hilbert_symbol(&a, &b, v)?));
                    }
                    json!({ "cup": to_value(&cup(&sa, &sb)), "symbols": symbols })
                }
            }
        }
        "form_invariants" => {
            let q = QuadraticForm::parse(&param_text(params, "gram")?)?;
            to_value(&q.invariants())
        }
        "form_isometric" => {
            let q1 = QuadraticForm::parse(&param_text(params, "gram1")?)?;
            let q2 = QuadraticForm::parse(&param_text(params, "gram2")?)?;
            json!({
                "isometric": isometric(&q1, &q2),
                "invariants1": to_value(&q1.invariants()),
                "invariants2": to_value(&q2.invariants()),
            })
        }
        "tracefield" => {
            let f = EtaleAlgebra::parse(&param_text(params, "poly")?)?;
            let rep = trace_form_report(&f)?;
            let mut v = to_value(&rep);
            v["gram"] = json!(rep.gram.to_string());
            v
        }
        "embedding" => {
            let f = EtaleAlgebra::parse(&param_text(params, "poly")?)?;
            let rep = lifting_decisions(&f)?;
            assumptions = rep.assumptions.clone();
            let mut table = Map::new();
            for (v, pair) in &rep.local_table {
                table.insert(v.to_string(), to_value(pair));
            }
            json!({
                "field_disc": to_value(&rep.field_disc),
                "real_signature": to_value(&rep.signature),
                "w2_trace": to_value(&rep.w2_trace),
                "sw2": to_value(&rep.sw2),
                "sp2": to_value(&rep.sp2),
                "lift": rep.lift_solvable,
                "lift_delta": rep.lift_delta_solvable,
                "local_table": table,
            })
        }
        "jehanne" => {
            let p = parse_integer(&param_text(params, "p")?)?;
            let t: DecompositionType = param_text(params, "type")?.parse()?;
            let d = parse_integer(&param_text(params, "disc")?)?;
            let (w2, sym) = jehanne_local(&p, t, &d)?;
            assumptions.push(S4_ASSUMPTION.to_string());
            json!({ "w2_local": w2, "symbol_2_df": sym })
        }
        "hypersurface" => {
            let n = param_u64(params, "n")?;
            let n = u32::try_from(n).map_err(|_| Failure::input("n is too large"))?;
            let spec = CompleteIntersectionSpec::new(n, param_degrees(params)?)?;
            let rep = motive_report(&spec)?;
            let mut v = to_value(&rep);
            if let (Some(d1), Some(d2)) = (&rep.delta1, &rep.delta2) {
                v["delta1_text"] = json!(d1.to_string());
                v["delta2_text"] = json!(d2.to_string());
            }
            v
        }
        "delta" => {
            let qw = QuadraticForm::parse(&param_text(params, "gram_omega")?)?;
            let qe = QuadraticForm::parse(&param_text(params, "gram_eta")?)?;
            to_value(&delta_comparison(&qw, &qe)?)
        }
        other => {
            return Err(Failure::input(format!(
                "unknown command {other:?}; expected one of {}",
                COMMANDS.join(", ")
            )))
        }
    };
    Ok(Outcome { outputs, assumptions })
}

/// A full report object. Keys come out sorted because `serde_json::Map` is
/// ordered.
pub fn report(id: Value, command: Value, params: Value) -> (Value, Status) {
    let result = match (&command, &params) {
        (Value::String(c), Value::Object(p)) => execute(c, p),
        (Value::String(_), _) => Err(Failure::input("\"parameters\" must be an object")),
        _ => Err(Failure::input("\"command\" must be a string")),
    };
    let mut r = Map::new();
    r.insert("id".into(), id);
    r.insert("command".into(), command);
    r.insert("inputs".into(), params);
    let status = match result {
        Ok(out) => {
            r.insert("outputs".into(), out.outputs);
            r.insert("assumptions".into(), json!(out.assumptions));
            Status::Ok
        }
        Err(f) => {
            r.insert("assumptions".into(), json!([]));
            r.insert("error".into(), json!(f.message));
            f.status
        }
    };
    r.insert("status".into(), json!(status.as_str()));
    (Value::Object(r), status)
}

/// One batch line: `{"id": ..., "command": ..., "parameters": {...}}`.
pub fn report_for_line(line: &str) -> Value {
    match serde_json::from_str::<Value>(line) {
        Ok(Value::Object(mut req)) => {
            let id = req.remove("id").unwrap_or(Value::Null);
            let command = req.remove("command").unwrap_or(Value::Null);
            let params = req.remove("parameters").unwrap_or_else(|| json!({}));
            report(id, command, params).0
        }
        Ok(_) => malformed("request must be a JSON object"),
        Err(e) => malformed(&format!("malformed JSON: {e}")),
    }
}

fn malformed(msg: &str) -> Value {
    json!({
        "id": null,
        "command": null,
        "inputs": null,
        "assumptions": [],
        "status": Status::InputError.as_str(),
        "error": msg,
    })
}

/// Processes JSON-Lines text, skipping blank lines. Records are independent
/// and run in parallel; output keeps input order.
pub fn run_batch(input: &str) -> Vec<String> {
    let lines: Vec<&str> = input.lines().filter(|l| !l.trim().is_empty()).collect();
    lines.par_iter().map(|l| report_for_line(l).to_string()).collect()
}

/// Plain-text rendering of a successful report.
pub fn human(command: &str, outputs: &Value) -> String {
    if command == "hilbert" {
        if let Some(s) = outputs.get("symbol") {
            return s.to_string();
        }
    }
    let mut lines = Vec::new();
    if let Value::Object(map) = outputs {
        for (k, v) in map {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            lines.push(format!("{k}: {text}"));
        }
    }
    lines.join("\n")
}
