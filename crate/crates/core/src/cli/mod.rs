//! Requests and canonical reports behind the `operad-deform` binary. Every
//! verb reads one JSON document (except `partitions`), dispatches to the
//! library and returns a [`Report`] whose serialization is byte-stable:
//! sorted keys, rationals as `"p/q"` strings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::conformal::{
    cochain_sweep, dsk_differential, ConformalDocument, DegreeCaps,
};
use crate::convolution::TensorDocument;
use crate::deformation::{
    classical_limit, deform_step, from_nested, gauge_equivalent, gauge_intertwines, nested, quantize,
    twisted_cohomology, verify_structure, Check, FamilyInput, Flavor, Scalar, StructureInput,
};
use crate::error::{guardrail, Error, Result};
use crate::linalg::format_rational;
use crate::operadcore::{cobar_homology, koszul_dual_component, QuadraticData};
use crate::symmetry::{surjection_classes, SnRepresentation};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest `n` accepted by `partitions`.
pub const MAX_PARTITION_SIZE: usize = 10;
/// Largest cochain arity swept by `conformal-d2`.
pub const MAX_CONFORMAL_ARITY: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verb {
    KoszulDual,
    CobarHomology,
    Verify,
    Cohomology,
    Deform,
    Quantize,
    ClassicalLimit,
    Gauge,
    ConformalCheck,
    ConformalD2,
    Partitions,
}

impl Verb {
    pub const ALL: [Verb; 11] = [
        Verb::KoszulDual,
        Verb::CobarHomology,
        Verb::Verify,
        Verb::Cohomology,
        Verb::Deform,
        Verb::Quantize,
        Verb::ClassicalLimit,
        Verb::Gauge,
        Verb::ConformalCheck,
        Verb::ConformalD2,
        Verb::Partitions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::KoszulDual => "koszul-dual",
            Verb::CobarHomology => "cobar-homology",
            Verb::Verify => "verify",
            Verb::Cohomology => "cohomology",
            Verb::Deform => "deform",
            Verb::Quantize => "quantize",
            Verb::ClassicalLimit => "classical-limit",
            Verb::Gauge => "gauge",
            Verb::ConformalCheck => "conformal-check",
            Verb::ConformalD2 => "conformal-d2",
            Verb::Partitions => "partitions",
        }
    }

    pub fn needs_input(self) -> bool {
        self != Verb::Partitions
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Verb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Verb::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| Error::Parse(format!("unknown verb {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Arity for `koszul-dual`, `cobar-homology`; set size for `partitions`.
    pub arity: Option<usize>,
    /// Top cohomological degree, or top cochain arity for `conformal-d2`.
    pub arity_max: Option<usize>,
    /// Order in ħ for `quantize` and `gauge`.
    pub order: Option<usize>,
    /// Cap on both λ- and `T`-degree for the conformal verbs.
    pub lambda_cap: Option<u32>,
    /// Degree of the monomial cochains swept by `conformal-d2`.
    pub sweep_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandRequest {
    pub verb: Verb,
    /// Contents of the input file.
    pub input: Option<String>,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub verb: String,
    pub version: String,
    /// SHA-256 of the input bytes, empty-string digest when there is none.
    pub input_digest: String,
    pub result: Value,
}

/// Exit status for a failed request: 2 parse/schema, 3 precondition,
/// 4 guardrail.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Schema(_) => 2,
        Error::Precondition(_) => 3,
        Error::Guardrail(_) => 4,
    }
}

fn schema(e: serde_json::Error) -> Error {
    Error::Schema(e.to_string())
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(schema)
}

fn required(v: Option<usize>, flag: &str, verb: Verb) -> Result<usize> {
    v.ok_or_else(|| Error::Parse(format!("{verb} needs {flag}")))
}

fn caps(o: &Options) -> DegreeCaps {
    o.lambda_cap.map_or_else(DegreeCaps::default, |d| DegreeCaps { lambda: d, t: d })
}

fn check_str(c: Check) -> &'static str {
    match c {
        Check::Holds => "holds",
        Check::Fails => "fails",
        Check::NotApplicable => "not-applicable",
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

/// Quadratic data from a full document or `{"preset": "lie" | "com" | "ass"}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetInput {
    preset: String,
}

fn quadratic_input(text: &str) -> Result<QuadraticData> {
    match serde_json::from_str::<PresetInput>(text) {
        Ok(p) => QuadraticData::preset(&p.preset),
        Err(_) => QuadraticData::from_json(text),
    }
}

/// `"sign"`, `"trivial"` for one-dimensional actions, `"other"` otherwise.
fn classify_action(rep: &SnRepresentation) -> &'static str {
    use crate::linalg::scalar::int;
    if rep.dim() != 1 {
        return "other";
    }
    let g: Vec<_> = rep.generators().iter().map(|m| m.get(0, 0).clone()).collect();
    if g.iter().all(|x| *x == int(-1)) {
        "sign"
    } else if g.iter().all(|x| *x == int(1)) {
        "trivial"
    } else {
        "other"
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantizeInput {
    base: StructureInput,
    first_order: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GaugeInput {
    first: FamilyInput,
    second: FamilyInput,
}

pub fn run(req: &CommandRequest) -> Result<Report> {
    let verb = req.verb;
    let o = &req.options;
    let text = match (&req.input, verb.needs_input()) {
        (Some(t), _) => t.as_str(),
        (None, false) => "",
        (None, true) => return Err(Error::Parse(format!("{verb} needs an input file"))),
    };
    let result = match verb {
        Verb::KoszulDual => {
            let n = required(o.arity, "--arity", verb)?;
            let c = koszul_dual_component(&quadratic_input(text)?, n)?;
            let pieces: Vec<Value> = c
                .pieces
                .iter()
                .map(|p| json!({"weight": p.weight, "degree": p.degree, "dim": p.dim(), "action": classify_action(&p.rep)}))
                .collect();
            let action = match c.pieces.as_slice() {
                [p] => classify_action(&p.rep),
                [] => "zero",
                _ => "other",
            };
            json!({"arity": n, "dim": c.dim(), "action": action, "pieces": pieces})
        }
        Verb::CobarHomology => {
            let n = required(o.arity, "--arity", verb)?;
            let h = cobar_homology(&quadratic_input(text)?, n)?;
            let mut v = to_value(&h);
            v["concentrated_in"] = to_value(&h.concentrated_in());
            v
        }
        Verb::Verify => {
            let a = parse::<StructureInput>(text)?.into_structure()?;
            json!({"valid": verify_structure(&a)?, "flavor": a.flavor(), "dim": a.dim()})
        }
        Verb::Cohomology => {
            let a = parse::<StructureInput>(text)?.into_structure()?;
            if !verify_structure(&a)? {
                return Err(Error::Precondition("the structure does not satisfy its identities".into()));
            }
            to_value(&twisted_cohomology(&a, 0..=o.arity_max.unwrap_or(2))?)
        }
        Verb::Deform => {
            let f = parse::<FamilyInput>(text)?.into_family()?;
            let s = deform_step(&f)?;
            json!({
                "order": s.order,
                "obstruction": TensorDocument::from(&s.obstruction),
                "class": s.class.iter().map(format_rational).collect::<Vec<_>>(),
                "class_vanishes": s.class_vanishes(),
                "particular": s.solutions.as_ref().map(|(p, _)| nested(p)),
                "homogeneous_dim": s.solutions.as_ref().map(|(_, h)| h.len()),
            })
        }
        Verb::Quantize => {
            let input: QuantizeInput = parse(text)?;
            let a = input.base.into_structure()?;
            let alpha1 = from_nested(a.dim(), &input.first_order)?;
            let order = o.order.unwrap_or(2);
            match quantize(&a, &alpha1, order)? {
                Some(f) => json!({"order": order, "quantized": true, "family": f.to_document()}),
                None => json!({"order": order, "quantized": false, "family": null}),
            }
        }
        Verb::ClassicalLimit => {
            let f = parse::<FamilyInput>(text)?.into_family()?;
            let c = classical_limit(&f, f.flavor() == Flavor::Commutative)?;
            json!({
                "product": nested(&c.product),
                "first_order": nested(&c.first_order),
                "bracket": nested(&c.bracket),
                "leibniz": check_str(c.leibniz),
                "jacobi": check_str(c.jacobi),
            })
        }
        Verb::Gauge => {
            let input: GaugeInput = parse(text)?;
            let f1 = input.first.into_family()?;
            let f2 = input.second.into_family()?;
            let order = o.order.unwrap_or(f1.order().min(f2.order()));
            match gauge_equivalent(&f1, &f2, order)? {
                Some(g) => json!({
                    "order": order,
                    "equivalent": true,
                    "generators": g.to_strings(),
                    "verified": gauge_intertwines(&f1, &f2, &g),
                }),
                None => json!({"order": order, "equivalent": false, "generators": null, "verified": false}),
            }
        }
        Verb::ConformalCheck => {
            let l = parse::<ConformalDocument>(text)?.into_algebra(caps(o))?;
            let r = l.check_axioms();
            let mut v = to_value(&r);
            v["passes"] = Value::Bool(r.passes());
            v
        }
        Verb::ConformalD2 => {
            let l = parse::<ConformalDocument>(text)?.into_algebra(caps(o))?;
            let top = o.arity_max.unwrap_or(2);
            if top > MAX_CONFORMAL_ARITY || top == 0 {
                return guardrail(format!("conformal-d2 sweeps arities 1..={MAX_CONFORMAL_ARITY}, asked for {top}"));
            }
            let degree = o.sweep_degree.unwrap_or(1);
            let mut arities = BTreeMap::new();
            let mut all = true;
            for n in 1..=top {
                let sweep = cochain_sweep(&l, n, degree)?;
                let mut nonzero = 0;
                let mut ok = true;
                for c in &sweep {
                    let d = dsk_differential(&l, c)?;
                    nonzero += usize::from(!d.is_zero());
                    ok &= dsk_differential(&l, &d)?.is_zero();
                }
                all &= ok;
                arities.insert(
                    n.to_string(),
                    json!({"cochains": sweep.len(), "nonzero_differentials": nonzero, "d_squared_zero": ok}),
                );
            }
            json!({
                "sweep_degree": degree,
                "axioms_pass": l.check_axioms().passes(),
                "arities": arities,
                "d_squared_zero": all,
            })
        }
        Verb::Partitions => {
            let n = required(o.arity, "--arity", verb)?;
            if n > MAX_PARTITION_SIZE {
                return guardrail(format!("partitions limited to n ≤ {MAX_PARTITION_SIZE}, asked for {n}"));
            }
            let parts = surjection_classes(n);
            let mut by_blocks: BTreeMap<String, usize> = BTreeMap::new();
            for p in &parts {
                *by_blocks.entry(p.len().to_string()).or_default() += 1;
            }
            json!({
                "n": n,
                "count": parts.len(),
                "by_blocks": by_blocks,
                "partitions": parts.iter().map(|p| p.blocks().to_vec()).collect::<Vec<_>>(),
            })
        }
    };
    Ok(Report {
        verb: verb.name().into(),
        version: VERSION.into(),
        input_digest: format!("{:x}", Sha256::digest(text.as_bytes())),
        result,
    })
}

/// Canonical bytes of a report. JSON is pretty-printed with sorted keys;
/// text lists one `path: value` line per leaf.
pub fn emit(report: &Report, format: Format) -> String {
    let v = to_value(report);
    match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("reports serialize") + "\n",
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", &v, &mut lines);
            lines.join("\n") + "\n"
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out))
        }
        _ => out.push(format!("{prefix}: {v}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(verb: Verb, input: Option<&str>, options: Options) -> CommandRequest {
        CommandRequest { verb, input: input.map(str::to_string), options }
    }

    #[test]
    fn partitions_and_verbs() {
        let r = run(&req(Verb::Partitions, None, Options { arity: Some(3), ..Default::default() })).unwrap();
        assert_eq!(r.result["count"], 5);
        assert_eq!(r.result["by_blocks"]["2"], 3);
        for v in Verb::ALL {
            assert_eq!(v.name().parse::<Verb>().unwrap(), v);
        }
        assert!(matches!("frobnicate".parse::<Verb>(), Err(Error::Parse(_))));
        let big = run(&req(Verb::Partitions, None, Options { arity: Some(11), ..Default::default() }));
        assert_eq!(exit_code(&big.unwrap_err()), 4);
    }

    #[test]
    fn koszul_dual_and_verify() {
        let r = run(&req(Verb::KoszulDual, Some(r#"{"preset":"lie"}"#), Options { arity: Some(4), ..Default::default() }))
            .unwrap();
        assert_eq!(r.result["dim"], 1);
        assert_eq!(r.result["action"], "sign");
        let so3 = r#"{"flavor":"lie","dim":3,"mu":[[[0,0,0],[0,0,1],[0,-1,0]],[[0,0,-1],[0,0,0],[1,0,0]],[[0,1,0],[-1,0,0],[0,0,0]]]}"#;
        let r = run(&req(Verb::Verify, Some(so3), Options::default())).unwrap();
        assert_eq!(r.result["valid"], true);
        let e = run(&req(Verb::Verify, Some(r#"{"flavor":"lie"}"#), Options::default())).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = run(&req(Verb::Verify, None, Options::default())).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn emit_is_canonical() {
        let r = Report { verb: "x".into(), version: VERSION.into(), input_digest: String::new(), result: json!({}) };
        let text = emit(&r, Format::Json);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["result"], json!({}));
        let r = Report { result: json!({"b": "1/2", "a": [1, 2]}), ..r };
        let text = emit(&r, Format::Json);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        let half = crate::linalg::parse_rational(serde_json::from_str::<Value>(&text).unwrap()["result"]["b"].as_str().unwrap()).unwrap();
        assert_eq!(format_rational(&half), "1/2");
        assert_eq!(emit(&r, Format::Text), format!("input_digest: \"\"\nresult.a: [1,2]\nresult.b: \"1/2\"\nverb: \"x\"\nversion: \"{VERSION}\"\n"));
    }
}
