//! Request dispatch and rendering for the `cadiv` binary.
//!
//! Every request produces a [`Report`]: a human-readable text block and a
//! structured document `{command, input, result, witnesses, errors}`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::atlas::{
    decide_membership, enumerate_contractions_with, family_witness, smooth_census, ContractionCensus, Membership,
};
use crate::blowup::{charts, discrepancy, lift_check, strict_transform, Germ};
use crate::classifier::classify;
use crate::error::{Error, Result};
use crate::local_algebra::determinacy_truncate;
use crate::normal_form::{split_germ, weighted_normal_form};
use crate::parse::{parse_polynomial, parse_rational, parse_weights};
use crate::poly::{vars, xyzt, Q};
use crate::WeightVector;

/// Keyword standing for a smooth point of affine three-space.
pub const SMOOTH: &str = "smooth";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Classify,
    Enumerate,
    Member,
    Normalize,
    Blowup,
    Count,
    Witness,
}

impl Verb {
    pub const ALL: [Verb; 7] =
        [Verb::Classify, Verb::Enumerate, Verb::Member, Verb::Normalize, Verb::Blowup, Verb::Count, Verb::Witness];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Classify => "classify",
            Verb::Enumerate => "enumerate",
            Verb::Member => "member",
            Verb::Normalize => "normalize",
            Verb::Blowup => "blowup",
            Verb::Count => "count",
            Verb::Witness => "witness",
        }
    }
}

impl FromStr for Verb {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Verb::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub verb: Verb,
    pub polynomial_text: String,
    pub weights_text: Option<String>,
    pub jet_order: Option<u32>,
    pub max_a: Option<u32>,
    /// Comma separated rationals for `witness`.
    pub params_text: Option<String>,
}

impl Request {
    pub fn new(verb: Verb, polynomial_text: impl Into<String>) -> Self {
        Request {
            verb,
            polynomial_text: polynomial_text.into(),
            weights_text: None,
            jet_order: None,
            max_a: None,
            params_text: None,
        }
    }

    pub fn weights(mut self, w: impl Into<String>) -> Self {
        self.weights_text = Some(w.into());
        self
    }

    pub fn params(mut self, p: impl Into<String>) -> Self {
        self.params_text = Some(p.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Success,
    Rejection,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Rejection => 2,
            Outcome::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorEntry {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input: String,
    pub result: Option<Value>,
    pub witnesses: Vec<Value>,
    pub errors: Vec<ErrorEntry>,
    #[serde(skip)]
    pub outcome: Outcome,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

struct Done {
    result: Value,
    witnesses: Vec<Value>,
    text: String,
    outcome: Outcome,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn parse_germ(req: &Request) -> Result<Germ> {
    let text = req.polynomial_text.trim();
    if text.eq_ignore_ascii_case(SMOOTH) {
        return Ok(Germ::Ambient);
    }
    let f = parse_polynomial(text)?;
    Ok(Germ::Hypersurface(match req.jet_order {
        Some(n) => determinacy_truncate(&f, n)?,
        None => f,
    }))
}

fn weights_for(req: &Request, germ: &Germ) -> Result<WeightVector> {
    let text = req
        .weights_text
        .as_deref()
        .ok_or_else(|| Error::PreconditionViolated(format!("`{}` needs --weights", req.verb.name())))?;
    let ws = parse_weights(text)?;
    match germ {
        Germ::Ambient => WeightVector::positional(&vars(&["x", "y", "z"]), &ws),
        Germ::Hypersurface(f) => WeightVector::positional(f.vars(), &ws),
    }
}

fn hypersurface(germ: &Germ, verb: Verb) -> Result<&crate::Polynomial> {
    match germ {
        Germ::Hypersurface(f) => Ok(f),
        Germ::Ambient => Err(Error::UnsupportedShape(format!("`{}` needs a polynomial", verb.name()))),
    }
}

fn census_text(c: &ContractionCensus) -> String {
    let mut s = String::new();
    if let Some(n) = c.ca_index {
        let _ = writeln!(s, "cA index: {n}");
    }
    if let Some(g) = &c.residual {
        let _ = writeln!(s, "residual: {g}");
    }
    if let Some(gen) = &c.generator {
        let _ = writeln!(s, "classes: {gen}");
    } else {
        let _ = writeln!(s, "classes: {}", c.classes.len());
        for class in &c.classes {
            let _ = writeln!(s, "  {class}");
        }
    }
    let _ = writeln!(s, "local-analytic count: {}", c.count_local_analytic);
    let _ = write!(s, "count over the base: {}", c.count_over_base);
    s
}

fn census(req: &Request, germ: &Germ) -> Result<ContractionCensus> {
    match germ {
        Germ::Ambient => Ok(smooth_census()),
        Germ::Hypersurface(f) => enumerate_contractions_with(&f.embed(&xyzt())?, req.max_a),
    }
}

fn do_classify(germ: &Germ, verb: Verb) -> Result<Done> {
    let f = hypersurface(germ, verb)?;
    let r = classify(f)?;
    let mut text = format!("type: {}\nmultiplicity: {}\ncorank: {}", r.type_tag, r.multiplicity, r.corank);
    if let Some(mu) = r.milnor_number {
        let _ = write!(text, "\nMilnor number: {mu}");
    }
    if let Some(n) = r.ca_index {
        let _ = write!(text, "\ncA index: {n}");
    }
    if let Some(g) = &r.residual {
        let _ = write!(text, "\nresidual: {g}");
    }
    let witnesses = r.witness.iter().map(to_value).collect();
    let mut result = to_value(&r);
    if let Some(obj) = result.as_object_mut() {
        obj.remove("witness");
    }
    Ok(Done { result, witnesses, text, outcome: Outcome::Success })
}

fn do_member(req: &Request, germ: &Germ) -> Result<Done> {
    let w = weights_for(req, germ)?;
    let m = decide_membership(germ, &w)?;
    let outcome = if m.is_member() { Outcome::Success } else { Outcome::Rejection };
    Ok(Done { result: to_value(&m), witnesses: Vec::new(), text: m.to_string(), outcome })
}

fn do_normalize(req: &Request, germ: &Germ) -> Result<Done> {
    let f = hypersurface(germ, req.verb)?;
    if req.weights_text.is_some() {
        let w = weights_for(req, germ)?;
        let nf = weighted_normal_form(f, &w)?;
        let text = format!("normal form: {}\nweights: {}\nwitness: {}", nf.polynomial, nf.weights, nf.witness);
        let witnesses = vec![to_value(&nf.witness)];
        let mut result = to_value(&nf);
        if let Some(obj) = result.as_object_mut() {
            obj.remove("witness");
        }
        Ok(Done { result, witnesses, text, outcome: Outcome::Success })
    } else {
        let s = split_germ(f)?;
        let text = format!("split form: {}\nresidual: {}\nwitness: {}", s.polynomial, s.residual, s.witness);
        let witnesses = vec![to_value(&s.witness)];
        let result = json!({
            "polynomial": s.polynomial,
            "residual": s.residual,
            "quadratic_rank": s.pivots.len(),
            "jet_order": s.jet_order,
        });
        Ok(Done { result, witnesses, text, outcome: Outcome::Success })
    }
}

fn do_blowup(req: &Request, germ: &Germ) -> Result<Done> {
    let w = weights_for(req, germ)?;
    let mut out = Vec::new();
    for chart in charts(&w)? {
        out.push(match germ {
            Germ::Ambient => chart,
            Germ::Hypersurface(f) => strict_transform(f, &w, &chart)?,
        });
    }
    let disc = discrepancy(&w, germ).ok();
    let mut text = format!("weights: {w}");
    for c in &out {
        let _ = write!(text, "\n{c}");
    }
    match disc {
        Some(d) => {
            let _ = write!(text, "\ndiscrepancy: {d}");
        }
        None => text.push_str("\ndiscrepancy: not positive"),
    }
    let result = json!({ "weights": w, "charts": out, "discrepancy": disc });
    Ok(Done { result, witnesses: Vec::new(), text, outcome: Outcome::Success })
}

fn do_witness(req: &Request, germ: &Germ) -> Result<Done> {
    let w = weights_for(req, germ)?;
    let params: Vec<Q> = match &req.params_text {
        Some(t) => t.split(',').map(|s| parse_rational(s.trim())).collect::<std::result::Result<_, _>>()?,
        None => return Err(Error::PreconditionViolated("`witness` needs --params".into())),
    };
    let class = match decide_membership(germ, &w)? {
        Membership::Member { class } => class,
        rejected => {
            return Ok(Done {
                result: to_value(&rejected),
                witnesses: Vec::new(),
                text: rejected.to_string(),
                outcome: Outcome::Rejection,
            })
        }
    };
    let sigma = family_witness(&class, &params)?;
    let cert = lift_check(&sigma, &class.weights, germ)?;
    let text = format!("class: {class}\nautomorphism: {sigma}\n{cert}");
    let result = json!({ "class": class, "lift": cert });
    Ok(Done { result, witnesses: vec![to_value(&sigma)], text, outcome: Outcome::Success })
}

fn dispatch(req: &Request) -> Result<Done> {
    let germ = parse_germ(req)?;
    match req.verb {
        Verb::Classify => do_classify(&germ, req.verb),
        Verb::Enumerate => {
            let c = census(req, &germ)?;
            Ok(Done { result: to_value(&c), witnesses: Vec::new(), text: census_text(&c), outcome: Outcome::Success })
        }
        Verb::Count => {
            let c = census(req, &germ)?;
            let result = json!({
                "count_local_analytic": c.count_local_analytic,
                "count_over_base": c.count_over_base,
                "cA_index": c.ca_index,
            });
            let text = format!(
                "local-analytic count: {}\ncount over the base: {}",
                c.count_local_analytic, c.count_over_base
            );
            Ok(Done { result, witnesses: Vec::new(), text, outcome: Outcome::Success })
        }
        Verb::Member => do_member(req, &germ),
        Verb::Normalize => do_normalize(req, &germ),
        Verb::Blowup => do_blowup(req, &germ),
        Verb::Witness => do_witness(req, &germ),
    }
}

pub fn run(req: &Request) -> Report {
    let base = Report {
        command: req.verb.name(),
        input: req.polynomial_text.clone(),
        result: None,
        witnesses: Vec::new(),
        errors: Vec::new(),
        outcome: Outcome::Error,
        text: String::new(),
    };
    match dispatch(req) {
        Ok(d) => Report { result: Some(d.result), witnesses: d.witnesses, outcome: d.outcome, text: d.text, ..base },
        Err(e) => Report {
            text: format!("error [{}]: {e}", e.code()),
            errors: vec![ErrorEntry { code: e.code(), message: e.to_string() }],
            ..base
        },
    }
}
