//! Command dispatch for `pgal`: text output, a JSON report and an exit code
//! (0 success, 1 invalid input, 2 a property violated).

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{self, CochainGroup};
use crate::crossed::CrossedRing;
use crate::error::{Error, Result};
use crate::finring::Idem;
use crate::galois::galois_certificate;
use crate::gencross::{self, FreeFactorSet};
use crate::input::{load_input, Input};
use crate::paction::Twisting;
use crate::pics;
use crate::sequence::{self, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Galois,
    Cohomology { n: usize },
    Crossed { check: bool },
    Pics,
    Gencross { check: bool },
    SequenceCheck,
    Units,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Galois => "galois",
            Command::Cohomology { .. } => "cohomology",
            Command::Crossed { .. } => "crossed",
            Command::Pics => "pics",
            Command::Gencross { .. } => "gencross",
            Command::SequenceCheck => "sequence-check",
            Command::Units => "units",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub report: Value,
}

impl Outcome {
    /// The JSON document written by `--json`: sorted keys, schema version.
    pub fn json(&self, command: &Command) -> String {
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command.name(),
            "exit_code": self.code,
            "report": self.report,
        });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    }
}

fn factors(fs: &[String]) -> String {
    if fs.is_empty() {
        "trivial".into()
    } else {
        fs.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

pub fn run_file(cmd: &Command, file: &Path, seed: Option<u64>) -> Outcome {
    match load_input(file) {
        Ok(input) => run(cmd, &input, seed),
        Err(e) => input_error(e),
    }
}

fn input_error(e: Error) -> Outcome {
    Outcome {
        code: EXIT_INPUT,
        text: format!("error: {e}\n"),
        report: json!({ "error": e.to_string() }),
    }
}

pub fn run(cmd: &Command, input: &Input, seed: Option<u64>) -> Outcome {
    match dispatch(cmd, input, seed) {
        Ok(o) => o,
        Err(e) => input_error(e),
    }
}

fn dispatch(cmd: &Command, input: &Input, seed: Option<u64>) -> Result<Outcome> {
    let a = &input.action;
    let grp = a.group();
    let mut text = String::new();
    match cmd {
        Command::Validate => {
            let v = a.validate();
            for c in &v.checks {
                let status = if c.passed { "ok" } else { "FAILED" };
                writeln!(text, "action {}: {status}", c.axiom).unwrap();
                if let Some(w) = &c.witness {
                    writeln!(text, "  witness: {w}").unwrap();
                }
            }
            let tv = input.twist.as_ref().map(|t| t.validate(a));
            if let Some(tv) = &tv {
                for c in &tv.checks {
                    let status = if c.passed { "ok" } else { "FAILED" };
                    writeln!(text, "twist {}: {status}", c.axiom).unwrap();
                    if let Some(w) = &c.witness {
                        writeln!(text, "  witness: {w}").unwrap();
                    }
                }
            }
            let ok = v.passed() && tv.as_ref().is_none_or(|t| t.passed());
            writeln!(text, "{}", if ok { "valid" } else { "invalid" }).unwrap();
            Ok(Outcome { code: code(ok), text, report: json!({ "action": to_value(&v), "twist": to_value(&tv), "valid": ok }) })
        }
        Command::Galois => {
            let coords = input.coordinates.as_ref().map(|(x, y)| (x.as_slice(), y.as_slice()));
            let cert = galois_certificate(a, coords)?;
            writeln!(text, "|R^alpha| = {}", cert.invariant_order).unwrap();
            writeln!(text, "j: |R*G| = {}, |End| = {}, |ker j| = {}", cert.j.crossed_order, cert.j.end_order, cert.j.kernel_order)
                .unwrap();
            writeln!(text, "rank profile: {:?}", cert.rank_profile()).unwrap();
            if let Some(c) = &cert.coordinates {
                writeln!(text, "coordinates: {}", if c.passed { "ok" } else { "FAILED" }).unwrap();
            }
            if let Some(w) = &cert.witness {
                writeln!(text, "witness: {w}").unwrap();
            }
            writeln!(text, "{}", if cert.galois { "partial Galois" } else { "not partial Galois" }).unwrap();
            let ok = cert.galois && cert.coordinates.as_ref().is_none_or(|c| c.passed);
            Ok(Outcome { code: code(ok), text, report: to_value(&cert) })
        }
        Command::Cohomology { n } => {
            let h = cohomology::cohomology_group(a, *n)?;
            let s = h.summary(a);
            writeln!(text, "H^{n}: {}", factors(&s.invariant_factors)).unwrap();
            writeln!(text, "|C^{n}| = {}, |Z^{n}| = {}, |B^{n}| = {}", s.cochain_order, s.cocycle_order, s.coboundary_order)
                .unwrap();
            Ok(Outcome { code: EXIT_OK, text, report: to_value(&s) })
        }
        Command::Crossed { check } => {
            let t = input.twist.clone().unwrap_or_else(|| Twisting::trivial(a));
            let cp = CrossedRing::new(a.clone(), t)?;
            writeln!(text, "|R*G| = {}", crate::algebra::FiniteAlgebra::order(&cp)).unwrap();
            if !check {
                return Ok(Outcome { code: EXIT_OK, text, report: json!({ "order": crate::algebra::FiniteAlgebra::order(&cp).to_string() }) });
            }
            let assoc = cp.associativity_check();
            let mut report = json!({ "associativity": to_value(&assoc) });
            match &assoc.witness {
                None => {
                    let inv = a.invariant_subring();
                    let center = cp.center()?.same_as(&cp.degree_one(&inv));
                    let whole = crate::paction::SubringDescriptor::whole(a.ring());
                    let centralizer = cp.centralizer_of_r()?.same_as(&cp.degree_one(&whole));
                    writeln!(text, "associative ({} triples)", assoc.triples_checked).unwrap();
                    writeln!(text, "center = R^alpha d_1: {center}").unwrap();
                    writeln!(text, "C(R) = R d_1: {centralizer}").unwrap();
                    report["center_is_invariants"] = json!(center);
                    report["centralizer_is_r"] = json!(centralizer);
                    Ok(Outcome { code: code(center && centralizer), text, report })
                }
                Some(w) => {
                    writeln!(text, "not associative").unwrap();
                    writeln!(text, "witness {w}").unwrap();
                    Ok(Outcome { code: EXIT_VIOLATED, text, report })
                }
            }
        }
        Command::Pics => {
            let r = pics::pics_report(a);
            writeln!(text, "classes: {}", r.classes.len()).unwrap();
            for (g, d) in r.domains.iter().enumerate() {
                writeln!(text, "X_{}: {} classes", grp.label(g), d.len()).unwrap();
            }
            writeln!(text, "fixed classes: {:?}", r.fixed).unwrap();
            writeln!(text, "fixed = idempotents of R^alpha: {}", r.fixed_equals_invariant_idempotents).unwrap();
            for c in &r.axioms.checks {
                writeln!(text, "alpha* {}: {}", c.axiom, if c.passed { "ok" } else { "FAILED" }).unwrap();
            }
            let ok = r.fixed_equals_invariant_idempotents && r.axioms.passed();
            Ok(Outcome { code: code(ok), text, report: to_value(&r) })
        }
        Command::Gencross { check } => {
            let fs = match &input.twist {
                Some(t) => {
                    let w = crate::cohomology::Cochain::new(2, t.values().to_vec());
                    gencross::factor_set_from_cochain(a, &w)?
                }
                None => FreeFactorSet::trivial(a),
            };
            let r = gencross::gencross_report(&fs)?;
            writeln!(text, "associative: {}", r.associative).unwrap();
            writeln!(text, "omega_f trivial: {}", r.omega_f_trivial).unwrap();
            writeln!(text, "omega_f in Z^3: {}", r.omega_f_in_z3).unwrap();
            writeln!(text, "J_1 = R: {}", r.j1_iso_r).unwrap();
            writeln!(text, "partial representation: {}", r.representation.passed()).unwrap();
            if let Some(w) = &r.delta.associativity.witness {
                writeln!(text, "witness {w}").unwrap();
            }
            let ok = !check || (r.associative && r.consistent());
            Ok(Outcome { code: code(ok), text, report: to_value(&r) })
        }
        Command::SequenceCheck => {
            let r = sequence::seven_term_report(&input.sequence_input(seed))?;
            for (k, v) in &r.cohomology {
                writeln!(text, "{k}: {}", factors(v)).unwrap();
            }
            for s in &r.segments {
                writeln!(text, "{}: {}", s.name, s.status).unwrap();
                if let Some(w) = &s.witness {
                    writeln!(text, "  witness: {w}").unwrap();
                }
            }
            if let Some(s) = &r.stopped_after {
                writeln!(text, "stopped after {s}").unwrap();
            }
            writeln!(text, "{}", if r.passed { "all segments pass" } else { "FAILED" }).unwrap();
            Ok(Outcome { code: code(r.passed), text, report: to_value(&r) })
        }
        Command::Units => {
            let ring = a.ring();
            let mut rows = Vec::new();
            let u = ring.unit_group(&Idem::full(ring.len()));
            let fmt = |u: &crate::finring::UnitGroup| {
                factors(&u.group().invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>())
            };
            writeln!(text, "U(R): {}", fmt(&u)).unwrap();
            rows.push(json!({ "ideal": "R", "factors": u.group().invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>() }));
            for g in grp.elements() {
                let u = ring.unit_group(a.one(g));
                writeln!(text, "U(D_{}): {}", grp.label(g), fmt(&u)).unwrap();
                rows.push(json!({ "ideal": format!("D_{}", grp.label(g)), "factors": u.group().invariant_factors().iter().map(|d| d.to_string()).collect::<Vec<_>>() }));
            }
            let c1 = CochainGroup::new(a, 1)?;
            writeln!(text, "|C^1| = {}", c1.order()).unwrap();
            Ok(Outcome { code: EXIT_OK, text, report: json!({ "unit_groups": rows }) })
        }
    }
}
