//! One handler per subcommand. Each returns a [`Report`] holding both
//! renderings; `main` picks one and turns `ok` into the exit status.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use leavitt_core::leavitt::{
    build_system_s, check_xy_identities, enumerate_irreducible, strong_grading_witness, Leavitt, LeavittSpec,
};
use leavitt_core::presented::{
    b_collapse_n1, bergman_generator_map, build_bergman_graph, build_system_b, build_system_t, phi_via_star, phi_word,
    verify_matrix_relations, ASpec, CheckReport,
};
use leavitt_core::rewrite::{check_diamond, AmbiguityKind, ReductionSystem};
use leavitt_core::star::{entry_formula, iterated_star, FreeRing, ReducedRing, Ring, StarMatrix};
use leavitt_core::suite::{format_line, run_criterion, CRITERIA};
use leavitt_core::vmonoid::{
    ibn_certificate, pushout, reachable, tietze_reduce_keeping, vmonoid_of_bergman, MonoidElement, MonoidPresentation,
};
use leavitt_core::word::Alphabet;
use leavitt_core::zero::{
    base_change_block, block_params, classify_prime, completion, completion_preimage, dxy_member, dxy_preimage,
    is_admissible, is_ordered, prime_factorize, signature, skeleton, transformation, verify_completion_block,
    verify_transformation_block, word_type, BaseChangeMap, BlockShape, PrimeClass,
};
use leavitt_core::{Error, Field, Letter, Polynomial, Word};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{AmnCmd, BergmanCmd, Command, Mnz, StarCmd, SystemName, VmonCmd, WordArg, ZeroCmd};

pub struct Report {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(ok: bool, text: impl Into<String>, json: Value) -> Self {
        Report { ok, text: text.into(), json }
    }
}

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit status 2.
    Usage(String),
    /// A computation contradicted a checked property: exit status 1.
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity(_) => Failure::Property(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Out = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// `field` names the scalar backend in JSON output.
pub fn run<F: Field>(cmd: &Command, field: &str) -> Out {
    match cmd {
        Command::Nf { mn, expr } => {
            let spec = LeavittSpec::new(mn.m, mn.n)?;
            let p = Polynomial::<F>::parse_in(expr, &spec)?;
            let nf = Leavitt::<F>::new(spec).nf(&p)?;
            let out = nf.to_string();
            Ok(Report::new(true, &out, json!({"m": mn.m, "n": mn.n, "field": field, "input": expr, "output": out})))
        }
        Command::Basis { mn, max_len, degree } => {
            let spec = LeavittSpec::new(mn.m, mn.n)?;
            let words: Vec<String> = enumerate_irreducible(spec, *max_len, *degree)?.iter().map(Word::to_string).collect();
            let text = words.join("\n");
            Ok(Report::new(
                true,
                text,
                json!({"m": mn.m, "n": mn.n, "max_len": max_len, "degree": degree, "count": words.len(), "words": words}),
            ))
        }
        Command::Diamond { system, mnz, rules } => diamond::<F>(*system, *mnz, *rules),
        Command::StrongGrading { mn, k } => {
            let alg = Leavitt::<F>::new(LeavittSpec::new(mn.m, mn.n)?);
            let w = strong_grading_witness(&alg, *k)?;
            let ids = check_xy_identities(&alg)?;
            let text = format!(
                "L_{k} L_-{k}: {} terms reduce to {}\nL_-{k} L_{k}: {} terms reduce to {}\nXY = I and YX = I: {} entries, {} failures",
                w.xy_terms,
                w.xy_value,
                w.yx_terms,
                w.yx_value,
                ids.entries_checked,
                ids.failures.len()
            );
            Ok(Report::new(w.ok && ids.is_ok(), text, json!({"witness": to_json(&w), "identities": to_json(&ids)})))
        }
        Command::Zero { cmd } => zero::<F>(cmd),
        Command::Star { cmd } => star::<F>(cmd),
        Command::Amn { cmd } => amn::<F>(cmd),
        Command::Bergman { cmd } => bergman::<F>(cmd),
        Command::Vmon { cmd } => vmon(cmd),
        Command::Suite { criteria } => suite(criteria),
    }
}

fn system<F: Field>(name: SystemName, mnz: Mnz) -> Result<ReductionSystem<F>, Failure> {
    Ok(match name {
        SystemName::S => build_system_s::<F>(LeavittSpec::new(mnz.m, mnz.n)?),
        SystemName::T => build_system_t::<F>(ASpec::new(mnz.m, mnz.n, mnz.z)?),
        SystemName::B => build_system_b::<F>(ASpec::new(mnz.m, mnz.n, mnz.z)?),
    })
}

fn diamond<F: Field>(name: SystemName, mnz: Mnz, rules: bool) -> Out {
    let sys = system::<F>(name, mnz)?;
    if rules {
        let list: Vec<Value> =
            sys.rules().iter().map(|r| json!({"lhs": r.lhs.to_string(), "rhs": r.rhs.to_string()})).collect();
        return Ok(Report::new(true, sys.dump().trim_end(), json!({"system": sys.name(), "rules": list})));
    }
    let rep = check_diamond(&sys)?;
    let lhs = |i: usize| sys.rules()[i].lhs.to_string();
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            json!({
                "kind": to_json(&e.ambiguity.kind),
                "lhs1": lhs(e.ambiguity.first),
                "lhs2": lhs(e.ambiguity.second),
                "witness": e.ambiguity.word().to_string(),
                "branch1_nf": e.branch1.to_string(),
                "branch2_nf": e.branch2.to_string(),
                "resolved": e.resolved,
            })
        })
        .collect();
    let unresolved: Vec<String> = rep
        .unresolved()
        .map(|e| format!("unresolved {}: {} vs {}", e.ambiguity.word(), e.branch1, e.branch2))
        .collect();
    let mut text = format!(
        "{}: {} ambiguities ({} overlap, {} inclusion), ",
        sys.name(),
        rep.total(),
        rep.count(AmbiguityKind::Overlap),
        rep.count(AmbiguityKind::Inclusion)
    );
    if unresolved.is_empty() {
        text.push_str("all resolved");
    } else {
        text.push_str(&format!("{} unresolved\n{}", unresolved.len(), unresolved.join("\n")));
    }
    Ok(Report::new(
        rep.is_confluent(),
        text,
        json!({"system": sys.name(), "total": rep.total(), "confluent": rep.is_confluent(), "ambiguities": entries}),
    ))
}

fn parse_word(a: &WordArg) -> Result<(LeavittSpec, Word), Failure> {
    let spec = LeavittSpec::new(a.mn.m, a.mn.n)?;
    Ok((spec, Word::parse_in(&a.word, &spec)?))
}

fn zero_report(input: &Word, output: Value, text: String, certificate: Value, ok: bool) -> Report {
    Report::new(ok, text, json!({"input": input.to_string(), "output": output, "certificate": certificate}))
}

fn zero<F: Field>(cmd: &ZeroCmd) -> Out {
    match cmd {
        ZeroCmd::Classify(a) => {
            let (_, w) = parse_word(a)?;
            let f = prime_factorize(&w)?;
            let mut lines = Vec::new();
            let mut factors = Vec::new();
            for p in &f.factors {
                let class = classify_prime(p)?;
                let t = word_type(p)?;
                let name = match class {
                    PrimeClass::Xy => "xy",
                    PrimeClass::Yx => "yx",
                };
                let ts: Vec<String> = t.0.iter().map(usize::to_string).collect();
                lines.push(format!("{p}  {name}  type ({})", ts.join(",")));
                factors.push(json!({"word": p.to_string(), "class": name, "type": t.0}));
            }
            let rejoined = f.concat() == w;
            Ok(zero_report(&w, json!({"factors": factors}), lines.join("\n"), json!({"factors_multiply_back": rejoined}), rejoined))
        }
        ZeroCmd::Complete(a) => {
            let (spec, w) = parse_word(a)?;
            let (shape, r) = block_params(&w)?;
            let c = completion(spec, &w)?;
            let back = completion_preimage(spec, &c).as_ref() == Some(&w);
            let ordered = is_ordered(&c);
            let irreducible = spec.is_irreducible(&w);
            Ok(zero_report(
                &w,
                json!(c.to_string()),
                c.to_string(),
                json!({"block": shape.0, "r": r, "input_irreducible": irreducible, "ordered": ordered, "preimage_matches": back}),
                back && ordered,
            ))
        }
        ZeroCmd::Transform(a) => {
            let (spec, w) = parse_word(a)?;
            let t = transformation(spec, &w)?;
            let adm = is_admissible(&t);
            Ok(zero_report(
                &w,
                json!(t.to_string()),
                t.to_string(),
                json!({
                    "input_signature": signature(&w)?.to_string(),
                    "output_signature": signature(&t)?.to_string(),
                    "admissible": adm,
                }),
                adm,
            ))
        }
        ZeroCmd::Skeleton(a) => {
            let (_, w) = parse_word(a)?;
            let d = skeleton(&w)?;
            let back = d.reassemble() == w;
            let shape = d.skeleton_type().map(|s| s.0);
            let mut text = format!("skeleton {}", d.skeleton);
            for s in &d.segments {
                text.push_str(&format!("\n{} at {} (factors {}..{}): {}", to_json(&s.kind).as_str().unwrap_or(""), s.offset, s.factors.0, s.factors.1, s.word));
            }
            Ok(zero_report(&w, to_json(&d), text, json!({"reassembles": back, "skeleton_type": shape}), back))
        }
        ZeroCmd::Dxy(a) => {
            let (spec, w) = parse_word(a)?;
            let member = dxy_member(spec, &w)?;
            let pre = dxy_preimage(spec, &w)?;
            let round_trip = match &pre {
                Some(u) if u.is_empty() => Some(w.is_empty()),
                Some(u) => Some(transformation(spec, &completion(spec, u)?)? == w),
                None => None,
            };
            let ok = !(member && pre.is_none()) && round_trip != Some(false);
            let text = format!(
                "criterion {}; preimage {}",
                if member { "applies" } else { "does not apply" },
                pre.as_ref().map_or("none".to_string(), Word::to_string)
            );
            Ok(zero_report(
                &w,
                json!({"member": member, "preimage": pre.as_ref().map(Word::to_string)}),
                text,
                json!({"round_trip": round_trip}),
                ok,
            ))
        }
        ZeroCmd::BaseChange { mn, block, map, deadline, dense } => {
            let alg = Leavitt::<F>::new(LeavittSpec::new(mn.m, mn.n)?);
            let shape = BlockShape::parse(block)?;
            let map = BaseChangeMap::from_str(map)?;
            let input = json!({"block": shape.0, "map": map.to_string()});
            if *dense {
                let mat = base_change_block(&alg, &shape, map)?;
                let ok = mat.is_lower_unitriangular();
                let columns: Vec<Vec<(usize, String)>> =
                    mat.columns.iter().map(|c| c.iter().map(|(r, v)| (*r, v.to_string())).collect()).collect();
                let mut text = format!("{} block {shape}: dimension {}, lower unitriangular: {ok}", map, mat.dim());
                for (j, col) in columns.iter().enumerate() {
                    let entries: Vec<String> = col.iter().map(|(r, v)| format!("{r}:{v}")).collect();
                    text.push_str(&format!("\n{}  [{}]", mat.basis[j], entries.join(" ")));
                }
                let basis: Vec<String> = mat.basis.iter().map(Word::to_string).collect();
                return Ok(Report::new(
                    ok,
                    text,
                    json!({"input": input, "output": {"basis": basis, "columns": columns}, "certificate": {"lower_unitriangular": ok}}),
                ));
            }
            let limit = deadline.map(|s| Instant::now() + Duration::from_secs(s));
            let v = match map {
                BaseChangeMap::Completion => verify_completion_block(&alg, &shape, limit)?,
                BaseChangeMap::Transformation => verify_transformation_block(&alg, &shape, limit)?,
            };
            let mut text = format!(
                "{map} block {shape}: {} columns checked ({} unit by construction), {} violating, {}",
                v.columns_checked,
                v.identity_columns,
                v.failed_columns,
                if v.complete { "complete" } else { "stopped at the deadline" }
            );
            for f in &v.failures {
                text.push_str(&format!("\n{f}"));
            }
            Ok(Report::new(v.is_ok(), text, json!({"input": input, "output": to_json(&v), "certificate": {"unitriangular": v.is_ok()}})))
        }
    }
}

/// Matrices on the command line: `{"base": 2, "i": 0, "j": 1, "entries": ["x(1,1)", "x(1,2)"]}`,
/// entries in row-major order.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    base: u32,
    i: u32,
    j: u32,
    entries: Vec<String>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(what: &str, s: &str) -> Result<T, Failure> {
    serde_json::from_str(s).map_err(|e| usage(format!("{what}: {e}")))
}

fn parse_matrix<F: Field>(s: &str) -> Result<StarMatrix<Polynomial<F>>, Failure> {
    let m: MatrixJson = parse_json("matrix", s)?;
    let entries = m.entries.iter().map(|e| Polynomial::parse(e)).collect::<Result<Vec<_>, _>>()?;
    Ok(StarMatrix::new(m.base, m.i, m.j, entries)?)
}

fn matrix_json<F: Field>(m: &StarMatrix<Polynomial<F>>) -> Value {
    let (i, j) = m.exponents();
    to_json(&MatrixJson { base: m.base(), i, j, entries: m.entries().iter().map(|e| e.to_string()).collect() })
}

fn star_mul<F: Field, R: Ring<Elem = Polynomial<F>>>(ring: &R, a: &str, b: &str) -> Out {
    let (a, b) = (parse_matrix::<F>(a)?, parse_matrix::<F>(b)?);
    let c = a.star(ring, &b)?;
    Ok(Report::new(true, c.to_string().trim_end(), json!({"output": matrix_json(&c)})))
}

fn parse_vectors<F: Field>(what: &str, s: &str) -> Result<Vec<Vec<Polynomial<F>>>, Failure> {
    let raw: Vec<Vec<String>> = parse_json(what, s)?;
    raw.iter()
        .map(|v| v.iter().map(|e| Polynomial::parse(e).map_err(Failure::from)).collect())
        .collect()
}

fn star<F: Field>(cmd: &StarCmd) -> Out {
    match cmd {
        StarCmd::Mul { a, b, m: Some(m), n: Some(n) } => {
            let sys = build_system_s::<F>(LeavittSpec::new(*m, *n)?);
            star_mul::<F, _>(&ReducedRing::new(&sys), a, b)
        }
        StarCmd::Mul { a, b, .. } => star_mul::<F, _>(&FreeRing::<F>::new(), a, b),
        StarCmd::Entry { u, v, i, j } => {
            let ring = FreeRing::<F>::new();
            let (us, vs) = (parse_vectors::<F>("u", u)?, parse_vectors::<F>("v", v)?);
            let value = entry_formula(&ring, &us, &vs, *i, *j)?;
            // cross-check against repeated ⋆ while the matrix stays small
            let n = us[0].len();
            let small = (n as f64).powi(us.len() as i32 * 2) <= 4096.0;
            let agrees = if small {
                Some(iterated_star(&ring, &us, &vs)?.get(i - 1, j - 1)? == &value)
            } else {
                None
            };
            Ok(Report::new(
                agrees != Some(false),
                value.to_string(),
                json!({"input": {"i": i, "j": j}, "output": value.to_string(), "certificate": {"matches_iterated_star": agrees}}),
            ))
        }
    }
}

fn check_report(rep: &CheckReport) -> Report {
    let mut text = format!("{}: {} checked, {} failures", rep.name, rep.checked, rep.failures.len());
    for f in &rep.failures {
        text.push_str(&format!("\n{f}"));
    }
    Report::new(rep.is_ok(), text, to_json(rep))
}

fn amn<F: Field>(cmd: &AmnCmd) -> Out {
    match cmd {
        AmnCmd::Diamond { mnz, system } => {
            if *system == SystemName::S {
                return Err(usage("amn diamond takes --system T or B"));
            }
            diamond::<F>(*system, *mnz, false)
        }
        AmnCmd::Phi { mnz, letter } => {
            let spec = ASpec::new(mnz.m, mnz.n, mnz.z)?;
            let l = Letter::parse(letter)?;
            spec.check(&l)?;
            let w = phi_word(spec, &l)?;
            let Letter::E { p, k, l: col, i, j } = l else {
                return Err(usage(format!("{letter} is not a letter e(p,k,l,i,j)")));
            };
            let m = phi_via_star(&FreeRing::<F>::new(), spec, p, k, col)?;
            let agrees = m.get(i as usize - 1, j as usize - 1)? == &Polynomial::from_word(w.clone());
            Ok(Report::new(
                agrees,
                w.to_string(),
                json!({"input": letter, "output": w.to_string(), "certificate": {"matches_star_product": agrees}}),
            ))
        }
        AmnCmd::VerifyRelations { mnz } => {
            let spec = ASpec::new(mnz.m, mnz.n, mnz.z)?;
            let t = build_system_t::<F>(spec);
            Ok(check_report(&verify_matrix_relations(spec, &t)?))
        }
    }
}

fn bergman<F: Field>(cmd: &BergmanCmd) -> Out {
    match cmd {
        BergmanCmd::Graph { mnz } => {
            let g = build_bergman_graph(mnz.m, mnz.n, mnz.z);
            let mut text = format!("vertices: {}", g.vertices.join(", "));
            for e in &g.blue {
                text.push_str(&format!("\n{}: {} x {} -> {}", e.name, e.multiplicity, e.source, e.range.join(", ")));
            }
            for e in &g.red {
                text.push_str(&format!("\n{}: {} -> {}", e.name, e.source, e.range.join(", ")));
            }
            Ok(Report::new(true, text, to_json(&g)))
        }
        BergmanCmd::Map { mnz } => {
            let rep = bergman_generator_map::<F>(ASpec::new(mnz.m, mnz.n, mnz.z)?)?;
            let mut r = check_report(&rep.check);
            r.text = format!("{} relations, {} confluent: {}\n{}", rep.relations, "B", rep.b_confluent, r.text);
            r.json = to_json(&rep);
            Ok(r)
        }
        BergmanCmd::CollapseN1 { m, z } => Ok(check_report(&b_collapse_n1::<F>(*m, *z)?)),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn read_presentation(path: &Path) -> Result<MonoidPresentation, Failure> {
    let p: MonoidPresentation = parse_json(&path.display().to_string(), &read_input(path)?)?;
    p.validate()?;
    Ok(p)
}

fn presentation_report(p: &MonoidPresentation, extra: Option<(&str, Value)>) -> Report {
    let mut json = to_json(p);
    if let (Some((k, v)), Value::Object(map)) = (extra, &mut json) {
        map.insert(k.to_string(), v);
    }
    Report::new(true, p.to_string(), json)
}

fn vmon(cmd: &VmonCmd) -> Out {
    match cmd {
        VmonCmd::FromGraph { mnz, reduce } => {
            let g = build_bergman_graph(mnz.m, mnz.n, mnz.z);
            let p = vmonoid_of_bergman(&g);
            if !reduce {
                return Ok(presentation_report(&p, None));
            }
            let keep: Vec<String> = (0..=mnz.z).map(|q| format!("v({q},1)")).filter(|v| p.generators.contains(v)).collect();
            let trace = tietze_reduce_keeping(&p, &keep);
            Ok(presentation_report(&trace.presentation, Some(("eliminated", to_json(&trace.eliminated)))))
        }
        VmonCmd::Tietze { input, keep } => {
            let p = read_presentation(input)?;
            let trace = tietze_reduce_keeping(&p, keep);
            let mut r = presentation_report(&trace.presentation, Some(("eliminated", to_json(&trace.eliminated))));
            for (g, e) in &trace.eliminated {
                r.text.push_str(&format!("\n{g} := {e}"));
            }
            Ok(r)
        }
        VmonCmd::Pushout { left, right, glue } => {
            let (a, b) = (read_presentation(left)?, read_presentation(right)?);
            let pairs = glue
                .iter()
                .map(|g| {
                    let (l, r) = g.split_once('=').ok_or_else(|| usage(format!("glue {g:?} needs the form lhs=rhs")))?;
                    Ok((MonoidElement::parse(l)?, MonoidElement::parse(r)?))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(presentation_report(&pushout(&a, &b, &pairs)?, None))
        }
        VmonCmd::Reach { input, from, to, depth, budget } => {
            let p = read_presentation(input)?;
            let (a, b) = (MonoidElement::parse(from)?, MonoidElement::parse(to)?);
            let r = reachable(&p, &a, &b, *depth, *budget)?;
            let v = to_json(&r);
            let text = match &r {
                leavitt_core::vmonoid::Reach::Reached { depth } => format!("reached at depth {depth}"),
                leavitt_core::vmonoid::Reach::NotFound { depth, orbit_exhausted: true, states } => {
                    format!("not reachable: the orbit has {states} elements, exhausted by depth {depth}")
                }
                leavitt_core::vmonoid::Reach::NotFound { depth, states, .. } => {
                    format!("not found within depth {depth} ({states} states)")
                }
                leavitt_core::vmonoid::Reach::Inconclusive { states } => format!("inconclusive after {states} states"),
            };
            Ok(Report::new(r.is_reached(), text, json!({"from": a, "to": b, "result": v})))
        }
        VmonCmd::Ibn { m, n, k, l, window } => {
            let c = ibn_certificate(*m, *n, *k, *l, *window)?;
            let text = format!(
                "{}: μ({k}·v[0]) = {}, μ({l}·v[0]) = {} ({} window relations respected: {})",
                c.verdict, c.mu_k, c.mu_l, c.relations_checked, c.relations_respected
            );
            Ok(Report::new(c.relations_respected, text, to_json(&c)))
        }
    }
}

fn suite(criteria: &[u8]) -> Out {
    let ids: Vec<u8> = if criteria.is_empty() { (1..=CRITERIA).collect() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|&&id| id == 0 || id > CRITERIA) {
        return Err(usage(format!("no criterion {bad}; criteria run from 1 to {CRITERIA}")));
    }
    let outcomes: Vec<_> = ids.iter().map(|&id| run_criterion(id)).collect();
    let failing = outcomes.iter().filter(|o| !o.pass()).count();
    let mut text: Vec<String> = outcomes.iter().map(format_line).collect();
    text.push(format!("{failing} failing"));
    Ok(Report::new(failing == 0, text.join("\n"), json!({"criteria": to_json(&outcomes), "failing": failing})))
}
