//! The acceptance battery. Each criterion runs exact checks against a pinned
//! time budget and reports one outcome.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::leavitt::{build_system_s, check_xy_identities, enumerate_irreducible, strong_grading_witness, Leavitt, LeavittSpec};
use crate::poly::Polynomial;
use crate::presented::{
    ab_iso_maps, b_collapse_n1, bergman_generator_map, build_bergman_graph, build_system_t, check_phi_on_irreducibles,
    phi_letter, phi_via_star, verify_matrix_relations, ASpec,
};
use crate::rewrite::check_diamond;
use crate::scalar::Rational;
use crate::star::{entry_formula, iterated_star, FreeRing};
use crate::vmonoid::{
    chain_presentation, find_isomorphism, ibn_certificate, reachable, tietze_reduce, vmonoid_of_bergman, window_from_graphs,
    window_presentation, MonoidElement, Reach, DEFAULT_STATE_BUDGET,
};
use crate::word::Letter;
use crate::zero::{
    check_alternating_products, f_poly, g_poly, is_prime, is_prime_by_type, shapes_up_to, verify_completion_block,
    verify_transformation_block, word_type,
};

/// Count of criteria in the battery.
pub const CRITERIA: u8 = 10;

/// Wall-clock cap for the base-change criterion; past it the remaining
/// columns are skipped and the criterion fails.
pub const BASE_CHANGE_DEADLINE: Duration = Duration::from_secs(120);

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub checks: Vec<Check>,
    pub elapsed_secs: f64,
    pub budget_secs: f64,
    pub error: Option<String>,
}

impl CriterionOutcome {
    pub fn within_budget(&self) -> bool {
        self.elapsed_secs <= self.budget_secs
    }

    pub fn pass(&self) -> bool {
        self.error.is_none() && self.within_budget() && self.checks.iter().all(|c| c.pass)
    }
}

struct Log(Vec<Check>);

impl Log {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }
}

fn spec(m: u32, n: u32) -> LeavittSpec {
    LeavittSpec::new(m, n).expect("positive")
}

fn small_specs() -> impl Iterator<Item = LeavittSpec> {
    (1..=3).flat_map(|m| (1..=3).map(move |n| spec(m, n)))
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "diamond lemma for S, 1 ≤ m,n ≤ 3",
        2 => "diamond lemma for T at (2,2,2), (2,3,2), (3,2,2)",
        3 => "XY = I, YX = I, strong grading, f(t) = g(t) = 1",
        4 => "degree-0 count at (1,2) and prime-type criterion at (2,2)",
        5 => "unitriangular base change for blocks with Σk ≤ 5",
        6 => "alternating xy/yx products are irreducible at (2,2)",
        7 => "entry formula, φ on irreducible words, matrix relations",
        8 => "A↔B maps, Bergman generator map, n = 1 collapse",
        9 => "V-monoid presentations from Bergman graphs",
        10 => "IBN certificate and bounded reachability",
        _ => "unknown criterion",
    }
}

pub fn budget(id: u8) -> Duration {
    Duration::from_secs(match id {
        1 => 10,
        2 => 300,
        3 => 30,
        4 => 60,
        5 => 120,
        6 => 60,
        7 => 300,
        8 => 60,
        9 => 10,
        10 => 60,
        _ => 0,
    })
}

pub fn run_criterion(id: u8) -> CriterionOutcome {
    let start = Instant::now();
    let mut log = Log(Vec::new());
    let res = match id {
        1 => c1(&mut log),
        2 => c2(&mut log),
        3 => c3(&mut log),
        4 => c4(&mut log),
        5 => c5(&mut log, start),
        6 => c6(&mut log),
        7 => c7(&mut log),
        8 => c8(&mut log),
        9 => c9(&mut log),
        10 => c10(&mut log),
        _ => Err(crate::Error::InvalidSpec(format!("no criterion {id}"))),
    };
    CriterionOutcome {
        id,
        title: title(id).to_string(),
        checks: log.0,
        elapsed_secs: start.elapsed().as_secs_f64(),
        budget_secs: budget(id).as_secs_f64(),
        error: res.err().map(|e| e.to_string()),
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=CRITERIA).map(run_criterion).collect()
}

fn c1(log: &mut Log) -> Result<()> {
    for s in small_specs() {
        let rep = check_diamond(&build_system_s::<Rational>(s))?;
        let want = 2 * s.m as usize * s.n as usize;
        log.check(
            format!("S({},{})", s.m, s.n),
            rep.is_confluent() && rep.total() == want,
            format!("{} ambiguities (expected {want}), {} unresolved", rep.total(), rep.unresolved().count()),
        );
    }
    Ok(())
}

fn c2(log: &mut Log) -> Result<()> {
    for (m, n, z) in [(2, 2, 2), (2, 3, 2), (3, 2, 2)] {
        let rep = check_diamond(&build_system_t::<Rational>(ASpec::new(m, n, z)?))?;
        log.check(
            format!("T({m},{n},{z})"),
            rep.is_confluent(),
            format!("{} ambiguities, {} unresolved", rep.total(), rep.unresolved().count()),
        );
    }
    Ok(())
}

fn c3(log: &mut Log) -> Result<()> {
    for s in small_specs() {
        let alg = Leavitt::<Rational>::new(s);
        let id = check_xy_identities(&alg)?;
        let mut ok = id.is_ok();
        for k in 1..=3 {
            ok &= strong_grading_witness(&alg, k)?.ok;
        }
        for t in 1..=3 {
            ok &= alg.nf(&f_poly::<Rational>(s, t))? == Polynomial::one();
            ok &= alg.nf(&g_poly::<Rational>(s, t))? == Polynomial::one();
        }
        log.check(format!("L({},{})", s.m, s.n), ok, format!("{} identity entries", id.entries_checked));
    }
    Ok(())
}

/// Every nonempty xy or yx word of length at most `max_len`: the type
/// criterion against the prefix-degree definition. Returns the number of
/// words checked and the first mismatch.
pub fn prime_criterion_scan(s: LeavittSpec, max_len: usize) -> (u64, Option<String>) {
    let letters = s.letters();
    // sign +1 scans xy words (prefix degrees ≥ 0), −1 scans yx words
    let roots: Vec<(i64, Letter)> = [1i64, -1]
        .into_iter()
        .flat_map(|sign| letters.iter().filter(move |l| (l.is_x() as i64 * 2 - 1) == sign).map(move |l| (sign, *l)))
        .collect();
    let results: Vec<(u64, Option<String>)> = roots
        .par_iter()
        .map(|&(sign, first)| {
            let mut w = vec![first];
            let mut count = 0u64;
            let mut bad = None;
            scan(&letters, sign, &mut w, sign, max_len, &mut count, &mut bad);
            (count, bad)
        })
        .collect();
    let total = results.iter().map(|r| r.0).sum();
    (total, results.into_iter().find_map(|r| r.1))
}

fn scan(letters: &[Letter], sign: i64, w: &mut Vec<Letter>, deg: i64, max_len: usize, count: &mut u64, bad: &mut Option<String>) {
    if deg == 0 {
        *count += 1;
        let by_type = is_prime_by_type(&word_type(w).expect("x and y letters").0);
        if by_type != is_prime(w) && bad.is_none() {
            *bad = Some(crate::Word::from_slice(w).to_string());
        }
    }
    // remaining letters must be able to bring the degree back to zero
    if w.len() == max_len || (deg * sign) as usize > max_len - w.len() {
        return;
    }
    for l in letters {
        let d = deg + if l.is_x() { 1 } else { -1 };
        if d * sign < 0 {
            continue;
        }
        w.push(*l);
        scan(letters, sign, w, d, max_len, count, bad);
        w.pop();
    }
}

fn c4(log: &mut Log) -> Result<()> {
    let words = enumerate_irreducible(spec(1, 2), 2, Some(0))?;
    let listed: Vec<String> = words.iter().map(|w| if w.is_empty() { "∅".into() } else { w.to_string() }).collect();
    log.check("degree-0 words of length ≤ 2 at (1,2)", words.len() == 4, listed.join(", "));
    let (count, bad) = prime_criterion_scan(spec(2, 2), 10);
    log.check(
        "prime type vs prefix degrees at (2,2), length ≤ 10",
        bad.is_none(),
        match bad {
            None => format!("{count} words agree"),
            Some(w) => format!("mismatch at {w}"),
        },
    );
    Ok(())
}

fn c5(log: &mut Log, start: Instant) -> Result<()> {
    let deadline = start + BASE_CHANGE_DEADLINE;
    let specs = [spec(2, 2), spec(2, 3)];
    let shapes = shapes_up_to(5);
    // completion first: it is the cheaper half
    for (label, transformation) in [("completion", false), ("transformation", true)] {
        let half = Instant::now();
        let (mut ok, mut complete, mut cols, mut blocks, mut bad_cols) = (true, true, 0u64, 0usize, 0u64);
        let mut first_failure = None;
        for s in specs {
            let alg = Leavitt::<Rational>::new(s);
            for shape in &shapes {
                let v = if transformation {
                    verify_transformation_block(&alg, shape, Some(deadline))?
                } else {
                    verify_completion_block(&alg, shape, Some(deadline))?
                };
                cols += v.columns_checked;
                bad_cols += v.failed_columns;
                complete &= v.complete;
                if v.complete {
                    blocks += 1;
                }
                if !v.failures.is_empty() {
                    ok = false;
                    first_failure.get_or_insert_with(|| format!("({},{}) {}: {}", s.m, s.n, shape, v.failures[0]));
                }
            }
        }
        let total = specs.len() * shapes.len();
        let mut detail = match &first_failure {
            Some(f) => format!("{bad_cols} of {cols} columns violate, first at {f}"),
            None => format!("{cols} columns"),
        };
        if complete {
            detail.push_str(&format!("; {total} blocks"));
        } else {
            detail.push_str(&format!("; deadline reached with {blocks} of {total} blocks finished"));
        }
        log.check(label, ok && complete, format!("{detail} in {:.1} s", half.elapsed().as_secs_f64()));
    }
    Ok(())
}

fn c6(log: &mut Log) -> Result<()> {
    for max_len in [3, 4] {
        let (count, bad) = check_alternating_products(spec(2, 2), max_len, 3)?;
        log.check(
            format!("factors of length ≤ {max_len}, up to 3 factors"),
            bad.is_empty(),
            match bad.first() {
                None => format!("{count} products irreducible"),
                Some(w) => format!("{w} is reducible"),
            },
        );
    }
    Ok(())
}

fn c7(log: &mut Log) -> Result<()> {
    let ring = FreeRing::<Rational>::new();
    let mut ok = true;
    let mut entries = 0;
    for n in 1..=3u32 {
        for k in 1..=3u32 {
            let us: Vec<Vec<Polynomial<Rational>>> =
                (1..=k).map(|r| (1..=n).map(|i| Polynomial::from_letter(Letter::x(r, i))).collect()).collect();
            let vs: Vec<Vec<Polynomial<Rational>>> =
                (1..=k).map(|r| (1..=n).map(|i| Polynomial::from_letter(Letter::y(r, i))).collect()).collect();
            let mat = iterated_star(&ring, &us, &vs)?;
            let size = (n as usize).pow(k);
            for i in 1..=size {
                for j in 1..=size {
                    entries += 1;
                    ok &= entry_formula(&ring, &us, &vs, i, j)? == *mat.get(i - 1, j - 1)?;
                }
            }
        }
    }
    log.check("entry formula vs iterated ⋆, k, n ≤ 3", ok, format!("{entries} entries"));

    let a = ASpec::new(2, 2, 2)?;
    let mut ok = true;
    for p in 1..=a.z {
        for k in 1..=a.n {
            for l in 1..=a.n {
                let mat = phi_via_star(&ring, a, p, k, l)?;
                for i in 1..=a.dim(p) {
                    for j in 1..=a.dim(p) {
                        ok &= *mat.get(i as usize - 1, j as usize - 1)? == phi_letter(a, &Letter::e(p, k, l, i, j))?;
                    }
                }
            }
        }
    }
    log.check("φ closed form vs ⋆ products at (2,2,2)", ok, "all levels and (k,l)");

    let t = build_system_t::<Rational>(a);
    let rep = check_phi_on_irreducibles(a, &t, 2)?;
    log.check("φ images of irreducible words at (2,2,2)", rep.is_ok(), summary(&rep));
    for (m, n, z) in [(2, 2, 2), (2, 3, 2)] {
        let s = ASpec::new(m, n, z)?;
        let rep = verify_matrix_relations(s, &build_system_t::<Rational>(s))?;
        log.check(format!("matrix relations at ({m},{n},{z})"), rep.is_ok(), summary(&rep));
    }
    Ok(())
}

fn summary(rep: &crate::presented::CheckReport) -> String {
    match rep.failures.first() {
        None => format!("{} checks", rep.checked),
        Some(f) => format!("{} failures, first: {f}", rep.failures.len()),
    }
}

fn c8(log: &mut Log) -> Result<()> {
    let s = ASpec::new(2, 3, 1)?;
    let rep = ab_iso_maps(s, &build_system_t::<Rational>(s))?;
    log.check("A↔B maps at (2,3,1)", rep.is_ok(), summary(&rep));
    let rep = bergman_generator_map::<Rational>(ASpec::new(2, 3, 2)?)?;
    log.check(
        "Bergman generator map at (2,3,2)",
        rep.is_ok(),
        format!("{} relations reduced in {}; {}", rep.relations, rep.system, summary(&rep.check)),
    );
    let mut ok = true;
    let mut checked = 0;
    for m in 1..=3 {
        for z in 1..=2 {
            let rep = b_collapse_n1::<Rational>(m, z)?;
            ok &= rep.is_ok();
            checked += rep.checked;
        }
    }
    log.check("collapse for n = 1, m ≤ 3, z ≤ 2", ok, format!("{checked} entries"));
    Ok(())
}

fn c9(log: &mut Log) -> Result<()> {
    let (mut ok, mut cases) = (true, 0);
    let mut first = None;
    for m in 1..=3 {
        for n in 1..=3 {
            for z in 1..=3 {
                cases += 1;
                let got = tietze_reduce(&vmonoid_of_bergman(&build_bergman_graph(m, n, z)));
                let want = tietze_reduce(&chain_presentation("v", m, n, z));
                if find_isomorphism(&got, &want).is_none() {
                    ok = false;
                    first.get_or_insert(format!("H({m},{n},{z}): {got}"));
                }
            }
        }
    }
    log.check("chains from H(m,n,z)", ok, first.unwrap_or(format!("{cases} cases matched")));
    let (mut ok, mut cases) = (true, 0);
    let mut first = None;
    for m in 1..=3 {
        for n in 1..=3 {
            for z in 1..=3 {
                cases += 1;
                let got = tietze_reduce(&window_from_graphs(m, n, z)?);
                let want = tietze_reduce(&window_presentation(m, n, z));
                if find_isomorphism(&got, &want).is_none() {
                    ok = false;
                    first.get_or_insert(format!("({m},{n},{z}): {got}"));
                }
            }
        }
    }
    log.check("windows |p| ≤ z from pushouts", ok, first.unwrap_or(format!("{cases} cases matched")));
    Ok(())
}

fn c10(log: &mut Log) -> Result<()> {
    for (m, n) in [(2, 3), (3, 2), (2, 2)] {
        let pres = window_presentation(m, n, 3);
        let (mut certified, mut refuted, mut inconclusive) = (true, 0, 0);
        for k in 1..=5u64 {
            for l in k + 1..=5 {
                certified &= ibn_certificate(m, n, k, l, 3)?.separates();
                let a = MonoidElement::gen("v[0]", k);
                let b = MonoidElement::gen("v[0]", l);
                match reachable(&pres, &a, &b, 8, DEFAULT_STATE_BUDGET)? {
                    Reach::Reached { .. } => refuted += 1,
                    Reach::Inconclusive { .. } => inconclusive += 1,
                    Reach::NotFound { .. } => {}
                }
            }
        }
        log.check(
            format!("(m,n) = ({m},{n})"),
            certified && refuted == 0,
            format!("μ separates all pairs: {certified}; BFS reached {refuted}, inconclusive {inconclusive}"),
        );
    }
    Ok(())
}

/// The line printed by the acceptance target.
pub fn format_line(o: &CriterionOutcome) -> String {
    let status = if o.pass() { "PASS" } else { "FAIL" };
    let mut s = format!("{status} criterion {:>2}: {} [{:.2} s / {:.0} s]", o.id, o.title, o.elapsed_secs, o.budget_secs);
    if let Some(e) = &o.error {
        s.push_str(&format!("\n       error: {e}"));
    }
    for c in &o.checks {
        s.push_str(&format!("\n       {} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail));
    }
    if !o.within_budget() {
        s.push_str("\n       over budget");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_scan_small() {
        // length ≤ 4 at (1,1): xy, xxyy, xyxy and their mirrors
        let (count, bad) = prime_criterion_scan(spec(1, 1), 4);
        assert_eq!((count, bad), (6, None));
    }

    #[test]
    fn fast_criteria_pass() {
        for id in [1, 9] {
            let o = run_criterion(id);
            assert!(o.pass(), "{}", format_line(&o));
        }
    }
}
