//! Finitely presented commutative monoids: the presentation read off a
//! Bergman graph, Tietze elimination, pushouts, bounded reachability and
//! the `μ` invariant that certifies IBN.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presented::BergmanGraph;

/// A finite multiset of generators. Zero counts are never stored.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonoidElement(BTreeMap<String, u64>);

impl MonoidElement {
    pub fn zero() -> Self {
        MonoidElement(BTreeMap::new())
    }

    pub fn gen(g: impl Into<String>, count: u64) -> Self {
        let mut e = Self::zero();
        e.add_gen(g.into(), count);
        e
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, u64)>) -> Self {
        let mut e = Self::zero();
        for (g, c) in pairs {
            e.add_gen(g.into(), c);
        }
        e
    }

    fn add_gen(&mut self, g: String, c: u64) {
        if c > 0 {
            *self.0.entry(g).or_insert(0) += c;
        }
    }

    pub fn count(&self, g: &str) -> u64 {
        self.0.get(g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.0.iter().map(|(g, c)| (g.as_str(), *c))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.iter() {
            out.add_gen(g.to_string(), c);
        }
        out
    }

    pub fn times(&self, k: u64) -> Self {
        MonoidElement::from_pairs(self.iter().map(|(g, c)| (g.to_string(), c * k)))
    }

    /// Replaces every occurrence of `g` by `image`.
    pub fn substitute(&self, g: &str, image: &MonoidElement) -> Self {
        let k = self.count(g);
        let mut out = self.clone();
        out.0.remove(g);
        out.plus(&image.times(k))
    }

    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Self {
        MonoidElement::from_pairs(self.iter().map(|(g, c)| (f(g), c)))
    }

    /// Parses `2*v[0] + v[1]`; `0` is the empty multiset.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split('+') {
            let term = term.trim();
            let (c, g) = match term.split_once('*') {
                Some((c, g)) => (c.trim().parse::<u64>().map_err(|_| bad("bad count"))?, g.trim()),
                None => (1, term),
            };
            if g.is_empty() || g.chars().any(|ch| ch.is_whitespace() || ch == '*') {
                return Err(bad("bad generator"));
            }
            out.add_gen(g.to_string(), c);
        }
        Ok(out)
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (g, c)) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if c == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{c}*{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(MonoidElement, MonoidElement)>,
}

impl MonoidPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<(MonoidElement, MonoidElement)>) -> Result<Self> {
        let p = MonoidPresentation { generators, relations };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let gens: HashSet<&str> = self.generators.iter().map(String::as_str).collect();
        if gens.len() != self.generators.len() {
            return Err(Error::InvalidSpec("duplicate generator".into()));
        }
        for (a, b) in &self.relations {
            for (g, _) in a.iter().chain(b.iter()) {
                if !gens.contains(g) {
                    return Err(Error::UnknownGenerator(g.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, e: &MonoidElement) -> bool {
        e.iter().all(|(g, _)| self.generators.iter().any(|h| h == g))
    }

    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Result<Self> {
        MonoidPresentation::new(
            self.generators.iter().map(|g| f(g)).collect(),
            self.relations.iter().map(|(a, b)| (a.rename(f), b.rename(f))).collect(),
        )
    }

    /// Relations as unordered pairs without trivial or repeated ones.
    pub fn canonical_relations(&self) -> BTreeSet<(MonoidElement, MonoidElement)> {
        self.relations
            .iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) })
            .collect()
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | ", self.generators.join(", "))?;
        let rels: Vec<String> = self.relations.iter().map(|(a, b)| format!("{a} = {b}")).collect();
        write!(f, "{}⟩", rels.join(", "))
    }
}

/// One generator per vertex, `m·v(p−1,1) = v(p,1) + … + v(p,n)` per blue
/// hyperedge and `v(p,q) = v(p,q+1)` per red edge.
pub fn vmonoid_of_bergman(graph: &BergmanGraph) -> MonoidPresentation {
    let mut relations = Vec::new();
    for e in graph.blue.iter().chain(&graph.red) {
        let lhs = MonoidElement::gen(e.source.clone(), e.multiplicity as u64);
        let rhs = MonoidElement::from_pairs(e.range.iter().map(|v| (v.clone(), 1)));
        relations.push((lhs, rhs));
    }
    MonoidPresentation::new(graph.vertices.clone(), relations).expect("graph edges use graph vertices")
}

/// Result of Tietze elimination: the reduced presentation and, for each
/// eliminated generator, its value in the surviving ones.
#[derive(Clone, Debug, Serialize)]
pub struct TietzeTrace {
    pub presentation: MonoidPresentation,
    pub eliminated: BTreeMap<String, MonoidElement>,
}

impl TietzeTrace {
    /// The image of an element of the original presentation.
    pub fn map(&self, e: &MonoidElement) -> MonoidElement {
        let mut out = MonoidElement::zero();
        for (g, c) in e.iter() {
            match self.eliminated.get(g) {
                Some(img) => out = out.plus(&img.times(c)),
                None => out = out.plus(&MonoidElement::gen(g, c)),
            }
        }
        out
    }
}

/// Eliminates generators `g` that occur in a relation `g = E` with `g ∉ E`,
/// never touching the generators listed in `keep`. Relations are scanned in
/// order, left side before right side, and the first usable one is applied.
pub fn tietze_reduce_keeping(p: &MonoidPresentation, keep: &[String]) -> TietzeTrace {
    let mut gens = p.generators.clone();
    let mut rels = tidy(p.relations.clone());
    let mut eliminated: BTreeMap<String, MonoidElement> = BTreeMap::new();
    let single = |e: &MonoidElement| -> Option<String> {
        let mut it = e.iter();
        match (it.next(), it.next()) {
            (Some((g, 1)), None) => Some(g.to_string()),
            _ => None,
        }
    };
    while let Some((idx, g, image)) = rels.iter().enumerate().find_map(|(idx, (a, b))| {
        [(a, b), (b, a)].into_iter().find_map(|(side, other)| {
            let g = single(side)?;
            (other.count(&g) == 0 && !keep.contains(&g)).then(|| (idx, g, other.clone()))
        })
    }) {
        rels.remove(idx);
        for (a, b) in rels.iter_mut() {
            *a = a.substitute(&g, &image);
            *b = b.substitute(&g, &image);
        }
        for v in eliminated.values_mut() {
            *v = v.substitute(&g, &image);
        }
        eliminated.insert(g.clone(), image);
        gens.retain(|h| *h != g);
        rels = tidy(rels);
    }
    let presentation = MonoidPresentation { generators: gens, relations: rels };
    TietzeTrace { presentation, eliminated }
}

/// Drops trivial relations and repeats, keeping orientation and order.
fn tidy(rels: Vec<(MonoidElement, MonoidElement)>) -> Vec<(MonoidElement, MonoidElement)> {
    let mut seen = HashSet::new();
    rels.into_iter()
        .filter(|(a, b)| a != b && seen.insert(if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }))
        .collect()
}

pub fn tietze_reduce(p: &MonoidPresentation) -> MonoidPresentation {
    tietze_reduce_keeping(p, &[]).presentation
}

/// Disjoint union plus one relation per glue pair.
pub fn pushout(
    p1: &MonoidPresentation,
    p2: &MonoidPresentation,
    glue: &[(MonoidElement, MonoidElement)],
) -> Result<MonoidPresentation> {
    for g in &p2.generators {
        if p1.generators.contains(g) {
            return Err(Error::InvalidSpec(format!("generator {g} occurs on both sides of the pushout")));
        }
    }
    for (a, b) in glue {
        if !p1.contains(a) || !p2.contains(b) {
            return Err(Error::InvalidSpec(format!("glue {a} = {b} is not over the two presentations")));
        }
    }
    let mut gens = p1.generators.clone();
    gens.extend(p2.generators.iter().cloned());
    let mut rels = glue.to_vec();
    rels.extend(p1.relations.iter().cloned());
    rels.extend(p2.relations.iter().cloned());
    MonoidPresentation::new(gens, rels)
}

/// A bijection of generators carrying the relations of `a` onto those of
/// `b`, found by exhaustive search. Generators are first grouped by how
/// they occur in relations, and permutations only run inside a group.
pub fn find_isomorphism(a: &MonoidPresentation, b: &MonoidPresentation) -> Option<BTreeMap<String, String>> {
    if a.generators.len() != b.generators.len() {
        return None;
    }
    let ra = a.canonical_relations();
    let rb = b.canonical_relations();
    if ra.len() != rb.len() {
        return None;
    }
    fn profile(p: &BTreeSet<(MonoidElement, MonoidElement)>, g: &str) -> Vec<(u64, u64)> {
        let mut v: Vec<(u64, u64)> =
            p.iter().map(|(x, y)| (x.count(g).min(y.count(g)), x.count(g).max(y.count(g)))).filter(|c| *c != (0, 0)).collect();
        v.sort();
        v
    }
    let pa: Vec<_> = a.generators.iter().map(|g| profile(&ra, g)).collect();
    let pb: Vec<_> = b.generators.iter().map(|g| profile(&rb, g)).collect();
    let mut used = vec![false; b.generators.len()];
    let mut assign: Vec<usize> = Vec::new();
    fn go(
        a: &MonoidPresentation,
        b: &MonoidPresentation,
        ra: &BTreeSet<(MonoidElement, MonoidElement)>,
        rb: &BTreeSet<(MonoidElement, MonoidElement)>,
        pa: &[Vec<(u64, u64)>],
        pb: &[Vec<(u64, u64)>],
        used: &mut Vec<bool>,
        assign: &mut Vec<usize>,
    ) -> bool {
        let i = assign.len();
        if i == a.generators.len() {
            let map: BTreeMap<&str, &str> =
                a.generators.iter().zip(assign.iter()).map(|(g, &j)| (g.as_str(), b.generators[j].as_str())).collect();
            let f = |g: &str| map[g].to_string();
            let image = MonoidPresentation { generators: Vec::new(), relations: ra.iter().map(|(x, y)| (x.rename(&f), y.rename(&f))).collect() };
            return image.canonical_relations() == *rb;
        }
        for j in 0..b.generators.len() {
            if used[j] || pa[i] != pb[j] {
                continue;
            }
            used[j] = true;
            assign.push(j);
            if go(a, b, ra, rb, pa, pb, used, assign) {
                return true;
            }
            assign.pop();
            used[j] = false;
        }
        false
    }
    if go(a, b, &ra, &rb, &pa, &pb, &mut used, &mut assign) {
        Some(a.generators.iter().zip(assign).map(|(g, j)| (g.clone(), b.generators[j].clone())).collect())
    } else {
        None
    }
}

/// Label of the generator `v_p` in the chain presentations.
pub fn chain_label(prefix: &str, p: i64) -> String {
    format!("{prefix}[{p}]")
}

/// `⟨v_0, …, v_z | m·v_{p−1} = n·v_p (1 ≤ p ≤ z)⟩`.
pub fn chain_presentation(prefix: &str, m: u32, n: u32, z: u32) -> MonoidPresentation {
    let gens = (0..=z as i64).map(|p| chain_label(prefix, p)).collect();
    let rels = (1..=z as i64)
        .map(|p| (MonoidElement::gen(chain_label(prefix, p - 1), m as u64), MonoidElement::gen(chain_label(prefix, p), n as u64)))
        .collect();
    MonoidPresentation::new(gens, rels).expect("well formed")
}

/// `⟨v_p (|p| ≤ z) | m·v_p = n·v_{p+1} (−z ≤ p < z)⟩`.
pub fn window_presentation(m: u32, n: u32, z: u32) -> MonoidPresentation {
    let z = z as i64;
    let gens = (-z..=z).map(|p| chain_label("v", p)).collect();
    let rels = (-z..z)
        .map(|p| (MonoidElement::gen(chain_label("v", p), m as u64), MonoidElement::gen(chain_label("v", p + 1), n as u64)))
        .collect();
    MonoidPresentation::new(gens, rels).expect("well formed")
}

/// The presentation of `𝒱(B(m,n,z))` after Tietze elimination, keeping the
/// vertices `v(p,1)` and naming them `{prefix}[p]`.
pub fn reduced_bergman_chain(graph: &BergmanGraph, prefix: &str) -> Result<MonoidPresentation> {
    let p = vmonoid_of_bergman(graph);
    let keep: Vec<String> = (0..=graph.z).map(|p| format!("v({p},1)")).filter(|g| p.generators.contains(g)).collect();
    let reduced = tietze_reduce_keeping(&p, &keep).presentation;
    reduced.rename(&|g| match g.strip_prefix("v(").and_then(|r| r.strip_suffix(",1)")) {
        Some(level) => format!("{prefix}[{level}]"),
        None => g.to_string(),
    })
}

/// Glues the chains of `H(m,n,z)` and `H(n,m,z)` along `v_0 = w_0`, renames
/// `w_p` to `v_{−p}` and merges the glued pair.
pub fn window_from_graphs(m: u32, n: u32, z: u32) -> Result<MonoidPresentation> {
    use crate::presented::build_bergman_graph;
    let a = reduced_bergman_chain(&build_bergman_graph(m, n, z), "v")?;
    let b = reduced_bergman_chain(&build_bergman_graph(n, m, z), "w")?;
    let glue = [(MonoidElement::gen("v[0]", 1), MonoidElement::gen("w[0]", 1))];
    let glued = pushout(&a, &b, &glue)?;
    let renamed = glued.rename(&|g| match g.strip_prefix("w[").and_then(|r| r.strip_suffix(']')) {
        Some("0") => g.to_string(),
        Some(level) => format!("v[-{level}]"),
        None => g.to_string(),
    })?;
    let keep: Vec<String> = renamed.generators.iter().filter(|g| g.starts_with("v[")).cloned().collect();
    Ok(tietze_reduce_keeping(&renamed, &keep).presentation)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Reach {
    Reached { depth: usize },
    /// `orbit_exhausted` means the whole orbit of `a` was explored.
    NotFound { depth: usize, orbit_exhausted: bool, states: usize },
    Inconclusive { states: usize },
}

impl Reach {
    pub fn is_reached(&self) -> bool {
        matches!(self, Reach::Reached { .. })
    }
}

pub const DEFAULT_STATE_BUDGET: usize = 2_000_000;

/// Breadth-first search from `a` using `u + lhs ↔ u + rhs` moves.
pub fn reachable(p: &MonoidPresentation, a: &MonoidElement, b: &MonoidElement, depth: usize, budget: usize) -> Result<Reach> {
    for e in [a, b] {
        if !p.contains(e) {
            return Err(Error::UnknownGenerator(e.to_string()));
        }
    }
    let idx: BTreeMap<&str, usize> = p.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let vec_of = |e: &MonoidElement| {
        let mut v = vec![0u64; p.generators.len()];
        for (g, c) in e.iter() {
            v[idx[g]] += c;
        }
        v
    };
    let mut moves: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
    for (l, r) in &p.relations {
        moves.push((vec_of(l), vec_of(r)));
        moves.push((vec_of(r), vec_of(l)));
    }
    let (start, goal) = (vec_of(a), vec_of(b));
    if start == goal {
        return Ok(Reach::Reached { depth: 0 });
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
    let mut frontier = VecDeque::from([start]);
    for d in 1..=depth {
        let mut next = VecDeque::new();
        while let Some(s) = frontier.pop_front() {
            for (l, r) in &moves {
                if s.iter().zip(l).all(|(x, y)| x >= y) {
                    let t: Vec<u64> = s.iter().zip(l).zip(r).map(|((x, y), z)| x - y + z).collect();
                    if t == goal {
                        return Ok(Reach::Reached { depth: d });
                    }
                    if seen.insert(t.clone()) {
                        if seen.len() > budget {
                            return Ok(Reach::Inconclusive { states: seen.len() });
                        }
                        next.push_back(t);
                    }
                }
            }
        }
        if next.is_empty() {
            return Ok(Reach::NotFound { depth: d, orbit_exhausted: true, states: seen.len() });
        }
        frontier = next;
    }
    Ok(Reach::NotFound { depth, orbit_exhausted: false, states: seen.len() })
}

fn level_of(g: &str) -> Option<i64> {
    g.strip_prefix("v[")?.strip_suffix(']')?.parse().ok()
}

/// `μ(v_p) = (m/n)^p`, extended additively.
pub fn mu(m: u32, n: u32, e: &MonoidElement) -> Result<BigRational> {
    let ratio = BigRational::new(BigInt::from(m), BigInt::from(n));
    let mut total = BigRational::zero();
    for (g, c) in e.iter() {
        let p = level_of(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
        let base = if p >= 0 { ratio.clone() } else { ratio.recip() };
        let mut v = BigRational::one();
        for _ in 0..p.unsigned_abs() {
            v *= &base;
        }
        total += v * BigRational::from_integer(BigInt::from(c));
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IbnCertificate {
    pub m: u32,
    pub n: u32,
    pub k: u64,
    pub l: u64,
    pub window: u32,
    pub relations_checked: usize,
    pub relations_respected: bool,
    pub mu_k: String,
    pub mu_l: String,
    /// `distinct` when `μ` separates `k·v_0` from `l·v_0`, `degenerate` when `k = l`.
    pub verdict: String,
}

impl IbnCertificate {
    pub fn separates(&self) -> bool {
        self.relations_respected && self.verdict == "distinct"
    }
}

/// Checks that `μ` respects every relation of the window presentation and
/// compares `μ(k·v_0)` with `μ(l·v_0)`.
pub fn ibn_certificate(m: u32, n: u32, k: u64, l: u64, window: u32) -> Result<IbnCertificate> {
    if m == 0 || n == 0 || k == 0 || l == 0 {
        return Err(Error::InvalidSpec("m, n, k, l must be positive".into()));
    }
    let pres = window_presentation(m, n, window);
    let mut respected = true;
    for (a, b) in &pres.relations {
        respected &= mu(m, n, a)? == mu(m, n, b)?;
    }
    let mk = mu(m, n, &MonoidElement::gen("v[0]", k))?;
    let ml = mu(m, n, &MonoidElement::gen("v[0]", l))?;
    let verdict = if k == l {
        "degenerate"
    } else if mk != ml {
        "distinct"
    } else {
        "inseparable"
    };
    Ok(IbnCertificate {
        m,
        n,
        k,
        l,
        window,
        relations_checked: pres.relations.len(),
        relations_respected: respected,
        mu_k: mk.to_string(),
        mu_l: ml.to_string(),
        verdict: verdict.to_string(),
    })
}
