//! The Leavitt algebra `L(m,n)`: alphabet, the reduction system `S`, the
//! canonical grading and the irreducible basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rewrite::{ReductionRule, ReductionSystem, WeightSpec};
use crate::scalar::{Field, Rational};
use crate::word::{Alphabet, Letter, Word};

/// Parameters `(m, n)` of `L(m,n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct LeavittSpec {
    pub m: u32,
    pub n: u32,
}

impl LeavittSpec {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidSpec(format!("m and n must be positive, got ({m},{n})")));
        }
        Ok(LeavittSpec { m, n })
    }

    /// The parameters `(n, m)`.
    pub fn swapped(&self) -> Self {
        LeavittSpec { m: self.n, n: self.m }
    }

    pub fn x(&self, i: u32, j: u32) -> Result<Letter> {
        let l = Letter::x(i, j);
        self.check(&l)?;
        Ok(l)
    }

    pub fn y(&self, j: u32, i: u32) -> Result<Letter> {
        let l = Letter::y(j, i);
        self.check(&l)?;
        Ok(l)
    }

    /// All `x_{ij}` in letter order.
    pub fn x_letters(&self) -> Vec<Letter> {
        let mut v = Vec::new();
        for i in 1..=self.m {
            for j in 1..=self.n {
                v.push(Letter::x(i, j));
            }
        }
        v
    }

    /// All `y_{ji}` in letter order.
    pub fn y_letters(&self) -> Vec<Letter> {
        let mut v = Vec::new();
        for j in 1..=self.n {
            for i in 1..=self.m {
                v.push(Letter::y(j, i));
            }
        }
        v
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut v = self.x_letters();
        v.extend(self.y_letters());
        v
    }

    /// Whether `ab` is a forbidden word `x_{in}y_{ni'}` or `y_{jm}x_{mj'}`.
    #[inline]
    pub fn is_forbidden_pair(&self, a: &Letter, b: &Letter) -> bool {
        match (a, b) {
            (Letter::X { j, .. }, Letter::Y { j: j2, .. }) => *j == self.n && *j2 == self.n,
            (Letter::Y { i, .. }, Letter::X { i: i2, .. }) => *i == self.m && *i2 == self.m,
            _ => false,
        }
    }

    /// Whether `w` avoids all forbidden words.
    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        w.windows(2).all(|p| !self.is_forbidden_pair(&p[0], &p[1]))
    }

    /// The forbidden words, which are the left-hand sides of `S`.
    pub fn forbidden_words(&self) -> Vec<Word> {
        let mut v = Vec::new();
        for i in 1..=self.m {
            for i2 in 1..=self.m {
                v.push(Word::new(vec![Letter::x(i, self.n), Letter::y(self.n, i2)]));
            }
        }
        for j in 1..=self.n {
            for j2 in 1..=self.n {
                v.push(Word::new(vec![Letter::y(j, self.m), Letter::x(self.m, j2)]));
            }
        }
        v
    }
}

impl Alphabet for LeavittSpec {
    fn check(&self, l: &Letter) -> Result<()> {
        let bad = |reason: String| {
            Err(Error::InvalidIndex { letter: l.to_string(), reason })
        };
        match *l {
            Letter::X { i, j } | Letter::Y { j, i } => {
                if i < 1 || i > self.m {
                    return bad(format!("row index must lie in 1..={}", self.m));
                }
                if j < 1 || j > self.n {
                    return bad(format!("column index must lie in 1..={}", self.n));
                }
                Ok(())
            }
            _ => bad(format!("not a letter of L({},{})", self.m, self.n)),
        }
    }
}

/// Weight `m(x_{ij}) = m(y_{ji}) = i + j`.
pub fn s_weight(l: &Letter) -> u64 {
    match *l {
        Letter::X { i, j } | Letter::Y { j, i } => (i + j) as u64,
        _ => 0,
    }
}

/// The reduction system `S`: m² rules `x_{in}y_{ni'} → δ − Σ_{j<n} x_{ij}y_{ji'}`
/// followed by n² rules `y_{jm}x_{mj'} → δ − Σ_{i<m} y_{ji}x_{ij'}`.
pub fn build_system_s<F: Field>(spec: LeavittSpec) -> ReductionSystem<F> {
    let (m, n) = (spec.m, spec.n);
    let mut rules = Vec::with_capacity((m * m + n * n) as usize);
    for i in 1..=m {
        for i2 in 1..=m {
            let lhs = Word::new(vec![Letter::x(i, n), Letter::y(n, i2)]);
            let mut rhs = Polynomial::zero();
            if i == i2 {
                rhs.add_term(Word::empty(), &F::one());
            }
            for j in 1..n {
                rhs.add_term(Word::new(vec![Letter::x(i, j), Letter::y(j, i2)]), &F::one().neg());
            }
            rules.push(ReductionRule::new(lhs, rhs));
        }
    }
    for j in 1..=n {
        for j2 in 1..=n {
            let lhs = Word::new(vec![Letter::y(j, m), Letter::x(m, j2)]);
            let mut rhs = Polynomial::zero();
            if j == j2 {
                rhs.add_term(Word::empty(), &F::one());
            }
            for i in 1..m {
                rhs.add_term(Word::new(vec![Letter::y(j, i), Letter::x(i, j2)]), &F::one().neg());
            }
            rules.push(ReductionRule::new(lhs, rhs));
        }
    }
    ReductionSystem::new(
        format!("S({m},{n})"),
        format!("x(i,j), y(j,i) with 1<=i<={m}, 1<=j<={n}"),
        WeightSpec::new(vec![("m", s_weight as fn(&Letter) -> u64)]),
        rules,
    )
    .expect("S has distinct nonempty left-hand sides")
}

/// `L(m,n)` realized on irreducible words, with multiplication `r_S(ab)`.
#[derive(Clone, Debug)]
pub struct Leavitt<F: Field = Rational> {
    spec: LeavittSpec,
    system: ReductionSystem<F>,
}

impl<F: Field> Leavitt<F> {
    pub fn new(spec: LeavittSpec) -> Self {
        Leavitt { spec, system: build_system_s(spec) }
    }

    pub fn spec(&self) -> LeavittSpec {
        self.spec
    }

    pub fn system(&self) -> &ReductionSystem<F> {
        &self.system
    }

    pub fn nf(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.system.normal_form(p)
    }

    pub fn nf_word(&self, w: &Word) -> Result<Polynomial<F>> {
        self.system.normal_form_word(w)
    }

    pub fn lmul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.nf(&a.mul(b))
    }
}

/// Letter degree: `+1` for x, `−1` for y, `0` otherwise.
#[inline]
pub fn letter_degree(l: &Letter) -> i64 {
    match l {
        Letter::X { .. } => 1,
        Letter::Y { .. } => -1,
        _ => 0,
    }
}

pub fn degree(w: &[Letter]) -> i64 {
    w.iter().map(letter_degree).sum()
}

/// Split a polynomial into homogeneous parts.
pub fn decompose<F: Field>(p: &Polynomial<F>) -> BTreeMap<i64, Polynomial<F>> {
    let mut out: BTreeMap<i64, Polynomial<F>> = BTreeMap::new();
    for (w, c) in p.terms() {
        out.entry(degree(w)).or_default().add_term(w.clone(), c);
    }
    out
}

/// A polynomial together with its homogeneous decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement<F: Field = Rational> {
    poly: Polynomial<F>,
    parts: BTreeMap<i64, Polynomial<F>>,
}

impl<F: Field> GradedElement<F> {
    pub fn new(poly: Polynomial<F>) -> Self {
        let parts = decompose(&poly);
        GradedElement { poly, parts }
    }

    pub fn poly(&self) -> &Polynomial<F> {
        &self.poly
    }

    pub fn parts(&self) -> &BTreeMap<i64, Polynomial<F>> {
        &self.parts
    }

    pub fn part(&self, d: i64) -> Polynomial<F> {
        self.parts.get(&d).cloned().unwrap_or_default()
    }

    /// The degree, if the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.parts.len() == 1 {
            self.parts.keys().next().copied()
        } else {
            None
        }
    }
}

/// A matrix entry that failed to reduce to its expected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryFailure {
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub got: String,
}

/// Entrywise check of `XY = I_m` and `YX = I_n`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub spec: LeavittSpec,
    pub entries_checked: usize,
    pub failures: Vec<EntryFailure>,
}

impl IdentityReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_xy_identities<F: Field>(alg: &Leavitt<F>) -> Result<IdentityReport> {
    let spec = alg.spec();
    let (m, n) = (spec.m, spec.n);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut check = |name: &str, r: u32, c: u32, sum: Polynomial<F>| -> Result<()> {
        let got = alg.nf(&sum)?;
        let expected = if r == c { Polynomial::one() } else { Polynomial::zero() };
        checked += 1;
        if got != expected {
            failures.push(EntryFailure {
                matrix: name.into(),
                row: r as usize,
                col: c as usize,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
        Ok(())
    };
    for i in 1..=m {
        for i2 in 1..=m {
            let sum = Polynomial::from_terms(
                (1..=n).map(|j| (F::one(), Word::new(vec![Letter::x(i, j), Letter::y(j, i2)]))),
            );
            check("XY", i, i2, sum)?;
        }
    }
    for j in 1..=n {
        for j2 in 1..=n {
            let sum = Polynomial::from_terms(
                (1..=m).map(|i| (F::one(), Word::new(vec![Letter::y(j, i), Letter::x(i, j2)]))),
            );
            check("YX", j, j2, sum)?;
        }
    }
    Ok(IdentityReport { spec, entries_checked: checked, failures })
}

/// The two sums witnessing `L_k L_{−k} = L_0 = L_{−k} L_k`.
#[derive(Clone, Debug, Serialize)]
pub struct GradingWitness {
    pub spec: LeavittSpec,
    pub k: u32,
    pub xy_terms: usize,
    pub yx_terms: usize,
    pub xy_value: String,
    pub yx_value: String,
    pub ok: bool,
}

/// All index tuples in `1..=base` of the given length, in lexicographic order.
pub(crate) fn index_tuples(base: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=base).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// `Σ x_{1,j_1}…x_{1,j_k} y_{j_k,1}…y_{j_1,1}` and the dual sum over y/x.
pub fn strong_grading_witness<F: Field>(alg: &Leavitt<F>, k: u32) -> Result<GradingWitness> {
    if k == 0 {
        return Err(Error::InvalidSpec("k must be at least 1".into()));
    }
    let spec = alg.spec();
    let xy = Polynomial::<F>::from_terms(index_tuples(spec.n, k as usize).into_iter().map(|t| {
        let mut w: Vec<Letter> = t.iter().map(|&j| Letter::x(1, j)).collect();
        w.extend(t.iter().rev().map(|&j| Letter::y(j, 1)));
        (F::one(), Word::new(w))
    }));
    let yx = Polynomial::<F>::from_terms(index_tuples(spec.m, k as usize).into_iter().map(|t| {
        let mut w: Vec<Letter> = t.iter().map(|&i| Letter::y(1, i)).collect();
        w.extend(t.iter().rev().map(|&i| Letter::x(i, 1)));
        (F::one(), Word::new(w))
    }));
    let a = alg.nf(&xy)?;
    let b = alg.nf(&yx)?;
    let ok = a == Polynomial::one() && b == Polynomial::one();
    Ok(GradingWitness {
        spec,
        k,
        xy_terms: xy.len(),
        yx_terms: yx.len(),
        xy_value: a.to_string(),
        yx_value: b.to_string(),
        ok,
    })
}

/// Upper bound on `max_len` for basis enumeration.
pub const MAX_ENUM_LEN: usize = 16;

/// All irreducible words of length at most `max_len`, optionally of a fixed
/// degree, in word order.
pub fn enumerate_irreducible(spec: LeavittSpec, max_len: usize, degree: Option<i64>) -> Result<Vec<Word>> {
    if max_len > MAX_ENUM_LEN {
        return Err(Error::InvalidSpec(format!("max_len {max_len} exceeds {MAX_ENUM_LEN}")));
    }
    let letters = spec.letters();
    let admits = |len: usize, deg: i64| match degree {
        Some(d) => (d - deg).unsigned_abs() as usize <= max_len - len,
        None => true,
    };
    let mut out: Vec<Word> = Vec::new();
    if degree.is_none_or(|d| d == 0) {
        out.push(Word::empty());
    }
    let branches: Vec<Vec<Word>> = letters
        .par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let d = letter_degree(first);
            if max_len > 0 && admits(1, d) {
                let mut stack = vec![*first];
                extend(spec, &letters, max_len, degree, &admits, &mut stack, d, &mut found);
            }
            found
        })
        .collect();
    for b in branches {
        out.extend(b);
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    spec: LeavittSpec,
    letters: &[Letter],
    max_len: usize,
    degree: Option<i64>,
    admits: &dyn Fn(usize, i64) -> bool,
    stack: &mut Vec<Letter>,
    deg: i64,
    found: &mut Vec<Word>,
) {
    if degree.is_none_or(|d| d == deg) {
        found.push(Word::from_slice(stack));
    }
    if stack.len() == max_len {
        return;
    }
    let last = *stack.last().unwrap();
    for l in letters {
        let nd = deg + letter_degree(l);
        if !spec.is_forbidden_pair(&last, l) && admits(stack.len() + 1, nd) {
            stack.push(*l);
            extend(spec, letters, max_len, degree, admits, stack, nd, found);
            stack.pop();
        }
    }
}

/// Memoized basis listings keyed by spec, length bound and degree.
#[derive(Default)]
pub struct BasisCache {
    inner: Mutex<HashMap<(LeavittSpec, usize, Option<i64>), Arc<Vec<Word>>>>,
}

impl BasisCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, spec: LeavittSpec, max_len: usize, degree: Option<i64>) -> Result<Arc<Vec<Word>>> {
        if let Some(v) = self.inner.lock().unwrap().get(&(spec, max_len, degree)) {
            return Ok(v.clone());
        }
        let v = Arc::new(enumerate_irreducible(spec, max_len, degree)?);
        self.inner.lock().unwrap().insert((spec, max_len, degree), v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u32, n: u32) -> LeavittSpec {
        LeavittSpec::new(m, n).unwrap()
    }

    #[test]
    fn rule_counts() {
        assert_eq!(build_system_s::<Rational>(spec(1, 1)).rules().len(), 2);
        assert_eq!(build_system_s::<Rational>(spec(2, 3)).rules().len(), 13);
    }

    #[test]
    fn forbidden_words_are_lhs() {
        let s = spec(2, 3);
        let sys = build_system_s::<Rational>(s);
        let mut lhs: Vec<Word> = sys.rules().iter().map(|r| r.lhs.clone()).collect();
        let mut fw = s.forbidden_words();
        lhs.sort();
        fw.sort();
        assert_eq!(lhs, fw);
    }

    #[test]
    fn rules_are_degree_zero() {
        for r in build_system_s::<Rational>(spec(3, 2)).rules() {
            assert_eq!(degree(&r.lhs), 0);
            assert!(r.rhs.support().all(|w| degree(w) == 0));
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&Word::empty()), 0);
        let w = Word::parse("x(1,1) x(1,2) y(2,1)").unwrap();
        assert_eq!(degree(&w), 1);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let s = spec(2, 2);
        let letters = s.letters();
        for max_len in 0..=4 {
            for deg in [None, Some(0), Some(1), Some(-2)] {
                let got = enumerate_irreducible(s, max_len, deg).unwrap();
                let mut want = vec![Word::empty()];
                let mut layer = vec![Vec::new()];
                for _ in 0..max_len {
                    layer = layer
                        .iter()
                        .flat_map(|w: &Vec<Letter>| {
                            letters.iter().map(move |l| {
                                let mut v = w.clone();
                                v.push(*l);
                                v
                            })
                        })
                        .collect();
                    want.extend(layer.iter().map(|v| Word::from_slice(v)));
                }
                let mut want: Vec<Word> = want
                    .into_iter()
                    .filter(|w| s.is_irreducible(w) && deg.is_none_or(|d| degree(w) == d))
                    .collect();
                want.sort();
                assert_eq!(got, want, "max_len {max_len} degree {deg:?}");
            }
        }
    }

    #[test]
    fn graded_element_parts_sum_to_whole() {
        let p = Polynomial::<Rational>::parse("x(1,1) + y(1,1) y(1,2) - 3 + x(1,2) y(2,1)").unwrap();
        let g = GradedElement::new(p.clone());
        let sum = g.parts().values().fold(Polynomial::zero(), |a, b| a.add(b));
        assert_eq!(sum, p);
        assert_eq!(g.part(0).len(), 2);
        assert_eq!(g.homogeneous_degree(), None);
    }
}
