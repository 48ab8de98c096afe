//! Bergman-style reduction systems over free algebras.
//!
//! A system is a list of rules `w_σ → f_σ` together with a weight
//! specification. Words are compared by length, then by the sum of each
//! weight function in turn; a rule is compatible when every monomial of its
//! right-hand side is strictly below its left-hand side.

mod ambiguity;

pub use ambiguity::{
    check_diamond, find_ambiguities, Ambiguity, AmbiguityKind, DiamondEntry, DiamondReport,
};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Field, Rational};
use crate::word::{Letter, Word};

/// Default number of single reductions allowed per normal-form call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A per-letter weight function.
pub type WeightFn = fn(&Letter) -> u64;

/// Named weight functions, compared in order after length.
#[derive(Clone)]
pub struct WeightSpec {
    names: Vec<&'static str>,
    fns: Vec<WeightFn>,
}

impl fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("WeightSpec").field(&self.names).finish()
    }
}

/// Length plus weight sums: the comparison key of the reduction order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrderKey {
    pub len: usize,
    pub weights: SmallVec<[u64; 2]>,
}

impl WeightSpec {
    /// Compare by length only.
    pub fn length_only() -> Self {
        WeightSpec { names: Vec::new(), fns: Vec::new() }
    }

    pub fn new(weights: Vec<(&'static str, WeightFn)>) -> Self {
        let (names, fns) = weights.into_iter().unzip();
        WeightSpec { names, fns }
    }

    pub fn names(&self) -> &[&'static str] {
        &self.names
    }

    pub fn letter_weights(&self, l: &Letter) -> Vec<u64> {
        self.fns.iter().map(|f| f(l)).collect()
    }

    pub fn key(&self, w: &[Letter]) -> OrderKey {
        let weights = self
            .fns
            .iter()
            .map(|f| w.iter().map(f).sum())
            .collect();
        OrderKey { len: w.len(), weights }
    }
}

/// A rule `lhs → rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionRule<F: Field = Rational> {
    pub lhs: Word,
    pub rhs: Polynomial<F>,
}

impl<F: Field> ReductionRule<F> {
    pub fn new(lhs: Word, rhs: Polynomial<F>) -> Self {
        ReductionRule { lhs, rhs }
    }
}

impl<F: Field> fmt::Display for ReductionRule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Which occurrence of a left-hand side a reduction step rewrites.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

/// An immutable reduction system.
#[derive(Clone, Debug)]
pub struct ReductionSystem<F: Field = Rational> {
    name: String,
    alphabet: String,
    rules: Vec<ReductionRule<F>>,
    index: HashMap<Word, usize>,
    lhs_lengths: Vec<usize>,
    weights: WeightSpec,
}

impl<F: Field> ReductionSystem<F> {
    /// Build a system, rejecting empty or repeated left-hand sides.
    pub fn new(
        name: impl Into<String>,
        alphabet: impl Into<String>,
        weights: WeightSpec,
        rules: Vec<ReductionRule<F>>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(rules.len());
        let mut lhs_lengths = Vec::new();
        for (n, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(Error::EmptyLhs);
            }
            if index.insert(r.lhs.clone(), n).is_some() {
                return Err(Error::DuplicateLhs(r.lhs.to_string()));
            }
            if !lhs_lengths.contains(&r.lhs.len()) {
                lhs_lengths.push(r.lhs.len());
            }
        }
        lhs_lengths.sort_unstable();
        Ok(ReductionSystem {
            name: name.into(),
            alphabet: alphabet.into(),
            rules,
            index,
            lhs_lengths,
            weights,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &str {
        &self.alphabet
    }

    pub fn rules(&self) -> &[ReductionRule<F>] {
        &self.rules
    }

    pub fn weights(&self) -> &WeightSpec {
        &self.weights
    }

    /// Rule whose left-hand side is exactly `w`.
    pub fn rule_for(&self, w: &[Letter]) -> Option<&ReductionRule<F>> {
        self.index.get(w).map(|&n| &self.rules[n])
    }

    pub(crate) fn rule_index(&self, w: &[Letter]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Rules whose left-hand side occurs in `w`, as (start, rule index).
    pub fn occurrences(&self, w: &[Letter]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for start in 0..w.len() {
            for &len in &self.lhs_lengths {
                if start + len > w.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&w[start..start + len]) {
                    out.push((start, r));
                }
            }
        }
        out
    }

    /// Leftmost occurrence (shortest left-hand side on ties).
    pub fn leftmost_occurrence(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &len in &self.lhs_lengths {
                if start + len > w.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&w[start..start + len]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    /// Occurrence with the largest start position.
    pub fn rightmost_occurrence(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for start in (0..w.len()).rev() {
            for &len in &self.lhs_lengths {
                if start + len > w.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&w[start..start + len]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        self.leftmost_occurrence(w).is_none()
    }

    /// One line per rule, `LHS -> POLY`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for r in &self.rules {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    /// The normal form under the default leftmost strategy and budget.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        Reducer::new(self).normal_form(p)
    }

    pub fn normal_form_word(&self, w: &Word) -> Result<Polynomial<F>> {
        Reducer::new(self).normal_form_word(w)
    }
}

/// A polynomial rewriting step planner with a budget.
#[derive(Clone, Copy)]
pub struct Reducer<'a, F: Field> {
    sys: &'a ReductionSystem<F>,
    strategy: Strategy,
    budget: u64,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub fn new(sys: &'a ReductionSystem<F>) -> Self {
        Reducer { sys, strategy: Strategy::Leftmost, budget: DEFAULT_BUDGET }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn system(&self) -> &'a ReductionSystem<F> {
        self.sys
    }

    fn occurrence(&self, w: &[Letter]) -> Option<(usize, usize)> {
        match self.strategy {
            Strategy::Leftmost => self.sys.leftmost_occurrence(w),
            Strategy::Rightmost => self.sys.rightmost_occurrence(w),
        }
    }

    pub fn normal_form_word(&self, w: &Word) -> Result<Polynomial<F>> {
        if self.sys.is_irreducible(w) {
            return Ok(Polynomial::from_word(w.clone()));
        }
        self.normal_form(&Polynomial::from_word(w.clone()))
    }

    /// Reduce until no term contains a left-hand side. The largest term is
    /// always rewritten first, so every word is visited at most once when
    /// the system is compatible with its order.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let weights = &self.sys.weights;
        let mut work: BTreeMap<(OrderKey, Word), F> = BTreeMap::new();
        for (w, c) in p.terms() {
            work.insert((weights.key(w), w.clone()), c.clone());
        }
        let mut out = Polynomial::zero();
        let mut steps = 0u64;
        while let Some(((_, w), c)) = work.pop_last() {
            let Some((start, r)) = self.occurrence(&w) else {
                out.add_term(w, &c);
                continue;
            };
            steps += 1;
            if steps > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let rule = &self.sys.rules[r];
            let (a, rest) = w.split_at(start);
            let cpart = &rest[rule.lhs.len()..];
            for (u, d) in rule.rhs.terms() {
                let nw = Word::wrap(a, u, cpart);
                let coef = c.mul(d);
                let key = (weights.key(&nw), nw);
                match work.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(coef);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&coef);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// One reduction: in the lowest reducible term (word order), the leftmost
/// occurrence of a left-hand side is replaced. Returns `false` when `p` is
/// irreducible.
pub fn reduce_once<F: Field>(sys: &ReductionSystem<F>, p: &Polynomial<F>) -> (Polynomial<F>, bool) {
    for (w, c) in p.terms() {
        if let Some((start, r)) = sys.leftmost_occurrence(w) {
            let rule = &sys.rules[r];
            let (a, rest) = w.split_at(start);
            let cpart = &rest[rule.lhs.len()..];
            let replaced = rule.rhs.wrap(a, cpart).scale(c);
            let out = p.sub(&Polynomial::monomial(c.clone(), w.clone())).add(&replaced);
            return (out, true);
        }
    }
    (p.clone(), false)
}

/// A rule monomial not strictly below its left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderViolation {
    pub rule: usize,
    pub lhs: Word,
    pub monomial: Word,
}

/// Outcome of the compatibility check.
#[derive(Clone, Debug, Default)]
pub struct CompatibilityReport {
    pub rules_checked: usize,
    pub violations: Vec<OrderViolation>,
    /// Letters occurring in rules with a zero weight.
    pub nonpositive: Vec<Letter>,
}

impl CompatibilityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.nonpositive.is_empty()
    }
}

/// Check that every right-hand monomial is strictly below its left-hand side
/// and that every weight of every letter in the rules is positive.
pub fn check_compatible_order<F: Field>(sys: &ReductionSystem<F>) -> CompatibilityReport {
    let mut report = CompatibilityReport { rules_checked: sys.rules.len(), ..Default::default() };
    let mut seen = std::collections::BTreeSet::new();
    for (n, rule) in sys.rules.iter().enumerate() {
        let top = sys.weights.key(&rule.lhs);
        for u in rule.rhs.support() {
            if sys.weights.key(u) >= top {
                report.violations.push(OrderViolation {
                    rule: n,
                    lhs: rule.lhs.clone(),
                    monomial: u.clone(),
                });
            }
        }
        for l in rule.lhs.iter().chain(rule.rhs.support().flat_map(|w| w.iter())) {
            if seen.insert(*l) && sys.weights.letter_weights(l).contains(&0) {
                report.nonpositive.push(*l);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    fn toy(rules: &[(&str, &str)]) -> ReductionSystem {
        let rules = rules
            .iter()
            .map(|(l, r)| ReductionRule::new(w(l), p(r)))
            .collect();
        ReductionSystem::new("toy", "x letters", WeightSpec::length_only(), rules).unwrap()
    }

    #[test]
    fn self_map_is_a_violation() {
        let sys = toy(&[("x(1,1)", "x(1,1)")]);
        let rep = check_compatible_order(&sys);
        assert_eq!(rep.violations.len(), 1);
        assert!(!rep.is_ok());
    }

    #[test]
    fn duplicate_lhs_rejected() {
        let rules = vec![
            ReductionRule::new(w("x(1,1)"), p("0")),
            ReductionRule::new(w("x(1,1)"), p("1")),
        ];
        let r: Result<ReductionSystem> =
            ReductionSystem::new("dup", "", WeightSpec::length_only(), rules);
        assert!(matches!(r, Err(Error::DuplicateLhs(_))));
    }

    #[test]
    fn reduce_once_irreducible() {
        let sys = toy(&[("x(1,1) x(1,2)", "0")]);
        let q = p("x(1,2) x(1,1) + 3");
        assert_eq!(reduce_once(&sys, &q), (q.clone(), false));
    }

    #[test]
    fn normal_form_matches_iterated_single_steps() {
        let sys = toy(&[("x(1,1) x(1,2)", "x(1,2) + 1"), ("x(1,2) x(1,2)", "x(1,1)")]);
        let q = p("x(1,1) x(1,2) x(1,2) x(1,2) - 2*x(1,1) x(1,1) x(1,2)");
        let mut naive = q.clone();
        loop {
            let (next, changed) = reduce_once(&sys, &naive);
            if !changed {
                break;
            }
            naive = next;
        }
        assert_eq!(sys.normal_form(&q).unwrap(), naive);
    }

    #[test]
    fn budget_is_enforced() {
        // x(1,1) -> x(1,1) x(1,1) never terminates
        let sys = toy(&[("x(1,1)", "x(1,1) x(1,1)")]);
        let r = Reducer::new(&sys).with_budget(50).normal_form(&p("x(1,1)"));
        assert_eq!(r, Err(Error::BudgetExceeded(50)));
    }
}
