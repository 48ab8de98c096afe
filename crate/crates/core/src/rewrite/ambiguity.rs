//! Overlap and inclusion ambiguities and the diamond check.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::ReductionSystem;
use crate::error::Result;
use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// An ambiguity between rules `first` (σ) and `second` (τ).
///
/// For an overlap `w_σ = AB` and `w_τ = BC`; for an inclusion `w_σ = B` and
/// `w_τ = ABC`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub first: usize,
    pub second: usize,
    pub a: Word,
    pub b: Word,
    pub c: Word,
}

impl Ambiguity {
    /// The word `ABC` on which both rules apply.
    pub fn word(&self) -> Word {
        Word::wrap(&self.a, &self.b, &self.c)
    }

    /// Whether the witness reconstructs the two left-hand sides.
    pub fn reconstructs<F: Field>(&self, sys: &ReductionSystem<F>) -> bool {
        let s = &sys.rules()[self.first].lhs;
        let t = &sys.rules()[self.second].lhs;
        match self.kind {
            AmbiguityKind::Overlap => {
                !self.a.is_empty()
                    && !self.b.is_empty()
                    && !self.c.is_empty()
                    && *s == self.a.concat(&self.b)
                    && *t == self.b.concat(&self.c)
            }
            AmbiguityKind::Inclusion => {
                self.first != self.second
                    && !self.b.is_empty()
                    && *s == self.b
                    && *t == self.word()
            }
        }
    }
}

/// All overlap and inclusion ambiguities, sorted by kind, word and rules.
pub fn find_ambiguities<F: Field>(sys: &ReductionSystem<F>) -> Vec<Ambiguity> {
    let rules = sys.rules();
    // proper prefixes of left-hand sides
    let mut by_prefix: HashMap<&[Letter], Vec<usize>> = HashMap::new();
    for (n, r) in rules.iter().enumerate() {
        for len in 1..r.lhs.len() {
            by_prefix.entry(&r.lhs[..len]).or_default().push(n);
        }
    }
    let mut out = Vec::new();
    for (s, rs) in rules.iter().enumerate() {
        let ls = &rs.lhs;
        for blen in 1..ls.len() {
            let b = &ls[ls.len() - blen..];
            if let Some(ts) = by_prefix.get(b) {
                for &t in ts {
                    let lt = &rules[t].lhs;
                    out.push(Ambiguity {
                        kind: super::AmbiguityKind::Overlap,
                        first: s,
                        second: t,
                        a: Word::from_slice(&ls[..ls.len() - blen]),
                        b: Word::from_slice(b),
                        c: Word::from_slice(&lt[blen..]),
                    });
                }
            }
        }
    }
    for (t, rt) in rules.iter().enumerate() {
        let lt = &rt.lhs;
        for start in 0..lt.len() {
            for end in start + 1..=lt.len() {
                if end - start == lt.len() {
                    continue;
                }
                if let Some(s) = sys.rule_index(&lt[start..end]) {
                    out.push(Ambiguity {
                        kind: AmbiguityKind::Inclusion,
                        first: s,
                        second: t,
                        a: Word::from_slice(&lt[..start]),
                        b: Word::from_slice(&lt[start..end]),
                        c: Word::from_slice(&lt[end..]),
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| {
        (x.kind, x.word(), x.first, x.second, x.b.len()).cmp(&(y.kind, y.word(), y.first, y.second, y.b.len()))
    });
    out
}

/// Resolution of one ambiguity.
#[derive(Clone, Debug)]
pub struct DiamondEntry<F: Field> {
    pub ambiguity: Ambiguity,
    pub branch1: Polynomial<F>,
    pub branch2: Polynomial<F>,
    pub resolved: bool,
}

/// Outcome of a diamond check over every ambiguity of a system.
#[derive(Clone, Debug)]
pub struct DiamondReport<F: Field> {
    pub entries: Vec<DiamondEntry<F>>,
}

impl<F: Field> DiamondReport<F> {
    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn count(&self, kind: AmbiguityKind) -> usize {
        self.entries.iter().filter(|e| e.ambiguity.kind == kind).count()
    }

    pub fn unresolved(&self) -> impl Iterator<Item = &DiamondEntry<F>> {
        self.entries.iter().filter(|e| !e.resolved)
    }

    pub fn is_confluent(&self) -> bool {
        self.entries.iter().all(|e| e.resolved)
    }
}

/// Normalize both branches of every ambiguity and compare.
pub fn check_diamond<F: Field>(sys: &ReductionSystem<F>) -> Result<DiamondReport<F>> {
    let ambiguities = find_ambiguities(sys);
    let entries = ambiguities
        .into_par_iter()
        .map(|amb| resolve(sys, amb))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiamondReport { entries })
}

fn resolve<F: Field>(sys: &ReductionSystem<F>, amb: Ambiguity) -> Result<DiamondEntry<F>> {
    let fs = &sys.rules()[amb.first].rhs;
    let ft = &sys.rules()[amb.second].rhs;
    let (left, right) = match amb.kind {
        AmbiguityKind::Overlap => (fs.wrap(&[], &amb.c), ft.wrap(&amb.a, &[])),
        AmbiguityKind::Inclusion => (fs.wrap(&amb.a, &amb.c), ft.clone()),
    };
    let branch1 = sys.normal_form(&left)?;
    let branch2 = sys.normal_form(&right)?;
    let resolved = branch1 == branch2;
    Ok(DiamondEntry { ambiguity: amb, branch1, branch2, resolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{ReductionRule, WeightSpec};

    fn sys(rules: &[(&str, &str)]) -> ReductionSystem {
        let rules = rules
            .iter()
            .map(|(l, r)| ReductionRule::new(Word::parse(l).unwrap(), Polynomial::parse(r).unwrap()))
            .collect();
        ReductionSystem::new("toy", "", WeightSpec::length_only(), rules).unwrap()
    }

    #[test]
    fn single_rule_no_ambiguity() {
        let s = sys(&[("x(1,1) x(1,2)", "0")]);
        assert!(find_ambiguities(&s).is_empty());
    }

    #[test]
    fn self_overlap_found() {
        let s = sys(&[("x(1,1) x(1,1)", "0")]);
        let a = find_ambiguities(&s);
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].word().len(), 3);
        assert!(a[0].reconstructs(&s));
    }

    #[test]
    fn adversarial_pair_is_unresolved() {
        // ab -> a, ba -> b
        let s = sys(&[("x(1,1) x(1,2)", "x(1,1)"), ("x(1,2) x(1,1)", "x(1,2)")]);
        let rep = check_diamond(&s).unwrap();
        let aba = Word::parse("x(1,1) x(1,2) x(1,1)").unwrap();
        let e = rep.entries.iter().find(|e| e.ambiguity.word() == aba).unwrap();
        assert!(!e.resolved);
        assert!(!rep.is_confluent());
    }

    #[test]
    fn inclusion_found() {
        let s = sys(&[("x(1,2)", "x(1,1)"), ("x(1,1) x(1,2) x(1,1)", "0")]);
        let a: Vec<_> = find_ambiguities(&s)
            .into_iter()
            .filter(|a| a.kind == AmbiguityKind::Inclusion)
            .collect();
        assert_eq!(a.len(), 1);
        assert!(a[0].reconstructs(&s));
    }
}
