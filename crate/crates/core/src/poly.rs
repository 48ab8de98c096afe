//! Polynomials of the free associative algebra.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{abs, Field, Rational};
use crate::word::{Alphabet, Letter, Word};

/// A finite linear combination of words. Zero coefficients are never stored,
/// and terms iterate in the word order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field = Rational> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(F::one(), w)
    }

    pub fn from_letter(l: Letter) -> Self {
        Self::from_word(Word::letter(l))
    }

    pub fn monomial(c: F, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Polynomial { terms }
    }

    /// Sum of `(coefficient, word)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (F, Word)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (c, w) in iter {
            p.add_term(w, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &F)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// The single word of a monomial with coefficient one.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect(),
        }
    }

    /// Product extending concatenation bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &a.mul(b));
            }
        }
        out
    }

    /// `a · self · c` for words `a`, `c`.
    pub fn wrap(&self, a: &[Letter], c: &[Letter]) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, d)| (Word::wrap(a, w, c), d.clone()))
                .collect(),
        }
    }

    /// Apply a letter substitution, expanding products.
    pub fn substitute(&self, image: &dyn Fn(&Letter) -> Polynomial<F>) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for l in w.iter() {
                acc = acc.mul(&image(l));
            }
            out = out.add(&acc);
        }
        out
    }

    /// Parse `c1*w1 + c2*w2 - w3 + 5`. Coefficients may be integers or
    /// fractions `a/b`; a bare word has coefficient one.
    pub fn parse(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut out = Self::zero();
        let mut depth = 0usize;
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut sign_pending = false;
        let mut current = String::new();
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(|| err("unbalanced ')'"))?;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    let t = current.trim();
                    if t.is_empty() {
                        if sign_pending || !pieces.is_empty() {
                            return Err(err("dangling sign"));
                        }
                    } else {
                        if t.ends_with('*') {
                            return Err(err("sign after '*'"));
                        }
                        pieces.push((negative, t.to_string()));
                    }
                    negative = ch == '-';
                    sign_pending = true;
                    current.clear();
                }
                _ => current.push(ch),
            }
        }
        let t = current.trim();
        if t.is_empty() {
            return Err(err(if sign_pending { "dangling sign" } else { "empty expression" }));
        }
        pieces.push((negative, t.to_string()));

        for (neg, piece) in pieces {
            let (coef, word) = match piece.split_once('*') {
                Some((c, w)) => {
                    let c = F::parse(c).ok_or_else(|| err("bad coefficient"))?;
                    (c, Word::parse(w)?)
                }
                None => {
                    if piece.contains('(') {
                        (F::one(), Word::parse(&piece)?)
                    } else {
                        (F::parse(&piece).ok_or_else(|| err("bad coefficient"))?, Word::empty())
                    }
                }
            };
            let coef = if neg { coef.neg() } else { coef };
            out.add_term(word, &coef);
        }
        Ok(out)
    }

    /// Parse and validate every letter against an alphabet.
    pub fn parse_in(s: &str, alphabet: &dyn Alphabet) -> Result<Self> {
        let p = Self::parse(s)?;
        for w in p.support() {
            for l in w.iter() {
                alphabet.check(l)?;
            }
        }
        Ok(p)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = abs(c);
            if w.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> From<Word> for Polynomial<F> {
    fn from(w: Word) -> Self {
        Self::from_word(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<Rational>;

    fn p(s: &str) -> P {
        P::parse(s).unwrap()
    }

    #[test]
    fn prints_in_word_order() {
        let q = p("- 1*x(1,2) y(2,1) + 1 - x(1,1) y(1,1)");
        assert_eq!(q.to_string(), "1 - 1*x(1,1) y(1,1) - 1*x(1,2) y(2,1)");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(p("-3/6*x(1,1)").to_string(), "-1/2*x(1,1)");
    }

    #[test]
    fn parse_round_trip() {
        let q = p("2*x(1,1) + 3/4*y(1,1) x(1,2) - 7");
        assert_eq!(p(&q.to_string()), q);
    }

    #[test]
    fn rejects_garbage() {
        assert!(P::parse("").is_err());
        assert!(P::parse("x(1,1) +").is_err());
        assert!(P::parse("a*x(1,1)").is_err());
        assert!(P::parse("x(1,1) + + x(1,2)").is_err());
    }

    #[test]
    fn distributivity_example() {
        let a = p("x(1,1) + x(1,2)");
        let b = p("y(2,1)");
        assert_eq!(a.mul(&b), p("x(1,1) y(2,1) + x(1,2) y(2,1)"));
        assert_eq!(P::one().mul(&a), a);
        let c = p("2*x(1,1)").mul(&p("3*y(1,1)"));
        assert_eq!(c, p("6*x(1,1) y(1,1)"));
    }

    #[test]
    fn cancellation_leaves_empty_map() {
        let a = p("x(1,1) - 2*y(1,1) x(1,1)");
        assert!(a.add(&a.scale(&Field::from_i64(-1))).is_zero());
        assert!(a.sub(&a).is_empty());
    }
}
