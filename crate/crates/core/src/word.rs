//! Letters and words of free monoids, with the text format shared by the
//! whole toolkit.
//!
//! Letters print as `x(i,j)`, `y(j,i)`, `e(p,k,l,i,j)`, `eps(p,q,i,j)`,
//! `sig(p,q,i,j)` and `sigh(p,q,i,j)`. Words are letters separated by single
//! spaces, and the empty word prints as `1`.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A generator letter. The derived order (family first, then indices in
/// field order) is the fixed letter order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    /// `x_{ij}`.
    X { i: u32, j: u32 },
    /// `y_{ji}`, printed with `j` first.
    Y { j: u32, i: u32 },
    /// `e^{p,k,l}_{ij}`.
    E { p: u32, k: u32, l: u32, i: u32, j: u32 },
    /// `ε^{p,q}_{ij}` of the Bergman presentation.
    Eps { p: u32, q: u32, i: u32, j: u32 },
    /// `σ^{p,q}_{ij}`.
    Sig { p: u32, q: u32, i: u32, j: u32 },
    /// `σ̂^{p,q}_{ij}`.
    SigHat { p: u32, q: u32, i: u32, j: u32 },
}

/// Something that decides which letters are legal.
pub trait Alphabet {
    fn check(&self, letter: &Letter) -> Result<()>;
}

/// Accepts every letter whose indices are positive.
pub struct AnyLetter;

impl Alphabet for AnyLetter {
    fn check(&self, letter: &Letter) -> Result<()> {
        if letter.indices().iter().all(|&v| v >= 1) {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                letter: letter.to_string(),
                reason: "indices start at 1".into(),
            })
        }
    }
}

impl Letter {
    pub fn x(i: u32, j: u32) -> Self {
        Letter::X { i, j }
    }

    pub fn y(j: u32, i: u32) -> Self {
        Letter::Y { j, i }
    }

    pub fn e(p: u32, k: u32, l: u32, i: u32, j: u32) -> Self {
        Letter::E { p, k, l, i, j }
    }

    /// The index payload in printing order.
    pub fn indices(&self) -> Vec<u32> {
        match *self {
            Letter::X { i, j } => vec![i, j],
            Letter::Y { j, i } => vec![j, i],
            Letter::E { p, k, l, i, j } => vec![p, k, l, i, j],
            Letter::Eps { p, q, i, j } | Letter::Sig { p, q, i, j } | Letter::SigHat { p, q, i, j } => {
                vec![p, q, i, j]
            }
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Letter::X { .. } => "x",
            Letter::Y { .. } => "y",
            Letter::E { .. } => "e",
            Letter::Eps { .. } => "eps",
            Letter::Sig { .. } => "sig",
            Letter::SigHat { .. } => "sigh",
        }
    }

    pub fn is_x(&self) -> bool {
        matches!(self, Letter::X { .. })
    }

    pub fn is_y(&self) -> bool {
        matches!(self, Letter::Y { .. })
    }

    /// Parse a single letter such as `x(1,2)`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| err("expected '('"))?;
        if !s.ends_with(')') {
            return Err(err("expected ')'"));
        }
        let name = s[..open].trim();
        let args: Vec<u32> = s[open + 1..s.len() - 1]
            .split(',')
            .map(|a| a.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err("indices must be non-negative integers"))?;
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(&format!("{name} takes {n} indices")))
            }
        };
        let letter = match name {
            "x" => {
                arity(2)?;
                Letter::X { i: args[0], j: args[1] }
            }
            "y" => {
                arity(2)?;
                Letter::Y { j: args[0], i: args[1] }
            }
            "e" => {
                arity(5)?;
                Letter::E { p: args[0], k: args[1], l: args[2], i: args[3], j: args[4] }
            }
            "eps" | "sig" | "sigh" => {
                arity(4)?;
                let (p, q, i, j) = (args[0], args[1], args[2], args[3]);
                match name {
                    "eps" => Letter::Eps { p, q, i, j },
                    "sig" => Letter::Sig { p, q, i, j },
                    _ => Letter::SigHat { p, q, i, j },
                }
            }
            _ => return Err(err("unknown letter family")),
        };
        AnyLetter.check(&letter)?;
        Ok(letter)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family_name())?;
        for (n, v) in self.indices().iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A word of the free monoid. Words are ordered by length, then
/// lexicographically in the letter order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn from_slice(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenation of three pieces, `a · self · c`.
    pub fn wrap(a: &[Letter], mid: &[Letter], c: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(a.len() + mid.len() + c.len());
        v.extend_from_slice(a);
        v.extend_from_slice(mid);
        v.extend_from_slice(c);
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// Whether `self` occurs as a contiguous subword of `other`.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        self.find_in(other).is_some()
    }

    /// First position at which `self` occurs in `other`.
    pub fn find_in(&self, other: &Word) -> Option<usize> {
        if self.is_empty() {
            return Some(0);
        }
        other.0.windows(self.len()).position(|w| w == &self.0[..])
    }

    /// Parse the text form; `1` is the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "1" || t.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (pos, ch) in t.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    if depth == 0 {
                        return Err(Error::Parse {
                            input: s.into(),
                            reason: "unbalanced ')'".into(),
                        });
                    }
                    depth -= 1;
                    if depth == 0 {
                        letters.push(Letter::parse(&t[start..=pos])?);
                        start = pos + 1;
                    }
                }
                _ => {}
            }
        }
        if depth != 0 || !t[start..].trim().is_empty() {
            return Err(Error::Parse {
                input: s.into(),
                reason: "trailing or unbalanced input".into(),
            });
        }
        Ok(Word(letters))
    }

    /// Parse and validate every letter against an alphabet.
    pub fn parse_in(s: &str, alphabet: &dyn Alphabet) -> Result<Self> {
        let w = Word::parse(s)?;
        for l in w.iter() {
            alphabet.check(l)?;
        }
        Ok(w)
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Length first, then lexicographic.
pub fn cmp_letters(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_letters(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let w = Word::parse("x(1,2) y(2,1) e(2,1,3,4,1) sigh(1,2,1,1)").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "x(1,2) y(2,1) e(2,1,3,4,1) sigh(1,2,1,1)");
        assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
        assert_eq!(Word::parse("1").unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn lenient_spacing() {
        let a = Word::parse("x(1, 2)y(2,1)").unwrap();
        assert_eq!(a.to_string(), "x(1,2) y(2,1)");
    }

    #[test]
    fn rejects_malformed() {
        assert!(Word::parse("x(1)").is_err());
        assert!(Word::parse("z(1,1)").is_err());
        assert!(Word::parse("x(0,1)").is_err());
        assert!(Word::parse("x(1,1").is_err());
    }

    #[test]
    fn subword_scan() {
        let w = Word::parse("x(1,1) x(1,2) y(2,1) y(1,1)").unwrap();
        let s = Word::parse("x(1,2) y(2,1)").unwrap();
        assert!(s.is_subword_of(&w));
        assert_eq!(s.find_in(&w), Some(1));
        assert!(!Word::parse("y(2,1) x(1,2)").unwrap().is_subword_of(&w));
    }

    #[test]
    fn order_is_length_then_lex() {
        let a = Word::parse("y(1,1)").unwrap();
        let b = Word::parse("x(1,1) x(1,1)").unwrap();
        assert!(a < b);
        let c = Word::parse("x(1,2)").unwrap();
        assert!(Word::parse("x(1,1)").unwrap() < c);
        assert!(c < a);
    }
}
