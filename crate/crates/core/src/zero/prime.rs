//! Prime factorization, xy/yx classification and word types.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::leavitt::{degree, enumerate_irreducible, letter_degree, LeavittSpec};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeClass {
    Xy,
    Yx,
}

/// Run lengths of the alternating x/y blocks of a word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct WordType(pub Vec<usize>);

/// A degree-zero word cut into prime factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeFactorization {
    pub factors: Vec<Word>,
}

impl PrimeFactorization {
    pub fn concat(&self) -> Word {
        self.factors.iter().flat_map(|w| w.iter().copied()).collect()
    }
}

pub(crate) fn check_xy_letters(w: &[Letter]) -> Result<()> {
    if w.iter().all(|l| l.is_x() || l.is_y()) {
        Ok(())
    } else {
        Err(Error::ForeignLetter(Word::from_slice(w).to_string()))
    }
}

/// Cut at every proper prefix of degree zero.
pub fn prime_factorize(w: &[Letter]) -> Result<PrimeFactorization> {
    check_xy_letters(w)?;
    let d = degree(w);
    if d != 0 {
        return Err(Error::NonZeroDegree { word: Word::from_slice(w).to_string(), degree: d });
    }
    let mut factors = Vec::new();
    let mut start = 0;
    let mut deg = 0i64;
    for (pos, l) in w.iter().enumerate() {
        deg += letter_degree(l);
        if deg == 0 {
            factors.push(Word::from_slice(&w[start..=pos]));
            start = pos + 1;
        }
    }
    Ok(PrimeFactorization { factors })
}

/// Whether some nonempty proper prefix has degree zero.
pub fn has_proper_zero_prefix(w: &[Letter]) -> bool {
    let mut deg = 0i64;
    for l in &w[..w.len().saturating_sub(1)] {
        deg += letter_degree(l);
        if deg == 0 {
            return true;
        }
    }
    false
}

/// Nonempty, degree zero, and no proper degree-zero prefix.
pub fn is_prime(w: &[Letter]) -> bool {
    !w.is_empty()
        && w.iter().all(|l| l.is_x() || l.is_y())
        && degree(w) == 0
        && !has_proper_zero_prefix(w)
}

pub fn classify_prime(w: &[Letter]) -> Result<PrimeClass> {
    if !is_prime(w) {
        return Err(Error::NotPrime(Word::from_slice(w).to_string()));
    }
    let first = w[0];
    let last = w[w.len() - 1];
    match (first.is_x(), last.is_y()) {
        (true, true) => Ok(PrimeClass::Xy),
        (false, false) => Ok(PrimeClass::Yx),
        // prefix degrees of a prime never change sign, so this cannot happen
        _ => Err(Error::Integrity(format!("prime word {} mixes classes", Word::from_slice(w)))),
    }
}

/// Run-length tuple of the alternating letter families.
pub fn word_type(w: &[Letter]) -> Result<WordType> {
    check_xy_letters(w)?;
    Ok(WordType(run_lengths(w)))
}

pub(crate) fn run_lengths(w: &[Letter]) -> Vec<usize> {
    let mut runs: Vec<usize> = Vec::new();
    let mut prev: Option<bool> = None;
    for l in w {
        let x = l.is_x();
        if prev == Some(x) {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
            prev = Some(x);
        }
    }
    runs
}

/// Whether a type `(a₁, b₁, …, a_p, b_p)` can be written as
/// `(k₁ − r₀, k₁ − r₁, k₂ − r₁, …, k_p − r_p)` with `r₀ = r_p = 0` and
/// `0 < r_i < min(k_i, k_{i+1})`.
pub fn is_prime_by_type(t: &[usize]) -> bool {
    if t.is_empty() || !t.len().is_multiple_of(2) || t.contains(&0) {
        return false;
    }
    let p = t.len() / 2;
    let mut r = 0i64;
    for i in 0..p {
        // k_{i+1} = a_{i+1} + r_i, r_{i+1} = k_{i+1} − b_{i+1}
        let k = t[2 * i] as i64 + r;
        r = k - t[2 * i + 1] as i64;
        if i + 1 < p && r <= 0 {
            return false;
        }
    }
    r == 0
}

/// Whether `w` lies in the monoid generated by prime xy words, that is,
/// every prefix has non-negative degree and the whole word has degree zero.
pub fn is_xy_product(w: &[Letter]) -> bool {
    let mut deg = 0i64;
    for l in w {
        match l {
            Letter::X { .. } => deg += 1,
            Letter::Y { .. } => deg -= 1,
            _ => return false,
        }
        if deg < 0 {
            return false;
        }
    }
    deg == 0
}

/// Mirror image of [`is_xy_product`].
pub fn is_yx_product(w: &[Letter]) -> bool {
    let mut deg = 0i64;
    for l in w {
        match l {
            Letter::X { .. } => deg += 1,
            Letter::Y { .. } => deg -= 1,
            _ => return false,
        }
        if deg > 0 {
            return false;
        }
    }
    deg == 0
}

/// Concatenates alternating sequences of nonempty irreducible xy and yx
/// words of length at most `max_len`, up to `factors` factors, and returns
/// how many products were formed together with those that are reducible.
/// The junction between factors always joins two x or two y letters.
pub fn check_alternating_products(spec: LeavittSpec, max_len: usize, factors: usize) -> Result<(u64, Vec<Word>)> {
    let basis = enumerate_irreducible(spec, max_len, Some(0))?;
    let xy: Vec<&Word> = basis.iter().filter(|w| !w.is_empty() && is_xy_product(w)).collect();
    let yx: Vec<&Word> = basis.iter().filter(|w| !w.is_empty() && is_yx_product(w)).collect();
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for start in [0usize, 1] {
        let mut stack: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), 0)];
        while let Some((w, depth)) = stack.pop() {
            if depth > 0 {
                checked += 1;
                if !spec.is_irreducible(&w) && bad.len() < 10 {
                    bad.push(Word::new(w.clone()));
                }
            }
            if depth == factors {
                continue;
            }
            let pool = if (depth + start) % 2 == 0 { &xy } else { &yx };
            for f in pool {
                let mut v = w.clone();
                v.extend_from_slice(f);
                stack.push((v, depth + 1));
            }
        }
    }
    Ok((checked, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn factorization_examples() {
        let f = prime_factorize(&w("x(1,1) y(1,1) x(1,1) y(1,1)")).unwrap();
        assert_eq!(f.factors, vec![w("x(1,1) y(1,1)"), w("x(1,1) y(1,1)")]);
        let single = w("x(1,1) x(1,2) y(2,1) x(1,1) y(1,1) y(1,1)");
        assert_eq!(prime_factorize(&single).unwrap().factors, vec![single.clone()]);
        assert!(prime_factorize(&Word::empty()).unwrap().factors.is_empty());
        assert!(prime_factorize(&w("x(1,1)")).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_prime(&w("x(1,1) y(1,1)")).unwrap(), PrimeClass::Xy);
        assert_eq!(classify_prime(&w("y(1,1) x(1,1)")).unwrap(), PrimeClass::Yx);
        assert!(classify_prime(&w("x(1,1) y(1,1) x(1,1) y(1,1)")).is_err());
    }

    #[test]
    fn type_criterion_examples() {
        assert!(is_prime_by_type(&[1, 1]));
        assert!(!is_prime_by_type(&[1, 1, 1, 1]));
        assert!(is_prime_by_type(&[2, 1, 1, 2]));
        assert!(!is_prime_by_type(&[2, 1, 1, 1]));
        assert!(is_prime(&w("x(1,1) x(1,1) y(1,1) x(1,1) y(1,1) y(1,1)")));
        assert_eq!(
            word_type(&w("x(1,1) x(1,2) y(1,1) x(1,1) y(1,1) y(2,1)")).unwrap(),
            WordType(vec![2, 1, 1, 2])
        );
    }
}
