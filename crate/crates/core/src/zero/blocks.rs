//! The blocks `ℬ^xy(k₁,…,k_p)`, completions and the polynomials `f(t)`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::prime::{is_xy_product, run_lengths};
use crate::error::{Error, Result};
use crate::leavitt::LeavittSpec;
use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::word::{Letter, Word};

/// Default cap on `Σk_i` for block enumeration.
pub const BLOCK_SUM_CAP: usize = 6;

/// Default cap on the number of words materialized for one block.
pub const BLOCK_SIZE_CAP: usize = 2_000_000;

/// A block index `(k₁,…,k_p)`. Shorter tuples come first, then tuples are
/// compared lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BlockShape(pub Vec<usize>);

impl Ord for BlockShape {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BlockShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, k) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

impl BlockShape {
    pub fn new(ks: Vec<usize>) -> Result<Self> {
        if ks.is_empty() || ks.contains(&0) {
            return Err(Error::InvalidSpec(format!("block entries must be positive: {ks:?}")));
        }
        Ok(BlockShape(ks))
    }

    /// Parse `1,2,3`.
    pub fn parse(s: &str) -> Result<Self> {
        let ks = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse { input: s.into(), reason: "expected k1,k2,...".into() })?;
        Self::new(ks)
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// All admissible `r`-vectors: `0 ≤ r_i < min(k_i, k_{i+1})`.
    pub fn r_patterns(&self) -> Vec<Vec<usize>> {
        let ks = &self.0;
        let mut out = vec![Vec::new()];
        for i in 0..ks.len().saturating_sub(1) {
            let bound = ks[i].min(ks[i + 1]);
            out = out
                .into_iter()
                .flat_map(|r| {
                    (0..bound).map(move |v| {
                        let mut r = r.clone();
                        r.push(v);
                        r
                    })
                })
                .collect();
        }
        out
    }

    /// Run lengths `(k₁ − r₀, k₁ − r₁, k₂ − r₁, …)` for an `r`-vector.
    pub fn runs(&self, r: &[usize]) -> Vec<usize> {
        let ks = &self.0;
        let mut runs = Vec::with_capacity(2 * ks.len());
        for i in 0..ks.len() {
            let before = if i == 0 { 0 } else { r[i - 1] };
            let after = if i + 1 == ks.len() { 0 } else { r[i] };
            runs.push(ks[i] - before);
            runs.push(ks[i] - after);
        }
        runs
    }
}

/// All shapes with `Σk_i ≤ total`, in the block order.
pub fn shapes_up_to(total: usize) -> Vec<BlockShape> {
    let mut out = Vec::new();
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<BlockShape>) {
        if !cur.is_empty() {
            out.push(BlockShape(cur.clone()));
        }
        for k in 1..=rem {
            cur.push(k);
            rec(rem - k, cur, out);
            cur.pop();
        }
    }
    rec(total, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Block and `r`-vector of a word in the monoid generated by prime xy words.
pub fn block_params(w: &[Letter]) -> Result<(BlockShape, Vec<usize>)> {
    if w.is_empty() || !is_xy_product(w) {
        return Err(Error::NotXyWord(Word::from_slice(w).to_string()));
    }
    let runs = run_lengths(w);
    let p = runs.len() / 2;
    let mut ks = Vec::with_capacity(p);
    let mut rs = Vec::with_capacity(p.saturating_sub(1));
    let mut r = 0usize;
    for i in 0..p {
        let k = runs[2 * i] + r;
        ks.push(k);
        r = k - runs[2 * i + 1];
        if i + 1 < p {
            rs.push(r);
        }
    }
    Ok((BlockShape(ks), rs))
}

fn letter_choices(spec: LeavittSpec, x: bool) -> Vec<Letter> {
    if x {
        spec.x_letters()
    } else {
        spec.y_letters()
    }
}

/// Visit every irreducible word of a block, passing its `r`-vector.
/// Words of one pattern are visited in lexicographic order.
pub fn for_each_bxy_word(spec: LeavittSpec, shape: &BlockShape, mut f: impl FnMut(&[Letter], &[usize])) {
    for_each_bxy_word_where(spec, shape, |_| true, |w, r| {
        f(w, r);
        true
    });
}

/// Like [`for_each_bxy_word`], restricted to the `r`-vectors accepted by
/// `keep`. The scan stops as soon as `f` returns `false`; the return value
/// tells whether it ran to the end.
pub fn for_each_bxy_word_where(
    spec: LeavittSpec,
    shape: &BlockShape,
    keep: impl Fn(&[usize]) -> bool,
    mut f: impl FnMut(&[Letter], &[usize]) -> bool,
) -> bool {
    let xs = letter_choices(spec, true);
    let ys = letter_choices(spec, false);
    for r in shape.r_patterns().into_iter().filter(|r| keep(r)) {
        let runs = shape.runs(&r);
        let families: Vec<bool> = runs
            .iter()
            .enumerate()
            .flat_map(|(n, &len)| std::iter::repeat_n(n % 2 == 0, len))
            .collect();
        let mut buf = Vec::with_capacity(families.len());
        if !fill(spec, &families, &xs, &ys, &mut buf, &r, &mut f) {
            return false;
        }
    }
    true
}

fn fill(
    spec: LeavittSpec,
    families: &[bool],
    xs: &[Letter],
    ys: &[Letter],
    buf: &mut Vec<Letter>,
    r: &[usize],
    f: &mut impl FnMut(&[Letter], &[usize]) -> bool,
) -> bool {
    if buf.len() == families.len() {
        return f(buf, r);
    }
    let choices = if families[buf.len()] { xs } else { ys };
    for l in choices {
        if let Some(prev) = buf.last() {
            if spec.is_forbidden_pair(prev, l) {
                continue;
            }
        }
        buf.push(*l);
        let go_on = fill(spec, families, xs, ys, buf, r, f);
        buf.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Number of irreducible words with the given run pattern (runs alternate,
/// starting with x), by a transfer count over junction flags.
pub fn count_pattern_words(spec: LeavittSpec, runs: &[usize]) -> u128 {
    let (m, n) = (spec.m as u128, spec.n as u128);
    // counts[entry][exit] of letters; for x_{ij} entry is i = m and exit is
    // j = n, for y_{ji} entry is j = n and exit is i = m
    let x_counts = [[(m - 1) * (n - 1), m - 1], [n - 1, 1]];
    let y_counts = [[(n - 1) * (m - 1), n - 1], [m - 1, 1]];
    let mut state: Option<[u128; 2]> = None;
    let mut prev_x: Option<bool> = None;
    for (idx, &len) in runs.iter().enumerate() {
        let x = idx % 2 == 0;
        let counts = if x { x_counts } else { y_counts };
        for _ in 0..len {
            let next = match state {
                None => [counts[0][0] + counts[1][0], counts[0][1] + counts[1][1]],
                Some(s) => {
                    let mut nx = [0u128; 2];
                    for e in 0..2 {
                        for (pe, &c) in s.iter().enumerate() {
                            for entry in 0..2 {
                                let blocked = prev_x != Some(x) && pe == 1 && entry == 1;
                                if !blocked {
                                    nx[e] += c * counts[entry][e];
                                }
                            }
                        }
                    }
                    nx
                }
            };
            state = Some(next);
            prev_x = Some(x);
        }
    }
    state.map_or(1, |s| s[0] + s[1])
}

/// Size of a block.
pub fn block_size(spec: LeavittSpec, shape: &BlockShape) -> u128 {
    shape.r_patterns().iter().map(|r| count_pattern_words(spec, &shape.runs(r))).sum()
}

/// All words of `ℬ^xy(k₁,…,k_p)`, sorted by length then lexicographically.
pub fn enumerate_bxy_block(spec: LeavittSpec, shape: &BlockShape) -> Result<Vec<Word>> {
    if shape.sum() > BLOCK_SUM_CAP {
        return Err(Error::InvalidSpec(format!(
            "block {shape} exceeds the enumeration cap Σk ≤ {BLOCK_SUM_CAP}"
        )));
    }
    let size = block_size(spec, shape);
    if size > BLOCK_SIZE_CAP as u128 {
        return Err(Error::BlockTooLarge { size: size as usize, cap: BLOCK_SIZE_CAP });
    }
    let mut out = Vec::with_capacity(size as usize);
    for_each_bxy_word(spec, shape, |w, _| out.push(Word::from_slice(w)));
    out.sort();
    Ok(out)
}

pub(crate) fn y1m(spec: LeavittSpec) -> Letter {
    Letter::y(1, spec.m)
}

pub(crate) fn xm1(spec: LeavittSpec) -> Letter {
    Letter::x(spec.m, 1)
}

/// Insert `y_{1m}^{r_i} x_{m1}^{r_i}` after the i-th y-run.
pub fn completion(spec: LeavittSpec, w: &[Letter]) -> Result<Word> {
    let (_, rs) = block_params(w)?;
    Ok(complete_with(spec, w, &rs))
}

pub(crate) fn complete_with(spec: LeavittSpec, w: &[Letter], rs: &[usize]) -> Word {
    let total: usize = rs.iter().sum();
    let mut out = Vec::with_capacity(w.len() + 2 * total);
    let mut yrun = 0usize;
    for (pos, l) in w.iter().enumerate() {
        out.push(*l);
        let run_ends = l.is_y() && w.get(pos + 1).is_some_and(|n| n.is_x());
        if run_ends {
            let r = rs[yrun];
            out.extend(std::iter::repeat_n(y1m(spec), r));
            out.extend(std::iter::repeat_n(xm1(spec), r));
            yrun += 1;
        }
    }
    Word::new(out)
}

/// Factor sizes of an ordered xy word, or `None` if it is not ordered.
pub(crate) fn ordered_sizes(w: &[Letter]) -> Option<Vec<usize>> {
    if w.is_empty() || !w[0].is_x() || !w[w.len() - 1].is_y() {
        return None;
    }
    if w.iter().any(|l| !l.is_x() && !l.is_y()) {
        return None;
    }
    let runs = run_lengths(w);
    let mut sizes = Vec::with_capacity(runs.len() / 2);
    for pair in runs.chunks(2) {
        if pair.len() != 2 || pair[0] != pair[1] {
            return None;
        }
        sizes.push(pair[0]);
    }
    Some(sizes)
}

/// The unique `u ∈ ℬ^xy` with `û = w`, if `w` is a completion.
pub fn completion_preimage(spec: LeavittSpec, w: &[Letter]) -> Option<Word> {
    if w.is_empty() {
        return Some(Word::empty());
    }
    let sizes = ordered_sizes(w)?;
    let (y, x) = (y1m(spec), xm1(spec));
    let mut out = Vec::with_capacity(w.len());
    let mut rs = Vec::with_capacity(sizes.len());
    let mut pos = 0usize;
    for (f, &s) in sizes.iter().enumerate() {
        let xrun = &w[pos..pos + s];
        let yrun = &w[pos + s..pos + 2 * s];
        let mut x_start = 0;
        if f > 0 {
            // leading x_{m1} letters were possibly inserted together with
            // the trailing y_{1m} letters of the previous factor
            let r: usize = *rs.last().unwrap();
            x_start = r;
        }
        let mut y_end = s;
        if f + 1 < sizes.len() {
            let next_x = &w[pos + 2 * s..pos + 2 * s + sizes[f + 1]];
            let a = yrun.iter().rev().take_while(|l| **l == y).count();
            let b = next_x.iter().take_while(|l| **l == x).count();
            let r = a.min(b);
            if r >= s.min(sizes[f + 1]) {
                return None;
            }
            rs.push(r);
            y_end = s - r;
        }
        out.extend_from_slice(&xrun[x_start..]);
        out.extend_from_slice(&yrun[..y_end]);
        pos += 2 * s;
    }
    if !spec.is_irreducible(&out) {
        return None;
    }
    let u = Word::new(out);
    debug_assert_eq!(complete_with(spec, &u, &rs).letters(), w);
    Some(u)
}

/// Membership in `𝒞^xy` (the empty word included).
pub fn is_cxy(spec: LeavittSpec, w: &[Letter]) -> bool {
    completion_preimage(spec, w).is_some()
}

fn repeat(l: Letter, t: usize) -> impl Iterator<Item = Letter> {
    std::iter::repeat_n(l, t)
}

/// `f(t) = Σ_{s<t} Σ_{j<m} y_{1m}^s y_{1j} x_{j1} x_{m1}^s + y_{1m}^t x_{m1}^t`,
/// with `f(0) = 1`.
pub fn f_poly<F: Field>(spec: LeavittSpec, t: usize) -> Polynomial<F> {
    let (y, x) = (y1m(spec), xm1(spec));
    let mut terms = Vec::new();
    for s in 0..t {
        for j in 1..spec.m {
            let w: Word = repeat(y, s)
                .chain([Letter::y(1, j), Letter::x(j, 1)])
                .chain(repeat(x, s))
                .collect();
            terms.push((F::one(), w));
        }
    }
    terms.push((F::one(), repeat(y, t).chain(repeat(x, t)).collect()));
    Polynomial::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leavitt::{enumerate_irreducible, Leavitt};
    use crate::scalar::Rational;

    fn spec(m: u32, n: u32) -> LeavittSpec {
        LeavittSpec::new(m, n).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn block_one_at_1_2() {
        let got = enumerate_bxy_block(spec(1, 2), &BlockShape(vec![1])).unwrap();
        assert_eq!(got, vec![w("x(1,1) y(1,1)"), w("x(1,1) y(2,1)"), w("x(1,2) y(1,1)")]);
    }

    #[test]
    fn blocks_partition_brute_force() {
        let s = spec(2, 2);
        let basis = enumerate_irreducible(s, 6, Some(0)).unwrap();
        for shape in shapes_up_to(3) {
            let mut want: Vec<Word> = basis
                .iter()
                .filter(|u| is_xy_product(u) && !u.is_empty())
                .filter(|u| block_params(u).unwrap().0 == shape)
                .cloned()
                .collect();
            want.sort();
            assert_eq!(enumerate_bxy_block(s, &shape).unwrap(), want, "block {shape}");
            assert_eq!(block_size(s, &shape), want.len() as u128);
        }
    }

    #[test]
    fn pattern_count_matches_enumeration() {
        for (m, n) in [(1, 1), (2, 3), (3, 2)] {
            let s = spec(m, n);
            for shape in shapes_up_to(4) {
                let mut seen = 0u128;
                for_each_bxy_word(s, &shape, |_, _| seen += 1);
                assert_eq!(block_size(s, &shape), seen, "({m},{n}) {shape}");
            }
        }
    }

    #[test]
    fn shape_order() {
        let v = shapes_up_to(3);
        let printed: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(printed, ["(1)", "(2)", "(3)", "(1,1)", "(1,2)", "(2,1)", "(1,1,1)"]);
    }

    #[test]
    fn completion_examples() {
        let s = spec(2, 2);
        let ordered = w("x(1,1) y(1,1) x(2,1) y(1,2)");
        assert_eq!(completion(s, &ordered).unwrap(), ordered);
        // type (2,1,1,2)
        let u = w("x(1,1) x(1,1) y(1,1) x(1,1) y(1,1) y(1,1)");
        let c = completion(s, &u).unwrap();
        assert_eq!(c, w("x(1,1) x(1,1) y(1,1) y(1,2) x(2,1) x(1,1) y(1,1) y(1,1)"));
        assert_eq!(run_lengths(&c), vec![2, 2, 2, 2]);
        assert_eq!(completion_preimage(s, &c), Some(u));
    }

    #[test]
    fn completion_preimage_inverts_on_blocks() {
        let s = spec(2, 2);
        for shape in shapes_up_to(4) {
            for u in enumerate_bxy_block(s, &shape).unwrap() {
                let c = completion(s, &u).unwrap();
                assert_eq!(completion_preimage(s, &c).as_ref(), Some(&u));
            }
        }
    }

    #[test]
    fn f_polynomials_reduce_to_one() {
        let s = spec(2, 2);
        let f1 = f_poly::<Rational>(s, 1);
        assert_eq!(f1, Polynomial::parse("y(1,1) x(1,1) + y(1,2) x(2,1)").unwrap());
        assert_eq!(f_poly::<Rational>(s, 0), Polynomial::one());
        let alg = Leavitt::<Rational>::new(s);
        for t in 0..4 {
            assert_eq!(alg.nf(&f_poly(s, t)).unwrap(), Polynomial::one());
        }
    }
}
