//! Ordered and admissible words: signatures, transformations, skeletons and
//! the sufficient criterion for membership in `𝒟^xy`.

use std::fmt;

use serde::Serialize;

use super::blocks::{completion, completion_preimage, ordered_sizes, xm1, y1m, BlockShape};
use crate::error::{Error, Result};
use crate::leavitt::LeavittSpec;
use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::word::{Letter, Word};

/// Signature of one ordered prime factor: x column indices left to right,
/// y row indices in word order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct FactorSig {
    pub x_cols: Vec<u32>,
    pub y_rows: Vec<u32>,
}

impl fmt::Display for FactorSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.x_cols), join(&self.y_rows))
    }
}

impl FactorSig {
    fn size(&self) -> usize {
        self.x_cols.len()
    }

    fn is_admissible(&self) -> bool {
        let p = self.size();
        self.x_cols[..p - 1].iter().all(|&c| c == 1) && self.y_rows[1..].iter().all(|&r| r == 1)
    }

    fn is_chain_like(&self) -> bool {
        let p = self.size();
        self.x_cols[..p - 1].iter().all(|&c| c == 1) && self.x_cols[p - 1] > 1 && self.y_rows.iter().all(|&r| r == 1)
    }

    fn is_cochain_like(&self) -> bool {
        self.x_cols.iter().all(|&c| c == 1) && self.y_rows[0] > 1 && self.y_rows[1..].iter().all(|&r| r == 1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Signature(pub Vec<FactorSig>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, s) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

pub fn is_ordered(w: &[Letter]) -> bool {
    w.is_empty() || ordered_sizes(w).is_some()
}

/// Prime factors of an ordered xy word.
pub fn ordered_factors(w: &[Letter]) -> Result<Vec<&[Letter]>> {
    if w.is_empty() {
        return Ok(Vec::new());
    }
    let sizes = ordered_sizes(w).ok_or_else(|| Error::NotOrdered(Word::from_slice(w).to_string()))?;
    let mut out = Vec::with_capacity(sizes.len());
    let mut pos = 0;
    for s in sizes {
        out.push(&w[pos..pos + 2 * s]);
        pos += 2 * s;
    }
    Ok(out)
}

fn factor_sig(f: &[Letter]) -> FactorSig {
    let p = f.len() / 2;
    let x_cols = f[..p]
        .iter()
        .map(|l| match l {
            Letter::X { j, .. } => *j,
            _ => unreachable!("ordered factor"),
        })
        .collect();
    let y_rows = f[p..]
        .iter()
        .map(|l| match l {
            Letter::Y { j, .. } => *j,
            _ => unreachable!("ordered factor"),
        })
        .collect();
    FactorSig { x_cols, y_rows }
}

pub fn signature(w: &[Letter]) -> Result<Signature> {
    Ok(Signature(ordered_factors(w)?.into_iter().map(factor_sig).collect()))
}

pub fn is_admissible(w: &[Letter]) -> bool {
    signature(w).is_ok_and(|s| s.0.iter().all(FactorSig::is_admissible))
}

/// Insert `y_{1m}^t x_{m1}^t` after the t-th x letter of each factor when
/// its column is not 1, and before the t-th y letter (counted from the
/// right) when its row is not 1.
pub fn transformation(spec: LeavittSpec, w: &[Letter]) -> Result<Word> {
    let (y, x) = (y1m(spec), xm1(spec));
    let mut out = Vec::with_capacity(2 * w.len());
    for f in ordered_factors(w)? {
        let p = f.len() / 2;
        let sig = factor_sig(f);
        for t in 1..=p {
            out.push(f[t - 1]);
            if t < p && sig.x_cols[t - 1] != 1 {
                out.extend(std::iter::repeat_n(y, t));
                out.extend(std::iter::repeat_n(x, t));
            }
        }
        // y letters carry labels p, p−1, …, 1 in word order
        for (off, l) in f[p..].iter().enumerate() {
            let t = p - off;
            if t < p && sig.y_rows[off] != 1 {
                out.extend(std::iter::repeat_n(y, t));
                out.extend(std::iter::repeat_n(x, t));
            }
            out.push(*l);
        }
    }
    Ok(Word::new(out))
}

/// `g(t) = Σ y_{1j₁}…y_{1j_t} x_{j_t1}…x_{j₁1}` over `j_i ∈ 1..=m`.
pub fn g_poly<F: Field>(spec: LeavittSpec, t: usize) -> Polynomial<F> {
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..t {
        words = words
            .into_iter()
            .flat_map(|js| {
                (1..=spec.m).map(move |j| {
                    let mut js = js.clone();
                    js.push(j);
                    js
                })
            })
            .collect();
    }
    Polynomial::from_terms(words.into_iter().map(|js| {
        let w: Word = js
            .iter()
            .map(|&j| Letter::y(1, j))
            .chain(js.iter().rev().map(|&j| Letter::x(j, 1)))
            .collect();
        (F::one(), w)
    }))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentKind {
    Chain,
    Cochain,
}

/// A maximal compatible chain or cochain, located by its letter offset in
/// the original word and by its factor range.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub offset: usize,
    pub factors: (usize, usize),
    pub word: Word,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SkeletonDecomposition {
    pub skeleton: Word,
    pub segments: Vec<Segment>,
}

impl SkeletonDecomposition {
    /// Reinsert every segment into the skeleton.
    pub fn reassemble(&self) -> Word {
        let total = self.skeleton.len() + self.segments.iter().map(|s| s.word.len()).sum::<usize>();
        let mut out = Vec::with_capacity(total);
        let mut sk = self.skeleton.iter();
        for seg in &self.segments {
            while out.len() < seg.offset {
                match sk.next() {
                    Some(l) => out.push(*l),
                    None => break,
                }
            }
            out.extend_from_slice(&seg.word);
        }
        out.extend(sk);
        Word::new(out)
    }

    pub fn skeleton_type(&self) -> Option<BlockShape> {
        ordered_sizes(&self.skeleton).map(BlockShape)
    }
}

/// Half-open factor ranges of the maximal compatible chains and cochains.
pub(crate) fn segment_ranges(sigs: &[FactorSig]) -> Vec<(SegmentKind, usize, usize)> {
    let q = sigs.len();
    let size = |i: usize| sigs[i].size();
    let mut out = Vec::new();
    // chains: an increasing run of chain-like factors, followed by a larger
    // factor whose leading x columns are 1
    let chain_compatible = |b: usize| {
        b + 1 < q && size(b + 1) > size(b) && sigs[b + 1].x_cols[..size(b)].iter().all(|&c| c == 1)
    };
    let mut a = 0;
    while a < q {
        if !sigs[a].is_chain_like() {
            a += 1;
            continue;
        }
        let mut c = a;
        while c + 1 < q && sigs[c + 1].is_chain_like() && size(c + 1) > size(c) {
            c += 1;
        }
        let end = if chain_compatible(c) {
            Some(c)
        } else if c > a {
            Some(c - 1)
        } else {
            None
        };
        if let Some(b) = end {
            out.push((SegmentKind::Chain, a, b + 1));
        }
        a = c + 1;
    }
    // cochains: the mirror image, with a larger factor in front whose
    // trailing y rows are 1
    let cochain_compatible = |a: usize| {
        a > 0 && size(a - 1) > size(a) && {
            let rows = &sigs[a - 1].y_rows;
            rows[rows.len() - size(a)..].iter().all(|&r| r == 1)
        }
    };
    let mut a = 0;
    while a < q {
        if !sigs[a].is_cochain_like() {
            a += 1;
            continue;
        }
        let mut c = a;
        while c + 1 < q && sigs[c + 1].is_cochain_like() && size(c + 1) < size(c) {
            c += 1;
        }
        let start = if cochain_compatible(a) {
            Some(a)
        } else if c > a {
            Some(a + 1)
        } else {
            None
        };
        if let Some(s) = start {
            out.push((SegmentKind::Cochain, s, c + 1));
        }
        a = c + 1;
    }
    out.sort_by_key(|&(_, s, _)| s);
    out
}

pub fn skeleton(w: &[Letter]) -> Result<SkeletonDecomposition> {
    let factors = ordered_factors(w)?;
    let sigs: Vec<FactorSig> = factors.iter().map(|f| factor_sig(f)).collect();
    let ranges = segment_ranges(&sigs);
    let mut offsets = Vec::with_capacity(factors.len() + 1);
    let mut pos = 0;
    for f in &factors {
        offsets.push(pos);
        pos += f.len();
    }
    offsets.push(pos);
    let mut removed = vec![false; factors.len()];
    let mut segments = Vec::with_capacity(ranges.len());
    for (kind, s, e) in ranges {
        for r in removed.iter_mut().take(e).skip(s) {
            *r = true;
        }
        segments.push(Segment {
            kind,
            offset: offsets[s],
            factors: (s, e),
            word: Word::from_slice(&w[offsets[s]..offsets[e]]),
        });
    }
    let skeleton = factors
        .iter()
        .zip(&removed)
        .filter(|(_, r)| !**r)
        .flat_map(|(f, _)| f.iter().copied())
        .collect();
    Ok(SkeletonDecomposition { skeleton, segments })
}

/// Block of the skeleton, `None` for the empty word.
pub fn skeleton_type(w: &[Letter]) -> Result<Option<BlockShape>> {
    Ok(skeleton(w)?.skeleton_type())
}

/// 1-based indices `s` such that the last `P_s` y letters of `w_s` and the
/// first `P_s` x letters of `w_{s+1}` all carry the index `m`.
pub fn wild_indices(spec: LeavittSpec, w: &[Letter]) -> Result<Vec<usize>> {
    let factors = ordered_factors(w)?;
    let mut out = Vec::new();
    for s in 0..factors.len().saturating_sub(1) {
        let (a, b) = (factors[s], factors[s + 1]);
        let ps = a.len() / 2;
        let big_p = ps.min(b.len() / 2);
        let tail_ok = a[a.len() - big_p..].iter().all(|l| matches!(l, Letter::Y { i, .. } if *i == spec.m));
        let head_ok = b[..big_p].iter().all(|l| matches!(l, Letter::X { i, .. } if *i == spec.m));
        if tail_ok && head_ok {
            out.push(s + 1);
        }
    }
    Ok(out)
}

/// Peak indices `(k_s, l_s)` of an admissible factor: the column of the
/// last x letter and the row of the first y letter.
fn peak(f: &[Letter]) -> (u32, u32) {
    let p = f.len() / 2;
    let k = match f[p - 1] {
        Letter::X { j, .. } => j,
        _ => unreachable!(),
    };
    let l = match f[p] {
        Letter::Y { j, .. } => j,
        _ => unreachable!(),
    };
    (k, l)
}

/// The sufficient criterion for `w ∈ 𝒟^xy`. A `true` answer guarantees
/// membership; `false` only means the criterion does not apply.
pub fn dxy_member(spec: LeavittSpec, w: &[Letter]) -> Result<bool> {
    if !is_admissible(w) && !w.is_empty() {
        return Err(Error::NotAdmissible(Word::from_slice(w).to_string()));
    }
    let factors = ordered_factors(w)?;
    let n = spec.n;
    if factors.iter().any(|f| peak(f) == (n, n)) {
        return Ok(false);
    }
    for s in wild_indices(spec, w)? {
        let (a, b) = (factors[s - 1], factors[s]);
        let (pa, pb) = (a.len() / 2, b.len() / 2);
        let (ka, la) = peak(a);
        let (kb, lb) = peak(b);
        let case_a = pa < pb && ka != 1 && la == 1;
        let case_b = pa > pb && kb == 1 && lb != 1;
        if !case_a && !case_b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reconstruct `u ∈ ℬ^xy` with `w` equal to the transformation of the
/// completion of `u`, following the two deletion steps. `None` if the
/// construction does not go through.
pub fn dxy_preimage(spec: LeavittSpec, w: &[Letter]) -> Result<Option<Word>> {
    if w.is_empty() {
        return Ok(Some(Word::empty()));
    }
    let factors = ordered_factors(w)?;
    let wild = wild_indices(spec, w)?;
    let (y, x) = (y1m(spec), xm1(spec));
    let mut drop_tail = vec![0usize; factors.len()];
    let mut drop_head = vec![0usize; factors.len()];
    for &s in &wild {
        let big_p = (factors[s - 1].len() / 2).min(factors[s].len() / 2);
        drop_tail[s - 1] = big_p;
        drop_head[s] = big_p;
    }
    let mut v = Vec::with_capacity(w.len());
    for (idx, f) in factors.iter().enumerate() {
        let p = f.len() / 2;
        if drop_head[idx] + drop_tail[idx] > 2 * p
            || drop_head[idx] > p
            || drop_tail[idx] > p
        {
            return Ok(None);
        }
        let head = &f[..drop_head[idx]];
        let tail = &f[f.len() - drop_tail[idx]..];
        if head.iter().any(|l| *l != x) || tail.iter().any(|l| *l != y) {
            return Ok(None);
        }
        v.extend_from_slice(&f[drop_head[idx]..f.len() - drop_tail[idx]]);
    }
    if !is_ordered(&v) {
        return Ok(None);
    }
    let Some(u) = completion_preimage(spec, &v) else {
        return Ok(None);
    };
    let back = if u.is_empty() { Word::empty() } else { transformation(spec, &completion(spec, &u)?)? };
    Ok((back.letters() == w).then_some(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leavitt::Leavitt;
    use crate::scalar::Rational;

    fn spec(m: u32, n: u32) -> LeavittSpec {
        LeavittSpec::new(m, n).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&w("x(1,1) y(1,1)")).unwrap().to_string(), "((1|1))");
        assert!(is_admissible(&w("x(1,1) y(1,1)")));
        assert_eq!(signature(&w("x(1,2) y(1,1)")).unwrap().to_string(), "((2|1))");
        assert!(is_admissible(&w("x(1,2) y(1,1)")));
        let bad = w("x(1,2) x(1,1) y(1,1) y(1,2)");
        assert_eq!(signature(&bad).unwrap().to_string(), "((2,1|1,1))");
        assert!(!is_admissible(&bad));
        assert!(signature(&w("x(1,1) x(1,1) y(1,1) x(1,1) y(1,1) y(1,1)")).is_err());
    }

    #[test]
    fn transformation_example() {
        let s = spec(2, 2);
        let t = transformation(s, &w("x(1,2) x(1,1) y(1,1) y(1,1)")).unwrap();
        assert_eq!(t, w("x(1,2) y(1,2) x(2,1) x(1,1) y(1,1) y(1,1)"));
        assert!(is_admissible(&t));
        let adm = w("x(1,1) x(2,2) y(2,1) y(1,2)");
        assert_eq!(transformation(s, &adm).unwrap(), adm);
    }

    #[test]
    fn transformation_y_side() {
        let s = spec(2, 2);
        // y rows (1 | 2) in word order: the label-1 y letter has row 2
        let t = transformation(s, &w("x(1,1) x(1,1) y(1,1) y(2,1)")).unwrap();
        assert_eq!(t, w("x(1,1) x(1,1) y(1,1) y(1,2) x(2,1) y(2,1)"));
        assert!(is_admissible(&t));
    }

    #[test]
    fn g_polynomials() {
        let s = spec(2, 2);
        let alg = Leavitt::<Rational>::new(s);
        assert_eq!(g_poly::<Rational>(s, 1), Polynomial::parse("y(1,1) x(1,1) + y(1,2) x(2,1)").unwrap());
        assert_eq!(g_poly::<Rational>(s, 2).len(), 4);
        for t in 1..4 {
            assert_eq!(alg.nf(&g_poly(s, t)).unwrap(), Polynomial::one());
        }
    }

    #[test]
    fn wild_examples() {
        let s = spec(2, 2);
        assert_eq!(wild_indices(s, &w("x(1,2) y(1,2) x(2,1) y(1,1)")).unwrap(), vec![1]);
        assert!(wild_indices(s, &w("x(1,2) y(1,1) x(2,1) y(1,1)")).unwrap().is_empty());
        let one = spec(1, 2);
        assert_eq!(wild_indices(one, &w("x(1,2) y(1,1) x(1,1) y(2,1) x(1,1) y(1,1)")).unwrap(), vec![1, 2]);
    }

    #[test]
    fn dxy_examples() {
        let s = spec(2, 2);
        assert!(dxy_member(s, &w("x(1,1) y(2,1)")).unwrap());
        assert!(!dxy_member(s, &w("x(1,2) y(2,1)")).unwrap());
        let m1 = spec(1, 2);
        assert!(!dxy_member(m1, &w("x(1,2) y(1,1) x(1,1) y(1,1)")).unwrap());
        assert!(dxy_member(s, &w("x(1,2) x(1,1) y(1,1) y(1,1)")).is_err());
    }

    #[test]
    fn chain_then_qualifying_factor() {
        // chain x12 y11 (type (1,1), sig (2|1)) followed by the larger factor
        // x11 x11 y11 y11 whose first x column is 1
        let word = w("x(1,2) y(1,1) x(1,1) x(1,1) y(1,1) y(1,1)");
        let d = skeleton(&word).unwrap();
        assert_eq!(d.skeleton, w("x(1,1) x(1,1) y(1,1) y(1,1)"));
        assert_eq!(d.segments.len(), 1);
        assert_eq!(d.segments[0].kind, SegmentKind::Chain);
        assert_eq!(d.reassemble(), word);
        let plain = w("x(1,1) y(1,1) x(1,1) y(1,1)");
        assert_eq!(skeleton(&plain).unwrap().skeleton, plain);
    }

    #[test]
    fn cochain_after_qualifying_factor() {
        let word = w("x(1,1) x(1,1) y(1,1) y(1,1) x(1,1) y(2,1)");
        let d = skeleton(&word).unwrap();
        assert_eq!(d.skeleton, w("x(1,1) x(1,1) y(1,1) y(1,1)"));
        assert_eq!(d.segments[0].kind, SegmentKind::Cochain);
        assert_eq!(d.reassemble(), word);
    }
}
