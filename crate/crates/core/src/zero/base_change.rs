//! Block base-change matrices for the completion and transformation maps.
//!
//! A column holds the coordinates of `r_S(map(w))` for a basis word `w`.
//! Both maps are expected to give lower-unitriangular blocks in the order
//! "block, then length, then lexicographic".

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::admissible::{skeleton_type, transformation};
use super::blocks::{
    block_params, complete_with, count_pattern_words, enumerate_bxy_block, for_each_bxy_word_where, BlockShape,
    BLOCK_SIZE_CAP,
};
use crate::error::{Error, Result};
use crate::leavitt::{Leavitt, LeavittSpec};
use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseChangeMap {
    Completion,
    Transformation,
}

impl fmt::Display for BaseChangeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseChangeMap::Completion => "completion",
            BaseChangeMap::Transformation => "transformation",
        })
    }
}

impl FromStr for BaseChangeMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "completion" => Ok(BaseChangeMap::Completion),
            "transformation" => Ok(BaseChangeMap::Transformation),
            _ => Err(Error::Parse { input: s.into(), reason: "expected completion or transformation".into() }),
        }
    }
}

/// A square block with sparse columns, `columns[j]` sorted by row.
#[derive(Clone, Debug)]
pub struct BaseChangeMatrix<F: Field> {
    pub block: BlockShape,
    pub map: BaseChangeMap,
    pub basis: Vec<Word>,
    pub columns: Vec<Vec<(usize, F)>>,
}

impl<F: Field> BaseChangeMatrix<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Result<F> {
        let d = self.dim();
        if row >= d || col >= d {
            return Err(Error::OutOfRange { row, col, rows: d, cols: d });
        }
        Ok(self.columns[col].iter().find(|(r, _)| *r == row).map_or_else(F::zero, |(_, c)| c.clone()))
    }

    /// Ones on the diagonal and nothing above it.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, col)| {
            col.iter().all(|(i, _)| *i >= j) && col.iter().any(|(i, c)| *i == j && *c == F::one())
        })
    }

    pub fn is_identity(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, col)| col.len() == 1 && col[0].0 == j && col[0].1 == F::one())
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let d = self.dim();
        let mut out = vec![vec![F::zero(); d]; d];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                out[*i][j] = c.clone();
            }
        }
        out
    }
}

/// Shapes `K'` that can carry a completed word with skeleton of type `K`:
/// every skeleton factor `k` may be preceded by an increasing run of sizes
/// below `k` and followed by a decreasing one.
pub fn carrier_shapes(block: &BlockShape) -> Vec<BlockShape> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &k in &block.0 {
        let subsets: Vec<Vec<usize>> = (0u32..1 << (k - 1))
            .map(|mask| (1..k).filter(|s| mask & (1 << (s - 1)) != 0).collect())
            .collect();
        let mut next = Vec::new();
        for prefix in &out {
            for up in &subsets {
                for down in &subsets {
                    let mut v = prefix.clone();
                    v.extend(up.iter().copied());
                    v.push(k);
                    v.extend(down.iter().rev().copied());
                    next.push(v);
                }
            }
        }
        out = next;
    }
    let mut shapes: Vec<BlockShape> = out.into_iter().map(BlockShape).collect();
    shapes.sort();
    shapes.dedup();
    shapes
}

/// Visit every word of `𝒞^xy(K)` together with its `ℬ^xy` preimage.
/// Returns `false` if `keep_going` stopped the scan early.
pub fn for_each_cxy_word(
    spec: LeavittSpec,
    block: &BlockShape,
    mut keep_going: impl FnMut() -> bool,
    mut f: impl FnMut(&Word, &[Letter]),
) -> Result<bool> {
    for carrier in carrier_shapes(block) {
        let mut stopped = false;
        let mut err = None;
        for_each_bxy_word_where(spec, &carrier, |_| true, |u, r| {
            if !keep_going() {
                stopped = true;
                return false;
            }
            let c = complete_with(spec, u, r);
            match skeleton_type(&c) {
                Ok(Some(t)) if t == *block => f(&c, u),
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
            err.is_none()
        });
        if let Some(e) = err {
            return Err(e);
        }
        if stopped {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All words of `𝒞^xy(K)`, sorted by length then lexicographically.
pub fn enumerate_cxy_block(spec: LeavittSpec, block: &BlockShape, cap: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let over = std::cell::Cell::new(false);
    for_each_cxy_word(spec, block, || !over.get(), |w, _| {
        out.push(w.clone());
        over.set(out.len() > cap);
    })?;
    if over.get() {
        return Err(Error::BlockTooLarge { size: out.len(), cap });
    }
    out.sort();
    Ok(out)
}

/// Rewrites polynomials in `ℬ^xy` coordinates into `𝒞^xy` coordinates by
/// peeling off the smallest word, using `r_S(û) = u + (larger words)`.
pub struct CSolver<'a, F: Field> {
    alg: &'a Leavitt<F>,
    cache: HashMap<Word, (Word, Polynomial<F>)>,
}

impl<'a, F: Field> CSolver<'a, F> {
    pub fn new(alg: &'a Leavitt<F>) -> Self {
        CSolver { alg, cache: HashMap::new() }
    }

    fn completed(&mut self, u: &Word) -> Result<&(Word, Polynomial<F>)> {
        if !self.cache.contains_key(u) {
            let spec = self.alg.spec();
            let (_, r) = block_params(u)?;
            let c = complete_with(spec, u, &r);
            let nf = self.alg.nf_word(&c)?;
            if nf.coeff(u) != F::one() || nf.terms().next().map(|(w, _)| w) != Some(u) {
                return Err(Error::Integrity(format!("completion of {u} is not u plus larger words")));
            }
            self.cache.insert(u.clone(), (c, nf));
        }
        Ok(&self.cache[u])
    }

    /// Coordinates of `p` (a reduced polynomial in `L₀^xy`) in `𝒞^xy`.
    pub fn to_c_coordinates(&mut self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let mut rest = p.clone();
        let mut out = Polynomial::zero();
        let mut steps = 0u64;
        loop {
            let head = rest.terms().next().map(|(u, c)| (u.clone(), c.clone()));
            let Some((u, c)) = head else { break };
            if u.is_empty() {
                out.add_term(Word::empty(), &c);
                rest.add_term(Word::empty(), &c.neg());
                continue;
            }
            steps += 1;
            if steps > crate::rewrite::DEFAULT_BUDGET {
                return Err(Error::BudgetExceeded(steps));
            }
            let (cw, nf) = self.completed(&u)?;
            out.add_term(cw.clone(), &c);
            rest = rest.sub(&nf.scale(&c));
        }
        Ok(out)
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

/// Materialized block matrix. Fails with [`Error::Integrity`] when an image
/// leaves the block.
pub fn base_change_block<F: Field>(
    alg: &Leavitt<F>,
    block: &BlockShape,
    map: BaseChangeMap,
) -> Result<BaseChangeMatrix<F>> {
    let spec = alg.spec();
    let basis = match map {
        BaseChangeMap::Completion => enumerate_bxy_block(spec, block)?,
        BaseChangeMap::Transformation => enumerate_cxy_block(spec, block, BLOCK_SIZE_CAP)?,
    };
    let index: HashMap<&[Letter], usize> = basis.iter().enumerate().map(|(n, w)| (w.letters(), n)).collect();
    let mut solver = CSolver::new(alg);
    let mut columns = Vec::with_capacity(basis.len());
    for w in &basis {
        let image = match map {
            BaseChangeMap::Completion => {
                let (_, r) = block_params(w)?;
                alg.nf_word(&complete_with(spec, w, &r))?
            }
            BaseChangeMap::Transformation => {
                let t = transformation(spec, w)?;
                solver.to_c_coordinates(&alg.nf_word(&t)?)?
            }
        };
        let mut col = Vec::with_capacity(image.len());
        for (u, c) in image.terms() {
            let row = index
                .get(u.letters())
                .ok_or_else(|| Error::Integrity(format!("{map} of {w} has the term {u} outside block {block}")))?;
            col.push((*row, c.clone()));
        }
        col.sort_by_key(|(r, _)| *r);
        columns.push(col);
    }
    Ok(BaseChangeMatrix { block: block.clone(), map, basis, columns })
}

/// Outcome of a streaming unitriangularity check on one block.
#[derive(Clone, Debug, Serialize)]
pub struct BlockVerification {
    pub block: BlockShape,
    pub map: BaseChangeMap,
    pub columns_checked: u64,
    /// Columns known to be unit vectors without reduction.
    pub identity_columns: u64,
    /// Number of violating columns; `failures` keeps the first few.
    pub failed_columns: u64,
    pub failures: Vec<String>,
    /// False when the deadline stopped the scan.
    pub complete: bool,
}

impl BlockVerification {
    pub fn is_ok(&self) -> bool {
        self.complete && self.failures.is_empty()
    }
}

const MAX_REPORTED: usize = 10;

fn past(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// Check the completion block column by column without materializing it.
/// Words with `r = 0` are their own completion and irreducible, so their
/// columns are unit vectors; the others are reduced and inspected.
pub fn verify_completion_block<F: Field>(
    alg: &Leavitt<F>,
    block: &BlockShape,
    deadline: Option<Instant>,
) -> Result<BlockVerification> {
    let spec = alg.spec();
    let mut v = BlockVerification {
        block: block.clone(),
        map: BaseChangeMap::Completion,
        columns_checked: 0,
        identity_columns: 0,
        failed_columns: 0,
        failures: Vec::new(),
        complete: true,
    };
    let mut err = None;
    let mut nontrivial = 0u64;
    // words with r = 0 only need counting
    let trivial = count_pattern_words(spec, &block.runs(&vec![0; block.0.len() - 1])) as u64;
    v.identity_columns = trivial;
    v.columns_checked = trivial;
    for_each_bxy_word_where(spec, block, |r| r.iter().any(|&x| x > 0), |w, r| {
        nontrivial += 1;
        if nontrivial.is_multiple_of(256) && past(deadline) {
            v.complete = false;
            return false;
        }
        let c = complete_with(spec, w, r);
        match alg.nf_word(&c) {
            Ok(nf) => {
                let ww = Word::from_slice(w);
                let fine = nf.coeff(&ww) == F::one()
                    && nf.terms().all(|(u, _)| {
                        *u == ww || (*u > ww && block_params(u).is_ok_and(|(s, _)| s == *block))
                    });
                if !fine {
                    v.failed_columns += 1;
                    if v.failures.len() < MAX_REPORTED {
                        v.failures.push(format!("column {ww}: {nf}"));
                    }
                }
                v.columns_checked += 1;
                true
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(v)
}

/// Check the transformation block over `𝒞^xy(K)`, streaming the block.
pub fn verify_transformation_block<F: Field>(
    alg: &Leavitt<F>,
    block: &BlockShape,
    deadline: Option<Instant>,
) -> Result<BlockVerification> {
    let spec = alg.spec();
    let mut v = BlockVerification {
        block: block.clone(),
        map: BaseChangeMap::Transformation,
        columns_checked: 0,
        identity_columns: 0,
        failed_columns: 0,
        failures: Vec::new(),
        complete: true,
    };
    let mut solver = CSolver::new(alg);
    let mut err = None;
    let mut tick = 0u64;
    let finished = for_each_cxy_word(
        spec,
        block,
        || {
            tick += 1;
            !(tick.is_multiple_of(8) && past(deadline))
        },
        |w, _| {
            if err.is_some() {
                return;
            }
            // Ok(true) for an identity column, Ok(false) for a checked one,
            // Err(reason) for a violation
            let res = (|| -> Result<std::result::Result<bool, String>> {
                let t = transformation(spec, w)?;
                if t == *w {
                    return Ok(Ok(true));
                }
                let coords = solver.to_c_coordinates(&alg.nf_word(&t)?)?;
                if coords.coeff(w) != F::one() {
                    return Ok(Err(format!("coefficient of {w} is {}", coords.coeff(w))));
                }
                for (u, _) in coords.terms() {
                    if u == w {
                        continue;
                    }
                    if u < w {
                        return Ok(Err(format!("smaller term {u}")));
                    }
                    let ty = skeleton_type(u)?;
                    if ty.as_ref() != Some(block) {
                        let ty = ty.map_or("none".to_string(), |t| t.to_string());
                        return Ok(Err(format!("term {u} lies in block {ty}")));
                    }
                }
                Ok(Ok(false))
            })();
            match res {
                Ok(Ok(identity)) => {
                    v.columns_checked += 1;
                    v.identity_columns += u64::from(identity);
                }
                Ok(Err(reason)) => {
                    v.columns_checked += 1;
                    v.failed_columns += 1;
                    if v.failures.len() < MAX_REPORTED {
                        v.failures.push(format!("column {w}: {reason}"));
                    }
                }
                Err(e) => err = Some(e),
            }
        },
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    v.complete = finished;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::zero::blocks::{completion_preimage, is_cxy, shapes_up_to};

    fn alg(m: u32, n: u32) -> Leavitt<Rational> {
        Leavitt::new(LeavittSpec::new(m, n).unwrap())
    }

    #[test]
    fn completion_block_one_is_identity() {
        let a = alg(2, 2);
        let mtx = base_change_block(&a, &BlockShape(vec![1]), BaseChangeMap::Completion).unwrap();
        assert!(mtx.is_identity());
        assert_eq!(mtx.dim(), 12);
    }

    #[test]
    fn completion_block_one_two_is_unitriangular() {
        let a = alg(2, 2);
        let mtx = base_change_block(&a, &BlockShape(vec![1, 2]), BaseChangeMap::Completion).unwrap();
        assert!(mtx.is_lower_unitriangular());
        // r₁ < min(1, 2) forces r₁ = 0, so every word is already ordered
        assert!(mtx.is_identity());
        let shape = BlockShape(vec![2, 2]);
        let mtx = base_change_block(&a, &shape, BaseChangeMap::Completion).unwrap();
        assert!(mtx.is_lower_unitriangular());
        assert!(!mtx.is_identity());
        let v = verify_completion_block(&a, &shape, None).unwrap();
        assert!(v.is_ok());
        assert_eq!(v.columns_checked as usize, mtx.dim());
    }

    #[test]
    fn completion_blocks_small() {
        for (m, n) in [(1, 2), (2, 2), (2, 3)] {
            let a = alg(m, n);
            for shape in shapes_up_to(3) {
                let mtx = base_change_block(&a, &shape, BaseChangeMap::Completion).unwrap();
                assert!(mtx.is_lower_unitriangular(), "({m},{n}) {shape}");
            }
        }
    }

    #[test]
    fn carrier_shapes_of_two() {
        let got: Vec<String> = carrier_shapes(&BlockShape(vec![2])).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["(2)", "(1,2)", "(2,1)", "(1,2,1)"]);
    }

    #[test]
    fn c_blocks_are_completions() {
        let spec = LeavittSpec::new(2, 2).unwrap();
        for shape in shapes_up_to(2) {
            for w in enumerate_cxy_block(spec, &shape, 100_000).unwrap() {
                assert!(completion_preimage(spec, &w).is_some());
                assert_eq!(skeleton_type(&w).unwrap(), Some(shape.clone()));
            }
        }
    }

    #[test]
    fn transformation_blocks_small() {
        for (m, n) in [(2, 2), (2, 3)] {
            let a = alg(m, n);
            for shape in shapes_up_to(2) {
                let mtx = base_change_block(&a, &shape, BaseChangeMap::Transformation).unwrap();
                assert!(mtx.is_lower_unitriangular(), "({m},{n}) {shape}");
                let v = verify_transformation_block(&a, &shape, None).unwrap();
                assert!(v.is_ok(), "{v:?}");
            }
        }
    }

    #[test]
    fn transformation_leaves_block_3() {
        // the image of this word of 𝒞^xy(3) picks up a term whose skeleton
        // has type (3,2)
        let a = alg(2, 2);
        let w = Word::parse("x(1,1) x(1,1) x(1,1) y(1,1) y(2,1) y(2,1)").unwrap();
        assert!(is_cxy(a.spec(), &w));
        assert_eq!(skeleton_type(&w).unwrap(), Some(BlockShape::parse("3").unwrap()));
        let t = transformation(a.spec(), &w).unwrap();
        let coords = CSolver::new(&a).to_c_coordinates(&a.nf_word(&t).unwrap()).unwrap();
        let mut back = Polynomial::<Rational>::zero();
        for (u, c) in coords.terms() {
            back = back.add(&a.nf_word(u).unwrap().scale(c));
        }
        assert_eq!(back, a.nf_word(&t).unwrap());
        let stray = Word::parse("x(1,1) x(1,1) x(1,1) y(1,1) y(1,1) y(1,1) x(1,1) x(1,1) y(2,1) y(2,1)").unwrap();
        assert_eq!(coords.coeff(&stray), Rational::from_integer((-1).into()));
        assert_eq!(skeleton_type(&stray).unwrap(), Some(BlockShape::parse("3,2").unwrap()));
        assert!(coords.terms().all(|(u, _)| *u >= w));
    }
}
