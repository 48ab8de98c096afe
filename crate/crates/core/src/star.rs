//! The monoid `𝔐_n(R)` of rectangular matrices of sizes `n^i × n^j` under
//! the ⋆ product, which inflates the smaller factor block-diagonally.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rewrite::ReductionSystem;
use crate::scalar::Field;

/// Largest exponent a shape may carry.
pub const MAX_EXPONENT: u32 = 12;

/// Largest number of entries a matrix may hold.
pub const MAX_ENTRIES: usize = 1 << 22;

/// A coefficient ring. Multiplication may need a reduction step, hence it can
/// fail.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// Scalars of a field.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarRing<F>(std::marker::PhantomData<F>);

impl<F> ScalarRing<F> {
    pub fn new() -> Self {
        ScalarRing(std::marker::PhantomData)
    }
}

impl<F: Field> Ring for ScalarRing<F> {
    type Elem = F;

    fn zero(&self) -> F {
        F::zero()
    }
    fn one(&self) -> F {
        F::one()
    }
    fn is_zero(&self, a: &F) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &F, b: &F) -> F {
        a.add(b)
    }
    fn mul(&self, a: &F, b: &F) -> Result<F> {
        Ok(a.mul(b))
    }
}

/// The free algebra, without reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeRing<F>(std::marker::PhantomData<F>);

impl<F> FreeRing<F> {
    pub fn new() -> Self {
        FreeRing(std::marker::PhantomData)
    }
}

impl<F: Field> Ring for FreeRing<F> {
    type Elem = Polynomial<F>;

    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero()
    }
    fn one(&self) -> Polynomial<F> {
        Polynomial::one()
    }
    fn is_zero(&self, a: &Polynomial<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a.add(b)
    }
    fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
        Ok(a.mul(b))
    }
}

/// Polynomials kept in normal form for a reduction system.
#[derive(Clone, Copy)]
pub struct ReducedRing<'a, F: Field> {
    pub system: &'a ReductionSystem<F>,
}

impl<'a, F: Field> ReducedRing<'a, F> {
    pub fn new(system: &'a ReductionSystem<F>) -> Self {
        ReducedRing { system }
    }
}

impl<F: Field> Ring for ReducedRing<'_, F> {
    type Elem = Polynomial<F>;

    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero()
    }
    fn one(&self) -> Polynomial<F> {
        Polynomial::one()
    }
    fn is_zero(&self, a: &Polynomial<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a.add(b)
    }
    fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.system.normal_form(&a.mul(b))
    }
}

/// A plain row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.entries[r * self.cols + c]
    }

    /// `t` copies of `self` on the diagonal.
    pub fn oplus<R: Ring<Elem = E>>(&self, ring: &R, t: usize) -> Result<Matrix<E>> {
        if t == 0 {
            return Err(Error::InvalidSpec("⊕^t needs t ≥ 1".into()));
        }
        let (rows, cols) = (t * self.rows, t * self.cols);
        check_entries(rows, cols)?;
        let mut entries = vec![ring.zero(); rows * cols];
        for b in 0..t {
            for r in 0..self.rows {
                for c in 0..self.cols {
                    entries[(b * self.rows + r) * cols + b * self.cols + c] = self.get(r, c).clone();
                }
            }
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Matrix<E>) -> Result<Matrix<E>> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if ring.is_zero(a) || ring.is_zero(b) {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(a, b)?);
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, entries })
    }
}

fn check_entries(rows: usize, cols: usize) -> Result<()> {
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_ENTRIES => Ok(()),
        _ => Err(Error::BlockTooLarge { size: rows.saturating_mul(cols), cap: MAX_ENTRIES }),
    }
}

/// An element of `𝔐_n(R)`: an `n^i × n^j` matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct StarMatrix<E> {
    base: u32,
    exps: (u32, u32),
    matrix: Matrix<E>,
}

fn pow(n: u32, e: u32) -> Result<usize> {
    if e > MAX_EXPONENT {
        return Err(Error::InvalidSpec(format!("exponent {e} exceeds {MAX_EXPONENT}")));
    }
    (n as usize).checked_pow(e).ok_or_else(|| Error::InvalidSpec(format!("{n}^{e} overflows")))
}

impl<E: Clone> StarMatrix<E> {
    pub fn new(base: u32, i: u32, j: u32, entries: Vec<E>) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidSpec("base must be positive".into()));
        }
        let (rows, cols) = (pow(base, i)?, pow(base, j)?);
        check_entries(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        Ok(StarMatrix { base, exps: (i, j), matrix: Matrix { rows, cols, entries } })
    }

    pub fn from_fn(base: u32, i: u32, j: u32, mut f: impl FnMut(usize, usize) -> E) -> Result<Self> {
        let (rows, cols) = (pow(base, i)?, pow(base, j)?);
        check_entries(rows, cols)?;
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(base, i, j, entries)
    }

    /// The identity `(1)`.
    pub fn unit<R: Ring<Elem = E>>(ring: &R, base: u32) -> Self {
        StarMatrix { base, exps: (0, 0), matrix: Matrix { rows: 1, cols: 1, entries: vec![ring.one()] } }
    }

    /// An `n × 1` column.
    pub fn column(base: u32, entries: Vec<E>) -> Result<Self> {
        Self::new(base, 1, 0, entries)
    }

    /// A `1 × n` row.
    pub fn row(base: u32, entries: Vec<E>) -> Result<Self> {
        Self::new(base, 0, 1, entries)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn exponents(&self) -> (u32, u32) {
        self.exps
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols
    }

    pub fn matrix(&self) -> &Matrix<E> {
        &self.matrix
    }

    pub fn entries(&self) -> &[E] {
        &self.matrix.entries
    }

    /// Zero-based access.
    pub fn get(&self, r: usize, c: usize) -> Result<&E> {
        if r >= self.rows() || c >= self.cols() {
            return Err(Error::OutOfRange { row: r, col: c, rows: self.rows(), cols: self.cols() });
        }
        Ok(self.matrix.get(r, c))
    }

    pub fn oplus<R: Ring<Elem = E>>(&self, ring: &R, t: usize) -> Result<Matrix<E>> {
        self.matrix.oplus(ring, t)
    }

    /// `⊕^{n^s} self`, which stays inside `𝔐_n(R)`.
    pub fn inflate<R: Ring<Elem = E>>(&self, ring: &R, s: u32) -> Result<Self> {
        let (i, j) = (self.exps.0 + s, self.exps.1 + s);
        pow(self.base, i)?;
        pow(self.base, j)?;
        let m = self.matrix.oplus(ring, pow(self.base, s)?)?;
        Ok(StarMatrix { base: self.base, exps: (i, j), matrix: m })
    }

    pub fn star<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        let (j, k) = (self.exps.1, other.exps.0);
        let (a, b) = if j <= k {
            (self.inflate(ring, k - j)?, other.clone())
        } else {
            (self.clone(), other.inflate(ring, j - k)?)
        };
        let m = a.matrix.mul(ring, &b.matrix)?;
        Ok(StarMatrix { base: self.base, exps: (a.exps.0, b.exps.1), matrix: m })
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.base != other.base || self.exps != other.exps {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} plus {}×{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        let entries = self.entries().iter().zip(other.entries()).map(|(a, b)| ring.add(a, b)).collect();
        Self::new(self.base, self.exps.0, self.exps.1, entries)
    }

    /// Apply `f` to every entry.
    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> StarMatrix<T> {
        StarMatrix {
            base: self.base,
            exps: self.exps,
            matrix: Matrix {
                rows: self.matrix.rows,
                cols: self.matrix.cols,
                entries: self.matrix.entries.iter().map(f).collect(),
            },
        }
    }

    pub fn try_map<T: Clone>(&self, mut f: impl FnMut(&E) -> Result<T>) -> Result<StarMatrix<T>> {
        let entries = self.matrix.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        StarMatrix::new(self.base, self.exps.0, self.exps.1, entries)
    }
}

impl<E: fmt::Display> fmt::Display for StarMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.matrix.rows {
            let row: Vec<String> = (0..self.matrix.cols)
                .map(|c| self.matrix.entries[r * self.matrix.cols + c].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One-based residue: `Mod_n(an + b) = b` with `b ∈ 1..=n`.
pub fn mod_index(n: usize, i: usize) -> usize {
    assert!(n >= 1 && i >= 1, "mod_index needs n, i ≥ 1");
    (i - 1) % n + 1
}

pub fn ceil_div(i: usize, d: usize) -> usize {
    assert!(d >= 1, "ceil_div needs d ≥ 1");
    i.div_ceil(d)
}

/// The `(i, j)` entry (one-based) of `u^{(k)} ⋆ … ⋆ u^{(1)} ⋆ v^{(1)} ⋆ … ⋆
/// v^{(k)}` by the closed index formula. `us[0]` is `u^{(1)}`.
pub fn entry_formula<R: Ring>(
    ring: &R,
    us: &[Vec<R::Elem>],
    vs: &[Vec<R::Elem>],
    i: usize,
    j: usize,
) -> Result<R::Elem> {
    let k = us.len();
    if k == 0 || vs.len() != k {
        return Err(Error::ShapeMismatch(format!("{} columns and {} rows", us.len(), vs.len())));
    }
    let n = us[0].len();
    if us.iter().chain(vs).any(|v| v.len() != n) || n == 0 {
        return Err(Error::ShapeMismatch("all factors need length n".into()));
    }
    let size = pow(n as u32, k as u32)?;
    if i == 0 || j == 0 || i > size || j > size {
        return Err(Error::OutOfRange { row: i, col: j, rows: size, cols: size });
    }
    let mut acc = ring.one();
    // u^{(k)} down to u^{(1)}: u^{(r)} is indexed by ⌈i / n^{k−r}⌉
    for r in (1..=k).rev() {
        let idx = mod_index(n, ceil_div(i, n.pow((k - r) as u32)));
        acc = ring.mul(&acc, &us[r - 1][idx - 1])?;
    }
    for r in 1..=k {
        let idx = mod_index(n, ceil_div(j, n.pow((k - r) as u32)));
        acc = ring.mul(&acc, &vs[r - 1][idx - 1])?;
    }
    Ok(acc)
}

/// `u^{(k)} ⋆ … ⋆ u^{(1)} ⋆ v^{(1)} ⋆ … ⋆ v^{(k)}` by repeated ⋆.
pub fn iterated_star<R: Ring>(ring: &R, us: &[Vec<R::Elem>], vs: &[Vec<R::Elem>]) -> Result<StarMatrix<R::Elem>> {
    let n = us.first().map_or(1, |u| u.len()) as u32;
    let mut acc = StarMatrix::unit(ring, n);
    for u in us.iter().rev() {
        acc = acc.star(ring, &StarMatrix::column(n, u.clone())?)?;
    }
    for v in vs {
        acc = acc.star(ring, &StarMatrix::row(n, v.clone())?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::word::Letter;

    type P = Polynomial<Rational>;

    fn sym(name: u32, idx: u32) -> P {
        Polynomial::from_letter(Letter::x(name, idx))
    }

    #[test]
    fn helper_examples() {
        assert_eq!(mod_index(3, 7), 1);
        assert_eq!(mod_index(4, 4), 4);
        assert_eq!(ceil_div(7, 3), 3);
        assert_eq!(ceil_div(6, 3), 2);
    }

    #[test]
    fn unit_and_outer_product() {
        let ring = FreeRing::<Rational>::new();
        let u = StarMatrix::column(2, vec![sym(1, 1), sym(1, 2)]).unwrap();
        let v = StarMatrix::row(2, vec![sym(2, 1), sym(2, 2)]).unwrap();
        let one = StarMatrix::unit(&ring, 2);
        assert_eq!(one.star(&ring, &u).unwrap(), u);
        assert_eq!(u.star(&ring, &one).unwrap(), u);
        let uv = u.star(&ring, &v).unwrap();
        assert_eq!(uv.exponents(), (1, 1));
        assert_eq!(*uv.get(1, 0).unwrap(), sym(1, 2).mul(&sym(2, 1)));
    }

    #[test]
    fn column_star_column() {
        let ring = FreeRing::<Rational>::new();
        let u = StarMatrix::column(2, vec![sym(1, 1), sym(2, 1)]).unwrap();
        let uu = u.star(&ring, &u).unwrap();
        assert_eq!((uu.rows(), uu.cols()), (4, 1));
        // (⊕²u)u: entry i is u_{Mod(i)} u_{⌈i/2⌉}
        assert_eq!(*uu.get(2, 0).unwrap(), sym(1, 1).mul(&sym(2, 1)));
    }

    #[test]
    fn oplus_shapes() {
        let ring = ScalarRing::<Rational>::new();
        let a = StarMatrix::new(2, 0, 0, vec![Rational::from_i64(5)]).unwrap();
        assert_eq!(a.oplus(&ring, 1).unwrap(), a.matrix().clone());
        let d = a.oplus(&ring, 2).unwrap();
        assert_eq!((d.rows, d.cols), (2, 2));
        assert_eq!(d.entries, vec![Rational::from_i64(5), Rational::zero(), Rational::zero(), Rational::from_i64(5)]);
        assert!(a.oplus(&ring, 0).is_err());
    }

    #[test]
    fn entry_formula_example() {
        let ring = FreeRing::<Rational>::new();
        let us: Vec<Vec<P>> = (1..=2).map(|r| (1..=2).map(|t| sym(r, t)).collect()).collect();
        let vs: Vec<Vec<P>> = (3..=4).map(|r| (1..=2).map(|t| sym(r, t)).collect()).collect();
        let e = entry_formula(&ring, &us, &vs, 3, 2).unwrap();
        let want = sym(2, 1).mul(&sym(1, 2)).mul(&sym(3, 1)).mul(&sym(4, 2));
        assert_eq!(e, want);
        let full = iterated_star(&ring, &us, &vs).unwrap();
        assert_eq!(*full.get(2, 1).unwrap(), want);
    }

    #[test]
    fn base_mismatch() {
        let ring = FreeRing::<Rational>::new();
        let a = StarMatrix::unit(&ring, 2);
        let b = StarMatrix::unit(&ring, 3);
        assert_eq!(a.star(&ring, &b), Err(Error::BaseMismatch(2, 3)));
        assert!(StarMatrix::<P>::new(2, 13, 0, vec![]).is_err());
    }
}
