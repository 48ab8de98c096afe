//! The homomorphism `φ: A(m,n) → L(m,n)₀^xy`, the maps between `A` and
//! `B`, and the letter swap identifying `L(n,m)₀^xy` with `L(m,n)₀^yx`.

use std::collections::HashMap;

use super::{e_matrix, ASpec, CheckReport};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rewrite::ReductionSystem;
use crate::scalar::Field;
use crate::star::{ceil_div, mod_index, ReducedRing, Ring, StarMatrix};
use crate::word::{Alphabet, Letter, Word};
use crate::zero::{dxy_member, is_admissible};

/// `φ(e^{p,k,l}_{ij}) = x_{i₁,1}…x_{i_{p−1},1} x_{i_p,k} y_{l,j_p} y_{1,j_{p−1}}…y_{1,j₁}`
/// with `i_r = Mod_m(⌈i/m^{r−1}⌉)` and likewise for `j`.
pub fn phi_word(spec: ASpec, letter: &Letter) -> Result<Word> {
    spec.check(letter)?;
    let Letter::E { p, k, l, i, j } = *letter else {
        return Err(Error::ForeignLetter(letter.to_string()));
    };
    let m = spec.m as usize;
    let idx = |v: u32, r: u32| mod_index(m, ceil_div(v as usize, m.pow(r - 1))) as u32;
    let mut out = Vec::with_capacity(2 * p as usize);
    for r in 1..p {
        out.push(Letter::x(idx(i, r), 1));
    }
    out.push(Letter::x(idx(i, p), k));
    out.push(Letter::y(l, idx(j, p)));
    for r in (1..p).rev() {
        out.push(Letter::y(1, idx(j, r)));
    }
    Ok(Word::new(out))
}

pub fn phi_letter<F: Field>(spec: ASpec, letter: &Letter) -> Result<Polynomial<F>> {
    Ok(Polynomial::from_word(phi_word(spec, letter)?))
}

/// The image of a whole polynomial over the `e` letters, unreduced.
pub fn phi_poly<F: Field>(spec: ASpec, p: &Polynomial<F>) -> Result<Polynomial<F>> {
    for w in p.support() {
        for l in w.iter() {
            spec.check(l)?;
        }
    }
    Ok(p.substitute(&|l| phi_letter(spec, l).expect("checked above")))
}

/// `x_{•1} ⋆ … ⋆ x_{•1} ⋆ x_{•k} ⋆ y_{l•} ⋆ y_{1•} ⋆ … ⋆ y_{1•}` over `ring`,
/// with `p − 1` copies of the outer factors.
pub fn phi_via_star<F: Field, R: Ring<Elem = Polynomial<F>>>(
    ring: &R,
    spec: ASpec,
    p: u32,
    k: u32,
    l: u32,
) -> Result<StarMatrix<Polynomial<F>>> {
    let m = spec.m;
    let col = |c: u32| StarMatrix::column(m, (1..=m).map(|i| Polynomial::from_letter(Letter::x(i, c))).collect());
    let row = |r: u32| StarMatrix::row(m, (1..=m).map(|i| Polynomial::from_letter(Letter::y(r, i))).collect());
    let mut acc = StarMatrix::unit(ring, m);
    for _ in 1..p {
        acc = acc.star(ring, &col(1)?)?;
    }
    acc = acc.star(ring, &col(k)?)?;
    acc = acc.star(ring, &row(l)?)?;
    for _ in 1..p {
        acc = acc.star(ring, &row(1)?)?;
    }
    Ok(acc)
}

/// Words over the `e` letters of length `1..=max_len` that contain no
/// left-hand side of `t`. Left-hand sides have length at most 2, so the
/// scan extends irreducible words one letter at a time.
pub fn enumerate_t_irreducible<F: Field>(spec: ASpec, t: &ReductionSystem<F>, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = spec.e_letters(false).into_iter().filter(|l| t.rule_for(&[*l]).is_none()).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = letters.iter().map(|l| vec![*l]).collect();
    for len in 1..=max_len {
        out.extend(layer.iter().map(|w| Word::from_slice(w)));
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            let last = *w.last().unwrap();
            for l in &letters {
                if t.rule_for(&[last, *l]).is_none() {
                    let mut v = w.clone();
                    v.push(*l);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    out.sort();
    out
}

/// Images of the irreducible words up to `max_len` are admissible, satisfy
/// the `𝒟^xy` criterion and are pairwise distinct.
pub fn check_phi_on_irreducibles<F: Field>(spec: ASpec, t: &ReductionSystem<F>, max_len: usize) -> Result<CheckReport> {
    let lspec = spec.leavitt();
    let mut report = CheckReport::new(format!("φ on irreducible words of A({},{},{})", spec.m, spec.n, spec.z));
    let mut seen: HashMap<Word, Word> = HashMap::new();
    for w in enumerate_t_irreducible(spec, t, max_len) {
        let img: Word = w.iter().map(|l| phi_word(spec, l)).collect::<Result<Vec<_>>>()?.into_iter().flat_map(|u| u.into_letters()).collect();
        let adm = is_admissible(&img);
        report.record(adm, || format!("φ({w}) = {img} is not admissible"));
        if adm {
            let ok = dxy_member(lspec, &img)?;
            report.record(ok, || format!("φ({w}) = {img} fails the 𝒟^xy criterion"));
        }
        if let Some(prev) = seen.insert(img.clone(), w.clone()) {
            report.record(false, || format!("φ({prev}) = φ({w}) = {img}"));
        } else {
            report.checked += 1;
        }
    }
    Ok(report)
}

fn chain<F: Field>(spec: ASpec, p: u32, k: u32, l: u32, ring: &ReducedRing<'_, F>) -> Result<StarMatrix<Polynomial<F>>> {
    // e^{p,k,k∓1} e^{p,k∓1,k∓2} … ending at l
    let step: i64 = if k > l { -1 } else { 1 };
    let mut cur = k as i64;
    let mut acc: Option<StarMatrix<Polynomial<F>>> = None;
    while cur != l as i64 {
        let factor = e_matrix::<F>(spec, p, cur as u32, (cur + step) as u32)?;
        acc = Some(match acc {
            None => factor,
            Some(a) => a.star(ring, &factor)?,
        });
        cur += step;
    }
    acc.ok_or_else(|| Error::InvalidSpec("empty chain".into()))
}

/// `ψ ∘ φ = id` on the generators of `A(m,n,z)`: for `|k − l| > 1` the chain
/// `e^{p,k,k∓1} ⋯ e^{p,l±1,l}` reduces to `e^{p,k,l}` entrywise under `r_T`.
/// `φ ∘ ψ = id` on the generators of `B` holds letter by letter.
pub fn ab_iso_maps<F: Field>(spec: ASpec, t: &ReductionSystem<F>) -> Result<CheckReport> {
    let ring = ReducedRing::new(t);
    let mut report = CheckReport::new(format!("A↔B maps at ({},{},{})", spec.m, spec.n, spec.z));
    for p in 1..=spec.z {
        for k in 1..=spec.n {
            for l in 1..=spec.n {
                let target = e_matrix::<F>(spec, p, k, l)?.try_map(|x| t.normal_form(x))?;
                if k.abs_diff(l) <= 1 {
                    // both maps fix these generators
                    report.checked += target.entries().len() as u64;
                    continue;
                }
                let img = chain(spec, p, k, l, &ring)?;
                for (pos, (a, b)) in img.entries().iter().zip(target.entries()).enumerate() {
                    report.record(a == b, || {
                        format!("e({p},{k},{l}) entry {}: {a} vs {b}", pos + 1)
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `x_{ij} ↦ y_{ij}` and `y_{ij} ↦ x_{ij}`: letters of `L(n,m)` to letters of
/// `L(m,n)`, turning xy words into yx words.
pub fn swap_letter(l: &Letter) -> Result<Letter> {
    match *l {
        Letter::X { i, j } => Ok(Letter::y(i, j)),
        Letter::Y { j, i } => Ok(Letter::x(j, i)),
        _ => Err(Error::ForeignLetter(l.to_string())),
    }
}

pub fn swap_word(w: &[Letter]) -> Result<Word> {
    w.iter().map(swap_letter).collect::<Result<Vec<_>>>().map(Word::new)
}

/// Alternating products `φ(a₁) σ(φ'(b₁)) φ(a₂) …` of images of irreducible
/// words from `A(m,n,z)` and `A(n,m,z)` (the latter through the swap `σ`)
/// contain no forbidden word of `L(m,n)`, up to `factors` factors.
pub fn check_free_product<F: Field>(spec: ASpec, max_len: usize, factors: usize) -> Result<CheckReport> {
    let other = ASpec::new(spec.n, spec.m, spec.z)?;
    let t = super::build_system_t::<F>(spec);
    let t2 = super::build_system_t::<F>(other);
    let lspec = spec.leavitt();
    let image = |s: ASpec, w: &Word| -> Result<Vec<Letter>> {
        Ok(w.iter().map(|l| phi_word(s, l)).collect::<Result<Vec<_>>>()?.into_iter().flat_map(|u| u.into_letters()).collect())
    };
    let xy: Vec<Vec<Letter>> =
        enumerate_t_irreducible(spec, &t, max_len).iter().map(|w| image(spec, w)).collect::<Result<_>>()?;
    let yx: Vec<Vec<Letter>> = enumerate_t_irreducible(other, &t2, max_len)
        .iter()
        .map(|w| image(other, w).and_then(|v| swap_word(&v)).map(|w| w.into_letters()))
        .collect::<Result<_>>()?;
    let mut report = CheckReport::new(format!("free product at L({},{})", spec.m, spec.n));
    for side in [0usize, 1] {
        let mut stack: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), 0)];
        while let Some((w, depth)) = stack.pop() {
            if depth > 0 {
                report.record(lspec.is_irreducible(&w), || format!("{} is reducible", Word::from_slice(&w)));
            }
            if depth == factors {
                continue;
            }
            let pool = if (depth + side) % 2 == 0 { &xy } else { &yx };
            for f in pool {
                let mut v = w.clone();
                v.extend_from_slice(f);
                stack.push((v, depth + 1));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::build_system_t;
    use crate::scalar::Rational;
    use crate::star::FreeRing;

    fn spec(m: u32, n: u32, z: u32) -> ASpec {
        ASpec::new(m, n, z).unwrap()
    }

    #[test]
    fn phi_level_one() {
        let s = spec(2, 2, 1);
        assert_eq!(phi_word(s, &Letter::e(1, 1, 2, 2, 1)).unwrap(), Word::parse("x(2,1) y(2,1)").unwrap());
    }

    #[test]
    fn phi_matches_star_products() {
        let ring = FreeRing::<Rational>::new();
        for s in [spec(2, 2, 2), spec(3, 2, 2), spec(2, 3, 3)] {
            for p in 1..=s.z {
                for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                    let mat = phi_via_star(&ring, s, p, k, l).unwrap();
                    let d = s.dim(p);
                    for i in 1..=d {
                        for j in 1..=d {
                            let want = phi_letter::<Rational>(s, &Letter::e(p, k, l, i, j)).unwrap();
                            assert_eq!(*mat.get(i as usize - 1, j as usize - 1).unwrap(), want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn irreducible_letters_and_pairs() {
        let s = spec(2, 2, 2);
        let t = build_system_t::<Rational>(s);
        let words = enumerate_t_irreducible(s, &t, 2);
        assert!(words.iter().all(|w| t.is_irreducible(w)));
        assert!(!words.contains(&Word::parse("e(1,2,2,1,1)").unwrap()));
        let rep = check_phi_on_irreducibles(s, &t, 2).unwrap();
        assert!(rep.is_ok(), "{:?}", rep.failures);
    }

    #[test]
    fn ab_maps_at_2_3_1() {
        let s = spec(2, 3, 1);
        let t = build_system_t::<Rational>(s);
        let rep = ab_iso_maps(s, &t).unwrap();
        assert!(rep.is_ok(), "{:?}", rep.failures);
        let prod = Polynomial::parse("e(1,3,2,1,1) e(1,2,1,1,1) + e(1,3,2,1,2) e(1,2,1,2,1)").unwrap();
        assert_eq!(t.normal_form(&prod).unwrap(), Polynomial::parse("e(1,3,1,1,1)").unwrap());
    }

    #[test]
    fn swap_is_an_involution_on_shapes() {
        let w = Word::parse("x(2,1) y(1,1)").unwrap();
        let s = swap_word(&w).unwrap();
        assert_eq!(s, Word::parse("y(2,1) x(1,1)").unwrap());
        assert_eq!(swap_word(&s).unwrap(), w);
    }

    #[test]
    fn free_product_small() {
        let rep = check_free_product::<Rational>(spec(2, 2, 1), 1, 3).unwrap();
        assert!(rep.is_ok(), "{:?}", rep.failures);
    }
}
