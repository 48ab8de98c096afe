//! Free algebra arithmetic, the reduction engine and the Leavitt system,
//! checked against direct computations.

use leavitt_core::leavitt::{build_system_s, degree, enumerate_irreducible, Leavitt, LeavittSpec};
use leavitt_core::rewrite::{check_compatible_order, check_diamond, Reducer, Strategy as Order};
use leavitt_core::scalar::F32003;
use leavitt_core::{Field, Letter, Polynomial, Rational, Word};
use proptest::prelude::*;

fn spec(m: u32, n: u32) -> LeavittSpec {
    LeavittSpec::new(m, n).unwrap()
}

fn letter_strategy(m: u32, n: u32) -> impl Strategy<Value = Letter> {
    prop_oneof![
        (1..=m, 1..=n).prop_map(|(i, j)| Letter::x(i, j)),
        (1..=n, 1..=m).prop_map(|(j, i)| Letter::y(j, i)),
    ]
}

fn word_strategy(m: u32, n: u32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter_strategy(m, n), 0..=max).prop_map(Word::new)
}

fn poly_strategy(m: u32, n: u32) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec((-3i64..=3, word_strategy(m, n, 4)), 0..4)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(c, w)| (Rational::from_i64(c), w))))
}

/// Every word over the letters of `spec` up to `len`, by plain recursion.
fn all_words(spec: LeavittSpec, len: usize) -> Vec<Word> {
    let letters = spec.letters();
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut v = w.clone();
                    v.push(*l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out.into_iter().map(Word::new).collect()
}

/// Irreducible means no factor `x_{in} y_{nj}` or `y_{jm} x_{mi}`.
fn irreducible_by_definition(spec: LeavittSpec, w: &Word) -> bool {
    w.windows(2).all(|p| match (p[0], p[1]) {
        (Letter::X { j, .. }, Letter::Y { j: j2, .. }) => !(j == spec.n && j2 == spec.n),
        (Letter::Y { i, .. }, Letter::X { i: i2, .. }) => !(i == spec.m && i2 == spec.m),
        _ => true,
    })
}

#[test]
fn basis_enumeration_matches_a_filter_of_all_words() {
    for (m, n) in [(1, 2), (2, 2), (2, 3)] {
        let s = spec(m, n);
        for deg in [None, Some(0), Some(1)] {
            let mut want: Vec<Word> = all_words(s, 4)
                .into_iter()
                .filter(|w| irreducible_by_definition(s, w) && deg.is_none_or(|d| degree(w) == d))
                .collect();
            want.sort();
            assert_eq!(enumerate_irreducible(s, 4, deg).unwrap(), want, "({m},{n}) {deg:?}");
        }
    }
}

#[test]
fn degree_zero_length_two_counts() {
    // 12 xy words and 12 yx words plus the empty word at (2,2)
    let words = enumerate_irreducible(spec(2, 2), 2, Some(0)).unwrap();
    assert_eq!(words.len(), 25);
    assert_eq!(words.iter().filter(|w| w.first().is_some_and(|l| l.is_x())).count(), 12);
}

#[test]
fn s_is_confluent_and_ordered() {
    for m in 1..=3 {
        for n in 1..=3 {
            let sys = build_system_s::<Rational>(spec(m, n));
            assert!(check_compatible_order(&sys).is_ok());
            let rep = check_diamond(&sys).unwrap();
            assert!(rep.is_confluent());
            assert_eq!(rep.total(), (2 * m * n) as usize);
        }
    }
}

#[test]
fn rule_one_example() {
    let alg = Leavitt::<Rational>::new(spec(2, 3));
    let p = Polynomial::parse("x(1,3) y(3,1)").unwrap();
    assert_eq!(alg.nf(&p).unwrap().to_string(), "1 - 1*x(1,1) y(1,1) - 1*x(1,2) y(2,1)");
}

#[test]
fn peak_of_the_smallest_algebra() {
    // in L(1,1) the overlap x y x reduces to x both ways
    let alg = Leavitt::<Rational>::new(spec(1, 1));
    let w = Word::parse("x(1,1) y(1,1) x(1,1)").unwrap();
    assert_eq!(alg.nf_word(&w).unwrap(), Polynomial::parse("x(1,1)").unwrap());
}

#[test]
fn finite_field_backend_agrees_on_small_coefficients() {
    let q = Leavitt::<Rational>::new(spec(2, 2));
    let f = Leavitt::<F32003>::new(spec(2, 2));
    let src = "x(1,2) y(2,2) x(2,2) y(2,1) - 2*x(1,2) y(2,1)";
    let a = q.nf(&Polynomial::parse(src).unwrap()).unwrap();
    let b = f.nf(&Polynomial::parse(src).unwrap()).unwrap();
    assert_eq!(Polynomial::<F32003>::parse(&a.to_string()).unwrap(), b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms(a in poly_strategy(2, 2), b in poly_strategy(2, 2), c in poly_strategy(2, 2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&Polynomial::one()), a);
    }

    #[test]
    fn text_round_trip(a in poly_strategy(2, 3)) {
        prop_assert_eq!(Polynomial::<Rational>::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn normal_forms_are_irreducible_and_stable(a in poly_strategy(2, 2)) {
        let s = spec(2, 2);
        let alg = Leavitt::<Rational>::new(s);
        let nf = alg.nf(&a).unwrap();
        for w in nf.support() {
            prop_assert!(irreducible_by_definition(s, w));
        }
        prop_assert_eq!(alg.nf(&nf).unwrap(), nf.clone());
        let right = Reducer::new(alg.system()).with_strategy(Order::Rightmost).normal_form(&a).unwrap();
        prop_assert_eq!(right, nf);
    }

    #[test]
    fn reduction_respects_products(a in poly_strategy(2, 3), b in poly_strategy(2, 3)) {
        let alg = Leavitt::<Rational>::new(spec(2, 3));
        let lhs = alg.nf(&a.mul(&b)).unwrap();
        let rhs = alg.nf(&alg.nf(&a).unwrap().mul(&alg.nf(&b).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_preserves_degree(w in word_strategy(3, 2, 6)) {
        let alg = Leavitt::<Rational>::new(spec(3, 2));
        let d = degree(&w);
        for u in alg.nf_word(&w).unwrap().support() {
            prop_assert_eq!(degree(u), d);
        }
    }
}
