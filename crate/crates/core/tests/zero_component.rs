//! Degree-zero word combinatorics against brute-force definitions.

use leavitt_core::leavitt::{degree, enumerate_irreducible, letter_degree, LeavittSpec};
use leavitt_core::zero::{
    block_params, block_size, completion, completion_preimage, enumerate_bxy_block, is_admissible, is_cxy, is_ordered,
    is_prime, is_prime_by_type, prime_factorize, shapes_up_to, transformation, word_type, BlockShape,
};
use leavitt_core::{Letter, Word};

fn spec(m: u32, n: u32) -> LeavittSpec {
    LeavittSpec::new(m, n).unwrap()
}

fn prefix_degrees(w: &[Letter]) -> Vec<i64> {
    w.iter()
        .scan(0i64, |d, l| {
            *d += letter_degree(l);
            Some(*d)
        })
        .collect()
}

fn degree_zero_words(s: LeavittSpec, len: usize) -> Vec<Word> {
    enumerate_irreducible(s, len, Some(0)).unwrap().into_iter().filter(|w| !w.is_empty()).collect()
}

#[test]
fn factorization_round_trip_and_primality() {
    for (m, n) in [(2, 2), (2, 3), (1, 2)] {
        for w in degree_zero_words(spec(m, n), 6) {
            let f = prime_factorize(&w).unwrap();
            assert_eq!(f.concat(), w);
            for p in &f.factors {
                assert!(is_prime(p), "{p}");
                let pd = prefix_degrees(p);
                assert!(pd[..pd.len() - 1].iter().all(|&d| d != 0));
            }
        }
    }
}

#[test]
fn prime_type_predicate_matches_prefix_degrees() {
    for w in degree_zero_words(spec(2, 2), 6) {
        if !w[0].is_x() {
            continue;
        }
        let t = word_type(&w).unwrap();
        let pd = prefix_degrees(&w);
        let prime = pd[..pd.len() - 1].iter().all(|&d| d != 0);
        assert_eq!(is_prime_by_type(&t.0), prime, "{w}");
    }
}

#[test]
fn block_sizes_match_enumeration() {
    let s = spec(2, 2);
    for shape in shapes_up_to(4) {
        let words = enumerate_bxy_block(s, &shape).unwrap();
        assert_eq!(words.len() as u128, block_size(s, &shape), "{shape:?}");
        for w in &words {
            assert_eq!(block_params(w).unwrap().0, shape);
            assert!(s.is_irreducible(w));
        }
    }
}

#[test]
fn blocks_partition_the_xy_products() {
    // every irreducible product of prime xy words of length ≤ 6 sits in exactly one block
    let s = spec(2, 2);
    let mut by_blocks: Vec<Word> = shapes_up_to(4).iter().flat_map(|sh| enumerate_bxy_block(s, sh).unwrap()).collect();
    by_blocks.retain(|w| w.len() <= 6);
    by_blocks.sort();
    let mut direct: Vec<Word> = degree_zero_words(s, 6)
        .into_iter()
        .filter(|w| prime_factorize(w).unwrap().factors.iter().all(|p| p[0].is_x()))
        .collect();
    direct.sort();
    assert_eq!(by_blocks, direct);
}

#[test]
fn completions_are_ordered_and_invert() {
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let s = spec(m, n);
        for shape in shapes_up_to(4) {
            for w in enumerate_bxy_block(s, &shape).unwrap().into_iter().take(4000) {
                let c = completion(s, &w).unwrap();
                assert!(is_ordered(&c), "{w} -> {c}");
                assert_eq!(degree(&c), 0);
                assert!(is_cxy(s, &c));
                assert_eq!(completion_preimage(s, &c), Some(w));
            }
        }
    }
}

#[test]
fn non_completions_have_no_preimage() {
    let s = spec(2, 2);
    // x22 y22 is reducible, so it is not a completion of anything
    let w = Word::parse("x(2,2) y(2,2)").unwrap();
    assert_eq!(completion_preimage(s, &w), None);
    let w = Word::parse("x(1,1) y(1,1) x(1,1)").unwrap();
    assert!(!is_cxy(s, &w));
}

#[test]
fn transformations_are_admissible() {
    for (m, n) in [(2, 2), (2, 3)] {
        let s = spec(m, n);
        for shape in shapes_up_to(3) {
            for w in enumerate_bxy_block(s, &shape).unwrap() {
                let c = completion(s, &w).unwrap();
                let t = transformation(s, &c).unwrap();
                assert!(is_admissible(&t), "{c} -> {t}");
                assert_eq!(degree(&t), 0);
            }
        }
    }
}

#[test]
fn shape_parse_and_sum() {
    let b = BlockShape::parse("3,1,2").unwrap();
    assert_eq!(b.sum(), 6);
    assert!(!shapes_up_to(3).contains(&b));
    assert_eq!(shapes_up_to(3).len(), 7);
}
