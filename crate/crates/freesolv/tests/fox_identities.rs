//! Derivative identities checked against quadratic oracles and random
//! words.

mod common;

use common::*;
use freesolv::{fox_abelian, wp_metabelian, AbelianRingElement, AbelianVector, Word};

#[test]
fn single_pass_matches_naive_expansion() {
    let mut rng = rng(0x5eed_0001);
    for _ in 0..2_000 {
        let rank = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=50);
        let w = random_word(&mut rng, rank, len);
        assert_eq!(fox_entries(&w), naive_fox_entries(&w), "word {w}");
    }
}

use rand::Rng;

#[test]
fn grid_figure_derivatives_against_oracle() {
    // The caption of the grid figure misprints the third term of the
    // x2-derivative; the expansion formula gives x1^2 x2^2.
    let w = Word::parse("bababABBBA", 2).unwrap();
    let oracle = naive_fox_entries(&w);
    assert_eq!(fox_entries(&w), oracle);
    assert_eq!(oracle[&(2, vec![2, 2])], 1);
    assert!(!oracle.contains_key(&(2, vec![0, 4])));
}

#[test]
fn fundamental_identity() {
    // w - 1 = sum_i dw/dx_i (x_i - 1) as elements of Z A_r.
    let mut rng = rng(0x5eed_0002);
    for _ in 0..1_000 {
        let rank = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=40);
        let w = random_word(&mut rng, rank, len);
        let map = fox_abelian(&w);
        let lhs = AbelianRingElement::from_word(&w)
            .sub(&AbelianRingElement::monomial(AbelianVector::zero(rank), 1));
        let mut rhs = AbelianRingElement::zero(rank);
        for gen in 1..=rank {
            rhs = rhs.add(&map.derivative(gen).unwrap().times_generator_minus_one(gen));
        }
        assert_eq!(lhs, rhs, "word {w}");
    }
}

#[test]
fn product_rule() {
    // d(uv) = d(u) + u * d(v): the map of a product is the map of u plus
    // the map of v with every key shifted by u's abelianization.
    let mut rng = rng(0x5eed_0003);
    for _ in 0..1_000 {
        let rank = rng.gen_range(1..=3);
        let len = rng.gen_range(0..=30);
        let u = random_word(&mut rng, rank, len);
        let len = rng.gen_range(0..=30);
        let v = random_word(&mut rng, rank, len);
        let shift = u.abelianize().into_coords();
        let mut expected = naive_fox_entries(&u);
        for ((gen, delta), coeff) in naive_fox_entries(&v) {
            let shifted: Vec<i64> = delta.iter().zip(&shift).map(|(a, b)| a + b).collect();
            *expected.entry((gen, shifted)).or_insert(0) += coeff;
        }
        expected.retain(|_, c| *c != 0);
        assert_eq!(fox_entries(&u.concat(&v).unwrap()), expected);
    }
}

#[test]
fn inversion_cancels() {
    let mut rng = rng(0x5eed_0004);
    for _ in 0..500 {
        let rank = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=40);
        let w = random_word(&mut rng, rank, len);
        assert!(fox_abelian(&w.concat(&w.inverse()).unwrap()).is_empty());
    }
}

#[test]
fn reduction_invariance() {
    let mut rng = rng(0x5eed_0005);
    for _ in 0..500 {
        let rank = rng.gen_range(1..=4);
        let len = rng.gen_range(0..=40);
        let w = random_word(&mut rng, rank, len);
        assert_eq!(fox_abelian(&w), fox_abelian(&w.free_reduce()));
    }
}

#[test]
fn conjugation_invariance() {
    let mut rng = rng(0x5eed_0006);
    for _ in 0..500 {
        let rank = rng.gen_range(2..=4);
        let len = rng.gen_range(0..=20);
        let w = random_word(&mut rng, rank, len);
        let len = rng.gen_range(0..=20);
        let t = random_word(&mut rng, rank, len);
        let conjugate = w.conjugated_by(&t).unwrap();
        assert_eq!(wp_metabelian(&conjugate), wp_metabelian(&w));
    }
}
