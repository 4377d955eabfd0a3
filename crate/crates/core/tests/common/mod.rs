#![allow(dead_code)]

use lineact_core::random::{random_dyadic_plmap, random_plmap, rng};
use lineact_core::rational::rat;
use lineact_core::{PlMap, Rational, Word};
use proptest::prelude::*;

pub fn pl_map() -> impl Strategy<Value = PlMap> {
    (any::<u64>(), 1usize..6).prop_map(|(seed, k)| random_plmap(&mut rng(seed), k))
}

pub fn dyadic_map() -> impl Strategy<Value = PlMap> {
    (any::<u64>(), 1usize..6).prop_map(|(seed, k)| random_dyadic_plmap(&mut rng(seed), k))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-64i64..=64, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

pub fn word(rank: usize, max_syllables: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, -3i64..=3), 0..=max_syllables).prop_map(Word::from_syllables)
}
