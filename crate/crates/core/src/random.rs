//! Seeded random PL maps and representations for tests and experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plmap::PlMap;
use crate::rational::{pow2, rat, Rational};
use crate::rep::Representation;
use crate::word::MarkedGroup;

/// Deterministic generator used across the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, max_denom: i64) -> Rational {
    let d = rng.gen_range(1..=max_denom);
    rat(rng.gen_range(-bound * d..=bound * d), d)
}

fn positive_slope(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(1..=8), rng.gen_range(1..=4))
}

fn distinct_sorted<R: Rng>(rng: &mut R, k: usize, mut draw: impl FnMut(&mut R) -> Rational) -> Vec<Rational> {
    let mut xs: Vec<Rational> = (0..k).map(|_| draw(rng)).collect();
    xs.sort();
    xs.dedup();
    xs
}

fn through_slopes(xs: &[Rational], y0: Rational, slopes: &[Rational], ends: (Rational, Rational)) -> PlMap {
    let mut points = vec![(xs[0].clone(), y0)];
    for (w, s) in xs.windows(2).zip(slopes) {
        let y = &points.last().expect("nonempty").1 + s * (&w[1] - &w[0]);
        points.push((w[1].clone(), y));
    }
    PlMap::from_points(&points, ends.0, ends.1).expect("positive slopes give an increasing map")
}

/// Random PL homeomorphism with up to `max_breaks` breakpoints in `[-4, 4]`.
pub fn random_plmap(rng: &mut impl Rng, max_breaks: usize) -> PlMap {
    let k = rng.gen_range(1..=max_breaks.max(1));
    let xs = distinct_sorted(rng, k, |r| small_rational(r, 4, 6));
    let slopes: Vec<Rational> = (0..xs.len()).map(|_| positive_slope(rng)).collect();
    let y0 = small_rational(rng, 4, 6);
    let ends = (positive_slope(rng), positive_slope(rng));
    through_slopes(&xs, y0, &slopes, ends)
}

/// Random map with dyadic breakpoints, power-of-two slopes and dyadic
/// intercepts.
pub fn random_dyadic_plmap<R: Rng>(rng: &mut R, max_breaks: usize) -> PlMap {
    let exps = [-2i64, -1, 0, 1, 2];
    let slope = |r: &mut R| pow2(*exps.choose(r).expect("nonempty"));
    let k = rng.gen_range(1..=max_breaks.max(1));
    let xs = distinct_sorted(rng, k, |r| rat(r.gen_range(-32..=32), 8));
    let slopes: Vec<Rational> = (0..xs.len()).map(|_| slope(rng)).collect();
    let y0 = rat(rng.gen_range(-32..=32), 8);
    let ends = (slope(rng), slope(rng));
    through_slopes(&xs, y0, &slopes, ends)
}

/// Random action of the free group `⟨a, b⟩` in which some generator moves 0.
pub fn random_f2_rep(seed: u64) -> Representation {
    let mut r = rng(seed);
    loop {
        let a = random_plmap(&mut r, 4);
        let b = random_plmap(&mut r, 4);
        let zero = Rational::default();
        if a.evaluate(&zero) != zero || b.evaluate(&zero) != zero {
            return Representation::new(MarkedGroup::free(&["a", "b"]), vec![a, b]).expect("free group");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::is_power_of_two;

    #[test]
    fn seeded_generation_is_deterministic() {
        assert_eq!(random_f2_rep(3), random_f2_rep(3));
        let mut a = rng(11);
        let mut b = rng(11);
        assert_eq!(random_plmap(&mut a, 5), random_plmap(&mut b, 5));
    }

    #[test]
    fn dyadic_maps_are_dyadic() {
        let mut r = rng(5);
        for _ in 0..50 {
            let f = random_dyadic_plmap(&mut r, 6);
            assert!(f.is_dyadic());
            assert!(f.pieces().iter().all(|p| is_power_of_two(&p.slope)));
        }
    }
}
