//! Crossing combinatorics of bounded open intervals, prelaminations and
//! depth-bounded wandering-interval certificates.

use std::fmt;

use crate::error::{Error, Result};
use crate::plmap::{FixedComponent, PlMap, Window};
use crate::rational::Rational;
use crate::rep::Representation;
use crate::word::{enumerate_with, Word};

/// Open bounded interval `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafInterval {
    a: Rational,
    b: Rational,
}

impl LeafInterval {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a >= b {
            return Err(Error::EmptyWindow {
                left: a.to_string(),
                right: b.to_string(),
            });
        }
        Ok(LeafInterval { a, b })
    }

    pub fn left(&self) -> &Rational {
        &self.a
    }

    pub fn right(&self) -> &Rational {
        &self.b
    }

    pub fn closure(&self) -> Window {
        Window::new(self.a.clone(), self.b.clone()).expect("a < b")
    }

    pub fn contains_interval(&self, other: &LeafInterval) -> bool {
        self.a <= other.a && other.b <= self.b
    }

    pub fn meets(&self, other: &LeafInterval) -> bool {
        (&self.a).max(&other.a) < (&self.b).min(&other.b)
    }

    /// Image under an increasing homeomorphism.
    pub fn image(&self, f: &PlMap) -> LeafInterval {
        LeafInterval {
            a: f.evaluate(&self.a),
            b: f.evaluate(&self.b),
        }
    }
}

impl fmt::Display for LeafInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `I ∩ J ≠ ∅` and neither contains the other.
pub fn crossed(i: &LeafInterval, j: &LeafInterval) -> bool {
    i.meets(j) && !i.contains_interval(j) && !j.contains_interval(i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrelaminationVerdict {
    Pass,
    Fail(LeafInterval, LeafInterval),
}

/// Checks that no two leaves cross. On failure returns the first crossing
/// pair in the lexicographic order of `(first leaf, second leaf)` after
/// sorting the leaves by endpoints.
pub fn is_prelamination(leaves: &[LeafInterval]) -> PrelaminationVerdict {
    let sorted = export(leaves);
    for (k, i) in sorted.iter().enumerate() {
        for j in &sorted[k + 1..] {
            if crossed(i, j) {
                return PrelaminationVerdict::Fail(i.clone(), j.clone());
            }
        }
    }
    PrelaminationVerdict::Pass
}

/// Leaves sorted by `(a, b)` without repetitions.
pub fn export(leaves: &[LeafInterval]) -> Vec<LeafInterval> {
    let mut sorted = leaves.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted
}

/// Whether a single leaf contains the given window: the finite-scale stand-in
/// for the covering condition.
pub fn covers_window(leaves: &[LeafInterval], window: &Window) -> bool {
    leaves
        .iter()
        .any(|l| &l.a < window.left() && window.right() < &l.b)
}

/// Images `φ(w)·I` for every reduced word of length `<= max_len`.
fn images(rep: &Representation, interval: &LeafInterval, max_len: usize) -> Vec<(Word, LeafInterval)> {
    enumerate_with(rep.group().rank(), max_len, interval.clone(), |l, i| i.image(rep.letter_map(l)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WanderingVerdict {
    /// Every word of length `<= depth` fixes `I` or moves it off itself.
    Pass { depth: usize, stabilizers: Vec<Word> },
    /// First word (length-lexicographic) whose image overlaps `I` without
    /// equalling it.
    Fail { word: Word, depth: usize },
}

pub fn wandering_certificate(rep: &Representation, interval: &LeafInterval, max_len: usize) -> WanderingVerdict {
    let mut stabilizers = Vec::new();
    for (w, image) in images(rep, interval, max_len) {
        if &image == interval {
            stabilizers.push(w);
        } else if image.meets(interval) {
            return WanderingVerdict::Fail { word: w, depth: max_len };
        }
    }
    WanderingVerdict::Pass {
        depth: max_len,
        stabilizers,
    }
}

/// First word whose image crosses `I`, if any.
pub fn first_crossing_image(rep: &Representation, interval: &LeafInterval, max_len: usize) -> Option<Word> {
    images(rep, interval, max_len)
        .into_iter()
        .find(|(_, image)| crossed(image, interval))
        .map(|(w, _)| w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibleVerdict {
    /// The interval is not wandering at this depth.
    NotWandering { word: Word, depth: usize },
    /// No non-trivial word stabilizes the interval at this depth.
    NoStabilizers { depth: usize },
    /// The stabilizers found share a fixed point inside the interval.
    CommonFixedPoint { depth: usize, point: Rational },
    /// The stabilizers found have no common fixed point in the interval.
    Irreducible { depth: usize, stabilizers: Vec<Word> },
}

pub fn irreducible_wandering_check(
    rep: &Representation,
    interval: &LeafInterval,
    max_len: usize,
) -> Result<IrreducibleVerdict> {
    let stabilizers = match wandering_certificate(rep, interval, max_len) {
        WanderingVerdict::Fail { word, depth } => return Ok(IrreducibleVerdict::NotWandering { word, depth }),
        WanderingVerdict::Pass { stabilizers, .. } => stabilizers,
    };
    let stabilizers: Vec<Word> = stabilizers.into_iter().filter(|w| !w.is_identity()).collect();
    if stabilizers.is_empty() {
        return Ok(IrreducibleVerdict::NoStabilizers { depth: max_len });
    }
    let window = interval.closure();
    let mut common: Vec<(Rational, Rational)> = vec![(interval.a.clone(), interval.b.clone())];
    for w in &stabilizers {
        let fixed: Vec<(Rational, Rational)> = rep
            .evaluate_word(w)?
            .fixed_set(&window)
            .fixed
            .into_iter()
            .map(|c| match c {
                FixedComponent::Point(p) => (p.clone(), p),
                FixedComponent::Interval(a, b) => (a, b),
            })
            .collect();
        common = intersect_components(&common, &fixed);
    }
    let point = common.into_iter().find_map(|(l, r)| {
        let p = if l < r { (&l + &r) / Rational::from_integer(2.into()) } else { l };
        (interval.a < p && p < interval.b).then_some(p)
    });
    Ok(match point {
        Some(point) => IrreducibleVerdict::CommonFixedPoint { depth: max_len, point },
        None => IrreducibleVerdict::Irreducible {
            depth: max_len,
            stabilizers,
        },
    })
}

fn intersect_components(xs: &[(Rational, Rational)], ys: &[(Rational, Rational)]) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for (a, b) in xs {
        for (c, d) in ys {
            let l = a.max(c);
            let r = b.min(d);
            if l <= r {
                out.push((l.clone(), r.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::word::MarkedGroup;

    fn leaf(a: Rational, b: Rational) -> LeafInterval {
        LeafInterval::new(a, b).unwrap()
    }

    fn translation_rep() -> Representation {
        Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::translation(int(1))]).unwrap()
    }

    #[test]
    fn crossing_cases() {
        assert!(crossed(&leaf(int(0), int(2)), &leaf(int(1), int(3))));
        assert!(!crossed(&leaf(int(0), int(3)), &leaf(int(1), int(2))));
        assert!(!crossed(&leaf(int(0), int(1)), &leaf(int(2), int(3))));
        assert!(!crossed(&leaf(int(0), int(1)), &leaf(int(1), int(2))));
        assert!(LeafInterval::new(int(1), int(1)).is_err());
    }

    #[test]
    fn prelamination_verdicts() {
        let chain: Vec<LeafInterval> = (1..6).map(|k| leaf(int(-k), int(k))).collect();
        assert_eq!(is_prelamination(&chain), PrelaminationVerdict::Pass);
        assert!(covers_window(&chain, &Window::symmetric(int(4)).unwrap()));
        assert!(!covers_window(&chain, &Window::symmetric(int(5)).unwrap()));
        let bad = [leaf(int(1), int(3)), leaf(int(0), int(2))];
        assert_eq!(
            is_prelamination(&bad),
            PrelaminationVerdict::Fail(leaf(int(0), int(2)), leaf(int(1), int(3)))
        );
    }

    #[test]
    fn wandering_under_translation() {
        let rep = translation_rep();
        assert!(matches!(
            wandering_certificate(&rep, &leaf(int(0), rat(1, 2)), 6),
            WanderingVerdict::Pass { depth: 6, .. }
        ));
        assert_eq!(
            wandering_certificate(&rep, &leaf(int(0), int(2)), 6),
            WanderingVerdict::Fail {
                word: Word::generator(0),
                depth: 6
            }
        );
        assert_eq!(
            irreducible_wandering_check(&rep, &leaf(int(0), rat(1, 2)), 4).unwrap(),
            IrreducibleVerdict::NoStabilizers { depth: 4 }
        );
    }

    #[test]
    fn identity_rep_has_common_fixed_points() {
        let rep = Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::identity()]).unwrap();
        let i = leaf(int(0), int(1));
        assert!(matches!(wandering_certificate(&rep, &i, 3), WanderingVerdict::Pass { .. }));
        assert_eq!(
            irreducible_wandering_check(&rep, &i, 3).unwrap(),
            IrreducibleVerdict::CommonFixedPoint {
                depth: 3,
                point: rat(1, 2)
            }
        );
    }
}
