//! Finite-scale analytic procedures: invariant and projectively invariant
//! step measures, Conrad homomorphisms, pointed semiconjugacy search and the
//! almost-centralizing test.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::plmap::{PlMap, Window};
use crate::rational::{int, rat, Rational};
use crate::rep::Representation;
use crate::word::{enumerate_with, Word};

/// Radon measure with a positive piecewise-constant density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepMeasure {
    breakpoints: Vec<Rational>,
    densities: Vec<Rational>,
}

impl StepMeasure {
    /// `densities[i]` applies on `[breakpoints[i-1], breakpoints[i])`, with
    /// the first and last densities on the unbounded ends.
    pub fn new(breakpoints: Vec<Rational>, densities: Vec<Rational>) -> Result<Self> {
        if densities.len() != breakpoints.len() + 1 {
            return Err(Error::Precondition(format!(
                "{} densities for {} breakpoints",
                densities.len(),
                breakpoints.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("density breakpoints must increase".into()));
        }
        if densities.iter().any(|d| !d.is_positive()) {
            return Err(Error::Precondition("densities must be positive".into()));
        }
        Ok(StepMeasure { breakpoints, densities })
    }

    pub fn lebesgue() -> Self {
        StepMeasure {
            breakpoints: vec![],
            densities: vec![Rational::one()],
        }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    /// Density on `[x, x + ε)`.
    pub fn density_at(&self, x: &Rational) -> &Rational {
        &self.densities[self.breakpoints.partition_point(|b| b <= x)]
    }

    /// `ν[a, b)` for `a <= b`.
    pub fn measure(&self, a: &Rational, b: &Rational) -> Rational {
        assert!(a <= b, "measure of a reversed interval");
        let mut nodes = vec![a.clone()];
        nodes.extend(self.breakpoints.iter().filter(|x| a < *x && *x < b).cloned());
        nodes.push(b.clone());
        nodes
            .windows(2)
            .map(|w| self.density_at(&w[0]) * (&w[1] - &w[0]))
            .fold(Rational::zero(), |s, t| s + t)
    }

    /// `ν[x, y)` if `x <= y`, else `-ν[y, x)`.
    pub fn signed_measure(&self, x: &Rational, y: &Rational) -> Rational {
        if x <= y {
            self.measure(x, y)
        } else {
            -self.measure(y, x)
        }
    }

    /// The constant `κ` with `ν(g(A)) = κ ν(A)` for `A ⊆ window`, checked
    /// exactly as `density(g(x))·g'(x) = κ·density(x)` on the common
    /// refinement of all breakpoints. `None` when no such constant exists;
    /// the error carries the first offending piece.
    pub fn scaling_under(&self, g: &PlMap, window: &Window) -> std::result::Result<Rational, (Rational, Rational)> {
        let inside = |x: &&Rational| window.left() < *x && *x < window.right();
        let mut nodes: Vec<Rational> = vec![window.left().clone(), window.right().clone()];
        nodes.extend(g.breakpoints().iter().filter(inside).cloned());
        nodes.extend(self.breakpoints.iter().filter(inside).cloned());
        nodes.extend(
            self.breakpoints
                .iter()
                .map(|b| g.preimage(b))
                .collect::<Vec<_>>()
                .iter()
                .filter(inside)
                .cloned(),
        );
        nodes.sort();
        nodes.dedup();
        let two = int(2);
        let mut kappa: Option<Rational> = None;
        for w in nodes.windows(2) {
            let mid = (&w[0] + &w[1]) / &two;
            let ratio = self.density_at(&g.evaluate(&mid)) * &g.piece_at(&mid).slope / self.density_at(&mid);
            match &kappa {
                None => kappa = Some(ratio),
                Some(k) if *k == ratio => {}
                Some(_) => return Err((w[0].clone(), w[1].clone())),
            }
        }
        Ok(kappa.expect("window has at least one piece"))
    }
}

fn not_invariant(name: String, (a, b): (Rational, Rational)) -> Error {
    Error::NotInvariant {
        generator: name,
        left: a.to_string(),
        right: b.to_string(),
    }
}

/// Every generator preserves `ν` on the window.
pub fn check_invariance(rep: &Representation, nu: &StepMeasure, window: &Window) -> Result<()> {
    for (name, g) in rep.group().names().iter().zip(rep.generators()) {
        match nu.scaling_under(g, window) {
            Ok(k) if k.is_one() => {}
            Ok(_) => {
                return Err(not_invariant(
                    name.clone(),
                    (window.left().clone(), window.right().clone()),
                ))
            }
            Err(piece) => return Err(not_invariant(name.clone(), piece)),
        }
    }
    Ok(())
}

/// Every generator scales `ν` by a constant on the window.
pub fn check_projective_invariance(rep: &Representation, nu: &StepMeasure, window: &Window) -> Result<Vec<Rational>> {
    rep.group()
        .names()
        .iter()
        .zip(rep.generators())
        .map(|(name, g)| nu.scaling_under(g, window).map_err(|p| not_invariant(name.clone(), p)))
        .collect()
}

/// `τ_ν(w)` read at `x = 0`, after checking invariance on the window and
/// re-checking independence of the basepoint at the window's ends and
/// midpoint.
pub fn conrad_tau(rep: &Representation, nu: &StepMeasure, w: &Word, window: &Window) -> Result<Rational> {
    check_invariance(rep, nu, window)?;
    let tau = affine_tau(rep, nu, w)?;
    for x in [window.left().clone(), window.midpoint(), window.right().clone()] {
        let other = nu.signed_measure(&x, &rep.act(w, &x)?);
        if other != tau {
            return Err(Error::NotInvariant {
                generator: rep.group().format_word(w),
                left: x.to_string(),
                right: rep.act(w, &x)?.to_string(),
            });
        }
    }
    Ok(tau)
}

/// `τ_ν(w) = ±ν` of the interval between `0` and `φ(w)·0`, without any
/// invariance check (the affine cocycle).
pub fn affine_tau(rep: &Representation, nu: &StepMeasure, w: &Word) -> Result<Rational> {
    let zero = Rational::zero();
    Ok(nu.signed_measure(&zero, &rep.act(w, &zero)?))
}

/// `κ(w)` with `ν(φ(w)(A)) = κ(w) ν(A)`, computed from the word's own map
/// after checking that every generator preserves the projective class.
pub fn scaling_cocycle(rep: &Representation, nu: &StepMeasure, w: &Word, window: &Window) -> Result<Rational> {
    check_projective_invariance(rep, nu, window)?;
    nu.scaling_under(&rep.evaluate_word(w)?, window)
        .map_err(|p| not_invariant(rep.group().format_word(w), p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiconjugacyVerdict {
    /// Monotone pairing of orbit points, sorted, ties collapsed.
    Pass { depth: usize, table: Vec<(Rational, Rational)> },
    /// `g` and `h` are ordered differently (or tied on one side only) by the
    /// two actions.
    Violation { g: Word, h: Word, depth: usize },
}

/// Orbit points `φ(g)·b` over reduced words of length `<= depth`, with
/// their dense order ranks. Words whose trajectory leaves the window have no
/// point.
#[derive(Clone, Debug)]
pub struct PointedOrbit {
    rank: usize,
    depth: usize,
    words: Vec<Word>,
    points: Vec<Option<Rational>>,
    order: Vec<Option<usize>>,
}

impl PointedOrbit {
    pub fn new(rep: &Representation, basepoint: &Rational, depth: usize, window: Option<&Window>) -> Self {
        let inside = |x: &Rational| window.is_none_or(|w| w.contains(x));
        let seed = inside(basepoint).then(|| basepoint.clone());
        let (words, points): (Vec<Word>, Vec<Option<Rational>>) =
            enumerate_with(rep.group().rank(), depth, seed, |l, p| {
                p.as_ref()
                    .map(|p| rep.letter_map(l).evaluate(p))
                    .filter(|q| inside(q))
            })
            .into_iter()
            .unzip();
        let mut sorted: Vec<&Rational> = points.iter().flatten().collect();
        sorted.sort();
        sorted.dedup();
        let order = points
            .iter()
            .map(|p| p.as_ref().map(|p| sorted.binary_search(&p).expect("present")))
            .collect();
        PointedOrbit {
            rank: rep.group().rank(),
            depth,
            words,
            points,
            order,
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn points(&self) -> &[Option<Rational>] {
        &self.points
    }
}

/// Checks that `φ1(g)·b1 ↦ φ2(g)·b2` is order-compatible on the words
/// tabled on both sides: strict order to strict order, ties to ties.
pub fn compare_pointed_orbits(a: &PointedOrbit, b: &PointedOrbit) -> Result<SemiconjugacyVerdict> {
    if a.rank != b.rank || a.depth != b.depth {
        return Err(Error::GroupMismatch);
    }
    let mut rows: Vec<(usize, usize, usize)> = a
        .order
        .iter()
        .zip(&b.order)
        .enumerate()
        .filter_map(|(i, (p, q))| Some((((*p)?), (*q)?, i)))
        .collect();
    rows.sort_unstable();
    for pair in rows.windows(2) {
        let (p1, q1, i) = pair[0];
        let (p2, q2, j) = pair[1];
        let bad = if p1 == p2 { q1 != q2 } else { q1 >= q2 };
        if bad {
            return Ok(SemiconjugacyVerdict::Violation {
                g: a.words[i].clone(),
                h: a.words[j].clone(),
                depth: a.depth,
            });
        }
    }
    let mut table: Vec<(Rational, Rational)> = rows
        .iter()
        .map(|&(_, _, i)| {
            (
                a.points[i].clone().expect("tabled"),
                b.points[i].clone().expect("tabled"),
            )
        })
        .collect();
    table.dedup();
    Ok(SemiconjugacyVerdict::Pass { depth: a.depth, table })
}

/// Pairs `φ1(g)·b1 ↦ φ2(g)·b2` over reduced words of length `<= depth`
/// whose trajectories stay inside `window` on both sides, and checks that
/// the pairing is order-compatible.
pub fn semiconjugacy_search(
    rep1: &Representation,
    rep2: &Representation,
    depth: usize,
    window: Option<&Window>,
    basepoints: (&Rational, &Rational),
) -> Result<SemiconjugacyVerdict> {
    if rep1.group().rank() != rep2.group().rank() {
        return Err(Error::GroupMismatch);
    }
    compare_pointed_orbits(
        &PointedOrbit::new(rep1, basepoints.0, depth, window),
        &PointedOrbit::new(rep2, basepoints.1, depth, window),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizingRow {
    pub k: usize,
    /// `max_w sup_W |f_k φ(w) f_k⁻¹ - φ(w)|`.
    pub d: Rational,
    /// `sup_W |f_k - id|`.
    pub e: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizingVerdict {
    /// `d_k = 0` from index `from` on while `e_k` stays positive and does
    /// not decrease.
    NonSmoothnessWitness { from: usize },
    /// `d_k = 0` from index `from` on and `e_k` decreases strictly (or
    /// vanishes) over that range.
    ConsistentWithC { from: usize },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizingReport {
    pub rows: Vec<CentralizingRow>,
    pub verdict: CentralizingVerdict,
}

impl CentralizingReport {
    pub fn verdict_line(&self) -> String {
        match self.verdict {
            CentralizingVerdict::NonSmoothnessWitness { from } => format!(
                "d_k = 0 from index {from} on while e_k stays bounded away from 0: non-smoothness witness"
            ),
            CentralizingVerdict::ConsistentWithC { from } => {
                format!("d_k = 0 from index {from} on and e_k decreasing: consistent with convergence to the identity")
            }
            CentralizingVerdict::Inconclusive => "inconclusive over the tested range".to_string(),
        }
    }
}

/// Runs the almost-centralizing test on a finite list of conjugators.
/// Verdicts need a zero tail of at least two indices.
pub fn almost_centralizing_test(
    rep: &Representation,
    conjugators: &[PlMap],
    words: &[Word],
    window: &Window,
) -> Result<CentralizingReport> {
    let mut rows = Vec::with_capacity(conjugators.len());
    for (k, f) in conjugators.iter().enumerate() {
        let d = rep.conjugate(f).rep_distance(rep, words, window)?;
        let e = f.sup_distance(&PlMap::identity(), window);
        rows.push(CentralizingRow { k, d, e });
    }
    let from = rows
        .iter()
        .rposition(|r| !r.d.is_zero())
        .map_or(0, |i| i + 1);
    let tail = &rows[from.min(rows.len())..];
    let verdict = if tail.len() < 2 {
        CentralizingVerdict::Inconclusive
    } else if tail.iter().all(|r| r.e.is_zero()) || tail.windows(2).all(|w| w[1].e < w[0].e) {
        CentralizingVerdict::ConsistentWithC { from }
    } else if tail.iter().all(|r| r.e.is_positive()) && tail.windows(2).all(|w| w[1].e >= w[0].e) {
        CentralizingVerdict::NonSmoothnessWitness { from }
    } else {
        CentralizingVerdict::Inconclusive
    };
    Ok(CentralizingReport { rows, verdict })
}

/// `T_{1/k}` for `k = 1..=count`.
pub fn shrinking_translations(count: usize) -> Vec<PlMap> {
    (1..=count as i64).map(|k| PlMap::translation(rat(1, k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::bs_affine;
    use crate::word::MarkedGroup;

    fn translations() -> Representation {
        Representation::new(
            MarkedGroup::free(&["a", "b"]),
            vec![PlMap::translation(int(1)), PlMap::translation(rat(3, 2))],
        )
        .unwrap()
    }

    fn win() -> Window {
        Window::new(int(-4), int(4)).unwrap()
    }

    #[test]
    fn step_measure_basics() {
        let nu = StepMeasure::new(vec![int(0)], vec![int(1), int(3)]).unwrap();
        assert_eq!(nu.measure(&int(-1), &int(2)), int(7));
        assert_eq!(nu.signed_measure(&int(2), &int(-1)), int(-7));
        assert!(StepMeasure::new(vec![], vec![int(0)]).is_err());
    }

    #[test]
    fn conrad_tau_of_translations() {
        let rep = translations();
        let nu = StepMeasure::lebesgue();
        let g = rep.group();
        assert_eq!(conrad_tau(&rep, &nu, &g.parse_word("a").unwrap(), &win()).unwrap(), int(1));
        assert_eq!(conrad_tau(&rep, &nu, &g.parse_word("b").unwrap(), &win()).unwrap(), rat(3, 2));
        assert_eq!(conrad_tau(&rep, &nu, &g.parse_word("a b").unwrap(), &win()).unwrap(), rat(5, 2));
    }

    #[test]
    fn affine_model_scalings() {
        let rep = bs_affine(2, 3).unwrap();
        let nu = StepMeasure::lebesgue();
        let a = rep.group().parse_word("a").unwrap();
        let b = rep.group().parse_word("b").unwrap();
        let err = conrad_tau(&rep, &nu, &a, &win()).unwrap_err();
        assert!(matches!(err, Error::NotInvariant { ref generator, .. } if generator == "a"));
        assert_eq!(scaling_cocycle(&rep, &nu, &a, &win()).unwrap(), rat(3, 2));
        assert_eq!(scaling_cocycle(&rep, &nu, &b, &win()).unwrap(), int(1));
        let w1 = rep.group().parse_word("a b^2").unwrap();
        let w2 = rep.group().parse_word("b a^-1 b").unwrap();
        let k1 = scaling_cocycle(&rep, &nu, &w1, &win()).unwrap();
        assert_eq!(
            affine_tau(&rep, &nu, &w1.mul(&w2)).unwrap(),
            affine_tau(&rep, &nu, &w1).unwrap() + k1 * affine_tau(&rep, &nu, &w2).unwrap()
        );
        assert!(scaling_cocycle(&translations(), &nu, &Word::generator(0), &win()).unwrap().is_one());
    }

    #[test]
    fn non_projective_measure_is_reported() {
        let rep = bs_affine(2, 3).unwrap();
        let nu = StepMeasure::new(vec![int(1)], vec![int(1), int(2)]).unwrap();
        assert!(matches!(
            scaling_cocycle(&rep, &nu, &Word::generator(1), &win()),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn semiconjugacy_of_conjugates() {
        let rep = crate::random::random_f2_rep(4);
        let zero = Rational::zero();
        assert!(matches!(
            semiconjugacy_search(&rep, &rep, 4, None, (&zero, &zero)).unwrap(),
            SemiconjugacyVerdict::Pass { .. }
        ));
        let f = PlMap::from_points(&[(int(-1), int(-2)), (int(0), int(0)), (int(2), int(3))], int(1), rat(1, 2)).unwrap();
        let conj = rep.conjugate(&f);
        assert!(matches!(
            semiconjugacy_search(&rep, &conj, 4, None, (&zero, &zero)).unwrap(),
            SemiconjugacyVerdict::Pass { .. }
        ));
        let other = crate::random::random_f2_rep(5);
        assert!(matches!(
            semiconjugacy_search(&rep, &other, 4, None, (&zero, &zero)).unwrap(),
            SemiconjugacyVerdict::Violation { .. }
        ));
    }

    #[test]
    fn centralizing_verdicts() {
        let rep = Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::translation(int(1))]).unwrap();
        let words = vec![Word::generator(0)];
        let ids = vec![PlMap::identity(); 4];
        let r = almost_centralizing_test(&rep, &ids, &words, &win()).unwrap();
        assert!(r.rows.iter().all(|row| row.d.is_zero() && row.e.is_zero()));
        assert_eq!(r.verdict, CentralizingVerdict::ConsistentWithC { from: 0 });
        let r = almost_centralizing_test(&rep, &shrinking_translations(5), &words, &win()).unwrap();
        assert!(r.rows.iter().all(|row| row.d.is_zero()));
        assert_eq!(r.rows[3].e, rat(1, 4));
        assert_eq!(r.verdict, CentralizingVerdict::ConsistentWithC { from: 0 });
        let growing: Vec<PlMap> = (0..4).map(|k| PlMap::translation(int(1 << k))).collect();
        let r = almost_centralizing_test(&rep, &growing, &words, &win()).unwrap();
        assert_eq!(r.verdict, CentralizingVerdict::NonSmoothnessWitness { from: 0 });
    }
}
