//! Piecewise-linear orientation-preserving homeomorphisms of the line.
//!
//! A [`PlMap`] is stored as a strictly increasing list of breakpoints
//! `b_1 < ... < b_k` and `k + 1` affine pieces; piece `i` is in force on
//! `[b_i, b_{i+1}]`, the first and last pieces extend to `-∞` and `+∞`. Every
//! constructor normalizes (adjacent equal pieces are merged), so structural
//! equality coincides with equality as functions.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, is_dyadic, is_power_of_two, parse_rational, Rational};

const RECORD_TAG: &str = "plmap v1";

/// A closed window `[left, right]` with `left < right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    left: Rational,
    right: Rational,
}

impl Window {
    pub fn new(left: Rational, right: Rational) -> Result<Self> {
        if left >= right {
            return Err(Error::EmptyWindow {
                left: fmt_rational(&left),
                right: fmt_rational(&right),
            });
        }
        Ok(Window { left, right })
    }

    /// `[-r, r]`.
    pub fn symmetric(r: Rational) -> Result<Self> {
        Window::new(-r.clone(), r)
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.left <= x && x <= &self.right
    }

    pub fn width(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn midpoint(&self) -> Rational {
        (&self.left + &self.right) / int(2)
    }

    pub fn expanded(&self, margin: &Rational) -> Window {
        Window {
            left: &self.left - margin,
            right: &self.right + margin,
        }
    }

    pub fn shifted(&self, t: &Rational) -> Window {
        Window {
            left: &self.left + t,
            right: &self.right + t,
        }
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &Window) -> Window {
        Window {
            left: self.left.clone().min(other.left.clone()),
            right: self.right.clone().max(other.right.clone()),
        }
    }

    pub fn intersect(&self, other: &Window) -> Option<Window> {
        Window::new(
            self.left.clone().max(other.left.clone()),
            self.right.clone().min(other.right.clone()),
        )
        .ok()
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

/// The affine map `x ↦ slope·x + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Affine { slope, intercept }
    }

    pub fn identity() -> Self {
        Affine::new(Rational::one(), Rational::zero())
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Affine) -> Affine {
        Affine::new(
            &self.slope * &inner.slope,
            &self.slope * &inner.intercept + &self.intercept,
        )
    }

    pub fn inverse(&self) -> Affine {
        let slope = self.slope.recip();
        let intercept = -&self.intercept * &slope;
        Affine::new(slope, intercept)
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_one() && self.intercept.is_zero()
    }

    /// `(1-s)·self + s·other`.
    fn blend(&self, other: &Affine, s: &Rational) -> Affine {
        let r = Rational::one() - s;
        Affine::new(
            &r * &self.slope + s * &other.slope,
            &r * &self.intercept + s * &other.intercept,
        )
    }
}

/// Maximal closed piece of a fixed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedComponent {
    Point(Rational),
    Interval(Rational, Rational),
}

impl FixedComponent {
    fn bounds(&self) -> (&Rational, &Rational) {
        match self {
            FixedComponent::Point(p) => (p, p),
            FixedComponent::Interval(a, b) => (a, b),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let (a, b) = self.bounds();
        a <= x && x <= b
    }
}

/// A maximal subinterval of the window on which `f - id` has constant nonzero
/// sign. Endpoints are either fixed points or window edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovedComponent {
    pub left: Rational,
    pub right: Rational,
    /// Sign of `f(x) - x` on the component.
    pub sign: Ordering,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSet {
    pub window: Window,
    pub fixed: Vec<FixedComponent>,
    pub moved: Vec<MovedComponent>,
}

impl FixedSet {
    pub fn is_fixed(&self, x: &Rational) -> bool {
        self.fixed.iter().any(|c| c.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.is_empty()
    }
}

/// Piecewise-linear orientation-preserving homeomorphism of ℝ in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlMap {
    breakpoints: Vec<Rational>,
    pieces: Vec<Affine>,
}

impl PlMap {
    /// Checked constructor: strictly increasing breakpoints, positive slopes,
    /// continuity at every breakpoint.
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Affine>) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidMap(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                pieces.len()
            )));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMap(format!(
                "breakpoints not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        if let Some(p) = pieces.iter().find(|p| !p.slope.is_positive()) {
            return Err(Error::InvalidMap(format!("non-positive slope {}", p.slope)));
        }
        for (i, b) in breakpoints.iter().enumerate() {
            let (l, r) = (pieces[i].apply(b), pieces[i + 1].apply(b));
            if l != r {
                return Err(Error::InvalidMap(format!(
                    "discontinuity at {b}: {l} != {r}"
                )));
            }
        }
        Ok(PlMap::normalized(breakpoints, pieces))
    }

    fn normalized(breakpoints: Vec<Rational>, pieces: Vec<Affine>) -> Self {
        let mut bs = Vec::with_capacity(breakpoints.len());
        let mut ps: Vec<Affine> = Vec::with_capacity(pieces.len());
        let mut pieces = pieces.into_iter();
        ps.push(pieces.next().expect("at least one piece"));
        for (b, p) in breakpoints.into_iter().zip(pieces) {
            if ps.last() != Some(&p) {
                bs.push(b);
                ps.push(p);
            }
        }
        PlMap {
            breakpoints: bs,
            pieces: ps,
        }
    }

    pub fn identity() -> Self {
        PlMap {
            breakpoints: vec![],
            pieces: vec![Affine::identity()],
        }
    }

    pub fn affine(slope: Rational, intercept: Rational) -> Result<Self> {
        PlMap::new(vec![], vec![Affine::new(slope, intercept)])
    }

    /// `T_t: x ↦ x + t`.
    pub fn translation(t: Rational) -> Self {
        PlMap {
            breakpoints: vec![],
            pieces: vec![Affine::new(Rational::one(), t)],
        }
    }

    /// Interpolates through `points` (strictly increasing in both coordinates)
    /// and continues affinely with the given end slopes.
    pub fn from_points(
        points: &[(Rational, Rational)],
        left_slope: Rational,
        right_slope: Rational,
    ) -> Result<Self> {
        let (first, last) = match (points.first(), points.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::InvalidMap("no interpolation points".into())),
        };
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::InvalidMap(format!(
                    "interpolation points not strictly increasing: ({}, {}) then ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        let through = |slope: Rational, (x, y): &(Rational, Rational)| {
            let intercept = y - &slope * x;
            Affine::new(slope, intercept)
        };
        let mut pieces = vec![through(left_slope, first)];
        for w in points.windows(2) {
            let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            pieces.push(through(slope, &w[0]));
        }
        pieces.push(through(right_slope, last));
        let breakpoints = points.iter().map(|(x, _)| x.clone()).collect();
        PlMap::new(breakpoints, pieces)
    }

    /// Builds a map from candidate breakpoints and a rule giving the affine
    /// piece on each complementary region (queried at an interior sample).
    /// Caller guarantees the result is continuous.
    fn assemble(mut candidates: Vec<Rational>, piece_at: impl Fn(&Rational) -> Affine) -> Self {
        candidates.sort();
        candidates.dedup();
        let two = int(2);
        let mut pieces = Vec::with_capacity(candidates.len() + 1);
        match (candidates.first(), candidates.last()) {
            (Some(first), Some(last)) => {
                pieces.push(piece_at(&(first - Rational::one())));
                for w in candidates.windows(2) {
                    pieces.push(piece_at(&((&w[0] + &w[1]) / &two)));
                }
                pieces.push(piece_at(&(last + Rational::one())));
            }
            _ => pieces.push(piece_at(&Rational::zero())),
        }
        PlMap::normalized(candidates, pieces)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }

    /// The affine piece in force at `x` (the left one at a breakpoint, which
    /// agrees there by continuity).
    pub fn piece_at(&self, x: &Rational) -> &Affine {
        let idx = self.breakpoints.partition_point(|b| b < x);
        &self.pieces[idx]
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.piece_at(x).apply(x)
    }

    /// `f^{-1}(y)`, without building the inverse.
    pub fn preimage(&self, y: &Rational) -> Rational {
        let idx = self
            .breakpoints
            .iter()
            .enumerate()
            .take_while(|(i, b)| &self.pieces[*i].apply(b) < y)
            .count();
        self.pieces[idx].inverse().apply(y)
    }

    pub fn is_identity(&self) -> bool {
        self.breakpoints.is_empty() && self.pieces[0].is_identity()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlMap) -> PlMap {
        if self.is_identity() {
            return inner.clone();
        }
        if inner.is_identity() {
            return self.clone();
        }
        let inverse = inner.invert();
        let mut candidates = inner.breakpoints.clone();
        candidates.extend(self.breakpoints.iter().map(|b| inverse.evaluate(b)));
        PlMap::assemble(candidates, |s| {
            let g = inner.piece_at(s);
            self.piece_at(&g.apply(s)).after(g)
        })
    }

    pub fn invert(&self) -> PlMap {
        let breakpoints = self
            .breakpoints
            .iter()
            .zip(&self.pieces)
            .map(|(b, p)| p.apply(b))
            .collect();
        let pieces = self.pieces.iter().map(Affine::inverse).collect();
        PlMap {
            breakpoints,
            pieces,
        }
    }

    /// `f^k` for any integer `k`.
    pub fn power(&self, k: i64) -> PlMap {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut acc = PlMap::identity();
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// `T_t ∘ f ∘ T_{-t}`.
    pub fn translate_conjugate(&self, t: &Rational) -> PlMap {
        let breakpoints = self.breakpoints.iter().map(|b| b + t).collect();
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let intercept = &p.intercept + t - &p.slope * t;
                Affine::new(p.slope.clone(), intercept)
            })
            .collect();
        PlMap {
            breakpoints,
            pieces,
        }
    }

    /// `h ∘ f ∘ h^{-1}`.
    pub fn conjugate_by(&self, h: &PlMap) -> PlMap {
        h.compose(self).compose(&h.invert())
    }

    /// Window endpoints together with the breakpoints strictly inside it.
    fn window_nodes(&self, window: &Window) -> Vec<Rational> {
        let mut nodes = vec![window.left.clone()];
        nodes.extend(
            self.breakpoints
                .iter()
                .filter(|b| &window.left < *b && *b < &window.right)
                .cloned(),
        );
        nodes.push(window.right.clone());
        nodes
    }

    /// Exact fixed set of `f` inside the window, with the sign of `f - id` on
    /// each complementary component.
    pub fn fixed_set(&self, window: &Window) -> FixedSet {
        let nodes = self.window_nodes(window);
        let two = int(2);
        let mut raw: Vec<(Rational, Rational)> = Vec::new();
        for w in nodes.windows(2) {
            let mid = (&w[0] + &w[1]) / &two;
            let p = self.piece_at(&mid);
            if p.is_identity() {
                raw.push((w[0].clone(), w[1].clone()));
            } else if !p.slope.is_one() {
                let q = &p.intercept / (Rational::one() - &p.slope);
                if w[0] <= q && q <= w[1] {
                    raw.push((q.clone(), q));
                }
            }
        }
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (a, b) in raw {
            match merged.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        let fixed: Vec<FixedComponent> = merged
            .iter()
            .map(|(a, b)| {
                if a == b {
                    FixedComponent::Point(a.clone())
                } else {
                    FixedComponent::Interval(a.clone(), b.clone())
                }
            })
            .collect();
        let mut moved = Vec::new();
        let mut cursor = window.left.clone();
        let mut push_gap = |a: &Rational, b: &Rational| {
            if a < b {
                let mid = (a + b) / &two;
                let sign = self.evaluate(&mid).cmp(&mid);
                moved.push(MovedComponent {
                    left: a.clone(),
                    right: b.clone(),
                    sign,
                });
            }
        };
        for (a, b) in &merged {
            push_gap(&cursor, a);
            cursor = b.clone();
        }
        push_gap(&cursor, &window.right);
        FixedSet {
            window: window.clone(),
            fixed,
            moved,
        }
    }

    /// Connected components of the support `{f ≠ id}` inside the window.
    pub fn support_components(&self, window: &Window) -> Vec<(Rational, Rational)> {
        self.fixed_set(window)
            .moved
            .into_iter()
            .map(|c| (c.left, c.right))
            .collect()
    }

    /// Exact `sup |f - g|` over the window; the supremum of a PL function is
    /// attained at a breakpoint or at an endpoint.
    pub fn sup_distance(&self, other: &PlMap, window: &Window) -> Rational {
        let mut nodes = self.window_nodes(window);
        nodes.extend(
            other
                .breakpoints
                .iter()
                .filter(|b| window.contains(b))
                .cloned(),
        );
        nodes
            .iter()
            .map(|x| (self.evaluate(x) - other.evaluate(x)).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn agrees_on(&self, other: &PlMap, window: &Window) -> bool {
        self.sup_distance(other, window).is_zero()
    }

    /// Minimum of `f(x) - x` over the window.
    pub fn min_displacement(&self, window: &Window) -> Rational {
        self.window_nodes(window)
            .iter()
            .map(|x| self.evaluate(x) - x)
            .min()
            .expect("window has two endpoints")
    }

    /// Dyadic breakpoints, power-of-two slopes and dyadic intercepts.
    pub fn is_dyadic(&self) -> bool {
        self.breakpoints.iter().all(is_dyadic)
            && self
                .pieces
                .iter()
                .all(|p| is_power_of_two(&p.slope) && is_dyadic(&p.intercept))
    }

    /// Pointwise `(1-s)·f + s·g`; increasing for `s ∈ [0, 1]`.
    pub fn convex_combination(&self, other: &PlMap, s: &Rational) -> Result<PlMap> {
        if s.is_negative() || s > &Rational::one() {
            return Err(Error::Precondition(format!("weight {s} outside [0, 1]")));
        }
        let mut candidates = self.breakpoints.clone();
        candidates.extend(other.breakpoints.iter().cloned());
        Ok(PlMap::assemble(candidates, |x| {
            self.piece_at(x).blend(other.piece_at(x), s)
        }))
    }

    /// The map equal to `local` on each `[a, b]` and to the identity
    /// elsewhere. Intervals must be pairwise disjoint (touching endpoints
    /// allowed) and each local map must fix its interval's endpoints.
    pub fn patch(patches: &[(Rational, Rational, PlMap)]) -> Result<PlMap> {
        let mut sorted: Vec<&(Rational, Rational, PlMap)> = patches.iter().collect();
        sorted.sort_by(|x, y| x.0.cmp(&y.0));
        for w in sorted.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(Error::InvalidMap(format!(
                    "overlapping patches [{}, {}] and [{}, {}]",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        let mut candidates = Vec::new();
        for (a, b, f) in &sorted {
            if a >= b {
                return Err(Error::InvalidMap(format!("empty patch [{a}, {b}]")));
            }
            if &f.evaluate(a) != a || &f.evaluate(b) != b {
                return Err(Error::InvalidMap(format!(
                    "patch map does not fix the endpoints of [{a}, {b}]"
                )));
            }
            candidates.push(a.clone());
            candidates.push(b.clone());
            candidates.extend(f.breakpoints.iter().filter(|x| a < *x && *x < b).cloned());
        }
        let identity = Affine::identity();
        Ok(PlMap::assemble(candidates, |s| {
            let idx = sorted.partition_point(|(_, b, _)| b <= s);
            match sorted.get(idx) {
                Some((a, b, f)) if a < s && s < b => f.piece_at(s).clone(),
                _ => identity.clone(),
            }
        }))
    }

    /// Serializes to the versioned text record.
    pub fn to_record(&self) -> String {
        let mut out = String::from(RECORD_TAG);
        out.push('\n');
        out.push_str("breakpoints");
        for b in &self.breakpoints {
            out.push(' ');
            out.push_str(&fmt_rational(b));
        }
        out.push('\n');
        for p in &self.pieces {
            out.push_str(&format!(
                "piece {} {}\n",
                fmt_rational(&p.slope),
                fmt_rational(&p.intercept)
            ));
        }
        out.push_str("end\n");
        out
    }

    /// Parses one record; see [`PlMap::to_record`].
    pub fn from_record(text: &str) -> Result<PlMap> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let map = PlMap::parse_lines(&mut lines)?;
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after plmap record".into()));
        }
        Ok(map)
    }

    /// Reads one record from a line iterator, leaving following lines unread.
    pub(crate) fn parse_lines<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<PlMap> {
        let mut next = || {
            lines
                .next()
                .ok_or_else(|| Error::Parse("unexpected end of plmap record".into()))
        };
        let tag = next()?;
        if tag != RECORD_TAG {
            return Err(Error::Parse(format!("expected {RECORD_TAG:?}, found {tag:?}")));
        }
        let bp_line = next()?;
        let mut words = bp_line.split_whitespace();
        if words.next() != Some("breakpoints") {
            return Err(Error::Parse(format!("expected breakpoints line, found {bp_line:?}")));
        }
        let breakpoints = words.map(parse_rational).collect::<Result<Vec<_>>>()?;
        let mut pieces = Vec::new();
        loop {
            let line = next()?;
            if line == "end" {
                break;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["piece", s, c] => pieces.push(Affine::new(parse_rational(s)?, parse_rational(c)?)),
                _ => return Err(Error::Parse(format!("bad piece line {line:?}"))),
            }
        }
        PlMap::new(breakpoints, pieces)
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let piece = |p: &Affine| format!("{}x{:+}", p.slope, p.intercept);
        write!(f, "{}", piece(&self.pieces[0]))?;
        for (b, p) in self.breakpoints.iter().zip(&self.pieces[1..]) {
            write!(f, " |{b}| {}", piece(p))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn affine(s: Rational, c: Rational) -> PlMap {
        PlMap::affine(s, c).unwrap()
    }

    fn unit() -> Window {
        Window::new(int(0), int(1)).unwrap()
    }

    #[test]
    fn evaluate_affine_and_identity() {
        let f = affine(int(2), int(0));
        assert_eq!(f.evaluate(&rat(3, 2)), int(3));
        let q = rat(-7, 13);
        assert_eq!(PlMap::identity().evaluate(&q), q);
    }

    #[test]
    fn compose_affine() {
        let f = affine(int(2), int(0));
        let g = PlMap::translation(int(1));
        assert_eq!(f.compose(&g), affine(int(2), int(2)));
    }

    #[test]
    fn invert_affine() {
        let f = affine(int(2), int(2));
        assert_eq!(f.invert(), affine(rat(1, 2), int(-1)));
        assert!(f.compose(&f.invert()).is_identity());
        assert!(PlMap::identity().invert().is_identity());
    }

    #[test]
    fn rejects_bad_maps() {
        let one = Affine::identity();
        let two = Affine::new(int(2), int(0));
        assert!(PlMap::new(vec![int(1)], vec![one.clone(), two.clone()]).is_err());
        assert!(PlMap::new(vec![int(0)], vec![one.clone(), two.clone()]).is_ok());
        assert!(PlMap::new(vec![], vec![Affine::new(int(-1), int(0))]).is_err());
        assert!(PlMap::new(vec![int(1), int(0)], vec![one.clone(), one.clone(), one]).is_err());
    }

    #[test]
    fn normalization_merges_collinear_pieces() {
        let p = Affine::new(int(2), int(0));
        let f = PlMap::new(vec![int(0), int(1)], vec![p.clone(), p.clone(), p]).unwrap();
        assert!(f.breakpoints().is_empty());
        assert_eq!(f, affine(int(2), int(0)));
    }

    #[test]
    fn fixed_set_basic_cases() {
        let fs = PlMap::identity().fixed_set(&unit());
        assert_eq!(fs.fixed, vec![FixedComponent::Interval(int(0), int(1))]);
        assert!(fs.moved.is_empty());

        let fs = PlMap::translation(int(1)).fixed_set(&unit());
        assert!(fs.fixed.is_empty());
        assert_eq!(fs.moved.len(), 1);
        assert_eq!(fs.moved[0].sign, Ordering::Greater);
    }

    #[test]
    fn fixed_set_mixed() {
        // identity left of 0, 2x on [0, 1], x + 1 right of 1
        let f = PlMap::from_points(&[(int(0), int(0)), (int(1), int(2))], int(1), int(1)).unwrap();
        let w = Window::new(int(-2), int(3)).unwrap();
        let fs = f.fixed_set(&w);
        assert_eq!(fs.fixed, vec![FixedComponent::Interval(int(-2), int(0))]);
        assert_eq!(
            fs.moved,
            vec![MovedComponent {
                left: int(0),
                right: int(3),
                sign: Ordering::Greater
            }]
        );
    }

    #[test]
    fn translate_conjugate_direct() {
        let f = affine(int(2), int(0));
        assert_eq!(f.translate_conjugate(&int(1)), affine(int(2), int(-1)));
        assert_eq!(f.translate_conjugate(&int(0)), f);
    }

    #[test]
    fn sup_distance_cases() {
        let f = PlMap::translation(int(1));
        assert_eq!(f.sup_distance(&PlMap::identity(), &unit()), int(1));
        assert_eq!(f.sup_distance(&f, &unit()), int(0));
        let g = PlMap::from_points(&[(int(0), int(0)), (rat(1, 2), int(1)), (int(1), int(1) + rat(1, 4))], int(1), int(1))
            .unwrap();
        assert_eq!(g.sup_distance(&PlMap::identity(), &unit()), rat(1, 2));
    }

    #[test]
    fn patch_requires_fixed_endpoints() {
        let local = PlMap::from_points(&[(int(0), int(0)), (rat(1, 4), rat(3, 8)), (rat(1, 2), rat(1, 2))], int(1), int(1))
            .unwrap();
        let patched = PlMap::patch(&[(int(0), rat(1, 2), local.clone())]).unwrap();
        assert_eq!(patched, local);
        assert!(PlMap::patch(&[(int(0), int(1), PlMap::translation(int(1)))]).is_err());
        assert!(PlMap::patch(&[
            (int(0), int(2), PlMap::identity()),
            (int(1), int(3), PlMap::identity())
        ])
        .is_err());
    }

    #[test]
    fn power_and_preimage() {
        let f = PlMap::from_points(&[(int(0), int(0)), (int(1), int(3))], int(1), int(1)).unwrap();
        assert_eq!(f.power(2).evaluate(&rat(1, 3)), int(3));
        assert_eq!(f.power(-1), f.invert());
        for y in [int(-5), int(0), rat(3, 2), int(3), int(9)] {
            assert_eq!(f.evaluate(&f.preimage(&y)), y);
        }
    }

    #[test]
    fn record_round_trip() {
        let f = PlMap::from_points(&[(rat(-1, 3), int(0)), (int(2), rat(7, 5))], rat(1, 2), int(3)).unwrap();
        let text = f.to_record();
        let g = PlMap::from_record(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.to_record(), text);
        assert!(PlMap::from_record("plmap v2\nbreakpoints\npiece 1 0\nend\n").is_err());
        assert!(PlMap::from_record("plmap v1\nbreakpoints 0\npiece 1 0\npiece 2 1\nend\n").is_err());
    }

    #[test]
    fn dyadic_closure_example() {
        let f = PlMap::from_points(
            &[(int(0), int(0)), (rat(1, 2), rat(1, 4)), (rat(3, 4), rat(1, 2)), (int(1), int(1))],
            int(1),
            int(1),
        )
            .unwrap();
        assert!(f.is_dyadic());
        assert!(f.invert().is_dyadic());
        assert!(f.compose(&f).is_dyadic());
        let g = affine(int(3), int(0));
        assert!(!g.is_dyadic());
    }
}
