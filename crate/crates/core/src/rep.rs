//! Representations of marked groups by PL homeomorphisms: word evaluation,
//! orbits, the conjugation action and finite-depth dynamical witnesses.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::plmap::{PlMap, Window};
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::word::{enumerate_with, Letter, MarkedGroup, Word};

const RECORD_TAG: &str = "rep v1";

/// An assignment of PL maps to the generators of a marked group.
///
/// Generators that are only known on a window (periodic maps truncated to
/// finitely many pieces, realized actions) carry that window as
/// `exact_window`; relators are then checked on the part of the window where
/// every intermediate point stays inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: MarkedGroup,
    generators: Vec<PlMap>,
    inverses: Vec<PlMap>,
    exact_window: Option<Window>,
}

impl Representation {
    pub fn new(group: MarkedGroup, generators: Vec<PlMap>) -> Result<Self> {
        Representation::build(group, generators, None)
    }

    /// A representation whose generators are faithful only on `window`.
    pub fn windowed(group: MarkedGroup, generators: Vec<PlMap>, window: Window) -> Result<Self> {
        Representation::build(group, generators, Some(window))
    }

    fn build(group: MarkedGroup, generators: Vec<PlMap>, exact_window: Option<Window>) -> Result<Self> {
        if generators.len() != group.rank() {
            return Err(Error::Precondition(format!(
                "{} generator maps for a group of rank {}",
                generators.len(),
                group.rank()
            )));
        }
        let inverses = generators.iter().map(PlMap::invert).collect();
        let rep = Representation {
            group,
            generators,
            inverses,
            exact_window,
        };
        rep.check_relators()?;
        Ok(rep)
    }

    fn check_relators(&self) -> Result<()> {
        for r in self.group.relators() {
            let map = self.evaluate_word(r)?;
            let ok = match &self.exact_window {
                None => map.is_identity(),
                Some(w) => {
                    let region = self.valid_region(r, w).ok_or_else(|| {
                        Error::Precondition(format!(
                            "window {w} too small to check relator {}",
                            self.group.format_word(r)
                        ))
                    })?;
                    map.agrees_on(&PlMap::identity(), &region)
                }
            };
            if !ok {
                return Err(Error::RelatorViolated {
                    relator: self.group.format_word(r),
                });
            }
        }
        Ok(())
    }

    /// Points of `w` whose whole trajectory under the letters of `word`
    /// (read right to left) stays in `w`.
    pub fn valid_region(&self, word: &Word, w: &Window) -> Option<Window> {
        let mut region = w.clone();
        let mut acc = PlMap::identity();
        for letter in word.letters().into_iter().rev() {
            acc = self.letter_map(letter).compose(&acc);
            let pre = Window::new(acc.preimage(w.left()), acc.preimage(w.right())).ok()?;
            region = region.intersect(&pre)?;
        }
        Some(region)
    }

    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn generators(&self) -> &[PlMap] {
        &self.generators
    }

    pub fn exact_window(&self) -> Option<&Window> {
        self.exact_window.as_ref()
    }

    pub fn letter_map(&self, letter: Letter) -> &PlMap {
        if letter.inverse {
            &self.inverses[letter.generator]
        } else {
            &self.generators[letter.generator]
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g >= self.generators.len() => Err(Error::UnknownGenerator(g)),
            _ => Ok(()),
        }
    }

    pub fn evaluate_word(&self, w: &Word) -> Result<PlMap> {
        self.check_word(w)?;
        let mut acc = PlMap::identity();
        for &(g, e) in w.syllables() {
            let base = self.letter_map(Letter::new(g, e < 0));
            for _ in 0..e.unsigned_abs() {
                acc = acc.compose(base);
            }
        }
        Ok(acc)
    }

    /// `φ(w)·x`, applying letters right to left.
    pub fn act(&self, w: &Word, x: &Rational) -> Result<Rational> {
        self.check_word(w)?;
        Ok(w
            .letters()
            .into_iter()
            .rev()
            .fold(x.clone(), |p, l| self.letter_map(l).evaluate(&p)))
    }

    /// `(f.φ)(g) = f ∘ φ(g) ∘ f⁻¹`.
    pub fn conjugate(&self, f: &PlMap) -> Representation {
        let f_inv = f.invert();
        let generators: Vec<PlMap> = self
            .generators
            .iter()
            .map(|g| f.compose(g).compose(&f_inv))
            .collect();
        let inverses = generators.iter().map(PlMap::invert).collect();
        let exact_window = self.exact_window.as_ref().map(|w| {
            Window::new(f.evaluate(w.left()), f.evaluate(w.right())).expect("f is increasing")
        });
        Representation {
            group: self.group.clone(),
            generators,
            inverses,
            exact_window,
        }
    }

    /// Conjugation by the translation `T_t`.
    pub fn translate_conjugate(&self, t: &Rational) -> Representation {
        let generators: Vec<PlMap> = self.generators.iter().map(|g| g.translate_conjugate(t)).collect();
        let inverses = generators.iter().map(PlMap::invert).collect();
        Representation {
            group: self.group.clone(),
            generators,
            inverses,
            exact_window: self.exact_window.as_ref().map(|w| w.shifted(t)),
        }
    }

    /// `(word, φ(word)·x)` for every reduced word of length `<= max_len`, in
    /// length-lexicographic order.
    pub fn orbit_table(&self, x: &Rational, max_len: usize) -> Vec<(Word, Rational)> {
        enumerate_with(self.group.rank(), max_len, x.clone(), |l, p| {
            self.letter_map(l).evaluate(p)
        })
    }

    /// `{φ(w)·x : |w| <= max_len}`.
    pub fn orbit(&self, x: &Rational, max_len: usize) -> BTreeSet<Rational> {
        let mut seen: BTreeSet<Rational> = BTreeSet::new();
        seen.insert(x.clone());
        let mut frontier = vec![x.clone()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for l in Letter::all(self.group.rank()) {
                    let q = self.letter_map(l).evaluate(p);
                    if seen.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    /// Largest gap between consecutive points of `(orbit ∩ window) ∪ ∂window`:
    /// an ε-density certificate at this depth, never a proof of minimality.
    pub fn max_orbit_gap(&self, x: &Rational, max_len: usize, window: &Window) -> Rational {
        let mut pts: Vec<Rational> = self
            .orbit(x, max_len)
            .into_iter()
            .filter(|p| window.contains(p))
            .collect();
        pts.push(window.left().clone());
        pts.push(window.right().clone());
        pts.sort();
        pts.dedup();
        pts.windows(2)
            .map(|w| &w[1] - &w[0])
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Max over `words` of the sup distance of their images on `window`.
    pub fn rep_distance(&self, other: &Representation, words: &[Word], window: &Window) -> Result<Rational> {
        if self.group.rank() != other.group.rank() {
            return Err(Error::GroupMismatch);
        }
        let mut best = Rational::zero();
        for w in words {
            let d = self
                .evaluate_word(w)?
                .sup_distance(&other.evaluate_word(w)?, window);
            if d > best {
                best = d;
            }
        }
        Ok(best)
    }

    /// First words (length-lexicographic) pushing 0 beyond the right and left
    /// edges of `window`. `None` is inconclusive at this depth.
    pub fn witness_irreducible(&self, window: &Window, max_len: usize) -> Option<(Word, Word)> {
        let table = self.orbit_table(&Rational::zero(), max_len);
        let right = table.iter().find(|(_, p)| p > window.right())?;
        let left = table.iter().find(|(_, p)| p < window.left())?;
        Some((right.0.clone(), left.0.clone()))
    }

    /// First word mapping `source` strictly inside `target`.
    pub fn witness_proximal(&self, source: &Window, target: &Window, max_len: usize) -> Option<Word> {
        let seed = (source.left().clone(), source.right().clone());
        enumerate_with(self.group.rank(), max_len, seed, |l, (p, q)| {
            let f = self.letter_map(l);
            (f.evaluate(p), f.evaluate(q))
        })
        .into_iter()
        .find(|(_, (p, q))| target.left() < p && q < target.right())
        .map(|(w, _)| w)
    }

    /// Text record: marked-group header followed by one plmap record per
    /// generator.
    pub fn to_record(&self) -> String {
        let mut out = format!("{RECORD_TAG}\n");
        out.push_str("generators");
        for n in self.group.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        for r in self.group.relators() {
            out.push_str(&format!("relator {}\n", self.group.format_word(r)));
        }
        if let Some(w) = &self.exact_window {
            out.push_str(&format!("window {} {}\n", fmt_rational(w.left()), fmt_rational(w.right())));
        }
        for (name, g) in self.group.names().iter().zip(&self.generators) {
            out.push_str(&format!("generator {name}\n"));
            out.push_str(&g.to_record());
        }
        out.push_str("end-rep\n");
        out
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let tag = lines.next().unwrap_or_default();
        if tag != RECORD_TAG {
            return Err(Error::Parse(format!("expected {RECORD_TAG:?}, found {tag:?}")));
        }
        let header = lines.next().unwrap_or_default();
        let mut fields = header.split_whitespace();
        if fields.next() != Some("generators") {
            return Err(Error::Parse(format!("expected generators line, found {header:?}")));
        }
        let names: Vec<String> = fields.map(str::to_string).collect();
        let free = MarkedGroup::new(names.clone(), vec![])?;
        let mut relators = Vec::new();
        let mut window = None;
        let mut maps: Vec<Option<PlMap>> = vec![None; names.len()];
        loop {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing end-rep".into()))?;
            if line == "end-rep" {
                break;
            }
            if let Some(rest) = line.strip_prefix("relator") {
                relators.push(free.parse_word(rest)?);
            } else if let Some(rest) = line.strip_prefix("window") {
                let ends: Vec<&str> = rest.split_whitespace().collect();
                if ends.len() != 2 {
                    return Err(Error::Parse(format!("bad window line {line:?}")));
                }
                window = Some(Window::new(parse_rational(ends[0])?, parse_rational(ends[1])?)?);
            } else if let Some(name) = line.strip_prefix("generator ") {
                let idx = free
                    .index_of(name.trim())
                    .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                let map = PlMap::parse_lines(&mut lines)?;
                maps[idx] = Some(map);
            } else {
                return Err(Error::Parse(format!("unexpected line {line:?}")));
            }
        }
        let generators = maps
            .into_iter()
            .zip(&names)
            .map(|(m, n)| m.ok_or_else(|| Error::Parse(format!("no map for generator {n}"))))
            .collect::<Result<Vec<_>>>()?;
        let group = MarkedGroup::new(names, relators)?;
        Representation::build(group, generators, window)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn translations(a: Rational, b: Rational) -> Representation {
        Representation::new(
            MarkedGroup::free(&["a", "b"]),
            vec![PlMap::translation(a), PlMap::translation(b)],
        )
        .unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let r = translations(int(1), rat(3, 2));
        assert!(r.evaluate_word(&Word::identity()).unwrap().is_identity());
        assert!(r.evaluate_word(&Word::generator(5)).is_err());
    }

    #[test]
    fn orbit_of_z2_translations() {
        let r = translations(int(1), rat(3, 2));
        assert_eq!(r.orbit(&int(0), 0).len(), 1);
        let got: Vec<Rational> = r.orbit(&int(0), 2).into_iter().collect();
        let mut expected: Vec<Rational> = Vec::new();
        // brute force over all letter sequences of length <= 2
        let steps = [int(1), int(-1), rat(3, 2), rat(-3, 2)];
        expected.push(int(0));
        for a in &steps {
            expected.push(a.clone());
            for b in &steps {
                expected.push(a + b);
            }
        }
        expected.sort();
        expected.dedup();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 13);
        assert_eq!(got.first(), Some(&int(-3)));
    }

    #[test]
    fn translation_witnesses() {
        let r = Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::translation(int(1))]).unwrap();
        let k = 4;
        let w = Window::symmetric(int(k - 1)).unwrap();
        let (g, h) = r.witness_irreducible(&w, k as usize).unwrap();
        assert_eq!(g, Word::from_syllables([(0, k)]));
        assert_eq!(h, Word::from_syllables([(0, -k)]));
        assert!(r.witness_irreducible(&w, 3).is_none());

        let trivial = Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::identity()]).unwrap();
        assert!(trivial.witness_irreducible(&w, 6).is_none());
        let src = Window::symmetric(int(1)).unwrap();
        let tgt = Window::symmetric(rat(1, 2)).unwrap();
        assert!(trivial.witness_proximal(&src, &tgt, 6).is_none());
    }

    #[test]
    fn contraction_witness() {
        let r = Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::affine(rat(1, 2), int(0)).unwrap()]).unwrap();
        let src = Window::symmetric(int(1)).unwrap();
        for k in 1..6i64 {
            let tgt = Window::symmetric(crate::rational::pow2(-k + 1)).unwrap();
            let w = r.witness_proximal(&src, &tgt, 8).unwrap();
            assert_eq!(w, Word::from_syllables([(0, k)]));
        }
    }

    #[test]
    fn conjugation_by_translation_commutes() {
        let r = translations(int(1), rat(3, 2));
        let c = r.conjugate(&PlMap::translation(int(1)));
        let words = vec![Word::generator(0), Word::generator(1)];
        let w = Window::symmetric(int(5)).unwrap();
        assert!(r.rep_distance(&c, &words, &w).unwrap().is_zero());
        assert_eq!(r.conjugate(&PlMap::identity()), r);
    }

    #[test]
    fn relator_checked_at_construction() {
        let group = MarkedGroup::new(
            vec!["a".into(), "b".into()],
            vec![Word::from_syllables([(0, 1), (1, 1), (0, -1), (1, -1)])],
        )
        .unwrap();
        assert!(Representation::new(group.clone(), vec![PlMap::translation(int(1)), PlMap::translation(int(2))]).is_ok());
        let err = Representation::new(
            group,
            vec![PlMap::affine(int(2), int(0)).unwrap(), PlMap::translation(int(1))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::RelatorViolated { .. }));
    }

    #[test]
    fn record_round_trip() {
        let group = MarkedGroup::new(
            vec!["a".into(), "b".into()],
            vec![Word::from_syllables([(0, 1), (1, 1), (0, -1), (1, -1)])],
        )
        .unwrap();
        let r = Representation::windowed(
            group,
            vec![PlMap::translation(rat(1, 3)), PlMap::translation(int(2))],
            Window::symmetric(int(4)).unwrap(),
        )
        .unwrap();
        let text = r.to_record();
        let back = Representation::from_record(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_record(), text);
    }
}
