//! Words over a marked generating set and their length-lexicographic
//! enumeration.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A single generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter::new(self.generator, !self.inverse)
    }

    /// Position in the canonical letter order `s_0, s_0⁻¹, s_1, s_1⁻¹, ...`.
    pub fn rank(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn all(num_generators: usize) -> impl Iterator<Item = Letter> {
        (0..num_generators).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
    }
}

/// Freely reduced word, stored as syllables `(generator, exponent)` with
/// nonzero exponents and distinct adjacent generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word::from_syllables([(g, 1)])
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word { syllables: out }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word::from_syllables(
            letters
                .into_iter()
                .map(|l| (l.generator, if l.inverse { -1 } else { 1 })),
        )
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Word length: the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| {
                std::iter::repeat(Letter::new(g, e < 0)).take(e.unsigned_abs() as usize)
            })
            .collect()
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.syllables.first().map(|&(g, e)| Letter::new(g, e < 0))
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        Word::from_syllables(self.syllables.iter().chain(&other.syllables).copied())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn prepend(&self, letter: Letter) -> Word {
        Word::from_letters(std::iter::once(letter)).mul(self)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|&(g, _)| g).max()
    }

    /// Exponent sum of each generator (the image in the abelianization).
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut v = vec![0; num_generators];
        for &(g, e) in &self.syllables {
            if g < num_generators {
                v[g] += e;
            }
        }
        v
    }

    /// Length-lexicographic comparison in the canonical letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a = self.letters();
            let b = other.letters();
            a.iter().map(|l| l.rank()).cmp(b.iter().map(|l| l.rank()))
        })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "e");
        }
        for (i, &(g, e)) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(g) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "#{g}")?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Generator names plus relators carried as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGroup {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl MarkedGroup {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n == "e" || n.contains(|c: char| c.is_whitespace() || c == '^' || c == '#') {
                return Err(Error::Parse(format!("invalid generator name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("duplicate generator name {n:?}")));
            }
        }
        if let Some(g) = relators.iter().filter_map(Word::max_generator).find(|&g| g >= names.len()) {
            return Err(Error::UnknownGenerator(g));
        }
        Ok(MarkedGroup { names, relators })
    }

    pub fn free(names: &[&str]) -> Self {
        MarkedGroup::new(names.iter().map(|s| s.to_string()).collect(), vec![])
            .expect("valid free group names")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }

    /// Parses `a^2 b^-1 a`; `e` (or an empty string) is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?,
                ),
                None => (token, 1),
            };
            let g = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            syllables.push((g, exp));
        }
        Ok(Word::from_syllables(syllables))
    }
}

/// Every reduced word of length `<= max_len` in length-lexicographic order,
/// each paired with a value folded from the right: the value of `ℓ·w` is
/// `step(ℓ, value(w))`. Useful for orbit points, where `step` applies the
/// letter's map.
pub fn enumerate_with<T: Clone>(
    num_generators: usize,
    max_len: usize,
    seed: T,
    mut step: impl FnMut(Letter, &T) -> T,
) -> Vec<(Word, T)> {
    let mut out = vec![(Word::identity(), seed)];
    let mut prev: Vec<usize> = vec![0];
    for _ in 0..max_len {
        let mut level = Vec::new();
        for letter in Letter::all(num_generators) {
            for &i in &prev {
                let (w, v) = &out[i];
                if w.first_letter() == Some(letter.inv()) {
                    continue;
                }
                let value = step(letter, v);
                level.push((w.prepend(letter), value));
            }
        }
        let start = out.len();
        out.extend(level);
        prev = (start..out.len()).collect();
        if prev.is_empty() {
            break;
        }
    }
    out
}

/// Reduced words of length `<= max_len`, length-lexicographic.
pub fn words_up_to(num_generators: usize, max_len: usize) -> Vec<Word> {
    enumerate_with(num_generators, max_len, (), |_, _| ())
        .into_iter()
        .map(|(w, _)| w)
        .collect()
}

/// The first `n` reduced words in length-lexicographic order.
pub fn first_words(num_generators: usize, n: usize) -> Vec<Word> {
    if num_generators == 0 {
        return vec![Word::identity()];
    }
    let mut len = 0;
    loop {
        let ws = words_up_to(num_generators, len);
        if ws.len() >= n {
            return ws.into_iter().take(n).collect();
        }
        len += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_syllables([(0, 2), (1, 1), (1, -1), (0, -2)]);
        assert!(w.is_identity());
        let w = Word::from_syllables([(0, 1), (0, 1), (1, -3)]);
        assert_eq!(w.syllables(), &[(0, 2), (1, -3)]);
        assert_eq!(w.len(), 5);
        assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn enumeration_is_shortlex_and_complete() {
        let ws = words_up_to(2, 3);
        assert_eq!(ws.len(), 1 + 4 + 12 + 36);
        for pair in ws.windows(2) {
            assert_eq!(pair[0].shortlex_cmp(&pair[1]), Ordering::Less);
        }
        let one = words_up_to(1, 2);
        let g = MarkedGroup::free(&["a"]);
        let shown: Vec<String> = one.iter().map(|w| g.format_word(w)).collect();
        assert_eq!(shown, ["e", "a", "a^-1", "a^2", "a^-2"]);
    }

    #[test]
    fn parse_and_format() {
        let g = MarkedGroup::free(&["a", "b"]);
        let w = g.parse_word("a b^2 a^-1").unwrap();
        assert_eq!(g.format_word(&w), "a b^2 a^-1");
        assert!(g.parse_word("e").unwrap().is_identity());
        assert!(g.parse_word("c").is_err());
        assert!(MarkedGroup::new(vec!["a".into(), "a".into()], vec![]).is_err());
    }

    #[test]
    fn first_words_prefix() {
        let ws = first_words(2, 7);
        assert_eq!(ws.len(), 7);
        assert_eq!(ws[..5], words_up_to(2, 1)[..]);
    }
}
