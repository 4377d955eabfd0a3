//! Left-preorders on enumerated groups.
//!
//! A [`Preorder`] is a comparison oracle on words. Oracles are expected to be
//! total, transitive and left-invariant; those properties are spot-checked on
//! finite prefixes of an [`Enumeration`], never assumed. Ties (`≍`) are
//! first-class: `compare` returns [`Ordering::Equal`] for elements of the same
//! residue coset.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rep::Representation;
use crate::word::{first_words, MarkedGroup, Word};

/// How words are brought to normal form before they are compared or looked
/// up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalizer {
    /// Free reduction only.
    Free,
    /// Free abelian group: `s_0^{v_0} s_1^{v_1} ...`.
    Abelian,
}

impl Normalizer {
    pub fn normalize(self, rank: usize, w: &Word) -> Word {
        match self {
            Normalizer::Free => w.clone(),
            Normalizer::Abelian => {
                Word::from_syllables(w.exponent_sums(rank).into_iter().enumerate())
            }
        }
    }

    fn name(self) -> &'static str {
        match self {
            Normalizer::Free => "free",
            Normalizer::Abelian => "abelian",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Normalizer::Free),
            "abelian" => Ok(Normalizer::Abelian),
            _ => Err(Error::Parse(format!("unknown normalizer {s:?}"))),
        }
    }
}

/// A numbering `i ↦ g_i` of group elements with `g_0 = e`, injective on
/// normal forms.
#[derive(Clone, Debug)]
pub struct Enumeration {
    rank: usize,
    normalizer: Normalizer,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Enumeration {
    pub fn from_words(rank: usize, normalizer: Normalizer, words: Vec<Word>) -> Result<Self> {
        if words.first().map_or(true, |w| !w.is_identity()) {
            return Err(Error::Precondition("numbering must start with the identity".into()));
        }
        let words: Vec<Word> = words.iter().map(|w| normalizer.normalize(rank, w)).collect();
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.max_generator().is_some_and(|g| g >= rank) {
                return Err(Error::UnknownGenerator(w.max_generator().unwrap_or(0)));
            }
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::Precondition(format!("numbering repeats element at index {i}")));
            }
        }
        Ok(Enumeration {
            rank,
            normalizer,
            words,
            index,
        })
    }

    /// First `n` reduced words of the free group, length-lexicographic.
    pub fn free(rank: usize, n: usize) -> Self {
        Enumeration::from_words(rank, Normalizer::Free, first_words(rank, n))
            .expect("shortlex words are distinct")
    }

    /// First `n` elements of `ℤ^rank`, ordered by ℓ¹-norm and then by the
    /// length-lexicographic order of their normal forms. For `rank = 1` this
    /// is `0, 1, -1, 2, -2, ...`.
    pub fn abelian(rank: usize, n: usize) -> Self {
        let mut words = Vec::with_capacity(n);
        let mut norm = 0i64;
        while words.len() < n {
            let mut level: Vec<Word> = vectors_of_norm(rank, norm)
                .into_iter()
                .map(|v| Word::from_syllables(v.into_iter().enumerate()))
                .collect();
            level.sort_by(Word::shortlex_cmp);
            words.extend(level);
            if rank == 0 {
                break;
            }
            norm += 1;
        }
        words.truncate(n);
        Enumeration::from_words(rank, Normalizer::Abelian, words).expect("distinct vectors")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn normalizer(&self) -> Normalizer {
        self.normalizer
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn get(&self, i: usize) -> Option<&Word> {
        self.words.get(i)
    }

    pub fn normalize(&self, w: &Word) -> Word {
        self.normalizer.normalize(self.rank, w)
    }

    pub fn product(&self, g: &Word, h: &Word) -> Word {
        self.normalize(&g.mul(h))
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(&self.normalize(w)).copied()
    }

    pub fn truncated(&self, n: usize) -> Enumeration {
        let words: Vec<Word> = self.words.iter().take(n).cloned().collect();
        Enumeration::from_words(self.rank, self.normalizer, words).expect("prefix of a valid numbering")
    }
}

fn vectors_of_norm(rank: usize, norm: i64) -> Vec<Vec<i64>> {
    if rank == 0 {
        return if norm == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in -norm..=norm {
        for mut rest in vectors_of_norm(rank - 1, norm - first.abs()) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A comparison oracle. Implementations must be pure.
pub trait PreorderOracle: Send + Sync {
    fn compare(&self, g: &Word, h: &Word) -> Result<Ordering>;
}

/// A left-preorder given by a shared oracle.
#[derive(Clone)]
pub struct Preorder {
    oracle: Arc<dyn PreorderOracle>,
    label: String,
}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preorder({})", self.label)
    }
}

impl Preorder {
    pub fn from_oracle(label: impl Into<String>, oracle: impl PreorderOracle + 'static) -> Self {
        Preorder {
            oracle: Arc::new(oracle),
            label: label.into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn compare(&self, g: &Word, h: &Word) -> Result<Ordering> {
        self.oracle.compare(g, h)
    }

    /// `e ≼ g`.
    pub fn is_nonnegative(&self, g: &Word) -> Result<bool> {
        Ok(self.compare(&Word::identity(), g)? != Ordering::Greater)
    }

    /// `e ≺ g`: membership in the (strict) positive cone.
    pub fn is_positive(&self, g: &Word) -> Result<bool> {
        Ok(self.compare(&Word::identity(), g)? == Ordering::Less)
    }

    /// `g ≍ e`: membership in the residue subgroup.
    pub fn in_residue(&self, g: &Word) -> Result<bool> {
        Ok(self.compare(&Word::identity(), g)? == Ordering::Equal)
    }

    /// Spot-checks the preorder axioms on the first `n` enumerated elements:
    /// antisymmetry of the verdicts, transitivity on all triples among the
    /// first `min(n, 40)` elements, left-invariance under the first
    /// `shifts` elements, and non-triviality.
    pub fn sanity_check(&self, enumeration: &Enumeration, n: usize, shifts: usize) -> Result<()> {
        let ws: Vec<&Word> = enumeration.words().iter().take(n).collect();
        let mut table = vec![vec![Ordering::Equal; ws.len()]; ws.len()];
        for i in 0..ws.len() {
            for j in 0..ws.len() {
                table[i][j] = self.compare(ws[i], ws[j])?;
            }
        }
        for i in 0..ws.len() {
            for j in 0..ws.len() {
                if table[i][j] != table[j][i].reverse() {
                    return Err(Error::OracleInconsistency(format!(
                        "comparison of elements {i} and {j} is not antisymmetric"
                    )));
                }
            }
        }
        let t = ws.len().min(40);
        for i in 0..t {
            for j in 0..t {
                for k in 0..t {
                    if table[i][j] != Ordering::Greater
                        && table[j][k] != Ordering::Greater
                        && table[i][k] == Ordering::Greater
                    {
                        return Err(Error::OracleInconsistency(format!(
                            "transitivity fails on elements {i}, {j}, {k}"
                        )));
                    }
                }
            }
        }
        for k in ws.iter().take(shifts) {
            for i in 0..ws.len() {
                for j in 0..ws.len() {
                    let shifted = self.compare(&enumeration.product(k, ws[i]), &enumeration.product(k, ws[j]))?;
                    if shifted != table[i][j] {
                        return Err(Error::OracleInconsistency(format!(
                            "left-invariance fails for elements {i}, {j}"
                        )));
                    }
                }
            }
        }
        if ws.len() > 1 && table[0].iter().all(|&o| o == Ordering::Equal) {
            return Err(Error::TrivialPreorder);
        }
        Ok(())
    }

    /// Records every comparison among the first `n` enumerated elements.
    pub fn transcript(&self, group: &MarkedGroup, enumeration: &Enumeration, n: usize) -> Result<Transcript> {
        let prefix = enumeration.truncated(n);
        let ws = prefix.words();
        let mut verdicts = Vec::new();
        for i in 0..ws.len() {
            for j in (i + 1)..ws.len() {
                verdicts.push((i, j, self.compare(&ws[i], &ws[j])?));
            }
        }
        Ok(Transcript {
            group: group.clone(),
            enumeration: prefix,
            verdicts,
        })
    }
}

struct InducedOracle {
    rep: Representation,
    basepoint: Rational,
    memo: Mutex<HashMap<Word, Rational>>,
}

impl InducedOracle {
    fn value(&self, w: &Word) -> Result<Rational> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(w) {
            return Ok(v.clone());
        }
        let v = self.rep.act(w, &self.basepoint)?;
        self.memo.lock().expect("memo lock").insert(w.clone(), v.clone());
        Ok(v)
    }
}

impl PreorderOracle for InducedOracle {
    fn compare(&self, g: &Word, h: &Word) -> Result<Ordering> {
        Ok(self.value(g)?.cmp(&self.value(h)?))
    }
}

/// `g ≼_φ h ⟺ φ(g)·0 <= φ(h)·0`. Rejects representations whose induced
/// preorder is trivial (every generator fixes 0).
pub fn induced_preorder(rep: &Representation) -> Result<Preorder> {
    induced_preorder_at(rep, &Rational::zero())
}

/// Induced preorder read at an arbitrary basepoint.
pub fn induced_preorder_at(rep: &Representation, basepoint: &Rational) -> Result<Preorder> {
    if rep.generators().iter().all(|g| &g.evaluate(basepoint) == basepoint) {
        return Err(Error::TrivialPreorder);
    }
    Ok(Preorder::from_oracle(
        format!("induced at {basepoint}"),
        InducedOracle {
            rep: rep.clone(),
            basepoint: basepoint.clone(),
            memo: Mutex::new(HashMap::new()),
        },
    ))
}

struct LexOracle {
    rank: usize,
    significant: usize,
}

impl PreorderOracle for LexOracle {
    fn compare(&self, g: &Word, h: &Word) -> Result<Ordering> {
        let a = g.exponent_sums(self.rank);
        let b = h.exponent_sums(self.rank);
        Ok(a[..self.significant].cmp(&b[..self.significant]))
    }
}

/// Lexicographic order on `ℤ^rank` (first coordinate most significant), read
/// through exponent sums.
pub fn lexicographic(rank: usize) -> Preorder {
    Preorder::from_oracle(format!("lexicographic on Z^{rank}"), LexOracle { rank, significant: rank })
}

/// Lexicographic preorder on the first `significant` coordinates of
/// `ℤ^rank`; the remaining coordinates form the residue.
pub fn lexicographic_prefix(rank: usize, significant: usize) -> Preorder {
    Preorder::from_oracle(
        format!("lexicographic on the first {significant} coordinates of Z^{rank}"),
        LexOracle {
            rank,
            significant: significant.min(rank),
        },
    )
}

/// The natural order of ℤ.
pub fn natural_z() -> Preorder {
    lexicographic(1)
}

/// Subgroup membership oracle.
pub type Subgroup = Arc<dyn Fn(&Word) -> bool + Send + Sync>;

pub fn whole_group() -> Subgroup {
    Arc::new(|_| true)
}

pub fn trivial_subgroup(normalizer: Normalizer, rank: usize) -> Subgroup {
    Arc::new(move |w| normalizer.normalize(rank, w).is_identity())
}

/// `{v ∈ ℤ^rank : v_i = 0 for i in coords}`.
pub fn abelian_kernel(rank: usize, coords: Vec<usize>) -> Subgroup {
    Arc::new(move |w| {
        let v = w.exponent_sums(rank);
        coords.iter().all(|&i| v[i] == 0)
    })
}

/// `{v ∈ ℤ^rank : v_i ≡ 0 mod modulus}` for one coordinate.
pub fn abelian_congruence(rank: usize, coord: usize, modulus: i64) -> Subgroup {
    Arc::new(move |w| w.exponent_sums(rank)[coord].rem_euclid(modulus) == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityVerdict {
    /// No violation among the first `checked` elements.
    Pass { checked: usize },
    /// `e ≼ g ≼ h` with `h ∈ H` and `g ∉ H`.
    Fail { g: Word, h: Word },
}

/// Checks `e ≼ g ≼ h, h ∈ H ⟹ g ∈ H` over the first `n` elements.
pub fn is_convex(
    subgroup: &Subgroup,
    preorder: &Preorder,
    enumeration: &Enumeration,
    n: usize,
) -> Result<ConvexityVerdict> {
    if !subgroup(&Word::identity()) {
        return Err(Error::Precondition("subgroup oracle rejects the identity".into()));
    }
    let ws: Vec<&Word> = enumeration.words().iter().take(n).collect();
    let e = Word::identity();
    for h in ws.iter().filter(|h| subgroup(h)) {
        if preorder.compare(&e, h)? == Ordering::Greater {
            continue;
        }
        for g in &ws {
            if subgroup(g) {
                continue;
            }
            if preorder.compare(&e, g)? != Ordering::Greater && preorder.compare(g, h)? != Ordering::Greater {
                return Ok(ConvexityVerdict::Fail {
                    g: (*g).clone(),
                    h: (*h).clone(),
                });
            }
        }
    }
    Ok(ConvexityVerdict::Pass { checked: ws.len() })
}

struct MinimalModelOracle {
    base: Preorder,
    residue: Subgroup,
}

impl PreorderOracle for MinimalModelOracle {
    fn compare(&self, g: &Word, h: &Word) -> Result<Ordering> {
        if (self.residue)(&g.inverse().mul(h)) {
            return Ok(Ordering::Equal);
        }
        self.base.compare(g, h)
    }
}

/// Collapses the supplied maximal proper convex subgroup: the result has
/// positive cone `P ∖ H` and residue `H`. The subgroup is verified to be
/// convex and proper on the first `n` elements, and the result is re-checked
/// for left-invariance there.
pub fn minimal_model(
    preorder: &Preorder,
    maximal_convex: &Subgroup,
    enumeration: &Enumeration,
    n: usize,
) -> Result<Preorder> {
    if let ConvexityVerdict::Fail { g, h } = is_convex(maximal_convex, preorder, enumeration, n)? {
        return Err(Error::NotConvex(format!("{g:?} lies between e and {h:?}")));
    }
    if enumeration.words().iter().take(n).all(|w| maximal_convex(w)) {
        return Err(Error::NoMinimalModel);
    }
    let model = Preorder::from_oracle(
        format!("minimal model of {}", preorder.label()),
        MinimalModelOracle {
            base: preorder.clone(),
            residue: maximal_convex.clone(),
        },
    );
    model.sanity_check(enumeration, n.min(60), 6)?;
    Ok(model)
}

const TRANSCRIPT_TAG: &str = "lineact-transcript v1";

/// Replayable record of `(i, j, verdict)` comparisons over a numbering.
#[derive(Clone, Debug)]
pub struct Transcript {
    pub group: MarkedGroup,
    pub enumeration: Enumeration,
    pub verdicts: Vec<(usize, usize, Ordering)>,
}

fn verdict_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

impl Transcript {
    pub fn to_text(&self) -> String {
        let mut out = format!("{TRANSCRIPT_TAG}\n");
        out.push_str(&format!("generators {}\n", self.group.names().join(" ")));
        out.push_str(&format!("normalizer {}\n", self.enumeration.normalizer().name()));
        for (i, w) in self.enumeration.words().iter().enumerate() {
            out.push_str(&format!("word {i} {}\n", self.group.format_word(w)));
        }
        for (i, j, o) in &self.verdicts {
            out.push_str(&format!("cmp {i} {j} {}\n", verdict_symbol(*o)));
        }
        out.push_str("end\n");
        out
    }

    pub fn parse(text: &str) -> Result<Transcript> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        Transcript::parse_lines(&mut lines)
    }

    pub(crate) fn parse_lines<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Transcript> {
        let tag = lines.next().unwrap_or_default();
        if tag != TRANSCRIPT_TAG {
            return Err(Error::Parse(format!("expected {TRANSCRIPT_TAG:?}, found {tag:?}")));
        }
        let gens = lines.next().unwrap_or_default();
        let names: Vec<String> = match gens.strip_prefix("generators") {
            Some(rest) => rest.split_whitespace().map(str::to_string).collect(),
            None => return Err(Error::Parse(format!("expected generators line, found {gens:?}"))),
        };
        let group = MarkedGroup::new(names, vec![])?;
        let norm_line = lines.next().unwrap_or_default();
        let normalizer = match norm_line.strip_prefix("normalizer") {
            Some(rest) => Normalizer::parse(rest.trim())?,
            None => return Err(Error::Parse(format!("expected normalizer line, found {norm_line:?}"))),
        };
        let mut words = Vec::new();
        let mut verdicts = Vec::new();
        loop {
            let line = lines.next().ok_or_else(|| Error::Parse("missing end".into()))?;
            if line == "end" {
                break;
            }
            let mut fields = line.splitn(3, ' ');
            match fields.next() {
                Some("word") => {
                    let i: usize = parse_index(fields.next())?;
                    if i != words.len() {
                        return Err(Error::Parse(format!("word rows out of order at {i}")));
                    }
                    words.push(group.parse_word(fields.next().unwrap_or(""))?);
                }
                Some("cmp") => {
                    let rest: Vec<&str> = line.split_whitespace().skip(1).collect();
                    if rest.len() != 3 {
                        return Err(Error::Parse(format!("bad cmp line {line:?}")));
                    }
                    let o = match rest[2] {
                        "<" => Ordering::Less,
                        "=" => Ordering::Equal,
                        ">" => Ordering::Greater,
                        s => return Err(Error::Parse(format!("bad verdict {s:?}"))),
                    };
                    verdicts.push((parse_index(Some(rest[0]))?, parse_index(Some(rest[1]))?, o));
                }
                _ => return Err(Error::Parse(format!("unexpected line {line:?}"))),
            }
        }
        let enumeration = Enumeration::from_words(group.rank(), normalizer, words)?;
        if let Some(&(i, j, _)) = verdicts.iter().find(|(i, j, _)| *i >= enumeration.len() || *j >= enumeration.len()) {
            return Err(Error::Parse(format!("cmp {i} {j} refers to an unnumbered element")));
        }
        Ok(Transcript {
            group,
            enumeration,
            verdicts,
        })
    }

    /// Replays the transcript as a preorder defined on the numbered elements.
    pub fn preorder(&self) -> Preorder {
        let n = self.enumeration.len();
        let mut table: Vec<Option<Ordering>> = vec![None; n * n];
        for i in 0..n {
            table[i * n + i] = Some(Ordering::Equal);
        }
        for &(i, j, o) in &self.verdicts {
            table[i * n + j] = Some(o);
            table[j * n + i] = Some(o.reverse());
        }
        Preorder::from_oracle(
            "transcript replay",
            TranscriptOracle {
                enumeration: self.enumeration.clone(),
                table,
                names: self.group.names().to_vec(),
            },
        )
    }
}

fn parse_index(s: Option<&str>) -> Result<usize> {
    let s = s.unwrap_or("");
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad index {s:?}")))
}

struct TranscriptOracle {
    enumeration: Enumeration,
    table: Vec<Option<Ordering>>,
    names: Vec<String>,
}

impl PreorderOracle for TranscriptOracle {
    fn compare(&self, g: &Word, h: &Word) -> Result<Ordering> {
        let n = self.enumeration.len();
        let missing = || {
            Error::MissingComparison(
                g.display(&self.names).to_string(),
                h.display(&self.names).to_string(),
            )
        };
        let i = self.enumeration.index_of(g).ok_or_else(missing)?;
        let j = self.enumeration.index_of(h).ok_or_else(missing)?;
        self.table[i * n + j].ok_or_else(missing)
    }
}

const SPEC_TAG: &str = "lineact-preorder v1";

/// A preorder description read from a spec file, together with the
/// numbering it is meant to be realized over.
pub struct PreorderSpec {
    pub group: MarkedGroup,
    pub preorder: Preorder,
    kind: SpecKind,
}

enum SpecKind {
    Abelian,
    Free,
    Fixed(Enumeration),
}

impl PreorderSpec {
    /// Spec grammar:
    ///
    /// ```text
    /// lineact-preorder v1
    /// kind lexicographic <rank>     # ℤ^rank, lexicographic; rank 1 = natural order
    /// kind induced                  # followed by a rep record
    /// kind transcript               # followed by a transcript record
    /// ```
    pub fn parse(text: &str) -> Result<PreorderSpec> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let tag = lines.next().unwrap_or_default();
        if tag != SPEC_TAG {
            return Err(Error::Parse(format!("expected {SPEC_TAG:?}, found {tag:?}")));
        }
        let kind_line = lines.next().unwrap_or_default();
        let fields: Vec<&str> = kind_line.split_whitespace().collect();
        match fields.as_slice() {
            ["kind", "lexicographic", rank] => {
                let rank: usize = rank
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank {rank:?}")))?;
                if rank == 0 {
                    return Err(Error::Parse("rank must be positive".into()));
                }
                let names: Vec<String> = if rank == 1 {
                    vec!["a".to_string()]
                } else {
                    (0..rank).map(|i| format!("a{i}")).collect()
                };
                Ok(PreorderSpec {
                    group: MarkedGroup::new(names, vec![])?,
                    preorder: lexicographic(rank),
                    kind: SpecKind::Abelian,
                })
            }
            ["kind", "induced"] => {
                let rest: Vec<&str> = lines.collect();
                let rep = Representation::from_record(&rest.join("\n"))?;
                Ok(PreorderSpec {
                    group: rep.group().clone(),
                    preorder: induced_preorder(&rep)?,
                    kind: SpecKind::Free,
                })
            }
            ["kind", "transcript"] => {
                let t = Transcript::parse_lines(&mut lines)?;
                Ok(PreorderSpec {
                    group: t.group.clone(),
                    preorder: t.preorder(),
                    kind: SpecKind::Fixed(t.enumeration.clone()),
                })
            }
            _ => Err(Error::Parse(format!("bad kind line {kind_line:?}"))),
        }
    }

    /// The first `n` elements of the default numbering for this spec.
    pub fn enumeration(&self, n: usize) -> Result<Enumeration> {
        let rank = self.group.rank();
        match &self.kind {
            SpecKind::Abelian => Ok(Enumeration::abelian(rank, n)),
            SpecKind::Free => Ok(Enumeration::free(rank, n)),
            SpecKind::Fixed(e) if e.len() >= n => Ok(e.truncated(n)),
            SpecKind::Fixed(e) => Err(Error::Precondition(format!(
                "transcript numbers only {} elements, {n} requested",
                e.len()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plmap::PlMap;
    use crate::rational::int;

    fn z(k: i64) -> Word {
        Word::from_syllables([(0, k)])
    }

    #[test]
    fn abelian_enumeration_orders() {
        let e = Enumeration::abelian(1, 5);
        assert_eq!(e.words(), &[z(0), z(1), z(-1), z(2), z(-2)]);
        let e2 = Enumeration::abelian(2, 9);
        assert_eq!(e2.len(), 9);
        assert!(e2.get(0).unwrap().is_identity());
        assert_eq!(e2.index_of(&Word::from_syllables([(1, 1), (0, 1)])), e2.index_of(&Word::from_syllables([(0, 1), (1, 1)])));
    }

    #[test]
    fn translation_rep_induces_natural_order() {
        let rep = Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::translation(int(1))]).unwrap();
        let p = induced_preorder(&rep).unwrap();
        let nat = natural_z();
        let e = Enumeration::free(1, 9);
        for g in e.words() {
            for h in e.words() {
                assert_eq!(p.compare(g, h).unwrap(), nat.compare(g, h).unwrap());
            }
        }
        let trivial = Representation::new(MarkedGroup::free(&["a"]), vec![PlMap::identity()]).unwrap();
        assert_eq!(induced_preorder(&trivial).unwrap_err(), Error::TrivialPreorder);
    }

    #[test]
    fn convexity_verdicts() {
        let e = Enumeration::abelian(1, 5);
        let nat = natural_z();
        assert_eq!(is_convex(&whole_group(), &nat, &e, 5).unwrap(), ConvexityVerdict::Pass { checked: 5 });
        let even = abelian_congruence(1, 0, 2);
        assert_eq!(
            is_convex(&even, &nat, &e, 5).unwrap(),
            ConvexityVerdict::Fail { g: z(1), h: z(2) }
        );
    }

    #[test]
    fn lexicographic_second_factor_is_convex() {
        let e = Enumeration::abelian(2, 200);
        let lex = lexicographic(2);
        let second = abelian_kernel(2, vec![0]);
        assert_eq!(is_convex(&second, &lex, &e, 200).unwrap(), ConvexityVerdict::Pass { checked: 200 });
        let first = abelian_kernel(2, vec![1]);
        assert!(matches!(is_convex(&first, &lex, &e, 200).unwrap(), ConvexityVerdict::Fail { .. }));
    }

    #[test]
    fn minimal_model_collapses_second_factor() {
        let e = Enumeration::abelian(2, 120);
        let lex = lexicographic(2);
        let model = minimal_model(&lex, &abelian_kernel(2, vec![0]), &e, 120).unwrap();
        let direct = lexicographic_prefix(2, 1);
        for g in e.words().iter().take(60) {
            for h in e.words().iter().take(60) {
                assert_eq!(model.compare(g, h).unwrap(), direct.compare(g, h).unwrap());
            }
        }
        assert_eq!(minimal_model(&lex, &whole_group(), &e, 50).unwrap_err(), Error::NoMinimalModel);
    }

    #[test]
    fn minimal_model_of_an_order_without_proper_convex_subgroups() {
        let e = Enumeration::abelian(1, 30);
        let nat = natural_z();
        let model = minimal_model(&nat, &trivial_subgroup(Normalizer::Abelian, 1), &e, 30).unwrap();
        for g in e.words() {
            for h in e.words() {
                assert_eq!(model.compare(g, h).unwrap(), nat.compare(g, h).unwrap());
            }
        }
    }

    #[test]
    fn transcript_replay() {
        let group = MarkedGroup::free(&["a"]);
        let e = Enumeration::abelian(1, 7);
        let t = natural_z().transcript(&group, &e, 7).unwrap();
        let text = t.to_text();
        let back = Transcript::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        let replay = back.preorder();
        assert_eq!(replay.compare(&z(2), &z(-1)).unwrap(), Ordering::Greater);
        assert!(matches!(replay.compare(&z(9), &z(0)), Err(Error::MissingComparison(..))));
    }

    #[test]
    fn sanity_check_flags_non_invariant_oracle() {
        struct Bad;
        impl PreorderOracle for Bad {
            fn compare(&self, g: &Word, h: &Word) -> Result<Ordering> {
                // |g| compared with |h|: total and transitive, not left-invariant
                let a = g.exponent_sums(1)[0].abs();
                let b = h.exponent_sums(1)[0].abs();
                Ok(a.cmp(&b))
            }
        }
        let p = Preorder::from_oracle("bad", Bad);
        let e = Enumeration::abelian(1, 9);
        assert!(matches!(p.sanity_check(&e, 9, 3), Err(Error::OracleInconsistency(_))));
        assert!(natural_z().sanity_check(&e, 9, 3).is_ok());
    }

    #[test]
    fn spec_file_kinds() {
        let s = PreorderSpec::parse("lineact-preorder v1\nkind lexicographic 1\n").unwrap();
        let e = s.enumeration(5).unwrap();
        assert_eq!(e.words(), &[z(0), z(1), z(-1), z(2), z(-2)]);
        assert!(PreorderSpec::parse("lineact-preorder v1\nkind nonsense\n").is_err());
        assert!(PreorderSpec::parse("garbage").is_err());
    }
}
