//! The explicit dynamical realization `ι_≼: G → ℝ` of a left-preorder and
//! the truncated action it induces.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::plmap::{PlMap, Window};
use crate::preorder::{Enumeration, Preorder};
use crate::rational::{parse_rational, Dyadic, Rational};
use crate::rep::Representation;
use crate::word::{MarkedGroup, Word};

/// How a value was assigned when its element joined the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// `g_0 ↦ 0`.
    Base,
    /// New maximum: previous maximum plus one.
    NewMax,
    /// New minimum: previous minimum minus one.
    NewMin,
    /// `g ≍ g_with`: same value.
    Tie { with: usize },
    /// Midpoint of the values of the two neighbouring classes.
    Midpoint { below: usize, above: usize },
}

/// Values `ι(g_i)` for the first elements of a numbering, with the insertion
/// replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationTable {
    words: Vec<Word>,
    values: Vec<Dyadic>,
    insertions: Vec<Insertion>,
}

/// Runs the inductive construction over the first `n` enumerated elements.
///
/// Each new element is compared against one representative per tabled class,
/// scanning classes in increasing order. The verdicts must read `>`, then at
/// most one `=`, then `<`; anything else is an oracle inconsistency.
pub fn iota(preorder: &Preorder, enumeration: &Enumeration, n: usize) -> Result<RealizationTable> {
    if n == 0 {
        return Err(Error::Precondition("realization needs at least one element".into()));
    }
    if enumeration.len() < n {
        return Err(Error::Precondition(format!(
            "numbering has {} elements, {n} requested",
            enumeration.len()
        )));
    }
    let words: Vec<Word> = enumeration.words()[..n].to_vec();
    let mut values = vec![Dyadic::zero()];
    let mut insertions = vec![Insertion::Base];
    // (value, representative index), sorted by value
    let mut classes: Vec<(Dyadic, usize)> = vec![(Dyadic::zero(), 0)];

    for m in 1..n {
        let g = &words[m];
        let verdicts = classes
            .iter()
            .map(|(_, rep)| preorder.compare(g, &words[*rep]))
            .collect::<Result<Vec<Ordering>>>()?;
        let above = verdicts.iter().take_while(|&&o| o == Ordering::Greater).count();
        let tie = verdicts.get(above) == Some(&Ordering::Equal);
        let rest_start = above + usize::from(tie);
        if verdicts[rest_start..].iter().any(|&o| o != Ordering::Less) {
            return Err(Error::OracleInconsistency(format!(
                "element {m} compares non-monotonically against the tabled classes"
            )));
        }
        let (value, insertion) = if tie {
            let (v, rep) = &classes[above];
            (v.clone(), Insertion::Tie { with: *rep })
        } else if above == classes.len() {
            (classes[above - 1].0.add_int(1), Insertion::NewMax)
        } else if above == 0 {
            (classes[0].0.add_int(-1), Insertion::NewMin)
        } else {
            let (lo, below) = &classes[above - 1];
            let (hi, upper) = &classes[above];
            (
                lo.midpoint(hi),
                Insertion::Midpoint {
                    below: *below,
                    above: *upper,
                },
            )
        };
        if !tie {
            classes.insert(above, (value.clone(), m));
        }
        values.push(value);
        insertions.push(insertion);
    }
    Ok(RealizationTable {
        words,
        values,
        insertions,
    })
}

impl RealizationTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn values(&self) -> &[Dyadic] {
        &self.values
    }

    pub fn insertions(&self) -> &[Insertion] {
        &self.insertions
    }

    pub fn value(&self, i: usize) -> Option<&Dyadic> {
        self.values.get(i)
    }

    /// Re-verifies order preservation against the preorder on every pair.
    pub fn verify_order(&self, preorder: &Preorder) -> Result<()> {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let expected = preorder.compare(&self.words[i], &self.words[j])?;
                if self.values[i].cmp(&self.values[j]) != expected {
                    return Err(Error::OracleInconsistency(format!(
                        "values of elements {i} and {j} disagree with the preorder"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether `self` is the first `self.len()` rows of `other`.
    pub fn is_prefix_of(&self, other: &RealizationTable) -> bool {
        self.len() <= other.len()
            && self.words[..] == other.words[..self.len()]
            && self.values[..] == other.values[..self.len()]
            && self.insertions[..] == other.insertions[..self.len()]
    }

    /// Replays the insertions and checks that whenever a new value of height
    /// `n <= max_height` appears, its left and right neighbours of every
    /// height `k < n` are already tabled.
    pub fn check_dyadic_dichotomy(&self, max_height: u32) -> DichotomyReport {
        let mut present: BTreeSet<Dyadic> = BTreeSet::new();
        let mut checked = 0;
        let mut violations = Vec::new();
        for (i, x) in self.values.iter().enumerate() {
            if present.contains(x) {
                continue;
            }
            if x.height() <= max_height {
                checked += 1;
                for k in 0..x.height() {
                    for missing in [x.left_neighbor(k), x.right_neighbor(k)] {
                        if !present.contains(&missing) {
                            violations.push(DichotomyViolation {
                                index: i,
                                value: x.clone(),
                                height: k,
                                missing,
                            });
                        }
                    }
                }
            }
            present.insert(x.clone());
        }
        DichotomyReport { checked, violations }
    }

    /// Exact text export: `(index, word, value)` rows.
    pub fn to_text(&self, group: &MarkedGroup) -> String {
        let mut out = format!("{TABLE_TAG}\ngenerators {}\n", group.names().join(" "));
        for (i, (w, v)) in self.words.iter().zip(&self.values).enumerate() {
            out.push_str(&format!("row {i} {v} {}\n", group.format_word(w)));
        }
        out.push_str("end\n");
        out
    }

    /// Parses an exported table and rebuilds the insertion replay, rejecting
    /// tables that the inductive rule could not have produced.
    pub fn parse(text: &str) -> Result<(MarkedGroup, RealizationTable)> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let tag = lines.next().unwrap_or_default();
        if tag != TABLE_TAG {
            return Err(Error::Parse(format!("expected {TABLE_TAG:?}, found {tag:?}")));
        }
        let header = lines.next().unwrap_or_default();
        let names = header
            .strip_prefix("generators")
            .ok_or_else(|| Error::Parse(format!("expected generators line, found {header:?}")))?;
        let group = MarkedGroup::new(names.split_whitespace().map(str::to_string).collect(), vec![])?;
        let mut words = Vec::new();
        let mut values = Vec::new();
        let mut ended = false;
        for line in lines.by_ref() {
            if line == "end" {
                ended = true;
                break;
            }
            let mut fields = line.splitn(4, ' ');
            if fields.next() != Some("row") {
                return Err(Error::Parse(format!("unexpected line {line:?}")));
            }
            let i: usize = fields
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad row index in {line:?}")))?;
            if i != words.len() {
                return Err(Error::Parse(format!("rows out of order at {i}")));
            }
            let value = parse_rational(fields.next().unwrap_or(""))?;
            let value = Dyadic::from_rational(&value)
                .ok_or_else(|| Error::Parse(format!("value in row {i} is not dyadic")))?;
            values.push(value);
            words.push(group.parse_word(fields.next().unwrap_or(""))?);
        }
        if !ended {
            return Err(Error::Parse("missing end".into()));
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing line {extra:?}")));
        }
        let insertions = replay(&values)?;
        Ok((
            group,
            RealizationTable {
                words,
                values,
                insertions,
            },
        ))
    }
}

const TABLE_TAG: &str = "lineact-realization v1";

fn replay(values: &[Dyadic]) -> Result<Vec<Insertion>> {
    let bad = |i: usize| Error::Parse(format!("value in row {i} does not follow the inductive rule"));
    let mut out = Vec::with_capacity(values.len());
    let mut classes: Vec<(Dyadic, usize)> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if i == 0 {
            if *v != Dyadic::zero() {
                return Err(bad(0));
            }
            classes.push((v.clone(), 0));
            out.push(Insertion::Base);
            continue;
        }
        let pos = classes.partition_point(|(c, _)| c < v);
        if pos < classes.len() && classes[pos].0 == *v {
            out.push(Insertion::Tie { with: classes[pos].1 });
            continue;
        }
        let ins = if pos == classes.len() {
            (classes[pos - 1].0.add_int(1) == *v).then_some(Insertion::NewMax)
        } else if pos == 0 {
            (classes[0].0.add_int(-1) == *v).then_some(Insertion::NewMin)
        } else {
            (classes[pos - 1].0.midpoint(&classes[pos].0) == *v).then_some(Insertion::Midpoint {
                below: classes[pos - 1].1,
                above: classes[pos].1,
            })
        };
        out.push(ins.ok_or_else(|| bad(i))?);
        classes.insert(pos, (v.clone(), i));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyViolation {
    pub index: usize,
    pub value: Dyadic,
    pub height: u32,
    pub missing: Dyadic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    /// Number of new values whose height was within range.
    pub checked: usize,
    pub violations: Vec<DichotomyViolation>,
}

impl DichotomyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A realized generator: exact on `window`, slope-1 extrapolation outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedGenerator {
    pub map: PlMap,
    pub window: Window,
    pub pairs: usize,
}

impl RealizedGenerator {
    /// True outside the interpolated window, where the map is extrapolated.
    pub fn is_extrapolated(&self, x: &Rational) -> bool {
        !self.window.contains(x)
    }
}

#[derive(Clone, Debug)]
pub struct RealizedAction {
    pub rep: Representation,
    pub generators: Vec<RealizedGenerator>,
}

/// Interpolates each generator through the tabled pairs `(ι(g), ι(s·g))`.
pub fn realize_generators(
    table: &RealizationTable,
    enumeration: &Enumeration,
    group: &MarkedGroup,
) -> Result<RealizedAction> {
    if group.rank() != enumeration.rank() {
        return Err(Error::GroupMismatch);
    }
    let mut generators = Vec::with_capacity(group.rank());
    for s in 0..group.rank() {
        let name = &group.names()[s];
        let letter = Word::generator(s);
        let mut points: Vec<(Rational, Rational)> = Vec::new();
        for (i, g) in table.words.iter().enumerate() {
            let sg = enumeration.product(&letter, g);
            let j = match enumeration.index_of(&sg) {
                Some(j) if j < table.len() => j,
                _ => continue,
            };
            points.push((table.values[i].to_rational(), table.values[j].to_rational()));
        }
        points.sort();
        points.dedup();
        for w in points.windows(2) {
            if w[0].0 == w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::OracleInconsistency(format!(
                    "tabled pairs for generator {name} are not strictly increasing at {}",
                    w[0].0
                )));
            }
        }
        if points.len() < 2 {
            return Err(Error::InsufficientData {
                generator: name.clone(),
                pairs: points.len(),
            });
        }
        let window = Window::new(points[0].0.clone(), points[points.len() - 1].0.clone())?;
        let map = PlMap::from_points(&points, Rational::one(), Rational::one())?;
        generators.push(RealizedGenerator {
            map,
            window,
            pairs: points.len(),
        });
    }
    let free = MarkedGroup::new(group.names().to_vec(), vec![])?;
    let rep = Representation::new(free, generators.iter().map(|g| g.map.clone()).collect())?;
    Ok(RealizedAction { rep, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::{induced_preorder, natural_z, Normalizer};
    use crate::rational::{int, rat};

    fn z(k: i64) -> Word {
        Word::from_syllables([(0, k)])
    }

    fn rats(t: &RealizationTable) -> Vec<Rational> {
        t.values().iter().map(Dyadic::to_rational).collect()
    }

    #[test]
    fn integers_in_default_numbering() {
        let e = Enumeration::abelian(1, 5);
        let t = iota(&natural_z(), &e, 5).unwrap();
        assert_eq!(rats(&t), vec![int(0), int(1), int(-1), int(2), int(-2)]);
        assert!(t.check_dyadic_dichotomy(8).passed());
    }

    #[test]
    fn midpoint_rule() {
        let e = Enumeration::from_words(1, Normalizer::Abelian, vec![z(0), z(2), z(1)]).unwrap();
        let t = iota(&natural_z(), &e, 3).unwrap();
        assert_eq!(rats(&t), vec![int(0), int(1), rat(1, 2)]);
        assert_eq!(t.insertions()[2], Insertion::Midpoint { below: 0, above: 1 });
        let report = t.check_dyadic_dichotomy(8);
        assert!(report.passed());
        assert_eq!(report.checked, 3);
    }

    #[test]
    fn base_case() {
        let e = Enumeration::abelian(1, 5);
        let t = iota(&natural_z(), &e, 1).unwrap();
        assert_eq!(rats(&t), vec![int(0)]);
        assert!(iota(&natural_z(), &e, 0).is_err());
    }

    #[test]
    fn realized_translation() {
        let e = Enumeration::abelian(1, 5);
        let t = iota(&natural_z(), &e, 5).unwrap();
        let group = MarkedGroup::free(&["a"]);
        let act = realize_generators(&t, &e, &group).unwrap();
        let g = &act.generators[0];
        assert_eq!(g.window, Window::new(int(-2), int(1)).unwrap());
        assert_eq!(g.map, PlMap::translation(int(1)));
        let short = iota(&natural_z(), &e, 2).unwrap();
        let two = realize_generators(&short, &e, &group);
        assert!(matches!(two, Err(Error::InsufficientData { pairs: 1, .. })));
        let three = iota(&natural_z(), &e, 3).unwrap();
        let act3 = realize_generators(&three, &e, &group).unwrap();
        assert_eq!(act3.generators[0].map.pieces().len(), 1);
    }

    #[test]
    fn round_trip_through_realized_action() {
        let e = Enumeration::free(2, 41);
        let rep = crate::random::random_f2_rep(7);
        let p = induced_preorder(&rep).unwrap();
        let t = iota(&p, &e, 41).unwrap();
        t.verify_order(&p).unwrap();
        let act = realize_generators(&t, &e, rep.group()).unwrap();
        for (w, v) in t.words().iter().zip(t.values()) {
            assert_eq!(act.rep.act(w, &int(0)).unwrap(), v.to_rational());
        }
    }

    #[test]
    fn tie_gets_equal_value() {
        let e = Enumeration::abelian(2, 9);
        let p = crate::preorder::lexicographic_prefix(2, 1);
        let t = iota(&p, &e, 9).unwrap();
        t.verify_order(&p).unwrap();
        assert!(t.insertions().iter().any(|i| matches!(i, Insertion::Tie { .. })));
    }

    #[test]
    fn export_import() {
        let group = MarkedGroup::free(&["a"]);
        let e = Enumeration::abelian(1, 9);
        let t = iota(&natural_z(), &e, 9).unwrap();
        let text = t.to_text(&group);
        let (g2, back) = RealizationTable::parse(&text).unwrap();
        assert_eq!(g2, group);
        assert_eq!(back, t);
        let forged = text.replace("row 2 -1 a^-1", "row 2 -3 a^-1");
        assert!(RealizationTable::parse(&forged).is_err());
    }
}
