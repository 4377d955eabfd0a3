//! Orbit representations `ρ_y(g).s = s + τ_g(Φ^s(y))` and the recurrence
//! experiment along return times `2^n`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::families::dyadic_sequence;
use crate::plmap::{PlMap, Window};
use crate::rational::{int, pow2, Rational};

use super::cantor::CantorPoint;
use super::element::{element_f, thompson_generators_on_j, tower_interval, ChartElement, SuspensionPoint};

/// Integers `j` such that `interval + j - t` meets the window.
fn chart_indices(y: &SuspensionPoint, interval: &Window, window: &Window) -> std::ops::Range<i64> {
    let lo: Rational = (window.left() - interval.right() + y.time()).floor();
    let hi: Rational = (window.right() - interval.left() + y.time()).ceil();
    let lo: i64 = lo.to_integer().try_into().expect("window fits in i64");
    let hi: i64 = hi.to_integer().try_into().expect("window fits in i64");
    lo..hi + 1
}

fn cell(y: &SuspensionPoint, interval: &Window, j: i64) -> Window {
    interval.shifted(&(int(j) - y.time()))
}

fn meets(a: &Window, b: &Window) -> bool {
    a.left() < b.right() && b.left() < a.right()
}

/// Local map used by `f^{±1}` on the flow-line copy of `I` with base `base`.
fn tower_local(base: &CantorPoint, inverse: bool) -> PlMap {
    let map = match base.cylinder_index() {
        Some(n) => dyadic_sequence(n as u32).expect("n >= 1"),
        None => crate::families::dyadic_limit(),
    };
    if inverse {
        map.invert()
    } else {
        map
    }
}

/// One row of a chart trace: the copy of a chart interval at flow time `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub k: i64,
    pub base: CantorPoint,
    pub cell: Window,
    pub map_id: String,
}

impl fmt::Display for TraceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {} {}", self.k, self.base, self.cell.left(), self.cell.right(), self.map_id)
    }
}

/// Chart copies met by the window, with the local map acting on each.
pub fn chart_trace(y: &SuspensionPoint, g: &ChartElement, window: &Window) -> Result<Vec<TraceRow>> {
    let mut rows = Vec::new();
    match g {
        ChartElement::Identity => {}
        ChartElement::Tower { inverse } => {
            let i = tower_interval();
            for j in chart_indices(y, &i, window) {
                let c = cell(y, &i, j);
                if !meets(&c, window) {
                    continue;
                }
                let base = y.base().odometer_step(j);
                let name = match base.cylinder_index() {
                    Some(n) => format!("f_{n}"),
                    None => "f_inf".to_string(),
                };
                rows.push(TraceRow {
                    k: j,
                    base,
                    cell: c,
                    map_id: if *inverse { format!("{name}^-1") } else { name },
                });
            }
        }
        ChartElement::Charts(cs) => {
            for (idx, chart) in cs.iter().enumerate() {
                for j in chart_indices(y, &chart.interval, window) {
                    let c = cell(y, &chart.interval, j);
                    let base = y.base().odometer_step(j);
                    if meets(&c, window) && base.starts_with(&chart.cylinder) {
                        rows.push(TraceRow {
                            k: j,
                            base,
                            cell: c,
                            map_id: format!("chart_{idx}"),
                        });
                    }
                }
            }
        }
        ChartElement::Product(_) => {
            return Err(Error::Unsupported("chart traces are per generator".into()));
        }
    }
    rows.sort_by(|a, b| a.cell.left().cmp(b.cell.left()));
    Ok(rows)
}

/// `ρ_y(g)` as a PL map, exact on `window`.
pub fn rho(y: &SuspensionPoint, g: &ChartElement, window: &Window) -> Result<PlMap> {
    match g {
        ChartElement::Identity => Ok(PlMap::identity()),
        ChartElement::Tower { inverse } => {
            let i = tower_interval();
            let mut patches = Vec::new();
            for j in chart_indices(y, &i, window) {
                let c = cell(y, &i, j);
                if !meets(&c, window) {
                    continue;
                }
                let local = tower_local(&y.base().odometer_step(j), *inverse);
                let shift = int(j) - y.time();
                patches.push((c.left().clone(), c.right().clone(), local.translate_conjugate(&shift)));
            }
            PlMap::patch(&patches)
        }
        ChartElement::Charts(cs) => {
            let mut patches = Vec::new();
            for chart in cs {
                for j in chart_indices(y, &chart.interval, window) {
                    let c = cell(y, &chart.interval, j);
                    if !meets(&c, window) || !y.base().odometer_step(j).starts_with(&chart.cylinder) {
                        continue;
                    }
                    let shift = int(j) - y.time();
                    patches.push((c.left().clone(), c.right().clone(), chart.map.translate_conjugate(&shift)));
                }
            }
            PlMap::patch(&patches)
        }
        ChartElement::Product(fs) => {
            let margin = int(g.displacement_bound() as i64);
            let wide = window.expanded(&margin);
            let mut acc = PlMap::identity();
            for factor in fs.iter().rev() {
                acc = rho(y, factor, &wide)?.compose(&acc);
            }
            Ok(acc)
        }
    }
}

/// The word set `{f, A, B, fA, Bf}` with display names.
pub fn default_words() -> Vec<(String, ChartElement)> {
    let f = element_f();
    let (a, b) = thompson_generators_on_j();
    vec![
        ("f".into(), f.clone()),
        ("A".into(), a.clone()),
        ("B".into(), b.clone()),
        ("fA".into(), f.then_after(&a)),
        ("Bf".into(), b.then_after(&f)),
    ]
}

/// `max_w sup_W |ρ_y(w) - ρ_{Φ^t(y)}(w)|`; the second map equals
/// `Ψ^{-t}(ρ_y)(w)`.
pub fn recurrence_distance(
    y: &SuspensionPoint,
    words: &[(String, ChartElement)],
    window: &Window,
    t: &Rational,
) -> Result<Rational> {
    let moved = y.flow(t);
    let mut best = Rational::zero();
    for (_, w) in words {
        let d = rho(y, w, window)?.sup_distance(&rho(&moved, w, window)?, window);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceRow {
    pub n: u32,
    pub t: Rational,
    pub distance: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub base: SuspensionPoint,
    pub window: Window,
    pub rows: Vec<RecurrenceRow>,
    /// Least `n` from which every tested distance is exactly 0.
    pub threshold: Option<u32>,
}

impl RecurrenceReport {
    pub fn verdict(&self) -> String {
        match self.threshold {
            Some(n) => format!(
                "distance exactly 0 from n = {n} on while t_n = 2^n grows: conjugators do not tend to the identity"
            ),
            None => "threshold not reached in range".to_string(),
        }
    }
}

/// Rows `n = 1..=max_n` with `t_n = 2^n`.
pub fn recurrence_experiment(
    y: &SuspensionPoint,
    words: &[(String, ChartElement)],
    window: &Window,
    max_n: u32,
) -> Result<RecurrenceReport> {
    if y.on_orbit_of_z() {
        return Err(Error::ExcludedOrbit(y.to_string()));
    }
    if max_n == 0 {
        return Err(Error::Precondition("max n must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let t = pow2(n as i64);
        let distance = recurrence_distance(y, words, window, &t)?;
        rows.push(RecurrenceRow { n, t, distance });
    }
    let threshold = match rows.iter().rposition(|r| !r.distance.is_zero()) {
        None => Some(1),
        Some(i) if i + 1 < rows.len() => Some(rows[i + 1].n),
        Some(_) => None,
    };
    Ok(RecurrenceReport {
        base: y.clone(),
        window: window.clone(),
        rows,
        threshold,
    })
}
