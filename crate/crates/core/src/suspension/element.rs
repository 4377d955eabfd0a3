//! Points of the suspension, the flow, and flow-line-preserving elements
//! described chart by chart.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::families::{dyadic_scale, dyadic_sequence};
use crate::plmap::{PlMap, Window};
use crate::rational::{int, rat, Rational};

use super::cantor::CantorPoint;

/// `π(x, t)` in normal form, `0 <= t < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuspensionPoint {
    base: CantorPoint,
    time: Rational,
}

impl SuspensionPoint {
    /// `π(x, t)` for any real `t`, normalized by `π(x, t) = π(φ^j(x), t - j)`.
    pub fn new(base: CantorPoint, time: Rational) -> Self {
        let j: Rational = time.floor();
        let k: i64 = j.to_integer().try_into().expect("time fits in i64");
        SuspensionPoint {
            base: base.odometer_step(k),
            time: time - j,
        }
    }

    pub fn base(&self) -> &CantorPoint {
        &self.base
    }

    pub fn time(&self) -> &Rational {
        &self.time
    }

    /// `Φ^t`.
    pub fn flow(&self, t: &Rational) -> SuspensionPoint {
        SuspensionPoint::new(self.base.clone(), &self.time + t)
    }

    /// The flow line of `z = π(x_0, 0)`.
    pub fn on_orbit_of_z(&self) -> bool {
        self.base.on_orbit_of_x0()
    }

    /// Representative `(φ^j(x), t - j)` with `t - j` in the open interval,
    /// if one exists. At most one does when the interval is shorter than 1.
    pub fn chart_coordinates(&self, interval: &Window) -> Option<(i64, CantorPoint, Rational)> {
        let lo: Rational = (&self.time - interval.right()).floor();
        let hi: Rational = (&self.time - interval.left()).ceil();
        let lo: i64 = lo.to_integer().try_into().ok()?;
        let hi: i64 = hi.to_integer().try_into().ok()?;
        (lo..=hi).find_map(|j| {
            let t = &self.time - int(j);
            (interval.left() < &t && &t < interval.right()).then(|| (j, self.base.odometer_step(j), t))
        })
    }
}

impl fmt::Display for SuspensionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi({}, {})", self.base, self.time)
    }
}

/// `(x, t) ↦ (x, map(t))` on `cylinder × interval`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub cylinder: Vec<u8>,
    pub interval: Window,
    /// Local map; fixes the interval's endpoints, identity outside.
    pub map: PlMap,
}

/// A flow-line-preserving homeomorphism of the suspension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartElement {
    Identity,
    /// Disjoint diagonal charts; identity off their union.
    Charts(Vec<Chart>),
    /// The element `f`: `f_n` on `C_n × I`, `f_∞` on `{x_0} × I`, or its
    /// inverse.
    Tower { inverse: bool },
    /// Composition, rightmost factor applied first.
    Product(Vec<ChartElement>),
}

/// `I = (-1/4, 1/4)`.
pub fn tower_interval() -> Window {
    Window::new(rat(-1, 4), rat(1, 4)).expect("nonempty")
}

/// `J = (1/16, 15/16)`.
pub fn thompson_interval() -> Window {
    Window::new(rat(1, 16), rat(15, 16)).expect("nonempty")
}

/// `f_∞(t)`: `f_m(t)` for the least `m >= 1` with `4^{-(m+1)} <= |t|`,
/// and `0` at `t = 0`. Points with `|t| >= 1/16` use `f_1`.
pub fn f_infinity(t: &Rational) -> Rational {
    if t.is_zero() {
        return Rational::zero();
    }
    let mut m = 1;
    while dyadic_scale(m) > t.abs() {
        m += 1;
    }
    dyadic_sequence(m).expect("m >= 1").evaluate(t)
}

fn tower_map(base: &CantorPoint) -> PlMap {
    match base.cylinder_index() {
        Some(n) => dyadic_sequence(n as u32).expect("n >= 1"),
        None => crate::families::dyadic_limit(),
    }
}

/// The standard generators of Thompson's group `F` on `[0, 1]`.
fn standard_thompson() -> (PlMap, PlMap) {
    let one = Rational::one;
    let a = PlMap::from_points(
        &[(int(0), int(0)), (rat(1, 2), rat(1, 4)), (rat(3, 4), rat(1, 2)), (int(1), int(1))],
        one(),
        one(),
    )
    .expect("increasing");
    let b = PlMap::from_points(
        &[
            (int(0), int(0)),
            (rat(1, 2), rat(1, 2)),
            (rat(3, 4), rat(5, 8)),
            (rat(7, 8), rat(3, 4)),
            (int(1), int(1)),
        ],
        one(),
        one(),
    )
    .expect("increasing");
    (a, b)
}

/// The generators `A`, `B` of `F_{X,J}`: the standard generators rescaled to
/// `J`, acting diagonally on `X × J`.
pub fn thompson_generators_on_j() -> (ChartElement, ChartElement) {
    let j = thompson_interval();
    let rescale = PlMap::affine(j.width(), j.left().clone()).expect("positive slope");
    let (a, b) = standard_thompson();
    let chart = |m: PlMap| {
        ChartElement::Charts(vec![Chart {
            cylinder: vec![],
            interval: j.clone(),
            map: m.conjugate_by(&rescale),
        }])
    };
    (chart(a), chart(b))
}

pub fn element_f() -> ChartElement {
    ChartElement::Tower { inverse: false }
}

impl ChartElement {
    pub fn inverse(&self) -> ChartElement {
        match self {
            ChartElement::Identity => ChartElement::Identity,
            ChartElement::Charts(cs) => ChartElement::Charts(
                cs.iter()
                    .map(|c| Chart {
                        cylinder: c.cylinder.clone(),
                        interval: c.interval.clone(),
                        map: c.map.invert(),
                    })
                    .collect(),
            ),
            ChartElement::Tower { inverse } => ChartElement::Tower { inverse: !inverse },
            ChartElement::Product(fs) => ChartElement::Product(fs.iter().rev().map(ChartElement::inverse).collect()),
        }
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &ChartElement) -> ChartElement {
        ChartElement::Product(vec![self.clone(), other.clone()])
    }

    /// Flow displacement `τ_g(p)`: `g(p) = Φ^{τ_g(p)}(p)`.
    pub fn tau(&self, p: &SuspensionPoint) -> Rational {
        match self {
            ChartElement::Identity => Rational::zero(),
            ChartElement::Charts(cs) => cs
                .iter()
                .find_map(|c| {
                    let (_, base, t) = p.chart_coordinates(&c.interval)?;
                    base.starts_with(&c.cylinder).then(|| c.map.evaluate(&t) - t)
                })
                .unwrap_or_else(Rational::zero),
            ChartElement::Tower { inverse } => match p.chart_coordinates(&tower_interval()) {
                None => Rational::zero(),
                Some((_, base, t)) => {
                    let image = match (inverse, base.cylinder_index()) {
                        (false, Some(_)) => tower_map(&base).evaluate(&t),
                        (false, None) => f_infinity(&t),
                        (true, _) => tower_map(&base).preimage(&t),
                    };
                    image - t
                }
            },
            ChartElement::Product(fs) => {
                let mut total = Rational::zero();
                let mut q = p.clone();
                for g in fs.iter().rev() {
                    let d = g.tau(&q);
                    q = q.flow(&d);
                    total += d;
                }
                total
            }
        }
    }

    pub fn apply(&self, p: &SuspensionPoint) -> SuspensionPoint {
        p.flow(&self.tau(p))
    }

    /// A bound on `|τ|`: each factor moves points by less than one unit.
    pub fn displacement_bound(&self) -> usize {
        match self {
            ChartElement::Identity => 0,
            ChartElement::Charts(_) | ChartElement::Tower { .. } => 1,
            ChartElement::Product(fs) => fs.iter().map(ChartElement::displacement_bound).sum(),
        }
    }
}

/// Checks that a word-like product is well formed: every chart map fixes
/// its interval ends and the interval is shorter than 1.
pub fn validate(element: &ChartElement) -> Result<()> {
    match element {
        ChartElement::Charts(cs) => {
            for c in cs {
                if c.interval.width() >= Rational::one() {
                    return Err(Error::Precondition(format!("chart interval {} has length >= 1", c.interval)));
                }
                if &c.map.evaluate(c.interval.left()) != c.interval.left()
                    || &c.map.evaluate(c.interval.right()) != c.interval.right()
                {
                    return Err(Error::Precondition(format!(
                        "chart map does not fix the ends of {}",
                        c.interval
                    )));
                }
            }
            Ok(())
        }
        ChartElement::Product(fs) => fs.iter().try_for_each(validate),
        _ => Ok(()),
    }
}
