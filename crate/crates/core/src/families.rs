//! Concrete action families with exact PL data: the ω-twisted free group
//! actions, Baumslag–Solitar actions and deformation paths, the Brin–Navas
//! tower, and a pinned dyadic sequence shrinking onto the identity at 0.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::plmap::{PlMap, Window};
use crate::rational::{int, pow2, rat, Rational};
use crate::rep::Representation;
use crate::word::{MarkedGroup, Word};

/// A bi-infinite sign sequence `n ↦ ω_n ∈ {+1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaWord {
    /// `ω_n = period[n mod p]`, stored with minimal period.
    Periodic(Vec<i8>),
    /// `ω_n = values[n - offset]` inside the range, `+1` elsewhere. Stored
    /// trimmed so that the first and last values are `-1`.
    Finite { offset: i64, values: Vec<i8> },
}

fn check_signs(v: &[i8]) -> Result<()> {
    if v.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Parse("omega values must be +1 or -1".into()));
    }
    Ok(())
}

impl OmegaWord {
    pub fn periodic(period: Vec<i8>) -> Result<Self> {
        check_signs(&period)?;
        if period.is_empty() {
            return Err(Error::Parse("empty period".into()));
        }
        let p = period.len();
        let minimal = (1..=p)
            .find(|&d| p % d == 0 && (0..p).all(|i| period[i] == period[i % d]))
            .expect("p divides itself");
        Ok(OmegaWord::Periodic(period[..minimal].to_vec()))
    }

    pub fn finite(offset: i64, values: Vec<i8>) -> Result<Self> {
        check_signs(&values)?;
        let start = values.iter().position(|&s| s == -1);
        let (offset, values) = match start {
            None => (0, vec![]),
            Some(s) => {
                let e = values.iter().rposition(|&s| s == -1).expect("has a -1");
                (offset + s as i64, values[s..=e].to_vec())
            }
        };
        Ok(OmegaWord::Finite { offset, values })
    }

    pub fn constant_plus() -> Self {
        OmegaWord::Periodic(vec![1])
    }

    /// `periodic:+-`, `finite:<offset>:+--`, or a bare `+-` (periodic).
    pub fn parse(text: &str) -> Result<Self> {
        let signs = |s: &str| -> Result<Vec<i8>> {
            s.chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(Error::Parse(format!("bad omega symbol {c:?}"))),
                })
                .collect()
        };
        if let Some(rest) = text.strip_prefix("finite:") {
            let (off, vals) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected finite:<offset>:<signs>, found {text:?}")))?;
            let offset = off
                .parse()
                .map_err(|_| Error::Parse(format!("bad offset {off:?}")))?;
            return OmegaWord::finite(offset, signs(vals)?);
        }
        OmegaWord::periodic(signs(text.strip_prefix("periodic:").unwrap_or(text))?)
    }

    pub fn at(&self, n: i64) -> i8 {
        match self {
            OmegaWord::Periodic(p) => p[n.rem_euclid(p.len() as i64) as usize],
            OmegaWord::Finite { offset, values } => {
                let i = n - offset;
                if i >= 0 && (i as usize) < values.len() {
                    values[i as usize]
                } else {
                    1
                }
            }
        }
    }

    /// `(σ^k ω)_n = ω_{n-k}`.
    pub fn shift(&self, k: i64) -> OmegaWord {
        match self {
            OmegaWord::Periodic(p) => {
                let len = p.len() as i64;
                OmegaWord::Periodic((0..len).map(|n| p[(n - k).rem_euclid(len) as usize]).collect())
            }
            OmegaWord::Finite { offset, values } => OmegaWord::Finite {
                offset: offset + k,
                values: values.clone(),
            },
        }
    }
}

impl fmt::Display for OmegaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs = |v: &[i8]| v.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect::<String>();
        match self {
            OmegaWord::Periodic(p) => write!(f, "periodic:{}", signs(p)),
            OmegaWord::Finite { offset, values } => write!(f, "finite:{offset}:{}", signs(values)),
        }
    }
}

/// Decides whether the two words lie in the same orbit of the bilateral
/// shift. Both must be periodic or both finite.
pub fn shift_orbit_equal(a: &OmegaWord, b: &OmegaWord) -> Result<bool> {
    match (a, b) {
        (OmegaWord::Periodic(p), OmegaWord::Periodic(q)) => {
            Ok(p.len() == q.len() && (0..p.len() as i64).any(|k| &a.shift(k) == b))
        }
        (OmegaWord::Finite { values: v, .. }, OmegaWord::Finite { values: w, .. }) => Ok(v == w),
        _ => Err(Error::Unsupported(
            "shift-orbit comparison of a periodic and a finite word".into(),
        )),
    }
}

/// The base map on `[0, 1/2]`: fixes the endpoints and sends `1/4` to `3/8`;
/// identity outside.
pub fn example_g_local() -> PlMap {
    PlMap::from_points(
        &[(int(0), int(0)), (rat(1, 4), rat(3, 8)), (rat(1, 2), rat(1, 2))],
        Rational::one(),
        Rational::one(),
    )
    .expect("increasing points")
}

/// Indices `n` with `[n/2, (n+1)/2] + shift` meeting the interior of the
/// window.
fn half_cells(window: &Window, shift: &Rational) -> std::ops::RangeInclusive<i64> {
    let two = int(2);
    let lo: Rational = ((window.left() - shift) * &two).floor();
    let hi: Rational = ((window.right() - shift) * &two).ceil();
    let lo: i64 = lo.to_integer().try_into().expect("window fits in i64");
    let hi: i64 = i64::try_from(hi.to_integer()).expect("window fits in i64") - 1;
    lo..=hi
}

fn periodic_patch(local: impl Fn(i64) -> PlMap, window: &Window, shift: &Rational) -> PlMap {
    let patches: Vec<(Rational, Rational, PlMap)> = half_cells(window, shift)
        .map(|n| {
            let a = rat(n, 2) + shift;
            let b = rat(n + 1, 2) + shift;
            let f = local(n).translate_conjugate(&a);
            (a, b, f)
        })
        .collect();
    PlMap::patch(&patches).expect("cells are disjoint and fixed at their ends")
}

/// `g_ω` assembled on every half-cell meeting the window; identity outside.
pub fn g_omega(omega: &OmegaWord, window: &Window) -> PlMap {
    let g = example_g_local();
    let g_inv = g.invert();
    periodic_patch(|n| if omega.at(n) > 0 { g.clone() } else { g_inv.clone() }, window, &Rational::zero())
}

/// `h = T_{1/4} g T_{-1/4}` on every shifted half-cell meeting the window.
pub fn h_map(window: &Window) -> PlMap {
    let g = example_g_local();
    periodic_patch(|_| g.clone(), window, &rat(1, 4))
}

/// The action `(g_ω, h)` of the free group `⟨g, h⟩`, exact on `window`.
pub fn f2_family(omega: &OmegaWord, window: &Window) -> Result<Representation> {
    Representation::windowed(
        MarkedGroup::free(&["g", "h"]),
        vec![g_omega(omega, window), h_map(window)],
        window.clone(),
    )
}

/// Sign of `g_ω - id` on the interior of each half-cell `n ∈ range`.
pub fn sign_pattern(g: &PlMap, range: std::ops::Range<i64>) -> Vec<Ordering> {
    range
        .map(|n| {
            let mid = rat(2 * n + 1, 4);
            g.evaluate(&mid).cmp(&mid)
        })
        .collect()
}

/// The affine action `a ↦ x·n/m`, `b ↦ x + 1` of `⟨a, b | a b^m a⁻¹ = b^n⟩`.
pub fn bs_affine(m: u32, n: u32) -> Result<Representation> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("BS parameters must be positive".into()));
    }
    Representation::new(
        bs_group(m, n),
        vec![
            PlMap::affine(rat(n as i64, m as i64), Rational::zero())?,
            PlMap::translation(Rational::one()),
        ],
    )
}

pub fn bs_group(m: u32, n: u32) -> MarkedGroup {
    let relator = Word::from_syllables([(0, 1), (1, m as i64), (0, -1), (1, -(n as i64))]);
    MarkedGroup::new(vec!["a".into(), "b".into()], vec![relator]).expect("valid names")
}

/// Default non-affine endpoint: through `(0,0)`, `(m/2, n/4)`, `(m, n)`.
pub fn bs_default_surrogate(m: u32, n: u32) -> PlMap {
    let (m, n) = (m as i64, n as i64);
    PlMap::from_points(
        &[(int(0), int(0)), (rat(m, 2), rat(n, 4)), (int(m), int(n))],
        Rational::one(),
        Rational::one(),
    )
    .expect("increasing points")
}

/// The point `s` of the path between two lifts `ψ0`, `ψ1`, each read on the
/// fundamental window `[0, m]` and required to send it onto `[0, n]`. The
/// convex combination is extended by `ψ(x + m) = ψ(x) + n` over
/// `[-periods·m, periods·m]` and by `x ↦ x·n/m` beyond, so the relator holds
/// exactly on the window.
pub fn bs_path(m: u32, n: u32, s: &Rational, psi0: &PlMap, psi1: &PlMap, periods: u32) -> Result<Representation> {
    if m == 0 || n == 0 || periods == 0 {
        return Err(Error::Precondition("BS parameters and periods must be positive".into()));
    }
    let (mr, nr) = (int(m as i64), int(n as i64));
    for (name, psi) in [("psi0", psi0), ("psi1", psi1)] {
        if !psi.evaluate(&Rational::zero()).is_zero() || psi.evaluate(&mr) != nr {
            return Err(Error::Precondition(format!(
                "{name} does not send [0, {m}] onto [0, {n}]: {name}(0) = {}, {name}({m}) = {}",
                psi.evaluate(&Rational::zero()),
                psi.evaluate(&mr)
            )));
        }
    }
    let psi = psi0.convex_combination(psi1, s)?;
    let mut nodes: Vec<Rational> = psi
        .breakpoints()
        .iter()
        .filter(|x| x.is_positive() && **x < mr)
        .cloned()
        .collect();
    nodes.insert(0, Rational::zero());
    let k = periods as i64;
    let mut points = Vec::new();
    for j in -k..k {
        let dx = &mr * int(j);
        let dy = &nr * int(j);
        for x in &nodes {
            points.push((x + &dx, psi.evaluate(x) + &dy));
        }
    }
    points.push((&mr * int(k), &nr * int(k)));
    let slope = rat(n as i64, m as i64);
    let a = PlMap::from_points(&points, slope.clone(), slope)?;
    let window = Window::new(&mr * int(-k), &mr * int(k))?;
    Representation::windowed(bs_group(m, n), vec![a, PlMap::translation(Rational::one())], window)
}


/// The Brin–Navas action `⟨f, w_0⟩` with its tower `w_k = f^k w_0 f^{-k}`.
#[derive(Clone, Debug)]
pub struct BrinNavas {
    pub rep: Representation,
    pub support: (Rational, Rational),
}

impl BrinNavas {
    pub fn f(&self) -> &PlMap {
        &self.rep.generators()[0]
    }

    pub fn w0(&self) -> &PlMap {
        &self.rep.generators()[1]
    }

    /// `w_k = f^k w_0 f^{-k}`.
    pub fn w(&self, k: i64) -> PlMap {
        self.w0().conjugate_by(&self.f().power(k))
    }

    /// `w_1^i w_0 w_1^{-i}`.
    pub fn shifted_w0(&self, i: i64) -> PlMap {
        self.w0().conjugate_by(&self.w(1).power(i))
    }

    /// The action of `⟨w_0, w_1 w_0 w_1⁻¹⟩`.
    pub fn base_pair(&self) -> Representation {
        Representation::new(MarkedGroup::free(&["u", "v"]), vec![self.w0().clone(), self.shifted_w0(1)])
            .expect("free group")
    }
}

/// Validates the preconditions with exact arithmetic.
pub fn brin_navas(f: PlMap, w0: PlMap) -> Result<BrinNavas> {
    let bps = w0.breakpoints();
    let (lo, hi) = match (bps.first(), bps.last()) {
        (Some(a), Some(b)) => (a - int(1), b + int(1)),
        _ => return Err(Error::Precondition("w0 has empty support".into())),
    };
    if !w0.pieces()[0].is_identity() || !w0.pieces()[w0.pieces().len() - 1].is_identity() {
        return Err(Error::Precondition("w0 must have compact support".into()));
    }
    let outer = Window::new(lo, hi)?;
    let support = w0.support_components(&outer);
    let (x, y) = match support.as_slice() {
        [(x, y)] => (x.clone(), y.clone()),
        [] => return Err(Error::Precondition("w0 has empty support".into())),
        _ => return Err(Error::Precondition("support of w0 is not a single interval".into())),
    };
    let fixed = f.fixed_set(&Window::new(x.clone(), y.clone())?);
    let inside: Vec<_> = fixed
        .fixed
        .iter()
        .filter(|c| !c.contains(&x) && !c.contains(&y))
        .collect();
    if inside.len() != 1 || !matches!(inside[0], crate::plmap::FixedComponent::Point(_)) || fixed.fixed.len() != 1 {
        return Err(Error::Precondition(format!(
            "f must have a unique fixed point in ({x}, {y})"
        )));
    }
    let fx = f.evaluate(&x);
    if fx >= x {
        return Err(Error::Precondition(format!("f({x}) = {fx} is not < {x}")));
    }
    let fy = f.evaluate(&y);
    if fy <= y {
        return Err(Error::Precondition(format!("f({y}) = {fy} is not > {y}")));
    }
    let lhs = w0.evaluate(&f.preimage(&x));
    let rhs = f.preimage(&y);
    if lhs != rhs {
        return Err(Error::Precondition(format!(
            "w0(f^-1({x})) = {lhs} differs from f^-1({y}) = {rhs}"
        )));
    }
    let rep = Representation::new(MarkedGroup::free(&["f", "w"]), vec![f, w0])?;
    Ok(BrinNavas {
        rep,
        support: (x, y),
    })
}

/// `f(t) = 2t` and `w_0` through `(-1,-1)`, `(-1/2, 1/2)`, `(1,1)`.
pub fn brin_navas_default() -> BrinNavas {
    let f = PlMap::affine(int(2), Rational::zero()).expect("positive slope");
    let w0 = PlMap::from_points(
        &[(int(-1), int(-1)), (rat(-1, 2), rat(1, 2)), (int(1), int(1))],
        Rational::one(),
        Rational::one(),
    )
    .expect("increasing points");
    brin_navas(f, w0).expect("default instance satisfies the preconditions")
}

/// `4^{-(n+1)}`.
pub fn dyadic_scale(n: u32) -> Rational {
    pow2(-2 * (n as i64 + 1))
}

const F_INF: [(i64, i64, i64, i64); 7] = [
    (-1, 4, -1, 4),
    (-3, 16, -1, 8),
    (-1, 8, -1, 16),
    (0, 1, 0, 1),
    (1, 16, 1, 8),
    (1, 8, 3, 16),
    (1, 4, 1, 4),
];

fn f_points(n: Option<u32>) -> Vec<(Rational, Rational)> {
    let mut points = Vec::new();
    for &(a, b, c, d) in &F_INF {
        if a == 0 {
            if let Some(n) = n {
                let delta = dyadic_scale(n);
                points.push((-&delta / int(4), -&delta / int(8)));
                points.push((&delta / int(8), &delta / int(4)));
                continue;
            }
        }
        points.push((rat(a, b), rat(c, d)));
    }
    points
}

/// Limit map on `I = (-1/4, 1/4)`: fixes 0, above the identity elsewhere on
/// `I`, identity outside.
pub fn dyadic_limit() -> PlMap {
    PlMap::from_points(&f_points(None), Rational::one(), Rational::one()).expect("increasing points")
}

/// `f_n`: equal to the limit map outside `[-δ/4, δ/8]`, `δ = 4^{-(n+1)}`,
/// and `x + δ/8` inside.
pub fn dyadic_sequence(n: u32) -> Result<PlMap> {
    if n == 0 {
        return Err(Error::Precondition("dyadic sequence is indexed from 1".into()));
    }
    PlMap::from_points(&f_points(Some(n)), Rational::one(), Rational::one())
}

/// The interval `I = (-1/4, 1/4)` as a closed window.
pub fn dyadic_interval() -> Window {
    Window::new(rat(-1, 4), rat(1, 4)).expect("nonempty")
}

/// Checks the three properties of the sequence at index `n` against every
/// `m <= n`: strictly above the identity on the open interval, agreement
/// with `f_m` outside `(-4^{-(m+1)}, 4^{-(m+1)})`, and `f_n(0) < 4^{-(n+1)}`.
pub fn check_dyadic_sequence(n: u32) -> Result<()> {
    let fnm = dyadic_sequence(n)?;
    let i = dyadic_interval();
    // f - id is PL, so its infimum over the open interval is the minimum over
    // interior breakpoints and the one-sided limits at the ends, which are the
    // end slopes' behaviour: both ends are fixed, so check the adjacent pieces.
    let interior_min = fnm
        .breakpoints()
        .iter()
        .filter(|x| i.left() < *x && *x < i.right())
        .map(|x| fnm.evaluate(x) - x)
        .min()
        .unwrap_or_else(Rational::zero);
    let left_piece = fnm.piece_at(&(i.left() + rat(1, 1 << 20)));
    let right_piece = fnm.piece_at(&(i.right() - rat(1, 1 << 20)));
    if !interior_min.is_positive() || left_piece.slope <= Rational::one() || right_piece.slope >= Rational::one() {
        return Err(Error::Precondition(format!("f_{n} is not above the identity on I")));
    }
    for m in 1..=n {
        let fm = dyadic_sequence(m)?;
        let d = dyadic_scale(m);
        let outside = [
            Window::new(int(-1), -&d)?,
            Window::new(d.clone(), int(1))?,
        ];
        if outside.iter().any(|w| !fnm.agrees_on(&fm, w)) {
            return Err(Error::Precondition(format!("f_{n} and f_{m} differ outside the scale-{m} interval")));
        }
        // agreement beyond [-1, 1] is automatic: both are the identity there
    }
    if fnm.evaluate(&Rational::zero()) >= dyadic_scale(n) {
        return Err(Error::Precondition(format!("f_{n}(0) is not below 4^-{}", n + 1)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> Window {
        Window::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn omega_canonical_forms_and_shift() {
        let p = OmegaWord::parse("+-+-").unwrap();
        assert_eq!(p, OmegaWord::Periodic(vec![1, -1]));
        assert_eq!(p.shift(1), OmegaWord::parse("-+").unwrap());
        assert_eq!(p.shift(1).at(0), -1);
        let f = OmegaWord::parse("finite:2:++-+-++").unwrap();
        assert_eq!(f, OmegaWord::Finite { offset: 4, values: vec![-1, 1, -1] });
        assert_eq!(f.at(4), -1);
        assert_eq!(f.at(5), 1);
        assert_eq!(f.shift(1).at(5), -1);
        assert_eq!(OmegaWord::parse(&f.to_string()).unwrap(), f);
        assert!(OmegaWord::parse("+x").is_err());
    }

    #[test]
    fn shift_orbit_oracle() {
        let a = OmegaWord::parse("+-").unwrap();
        let b = OmegaWord::parse("-+").unwrap();
        assert!(shift_orbit_equal(&a, &b).unwrap());
        let c = OmegaWord::parse("++-").unwrap();
        let d = OmegaWord::parse("+--").unwrap();
        assert!(!shift_orbit_equal(&c, &d).unwrap());
        assert!(shift_orbit_equal(&c, &c.shift(5)).unwrap());
        let f = OmegaWord::parse("finite:0:-").unwrap();
        assert!(shift_orbit_equal(&f, &f.shift(-3)).unwrap());
        assert!(matches!(shift_orbit_equal(&a, &f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn base_map_fixed_set() {
        let g = g_omega(&OmegaWord::constant_plus(), &w(-2, 2));
        assert_eq!(g.evaluate(&int(0)), int(0));
        let fs = g.fixed_set(&w(0, 1));
        assert_eq!(
            fs.fixed,
            vec![
                crate::plmap::FixedComponent::Point(int(0)),
                crate::plmap::FixedComponent::Point(rat(1, 2)),
                crate::plmap::FixedComponent::Point(int(1)),
            ]
        );
        assert!(fs.moved.iter().all(|c| c.sign == Ordering::Greater));
        let h = h_map(&w(-2, 2));
        assert_eq!(h.evaluate(&rat(1, 4)), rat(1, 4));
        assert_eq!(h.evaluate(&rat(1, 2)), rat(1, 2) + rat(1, 8));
    }

    #[test]
    fn shift_conjugacy_on_window() {
        let omega = OmegaWord::parse("+--").unwrap();
        let big = w(-4, 4);
        let small = w(-3, 3);
        let g = g_omega(&omega, &big).translate_conjugate(&rat(1, 2));
        assert!(g.agrees_on(&g_omega(&omega.shift(1), &big), &small));
        let flipped = OmegaWord::finite(0, vec![-1]).unwrap();
        let s0 = sign_pattern(&g_omega(&OmegaWord::constant_plus(), &big), 0..1);
        let s1 = sign_pattern(&g_omega(&flipped, &big), 0..1);
        assert_ne!(s0, s1);
        f2_family(&omega, &big).unwrap();
    }

    #[test]
    fn baumslag_solitar_relators() {
        bs_affine(1, 1).unwrap();
        let rep = bs_affine(2, 3).unwrap();
        let r = rep.group().relators()[0].clone();
        assert!(rep.evaluate_word(&r).unwrap().is_identity());
        let psi1 = PlMap::affine(rat(3, 2), int(0)).unwrap();
        let psi0 = bs_default_surrogate(2, 3);
        for s in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            bs_path(2, 3, &s, &psi0, &psi1, 3).unwrap();
        }
        let at1 = bs_path(2, 3, &int(1), &psi0, &psi1, 3).unwrap();
        assert_eq!(at1.generators()[0], psi1);
        let bad = PlMap::affine(int(1), int(0)).unwrap();
        assert!(bs_path(2, 3, &int(0), &bad, &psi1, 3).is_err());
    }

    #[test]
    fn brin_navas_default_instance() {
        let bn = brin_navas_default();
        assert_eq!(bn.support, (int(-1), int(1)));
        let c = bn.shifted_w0(1);
        assert_eq!(c.support_components(&w(-4, 4)), vec![(int(1), rat(5, 3))]);
        let w0 = bn.w0();
        let comm = w0.compose(&c).compose(&w0.invert()).compose(&c.invert());
        assert!(comm.is_identity());
        assert!(brin_navas(bn.f().clone(), PlMap::identity()).is_err());
        for k in 0..4 {
            let s = pow2(k);
            assert_eq!(bn.w(k).support_components(&w(-32, 32)), vec![(-&s, s)]);
        }
    }

    #[test]
    fn dyadic_sequence_properties() {
        for n in 1..=6 {
            check_dyadic_sequence(n).unwrap();
            assert!(dyadic_sequence(n).unwrap().is_dyadic());
        }
        assert!(dyadic_limit().is_dyadic());
        assert_eq!(dyadic_limit().evaluate(&int(0)), int(0));
        assert!(dyadic_sequence(4).unwrap().evaluate(&int(0)) < pow2(-10));
        assert!(dyadic_sequence(0).is_err());
    }
}
