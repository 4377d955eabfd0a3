//! Eventually periodic points of the binary odometer.
//!
//! A point of `{0,1}^ℕ` (little-endian digits) is identified with a 2-adic
//! integer; eventually periodic sequences are exactly the rationals with odd
//! denominator, so odometer steps are exact rational additions.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, pow2, Rational};

/// `preword · period^∞` in canonical form: minimal period, longest possible
/// periodic tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CantorPoint {
    preword: Vec<u8>,
    period: Vec<u8>,
}

impl CantorPoint {
    pub fn new(preword: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("period must be nonempty".into()));
        }
        if preword.iter().chain(&period).any(|&d| d > 1) {
            return Err(Error::Parse("digits must be 0 or 1".into()));
        }
        let raw = CantorPoint { preword, period };
        Ok(CantorPoint::from_two_adic(&raw.to_two_adic()))
    }

    /// `0^∞`, the distinguished point `x_0`.
    pub fn zero() -> Self {
        CantorPoint {
            preword: vec![],
            period: vec![0],
        }
    }

    /// `(01)^∞`, the default base point off the orbit of `x_0`.
    pub fn default_base() -> Self {
        CantorPoint {
            preword: vec![],
            period: vec![0, 1],
        }
    }

    /// Parses `pre(period)`, e.g. `1(01)` or `(0)`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected digits followed by (period), found {text:?}"));
        let (pre, rest) = text.split_once('(').ok_or_else(bad)?;
        let period = rest.strip_suffix(')').ok_or_else(bad)?;
        let digits = |s: &str| -> Result<Vec<u8>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(bad()),
                })
                .collect()
        };
        CantorPoint::new(digits(pre)?, digits(period)?)
    }

    pub fn preword(&self) -> &[u8] {
        &self.preword
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn digit(&self, i: usize) -> u8 {
        if i < self.preword.len() {
            self.preword[i]
        } else {
            self.period[(i - self.preword.len()) % self.period.len()]
        }
    }

    /// The sequence as a 2-adic integer `Σ d_i 2^i`.
    pub fn to_two_adic(&self) -> Rational {
        let value = |ds: &[u8]| -> Rational {
            ds.iter()
                .enumerate()
                .filter(|(_, &d)| d == 1)
                .map(|(i, _)| pow2(i as i64))
                .fold(Rational::zero(), |a, b| a + b)
        };
        let p = self.period.len() as i64;
        let tail = value(&self.period) / (Rational::one() - pow2(p));
        value(&self.preword) + pow2(self.preword.len() as i64) * tail
    }

    /// Inverse of [`to_two_adic`](Self::to_two_adic). Panics on an even
    /// denominator, which is not a 2-adic integer.
    pub fn from_two_adic(q: &Rational) -> Self {
        assert!(q.denom().is_odd(), "not a 2-adic integer: {q}");
        let mut seen: HashMap<Rational, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut state = q.clone();
        loop {
            if let Some(&start) = seen.get(&state) {
                return CantorPoint {
                    preword: digits[..start].to_vec(),
                    period: digits[start..].to_vec(),
                };
            }
            seen.insert(state.clone(), digits.len());
            let d: u8 = if state.numer().is_odd() { 1 } else { 0 };
            digits.push(d);
            state = (state - int(d as i64)) / int(2);
        }
    }

    /// `φ^k(x)`: binary addition of `k` with carry.
    pub fn odometer_step(&self, k: i64) -> CantorPoint {
        if k == 0 {
            return self.clone();
        }
        CantorPoint::from_two_adic(&(self.to_two_adic() + Rational::from_integer(BigInt::from(k))))
    }

    pub fn is_x0(&self) -> bool {
        self.preword.is_empty() && self.period == [0]
    }

    /// Points of the odometer orbit of `0^∞` are the eventually constant
    /// sequences.
    pub fn on_orbit_of_x0(&self) -> bool {
        self.period == [0] || self.period == [1]
    }

    /// Index `n >= 1` of the clopen set `C_n = {0^{n-1} 1 ...}` containing
    /// the point; `None` for `x_0`.
    pub fn cylinder_index(&self) -> Option<usize> {
        if self.is_x0() {
            return None;
        }
        (0..).find(|&i| self.digit(i) == 1).map(|i| i + 1)
    }

    /// Whether the sequence starts with `prefix`.
    pub fn starts_with(&self, prefix: &[u8]) -> bool {
        prefix.iter().enumerate().all(|(i, &d)| self.digit(i) == d)
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.preword {
            write!(f, "{d}")?;
        }
        write!(f, "(")?;
        for d in &self.period {
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CantorPoint {
        CantorPoint::parse(s).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(p("0101(01)"), p("(01)"));
        assert_eq!(p("(0101)"), p("(01)"));
        assert_eq!(p("1(10)"), p("11(01)"));
        assert_eq!(p("(0)").to_string(), "(0)");
        assert!(CantorPoint::parse("12(0)").is_err());
        assert!(CantorPoint::parse("1()").is_err());
    }

    #[test]
    fn odometer_examples() {
        assert_eq!(p("(0)").odometer_step(1), p("1(0)"));
        assert_eq!(p("(1)").odometer_step(1), p("(0)"));
        assert_eq!(p("(01)").odometer_step(1), p("11(01)"));
        assert_eq!(p("(0)").odometer_step(-1), p("(1)"));
        let x = p("(01)");
        assert_eq!(x.odometer_step(5).odometer_step(-12), x.odometer_step(-7));
    }

    #[test]
    fn prefix_agreement_after_power_of_two_steps() {
        let x = p("(01)");
        for n in 0..10 {
            let y = x.odometer_step(1 << n);
            assert!((0..n).all(|i| x.digit(i) == y.digit(i)));
        }
    }

    #[test]
    fn cylinders() {
        assert_eq!(p("(0)").cylinder_index(), None);
        assert_eq!(p("1(0)").cylinder_index(), Some(1));
        assert_eq!(p("(01)").cylinder_index(), Some(2));
        assert_eq!(p("0001(0)").cylinder_index(), Some(4));
        assert!(p("0001(0)").on_orbit_of_x0());
        assert!(!p("(01)").on_orbit_of_x0());
    }
}
