//! Exact scalars: arbitrary-precision rationals and normalized dyadics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `2^e` for a possibly negative exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `p/q`, or `p` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

/// Display-only decimal rendering. Never feed the result back into the core.
/// Decimal string rounded half away from zero to `digits` places; display
/// only.
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (q * Rational::from_integer(scale.clone())).round().to_integer();
    let (int_part, frac) = scaled.abs().div_rem(&scale);
    let sign = if scaled.is_negative() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>digits$}", frac.to_string())
}

pub fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}

/// True when `q` is `±2^k` for some integer `k`.
pub fn is_power_of_two(q: &Rational) -> bool {
    if !q.is_positive() {
        return false;
    }
    let pow = |n: &BigInt| (n & (n - BigInt::one())).is_zero();
    (q.numer().is_one() && pow(q.denom())) || (q.denom().is_one() && pow(q.numer()))
}

/// A dyadic rational `mantissa / 2^height` in normal form: the mantissa is odd
/// unless the height is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    height: u32,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, height: u32) -> Self {
        let mut d = Dyadic { mantissa, height };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::from_int(0)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic {
            mantissa: BigInt::from(n),
            height: 0,
        }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.height = 0;
            return;
        }
        while self.height > 0 && self.mantissa.is_even() {
            self.mantissa >>= 1u32;
            self.height -= 1;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    /// Minimal height `n` with `self ∈ 2^{-n} ℤ`.
    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::one() << self.height)
    }

    pub fn from_rational(q: &Rational) -> Option<Self> {
        if !is_dyadic(q) {
            return None;
        }
        let height = (q.denom().bits() - 1) as u32;
        Some(Dyadic::new(q.numer().clone(), height))
    }

    fn rescaled(&self, height: u32) -> BigInt {
        debug_assert!(height >= self.height);
        &self.mantissa << (height - self.height)
    }

    pub fn add_int(&self, k: i64) -> Self {
        Dyadic::new(&self.mantissa + (BigInt::from(k) << self.height), self.height)
    }

    pub fn midpoint(&self, other: &Dyadic) -> Self {
        let h = self.height.max(other.height);
        Dyadic::new(self.rescaled(h) + other.rescaled(h), h + 1)
    }

    /// Largest element of `2^{-k} ℤ` that is `<= self`.
    pub fn left_neighbor(&self, k: u32) -> Self {
        if k >= self.height {
            return self.clone();
        }
        let shift = self.height - k;
        Dyadic::new(self.mantissa.div_floor(&(BigInt::one() << shift)), k)
    }

    /// Smallest element of `2^{-k} ℤ` that is `>= self`.
    pub fn right_neighbor(&self, k: u32) -> Self {
        if k >= self.height {
            return self.clone();
        }
        let shift = self.height - k;
        Dyadic::new(self.mantissa.div_ceil(&(BigInt::one() << shift)), k)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let h = self.height.max(other.height);
        self.rescaled(h).cmp(&other.rescaled(h))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}
