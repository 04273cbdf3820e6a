//! Exact scalars.
//!
//! Every closed-form eigenvalue this crate produces has the shape
//! `±π^p·√r` with `p ∈ {0, 1}` and `r` a nonnegative rational: circle and
//! sphere eigenvalues are rational, flat-torus eigenvalues are `2π|v|`
//! for a vector `v` with rational squared norm. [`ExactReal`] stores that
//! shape directly so that merging and sorting never goes through floats
//! unless two values of different transcendence type meet.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a decimal-free signed integer ratio.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("not a rational number: {text:?}"),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Lossless `p/q` text (`p` alone for integers).
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Floor of a rational as a big integer.
pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// `x mod m` in `[0, m)` for positive rational `m`.
pub fn rem_q(x: &Q, m: &Q) -> Q {
    let k = (x / m).floor();
    x - k * m
}

/// A real number `sign · π^p · √radicand`, `p ∈ {0, 1}`.
///
/// Normal form: zero is always `radicand = 0, negative = false, pi = false`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactReal {
    negative: bool,
    pi: bool,
    radicand: Q,
}

impl ExactReal {
    pub fn zero() -> Self {
        ExactReal {
            negative: false,
            pi: false,
            radicand: Q::zero(),
        }
    }

    pub fn rational(x: Q) -> Self {
        let negative = x.is_negative();
        Self::from_parts(negative, false, &x * &x)
    }

    pub fn pi_multiple(c: Q) -> Self {
        let negative = c.is_negative();
        Self::from_parts(negative, true, &c * &c)
    }

    /// `sign · π^pi · √radicand`; panics on a negative radicand.
    pub fn from_parts(negative: bool, pi: bool, radicand: Q) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if radicand.is_zero() {
            return Self::zero();
        }
        ExactReal {
            negative,
            pi,
            radicand,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn has_pi(&self) -> bool {
        self.pi
    }

    /// Square of the absolute value divided by `π²` when the value carries π.
    pub fn radicand(&self) -> &Q {
        &self.radicand
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        ExactReal {
            negative: !self.negative,
            ..self.clone()
        }
    }

    pub fn abs(&self) -> Self {
        ExactReal {
            negative: false,
            ..self.clone()
        }
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Q> {
        if self.pi && !self.is_zero() {
            return None;
        }
        rational_sqrt(&self.radicand).map(|r| if self.negative { -r } else { r })
    }

    /// The coefficient `c` of `c·π`, when the value is a rational multiple of π.
    pub fn as_pi_multiple(&self) -> Option<Q> {
        if !self.pi {
            return None;
        }
        rational_sqrt(&self.radicand).map(|r| if self.negative { -r } else { r })
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = q_to_f64(&self.radicand).sqrt();
        if self.pi {
            v *= PI;
        }
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// Exact comparison of absolute values.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        if self.pi == other.pi {
            return self.radicand.cmp(&other.radicand);
        }
        // π is transcendental, so nonzero values of different type are never
        // equal; a float comparison decides the order.
        let a = self.abs().to_f64();
        let b = other.abs().to_f64();
        a.partial_cmp(&b)
            .unwrap_or(Ordering::Equal)
            .then(self.pi.cmp(&other.pi))
    }

    /// Multiply by a nonnegative rational.
    pub fn scale(&self, factor: &Q) -> Self {
        assert!(!factor.is_negative());
        Self::from_parts(self.negative, self.pi, &self.radicand * factor * factor)
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_abs(other),
            (true, true) => other.cmp_abs(self),
        }
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Q> for ExactReal {
    fn from(x: Q) -> Self {
        ExactReal::rational(x)
    }
}

impl fmt::Display for ExactReal {
    /// Text form used in CSV output and accepted by [`FromStr`]:
    /// `p/q`, `p/q*pi`, `-sqrt(r)`, `-pi*sqrt(r)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_q(&r));
        }
        if let Some(c) = self.as_pi_multiple() {
            return write!(f, "{}*pi", fmt_q(&c));
        }
        let sign = if self.negative { "-" } else { "" };
        if self.pi {
            write!(f, "{sign}pi*sqrt({})", fmt_q(&self.radicand))
        } else {
            write!(f, "{sign}sqrt({})", fmt_q(&self.radicand))
        }
    }
}

impl FromStr for ExactReal {
    type Err = Error;

    /// Accepts a product of at most one rational coefficient, `pi`, and
    /// `sqrt(r)`, with an optional leading minus: `7/2`, `4pi`, `-2*pi`,
    /// `pi*sqrt(2)`, `3*sqrt(1/2)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            message: format!("bad scalar {s:?}: {m}"),
        };
        let mut t = s.trim().replace(' ', "");
        let mut negative = false;
        if let Some(rest) = t.strip_prefix('-') {
            negative = true;
            t = rest.to_string();
        }
        if t.is_empty() {
            return Err(bad("empty"));
        }
        let mut coef = Q::one();
        let mut pi = false;
        let mut radicand = Q::one();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            rest = rest.trim_start_matches('*');
            if let Some(r) = rest.strip_prefix("pi") {
                if pi {
                    return Err(bad("pi appears twice"));
                }
                pi = true;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("sqrt(") {
                let close = r.find(')').ok_or_else(|| bad("unclosed sqrt"))?;
                let inner = parse_q(&r[..close])?;
                if inner.is_negative() {
                    return Err(bad("negative radicand"));
                }
                radicand *= inner;
                rest = &r[close + 1..];
            } else {
                let end = rest
                    .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                    .unwrap_or(rest.len());
                if end == 0 {
                    return Err(bad("unexpected character"));
                }
                coef *= parse_q(&rest[..end])?;
                rest = &rest[end..];
            }
        }
        let radicand = &coef * &coef * radicand;
        Ok(ExactReal::from_parts(negative && !radicand.is_zero(), pi, radicand))
    }
}
