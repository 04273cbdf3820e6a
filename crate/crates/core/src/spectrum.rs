//! Spectra as finite multisets with a completeness window.
//!
//! A [`Spectrum`] holds `(eigenvalue, multiplicity)` pairs sorted by
//! eigenvalue, plus a window `L`: every eigenvalue with `|λ| ≤ L` is
//! present with its full multiplicity. Entries beyond the window may
//! exist but make no completeness claim.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_traits::Zero;
use serde_json::{json, Value};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::exact::{fmt_q, parse_q, ExactReal, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    dim: usize,
    volume: Option<f64>,
    window: Option<ExactReal>,
    entries: Vec<(ExactReal, u64)>,
}

/// Finite-window Weyl diagnostics. `ratio` is `None` at `λ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylReport {
    pub lambda: f64,
    pub count: u64,
    pub ratio: Option<f64>,
    pub limit_constant: f64,
}

impl Spectrum {
    /// Sorts the entries and merges equal eigenvalues by adding
    /// multiplicities. Zero multiplicities are rejected.
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = (ExactReal, u64)>,
        window: Option<ExactReal>,
        volume: Option<f64>,
    ) -> Result<Self> {
        if let Some(w) = &window {
            if w.is_negative() {
                return Err(Error::InvalidSpectrum(format!("negative window {w}")));
            }
        }
        if let Some(v) = volume {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidSpectrum(format!("volume {v} is not positive")));
            }
        }
        let mut merged: BTreeMap<ExactReal, u64> = BTreeMap::new();
        for (lambda, mult) in entries {
            if mult == 0 {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalue {lambda} has multiplicity 0"
                )));
            }
            *merged.entry(lambda).or_insert(0) += mult;
        }
        Ok(Spectrum {
            dim,
            volume,
            window,
            entries: merged.into_iter().collect(),
        })
    }

    pub fn empty(dim: usize, window: Option<ExactReal>) -> Self {
        Spectrum {
            dim,
            volume: None,
            window,
            entries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume(&self) -> Option<f64> {
        self.volume
    }

    pub fn window(&self) -> Option<&ExactReal> {
        self.window.as_ref()
    }

    pub fn entries(&self) -> &[(ExactReal, u64)] {
        &self.entries
    }

    pub fn with_volume(mut self, volume: f64) -> Self {
        self.volume = Some(volume);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity_of(&self, lambda: &ExactReal) -> u64 {
        self.entries
            .binary_search_by(|(l, _)| l.cmp(lambda))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Eigenvalues repeated according to multiplicity, ascending.
    pub fn expanded(&self) -> Vec<ExactReal> {
        self.entries
            .iter()
            .flat_map(|(l, m)| std::iter::repeat_n(l.clone(), *m as usize))
            .collect()
    }

    /// Restriction to `|λ| ≤ bound`, with the window lowered accordingly.
    pub fn truncated(&self, bound: &ExactReal) -> Spectrum {
        let bound = bound.abs();
        let window = self.window.as_ref().map(|w| {
            if w.cmp_abs(&bound) == Ordering::Greater {
                bound.clone()
            } else {
                w.clone()
            }
        });
        Spectrum {
            dim: self.dim,
            volume: self.volume,
            window,
            entries: self
                .entries
                .iter()
                .filter(|(l, _)| l.cmp_abs(&bound) != Ordering::Greater)
                .cloned()
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "volume": self.volume,
            "window": self.window.as_ref().map(exact_to_json),
            "entries": self
                .entries
                .iter()
                .map(|(l, m)| json!([exact_to_json(l), m]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidSpectrum(m.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing dim"))? as usize;
        let volume = match obj.get("volume") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_f64().ok_or_else(|| bad("volume must be a number"))?),
        };
        let window = match obj.get("window") {
            None | Some(Value::Null) => None,
            Some(v) => Some(exact_from_json(v)?),
        };
        let mut entries = Vec::new();
        for e in obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing entries"))?
        {
            let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("entry must be [lambda, mult]"))?;
            let mult = pair[1].as_u64().ok_or_else(|| bad("multiplicity must be a nonnegative integer"))?;
            entries.push((exact_from_json(&pair[0])?, mult));
        }
        Spectrum::new(dim, entries, window, volume)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("eigenvalue,multiplicity\n");
        for (l, m) in &self.entries {
            out.push_str(&format!("{l},{m}\n"));
        }
        out
    }
}

/// JSON form of an exact scalar: `"p/q"` for rationals, `{"pi_coeff": "p/q"}`
/// for rational multiples of π, and `{"sqrt"|"pi_sqrt": "r", "sign": ±1}`
/// for the remaining surds.
pub fn exact_to_json(x: &ExactReal) -> Value {
    if let Some(r) = x.as_rational() {
        return Value::String(fmt_q(&r));
    }
    if let Some(c) = x.as_pi_multiple() {
        return json!({ "pi_coeff": fmt_q(&c) });
    }
    let sign = if x.is_negative() { -1 } else { 1 };
    let key = if x.has_pi() { "pi_sqrt" } else { "sqrt" };
    json!({ key: fmt_q(x.radicand()), "sign": sign })
}

pub fn exact_from_json(v: &Value) -> Result<ExactReal> {
    let bad = || Error::InvalidSpectrum(format!("not an exact scalar: {v}"));
    match v {
        Value::String(s) => Ok(ExactReal::rational(parse_q(s)?)),
        Value::Number(n) => n
            .as_i64()
            .map(|i| ExactReal::rational(Q::from_integer(i.into())))
            .ok_or_else(bad),
        Value::Object(o) => {
            if let Some(c) = o.get("pi_coeff").and_then(Value::as_str) {
                return Ok(ExactReal::pi_multiple(parse_q(c)?));
            }
            let sign = o.get("sign").and_then(Value::as_i64).ok_or_else(bad)?;
            let (pi, r) = match (o.get("sqrt"), o.get("pi_sqrt")) {
                (Some(r), None) => (false, r),
                (None, Some(r)) => (true, r),
                _ => return Err(bad()),
            };
            let r = parse_q(r.as_str().ok_or_else(bad)?)?;
            if r < Q::zero() || !(sign == 1 || sign == -1) {
                return Err(bad());
            }
            Ok(ExactReal::from_parts(sign < 0, pi, r))
        }
        _ => Err(bad()),
    }
}

/// `N(λ)`: total multiplicity of eigenvalues with `|eigenvalue| ≤ λ`.
pub fn counting_function(s: &Spectrum, lambda: &ExactReal) -> Result<u64> {
    let window = s.window().ok_or(Error::NoWindow)?;
    if !lambda.is_negative() && lambda.cmp_abs(window) == Ordering::Greater {
        return Err(Error::WindowExceeded {
            lambda: lambda.to_string(),
            window: window.to_string(),
        });
    }
    if lambda.is_negative() {
        return Ok(0);
    }
    Ok(s.entries
        .iter()
        .filter(|(l, _)| l.cmp_abs(lambda) != Ordering::Greater)
        .map(|(_, m)| m)
        .sum())
}

/// `2^[n/2]·vol / ((4π)^(n/2)·Γ(n/2 + 1))`.
pub fn weyl_constant(dim: usize, volume: f64) -> f64 {
    let n = dim as f64;
    let rank = 2f64.powi((dim / 2) as i32);
    rank * volume / ((4.0 * PI).powf(n / 2.0) * gamma(n / 2.0 + 1.0))
}

pub fn weyl_report(s: &Spectrum, lambda: &ExactReal) -> Result<WeylReport> {
    let volume = s.volume().ok_or(Error::MissingVolume)?;
    let count = counting_function(s, lambda)?;
    let l = lambda.to_f64();
    let ratio = if lambda.is_zero() || lambda.is_negative() {
        None
    } else {
        Some(count as f64 / l.powi(s.dim() as i32))
    };
    Ok(WeylReport {
        lambda: l,
        count,
        ratio,
        limit_constant: weyl_constant(s.dim(), volume),
    })
}

/// True when every nonzero `(λ, m)` has a partner `(λ', m)` with
/// `|λ + λ'| ≤ tol`. Exact negatives are found without rounding.
pub fn spectrum_symmetric(s: &Spectrum, tol: f64) -> bool {
    s.entries.iter().filter(|(l, _)| !l.is_zero()).all(|(l, m)| {
        if s.multiplicity_of(&l.neg()) == *m {
            return true;
        }
        let target = l.to_f64();
        s.entries
            .iter()
            .any(|(o, om)| om == m && (target + o.to_f64()).abs() <= tol)
    })
}

/// η of a spectrum whose nonzero part is exactly symmetric: the η-series
/// cancels term by term. `None` when the spectrum is not exactly symmetric.
pub fn symmetric_eta(s: &Spectrum) -> Option<Q> {
    s.entries
        .iter()
        .all(|(l, m)| l.is_zero() || s.multiplicity_of(&l.neg()) == *m)
        .then(Q::zero)
}

/// Largest `|λ_j − λ'_j|` after sorted-order pairing.
///
/// Both spectra are cut to the smaller of the two windows, expanded with
/// multiplicity in ascending order, and paired index by index over the
/// common length.
pub fn paired_deviation(a: &Spectrum, b: &Spectrum) -> Result<f64> {
    let (wa, wb) = match (a.window(), b.window()) {
        (Some(wa), Some(wb)) => (wa, wb),
        _ => {
            return Err(Error::IncompatibleWindow(
                "both spectra need a certified window".into(),
            ))
        }
    };
    if a.dim() != b.dim() {
        return Err(Error::IncompatibleWindow(format!(
            "dimensions differ ({} vs {})",
            a.dim(),
            b.dim()
        )));
    }
    let w = if wa.cmp_abs(wb) == Ordering::Greater { wb } else { wa };
    let xs = a.truncated(w).expanded();
    let ys = b.truncated(w).expanded();
    Ok(xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            if x == y {
                0.0
            } else {
                (x.to_f64() - y.to_f64()).abs()
            }
        })
        .fold(0.0, f64::max))
}
