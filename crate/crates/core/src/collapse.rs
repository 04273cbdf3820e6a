//! Adiabatic limits of circle bundles `S¹ → M → N` whose fibers have
//! length `2πℓ`, `ℓ → 0`.
//!
//! Eigenvalues `λ_{j,k}(ℓ)` satisfy `ℓ·λ_{j,k}(ℓ) → k`, so every family
//! with `k ≠ 0` diverges. For a projectable spin structure `k` runs over
//! `ℤ` and the `k = 0` families converge to the base spectrum `{μ_j}`
//! (even `dim N`) or to `{μ_j} ∪ {−μ_j}` (odd `dim N`). For a
//! nonprojectable one `k` runs over `ℤ + 1/2` and nothing converges.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_q, parse_q, q, Q};
use crate::spectrum::{exact_to_json, Spectrum};
use crate::ExactReal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::InvalidCollapseInput(format!("parity must be even or odd, got {s:?}"))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollapseInput {
    pub projectable: bool,
    pub base_dim_parity: Parity,
    /// Dirac spectrum of the base; required when projectable.
    pub base_spectrum: Option<Spectrum>,
    /// Fiber indices `k`: integers if projectable, else in `ℤ + 1/2`.
    pub k_indices: Vec<Q>,
}

impl CollapseInput {
    pub fn validate(&self) -> Result<()> {
        for k in &self.k_indices {
            let half_integer = (k * q(2, 1)).is_integer() && !k.is_integer();
            if self.projectable && !k.is_integer() {
                return Err(Error::InvalidCollapseInput(format!(
                    "projectable structures have integer k, got {k}"
                )));
            }
            if !self.projectable && !half_integer {
                return Err(Error::InvalidCollapseInput(format!(
                    "nonprojectable structures have k in Z + 1/2, got {k}"
                )));
            }
        }
        if self.projectable && self.base_spectrum.is_none() {
            return Err(Error::MissingBaseSpectrum);
        }
        Ok(())
    }

    /// Reads `{"projectable", "base_dim_parity", "base_spectrum"?, "k_indices"}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidCollapseInput(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected a JSON object"))?;
        let projectable = obj
            .get("projectable")
            .and_then(Value::as_bool)
            .ok_or_else(|| bad("projectable must be a boolean"))?;
        let base_dim_parity = obj
            .get("base_dim_parity")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("base_dim_parity must be \"even\" or \"odd\""))?
            .parse()?;
        let base_spectrum = match obj.get("base_spectrum") {
            None | Some(Value::Null) => None,
            Some(s) => Some(Spectrum::from_json(s)?),
        };
        let k_indices = obj
            .get("k_indices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("k_indices must be an array"))?
            .iter()
            .map(|k| match k {
                Value::String(s) => parse_q(s),
                Value::Number(n) => n
                    .as_i64()
                    .map(|i| Q::from_integer(i.into()))
                    .ok_or_else(|| bad("k must be an integer or a \"p/q\" string")),
                _ => Err(bad("k must be an integer or a \"p/q\" string")),
            })
            .collect::<Result<Vec<_>>>()?;
        let input = CollapseInput {
            projectable,
            base_dim_parity,
            base_spectrum,
            k_indices,
        };
        input.validate()?;
        Ok(input)
    }
}

/// All families `λ_{j,k}`, `j ∈ ℤ`, for one fiber index `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergentFamily {
    pub k: Q,
    /// Limit of `ℓ·λ_{j,k}(ℓ)`.
    pub rescaled_limit: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollapsePrediction {
    pub divergent_families: Vec<DivergentFamily>,
    /// Limits of the bounded families as a multiset.
    pub convergent_limits: Vec<(ExactReal, u64)>,
    /// Window within which the limits are complete (that of the base).
    pub window: Option<ExactReal>,
}

impl CollapsePrediction {
    pub fn limits_expanded(&self) -> Vec<ExactReal> {
        self.convergent_limits
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m as usize))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "divergent_families": self
                .divergent_families
                .iter()
                .map(|f| json!({
                    "j": "all",
                    "k": fmt_q(&f.k),
                    "rescaled_limit": fmt_q(&f.rescaled_limit),
                }))
                .collect::<Vec<_>>(),
            "convergent_limits": self
                .convergent_limits
                .iter()
                .map(|(v, m)| json!([exact_to_json(v), m]))
                .collect::<Vec<_>>(),
            "window": self.window.as_ref().map(exact_to_json),
        })
    }
}

pub fn predict_collapse(inp: &CollapseInput) -> Result<CollapsePrediction> {
    inp.validate()?;
    let mut ks = inp.k_indices.clone();
    ks.sort();
    ks.dedup();
    let divergent_families = ks
        .iter()
        .filter(|k| !k.is_zero())
        .map(|k| DivergentFamily {
            k: k.clone(),
            rescaled_limit: k.clone(),
        })
        .collect();
    let mut limits = Vec::new();
    let mut window = None;
    if inp.projectable && ks.iter().any(Zero::is_zero) {
        let base = inp.base_spectrum.as_ref().ok_or(Error::MissingBaseSpectrum)?;
        window = base.window().cloned();
        for (mu, mult) in base.entries() {
            limits.push((mu.clone(), *mult));
            if inp.base_dim_parity == Parity::Odd {
                limits.push((mu.neg(), *mult));
            }
        }
    }
    let merged = Spectrum::new(0, limits, None, None)?;
    Ok(CollapsePrediction {
        divergent_families,
        convergent_limits: merged.entries().to_vec(),
        window,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrendVerdict {
    pub pass: bool,
    /// `|ℓ·λ − k|` per sample, in input order.
    pub deviations: Vec<f64>,
}

impl TrendVerdict {
    pub fn to_json(&self) -> Value {
        json!({ "pass": self.pass, "deviations": self.deviations })
    }
}

/// Checks user eigenvalue samples `(ℓ, λ)` against `ℓ·λ → k`: the
/// deviations may grow by at most `tol` from one sample to the next and
/// the last one must be at most `tol`.
pub fn check_rescaled_trend(samples: &[(f64, f64)], k: &Q, tol: f64) -> Result<TrendVerdict> {
    if samples.len() < 3 {
        return Err(Error::InsufficientSamples(samples.len()));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::InvalidSamples(format!("tolerance {tol} must be finite and >= 0")));
    }
    if samples.iter().any(|(l, lam)| !(*l > 0.0 && l.is_finite() && lam.is_finite())) {
        return Err(Error::InvalidSamples("fiber scales must be positive and values finite".into()));
    }
    if samples.windows(2).any(|w| w[1].0 >= w[0].0) {
        return Err(Error::InvalidSamples("fiber scales must strictly decrease".into()));
    }
    let k = crate::exact::q_to_f64(k);
    let deviations: Vec<f64> = samples.iter().map(|(l, lam)| (l * lam - k).abs()).collect();
    let monotone = deviations.windows(2).all(|d| d[1] <= d[0] + tol);
    let last = *deviations.last().expect("at least three samples");
    Ok(TrendVerdict {
        pass: monotone && last <= tol,
        deviations,
    })
}

/// Whether a multiset of limits is symmetric about zero.
pub fn limits_symmetric(limits: &[(ExactReal, u64)]) -> bool {
    let find = |v: &ExactReal| {
        limits
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    };
    limits.iter().all(|(v, m)| find(&v.neg()) == *m)
}
