//! Poincaré series `F±(z) = Σ μ_{±k} zᵏ` of a spherical space form.
//!
//! For each element the factor `1/det(1 − zγ)` is `Π_j Σ_k U_k(cos θ_j) zᵏ`
//! with `U_k` the Chebyshev polynomials of the second kind. Multiplying a
//! series by one such factor is the three-term recurrence
//! `S_k = P_k + 2cos θ · S_{k−1} − S_{k−2}`, so each element costs
//! `O(mK)` ring operations.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::group::{characters, is_even, GroupKind, SpaceFormGroup, SpinLift};
use super::ring::RingElem;
use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};
use crate::exact::{q, ExactReal, Q};
use crate::sphere::sphere_volume;
use crate::spectrum::Spectrum;

/// Environment variable selecting the character arithmetic.
pub const PRECISION_ENV: &str = "SPINSPEC_PRECISION";

/// Largest residual accepted when rounding floating coefficients.
pub const FLOAT_RESIDUAL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    /// Sums of roots of unity reduced modulo the cyclotomic polynomial.
    #[default]
    Exact,
    /// `Complex64` with compensated summation over the group.
    Float,
}

impl Backend {
    /// Reads [`PRECISION_ENV`]; unset means exact.
    pub fn from_env() -> Result<Backend> {
        match std::env::var(PRECISION_ENV) {
            Ok(v) => v.parse(),
            Err(_) => Ok(Backend::Exact),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Parse {
                line: 0,
                message: format!("precision must be exact or float, got {other:?}"),
            }),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

/// Compensated complex summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KahanSum {
    sum: Complex64,
    carry: Complex64,
}

impl KahanSum {
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareCoeffs {
    /// Multiplicity of `+(n/2 + k)`.
    pub mu_plus: Vec<u64>,
    /// Multiplicity of `−(n/2 + k)`.
    pub mu_minus: Vec<u64>,
}

impl PoincareCoeffs {
    /// Expansion order `K`.
    pub fn order(&self) -> usize {
        self.mu_plus.len() - 1
    }

    pub fn to_json(&self) -> Value {
        json!({ "mu_plus": self.mu_plus, "mu_minus": self.mu_minus })
    }
}

/// `t·N/2` for a half angle `t` (units of π) and root order `N`.
pub(crate) fn exponent(t: &Q, n: usize) -> i64 {
    let e = t * q(n as i64, 2);
    assert!(e.is_integer(), "root order too small for half angle {t}");
    e.to_integer().to_i64().expect("exponent fits in i64")
}

/// `(χ⁺, χ⁻)` as sums of `x^e` in `ℤ[x]/(xᴺ − 1)`.
pub(crate) fn ring_characters(exps: &[i64], n: usize) -> (RingElem, RingElem) {
    let mut plus = RingElem::zero(n);
    let mut minus = RingElem::zero(n);
    for mask in 0..1usize << exps.len() {
        let w: i64 = exps
            .iter()
            .enumerate()
            .map(|(j, e)| if mask >> j & 1 == 1 { -e } else { *e })
            .sum();
        let slot = w.rem_euclid(n as i64) as usize;
        if is_even(mask) {
            plus.0[slot] += 1;
        } else {
            minus.0[slot] += 1;
        }
    }
    (plus, minus)
}

fn check_lift(g: &SpaceFormGroup, lift: &SpinLift) -> Result<()> {
    if lift.len() != g.order() {
        return Err(Error::DimensionMismatch { expected: g.order(), found: lift.len() });
    }
    Ok(())
}

/// Divides a series by `1 − (x^a + x^{−a}) z + z²` in place.
fn chebyshev_exact(series: &mut [RingElem], a: i64) -> Result<()> {
    for k in 1..series.len() {
        let (done, rest) = series.split_at_mut(k);
        let prev = &done[k - 1];
        rest[0].add_shifted(prev, a, 1)?;
        rest[0].add_shifted(prev, -a, 1)?;
        if k >= 2 {
            rest[0].add_shifted(&done[k - 2], 0, -1)?;
        }
    }
    Ok(())
}

fn chebyshev_float(series: &mut [Complex64], two_cos: f64) {
    for k in 1..series.len() {
        let mut v = series[k] + two_cos * series[k - 1];
        if k >= 2 {
            v -= series[k - 2];
        }
        series[k] = v;
    }
}

/// A coefficient total before division by `|Γ|`.
enum Raw {
    Exact(i128),
    /// The exact total did not reduce to a rational; its complex value.
    Irrational(Complex64),
    Float(Complex64),
}

fn extract(totals: impl Iterator<Item = Raw>, order: usize, sign: char) -> Result<Vec<u64>> {
    let g = order as f64;
    let mut out = Vec::new();
    for (k, raw) in totals.enumerate() {
        let value = match raw {
            Raw::Exact(c) if c % order as i128 == 0 => c / order as i128,
            Raw::Exact(c) => {
                let x = c as f64 / g;
                return Err(Error::NonIntegerCoefficient { k, sign, residual: (x - x.round()).abs() });
            }
            Raw::Irrational(z) => {
                let x = z / g;
                return Err(Error::NonIntegerCoefficient { k, sign, residual: (x - x.re.round()).norm() });
            }
            Raw::Float(z) => {
                let x = z / g;
                let residual = (x.re - x.re.round()).abs() + x.im.abs();
                if residual >= FLOAT_RESIDUAL {
                    return Err(Error::NonIntegerCoefficient { k, sign, residual });
                }
                x.re.round() as i128
            }
        };
        if value < 0 {
            return Err(Error::NegativeMultiplicity { k, sign, value: value as i64 });
        }
        out.push(value as u64);
    }
    Ok(out)
}

/// Multiplicities `μ_k, μ_{−k}` for `k = 0..=kmax`.
pub fn poincare_multiplicities(
    g: &SpaceFormGroup,
    lift: &SpinLift,
    kmax: usize,
    backend: Backend,
) -> Result<PoincareCoeffs> {
    check_lift(g, lift)?;
    match backend {
        Backend::Exact => poincare_exact(g, lift, kmax),
        Backend::Float => poincare_float(g, lift, kmax),
    }
}

fn poincare_exact(g: &SpaceFormGroup, lift: &SpinLift, kmax: usize) -> Result<PoincareCoeffs> {
    let n = lift.root_order();
    let mut tot_plus = vec![RingElem::zero(n); kmax + 1];
    let mut tot_minus = tot_plus.clone();
    for i in 0..g.order() {
        let exps: Vec<i64> = lift.half_angles(i).iter().map(|t| exponent(t, n)).collect();
        let (chi_p, chi_m) = ring_characters(&exps, n);
        // F₊ numerator χ⁻ − zχ⁺, F₋ numerator χ⁺ − zχ⁻
        for (tot, lead, next) in [(&mut tot_plus, &chi_m, &chi_p), (&mut tot_minus, &chi_p, &chi_m)] {
            let mut s = vec![RingElem::zero(n); kmax + 1];
            s[0] = lead.clone();
            if kmax >= 1 {
                s[1].add_shifted(next, 0, -1)?;
            }
            for e in &exps {
                chebyshev_exact(&mut s, 2 * e)?;
            }
            for (acc, term) in tot.iter_mut().zip(&s) {
                acc.add_assign(term)?;
            }
        }
    }
    let field = CyclotomicField::new(n);
    let settle = |tot: Vec<RingElem>, sign: char| {
        let raws = tot.into_iter().map(|r| {
            let reduced = field.reduce(r.0);
            match field.as_constant(&reduced) {
                Some(c) => Raw::Exact(c),
                None => Raw::Irrational(field.to_complex(&reduced)),
            }
        });
        extract(raws, g.order(), sign)
    };
    Ok(PoincareCoeffs {
        mu_plus: settle(tot_plus, '+')?,
        mu_minus: settle(tot_minus, '-')?,
    })
}

fn poincare_float(g: &SpaceFormGroup, lift: &SpinLift, kmax: usize) -> Result<PoincareCoeffs> {
    let mut tot_plus = vec![KahanSum::default(); kmax + 1];
    let mut tot_minus = tot_plus.clone();
    for i in 0..g.order() {
        let t = lift.half_angles(i);
        let (chi_p, chi_m) = characters(t);
        let two_cos: Vec<f64> = g
            .angles(i)
            .iter()
            .map(|theta| 2.0 * (std::f64::consts::PI * crate::exact::q_to_f64(theta)).cos())
            .collect();
        for (tot, lead, next) in [(&mut tot_plus, chi_m, chi_p), (&mut tot_minus, chi_p, chi_m)] {
            let mut s = vec![Complex64::new(0.0, 0.0); kmax + 1];
            s[0] = lead;
            if kmax >= 1 {
                s[1] = -next;
            }
            for c in &two_cos {
                chebyshev_float(&mut s, *c);
            }
            for (acc, term) in tot.iter_mut().zip(&s) {
                acc.add(*term);
            }
        }
    }
    let settle = |tot: Vec<KahanSum>, sign: char| {
        extract(tot.iter().map(|s| Raw::Float(s.value())), g.order(), sign)
    };
    Ok(PoincareCoeffs {
        mu_plus: settle(tot_plus, '+')?,
        mu_minus: settle(tot_minus, '-')?,
    })
}

/// Eigenvalues `±(n/2 + k)` with the Poincaré multiplicities, zero
/// multiplicities dropped, window `n/2 + kmax`.
pub fn spaceform_spectrum(
    g: &SpaceFormGroup,
    lift: &SpinLift,
    kmax: usize,
    backend: Backend,
) -> Result<Spectrum> {
    let coeffs = poincare_multiplicities(g, lift, kmax, backend)?;
    let n = g.manifold_dim() as i64;
    let level = |k: usize| ExactReal::rational(q(n + 2 * k as i64, 2));
    let mut entries = Vec::new();
    for k in 0..=kmax {
        if coeffs.mu_plus[k] > 0 {
            entries.push((level(k), coeffs.mu_plus[k]));
        }
        if coeffs.mu_minus[k] > 0 {
            entries.push((level(k).neg(), coeffs.mu_minus[k]));
        }
    }
    let volume = sphere_volume(g.manifold_dim()) / g.order() as f64;
    Spectrum::new(g.manifold_dim(), entries, Some(level(kmax)), Some(volume))
}

/// Short human label for a group, used in reports.
pub fn group_label(g: &SpaceFormGroup) -> String {
    match g.kind() {
        GroupKind::Cyclic { q, p } => {
            let p: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            format!("L({q}; {})", p.join(","))
        }
        GroupKind::Explicit { .. } => format!("explicit group of order {}", g.order()),
    }
}
