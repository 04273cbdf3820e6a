//! η-invariants of spherical space forms and the θ diagnostic.
//!
//! `η = (2/|Γ|) Σ_{γ≠1} (χ⁻ − χ⁺)(ε(γ)) / det(1 − γ)`.
//!
//! For half angles `t_j` the character difference factors as
//! `(χ⁻ − χ⁺) = −Π_j 2i·sin t_j` and `det(1 − γ) = Π_j 4 sin² t_j`. The
//! float backend uses these products. The exact backend sums characters
//! over roots of unity and inverts `1 − ζ^a` in closed form,
//! `1/(1 − w) = −(1/d) Σ_{k<d} k·wᵏ` for `w` of order `d > 1`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde_json::{json, Value};

use super::group::{enumerate_spin_structures, SpaceFormGroup, SpinLift};
use super::ring::{overflow, RingElem};
use super::series::{exponent, ring_characters, Backend, KahanSum};
use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};
use crate::exact::{fmt_q, q_to_f64, Q};

/// Imaginary parts below this (relative to the summed magnitudes) are
/// rounding noise.
pub const ETA_IMAG_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum EtaValue {
    Exact(Q),
    /// Floating value with an a priori rounding bound.
    Approx { value: f64, error: f64 },
}

impl EtaValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            EtaValue::Exact(x) => q_to_f64(x),
            EtaValue::Approx { value, .. } => *value,
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            EtaValue::Exact(x) => Some(x),
            EtaValue::Approx { .. } => None,
        }
    }

    /// Which evaluation produced the value.
    pub fn source(&self) -> &'static str {
        match self {
            EtaValue::Exact(_) => "character sum over roots of unity",
            EtaValue::Approx { .. } => "closed-form sine products",
        }
    }

    /// `"p/q"` when exact, a number otherwise.
    pub fn to_json(&self) -> Value {
        match self {
            EtaValue::Exact(x) => Value::String(fmt_q(x)),
            EtaValue::Approx { value, .. } => json!(value),
        }
    }
}

/// `(χ⁻ − χ⁺)` of the spin element with half angles `t` (units of π).
pub fn character_difference(t: &[Q]) -> Complex64 {
    -t.iter()
        .map(|x| Complex64::new(0.0, 2.0 * (PI * q_to_f64(x)).sin()))
        .product::<Complex64>()
}

fn check(g: &SpaceFormGroup, lift: &SpinLift) -> Result<()> {
    if lift.len() != g.order() {
        return Err(Error::DimensionMismatch { expected: g.order(), found: lift.len() });
    }
    Ok(())
}

pub fn eta_spaceform(g: &SpaceFormGroup, lift: &SpinLift, backend: Backend) -> Result<EtaValue> {
    check(g, lift)?;
    match backend {
        Backend::Exact => eta_exact(g, lift).map(EtaValue::Exact),
        Backend::Float => eta_float(g, lift),
    }
}

fn eta_float(g: &SpaceFormGroup, lift: &SpinLift) -> Result<EtaValue> {
    let mut sum = KahanSum::default();
    let mut scale = 0.0;
    for i in (0..g.order()).filter(|&i| i != g.identity()) {
        let t = lift.half_angles(i);
        let det: f64 = t.iter().map(|x| 4.0 * (PI * q_to_f64(x)).sin().powi(2)).product();
        if det == 0.0 {
            return Err(Error::FixedPoint(i));
        }
        let term = character_difference(t) / det;
        scale += term.norm();
        sum.add(term);
    }
    let total = sum.value();
    if total.im.abs() > ETA_IMAG_TOL * scale.max(1.0) {
        return Err(Error::NonRealEta(total.im));
    }
    let factor = 2.0 / g.order() as f64;
    Ok(EtaValue::Approx {
        value: factor * total.re,
        error: factor * scale * 64.0 * f64::EPSILON,
    })
}

/// `d · 1/(1 − x^a)` up to sign, i.e. `Σ_{k<d} k·x^{ak}`, with `d` the
/// order of `x^a`.
fn scaled_inverse(a: i64, n: usize) -> (RingElem, i128) {
    let d = n / (a.rem_euclid(n as i64) as usize).gcd(&n);
    let mut r = RingElem::zero(n);
    for k in 0..d {
        r.0[(a * k as i64).rem_euclid(n as i64) as usize] += k as i128;
    }
    (r, d as i128)
}

fn eta_exact(g: &SpaceFormGroup, lift: &SpinLift) -> Result<Q> {
    let n = lift.root_order();
    // terms grouped by their common denominator Π d_j²
    let mut buckets: BTreeMap<i128, RingElem> = BTreeMap::new();
    for i in (0..g.order()).filter(|&i| i != g.identity()) {
        let exps: Vec<i64> = lift.half_angles(i).iter().map(|t| exponent(t, n)).collect();
        let (plus, minus) = ring_characters(&exps, n);
        let mut term = minus;
        term.add_shifted(&plus, 0, -1)?;
        let mut den: i128 = 1;
        for e in &exps {
            let a = 2 * e;
            if a.rem_euclid(n as i64) == 0 {
                return Err(Error::FixedPoint(i));
            }
            let (f, d) = scaled_inverse(a, n);
            let (fbar, _) = scaled_inverse(-a, n);
            term = term.mul(&f)?.mul(&fbar)?;
            den = den.checked_mul(d * d).ok_or_else(overflow)?;
        }
        match buckets.get_mut(&den) {
            Some(acc) => acc.add_assign(&term)?,
            None => {
                buckets.insert(den, term);
            }
        }
    }
    let field = CyclotomicField::new(n);
    let mut total = field.zero::<Q>();
    for (den, elem) in buckets {
        let reduced = field.reduce(elem.0);
        let scaled = field.scale(&field.to_rational(&reduced), &Q::new(1.into(), den.into()));
        total = field.add(&total, &scaled);
    }
    let c = field.as_constant(&total).ok_or_else(|| {
        Error::InvalidLift("the character sum is not rational; the lift is not a homomorphism".into())
    })?;
    Ok(c * Q::new(2.into(), (g.order() as i64).into()))
}

/// `θ(t) = θ₊(t) − θ₋(t) = Σ sign(λ)·e^{−|λ|t}` summed in closed form,
/// `e^{−nt/2}(1 + x)/|Γ| · Σ_{γ≠1} (χ⁻ − χ⁺)/Π_j(1 − 2x cos θ_j + x²)`
/// with `x = e^{−t}`. Continuous at `t = 0`, where it equals η.
pub fn theta_diff(g: &SpaceFormGroup, lift: &SpinLift, t: f64) -> Result<f64> {
    check(g, lift)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidRange(format!("theta needs t >= 0, got {t}")));
    }
    let x = (-t).exp();
    let mut sum = KahanSum::default();
    for i in (0..g.order()).filter(|&i| i != g.identity()) {
        let den: f64 = g
            .angles(i)
            .iter()
            .map(|th| 1.0 - 2.0 * x * (PI * q_to_f64(th)).cos() + x * x)
            .product();
        if den == 0.0 {
            return Err(Error::FixedPoint(i));
        }
        sum.add(character_difference(lift.half_angles(i)) / den);
    }
    let n = g.manifold_dim() as f64;
    Ok((-n * t / 2.0).exp() * (1.0 + x) / g.order() as f64 * sum.value().re)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RpSpinReport {
    pub m: usize,
    pub spin_exists: bool,
    /// η of each spin structure, ascending.
    pub etas: Vec<Q>,
}

impl RpSpinReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "spin_exists": self.spin_exists,
            "etas": self.etas.iter().map(fmt_q).collect::<Vec<_>>(),
        })
    }
}

/// Spin structures and η-invariants of `ℝP^(2m−1) = {±1}\S^(2m−1)`.
pub fn rp_spin_report(m: usize) -> Result<RpSpinReport> {
    let g = SpaceFormGroup::cyclic(2, vec![1; m])?;
    let mut etas = Vec::new();
    for lift in enumerate_spin_structures(&g)? {
        etas.push(eta_exact(&g, &lift)?);
    }
    etas.sort();
    Ok(RpSpinReport {
        m,
        spin_exists: !etas.is_empty(),
        etas,
    })
}

/// `2^(−m)`, the modulus of η on `ℝP^(2m−1)`.
pub fn rp_eta_modulus(m: usize) -> Q {
    Q::new(1.into(), num_bigint::BigInt::from(2).pow(m as u32))
}
