//! Round spheres `S^n` of radius one.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::exact::{q, ExactReal};
use crate::spectrum::Spectrum;
use crate::torus::spinor_rank;

/// `vol(S^n) = 2π^((n+1)/2) / Γ((n+1)/2)`.
pub fn sphere_volume(n: usize) -> f64 {
    let h = (n as f64 + 1.0) / 2.0;
    2.0 * PI.powf(h) / gamma(h)
}

/// `C(k + n − 1, k)`, or `None` on `u64` overflow.
pub fn binomial(top: u64, k: u64) -> Option<u64> {
    let k = k.min(top.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) as u128 / (i + 1) as u128;
    }
    acc.to_u64()
}

/// Multiplicity of each of `±(n/2 + k)` on `S^n`.
pub fn sphere_multiplicity(n: usize, k: u64) -> Option<u64> {
    binomial(k + n as u64 - 1, k)?.checked_mul(spinor_rank(n))
}

/// Eigenvalues `±(n/2 + k)` for `k = 0..=kmax`, window `n/2 + kmax`.
pub fn sphere_spectrum(n: usize, kmax: u64) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::InvalidRange(format!("sphere dimension {n} < 2")));
    }
    let half = n as i64;
    let mut entries = Vec::with_capacity(2 * kmax as usize + 2);
    for k in 0..=kmax {
        let mult = sphere_multiplicity(n, k)
            .ok_or_else(|| Error::InvalidRange(format!("multiplicity overflows at k = {k}")))?;
        let lambda = ExactReal::rational(q(half + 2 * k as i64, 2));
        entries.push((lambda.neg(), mult));
        entries.push((lambda, mult));
    }
    let window = ExactReal::rational(q(half + 2 * kmax as i64, 2));
    Spectrum::new(n, entries, Some(window), Some(sphere_volume(n)))
}
