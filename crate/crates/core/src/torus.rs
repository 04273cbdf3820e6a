//! Dirac spectra of the circle and of flat tori `ℝⁿ/Γ`.
//!
//! For the torus with twist `δ`, each dual lattice vector `b*` gives the
//! eigenvalues `±2π|b* + s|`, `s = ½ Σ δ_j b*_j`, each sign carrying
//! multiplicity `2^[n/2] / 2`. The two signs meet at `0`, which is only
//! reached for `δ = 0` and then carries the full `2^[n/2]`.
//!
//! Lattice points are enumerated in a coordinate box derived from
//! `|c_j| = |⟨v, b_j⟩| ≤ |v|·|b_j|`, so every vector inside the window is
//! visited; membership is then decided exactly on the squared norm.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{q_to_f64, qi, ExactReal, Q};
use crate::lattice::{integer_form, LatticeData, LatticeScale, SpinDelta};
use crate::spectrum::Spectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CircleSpin {
    /// Periodic spinors, eigenvalues `k`.
    Trivial,
    /// Anti-periodic spinors, eigenvalues `k + 1/2`.
    Nontrivial,
}

impl std::str::FromStr for CircleSpin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" | "0" => Ok(CircleSpin::Trivial),
            "nontrivial" | "1" => Ok(CircleSpin::Nontrivial),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown circle spin structure {other:?}"),
            }),
        }
    }
}

/// Rank `2^[n/2]` of the spinor bundle.
pub fn spinor_rank(n: usize) -> u64 {
    1u64 << (n / 2)
}

fn circle_value(spin: CircleSpin, k: i64) -> Q {
    match spin {
        CircleSpin::Trivial => qi(k),
        CircleSpin::Nontrivial => Q::new(BigInt::from(2 * k + 1), BigInt::from(2)),
    }
}

/// Spectrum of `S¹ = ℝ/2πℤ` for `k ∈ [kmin, kmax]`, multiplicity 1 each.
///
/// The window is the largest modulus below which no eigenvalue is missing,
/// or absent when the range skips one of the smallest moduli.
pub fn circle_spectrum(spin: CircleSpin, kmin: i64, kmax: i64) -> Result<Spectrum> {
    if kmin > kmax {
        return Err(Error::InvalidRange(format!("empty range [{kmin}, {kmax}]")));
    }
    let entries = (kmin..=kmax).map(|k| (ExactReal::rational(circle_value(spin, k)), 1));
    // smallest modulus among the values just outside the range
    let below = circle_value(spin, kmin - 1).abs();
    let above = circle_value(spin, kmax + 1).abs();
    let missing = below.min(above);
    let window = (missing - qi(1)).max(-qi(1));
    let smallest = match spin {
        CircleSpin::Trivial => qi(0),
        CircleSpin::Nontrivial => Q::new(1.into(), 2.into()),
    };
    let window = (window >= smallest).then(|| ExactReal::rational(window));
    Spectrum::new(1, entries, window, Some(2.0 * PI))
}

/// Circle spectrum complete up to modulus `window`, declared with that window.
pub fn circle_spectrum_to(spin: CircleSpin, window: &Q) -> Result<Spectrum> {
    if window.is_negative() {
        return Err(Error::InvalidRange(format!("negative window {window}")));
    }
    let kmax = match spin {
        CircleSpin::Trivial => window.floor().to_integer(),
        CircleSpin::Nontrivial => (window - Q::new(1.into(), 2.into())).floor().to_integer(),
    };
    let kmax: i64 = kmax.try_into().map_err(|_| Error::InvalidRange("window too large".into()))?;
    let kmin = match spin {
        CircleSpin::Trivial => -kmax,
        CircleSpin::Nontrivial => -kmax - 1,
    };
    let entries: Vec<_> = (kmin..=kmax)
        .map(|k| (ExactReal::rational(circle_value(spin, k)), 1))
        .collect();
    Spectrum::new(1, entries, Some(ExactReal::rational(window.clone())), Some(2.0 * PI))
}

/// Calls `f` on every integer vector in the box `lo ≤ a ≤ hi`.
pub(crate) fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut a = lo.to_vec();
    loop {
        f(&a);
        let mut j = 0;
        loop {
            if j == a.len() {
                return;
            }
            if a[j] < hi[j] {
                a[j] += 1;
                break;
            }
            a[j] = lo[j];
            j += 1;
        }
    }
}

fn quadratic_form(m: &[Vec<i128>], u: &[i128]) -> i128 {
    let mut acc = 0i128;
    for (i, row) in m.iter().enumerate() {
        let mut s = 0i128;
        for (j, x) in row.iter().enumerate() {
            s += x * u[j];
        }
        acc += u[i] * s;
    }
    acc
}

/// `π` factor carried by `2π|b* + s|` for a lattice with the given scale.
fn eigen_pi(scale: LatticeScale) -> bool {
    scale == LatticeScale::Rational
}

/// Dirac spectrum of the flat torus `ℝⁿ/Γ` with twist `δ`, complete for
/// `|λ| ≤ window`.
pub fn torus_spectrum(lat: &LatticeData, delta: &SpinDelta, window: &ExactReal) -> Result<Spectrum> {
    let n = lat.dim();
    delta.check_dim(n)?;
    if window.is_negative() {
        return Err(Error::InvalidRange(format!("negative window {window}")));
    }
    let pi = eigen_pi(lat.scale());
    // |λ|² = 4·(π² if pi)·q  with  q = |b* + s|² (rational part)
    let w = window.to_f64();
    let q_max = w * w / if pi { 4.0 * PI * PI } else { 4.0 } * (1.0 + 1e-9) + 1e-12;
    let (lo, hi): (Vec<i64>, Vec<i64>) = (0..n)
        .map(|j| {
            let b = (q_max * q_to_f64(&lat.gram()[j][j])).sqrt();
            let half = delta.bits()[j] as f64 / 2.0;
            ((-b - half).floor() as i64 - 1, (b - half).ceil() as i64 + 1)
        })
        .unzip();

    // q = uᵀ G* u / 4 with u = 2a + δ; G* = m / den
    let (m, den) = integer_form(lat.dual_gram());
    let den_q = Q::from_integer(BigInt::from(den));
    let mut counts: BTreeMap<i128, u64> = BTreeMap::new();
    let mut u = vec![0i128; n];
    for_each_in_box(&lo, &hi, |a| {
        for j in 0..n {
            u[j] = 2 * a[j] as i128 + delta.bits()[j] as i128;
        }
        let key = quadratic_form(&m, &u);
        let lambda = ExactReal::from_parts(false, pi, Q::from_integer(BigInt::from(key)) / &den_q);
        if lambda.cmp_abs(window) != Ordering::Greater {
            *counts.entry(key).or_insert(0) += 1;
        }
    });

    let rank = spinor_rank(n);
    let mut entries = Vec::with_capacity(2 * counts.len());
    for (key, count) in counts {
        let value = ExactReal::from_parts(false, pi, Q::from_integer(BigInt::from(key)) / &den_q);
        if value.is_zero() {
            entries.push((value, count * rank));
            continue;
        }
        // v and −v = (−b* − 2s) + s are both counted, so count·rank is even
        assert!((count * rank).is_multiple_of(2), "unpaired dual vectors at {value}");
        let mult = count * rank / 2;
        entries.push((value.neg(), mult));
        entries.push((value, mult));
    }
    Spectrum::new(n, entries, Some(window.abs()), Some(lat.volume()))
}

/// `dim ker D`: `2^[n/2]` for the untwisted structure, else 0.
pub fn harmonic_spinor_dim(lat: &LatticeData, delta: &SpinDelta) -> Result<u64> {
    delta.check_dim(lat.dim())?;
    Ok(if delta.is_trivial() {
        spinor_rank(lat.dim())
    } else {
        0
    })
}

/// Shortest lattice loops, overall and split by whether the spin structure
/// twists along them (`Σ δ_j a_j` odd). `spin_sys` is `None` (infinite)
/// for the untwisted structure.
#[derive(Clone, Debug, PartialEq)]
pub struct Systoles {
    pub sys1: ExactReal,
    pub spin_sys: Option<ExactReal>,
    pub nonspin_sys: ExactReal,
}

pub fn systoles(lat: &LatticeData, delta: &SpinDelta) -> Result<Systoles> {
    let n = lat.dim();
    delta.check_dim(n)?;
    let (m, den) = integer_form(lat.gram());
    let norm = |a: &[i128]| quadratic_form(&m, a);
    let parity = |a: &[i128]| {
        a.iter()
            .zip(delta.bits())
            .map(|(x, &d)| x * d as i128)
            .sum::<i128>()
            .rem_euclid(2)
    };
    let unit = |j: usize, k: i128| {
        let mut a = vec![0i128; n];
        a[j] = k;
        a
    };

    // Candidate upper bounds for each class; 2·b_1 is always untwisted.
    let mut best_spin = i128::MAX;
    let mut best_nonspin = norm(&unit(0, 2));
    for j in 0..n {
        let v = norm(&unit(j, 1));
        if delta.bits()[j] == 1 {
            best_spin = best_spin.min(v);
        } else {
            best_nonspin = best_nonspin.min(v);
        }
    }
    let r2 = if best_spin == i128::MAX {
        best_nonspin
    } else {
        best_spin.max(best_nonspin)
    };
    let r2 = q_to_f64(&(Q::from_integer(BigInt::from(r2)) / Q::from_integer(BigInt::from(den))));
    let hi: Vec<i64> = (0..n)
        .map(|j| (r2 * q_to_f64(&lat.dual_gram()[j][j]) * (1.0 + 1e-9)).sqrt().ceil() as i64 + 1)
        .collect();
    let lo: Vec<i64> = hi.iter().map(|h| -h).collect();

    let mut sys1 = i128::MAX;
    let mut spin = i128::MAX;
    let mut nonspin = i128::MAX;
    let mut a = vec![0i128; n];
    for_each_in_box(&lo, &hi, |p| {
        if p.iter().all(|&x| x == 0) {
            return;
        }
        for j in 0..n {
            a[j] = p[j] as i128;
        }
        let v = norm(&a);
        sys1 = sys1.min(v);
        if parity(&a) == 1 {
            spin = spin.min(v);
        } else {
            nonspin = nonspin.min(v);
        }
    });
    let pi = lat.scale() == LatticeScale::Pi;
    let len = |key: i128| {
        ExactReal::from_parts(
            false,
            pi,
            Q::from_integer(BigInt::from(key)) / Q::from_integer(BigInt::from(den)),
        )
    };
    Ok(Systoles {
        sys1: len(sys1),
        spin_sys: (!delta.is_trivial()).then(|| len(spin)),
        nonspin_sys: len(nonspin),
    })
}

/// True when `0` is an eigenvalue.
pub fn has_zero_mode(s: &Spectrum) -> bool {
    s.entries().iter().any(|(l, _)| l.is_zero())
}
