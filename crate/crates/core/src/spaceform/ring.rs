//! The group ring `ℤ[x]/(xᴺ − 1)` as a scratch representation for sums of
//! roots of unity.
//!
//! Multiplying by `ζ^a` is a rotation here, so the per-element work of the
//! Poincaré series and the η sum stays linear in `N`. The ring maps onto
//! `ℤ[ζ_N]` by reduction modulo `Φ_N`, which is applied once to the totals.

use crate::error::{Error, Result};

pub(crate) fn overflow() -> Error {
    Error::InvalidGroup("exact arithmetic overflowed; use the float backend".into())
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RingElem(pub Vec<i128>);

impl RingElem {
    pub fn zero(n: usize) -> Self {
        RingElem(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `self += c · x^e · other`.
    pub fn add_shifted(&mut self, other: &RingElem, e: i64, c: i128) -> Result<()> {
        let n = self.n();
        let e = e.rem_euclid(n as i64) as usize;
        for (i, &v) in other.0.iter().enumerate() {
            if v != 0 {
                let slot = &mut self.0[(i + e) % n];
                *slot = v
                    .checked_mul(c)
                    .and_then(|x| slot.checked_add(x))
                    .ok_or_else(overflow)?;
            }
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &RingElem) -> Result<()> {
        self.add_shifted(other, 0, 1)
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        let n = self.n();
        let mut out = Self::zero(n);
        for (i, &a) in self.0.iter().enumerate() {
            if a != 0 {
                out.add_shifted(other, i as i64, a)?;
            }
        }
        Ok(out)
    }
}
