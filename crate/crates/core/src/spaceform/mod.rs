//! Spherical space forms `Γ\S^(2m−1)`: spin structures, Poincaré series
//! of the Dirac multiplicities, and η-invariants.

mod eta;
mod group;
mod ring;
mod series;

pub use eta::{
    character_difference, eta_spaceform, rp_eta_modulus, rp_spin_report, theta_diff, EtaValue,
    RpSpinReport, ETA_IMAG_TOL,
};
pub use group::{
    canonical_half_angles, characters, cyclic_lift_is_homomorphic, enumerate_spin_structures,
    validate_lift, weights, GroupKind, SpaceFormGroup, SpinLift,
};
pub use series::{
    group_label, poincare_multiplicities, spaceform_spectrum, Backend, PoincareCoeffs,
    FLOAT_RESIDUAL, PRECISION_ENV,
};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{parse_q, Q};

/// An explicit group read from JSON together with the candidate lifts it
/// carries.
#[derive(Clone, Debug)]
pub struct ExplicitInput {
    pub group: SpaceFormGroup,
    pub lifts: Vec<Vec<Vec<Q>>>,
}

fn angle(v: &Value) -> Result<Q> {
    let bad = || Error::InvalidGroup(format!("angle must be \"p/q\" or [p, q], got {v}"));
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n.as_i64().map(|i| Q::from_integer(i.into())).ok_or_else(bad),
        Value::Array(a) if a.len() == 2 => {
            let n = a[0].as_i64().ok_or_else(bad)?;
            let d = a[1].as_i64().filter(|&d| d != 0).ok_or_else(bad)?;
            Ok(Q::new(n.into(), d.into()))
        }
        _ => Err(bad()),
    }
}

fn angle_rows(v: &Value, what: &str) -> Result<Vec<Vec<Q>>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidGroup(format!("{what} must be an array")))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::InvalidGroup(format!("{what} entries must be arrays")))?
                .iter()
                .map(angle)
                .collect()
        })
        .collect()
}

/// Reads `{"m", "elements", "table", "lifts"}`. Angles are coefficients of
/// π; `elements[i]` are rotation angles, `lifts[s][i]` half angles.
pub fn explicit_from_json(v: &Value) -> Result<ExplicitInput> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidGroup("expected a JSON object".into()))?;
    let field = |k: &str| {
        obj.get(k)
            .ok_or_else(|| Error::InvalidGroup(format!("missing field {k:?}")))
    };
    let m = field("m")?
        .as_u64()
        .ok_or_else(|| Error::InvalidGroup("m must be a positive integer".into()))? as usize;
    let elements = angle_rows(field("elements")?, "elements")?;
    let table = field("table")?
        .as_array()
        .ok_or_else(|| Error::InvalidGroup("table must be an array".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::InvalidGroup("table rows must be arrays".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::InvalidGroup("table entries must be indices".into()))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let lifts = match obj.get("lifts") {
        None => Vec::new(),
        Some(Value::Array(ls)) => ls
            .iter()
            .map(|l| angle_rows(l, "lift"))
            .collect::<Result<_>>()?,
        Some(_) => return Err(Error::InvalidGroup("lifts must be an array".into())),
    };
    Ok(ExplicitInput {
        group: SpaceFormGroup::explicit(m, elements, table)?,
        lifts,
    })
}
