//! η-invariants of the oriented 3-dimensional Bieberbach manifolds other
//! than the torus, and the integrality check for differences of η between
//! two spin structures.
//!
//! If the class `χ ∈ H¹(M; ℤ₂)` carrying one spin structure to the other is
//! realizable as a differential form, the two η-invariants differ by an
//! integer. Realizability is taken as an input: it amounts to `χ` vanishing
//! on the mod-2 reduction of the torsion of `H¹(M; ℤ)`, which is not
//! computed here.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{floor_q, fmt_q, q, qi, Q};

/// Holonomy group `G` of `M = G\T³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BieberbachGroup {
    Z2,
    Z3,
    Z4,
    Z6,
    Z2xZ2,
}

impl BieberbachGroup {
    pub const ALL: [BieberbachGroup; 5] = [
        BieberbachGroup::Z2,
        BieberbachGroup::Z3,
        BieberbachGroup::Z4,
        BieberbachGroup::Z6,
        BieberbachGroup::Z2xZ2,
    ];
}

impl fmt::Display for BieberbachGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BieberbachGroup::Z2 => "Z2",
            BieberbachGroup::Z3 => "Z3",
            BieberbachGroup::Z4 => "Z4",
            BieberbachGroup::Z6 => "Z6",
            BieberbachGroup::Z2xZ2 => "Z2xZ2",
        })
    }
}

impl FromStr for BieberbachGroup {
    type Err = Error;

    /// Accepts `Z2`, `Z_2`, `ℤ₂`, `Z2xZ2`, `Z2×Z2` and similar spellings.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                'ℤ' | 'z' => 'Z',
                '×' | 'X' | '*' => 'x',
                '₂' => '2',
                '₃' => '3',
                '₄' => '4',
                '₆' => '6',
                other => other,
            })
            .collect();
        match key.as_str() {
            "Z2" => Ok(BieberbachGroup::Z2),
            "Z3" => Ok(BieberbachGroup::Z3),
            "Z4" => Ok(BieberbachGroup::Z4),
            "Z6" => Ok(BieberbachGroup::Z6),
            "Z2xZ2" => Ok(BieberbachGroup::Z2xZ2),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BieberbachEtaEntry {
    pub group: BieberbachGroup,
    pub total_spin_structures: u32,
    /// Distinct η values with the number of spin structures attaining each.
    pub eta_values: Vec<(Q, u32)>,
}

impl BieberbachEtaEntry {
    /// One η per spin structure.
    pub fn etas(&self) -> Vec<Q> {
        self.eta_values
            .iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v.clone(), *c as usize))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.to_string(),
            "total_spin_structures": self.total_spin_structures,
            "eta_values": self.eta_values.iter()
                .map(|(v, c)| json!({ "eta": fmt_q(v), "count": c }))
                .collect::<Vec<_>>(),
        })
    }
}

/// The tabulated values; they do not depend on the flat metric.
pub fn bieberbach_entry(group: BieberbachGroup) -> BieberbachEtaEntry {
    let (total, values) = match group {
        BieberbachGroup::Z2 => (8, vec![(qi(0), 6), (qi(1), 1), (qi(-1), 1)]),
        BieberbachGroup::Z3 => (2, vec![(q(4, 3), 1), (q(-2, 3), 1)]),
        BieberbachGroup::Z4 => (4, vec![(qi(0), 2), (q(3, 2), 1), (q(-1, 2), 1)]),
        BieberbachGroup::Z6 => (2, vec![(q(5, 3), 1), (q(-1, 3), 1)]),
        BieberbachGroup::Z2xZ2 => (4, vec![(qi(0), 4)]),
    };
    BieberbachEtaEntry {
        group,
        total_spin_structures: total,
        eta_values: values,
    }
}

pub fn bieberbach_table(group: &str) -> Result<BieberbachEtaEntry> {
    group.parse().map(bieberbach_entry)
}

pub fn bieberbach_table_json() -> Value {
    Value::Array(
        BieberbachGroup::ALL
            .into_iter()
            .map(|g| bieberbach_entry(g).to_json())
            .collect(),
    )
}

/// Flat `(group, total, eta, count)` records for tabular export.
pub fn bieberbach_records() -> Vec<[String; 4]> {
    BieberbachGroup::ALL
        .into_iter()
        .map(bieberbach_entry)
        .flat_map(|e| {
            e.eta_values
                .iter()
                .map(|(v, c)| {
                    [
                        e.group.to_string(),
                        e.total_spin_structures.to_string(),
                        fmt_q(v),
                        c.to_string(),
                    ]
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DahlVerdict<T> {
    pub difference: T,
    pub applicable: bool,
    /// `None` when the theorem does not apply.
    pub pass: Option<bool>,
}

impl<T> DahlVerdict<T> {
    fn new(difference: T, applicable: bool, integral: bool) -> Self {
        DahlVerdict {
            difference,
            applicable,
            pass: applicable.then_some(integral),
        }
    }
}

impl DahlVerdict<Q> {
    pub fn to_json(&self) -> Value {
        json!({
            "difference": fmt_q(&self.difference),
            "applicable": self.applicable,
            "pass": self.pass,
        })
    }
}

impl DahlVerdict<f64> {
    pub fn to_json(&self) -> Value {
        json!({
            "difference": self.difference,
            "applicable": self.applicable,
            "pass": self.pass,
        })
    }
}

/// Exact test of `η₁ − η₂ ∈ ℤ`.
pub fn dahl_check(eta1: &Q, eta2: &Q, realizable: bool) -> DahlVerdict<Q> {
    let d = eta1 - eta2;
    let integral = d.is_integer();
    DahlVerdict::new(d, realizable, integral)
}

/// The same test for floating η values: integral means within `tol` of
/// the nearest integer.
pub fn dahl_check_approx(eta1: f64, eta2: f64, realizable: bool, tol: f64) -> Result<DahlVerdict<f64>> {
    if !(tol >= 0.0 && tol.is_finite()) || !eta1.is_finite() || !eta2.is_finite() {
        return Err(Error::InvalidRange(format!(
            "need finite eta values and tol >= 0, got {eta1}, {eta2}, {tol}"
        )));
    }
    let d = eta1 - eta2;
    Ok(DahlVerdict::new(d, realizable, (d - d.round()).abs() <= tol))
}

/// Distance of a rational from the nearest integer.
pub fn distance_to_integer(x: &Q) -> Q {
    let frac = x - Q::from_integer(floor_q(x));
    let other = Q::one() - &frac;
    frac.min(other)
}
