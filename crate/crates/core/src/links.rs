//! Link diagrams and the spectrum type of hyperbolic link complements.
//!
//! A diagram is reduced to its signed crossings, each recorded as
//! `(over component, under component, sign)`. Modulo 2 the linking number
//! `Lk(K_i, K_j)` is the number of crossings of `K_i` over `K_j`, which is
//! all the classification needs.
//!
//! Text format: a header line `components N`, then one crossing per line
//! as `OVER UNDER SIGN` with 1-based component indices and `SIGN` one of
//! `+`, `-`. Blank lines and `#` comments are ignored.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    /// 0-based index of the over strand's component.
    pub over: usize,
    pub under: usize,
    /// `+1` or `−1`.
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    components: usize,
    crossings: Vec<Crossing>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl LinkDiagram {
    /// Validates indices, signs, and that every pair of distinct
    /// components crosses an even number of times.
    pub fn new(components: usize, crossings: Vec<Crossing>) -> Result<Self> {
        if components == 0 {
            return Err(parse_err(0, "a link needs at least one component"));
        }
        for (i, c) in crossings.iter().enumerate() {
            if c.over >= components || c.under >= components {
                return Err(parse_err(i + 2, "component index out of range"));
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(parse_err(i + 2, format!("sign must be +1 or -1, got {}", c.sign)));
            }
        }
        let d = LinkDiagram {
            components,
            crossings,
        };
        d.check_pair_parity(|_| 0)?;
        Ok(d)
    }

    /// Even crossing count between every pair; `line_of` maps a crossing
    /// index to its source line for error messages.
    fn check_pair_parity(&self, line_of: impl Fn(usize) -> usize) -> Result<()> {
        let n = self.components;
        let mut count = vec![vec![0usize; n]; n];
        let mut last = vec![vec![0usize; n]; n];
        for (idx, c) in self.crossings.iter().enumerate() {
            let (a, b) = (c.over.min(c.under), c.over.max(c.under));
            count[a][b] += 1;
            last[a][b] = idx;
        }
        for a in 0..n {
            for b in a + 1..n {
                if count[a][b] % 2 == 1 {
                    return Err(parse_err(
                        line_of(last[a][b]),
                        format!(
                            "components {} and {} cross an odd number of times ({})",
                            a + 1,
                            b + 1,
                            count[a][b]
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Same diagram with component `i` renamed `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.components];
        if perm.len() != self.components
            || perm.iter().any(|&p| p >= self.components || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidRange("relabeling must be a permutation".into()));
        }
        Self::new(
            self.components,
            self.crossings
                .iter()
                .map(|c| Crossing {
                    over: perm[c.over],
                    under: perm[c.under],
                    sign: c.sign,
                })
                .collect(),
        )
    }

    /// Every crossing sign reversed, as for a reversed orientation.
    pub fn with_signs_flipped(&self) -> Self {
        LinkDiagram {
            components: self.components,
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing { sign: -c.sign, ..*c })
                .collect(),
        }
    }
}

impl FromStr for LinkDiagram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut components = None;
        let mut crossings = Vec::new();
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let Some(n) = components else {
                match fields.as_slice() {
                    ["components", n] => {
                        let n: usize = n
                            .parse()
                            .map_err(|_| parse_err(line_no, format!("bad component count {n:?}")))?;
                        if n == 0 {
                            return Err(parse_err(line_no, "a link needs at least one component"));
                        }
                        components = Some(n);
                        continue;
                    }
                    _ => return Err(parse_err(line_no, "expected header \"components N\"")),
                }
            };
            let [over, under, sign] = fields.as_slice() else {
                return Err(parse_err(line_no, "expected \"OVER UNDER SIGN\""));
            };
            let index = |s: &str| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
                    _ => Err(parse_err(line_no, format!("component index {s:?} not in 1..={n}"))),
                }
            };
            let sign = match *sign {
                "+" | "+1" => 1,
                "-" | "-1" => -1,
                s => return Err(parse_err(line_no, format!("sign must be + or -, got {s:?}"))),
            };
            crossings.push(Crossing {
                over: index(over)?,
                under: index(under)?,
                sign,
            });
            lines.push(line_no);
        }
        let components = components.ok_or_else(|| parse_err(0, "empty diagram"))?;
        let d = LinkDiagram {
            components,
            crossings,
        };
        d.check_pair_parity(|i| lines[i])?;
        Ok(d)
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "components {}", self.components)?;
        for c in &self.crossings {
            let s = if c.sign > 0 { '+' } else { '-' };
            writeln!(f, "{} {} {s}", c.over + 1, c.under + 1)?;
        }
        Ok(())
    }
}

pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    text.parse()
}

/// `Lk(K_i, K_j) mod 2` for `i ≠ j`, zero diagonal.
pub fn linking_parity_matrix(d: &LinkDiagram) -> Result<Vec<Vec<u8>>> {
    let n = d.component_count();
    let mut over = vec![vec![0u8; n]; n];
    for c in d.crossings() {
        if c.over != c.under {
            over[c.over][c.under] ^= 1;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if over[i][j] != over[j][i] {
                return Err(Error::ParitySymmetry(i + 1, j + 1));
            }
        }
    }
    Ok(over)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkClassification {
    /// All linking numbers even.
    DiscreteForAll,
    /// Some pair has odd linking number.
    ExistsRealLine,
}

impl fmt::Display for LinkClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkClassification::DiscreteForAll => "DiscreteForAll",
            LinkClassification::ExistsRealLine => "ExistsRealLine",
        })
    }
}

/// Spectrum type of `S³ − K` with a finite-volume hyperbolic metric, which
/// the caller vouches for: discrete for every spin structure iff all
/// linking numbers are even.
pub fn classify_link_complement(d: &LinkDiagram) -> Result<LinkClassification> {
    let m = linking_parity_matrix(d)?;
    Ok(if m.iter().flatten().all(|&x| x == 0) {
        LinkClassification::DiscreteForAll
    } else {
        LinkClassification::ExistsRealLine
    })
}

/// Restriction of a spin structure to a cusp cross-section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CuspFlag {
    Trivial,
    Nontrivial,
}

impl FromStr for CuspFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "trivial" | "t" | "0" => Ok(CuspFlag::Trivial),
            "nontrivial" | "n" | "1" => Ok(CuspFlag::Nontrivial),
            other => Err(parse_err(0, format!("cusp flag must be trivial or nontrivial, got {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumType {
    Discrete,
    RealLine,
}

impl fmt::Display for SpectrumType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumType::Discrete => "Discrete",
            SpectrumType::RealLine => "RealLine",
        })
    }
}

/// The whole real line as soon as one cusp is trivial; discrete otherwise,
/// including the compact case without cusps.
pub fn classify_by_cusp_flags(flags: &[CuspFlag]) -> SpectrumType {
    if flags.contains(&CuspFlag::Trivial) {
        SpectrumType::RealLine
    } else {
        SpectrumType::Discrete
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cusps {
    Zero,
    One,
    Many,
}

impl Cusps {
    pub fn from_count(n: usize) -> Cusps {
        match n {
            0 => Cusps::Zero,
            1 => Cusps::One,
            _ => Cusps::Many,
        }
    }
}

impl fmt::Display for Cusps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cusps::Zero => "0",
            Cusps::One => "1",
            Cusps::Many => ">=2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    Yes,
    No,
    DependsOnM,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::Yes => "YES",
            Existence::No => "NO",
            Existence::DependsOnM => "depends on M",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExistenceRow {
    pub discrete_possible: Existence,
    pub realline_possible: Existence,
}

/// Whether finite-volume hyperbolic manifolds of dimension 2 or 3 with the
/// given number of cusps admit spin structures of each spectrum type.
pub fn existence_lookup(dim: u32, cusps: Cusps) -> Result<ExistenceRow> {
    use Existence::*;
    let realline_possible = match (dim, cusps) {
        (2 | 3, Cusps::Zero | Cusps::One) => No,
        (2, Cusps::Many) => Yes,
        (3, Cusps::Many) => DependsOnM,
        _ => return Err(Error::UnsupportedDimension(dim)),
    };
    Ok(ExistenceRow {
        discrete_possible: Yes,
        realline_possible,
    })
}

/// The full table for one dimension as JSON rows.
pub fn existence_table_json(dim: u32) -> Result<Value> {
    let rows = [Cusps::Zero, Cusps::One, Cusps::Many]
        .into_iter()
        .map(|c| {
            existence_lookup(dim, c).map(|r| {
                json!({
                    "cusps": c.to_string(),
                    "discrete_possible": r.discrete_possible.to_string(),
                    "realline_possible": r.realline_possible.to_string(),
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "dim": dim, "rows": rows }))
}
