//! Lattices with exact rational bases.
//!
//! A basis may be given as rational rows, or as rational rows scaled by π
//! (so `2πℤ` is the 1×1 basis `2` with [`LatticeScale::Pi`]). All matrices
//! stored here are the rational parts; the scale is carried separately.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{parse_q, Q};

pub type Matrix = Vec<Vec<Q>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeScale {
    /// Basis vectors are the given rational rows.
    Rational,
    /// Basis vectors are `π` times the given rational rows.
    Pi,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeData {
    dim: usize,
    scale: LatticeScale,
    basis: Matrix,
    gram: Matrix,
    dual_basis: Matrix,
    dual_gram: Matrix,
}

impl LatticeData {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self) -> LatticeScale {
        self.scale
    }

    /// Rows `b_1..b_n` (rational part).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// `⟨b_i, b_j⟩`, rational part (multiply by `π²` for [`LatticeScale::Pi`]).
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Rows `b*_1..b*_n` (rational part; divide by `π` for [`LatticeScale::Pi`]).
    pub fn dual_basis(&self) -> &Matrix {
        &self.dual_basis
    }

    /// Gram matrix of the dual basis, the inverse of [`Self::gram`].
    pub fn dual_gram(&self) -> &Matrix {
        &self.dual_gram
    }

    /// Covolume `|det B|` as a float, including the π scale.
    pub fn volume(&self) -> f64 {
        let det = crate::exact::q_to_f64(&determinant(&self.basis).abs());
        match self.scale {
            LatticeScale::Rational => det,
            LatticeScale::Pi => det * std::f64::consts::PI.powi(self.dim as i32),
        }
    }
}

/// Builds Gram and dual data: dual = inverse transpose of the basis,
/// gram = `B·Bᵀ`.
pub fn make_lattice(basis: Matrix, scale: LatticeScale) -> Result<LatticeData> {
    let n = basis.len();
    if n == 0 || basis.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            lengths: basis.iter().map(Vec::len).collect(),
        });
    }
    let inverse = invert(&basis).ok_or(Error::SingularBasis)?;
    let dual_basis = transpose(&inverse);
    let gram = mul(&basis, &transpose(&basis));
    let dual_gram = mul(&dual_basis, &transpose(&dual_basis));
    debug_assert!(leading_minors_positive(&gram));
    Ok(LatticeData {
        dim: n,
        scale,
        basis,
        gram,
        dual_basis,
        dual_gram,
    })
}

/// Plain-text basis: one row per line, entries `p/q` separated by
/// whitespace. Blank lines and `#` comments are skipped.
pub fn parse_basis(text: &str) -> Result<Matrix> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                parse_q(tok).map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("bad rational entry {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Twist vector `(δ_1, …, δ_n)` selecting one of the `2ⁿ` torus spin
/// structures; `δ_j = 1` twists along `b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinDelta(Vec<u8>);

impl SpinDelta {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidDelta(b as i64));
        }
        Ok(SpinDelta(bits))
    }

    pub fn trivial(n: usize) -> Self {
        SpinDelta(vec![0; n])
    }

    /// All `2ⁿ` structures, in binary counting order.
    pub fn all(n: usize) -> Vec<SpinDelta> {
        (0..1u32 << n)
            .map(|mask| SpinDelta((0..n).map(|j| ((mask >> j) & 1) as u8).collect()))
            .collect()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

impl std::str::FromStr for SpinDelta {
    type Err = Error;

    /// Comma-separated bits, e.g. `1,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .split(',')
            .map(|t| {
                let v: i64 = t.trim().parse().map_err(|_| Error::Parse {
                    line: 0,
                    message: format!("bad spin twist {t:?}"),
                })?;
                if v == 0 || v == 1 {
                    Ok(v as u8)
                } else {
                    Err(Error::InvalidDelta(v))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SpinDelta::new(bits)
    }
}

impl fmt::Display for SpinDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn transpose(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// Gauss–Jordan inverse; `None` for singular input.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant(m: &Matrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    det
}

pub fn leading_minors_positive(m: &Matrix) -> bool {
    (1..=m.len()).all(|k| {
        let sub: Matrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&sub).is_positive()
    })
}

/// Scales a rational matrix to integers: returns `(M, d)` with `m = M / d`.
pub(crate) fn integer_form(m: &Matrix) -> (Vec<Vec<i128>>, i128) {
    let den = m
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let to_i128 = |b: BigInt| -> i128 {
        i128::try_from(b).expect("lattice entries too large for integer enumeration")
    };
    let ints = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| to_i128((x * Q::from_integer(den.clone())).to_integer()))
                .collect()
        })
        .collect();
    (ints, to_i128(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn identity_is_self_dual() {
        let id = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        let lat = make_lattice(id.clone(), LatticeScale::Rational).unwrap();
        assert_eq!(lat.dual_basis(), &id);
        assert_eq!(lat.gram(), &id);
    }

    #[test]
    fn two_pi_circle_dual() {
        let lat = make_lattice(vec![vec![qi(2)]], LatticeScale::Pi).unwrap();
        // b = 2π, b* = 1/(2π): rational part 1/2 with the π moved to the denominator
        assert_eq!(lat.dual_basis(), &vec![vec![q(1, 2)]]);
        assert!((lat.volume() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn skew_basis_dual_by_hand() {
        let b = vec![vec![qi(1), qi(0)], vec![qi(1), qi(2)]];
        let lat = make_lattice(b.clone(), LatticeScale::Rational).unwrap();
        assert_eq!(
            lat.dual_basis(),
            &vec![vec![qi(1), q(-1, 2)], vec![qi(0), q(1, 2)]]
        );
        // ⟨b_i, b*_j⟩ = δ_ij
        assert_eq!(
            mul(&b, &transpose(lat.dual_basis())),
            vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]
        );
        assert!(leading_minors_positive(lat.gram()));
        assert_eq!(mul(lat.gram(), lat.dual_gram()), vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]);
    }

    #[test]
    fn rejects_singular_and_ragged() {
        let sing = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert_eq!(make_lattice(sing, LatticeScale::Rational), Err(Error::SingularBasis));
        let ragged = vec![vec![qi(1), qi(2)], vec![qi(2)]];
        assert!(matches!(
            make_lattice(ragged, LatticeScale::Rational),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(make_lattice(vec![], LatticeScale::Rational), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn parse_basis_file() {
        let text = "# hexagonal-ish\n1 0\n1/2 3/4  # second row\n\n";
        assert_eq!(
            parse_basis(text).unwrap(),
            vec![vec![qi(1), qi(0)], vec![q(1, 2), q(3, 4)]]
        );
        assert!(matches!(parse_basis("1 x\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn delta_parsing() {
        let d: SpinDelta = "1,0,1".parse().unwrap();
        assert_eq!(d.bits(), &[1, 0, 1]);
        assert_eq!(d.to_string(), "1,0,1");
        assert_eq!("1,2".parse::<SpinDelta>(), Err(Error::InvalidDelta(2)));
        assert_eq!(SpinDelta::all(2).len(), 4);
        assert!(SpinDelta::all(3)[0].is_trivial());
    }
}
