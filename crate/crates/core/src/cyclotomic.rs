//! Arithmetic in `ℚ(ζ_N)` and `ℤ[ζ_N]`.
//!
//! Elements are coefficient vectors in the power basis `1, ζ, …, ζ^(φ(N)−1)`,
//! reduced modulo the cyclotomic polynomial `Φ_N`. Since `Φ_N` is monic the
//! reduction never divides, so the same code serves integer coefficients
//! (characters, Chebyshev values) and rational ones (quotients).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::Neg;

use num_complex::Complex64;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};

use crate::exact::Q;

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    fn build(n: usize, memo: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        // x^n − 1
        let mut num = vec![0i64; n + 1];
        num[0] = -1;
        num[n] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let div = build(d, memo);
                num = divide_monic(&num, &div);
            }
        }
        memo.insert(n, num.clone());
        num
    }
    assert!(n >= 1);
    build(n, &mut HashMap::new())
}

/// Exact quotient by a monic divisor (the remainder must vanish).
fn divide_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dd = div.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k];
        quot[k - dd] = c;
        for (i, d) in div.iter().enumerate() {
            rem[k - dd + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Trait bundle for coefficient types.
pub trait Coeff: Clone + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive {}
impl<T: Clone + Num + Neg<Output = T> + FromPrimitive + ToPrimitive> Coeff for T {}

#[derive(Clone, Debug)]
pub struct CyclotomicField {
    order: usize,
    modulus: Vec<i64>,
}

pub type Cyclo<T> = Vec<T>;

impl CyclotomicField {
    pub fn new(order: usize) -> Self {
        CyclotomicField {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(N)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero<T: Coeff>(&self) -> Cyclo<T> {
        vec![T::zero(); self.degree()]
    }

    pub fn constant<T: Coeff>(&self, c: T) -> Cyclo<T> {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// Reduces a polynomial in `ζ` of any degree.
    pub fn reduce<T: Coeff>(&self, mut poly: Vec<T>) -> Cyclo<T> {
        let d = self.degree();
        if poly.len() < d {
            poly.resize(d, T::zero());
            return poly;
        }
        for k in (d..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[k], T::zero());
            if c.is_zero() {
                continue;
            }
            for (i, m) in self.modulus[..d].iter().enumerate() {
                let m = T::from_i64(*m).expect("coefficient conversion");
                poly[k - d + i] = poly[k - d + i].clone() - c.clone() * m;
            }
        }
        poly.truncate(d);
        poly
    }

    /// `ζ^e` for any integer exponent.
    pub fn zeta_pow<T: Coeff>(&self, e: i64) -> Cyclo<T> {
        let e = e.rem_euclid(self.order as i64) as usize;
        let mut poly = vec![T::zero(); e + 1];
        poly[e] = T::one();
        self.reduce(poly)
    }

    pub fn add<T: Coeff>(&self, a: &[T], b: &[T]) -> Cyclo<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    pub fn sub<T: Coeff>(&self, a: &[T], b: &[T]) -> Cyclo<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    pub fn scale<T: Coeff>(&self, a: &[T], c: &T) -> Cyclo<T> {
        a.iter().map(|x| x.clone() * c.clone()).collect()
    }

    pub fn mul<T: Coeff>(&self, a: &[T], b: &[T]) -> Cyclo<T> {
        let d = self.degree();
        let mut prod = vec![T::zero(); 2 * d.max(1) - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = prod[i + j].clone() + x.clone() * y.clone();
            }
        }
        self.reduce(prod)
    }

    pub fn is_zero<T: Coeff>(&self, a: &[T]) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// The element as a rational constant, when it is one.
    pub fn as_constant<T: Coeff>(&self, a: &[T]) -> Option<T> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }

    pub fn to_complex<T: Coeff>(&self, a: &[T]) -> Complex64 {
        let n = self.order as f64;
        a.iter()
            .enumerate()
            .map(|(k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(c, 2.0 * PI * k as f64 / n)
            })
            .sum()
    }

    pub fn to_rational(&self, a: &[i128]) -> Cyclo<Q> {
        a.iter().map(|&c| Q::from_i128(c).expect("i128 to rational")).collect()
    }

    /// Multiplicative inverse in `ℚ(ζ_N)` via the extended Euclidean
    /// algorithm against `Φ_N`; `None` for zero.
    pub fn inverse(&self, a: &[Q]) -> Option<Cyclo<Q>> {
        let modulus: Vec<Q> = self
            .modulus
            .iter()
            .map(|&c| Q::from_i64(c).expect("i64 to rational"))
            .collect();
        let mut r0 = trim(modulus);
        let mut r1 = trim(a.to_vec());
        if r1.is_empty() {
            return None;
        }
        let mut s0: Vec<Q> = Vec::new();
        let mut s1: Vec<Q> = vec![Q::from_i64(1).unwrap()];
        while r1.len() > 1 {
            let (quot, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // common factor with Φ_N, impossible for a nonzero field element
                return None;
            }
        }
        let c = r1[0].clone();
        let inv: Vec<Q> = s1.into_iter().map(|x| x / c.clone()).collect();
        Some(self.reduce(inv))
    }
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Q::zero);
            let y = b.get(i).cloned().unwrap_or_else(Q::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let lead = b[db].clone();
    let mut quot = vec![Q::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            rem[k - db + i] -= &c * y;
        }
        quot[k - db] = c;
    }
    (trim(quot), trim(rem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn zeta_powers_sum_to_zero() {
        for n in [3usize, 4, 8, 12, 24] {
            let f = CyclotomicField::new(n);
            let mut total: Cyclo<i128> = f.zero();
            for e in 0..n as i64 {
                total = f.add(&total, &f.zeta_pow(e));
            }
            assert!(f.is_zero(&total), "n = {n}");
            let z: Cyclo<i128> = f.zeta_pow(1);
            let mut p = f.constant(1);
            for _ in 0..n {
                p = f.mul(&p, &z);
            }
            assert_eq!(p, f.constant(1));
        }
    }

    #[test]
    fn complex_values() {
        let f = CyclotomicField::new(8);
        let z: Cyclo<i128> = f.zeta_pow(3);
        let c = f.to_complex(&z);
        let expect = Complex64::from_polar(1.0, 3.0 * PI / 4.0);
        assert!((c - expect).norm() < 1e-12);
    }

    #[test]
    fn inverses() {
        let f = CyclotomicField::new(12);
        let one: Cyclo<Q> = f.constant(qi(1));
        for e in 1..12 {
            // 1 − ζ^e is a unit or has a rational norm; either way invertible
            let z: Cyclo<Q> = f.zeta_pow(e);
            let a = f.sub(&one, &z);
            let inv = f.inverse(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), one, "e = {e}");
        }
        let half = f.constant(q(1, 2));
        assert_eq!(f.inverse(&half).unwrap(), f.constant(qi(2)));
        assert_eq!(f.inverse(&f.zero::<Q>()), None);
    }
}
