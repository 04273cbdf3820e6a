//! Independent reference computations shared by the integration tests and
//! the acceptance runner. Nothing here calls the enumeration or series code
//! under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use spinspec::cyclotomic::{Cyclo, CyclotomicField};
use spinspec::exact::{q, Q};
use spinspec::lattice::{LatticeData, LatticeScale, Matrix, SpinDelta};
use spinspec::spaceform::{SpaceFormGroup, SpinLift};
use spinspec::ExactReal;

/// Inverse by the adjugate formula, for dimensions 1 to 3.
pub fn adjugate_inverse(g: &Matrix) -> Matrix {
    let n = g.len();
    let minor = |skip_r: usize, skip_c: usize| -> Matrix {
        g.iter()
            .enumerate()
            .filter(|(r, _)| *r != skip_r)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != skip_c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect()
    };
    fn det(m: &Matrix) -> Q {
        match m.len() {
            0 => q(1, 1),
            1 => m[0][0].clone(),
            2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
            3 => {
                &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                    - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                    + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
            }
            _ => unimplemented!("oracle covers n <= 3"),
        }
    }
    let d = det(g);
    assert!(!d.is_zero(), "singular Gram matrix");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(j, i));
                    let s = if (i + j) % 2 == 0 { c } else { -c };
                    s / &d
                })
                .collect()
        })
        .collect()
}

/// Brute-force box search for the torus spectrum: every dual vector
/// `Σ (a_j + δ_j/2) b*_j` inside a box derived from a crude eigenvalue
/// bound, each contributing `rank/2` to both signs (`rank` at zero).
pub fn torus_brute_force(lat: &LatticeData, delta: &SpinDelta, window: &ExactReal) -> Vec<(ExactReal, u64)> {
    let n = lat.dim();
    let basis = lat.basis();
    let gram: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| basis[i].iter().zip(&basis[j]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let dual = adjugate_inverse(&gram);
    let pi = lat.scale() == LatticeScale::Rational;
    // |c|² ≤ |v|²_{G*} / λ_min(G*), with λ_min from a float eigensolver
    // shaved by a safety factor
    let dual_f = nalgebra::DMatrix::from_fn(n, n, |i, j| dual[i][j].to_f64().unwrap());
    let lmin = nalgebra::SymmetricEigen::new(dual_f.clone()).eigenvalues.min() * 0.99;
    assert!(lmin > 0.0);
    let w = window.to_f64();
    let r2 = w * w / 4.0 / if pi { std::f64::consts::PI.powi(2) } else { 1.0 };
    let b = (r2 / lmin).sqrt().ceil() as i64 + 1;
    let rank = 1u64 << (n / 2);
    let mut counts: BTreeMap<Q, u64> = BTreeMap::new();
    let mut a = vec![-b; n];
    loop {
        let cf: Vec<f64> = (0..n).map(|j| a[j] as f64 + delta.bits()[j] as f64 / 2.0).collect();
        let approx: f64 = (0..n).map(|i| (0..n).map(|j| cf[i] * dual_f[(i, j)] * cf[j]).sum::<f64>()).sum();
        // exact arithmetic only near the boundary
        if approx <= r2 * (1.0 + 1e-9) + 1e-12 {
            let c: Vec<Q> = (0..n)
                .map(|j| q(a[j], 1) + q(delta.bits()[j] as i64, 2))
                .collect();
            let mut norm2 = Q::zero();
            for i in 0..n {
                for j in 0..n {
                    norm2 += &c[i] * &dual[i][j] * &c[j];
                }
            }
            let lambda = ExactReal::from_parts(false, pi, norm2.clone() * q(4, 1));
            if lambda <= *window {
                *counts.entry(norm2).or_insert(0) += 1;
            }
        }
        let mut j = 0;
        while j < n && a[j] == b {
            a[j] = -b;
            j += 1;
        }
        if j == n {
            break;
        }
        a[j] += 1;
    }
    let mut out = Vec::new();
    for (norm2, count) in counts {
        let lambda = ExactReal::from_parts(false, pi, norm2 * q(4, 1));
        if lambda.is_zero() {
            out.push((lambda, count * rank));
        } else {
            assert_eq!(count * rank % 2, 0);
            out.push((lambda.neg(), count * rank / 2));
            out.push((lambda, count * rank / 2));
        }
    }
    out.sort();
    out
}

fn det_f64(m: &Matrix) -> f64 {
    nalgebra::DMatrix::from_fn(m.len(), m.len(), |i, j| m[i][j].to_f64().unwrap()).determinant()
}

/// A random nonsingular rational basis with small entries.
pub fn random_basis(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let m: Matrix = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect())
            .collect();
        if det_f64(&m).abs() > 0.05 {
            return m;
        }
    }
}

/// Poincaré coefficients by long division of `(χ∓ − zχ±)` by the full
/// polynomial `det(1 − zγ) = Π_j (1 − (ζ^a + ζ^−a) z + z²)`, in `ℤ[ζ_N]`
/// represented directly modulo `Φ_N`. Returns the raw sums over `Γ`.
pub fn poincare_long_division(g: &SpaceFormGroup, lift: &SpinLift, kmax: usize) -> (Vec<i128>, Vec<i128>) {
    let mut den = BigInt::from(1);
    for i in 0..g.order() {
        for t in lift.half_angles(i) {
            den = num_integer::lcm(den, t.denom().clone());
        }
    }
    let n = 2 * den.to_usize().unwrap();
    let f = CyclotomicField::new(n);
    let zeta = |t: &Q| -> i64 { (t * q(n as i64, 2)).to_integer().to_i64().unwrap() };
    let mut tot_p: Vec<Cyclo<i128>> = vec![f.zero(); kmax + 1];
    let mut tot_m: Vec<Cyclo<i128>> = vec![f.zero(); kmax + 1];
    for i in 0..g.order() {
        let t = lift.half_angles(i);
        let m = t.len();
        let mut chi_p: Cyclo<i128> = f.zero();
        let mut chi_m: Cyclo<i128> = f.zero();
        for signs in 0..1u32 << m {
            let mut e = 0i64;
            for (j, tj) in t.iter().enumerate() {
                e += if signs >> j & 1 == 1 { -zeta(tj) } else { zeta(tj) };
            }
            let w = f.zeta_pow(e);
            if signs.count_ones() % 2 == 0 {
                chi_p = f.add(&chi_p, &w);
            } else {
                chi_m = f.add(&chi_m, &w);
            }
        }
        // det(1 − zγ) as a polynomial in z, constant term 1
        let mut det: Vec<Cyclo<i128>> = vec![f.constant(1)];
        for tj in t {
            let a = 2 * zeta(tj);
            let two_cos = f.add(&f.zeta_pow::<i128>(a), &f.zeta_pow(-a));
            let factor = [f.constant(1), f.scale(&two_cos, &-1), f.constant(1)];
            let mut next = vec![f.zero(); det.len() + 2];
            for (x, dx) in det.iter().enumerate() {
                for (y, fy) in factor.iter().enumerate() {
                    next[x + y] = f.add(&next[x + y], &f.mul(dx, fy));
                }
            }
            det = next;
        }
        for (tot, lead, next) in [(&mut tot_p, &chi_m, &chi_p), (&mut tot_m, &chi_p, &chi_m)] {
            let mut num = vec![f.zero(); kmax + 1];
            num[0] = lead.clone();
            if kmax >= 1 {
                num[1] = f.scale(next, &-1);
            }
            let mut quot: Vec<Cyclo<i128>> = Vec::with_capacity(kmax + 1);
            for k in 0..=kmax {
                let mut c = num[k].clone();
                for i in 1..det.len().min(k + 1) {
                    c = f.sub(&c, &f.mul(&det[i], &quot[k - i]));
                }
                quot.push(c);
            }
            for (acc, x) in tot.iter_mut().zip(&quot) {
                *acc = f.add(acc, x);
            }
        }
    }
    let settle = |v: Vec<Cyclo<i128>>| -> Vec<i128> {
        v.iter()
            .map(|c| f.as_constant(c).expect("Galois-invariant total"))
            .collect()
    };
    (settle(tot_p), settle(tot_m))
}

/// `L(q; p_1, p_2)` with `q ≤ qmax` and both `p_j` prime to `q`.
pub fn random_lens(rng: &mut impl Rng, qmax: u64) -> SpaceFormGroup {
    loop {
        let qq = rng.gen_range(2..=qmax);
        let p: Vec<i64> = (0..2).map(|_| rng.gen_range(1..qq as i64)).collect();
        if let Ok(g) = SpaceFormGroup::cyclic(qq, p) {
            return g;
        }
    }
}

/// The quaternion group `{±1, ±i, ±j, ±k}` acting on `ℍ = ℝ⁴` by left
/// multiplication, index `2u + s` for unit `u ∈ {1, i, j, k}` and sign bit
/// `s`. Returns rotation angles and the multiplication table.
pub fn quaternion_group() -> (Vec<Vec<Q>>, Vec<Vec<usize>>) {
    // unit products: (sign, unit) of u·v
    let prod = |u: usize, v: usize| -> (bool, usize) {
        match (u, v) {
            (0, x) | (x, 0) => (false, x),
            (a, b) if a == b => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (neg, u) = prod(a / 2, b / 2);
            let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
            table[a][b] = 2 * u + sign as usize;
        }
    }
    let angles = (0..8)
        .map(|i| {
            let a = match (i / 2, i % 2) {
                (0, 0) => q(0, 1),
                (0, _) => q(1, 1),
                (_, 0) => q(1, 2),
                _ => q(3, 2),
            };
            vec![a.clone(), a]
        })
        .collect();
    (angles, table)
}

/// Half angles of the lift through `SU(2) ⊂ Spin(4)`, twisted by the
/// character `Q8 → {±1}` sending `i ↦ si`, `j ↦ sj` (a twist adds π to
/// the first half angle).
pub fn quaternion_lift(si: bool, sj: bool) -> Vec<Vec<Q>> {
    (0..8)
        .map(|i| {
            let u = i / 2;
            let base = match (u, i % 2) {
                (0, 0) => q(0, 1),
                (0, _) => q(1, 2),
                (_, 0) => q(1, 4),
                _ => q(3, 4),
            };
            let twisted = match u {
                1 => si,
                2 => sj,
                3 => si ^ sj,
                _ => false,
            };
            let first = if twisted { &base + q(1, 1) } else { base.clone() };
            vec![first, base]
        })
        .collect()
}

pub fn link_fixture(name: &str) -> spinspec::links::LinkDiagram {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/links")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    spinspec::links::parse_diagram(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub const EVEN_LINKS: [&str; 4] = ["whitehead.lnk", "6-2-3.lnk", "7-2-4.lnk", "borromean.lnk"];
pub const ODD_LINKS: [&str; 4] = ["6-2-2.lnk", "7-2-1.lnk", "7-2-2.lnk", "6-3-1.lnk"];
