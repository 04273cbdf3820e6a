//! Fixed-point-free subgroups `Γ ⊂ SO(2m)` and their lifts to `Spin(2m)`.
//!
//! All angles are rational multiples of π and are stored as that rational
//! coefficient. An element of `SO(2m)` in normal form rotates the `j`-th
//! coordinate plane by `θ_j`; a lift to `Spin(2m)` is recorded by half
//! angles `t_j` with `2t_j ≡ θ_j (mod 2π)`. Its weights on the spinor
//! module are `Σ_j ε_j t_j` over sign vectors `ε ∈ {±1}^m`; even sign
//! vectors (`Π ε_j = +1`) span `Σ⁺`, odd ones `Σ⁻`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{floor_q, q_to_f64, qi, rem_q, Q};

/// `x mod 2` in `[0, 2)`: angles are periodic in `2π`.
pub(crate) fn mod2(x: &Q) -> Q {
    rem_q(x, &qi(2))
}

/// Representative of `±x mod 2` in `[0, 1]`, the class of a rotation angle
/// up to orientation of its plane.
fn fold(x: &Q) -> Q {
    let r = mod2(x);
    if r > Q::one() {
        qi(2) - r
    } else {
        r
    }
}

/// Sign vectors as bit masks: bit `j` set means `ε_j = −1`.
pub(crate) fn is_even(mask: usize) -> bool {
    mask.count_ones().is_multiple_of(2)
}

/// Spinor weights `Σ ε_j t_j` in units of π, split by parity `(even, odd)`.
pub fn weights(t: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut even = Vec::with_capacity(1 << t.len().saturating_sub(1));
    let mut odd = Vec::with_capacity(even.capacity());
    for mask in 0..1usize << t.len() {
        let w = t.iter().enumerate().fold(Q::zero(), |acc, (j, x)| {
            if mask >> j & 1 == 1 {
                acc - x
            } else {
                acc + x
            }
        });
        if is_even(mask) {
            even.push(w);
        } else {
            odd.push(w);
        }
    }
    (even, odd)
}

/// Half-spinor characters `(χ⁺, χ⁻)` of the spin element with half angles
/// `t`, in floating point.
pub fn characters(t: &[Q]) -> (Complex64, Complex64) {
    let (even, odd) = weights(t);
    let sum = |ws: &[Q]| {
        ws.iter()
            .map(|w| Complex64::from_polar(1.0, std::f64::consts::PI * q_to_f64(&mod2(w))))
            .sum::<Complex64>()
    };
    (sum(&even), sum(&odd))
}

fn weight_classes(ws: &[Q]) -> BTreeMap<Q, usize> {
    let mut out = BTreeMap::new();
    for w in ws {
        *out.entry(mod2(w)).or_insert(0) += 1;
    }
    out
}

/// Two spin elements in maximal-torus form are indistinguishable by both
/// half-spin representations.
fn same_spin_class(a: &[Q], b: &[Q]) -> bool {
    let (ae, ao) = weights(a);
    let (be, bo) = weights(b);
    weight_classes(&ae) == weight_classes(&be) && weight_classes(&ao) == weight_classes(&bo)
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupKind {
    /// `ℤ_q` generated by the rotation with angles `2π p_j / q`.
    Cyclic { q: u64, p: Vec<i64> },
    /// Element list with a multiplication table, `table[a][b]` = index of `ab`.
    Explicit { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceFormGroup {
    m: usize,
    angles: Vec<Vec<Q>>,
    identity: usize,
    kind: GroupKind,
}

impl SpaceFormGroup {
    /// The lens-space group `L(q; p_1, …, p_m)`.
    pub fn cyclic(q: u64, p: Vec<i64>) -> Result<Self> {
        let m = p.len();
        if m < 2 {
            return Err(Error::InvalidGroup(format!("need m >= 2 rotation planes, got {m}")));
        }
        if q == 0 {
            return Err(Error::InvalidGroup("group order must be positive".into()));
        }
        let qq = q as i64;
        for k in 1..qq {
            if p.iter().any(|&pj| (k * pj).rem_euclid(qq) == 0) {
                return Err(Error::FixedPoint(k as usize));
            }
        }
        let angles = (0..qq)
            .map(|k| p.iter().map(|&pj| mod2(&Q::new((2 * k * pj).into(), qq.into()))).collect())
            .collect();
        Ok(SpaceFormGroup {
            m,
            angles,
            identity: 0,
            kind: GroupKind::Cyclic { q, p },
        })
    }

    pub fn trivial(m: usize) -> Result<Self> {
        Self::cyclic(1, vec![1; m])
    }

    /// A group given by element angles and a multiplication table.
    ///
    /// Checks the group axioms, that exactly one element is the identity,
    /// that no other element has a zero angle, and that the angles of `g^j`
    /// agree with `j` times those of `g` up to plane orientation.
    pub fn explicit(m: usize, angles: Vec<Vec<Q>>, table: Vec<Vec<usize>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidGroup(format!("need m >= 2 rotation planes, got {m}")));
        }
        let order = angles.len();
        for a in &angles {
            if a.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: a.len() });
            }
        }
        let angles: Vec<Vec<Q>> = angles.iter().map(|a| a.iter().map(mod2).collect()).collect();
        let ids: Vec<usize> = (0..order).filter(|&i| angles[i].iter().all(Zero::is_zero)).collect();
        let identity = match ids.as_slice() {
            [i] => *i,
            [] => return Err(Error::InvalidGroup("no identity element".into())),
            [_, second, ..] => return Err(Error::FixedPoint(*second)),
        };
        for (i, a) in angles.iter().enumerate() {
            if i != identity && a.iter().any(Zero::is_zero) {
                return Err(Error::FixedPoint(i));
            }
        }
        if table.len() != order || table.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidGroup(format!("multiplication table must be {order} x {order}")));
        }
        if table.iter().flatten().any(|&x| x >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        for a in 0..order {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::InvalidGroup("identity row or column is not the identity".into()));
            }
            let mut seen = vec![false; order];
            for &x in &table[a] {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let g = SpaceFormGroup {
            m,
            angles,
            identity,
            kind: GroupKind::Explicit { table },
        };
        for i in 0..order {
            let base = &g.angles[i];
            for j in 2..g.element_order(i) {
                let mut expect: Vec<Q> = base.iter().map(|x| fold(&(x * qi(j as i64)))).collect();
                let mut found: Vec<Q> = g.angles[g.power(i, j)].iter().map(fold).collect();
                expect.sort();
                found.sort();
                if expect != found {
                    return Err(Error::InvalidGroup(format!(
                        "angles of element {i} to the power {j} do not match the table"
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Number of rotation planes; the space form has dimension `2m − 1`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn manifold_dim(&self) -> usize {
        2 * self.m - 1
    }

    pub fn order(&self) -> usize {
        self.angles.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// Rotation angles of element `i`, coefficients of π in `[0, 2)`.
    pub fn angles(&self, i: usize) -> &[Q] {
        &self.angles[i]
    }

    pub fn power(&self, i: usize, j: usize) -> usize {
        match &self.kind {
            GroupKind::Cyclic { q, .. } => (i * j) % *q as usize,
            GroupKind::Explicit { table } => {
                (0..j).fold(self.identity, |acc, _| table[acc][i])
            }
        }
    }

    pub fn element_order(&self, i: usize) -> usize {
        match &self.kind {
            GroupKind::Cyclic { q, .. } => {
                let q = *q as usize;
                q / i.gcd(&q)
            }
            GroupKind::Explicit { table } => {
                let mut x = i;
                let mut k = 1;
                while x != self.identity {
                    x = table[x][i];
                    k += 1;
                }
                k
            }
        }
    }
}

/// A homomorphism `ε: Γ → Spin(2m)` covering the inclusion, stored as the
/// half angles of `ε(γ)` for every element.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinLift {
    half_angles: Vec<Vec<Q>>,
}

impl SpinLift {
    pub fn half_angles(&self, i: usize) -> &[Q] {
        &self.half_angles[i]
    }

    pub fn len(&self) -> usize {
        self.half_angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_angles.is_empty()
    }

    /// Smallest `N` with every spinor weight a multiple of `2π/N`.
    pub fn root_order(&self) -> usize {
        let l = self
            .half_angles
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, t| acc.lcm(t.denom()));
        2 * l.to_usize().expect("root order fits in usize")
    }
}

/// Normal form of a half-angle vector: `t_j ∈ [0, 1)` for `j ≥ 2`, the
/// compensating shifts moved into `t_1`, then `t_1 ∈ [0, 2)`. Shifting two
/// half angles by π each does not change the spin element.
pub fn canonical_half_angles(t: &[Q]) -> Vec<Q> {
    let mut c = t.to_vec();
    for j in 1..c.len() {
        let f = Q::from_integer(floor_q(&c[j]));
        c[j] -= &f;
        c[0] += f;
    }
    if let Some(first) = c.first_mut() {
        *first = mod2(first);
    }
    c
}

/// Whether `ε(g)^q = 1` for the spin element with half angles `t`: every
/// weight times `q` must lie in `2πℤ`.
pub fn cyclic_lift_is_homomorphic(q: u64, t: &[Q]) -> bool {
    let (even, odd) = weights(t);
    let qq = qi(q as i64);
    even.iter().chain(&odd).all(|w| mod2(&(w * &qq)).is_zero())
}

/// All spin structures of a cyclic space form, ordered lexicographically by
/// the generator's canonical half angles. Explicit groups take caller
/// lifts through [`validate_lift`] instead.
pub fn enumerate_spin_structures(g: &SpaceFormGroup) -> Result<Vec<SpinLift>> {
    let (q, p) = match g.kind() {
        GroupKind::Cyclic { q, p } => (*q, p),
        GroupKind::Explicit { .. } => {
            return Err(Error::InvalidGroup(
                "spin structures of explicit groups must be supplied as lifts".into(),
            ))
        }
    };
    let base: Vec<Q> = p.iter().map(|&pj| Q::new(pj.into(), (q as i64).into())).collect();
    let mut other = base.clone();
    other[0] += Q::one();
    let mut gens: Vec<Vec<Q>> = [base, other]
        .iter()
        .map(|t| canonical_half_angles(t))
        .filter(|t| cyclic_lift_is_homomorphic(q, t))
        .collect();
    gens.sort();
    gens.dedup();
    Ok(gens
        .into_iter()
        .map(|t| SpinLift {
            half_angles: (0..q as i64)
                .map(|k| {
                    let kt: Vec<Q> = t.iter().map(|x| x * qi(k)).collect();
                    canonical_half_angles(&kt)
                })
                .collect(),
        })
        .collect())
}

/// Checks caller-proposed half angles for every element of `g`.
///
/// Each `ε(γ)` must cover `γ`, `ε(1)` must be trivial, and `ε(γ)^j` must
/// be conjugate to `ε(γ^j)` for every power, compared through the weights
/// of both half-spin representations. These conditions are necessary but
/// not sufficient: whether `ε(a)ε(b) = ε(ab)` for non-commuting `a, b`
/// cannot be read off normal-form angles, so that part rests with the
/// caller.
pub fn validate_lift(g: &SpaceFormGroup, half_angles: Vec<Vec<Q>>) -> Result<SpinLift> {
    if half_angles.len() != g.order() {
        return Err(Error::DimensionMismatch { expected: g.order(), found: half_angles.len() });
    }
    for (i, t) in half_angles.iter().enumerate() {
        if t.len() != g.m() {
            return Err(Error::DimensionMismatch { expected: g.m(), found: t.len() });
        }
        for (tj, theta) in t.iter().zip(g.angles(i)) {
            if !mod2(&(tj * qi(2) - theta)).is_zero() {
                return Err(Error::InvalidLift(format!(
                    "half angle {tj} of element {i} does not cover the rotation angle {theta}"
                )));
            }
        }
    }
    let zero = vec![Q::zero(); g.m()];
    if !same_spin_class(&half_angles[g.identity()], &zero) {
        return Err(Error::InvalidLift("the identity does not lift to 1".into()));
    }
    for i in 0..g.order() {
        let t = &half_angles[i];
        for j in 2..=g.element_order(i) {
            let jt: Vec<Q> = t.iter().map(|x| x * qi(j as i64)).collect();
            if !same_spin_class(&jt, &half_angles[g.power(i, j)]) {
                return Err(Error::InvalidLift(format!(
                    "lift of element {i} to the power {j} disagrees with the lift of the power"
                )));
            }
        }
    }
    Ok(SpinLift {
        half_angles: half_angles
            .iter()
            .map(|t| canonical_half_angles(t))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn characters_of_small_elements() {
        let (p, m) = characters(&[Q::zero(), Q::zero()]);
        assert!((p - 2.0).norm() < 1e-12 && (m - 2.0).norm() < 1e-12);
        let (p, m) = characters(&[q(1, 2), q(1, 2)]);
        assert!((p + 2.0).norm() < 1e-12, "{p}");
        assert!((m - 2.0).norm() < 1e-12, "{m}");
        let (p, m) = characters(&vec![Q::zero(); 4]);
        assert!((p - 8.0).norm() < 1e-12 && (m - 8.0).norm() < 1e-12);
    }

    #[test]
    fn projective_space_lifts() {
        let rp3 = SpaceFormGroup::cyclic(2, vec![1, 1]).unwrap();
        let lifts = enumerate_spin_structures(&rp3).unwrap();
        assert_eq!(lifts.len(), 2);
        assert_eq!(lifts[0].half_angles(1), &[q(1, 2), q(1, 2)]);
        assert_eq!(lifts[1].half_angles(1), &[q(3, 2), q(1, 2)]);
        let rp5 = SpaceFormGroup::cyclic(2, vec![1, 1, 1]).unwrap();
        assert!(enumerate_spin_structures(&rp5).unwrap().is_empty());
        let trivial = SpaceFormGroup::trivial(2).unwrap();
        assert_eq!(enumerate_spin_structures(&trivial).unwrap().len(), 1);
    }

    #[test]
    fn odd_order_has_one_lift() {
        let g = SpaceFormGroup::cyclic(5, vec![1, 2]).unwrap();
        assert_eq!(enumerate_spin_structures(&g).unwrap().len(), 1);
    }

    #[test]
    fn fixed_points_rejected() {
        assert_eq!(SpaceFormGroup::cyclic(4, vec![1, 2]), Err(Error::FixedPoint(2)));
        assert!(SpaceFormGroup::cyclic(3, vec![1]).is_err());
    }

    #[test]
    fn enumerated_lifts_pass_validation() {
        let g = SpaceFormGroup::cyclic(6, vec![1, 5]).unwrap();
        for lift in enumerate_spin_structures(&g).unwrap() {
            let raw = (0..g.order()).map(|i| lift.half_angles(i).to_vec()).collect();
            assert_eq!(validate_lift(&g, raw).unwrap(), lift);
        }
    }

    #[test]
    fn bad_lift_rejected() {
        let g = SpaceFormGroup::cyclic(2, vec![1, 1]).unwrap();
        let wrong_cover = vec![vec![Q::zero(); 2], vec![q(1, 4), q(1, 2)]];
        assert!(matches!(validate_lift(&g, wrong_cover), Err(Error::InvalidLift(_))));
        // ℝP⁵: both candidate lifts of −1 square to −1 in Spin(6)
        let g = SpaceFormGroup::cyclic(2, vec![1, 1, 1]).unwrap();
        let t = vec![vec![Q::zero(); 3], vec![q(1, 2); 3]];
        assert!(matches!(validate_lift(&g, t), Err(Error::InvalidLift(_))));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical_half_angles(&[q(1, 2), q(3, 2)]), vec![q(3, 2), q(1, 2)]);
        assert_eq!(canonical_half_angles(&[q(5, 2), q(-1, 2)]), vec![q(3, 2), q(1, 2)]);
    }
}
