mod common;

use common::{poincare_long_division, quaternion_group, quaternion_lift, random_lens};
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinspec::exact::{q, qi};
use spinspec::spaceform::*;
use spinspec::sphere::{sphere_multiplicity, sphere_spectrum};
use spinspec::Error;

fn lens(qq: u64, p: &[i64]) -> SpaceFormGroup {
    SpaceFormGroup::cyclic(qq, p.to_vec()).unwrap()
}

#[test]
fn projective_seven_space() {
    let g = lens(2, &[1, 1, 1, 1]);
    let lifts = enumerate_spin_structures(&g).unwrap();
    assert_eq!(lifts.len(), 2);
    let etas: Vec<_> = lifts
        .iter()
        .map(|l| eta_spaceform(&g, l, Backend::Exact).unwrap())
        .collect();
    assert_eq!(etas, vec![EtaValue::Exact(q(-1, 16)), EtaValue::Exact(q(1, 16))]);
}

#[test]
fn trivial_group_matches_sphere_spectrum() {
    let g = SpaceFormGroup::trivial(2).unwrap();
    let lift = &enumerate_spin_structures(&g).unwrap()[0];
    let quotient = spaceform_spectrum(&g, lift, 20, Backend::Exact).unwrap();
    let sphere = sphere_spectrum(3, 20).unwrap();
    assert_eq!(quotient.entries(), sphere.entries());
    assert_eq!(quotient.window(), sphere.window());
}

#[test]
fn series_matches_long_division() {
    for (qq, p) in [(2, vec![1, 1]), (5, vec![1, 2]), (12, vec![5, 7]), (3, vec![1, 1, 1])] {
        let g = lens(qq, &p);
        for lift in enumerate_spin_structures(&g).unwrap() {
            let c = poincare_multiplicities(&g, &lift, 25, Backend::Exact).unwrap();
            let (p_raw, m_raw) = poincare_long_division(&g, &lift, 25);
            let scale = |v: &[u64]| v.iter().map(|&x| x as i128 * qq as i128).collect::<Vec<_>>();
            assert_eq!(scale(&c.mu_plus), p_raw, "L({qq}; {p:?})");
            assert_eq!(scale(&c.mu_minus), m_raw, "L({qq}; {p:?})");
        }
    }
}

#[test]
fn quaternion_space() {
    let (angles, table) = quaternion_group();
    let g = SpaceFormGroup::explicit(2, angles, table).unwrap();
    let mut total_plus = [0u64; 13];
    for (si, sj) in [(false, false), (true, false), (false, true), (true, true)] {
        let lift = validate_lift(&g, quaternion_lift(si, sj)).unwrap();
        let c = poincare_multiplicities(&g, &lift, 12, Backend::Exact).unwrap();
        let f = poincare_multiplicities(&g, &lift, 12, Backend::Float).unwrap();
        assert_eq!(c, f);
        let (p_raw, _) = poincare_long_division(&g, &lift, 12);
        assert_eq!(p_raw, c.mu_plus.iter().map(|&x| 8 * x as i128).collect::<Vec<_>>());
        for (acc, x) in total_plus.iter_mut().zip(&c.mu_plus) {
            *acc += x;
        }
        let exact = eta_spaceform(&g, &lift, Backend::Exact).unwrap();
        let float = eta_spaceform(&g, &lift, Backend::Float).unwrap();
        assert!((exact.to_f64() - float.to_f64()).abs() < 1e-12);
        assert!((theta_diff(&g, &lift, 0.0).unwrap() - exact.to_f64()).abs() < 1e-9);
    }
    let base = validate_lift(&g, quaternion_lift(false, false)).unwrap();
    assert_eq!(eta_spaceform(&g, &base, Backend::Exact).unwrap(), EtaValue::Exact(q(13, 16)));
    for (k, t) in total_plus.iter().enumerate() {
        assert!(*t <= sphere_multiplicity(3, k as u64).unwrap());
    }
}

#[test]
fn explicit_group_validation() {
    let (angles, mut table) = quaternion_group();
    table[2].swap(3, 4);
    assert!(SpaceFormGroup::explicit(2, angles.clone(), table).is_err());
    let (_, table) = quaternion_group();
    let mut wrong = angles.clone();
    wrong[2] = vec![q(1, 3), q(1, 2)];
    assert!(SpaceFormGroup::explicit(2, wrong, table.clone()).is_err());
    let g = SpaceFormGroup::explicit(2, angles, table).unwrap();
    let mut lift = quaternion_lift(false, false);
    lift[2][0] = q(1, 8);
    assert!(matches!(validate_lift(&g, lift), Err(Error::InvalidLift(_))));
}

#[test]
fn explicit_json_roundtrip() {
    let text = r#"{"m": 2,
        "elements": [["0","0"], ["1","1"]],
        "table": [[0,1],[1,0]],
        "lifts": [[["0","0"],["1/2","1/2"]], [[0,0],[[3,2],[1,2]]]]}"#;
    let input = explicit_from_json(&serde_json::from_str(text).unwrap()).unwrap();
    assert_eq!(input.group.order(), 2);
    let etas: Vec<_> = input
        .lifts
        .into_iter()
        .map(|l| {
            let lift = validate_lift(&input.group, l).unwrap();
            eta_spaceform(&input.group, &lift, Backend::Exact).unwrap()
        })
        .collect();
    assert_eq!(etas, vec![EtaValue::Exact(q(1, 4)), EtaValue::Exact(q(-1, 4))]);
}

#[test]
fn lift_swap_negates_projective_eta() {
    for m in [2usize, 4, 6] {
        let g = lens(2, &vec![1; m]);
        let lifts = enumerate_spin_structures(&g).unwrap();
        let a = eta_spaceform(&g, &lifts[0], Backend::Exact).unwrap();
        let b = eta_spaceform(&g, &lifts[1], Backend::Exact).unwrap();
        assert_eq!(a.as_exact().unwrap(), &-b.as_exact().unwrap().clone());
        assert_eq!(a.as_exact().unwrap().abs(), rp_eta_modulus(m));
    }
}

#[test]
fn odd_plane_count_has_vanishing_eta() {
    let g = lens(7, &[1, 2, 3]);
    for lift in enumerate_spin_structures(&g).unwrap() {
        assert_eq!(eta_spaceform(&g, &lift, Backend::Exact).unwrap(), EtaValue::Exact(qi(0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lens_space_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_lens(&mut rng, 12);
        let lifts = enumerate_spin_structures(&g).unwrap();
        prop_assert!(!lifts.is_empty());
        let mut sum_plus = [0u64; 16];
        let mut sum_minus = [0u64; 16];
        for lift in &lifts {
            let exact = poincare_multiplicities(&g, lift, 15, Backend::Exact).unwrap();
            let float = poincare_multiplicities(&g, lift, 15, Backend::Float).unwrap();
            prop_assert_eq!(&exact, &float);
            for k in 0..16 {
                sum_plus[k] += exact.mu_plus[k];
                sum_minus[k] += exact.mu_minus[k];
            }
            let eta = eta_spaceform(&g, lift, Backend::Exact).unwrap();
            let approx = eta_spaceform(&g, lift, Backend::Float).unwrap();
            prop_assert!((eta.to_f64() - approx.to_f64()).abs() < 1e-9);
            prop_assert!((theta_diff(&g, lift, 0.0).unwrap() - eta.to_f64()).abs() < 1e-9);
            prop_assert!(theta_diff(&g, lift, 10.0).unwrap().abs() < 1e-3);
        }
        for k in 0..16 {
            let s = sphere_multiplicity(3, k as u64).unwrap();
            prop_assert!(sum_plus[k] <= s && sum_minus[k] <= s);
        }
    }

    #[test]
    fn swapping_the_generator_lift_negates_odd_powers(qh in 1u64..7, a in 0i64..50, b in 0i64..50) {
        let qq = 2 * qh;
        let p = vec![2 * a + 1, 2 * b + 1];
        prop_assume!(SpaceFormGroup::cyclic(qq, p.clone()).is_ok());
        let g = lens(qq, &p);
        let lifts = enumerate_spin_structures(&g).unwrap();
        prop_assert_eq!(lifts.len(), 2);
        for k in 0..g.order() {
            let d0 = character_difference(lifts[0].half_angles(k));
            let d1 = character_difference(lifts[1].half_angles(k));
            let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
            prop_assert!((d0 - d1 * sign).norm() < 1e-9);
        }
    }
}
