use std::f64::consts::PI;

use weylmittag::charalg::{character_eval_f64, CharacterCombo, CharacterMethod};
use weylmittag::mittag::{
    decompose, dual_combo, leading_weight, pole_expansion_check, pole_factor, pole_sum_f64, singular_distance,
    support_set, MLProblem, BATTERY,
};
use weylmittag::rational::{parse_rational, q, Q};
use weylmittag::rootsys::{CenterClass, CoweightVector, RootSystem, Weight};

fn class(s: &[&str]) -> CenterClass {
    CenterClass::new(s.iter().map(|x| parse_rational(x).unwrap()).collect())
}

fn combo(entries: &[(&[i64], Q)]) -> CharacterCombo {
    CharacterCombo::from_pairs(entries.iter().map(|(w, v)| (Weight::from_ints(w), v.clone()))).unwrap()
}

fn check(t: &str, k: u32, m: &[&str], expected: &[(&[i64], Q)]) {
    let rs = RootSystem::new(t).unwrap();
    let p = MLProblem::new(&rs, k, class(m)).unwrap();
    let d = decompose(&p).unwrap();
    assert_eq!(d.combo, combo(expected), "{t} k={k} {m:?}");
    assert!(d.verified(&rs), "{t} k={k} {m:?}");
}

#[test]
fn a1_decompositions() {
    check("A1", 1, &["1"], &[(&[0], q(1, 1))]);
    check("A1", 1, &["1/2"], &[(&[1], q(1, 2))]);
    check("A1", 2, &["1"], &[(&[0], q(1, 1))]);
    check("A1", 4, &["1"], &[(&[0], q(1, 2)), (&[2], q(1, 6))]);
    check("A1", 4, &["1/2"], &[(&[1], q(11, 24)), (&[3], q(1, 48))]);
}

#[test]
fn rank_two_decompositions() {
    check("A2", 2, &["1", "1"], &[(&[0, 0], q(1, 3)), (&[1, 1], q(1, 12))]);
    check(
        "A2",
        2,
        &["1/3", "2/3"],
        &[(&[0, 2], q(13, 324)), (&[1, 0], q(77, 324)), (&[2, 1], q(1, 324))],
    );
    check(
        "A2",
        3,
        &["1", "1"],
        &[
            (&[0, 0], q(25, 168)),
            (&[0, 3], q(1, 210)),
            (&[1, 1], q(19, 210)),
            (&[2, 2], q(1, 840)),
            (&[3, 0], q(1, 210)),
        ],
    );
    check("B2", 1, &["1", "1"], &[(&[0, 0], q(3, 8)), (&[1, 0], q(1, 8))]);
    check("B2", 1, &["1/2", "1"], &[(&[0, 1], q(1, 4))]);
    check(
        "B2",
        2,
        &["1/2", "1"],
        &[(&[0, 1], q(1013, 7680)), (&[0, 3], q(13, 7680)), (&[1, 1], q(13, 480)), (&[2, 1], q(1, 7680))],
    );
    check(
        "G2",
        1,
        &["1", "1"],
        &[(&[0, 0], q(1, 9)), (&[0, 1], q(1, 72)), (&[1, 0], q(13, 144)), (&[2, 0], q(1, 432))],
    );
}

#[test]
fn a3_decompositions() {
    check("A3", 1, &["1", "1", "1"], &[(&[0, 0, 0], q(3, 8)), (&[1, 0, 1], q(1, 24))]);
    check("A3", 1, &["1/4", "1/2", "3/4"], &[(&[0, 1, 1], q(1, 96)), (&[1, 0, 0], q(19, 96))]);
}

#[test]
fn battery_is_verified_with_expected_leading_weight() {
    for &(t, k) in BATTERY {
        if t == "A3" && k == 2 {
            continue;
        }
        let rs = RootSystem::new(t).unwrap();
        for xi in rs.center_classes() {
            let p = MLProblem::new(&rs, k, xi.clone()).unwrap();
            let d = decompose(&p).unwrap();
            assert!(d.verified(&rs), "{t} k={k} {xi}");
            if rs.rank() > 1 || k > 1 {
                assert_eq!(leading_weight(&p).unwrap(), d.leading, "{t} k={k} {xi}");
            }
            for lambda in d.combo.keys() {
                assert!(support_set(&p).contains(lambda) || rs.rank() == 1 && k == 1);
            }
        }
    }
}

#[test]
fn dual_class_gives_dual_decomposition() {
    let rs = RootSystem::new("A2").unwrap();
    let a = decompose(&MLProblem::new(&rs, 2, class(&["1/3", "2/3"])).unwrap()).unwrap();
    let b = decompose(&MLProblem::new(&rs, 2, class(&["2/3", "1/3"])).unwrap()).unwrap();
    assert_eq!(dual_combo(&rs, &a.combo).unwrap(), b.combo);
}

#[test]
fn a1_closed_forms() {
    let rs = RootSystem::new("A1").unwrap();
    let triv = MLProblem::new(&rs, 2, CenterClass::trivial(1)).unwrap();
    let d = decompose(&triv).unwrap();
    for x in [0.1, 0.27, 0.43] {
        let f = character_eval_f64(&rs, &d.combo, &[x], CharacterMethod::WeightSum, 0.0).re;
        assert!((f - 1.0).abs() < 1e-12);
    }
    // u = alpha(x) = 2x in coroot coordinates
    let nontriv = MLProblem::new(&rs, 1, class(&["1/2"])).unwrap();
    let d = decompose(&nontriv).unwrap();
    for x in [0.1, 0.27] {
        let f = character_eval_f64(&rs, &d.combo, &[x], CharacterMethod::WeightSum, 0.0).re;
        assert!((f - (PI * 2.0 * x).cos()).abs() < 1e-12);
    }
}

#[test]
fn pole_sum_matches_characters() {
    for (t, k) in [("A1", 3), ("A2", 2), ("B2", 2), ("G2", 2)] {
        let rs = RootSystem::new(t).unwrap();
        for xi in rs.center_classes() {
            let p = MLProblem::new(&rs, k, xi).unwrap();
            let x = CoweightVector::new((0..rs.rank()).map(|i| q(100 + 37 * i as i64 + 11 * (i * i) as i64, 997)).collect());
            // M grows like prod 1/sin^k, so compare relative to its size
            let scale = pole_sum_f64(&p, &x.to_f64(), 160).unwrap().norm();
            let coarse = pole_expansion_check(&p, &x, 40).unwrap() / scale;
            let fine = pole_expansion_check(&p, &x, 160).unwrap() / scale;
            assert!(fine < 1e-6 && fine <= coarse + 1e-12, "{t} k={k}: {coarse:e} -> {fine:e}");
        }
    }
}

#[test]
fn pole_sum_rejects_walls() {
    let rs = RootSystem::new("A2").unwrap();
    let p = MLProblem::new(&rs, 2, CenterClass::trivial(2)).unwrap();
    assert!(singular_distance(&rs, &[0.5, 0.5]) < 1e-12);
    assert!(pole_sum_f64(&p, &[0.5, 0.5], 10).is_err());
    assert!(pole_factor(&rs, 2, &[0.2, 0.3]).is_finite());
}

#[test]
fn invalid_problems_are_rejected() {
    let rs = RootSystem::new("A2").unwrap();
    assert!(MLProblem::new(&rs, 0, CenterClass::trivial(2)).is_err());
    assert!(MLProblem::new(&rs, 1, class(&["1/2", "1/2"])).is_err());
    assert!(MLProblem::new(&rs, 1, class(&["1"])).is_err());
}
