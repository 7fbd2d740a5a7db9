use weylmittag::charalg::{
    characters_to_weights, freudenthal, tensor_decompose, weights_to_characters, weyl_dim, CharacterCombo,
};
use weylmittag::rational::{q, qi};
use weylmittag::rootsys::{CenterClass, RootSystem, Weight};

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

#[test]
fn type_data() {
    for (t, roots, order, det) in [
        ("A1", 1, 2, 2),
        ("A2", 3, 6, 3),
        ("A3", 6, 24, 4),
        ("B2", 4, 8, 2),
        ("B3", 9, 48, 2),
        ("C3", 9, 48, 2),
        ("D4", 12, 192, 4),
        ("G2", 6, 12, 1),
        ("F4", 24, 1152, 1),
        ("E6", 36, 51840, 3),
    ] {
        let rs = RootSystem::new(t).unwrap();
        assert_eq!(rs.num_positive_roots(), roots, "{t}");
        assert_eq!(rs.weyl_order, order, "{t}");
        assert_eq!(rs.det_cartan, det, "{t}");
        assert_eq!(rs.center_classes().len() as i64, det, "{t}");
    }
}

#[test]
fn invalid_types() {
    for t in ["", "A0", "B1", "C2", "D3", "E5", "G3", "F5", "X2", "A"] {
        assert!(RootSystem::new(t).is_err(), "{t}");
    }
}

#[test]
fn cartan_convention() {
    let b2 = RootSystem::new("B2").unwrap();
    assert_eq!(b2.cartan, vec![vec![2, -1], vec![-2, 2]]);
    let g2 = RootSystem::new("G2").unwrap();
    assert_eq!(g2.cartan, vec![vec![2, -3], vec![-1, 2]]);
    assert_eq!(b2.simple_root(0), w(&[2, -2]));
}

#[test]
fn highest_root_and_rho() {
    let a2 = RootSystem::new("A2").unwrap();
    assert_eq!(a2.positive_roots.last().unwrap(), &w(&[1, 1]));
    assert_eq!(a2.rho, w(&[1, 1]));
    let g2 = RootSystem::new("G2").unwrap();
    assert_eq!(g2.height(&g2.positive_roots.last().unwrap().clone()), qi(5));
}

#[test]
fn dominance_and_classes() {
    let a2 = RootSystem::new("A2").unwrap();
    assert!(a2.dominance_leq(&w(&[0, 0]), &w(&[1, 1])).unwrap());
    assert!(!a2.dominance_leq(&w(&[1, 0]), &w(&[1, 1])).unwrap());
    let c = a2.class_of_weight(&w(&[1, 0])).unwrap();
    assert_eq!(c, CenterClass::new(vec![q(2, 3), q(1, 3)]));
    assert_eq!(a2.beta_of_class(&c), w(&[1, 0]));
    assert!(a2.class_of_weight(&w(&[1, 1])).unwrap().is_trivial());
}

#[test]
fn weyl_orbits() {
    let a2 = RootSystem::new("A2").unwrap();
    assert_eq!(a2.weyl_orbit(&w(&[1, 0])).len(), 3);
    assert_eq!(a2.weyl_orbit(&w(&[1, 1])).len(), 6);
    let (dom, _, _) = a2.to_dominant(&w(&[-1, 0]));
    assert_eq!(dom, w(&[0, 1]));
    assert_eq!(a2.dual_weight(&w(&[2, 1])), w(&[1, 2]));
}

#[test]
fn tensor_products() {
    let a2 = RootSystem::new("A2").unwrap();
    let t = tensor_decompose(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap();
    let expected = CharacterCombo::from_pairs([(w(&[0, 0]), qi(1)), (w(&[1, 1]), qi(1))]).unwrap();
    assert_eq!(t, expected);
    let t = tensor_decompose(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap();
    assert_eq!(t.get(&w(&[1, 1])), qi(2));
    assert_eq!(t.total_dimension(&a2), qi(64));
}

#[test]
fn weights_round_trip() {
    let b2 = RootSystem::new("B2").unwrap();
    let combo = CharacterCombo::from_pairs([(w(&[1, 0]), q(1, 3)), (w(&[0, 2]), qi(2))]).unwrap();
    let weights = characters_to_weights(&b2, &combo);
    assert_eq!(weights_to_characters(&b2, &weights).unwrap(), combo);
    let table = freudenthal(&b2, &w(&[0, 2])).unwrap();
    let dim: i64 = table.iter().map(|(_, m)| weylmittag::rational::to_i64(m).unwrap()).sum();
    assert_eq!(dim as u64, weyl_dim(&b2, &w(&[0, 2])).unwrap());
}
