use std::f64::consts::PI;

use num_complex::Complex64;

use super::freudenthal::freudenthal;
use super::CharacterCombo;
use crate::rational::to_f64;
use crate::rootsys::{CoweightVector, RootSystem, Weight};

/// Below this `|Delta(x)|` the Weyl quotient is replaced by the weight sum.
pub const SINGULAR_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterMethod {
    /// Weyl quotient where regular, weight sum near the walls.
    Auto,
    WeylQuotient,
    WeightSum,
}

fn phase(weight: &[f64], x: &[f64]) -> Complex64 {
    let t: f64 = weight.iter().zip(x).map(|(a, b)| a * b).sum();
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

/// `Delta(x) = sum_w sign(w) e^{2 pi i (w rho)(x)}`. Requires the Weyl group.
pub fn weyl_denominator(rs: &RootSystem, x: &[f64]) -> crate::Result<Complex64> {
    let rho = rs.rho.to_f64();
    let mut total = Complex64::new(0.0, 0.0);
    for w in rs.weyl_elements()? {
        total += phase(&rho, &w.act_coweight_f64(x)) * w.sign as f64;
    }
    Ok(total)
}

fn weyl_quotient(rs: &RootSystem, lambda: &Weight, images: &[(Vec<f64>, i8)], denom: Complex64) -> Complex64 {
    let shifted = (lambda + &rs.rho).to_f64();
    let num: Complex64 = images.iter().map(|(y, s)| phase(&shifted, y) * *s as f64).sum();
    num / denom
}

fn weight_sum(rs: &RootSystem, lambda: &Weight, x: &[f64]) -> Complex64 {
    freudenthal(rs, lambda)
        .expect("dominant integral")
        .iter()
        .map(|(mu, m)| phase(&mu.to_f64(), x) * to_f64(m))
        .sum()
}

/// Evaluates `sum m_lambda chi_lambda` at a torus point given by float coroot coordinates.
pub fn character_eval_f64(
    rs: &RootSystem,
    combo: &CharacterCombo,
    x: &[f64],
    method: CharacterMethod,
    threshold: f64,
) -> Complex64 {
    let quotient_data = match method {
        CharacterMethod::WeightSum => None,
        _ => rs.weyl_elements().ok().and_then(|els| {
            let images: Vec<(Vec<f64>, i8)> = els.iter().map(|w| (w.act_coweight_f64(x), w.sign)).collect();
            let rho = rs.rho.to_f64();
            let denom: Complex64 = images.iter().map(|(y, s)| phase(&rho, y) * *s as f64).sum();
            if method == CharacterMethod::Auto && denom.norm() < threshold {
                None
            } else {
                Some((images, denom))
            }
        }),
    };
    combo
        .iter()
        .map(|(lambda, m)| {
            let value = match &quotient_data {
                Some((images, denom)) => weyl_quotient(rs, lambda, images, *denom),
                None => weight_sum(rs, lambda, x),
            };
            value * to_f64(m)
        })
        .sum()
}

pub fn character_eval(rs: &RootSystem, combo: &CharacterCombo, x: &CoweightVector) -> Complex64 {
    character_eval_f64(rs, combo, &x.to_f64(), CharacterMethod::Auto, SINGULAR_THRESHOLD)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charalg::{tensor_decompose, weyl_dim};
    use crate::rational::{q, qi};

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn trivial_character_is_one() {
        let rs = RootSystem::new("B2").unwrap();
        let combo = CharacterCombo::single(w(&[0, 0]), qi(1)).unwrap();
        let v = character_eval(&rs, &combo, &CoweightVector::new(vec![q(1, 7), q(2, 9)]));
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sl2_fundamental_at_quarter() {
        let rs = RootSystem::new("A1").unwrap();
        let combo = CharacterCombo::single(w(&[1]), qi(1)).unwrap();
        let v = character_eval(&rs, &combo, &CoweightVector::new(vec![q(1, 4)]));
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn identity_gives_dimension() {
        let rs = RootSystem::new("A2").unwrap();
        let combo = CharacterCombo::from_pairs([(w(&[1, 1]), q(1, 2)), (w(&[2, 0]), qi(3))]).unwrap();
        let v = character_eval(&rs, &combo, &CoweightVector::zero(2));
        let expected = 0.5 * weyl_dim(&rs, &w(&[1, 1])).unwrap() as f64 + 3.0 * weyl_dim(&rs, &w(&[2, 0])).unwrap() as f64;
        assert!((v.re - expected).abs() < 1e-9 && v.im.abs() < 1e-9);
    }

    #[test]
    fn both_branches_agree_at_regular_points() {
        let rs = RootSystem::new("G2").unwrap();
        let combo = CharacterCombo::from_pairs([(w(&[1, 1]), qi(1)), (w(&[0, 2]), q(1, 3))]).unwrap();
        for x in [[0.113, 0.271], [0.31, 0.05], [0.7, 0.41]] {
            let a = character_eval_f64(&rs, &combo, &x, CharacterMethod::WeylQuotient, 0.0);
            let b = character_eval_f64(&rs, &combo, &x, CharacterMethod::WeightSum, 0.0);
            assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn singular_point_uses_fallback() {
        let rs = RootSystem::new("A2").unwrap();
        let combo = CharacterCombo::single(w(&[1, 1]), qi(1)).unwrap();
        // x = 0 is maximally singular
        let v = character_eval_f64(&rs, &combo, &[0.0, 0.0], CharacterMethod::Auto, SINGULAR_THRESHOLD);
        assert!((v.re - 8.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_product_is_pointwise_product() {
        let rs = RootSystem::new("B2").unwrap();
        let (l, m) = (w(&[1, 1]), w(&[0, 2]));
        let prod = tensor_decompose(&rs, &l, &m).unwrap();
        let cl = CharacterCombo::single(l, qi(1)).unwrap();
        let cm = CharacterCombo::single(m, qi(1)).unwrap();
        for x in [[0.12, 0.37], [0.5, 0.25], [0.9, 0.01]] {
            let lhs = character_eval_f64(&rs, &prod, &x, CharacterMethod::Auto, SINGULAR_THRESHOLD);
            let rhs = character_eval_f64(&rs, &cl, &x, CharacterMethod::Auto, SINGULAR_THRESHOLD)
                * character_eval_f64(&rs, &cm, &x, CharacterMethod::Auto, SINGULAR_THRESHOLD);
            assert!((lhs - rhs).norm() < 1e-8);
        }
    }
}
