//! Contraction of a representation by `N`: keep the weights divisible by `N`
//! and divide them. The result is again a genuine character, computed here on
//! the weight side and on the tensor side `V (x) V_{(N-1) rho}`.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use num_complex::Complex64;

use crate::charalg::{
    character_eval_f64, characters_to_weights, tensor_decompose, weights_to_characters, weyl_denominator,
    CharacterCombo, CharacterMethod, WeightFunction, SINGULAR_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootsys::{CoweightVector, RootSystem, Weight};

fn check_representation(v: &CharacterCombo, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    for (lambda, m) in v.iter() {
        if !m.is_integer() || m.is_negative() {
            return Err(Error::InvalidArgument(format!("multiplicity {m} of {lambda} is not a nonnegative integer")));
        }
    }
    Ok(())
}

/// `chi_{V,N}`: the character of the weights of `V` lying in `N P`, divided by `N`.
pub fn contract_weight_side(rs: &RootSystem, v: &CharacterCombo, n: u32) -> Result<CharacterCombo> {
    check_representation(v, n)?;
    let nq = qi(n as i64);
    let mut kept = WeightFunction::new();
    for (mu, m) in characters_to_weights(rs, v).iter() {
        let scaled = mu.scale(&(qi(1) / &nq));
        if scaled.is_integral() {
            kept.add(scaled, m.clone())?;
        }
    }
    let out = weights_to_characters(rs, &kept)?;
    if !out.all_integral() || out.iter().any(|(_, m)| m.is_negative()) {
        return Err(Error::Verification(format!("contraction of {v} by {n} is not a representation: {out}")));
    }
    Ok(out)
}

fn tensor_tables(rs: &RootSystem, v: &CharacterCombo, n: u32) -> Result<Vec<(Q, CharacterCombo)>> {
    let shift = rs.rho.scale(&qi(n as i64 - 1));
    v.iter().map(|(mu, m)| Ok((m.clone(), tensor_decompose(rs, mu, &shift)?))).collect()
}

fn tensor_side_from(rs: &RootSystem, tables: &[(Q, CharacterCombo)], n: u32, lambda: &Weight) -> Q {
    let target = &lambda.scale(&qi(n as i64)) + &rs.rho.scale(&qi(n as i64 - 1));
    tables.iter().map(|(m, t)| m * t.get(&target)).sum()
}

/// Multiplicity of `V_{N lambda + (N-1) rho}` in `V (x) V_{(N-1) rho}`.
pub fn contract_tensor_side(rs: &RootSystem, v: &CharacterCombo, n: u32, lambda: &Weight) -> Result<Q> {
    check_representation(v, n)?;
    rs.check_rank(lambda)?;
    if !lambda.is_integral() || !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let tables = tensor_tables(rs, v, n)?;
    Ok(tensor_side_from(rs, &tables, n, lambda))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Entry {
    pub lambda: Weight,
    pub weight_side: Q,
    pub tensor_side: Q,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Report {
    pub entries: Vec<Prop1Entry>,
    pub contraction: CharacterCombo,
}

impl Prop1Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn nonzero(&self) -> usize {
        self.entries.iter().filter(|e| !e.weight_side.is_zero()).count()
    }
}

/// Compares both sides on the support of the contraction and on every
/// dominant weight of the box reaching one step past it.
pub fn verify_prop1(rs: &RootSystem, v: &CharacterCombo, n: u32) -> Result<Prop1Report> {
    let contraction = contract_weight_side(rs, v, n)?;
    let tables = tensor_tables(rs, v, n)?;
    let r = rs.rank();
    let mut upper = vec![0i64; r];
    for lambda in contraction.keys() {
        for (u, c) in upper.iter_mut().zip(lambda.to_ints().unwrap()) {
            *u = (*u).max(c);
        }
    }
    let mut frame: Vec<Vec<i64>> = vec![vec![]];
    for &u in &upper {
        frame = frame
            .into_iter()
            .flat_map(|p| {
                (0..=u + 1).map(move |c| {
                    let mut p = p.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    let mut by_key: BTreeMap<(Q, Weight), Prop1Entry> = BTreeMap::new();
    for coords in frame {
        let lambda = Weight::from_ints(&coords);
        let weight_side = contraction.get(&lambda);
        let tensor_side = tensor_side_from(rs, &tables, n, &lambda);
        let pass = weight_side == tensor_side;
        by_key.insert((rs.height(&lambda), lambda.clone()), Prop1Entry { lambda, weight_side, tensor_side, pass });
    }
    Ok(Prop1Report { entries: by_key.into_values().collect(), contraction })
}

/// `|Delta(N x) / Delta(x) - chi_{(N-1) rho}(x)|`, the character on the right
/// evaluated as a plain weight sum.
pub fn weyl_denominator_ratio_check(rs: &RootSystem, n: u32, x: &CoweightVector) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    rs.check_rank(&Weight::new(x.coords.clone()))?;
    let xf = x.to_f64();
    let denom = weyl_denominator(rs, &xf)?;
    if denom.norm() < SINGULAR_THRESHOLD {
        return Err(Error::Singular(format!("|Delta(x)| = {:e} at x = {x}", denom.norm())));
    }
    let nx: Vec<f64> = xf.iter().map(|c| c * n as f64).collect();
    let ratio: Complex64 = weyl_denominator(rs, &nx)? / denom;
    let chi = CharacterCombo::single(rs.rho.scale(&qi(n as i64 - 1)), qi(1))?;
    let direct = character_eval_f64(rs, &chi, &xf, CharacterMethod::WeightSum, SINGULAR_THRESHOLD);
    Ok((ratio - direct).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn single(c: &[i64]) -> CharacterCombo {
        CharacterCombo::single(Weight::from_ints(c), qi(1)).unwrap()
    }

    fn combo(pairs: &[(&[i64], i64)]) -> CharacterCombo {
        CharacterCombo::from_pairs(pairs.iter().map(|(c, m)| (Weight::from_ints(c), qi(*m)))).unwrap()
    }

    #[test]
    fn weight_side_examples() {
        let a1 = RootSystem::new("A1").unwrap();
        assert_eq!(contract_weight_side(&a1, &single(&[2]), 2).unwrap(), combo(&[(&[0], 1), (&[1], 1)]));
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(contract_weight_side(&a2, &single(&[1, 1]), 2).unwrap(), combo(&[(&[0, 0], 2)]));
        let v = combo(&[(&[2, 0], 1), (&[1, 1], 3)]);
        assert_eq!(contract_weight_side(&a2, &v, 1).unwrap(), v);
    }

    #[test]
    fn tensor_side_examples() {
        let a1 = RootSystem::new("A1").unwrap();
        assert_eq!(contract_tensor_side(&a1, &single(&[2]), 2, &Weight::from_ints(&[1])).unwrap(), qi(1));
        for l in 0..4 {
            assert_eq!(contract_tensor_side(&a1, &single(&[1]), 2, &Weight::from_ints(&[l])).unwrap(), qi(0));
        }
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(contract_tensor_side(&a2, &single(&[1, 1]), 2, &Weight::from_ints(&[0, 0])).unwrap(), qi(2));
    }

    #[test]
    fn rejects_fractional_representation() {
        let a1 = RootSystem::new("A1").unwrap();
        let v = CharacterCombo::single(Weight::from_ints(&[1]), q(1, 2)).unwrap();
        assert!(contract_weight_side(&a1, &v, 2).is_err());
        assert!(contract_weight_side(&a1, &single(&[1]), 0).is_err());
    }

    #[test]
    fn verify_reports() {
        let a1 = RootSystem::new("A1").unwrap();
        let r = verify_prop1(&a1, &single(&[2]), 2).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.nonzero(), 2);
        let a2 = RootSystem::new("A2").unwrap();
        let r = verify_prop1(&a2, &single(&[1, 1]), 2).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.contraction.get(&Weight::from_ints(&[0, 0])), qi(2));
        let b2 = RootSystem::new("B2").unwrap();
        let r = verify_prop1(&b2, &single(&[0, 0]), 3).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.contraction, single(&[0, 0]));
    }

    #[test]
    fn denominator_ratio() {
        let a2 = RootSystem::new("A2").unwrap();
        let x = CoweightVector::new(vec![q(1, 7), q(3, 11)]);
        assert!(weyl_denominator_ratio_check(&a2, 2, &x).unwrap() < 1e-9);
        assert!(weyl_denominator_ratio_check(&a2, 1, &x).unwrap() < 1e-12);
        let b2 = RootSystem::new("B2").unwrap();
        assert!(weyl_denominator_ratio_check(&b2, 3, &x).unwrap() < 1e-9);
        assert!(weyl_denominator_ratio_check(&a2, 2, &CoweightVector::zero(2)).is_err());
    }
}
