use std::collections::BTreeMap;
use std::sync::Arc;

use num::Integer;

use super::WeightFunction;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootsys::{DominantTable, RootSystem, Weight};

fn check_dominant_integral(rs: &RootSystem, lambda: &Weight) -> Result<Vec<i64>> {
    rs.check_rank(lambda)?;
    let ints = lambda.to_ints().ok_or_else(|| Error::NotIntegral(lambda.to_string()))?;
    if ints.iter().any(|&c| c < 0) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(ints)
}

/// The invariant form scaled to integers on the weight lattice.
struct IntForm {
    gram: Vec<Vec<i128>>,
}

impl IntForm {
    fn new(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let gram_q: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| rs.inner(&rs.fundamental_weight(i), &rs.fundamental_weight(j)))
                    .collect()
            })
            .collect();
        let mut lcm = num::BigInt::from(1);
        for row in &gram_q {
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
        }
        let gram = gram_q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * Q::from_integer(lcm.clone());
                        crate::rational::to_i64(&v).expect("small form") as i128
                    })
                    .collect()
            })
            .collect();
        Self { gram }
    }

    fn inner(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s += ai as i128 * self.gram[i][j] * bj as i128;
            }
        }
        s
    }
}

/// Multiplicities of the dominant weights of `V_lambda` by Freudenthal's recursion.
fn compute_dominant_table(rs: &RootSystem, lambda: &[i64]) -> DominantTable {
    let n = rs.rank();
    let form = IntForm::new(rs);
    let roots: Vec<Vec<i64>> = rs.positive_roots.iter().map(|a| a.to_ints().unwrap()).collect();
    let rho = vec![1i64; n];
    let shifted = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };

    // Dominant mu with lambda - mu in Q_+: mu = lambda - A n, 0 <= n_i <= root coordinate of lambda.
    let bounds: Vec<i64> = rs
        .root_coordinates(&Weight::from_ints(lambda))
        .iter()
        .map(|c| crate::rational::to_i64(&c.floor()).unwrap())
        .collect();
    let mut candidates: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut counter = vec![0i64; n];
    loop {
        let mu: Vec<i64> =
            (0..n).map(|i| lambda[i] - (0..n).map(|j| rs.cartan[i][j] * counter[j]).sum::<i64>()).collect();
        if mu.iter().all(|&c| c >= 0) {
            candidates.push((counter.iter().sum(), mu));
        }
        let mut k = 0;
        while k < n {
            counter[k] += 1;
            if counter[k] <= bounds[k] {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    candidates.sort();

    let lr = shifted(lambda);
    let top_norm = form.inner(&lr, &lr);
    let mut table: DominantTable = BTreeMap::new();
    for (depth, mu) in candidates {
        if depth == 0 {
            table.insert(mu, 1);
            continue;
        }
        let mut acc = 0i128;
        for alpha in &roots {
            let mut nu = mu.clone();
            loop {
                for (a, b) in nu.iter_mut().zip(alpha) {
                    *a += b;
                }
                let (dom, _) = rs.to_dominant_ints(&nu);
                let Some(&m) = table.get(&dom) else { break };
                acc += form.inner(&nu, alpha) * m as i128;
            }
        }
        let mr = shifted(&mu);
        let denom = top_norm - form.inner(&mr, &mr);
        assert!(denom > 0, "Freudenthal denominator must be positive");
        let num = 2 * acc;
        assert_eq!(num % denom, 0, "Freudenthal recursion produced a fraction");
        let m = (num / denom) as i64;
        table.insert(mu, m);
    }
    table
}

pub(crate) fn dominant_table(rs: &RootSystem, lambda: &[i64]) -> Arc<DominantTable> {
    if let Some(t) = rs.mult_cache.lock().unwrap().get(lambda) {
        return t.clone();
    }
    let table = Arc::new(compute_dominant_table(rs, lambda));
    rs.mult_cache.lock().unwrap().insert(lambda.to_vec(), table.clone());
    table
}

/// Full weight-multiplicity table of `V_lambda`.
pub fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<WeightFunction> {
    let ints = check_dominant_integral(rs, lambda)?;
    let table = dominant_table(rs, &ints);
    let mut out = WeightFunction::new();
    for (mu, &m) in table.iter() {
        for nu in rs.weyl_orbit(&Weight::from_ints(mu)) {
            out.add_unchecked(nu, qi(m));
        }
    }
    Ok(out)
}

/// `dim V_lambda[mu]` without expanding the full table.
pub fn multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<i64> {
    let ints = check_dominant_integral(rs, lambda)?;
    rs.check_rank(mu)?;
    let Some(mu) = mu.to_ints() else { return Ok(0) };
    let (dom, _) = rs.to_dominant_ints(&mu);
    Ok(dominant_table(rs, &ints).get(&dom).copied().unwrap_or(0))
}

/// Weyl dimension formula `prod (lambda + rho, alpha) / (rho, alpha)`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    check_dominant_integral(rs, lambda)?;
    let shifted = lambda + &rs.rho;
    let mut d = qi(1);
    for alpha in &rs.positive_roots {
        d *= rs.inner(&shifted, alpha) / rs.inner(&rs.rho, alpha);
    }
    let d = crate::rational::to_i64(&d).expect("dimension is an integer");
    Ok(d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn dimension_examples() {
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(weyl_dim(&a2, &w(&[1, 0])).unwrap(), 3);
        assert_eq!(weyl_dim(&a2, &w(&[0, 0])).unwrap(), 1);
        assert_eq!(weyl_dim(&a2, &w(&[1, 1])).unwrap(), 8);
        let g2 = RootSystem::new("G2").unwrap();
        assert_eq!(weyl_dim(&g2, &w(&[1, 0])).unwrap(), 7);
        assert_eq!(weyl_dim(&g2, &w(&[0, 1])).unwrap(), 14);
        let f4 = RootSystem::new("F4").unwrap();
        assert_eq!(weyl_dim(&f4, &w(&[0, 0, 0, 1])).unwrap(), 26);
        assert_eq!(weyl_dim(&f4, &w(&[1, 0, 0, 0])).unwrap(), 52);
        let e8 = RootSystem::new("E8").unwrap();
        assert_eq!(weyl_dim(&e8, &w(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
        assert!(weyl_dim(&a2, &w(&[-1, 0])).is_err());
    }

    #[test]
    fn adjoint_tables() {
        let a1 = RootSystem::new("A1").unwrap();
        let t = freudenthal(&a1, &w(&[2])).unwrap();
        let pairs: Vec<(Weight, Q)> = t.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        assert_eq!(pairs, vec![(w(&[-2]), qi(1)), (w(&[0]), qi(1)), (w(&[2]), qi(1))]);

        let a2 = RootSystem::new("A2").unwrap();
        let t = freudenthal(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(t.get(&w(&[0, 0])), qi(2));
        assert_eq!(t.get(&w(&[1, 1])), qi(1));
        assert_eq!(t.len(), 7);

        let g2 = RootSystem::new("G2").unwrap();
        let t = freudenthal(&g2, &w(&[0, 1])).unwrap();
        assert_eq!(t.get(&w(&[0, 0])), qi(2));
        let f4 = RootSystem::new("F4").unwrap();
        // 26-dimensional representation: 24 short roots and zero weight of multiplicity 2
        assert_eq!(multiplicity(&f4, &w(&[0, 0, 0, 1]), &w(&[0, 0, 0, 0])).unwrap(), 2);
    }

    #[test]
    fn highest_weight_has_multiplicity_one() {
        let b3 = RootSystem::new("B3").unwrap();
        for lam in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 1, 1]] {
            assert_eq!(multiplicity(&b3, &w(&lam), &w(&lam)).unwrap(), 1);
        }
    }

    #[test]
    fn multiplicity_outside_is_zero() {
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(multiplicity(&a2, &w(&[1, 1]), &w(&[3, 0])).unwrap(), 0);
        assert_eq!(multiplicity(&a2, &w(&[1, 1]), &w(&[1, 0])).unwrap(), 0);
    }
}
