use super::freudenthal::{dominant_table, weyl_dim};
use super::CharacterCombo;
use crate::error::{Error, Result};
use crate::rational::qi;
use crate::rootsys::{RootSystem, Weight};

/// Decomposes `V_lambda (x) V_mu` by Klimyk's alternation over the weights of
/// the smaller factor: each weight `nu` contributes `sign(w) mult(nu)` to
/// `w(lambda + nu + rho) - rho`, and terms on a wall cancel.
pub fn tensor_decompose(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<CharacterCombo> {
    let dl = weyl_dim(rs, lambda)?;
    let dm = weyl_dim(rs, mu)?;
    let (big, small) = if dl >= dm { (lambda, mu) } else { (mu, lambda) };
    let big_ints = big.to_ints().unwrap();
    let small_ints = small.to_ints().unwrap();
    let n = rs.rank();

    let table = dominant_table(rs, &small_ints);
    let mut acc: std::collections::BTreeMap<Vec<i64>, i64> = Default::default();
    for (dom_nu, &mult) in table.iter() {
        for nu in rs.weyl_orbit(&Weight::from_ints(dom_nu)) {
            let nu = nu.to_ints().unwrap();
            let shifted: Vec<i64> = (0..n).map(|i| big_ints[i] + nu[i] + 1).collect();
            let (dom, sign) = rs.to_dominant_ints(&shifted);
            if dom.contains(&0) {
                continue;
            }
            let highest: Vec<i64> = dom.iter().map(|c| c - 1).collect();
            *acc.entry(highest).or_insert(0) += sign as i64 * mult;
        }
    }

    let mut out = CharacterCombo::new();
    let mut total = 0u64;
    for (h, m) in acc {
        if m == 0 {
            continue;
        }
        if m < 0 {
            return Err(Error::Verification(format!("negative tensor multiplicity {m} at {h:?}")));
        }
        let w = Weight::from_ints(&h);
        total += m as u64 * weyl_dim(rs, &w)?;
        out.add(w, qi(m))?;
    }
    if total != dl * dm {
        return Err(Error::Verification(format!("tensor dimension check failed: {total} != {dl} * {dm}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Q;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn clebsch_gordan() {
        let a1 = RootSystem::new("A1").unwrap();
        let c = tensor_decompose(&a1, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(c, CharacterCombo::from_pairs([(w(&[0]), qi(1)), (w(&[2]), qi(1))]).unwrap());
    }

    #[test]
    fn adjoint_squared_a2() {
        let a2 = RootSystem::new("A2").unwrap();
        let c = tensor_decompose(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap();
        assert_eq!(c.get(&w(&[1, 1])), qi(2));
        assert_eq!(c.total_dimension(&a2), qi(64));
        let expected = CharacterCombo::from_pairs([
            (w(&[2, 2]), qi(1)),
            (w(&[3, 0]), qi(1)),
            (w(&[0, 3]), qi(1)),
            (w(&[1, 1]), qi(2)),
            (w(&[0, 0]), qi(1)),
        ])
        .unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn tensor_with_trivial() {
        let g2 = RootSystem::new("G2").unwrap();
        let c = tensor_decompose(&g2, &w(&[2, 1]), &w(&[0, 0])).unwrap();
        assert_eq!(c, CharacterCombo::single(w(&[2, 1]), Q::from_integer(1.into())).unwrap());
    }

    #[test]
    fn rejects_non_dominant() {
        let a2 = RootSystem::new("A2").unwrap();
        assert!(tensor_decompose(&a2, &w(&[-1, 0]), &w(&[1, 0])).is_err());
    }
}
