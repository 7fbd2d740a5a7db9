use std::collections::{BTreeSet, HashMap, VecDeque};

use num::{Signed, Zero};

use super::{CoweightVector, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::rational::{qi, Q};

/// One Weyl group element, stored as integer matrices acting on
/// fundamental-weight coordinates and (contragrediently) on coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub on_weights: Vec<Vec<i64>>,
    pub on_coweights: Vec<Vec<i64>>,
    pub sign: i8,
    pub length: usize,
}

fn apply(m: &[Vec<i64>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (&a, b)| if a == 0 { acc } else { acc + qi(a) * b }))
        .collect()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

impl WeylElement {
    pub fn act(&self, lambda: &Weight) -> Weight {
        Weight::new(apply(&self.on_weights, &lambda.coords))
    }

    pub fn act_coweight(&self, x: &CoweightVector) -> CoweightVector {
        CoweightVector::new(apply(&self.on_coweights, &x.coords))
    }

    pub fn act_coweight_f64(&self, x: &[f64]) -> Vec<f64> {
        self.on_coweights
            .iter()
            .map(|row| row.iter().zip(x).map(|(&a, b)| a as f64 * b).sum())
            .collect()
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            on_weights: mul(&self.on_weights, &other.on_weights),
            on_coweights: mul(&self.on_coweights, &other.on_coweights),
            sign: self.sign * other.sign,
            // not tracked exactly under composition; parity is what matters
            length: self.length + other.length,
        }
    }
}

impl RootSystem {
    /// Simple reflection `s_i` on weight coordinates: `lambda - lambda_i * alpha_i`.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let li = lambda.coords[i].clone();
        if li.is_zero() {
            return lambda.clone();
        }
        let coords = lambda
            .coords
            .iter()
            .enumerate()
            .map(|(j, c)| if self.cartan[j][i] == 0 { c.clone() } else { c - &li * qi(self.cartan[j][i]) })
            .collect();
        Weight::new(coords)
    }

    /// `s_i x = x - alpha_i(x) alpha_i^vee` on float coroot coordinates.
    pub fn reflect_coweight_f64(&self, i: usize, x: &[f64]) -> Vec<f64> {
        let pairing: f64 = (0..self.rank()).map(|j| self.cartan[j][i] as f64 * x[j]).sum();
        let mut out = x.to_vec();
        out[i] -= pairing;
        out
    }

    pub(crate) fn reflect_ints(&self, i: usize, lambda: &mut [i64]) {
        let li = lambda[i];
        if li == 0 {
            return;
        }
        for (j, c) in lambda.iter_mut().enumerate() {
            *c -= li * self.cartan[j][i];
        }
    }

    fn simple_reflection_element(&self, i: usize) -> WeylElement {
        let n = self.rank();
        let mut on_weights: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|b| i64::from(a == b)).collect()).collect();
        let mut on_coweights = on_weights.clone();
        for j in 0..n {
            on_weights[j][i] -= self.cartan[j][i];
            on_coweights[i][j] -= self.cartan[j][i];
        }
        WeylElement { on_weights, on_coweights, sign: -1, length: 1 }
    }

    /// Every element of the Weyl group in breadth-first (length) order.
    pub fn weyl_elements(&self) -> Result<&[WeylElement]> {
        if self.rank() > self.rank_cap() {
            return Err(Error::RankCap { rank: self.rank(), cap: self.rank_cap() });
        }
        Ok(self.weyl_cache.get_or_init(|| self.enumerate_weyl()))
    }

    fn enumerate_weyl(&self) -> Vec<WeylElement> {
        let n = self.rank();
        let gens: Vec<WeylElement> = (0..n).map(|i| self.simple_reflection_element(i)).collect();
        let identity = WeylElement {
            on_weights: (0..n).map(|a| (0..n).map(|b| i64::from(a == b)).collect()).collect(),
            on_coweights: (0..n).map(|a| (0..n).map(|b| i64::from(a == b)).collect()).collect(),
            sign: 1,
            length: 0,
        };
        let mut seen: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
        seen.insert(identity.on_weights.clone(), 0);
        let mut out = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for g in &gens {
                let mut w = g.compose(&out[idx]);
                w.length = out[idx].length + 1;
                if !seen.contains_key(&w.on_weights) {
                    seen.insert(w.on_weights.clone(), out.len());
                    queue.push_back(out.len());
                    out.push(w);
                }
            }
        }
        out
    }

    /// The longest element, characterized by `w0(rho) = -rho`.
    pub fn longest_element(&self) -> Result<WeylElement> {
        let neg_rho = -&self.rho;
        Ok(self
            .weyl_elements()?
            .iter()
            .find(|w| w.act(&self.rho) == neg_rho)
            .expect("longest element exists")
            .clone())
    }

    /// `-w0` on weight coordinates, computed without enumerating the group.
    ///
    /// `-w0` permutes the fundamental weights (the diagram automorphism), so
    /// it is read off from the dominant representatives of `-omega_i`.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        let n = self.rank();
        let mut coords = vec![Q::zero(); n];
        for i in 0..n {
            let (image, _, _) = self.to_dominant(&-self.fundamental_weight(i));
            let j = image.coords.iter().position(|c| !c.is_zero()).expect("nonzero image");
            coords[j] = lambda.coords[i].clone();
        }
        Weight::new(coords)
    }

    /// Orbit under the Weyl group by saturation with simple reflections; works at any rank.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        seen.insert(lambda.clone());
        let mut stack = vec![lambda.clone()];
        while let Some(mu) = stack.pop() {
            for i in 0..self.rank() {
                let nu = self.reflect(i, &mu);
                if !seen.contains(&nu) {
                    seen.insert(nu.clone());
                    stack.push(nu);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Reflects into the dominant chamber. Returns the dominant representative,
    /// the sign of the reflecting element, and whether the result lies on a wall.
    pub fn to_dominant(&self, lambda: &Weight) -> (Weight, i8, bool) {
        let mut mu = lambda.clone();
        let mut sign = 1i8;
        while let Some(i) = mu.coords.iter().position(|c| c.is_negative()) {
            mu = self.reflect(i, &mu);
            sign = -sign;
        }
        let on_wall = mu.coords.iter().any(|c| c.is_zero());
        (mu, sign, on_wall)
    }

    pub(crate) fn to_dominant_ints(&self, lambda: &[i64]) -> (Vec<i64>, i8) {
        let mut mu = lambda.to_vec();
        let mut sign = 1i8;
        while let Some(i) = mu.iter().position(|&c| c < 0) {
            self.reflect_ints(i, &mut mu);
            sign = -sign;
        }
        (mu, sign)
    }
}
