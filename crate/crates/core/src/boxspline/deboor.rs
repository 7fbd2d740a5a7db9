//! Primary exact evaluator.
//!
//! For the uncentered box spline `B_X` of an `m`-element multiset `X` spanning
//! `R^r` and any representation `y = sum_x a_x x`,
//!
//! ```text
//! (m - r) B_X(y) = sum_x [ a_x B_{X\x}(y) + (1 - a_x) B_{X\x}(y - x) ]
//! ```
//!
//! holds on the open set where every term is polynomial. Evaluating at
//! lattice points lands on knot hyperplanes, so every value here is the limit
//! of `B_X(y + eps v)` as `eps -> 0+` for a direction `v` off every knot
//! hyperplane. Limits of products are products of limits, so the same
//! recursion holds for the limits with the constant-order coefficients `a_x`,
//! and terms whose `X\x` no longer spans vanish on that open set. The base
//! case (`m = r`) is the indicator of a half-open parallelepiped, decided
//! lexicographically in `(position, direction)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num::Zero;

use super::{lcm_of_denominators, BoxSplineSpec, DensityValue};
use crate::error::{Error, Result};
use crate::linalg::{self, binomial, combinations, Matrix};
use crate::rational::{qi, to_i64, Q};
use crate::rootsys::Weight;

/// Primitive integer normals of all hyperplanes spanned by `rank - 1` of the
/// distinct vectors, with first nonzero coordinate positive.
pub(crate) fn hyperplane_normals(spec: &BoxSplineSpec) -> Vec<Vec<i64>> {
    let r = spec.rank;
    if r == 1 {
        return vec![vec![1]];
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    for subset in combinations(spec.distinct.len(), r - 1) {
        // cofactor expansion of det([rows of subset; e_j]) along the last row
        let normal: Vec<i64> = (0..r)
            .map(|j| {
                let minor: Matrix = subset
                    .iter()
                    .map(|&s| (0..r).filter(|&c| c != j).map(|c| qi(spec.distinct[s][c])).collect())
                    .collect();
                let d = to_i64(&linalg::det(&minor)).unwrap();
                if (r - 1 + j).is_multiple_of(2) {
                    d
                } else {
                    -d
                }
            })
            .collect();
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let g = normal.iter().fold(0i64, |acc, &x| num::integer::gcd(acc, x));
        let sign = if normal.iter().find(|&&x| x != 0).copied().unwrap() < 0 { -1 } else { 1 };
        let normal: Vec<i64> = normal.iter().map(|&x| sign * x / g).collect();
        if !out.contains(&normal) {
            out.push(normal);
        }
    }
    out
}

/// `(1, M, M^2, ...)` with `M` beyond every normal coefficient, so that no
/// normal is orthogonal to it.
fn generic_direction(rank: usize, normals: &[Vec<i64>]) -> Vec<i64> {
    let c = normals.iter().flat_map(|n| n.iter().map(|x| x.abs())).max().unwrap_or(1);
    let m = c + 2;
    (0..rank).map(|i| m.pow(i as u32)).collect()
}

struct Basis {
    /// `adj = det * B^{-1}` for the basis matrix whose columns are the chosen vectors.
    adj: Vec<Vec<i128>>,
    det: i128,
    members: Vec<usize>,
    adj_dir: Vec<i128>,
}

#[derive(Hash, PartialEq, Eq)]
struct Key {
    den: i64,
    sign: i8,
    counts: Vec<u32>,
    point: Vec<i64>,
}

/// Caching evaluator for one box spline. Not `Sync`; create one per thread.
pub struct BoxSplineEvaluator<'a> {
    spec: &'a BoxSplineSpec,
    normals: Vec<Vec<i64>>,
    /// `normal_dots[h][i] = n_h . x_i`
    normal_dots: Vec<Vec<i64>>,
    normal_dir: Vec<i128>,
    direction: Vec<i64>,
    bases: RefCell<HashMap<u128, Option<Rc<Basis>>>>,
    memo: RefCell<HashMap<Key, Q>>,
}

const MAX_NORMAL_SUBSETS: u128 = 2_000_000;

impl<'a> BoxSplineEvaluator<'a> {
    pub fn new(spec: &'a BoxSplineSpec) -> Result<Self> {
        if spec.distinct.len() > 128 {
            return Err(Error::Unsupported("more than 128 distinct box spline vectors".into()));
        }
        if binomial(spec.distinct.len(), spec.rank.saturating_sub(1)) > MAX_NORMAL_SUBSETS {
            return Err(Error::Unsupported(format!("box spline of rank {} is too large to evaluate", spec.rank)));
        }
        let normals = hyperplane_normals(spec);
        let direction = generic_direction(spec.rank, &normals);
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let normal_dots = normals.iter().map(|n| spec.distinct.iter().map(|x| dot(n, x)).collect()).collect();
        let normal_dir = normals.iter().map(|n| dot(n, &direction) as i128).collect();
        Ok(Self {
            spec,
            normals,
            normal_dots,
            normal_dir,
            direction,
            bases: RefCell::new(HashMap::new()),
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn direction(&self) -> Weight {
        Weight::from_ints(&self.direction)
    }

    fn basis(&self, mask: u128) -> Option<Rc<Basis>> {
        if let Some(b) = self.bases.borrow().get(&mask) {
            return b.clone();
        }
        let r = self.spec.rank;
        let mut members: Vec<usize> = Vec::new();
        let mut rows: Matrix = Vec::new();
        for i in 0..self.spec.distinct.len() {
            if mask & (1u128 << i) == 0 {
                continue;
            }
            let mut trial = rows.clone();
            trial.push(self.spec.distinct[i].iter().map(|&x| qi(x)).collect());
            if linalg::rank(&trial) == trial.len() {
                rows = trial;
                members.push(i);
                if members.len() == r {
                    break;
                }
            }
        }
        let basis = if members.len() == r {
            let b = linalg::transpose(&rows);
            let det = linalg::det(&b);
            let inv = linalg::inverse(&b).unwrap();
            let adj: Vec<Vec<i128>> = inv
                .iter()
                .map(|row| row.iter().map(|x| to_i64(&(x * &det)).unwrap() as i128).collect())
                .collect();
            let adj_dir = adj
                .iter()
                .map(|row| row.iter().zip(&self.direction).map(|(a, &v)| a * v as i128).sum())
                .collect();
            Some(Rc::new(Basis { adj, det: to_i64(&det).unwrap() as i128, members, adj_dir }))
        } else {
            None
        };
        self.bases.borrow_mut().insert(mask, basis.clone());
        basis
    }

    fn outside_zonotope(&self, sign: i8, den: i64, counts: &[u32], point: &[i64]) -> bool {
        for (h, n) in self.normals.iter().enumerate() {
            let np: i128 = n.iter().zip(point).map(|(&a, &b)| a as i128 * b as i128).sum();
            let (mut lo, mut hi) = (0i128, 0i128);
            for (i, &c) in counts.iter().enumerate() {
                let d = self.normal_dots[h][i] as i128 * c as i128;
                if d < 0 {
                    lo += d;
                } else {
                    hi += d;
                }
            }
            let (lo, hi) = (lo * den as i128, hi * den as i128);
            let nv = sign as i128 * self.normal_dir[h];
            if np < lo || (np == lo && nv < 0) || np > hi || (np == hi && nv > 0) {
                return true;
            }
        }
        false
    }

    /// One-sided limit of the uncentered box spline at `point / den` along `sign * direction`.
    fn limit(&self, sign: i8, den: i64, counts: &[u32], point: &[i64]) -> Q {
        let key = Key { den, sign, counts: counts.to_vec(), point: point.to_vec() };
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let value = self.limit_uncached(sign, den, counts, point);
        self.memo.borrow_mut().insert(key, value.clone());
        value
    }

    fn limit_uncached(&self, sign: i8, den: i64, counts: &[u32], point: &[i64]) -> Q {
        if self.outside_zonotope(sign, den, counts, point) {
            return Q::zero();
        }
        let r = self.spec.rank;
        let mask = counts.iter().enumerate().filter(|(_, &c)| c > 0).fold(0u128, |m, (i, _)| m | (1u128 << i));
        let basis = self.basis(mask).expect("recursion only visits spanning multisets");
        let coeff_num: Vec<i128> = basis
            .adj
            .iter()
            .map(|row| row.iter().zip(point).map(|(a, &p)| a * p as i128).sum())
            .collect();
        let total: u32 = counts.iter().sum();

        if total as usize == r {
            let s = basis.det.signum();
            let scale = basis.det.abs() * den as i128;
            for (c, d) in coeff_num.iter().zip(&basis.adj_dir) {
                let c = c * s;
                let d = d * s * sign as i128;
                let above_zero = c > 0 || (c == 0 && d > 0);
                let below_one = c < scale || (c == scale && d < 0);
                if !(above_zero && below_one) {
                    return Q::zero();
                }
            }
            return Q::new(1.into(), basis.det.abs().into());
        }

        let denom = basis.det * den as i128;
        let mut coeff: Vec<Q> = vec![Q::zero(); counts.len()];
        for (j, &i) in basis.members.iter().enumerate() {
            coeff[i] = Q::new(coeff_num[j].into(), denom.into());
        }
        let mut sum = Q::zero();
        let mut child = counts.to_vec();
        for i in 0..counts.len() {
            if counts[i] == 0 {
                continue;
            }
            child[i] -= 1;
            let spans = child[i] > 0 || self.basis(mask & !(1u128 << i)).is_some();
            if spans {
                let a = &coeff[i];
                if !a.is_zero() {
                    sum += a * self.limit(sign, den, &child, point);
                }
                let b = qi(counts[i] as i64) - a;
                if !b.is_zero() {
                    let shifted: Vec<i64> =
                        point.iter().zip(&self.spec.distinct[i]).map(|(&p, &x)| p - den * x).collect();
                    sum += b * self.limit(sign, den, &child, &shifted);
                }
            }
            child[i] += 1;
        }
        sum / qi(total as i64 - r as i64)
    }

    /// One-sided limit of the centered density at `t` along `sign * direction`.
    pub fn one_sided(&self, t: &Weight, sign: i8) -> Result<Q> {
        self.spec.check_point(t)?;
        let shifted: Vec<Q> = t.coords.iter().zip(self.spec.half_sum()).map(|(a, b)| a + b).collect();
        let den = lcm_of_denominators(&shifted);
        let point: Vec<i64> = shifted.iter().map(|x| to_i64(&(x * qi(den))).unwrap()).collect();
        Ok(self.limit(sign, den, &self.spec.counts, &point))
    }

    /// Density at `t`: the pointwise value at continuity points, the mean of
    /// the two one-sided limits otherwise.
    pub fn eval(&self, t: &Weight) -> Result<DensityValue> {
        let plus = self.one_sided(t, 1)?;
        let minus = self.one_sided(t, -1)?;
        if plus == minus {
            Ok(DensityValue { value: plus, averaged: false })
        } else {
            Ok(DensityValue { value: (plus + minus) / qi(2), averaged: true })
        }
    }

    pub fn cache_size(&self) -> usize {
        self.memo.borrow().len()
    }
}
