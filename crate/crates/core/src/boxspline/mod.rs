//! Box splines of positive-root multisets: the density of the convolution
//! power of the Duistermaat-Heckman measure of `rho`.
//!
//! Densities are taken with respect to Lebesgue measure in fundamental-weight
//! coordinates and have total mass one. Two exact evaluators are provided and
//! kept independent: [`deboor`] (the primary, a recursion over sub-multisets
//! carrying a symbolic one-sided limit) and [`slice`] (vertex enumeration and
//! pulling triangulation of the fiber polytope). [`montecarlo`] adds a
//! stochastic estimate and [`asymptotic`] the finite-`N` weight-multiplicity
//! estimator.

pub mod asymptotic;
pub mod deboor;
pub mod montecarlo;
pub mod slice;

use num::integer::Integer;

pub use asymptotic::dh_density_from_multiplicities;
pub use deboor::BoxSplineEvaluator;
pub use montecarlo::{boxspline_eval_mc, default_bandwidth, McEstimate};
pub use slice::slice_volume_density;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootsys::{RootSystem, TypeRank, Weight};

/// A multiset of integral weight-space vectors defining a centered box spline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSplineSpec {
    pub rank: usize,
    pub k: u32,
    /// Distinct vectors in fundamental-weight coordinates.
    pub distinct: Vec<Vec<i64>>,
    /// Multiplicity of each distinct vector.
    pub counts: Vec<u32>,
    pub source: Option<TypeRank>,
}

/// Exact density value. `averaged` marks points where the two one-sided
/// limits along the reference direction differ and their mean was returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityValue {
    pub value: Q,
    pub averaged: bool,
}

impl BoxSplineSpec {
    pub fn from_vectors(rank: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let mut distinct: Vec<Vec<i64>> = Vec::new();
        let mut counts: Vec<u32> = Vec::new();
        for v in vectors {
            if v.len() != rank {
                return Err(Error::Dimension { expected: rank, got: v.len() });
            }
            if v.iter().all(|&c| c == 0) {
                return Err(Error::InvalidArgument("zero vector in box spline".into()));
            }
            match distinct.iter().position(|d| d == v) {
                Some(i) => counts[i] += 1,
                None => {
                    distinct.push(v.clone());
                    counts.push(1);
                }
            }
        }
        let spec = Self { rank, k: 1, distinct, counts, source: None };
        if !spec.spans() {
            return Err(Error::InvalidArgument("box spline vectors do not span weight space".into()));
        }
        Ok(spec)
    }

    pub fn num_vectors(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// The full list with repetitions, in weight coordinates.
    pub fn vectors(&self) -> Vec<Weight> {
        self.distinct
            .iter()
            .zip(&self.counts)
            .flat_map(|(v, &c)| std::iter::repeat_n(Weight::from_ints(v), c as usize))
            .collect()
    }

    pub fn expanded_ints(&self) -> Vec<Vec<i64>> {
        self.distinct
            .iter()
            .zip(&self.counts)
            .flat_map(|(v, &c)| std::iter::repeat_n(v.clone(), c as usize))
            .collect()
    }

    fn spans(&self) -> bool {
        let m: Vec<Vec<Q>> = self
            .distinct
            .iter()
            .map(|v| v.iter().map(|&x| crate::rational::qi(x)).collect())
            .collect();
        crate::linalg::rank(&m) == self.rank
    }

    /// `(1/2) sum of all vectors`: the shift from the `[0,1)^m` cube to the centered cube.
    pub fn half_sum(&self) -> Vec<Q> {
        (0..self.rank)
            .map(|i| {
                let s: i64 = self.distinct.iter().zip(&self.counts).map(|(v, &c)| v[i] * c as i64).sum();
                Q::new(s.into(), 2.into())
            })
            .collect()
    }

    /// Whether some vector is a coloop (its removal drops the rank); then the
    /// density has jump discontinuities.
    pub fn has_coloop(&self) -> bool {
        (0..self.distinct.len()).any(|i| {
            if self.counts[i] > 1 {
                return false;
            }
            let rest: Vec<Vec<Q>> = self
                .distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.iter().map(|&x| crate::rational::qi(x)).collect())
                .collect();
            crate::linalg::rank(&rest) < self.rank
        })
    }

    pub fn check_point(&self, t: &Weight) -> Result<()> {
        if t.rank() != self.rank {
            return Err(Error::Dimension { expected: self.rank, got: t.rank() });
        }
        Ok(())
    }

    /// Whether `t` is strictly interior to the zonotope `sum [-v/2, v/2]`,
    /// tested against every hyperplane spanned by `rank - 1` of the vectors.
    pub fn strictly_interior(&self, t: &Weight) -> bool {
        deboor::hyperplane_normals(self).iter().all(|n| {
            let tn: Q = n.iter().zip(&t.coords).map(|(&a, b)| b * crate::rational::qi(a)).sum();
            let half: i64 = self
                .distinct
                .iter()
                .zip(&self.counts)
                .map(|(v, &c)| c as i64 * n.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().abs())
                .sum();
            let bound = Q::new(half.into(), 2.into());
            tn < bound && tn > -bound
        })
    }
}

/// Each positive root repeated `k` times: the box spline equal to the `k`-fold
/// convolution power of the DH measure of `rho`.
pub fn dh_spec(rs: &RootSystem, k: u32) -> Result<BoxSplineSpec> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let roots: Vec<Vec<i64>> = rs.positive_roots.iter().map(|a| a.to_ints().unwrap()).collect();
    Ok(BoxSplineSpec {
        rank: rs.rank(),
        k,
        distinct: roots,
        counts: vec![k; rs.num_positive_roots()],
        source: Some(rs.spec),
    })
}

/// Exact density at `t` using the primary evaluator.
pub fn boxspline_eval(spec: &BoxSplineSpec, t: &Weight) -> Result<DensityValue> {
    BoxSplineEvaluator::new(spec)?.eval(t)
}

pub(crate) fn lcm_of_denominators(v: &[Q]) -> i64 {
    let mut l = num::BigInt::from(1);
    for x in v {
        l = l.lcm(x.denom());
    }
    crate::rational::to_i64(&Q::from_integer(l)).expect("denominator fits in i64")
}
