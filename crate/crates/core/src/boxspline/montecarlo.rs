//! Stochastic estimate: sample the cube, push forward, count hits in a small
//! box around the target.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BoxSplineSpec;
use crate::error::{Error, Result};
use crate::rootsys::Weight;

pub const MIN_SAMPLES: u64 = 10_000;

/// Box half-width used by the verification suites for `10^6` samples. The
/// box average is biased by `O(bandwidth)` at kinks of the density, so the
/// box shrinks where the count per box allows it.
pub fn default_bandwidth(rank: usize) -> f64 {
    match rank {
        1 => 0.005,
        2 => 0.02,
        _ => 0.05,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub box_volume: f64,
}

impl McEstimate {
    /// Distance to `exact` in standard errors. With no hits the binomial
    /// estimate degenerates to zero, so the error implied by `exact` is used.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = (self.estimate - exact).abs();
        let sigma = if self.hits > 0 {
            self.std_error
        } else {
            let p = (exact * self.box_volume).min(1.0);
            (p * (1.0 - p) / self.samples as f64).sqrt() / self.box_volume
        };
        if diff == 0.0 {
            0.0
        } else if sigma == 0.0 {
            f64::INFINITY
        } else {
            diff / sigma
        }
    }
}

/// Density estimate at `t` from `n` samples with a box of half-width
/// `bandwidth` per coordinate. Deterministic in `seed`.
pub fn boxspline_eval_mc(spec: &BoxSplineSpec, t: &Weight, n: u64, seed: u64, bandwidth: f64) -> Result<McEstimate> {
    spec.check_point(t)?;
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::InvalidArgument(format!("bad bandwidth {bandwidth}")));
    }
    let x: Vec<Vec<f64>> = spec.expanded_ints().iter().map(|v| v.iter().map(|&c| c as f64).collect()).collect();
    let target = t.to_f64();
    let r = spec.rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut point = vec![0.0; r];
    for _ in 0..n {
        point.iter_mut().for_each(|p| *p = 0.0);
        for v in &x {
            let u: f64 = rng.gen::<f64>() - 0.5;
            for (p, c) in point.iter_mut().zip(v) {
                *p += u * c;
            }
        }
        if point.iter().zip(&target).all(|(p, t)| (p - t).abs() <= bandwidth) {
            hits += 1;
        }
    }
    let volume = (2.0 * bandwidth).powi(r as i32);
    let p = hits as f64 / n as f64;
    Ok(McEstimate {
        estimate: p / volume,
        std_error: (p * (1.0 - p) / n as f64).sqrt() / volume,
        samples: n,
        hits,
        box_volume: volume,
    })
}
