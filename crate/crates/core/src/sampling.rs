//! Seeded random test points shared by the CLI suites and the test targets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boxspline::BoxSplineSpec;
use crate::rational::{q, to_f64};

use crate::rootsys::{CoweightVector, RootSystem, Weight};

/// Denominators of random rational points; small enough that such a point is
/// either on a knot hyperplane or visibly away from it.
pub const DENOMINATORS: [i64; 5] = [2, 3, 4, 6, 12];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational weights drawn from the box spline itself, each coordinate
/// rounded to a multiple of `1/d` for a random `d` in [`DENOMINATORS`].
pub fn boxspline_points(spec: &BoxSplineSpec, count: usize, rng: &mut ChaCha8Rng) -> Vec<Weight> {
    let vectors = spec.expanded_ints();
    (0..count)
        .map(|_| {
            let d = *DENOMINATORS.choose(rng).unwrap();
            let mut t = vec![0.0; spec.rank];
            for v in &vectors {
                let u: f64 = rng.gen::<f64>() - 0.5;
                for (ti, &c) in t.iter_mut().zip(v) {
                    *ti += u * c as f64;
                }
            }
            Weight::new(t.iter().map(|x| q((x * d as f64).round() as i64, d)).collect())
        })
        .collect()
}

/// Torus points with coroot coordinates `p/997` in `[0, 1)`, away from the
/// root hyperplanes by at least `margin` in every root pairing.
pub fn torus_points(rs: &RootSystem, count: usize, margin: f64, rng: &mut ChaCha8Rng) -> Vec<CoweightVector> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = CoweightVector::new((0..rs.rank()).map(|_| q(rng.gen_range(0..997), 997)).collect());
        if rs.root_pairings(&x).iter().map(to_f64).all(|u| (u - u.round()).abs() >= margin) {
            out.push(x);
        }
    }
    out
}
