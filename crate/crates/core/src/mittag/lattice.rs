//! Truncated sums over the coweight lattice: the lattice sum `F` and the pole
//! sum `M`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::MLProblem;
use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, transpose};
use crate::rational::{qi, to_i64, Q};
use crate::rootsys::RootSystem;

/// Neumaier-compensated complex accumulator.
#[derive(Default)]
struct Acc {
    re: (f64, f64),
    im: (f64, f64),
}

fn add_comp(s: &mut (f64, f64), x: f64) {
    let t = s.0 + x;
    if s.0.abs() >= x.abs() {
        s.1 += (s.0 - t) + x;
    } else {
        s.1 += (x - t) + s.0;
    }
    s.0 = t;
}

impl Acc {
    fn add(&mut self, z: Complex64) {
        add_comp(&mut self.re, z.re);
        add_comp(&mut self.im, z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Representatives of `P^vee / Q^vee` in coroot coordinates, each in `[0, 1)^r`.
fn coset_representatives(rs: &RootSystem) -> Vec<Vec<Q>> {
    let r = rs.rank();
    let at_inv = inverse(&transpose(rs.cartan_matrix())).expect("Cartan matrix is invertible");
    let reduce = |v: Vec<Q>| -> Vec<Q> { v.iter().map(|x| x - x.floor()).collect() };
    let gens: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            let mut e = vec![qi(0); r];
            e[i] = qi(1);
            reduce(mat_vec(&at_inv, &e))
        })
        .collect();
    let mut reps = vec![vec![qi(0); r]];
    let mut i = 0;
    while i < reps.len() {
        for g in &gens {
            let next = reduce(reps[i].iter().zip(g).map(|(a, b)| a + b).collect());
            if !reps.contains(&next) {
                reps.push(next);
            }
        }
        i += 1;
    }
    reps.sort();
    reps
}

/// Calls `f(n)` for every `a` in `P^vee` with all coroot coordinates of
/// magnitude at most `radius`, where `n_j = alpha_j(a)`.
fn for_each_coweight(rs: &RootSystem, radius: u64, mut f: impl FnMut(&[i64])) {
    let r = rs.rank();
    let cartan = rs.cartan_matrix();
    let radius = qi(radius as i64);
    for rep in coset_representatives(rs) {
        // n = A^T (rep + z)
        let base: Vec<i64> = (0..r)
            .map(|j| to_i64(&(0..r).map(|i| &cartan[i][j] * &rep[i]).sum::<Q>()).expect("rep lies in P^vee"))
            .collect();
        let lo: Vec<i64> = rep.iter().map(|c| to_i64(&(-&radius - c).ceil()).unwrap()).collect();
        let hi: Vec<i64> = rep.iter().map(|c| to_i64(&(&radius - c).floor()).unwrap()).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            continue;
        }
        let cols: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| to_i64(&cartan[i][j]).unwrap()).collect()).collect();
        let mut z = lo.clone();
        let mut n: Vec<i64> = (0..r).map(|j| base[j] + (0..r).map(|i| cols[i][j] * z[i]).sum::<i64>()).collect();
        loop {
            f(&n);
            let mut i = 0;
            while i < r && z[i] == hi[i] {
                let span = z[i] - lo[i];
                z[i] = lo[i];
                for j in 0..r {
                    n[j] -= cols[i][j] * span;
                }
                i += 1;
            }
            if i == r {
                break;
            }
            z[i] += 1;
            for j in 0..r {
                n[j] += cols[i][j];
            }
        }
    }
}

/// Pairings of a point with every positive root and the integer root
/// coordinates needed for lattice shifts.
struct RootData {
    coords: Vec<Vec<i64>>,
    u: Vec<f64>,
}

impl RootData {
    fn new(rs: &RootSystem, x: &[f64]) -> Self {
        let coords: Vec<Vec<i64>> = rs.positive_root_coords().to_vec();
        // alpha(x) = sum_j c_j alpha_j(x), alpha_j(x) = (A^T x)_j
        let cartan = rs.cartan_matrix();
        let r = rs.rank();
        let simple: Vec<f64> =
            (0..r).map(|j| (0..r).map(|i| crate::rational::to_f64(&cartan[i][j]) * x[i]).sum()).collect();
        let u = coords.iter().map(|c| c.iter().zip(&simple).map(|(&a, b)| a as f64 * b).sum()).collect();
        Self { coords, u }
    }

    fn shift(&self, alpha: usize, n: &[i64]) -> i64 {
        self.coords[alpha].iter().zip(n).map(|(a, b)| a * b).sum()
    }
}

fn sinc_pi(v: f64) -> f64 {
    if v.abs() < 1e-6 {
        let t = PI * v;
        1.0 - t * t / 6.0
    } else {
        (PI * v).sin() / (PI * v)
    }
}

/// `F_{k,xi}(x)` truncated to coroot coordinates of magnitude at most `radius`.
/// The box is symmetric, so partial sums are principal values.
pub fn lattice_sum_f64(p: &MLProblem, x: &[f64], radius: u64) -> Complex64 {
    let roots = RootData::new(p.rs, x);
    let sines: Vec<f64> = roots.u.iter().map(|u| (PI * u).sin()).collect();
    let k = p.k as i32;
    let mut acc = Acc::default();
    for_each_coweight(p.rs, radius, |n| {
        let mut term = 1.0;
        for (a, (&u, &s)) in roots.u.iter().zip(&sines).enumerate() {
            let shift = roots.shift(a, n);
            let v = u + shift as f64;
            term *= if v.abs() < 0.5 {
                sinc_pi(v)
            } else if shift % 2 == 0 {
                s / (PI * v)
            } else {
                -s / (PI * v)
            };
            if term == 0.0 {
                break;
            }
        }
        if term != 0.0 {
            acc.add(Complex64::from_polar(term.powi(k), 2.0 * PI * p.xi.phase_f64(n)));
        }
    });
    acc.value()
}

/// Distance from `x` to the nearest shifted root hyperplane `alpha(x) in Z`.
pub fn singular_distance(rs: &RootSystem, x: &[f64]) -> f64 {
    RootData::new(rs, x).u.iter().map(|u| (u - u.round()).abs()).fold(f64::INFINITY, f64::min)
}

const POLE_TOLERANCE: f64 = 1e-9;

/// Truncated `M_{k,xi}(x) = sum_a (-1)^{2k rho(a)} xi(a) / prod_alpha alpha(x + a)^k`.
pub fn pole_sum_f64(p: &MLProblem, x: &[f64], radius: u64) -> Result<Complex64> {
    let dist = singular_distance(p.rs, x);
    if dist < POLE_TOLERANCE {
        return Err(Error::Singular(format!("x lies within {dist:e} of a pole")));
    }
    let roots = RootData::new(p.rs, x);
    let k = p.k as i32;
    let mut acc = Acc::default();
    for_each_coweight(p.rs, radius, |n| {
        let mut denom = 1.0;
        let mut two_rho = 0i64;
        for (a, &u) in roots.u.iter().enumerate() {
            let shift = roots.shift(a, n);
            two_rho += shift;
            denom *= u + shift as f64;
        }
        let sign = if (p.k as i64 * two_rho) % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(Complex64::from_polar(sign / denom.powi(k), 2.0 * PI * p.xi.phase_f64(n)));
    });
    Ok(acc.value())
}

/// `pi^{k |R_+|} / prod_alpha sin^k(pi alpha(x))`, the factor turning `F` into `M`.
pub fn pole_factor(rs: &RootSystem, k: u32, x: &[f64]) -> f64 {
    RootData::new(rs, x).u.iter().map(|u| (PI / (PI * u).sin()).powi(k as i32)).product()
}
