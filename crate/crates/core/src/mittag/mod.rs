//! The lattice sums `F_{k,xi}`: exact Fourier coefficients from the box
//! spline, the decomposition into irreducible characters by two independent
//! routes, the support and leading-term statements, and floating-point checks
//! against the truncated lattice and pole sums.

mod lattice;

use num::Zero;
use num_complex::Complex64;

pub use lattice::{lattice_sum_f64, pole_factor, pole_sum_f64, singular_distance};

use crate::boxspline::{dh_spec, BoxSplineEvaluator, BoxSplineSpec};
use crate::charalg::{character_eval, weights_to_characters, weyl_dim, CharacterCombo, WeightFunction};
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootsys::{CenterClass, CoweightVector, RootSystem, Weight};

/// Every `(type, k)` exercised by the verification suites.
pub const BATTERY: &[(&str, u32)] = &[
    ("A1", 1),
    ("A1", 2),
    ("A1", 3),
    ("A1", 4),
    ("A2", 1),
    ("A2", 2),
    ("A2", 3),
    ("A3", 1),
    ("A3", 2),
    ("B2", 1),
    ("B2", 2),
    ("G2", 1),
    ("G2", 2),
];

/// Default truncation radius: principal values for `A1, k = 1` converge like `1/R`.
pub fn default_radius(rs: &RootSystem, k: u32) -> u64 {
    if rs.rank() == 1 && k == 1 {
        10_000
    } else {
        40
    }
}

#[derive(Debug, Clone)]
pub struct MLProblem<'a> {
    pub rs: &'a RootSystem,
    pub k: u32,
    pub xi: CenterClass,
}

impl<'a> MLProblem<'a> {
    pub fn new(rs: &'a RootSystem, k: u32, xi: CenterClass) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        rs.validate_class(&xi)?;
        Ok(Self { rs, k, xi })
    }

    /// Class of `-beta_xi`, which carries every Fourier coefficient.
    pub fn support_class(&self) -> CenterClass {
        self.xi.inverse()
    }

    pub fn spec(&self) -> BoxSplineSpec {
        dh_spec(self.rs, self.k).expect("k >= 1")
    }

    /// Dominant integral weights of the support class with root coordinates
    /// bounded by those of `k rho`, strictly or not.
    fn dominant_candidates(&self, strict: bool) -> Vec<Weight> {
        let rs = self.rs;
        let k = qi(self.k as i64);
        let bound: Vec<Q> = rs.root_coordinates(&rs.rho).iter().map(|c| c * &k).collect();
        // for dominant lambda, lambda_i <= 2 c_i(lambda)
        let upper: Vec<i64> = bound.iter().map(|b| crate::rational::to_i64(&(b * qi(2)).floor()).unwrap()).collect();
        let support = self.support_class();
        let mut out = Vec::new();
        let mut coords = vec![0i64; rs.rank()];
        loop {
            let lambda = Weight::from_ints(&coords);
            let c = rs.root_coordinates(&lambda);
            let inside = c.iter().zip(&bound).all(|(a, b)| if strict { a < b } else { a <= b });
            if inside && rs.class_of_weight(&lambda).unwrap() == support {
                out.push(lambda);
            }
            let mut i = 0;
            while i < coords.len() && coords[i] == upper[i] {
                coords[i] = 0;
                i += 1;
            }
            if i == coords.len() {
                break;
            }
            coords[i] += 1;
        }
        out.sort_by_key(|w| (rs.height(w), w.clone()));
        out
    }
}

/// Dominant weights of the support class strictly inside `k` times the
/// `rho`-zonotope, in canonical order.
pub fn support_set(p: &MLProblem) -> Vec<Weight> {
    p.dominant_candidates(true)
}

/// Fourier coefficients `c_mu = det(A) * density(mu)`. The closed zonotope is
/// scanned, so boundary weights carrying an averaged density are included.
pub fn coefficient_table(p: &MLProblem) -> Result<WeightFunction> {
    let spec = p.spec();
    let ev = BoxSplineEvaluator::new(&spec)?;
    coefficient_table_with(p, &ev)
}

fn coefficient_table_with(p: &MLProblem, ev: &BoxSplineEvaluator) -> Result<WeightFunction> {
    let det = qi(p.rs.det_cartan);
    let mut out = WeightFunction::new();
    for lambda in p.dominant_candidates(false) {
        let c = ev.eval(&lambda)?.value * &det;
        if c.is_zero() {
            continue;
        }
        for mu in p.rs.weyl_orbit(&lambda) {
            out.add(mu, c.clone())?;
        }
    }
    Ok(out)
}

fn alternation_with(p: &MLProblem, ev: &BoxSplineEvaluator) -> Result<CharacterCombo> {
    let rs = p.rs;
    let det = qi(rs.det_cartan);
    let elements = rs.weyl_elements()?;
    let mut out = CharacterCombo::new();
    for lambda in p.dominant_candidates(false) {
        let shifted = &lambda + &rs.rho;
        let mut m = Q::zero();
        for w in elements {
            let point = &shifted - &w.act(&rs.rho);
            let d = ev.eval(&point)?.value;
            if w.sign > 0 {
                m += d;
            } else {
                m -= d;
            }
        }
        if !m.is_zero() {
            out.add(lambda, m * &det)?;
        }
    }
    Ok(out)
}

/// `m_lambda = det(A) sum_w (-1)^w density(lambda + rho - w rho)`.
pub fn alternation_multiplicities(p: &MLProblem) -> Result<CharacterCombo> {
    let spec = p.spec();
    let ev = BoxSplineEvaluator::new(&spec)?;
    alternation_with(p, &ev)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub combo: CharacterCombo,
    pub support_class: CenterClass,
    /// Dominance-maximal weight of `combo`.
    pub leading: Weight,
    pub route_agreement: bool,
    /// `sum m_lambda dim V_lambda`; equals `F(0) = 1`.
    pub sum_rule: Q,
}

impl Decomposition {
    pub fn all_positive(&self) -> bool {
        self.combo.all_positive()
    }

    pub fn sum_rule_holds(&self) -> bool {
        self.sum_rule == qi(1)
    }

    pub fn single_coset(&self, rs: &RootSystem) -> bool {
        self.combo.keys().all(|l| rs.class_of_weight(l).map(|c| c == self.support_class).unwrap_or(false))
    }

    /// Every internal check: routes agree, positivity, sum rule, single coset.
    pub fn verified(&self, rs: &RootSystem) -> bool {
        self.route_agreement && self.all_positive() && self.sum_rule_holds() && self.single_coset(rs)
    }
}

/// Character decomposition of `F_{k,xi}`, computed by peeling the
/// coefficient table and by Weyl alternation of box-spline values; the two
/// must agree exactly.
pub fn decompose(p: &MLProblem) -> Result<Decomposition> {
    let rs = p.rs;
    let spec = p.spec();
    let ev = BoxSplineEvaluator::new(&spec)?;
    let table = coefficient_table_with(p, &ev)?;
    let peeled = weights_to_characters(rs, &table)?;
    let alternated = alternation_with(p, &ev)?;
    if peeled != alternated {
        return Err(Error::Verification(format!(
            "character routes disagree for {} k={} class {}: peeling {peeled}, alternation {alternated}",
            rs.spec, p.k, p.xi
        )));
    }
    let leading = peeled
        .leading(rs)
        .ok_or_else(|| Error::Verification(format!("empty decomposition for {} k={}", rs.spec, p.k)))?;
    let sum_rule = peeled.total_dimension(rs);
    Ok(Decomposition { combo: peeled, support_class: p.support_class(), leading, route_agreement: true, sum_rule })
}

/// `k rho - beta'` with `beta'` the canonical representative of the class of
/// `k rho` shifted by `xi`.
pub fn leading_weight(p: &MLProblem) -> Result<Weight> {
    let rs = p.rs;
    if rs.rank() == 1 && p.k == 1 {
        return Err(Error::Unsupported(
            "rank 1 with k = 1: the top coefficient sits on the boundary of the support".into(),
        ));
    }
    let top = rs.rho.scale(&qi(p.k as i64));
    let class = rs.class_of_weight(&top)?.add(&p.xi);
    Ok(&top - &rs.beta_of_class(&class))
}

/// Lattice sum at a rational torus point.
pub fn eval_lattice_sum(p: &MLProblem, x: &CoweightVector, radius: u64) -> Result<Complex64> {
    p.rs.check_rank(&Weight::new(x.coords.clone()))?;
    if radius == 0 {
        return Err(Error::InvalidArgument("R must be at least 1".into()));
    }
    Ok(lattice_sum_f64(p, &x.to_f64(), radius))
}

/// Lattice sum together with `|F_R - F_{R/2}|` as a truncation estimate.
pub fn eval_lattice_sum_with_error(p: &MLProblem, x: &CoweightVector, radius: u64) -> Result<(Complex64, f64)> {
    let full = eval_lattice_sum(p, x, radius)?;
    let half = lattice_sum_f64(p, &x.to_f64(), (radius / 2).max(1));
    Ok((full, (full - half).norm()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierPoint {
    pub x: CoweightVector,
    pub lattice: Complex64,
    pub characters: Complex64,
    pub error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierReport {
    pub points: Vec<FourierPoint>,
    /// Largest `|F(x + q) - F(x)|` over the checked coroot shifts.
    pub periodicity_error: f64,
    /// Largest `|F(s_i x) - F(x)|` over simple reflections.
    pub invariance_error: f64,
    pub tol: f64,
}

impl FourierReport {
    pub fn all_pass(&self) -> bool {
        self.points.iter().all(|p| p.pass) && self.periodicity_error <= self.tol && self.invariance_error <= self.tol
    }

    pub fn max_error(&self) -> f64 {
        self.points.iter().map(|p| p.error).fold(0.0, f64::max)
    }
}

/// Compares the truncated lattice sum with the character decomposition at
/// each point, and checks periodicity under `Q^vee` and invariance under the
/// simple reflections.
pub fn verify_fourier(p: &MLProblem, points: &[CoweightVector], radius: u64, tol: f64) -> Result<FourierReport> {
    let rs = p.rs;
    let dec = decompose(p)?;
    let mut out = Vec::with_capacity(points.len());
    let mut periodicity_error: f64 = 0.0;
    let mut invariance_error: f64 = 0.0;
    for (idx, x) in points.iter().enumerate() {
        let lattice = eval_lattice_sum(p, x, radius)?;
        let characters = character_eval(rs, &dec.combo, x);
        let error = (lattice - characters).norm();
        out.push(FourierPoint { x: x.clone(), lattice, characters, error, pass: error <= tol });

        let xf = x.to_f64();
        let shift: Vec<f64> = (0..rs.rank()).map(|i| ((idx + i) % 3) as f64 - 1.0).collect();
        let moved: Vec<f64> = xf.iter().zip(&shift).map(|(a, b)| a + b).collect();
        periodicity_error = periodicity_error.max((lattice_sum_f64(p, &moved, radius) - lattice).norm());
        let reflected = rs.reflect_coweight_f64(idx % rs.rank(), &xf);
        invariance_error = invariance_error.max((lattice_sum_f64(p, &reflected, radius) - lattice).norm());
    }
    Ok(FourierReport { points: out, periodicity_error, invariance_error, tol })
}

/// Residual between the pole sum predicted by the decomposition,
/// `F(x) pi^{k|R_+|} / prod sin^k(pi alpha(x))`, and the truncated pole sum.
pub fn pole_expansion_check(p: &MLProblem, x: &CoweightVector, radius: u64) -> Result<f64> {
    let xf = x.to_f64();
    let poles = pole_sum_f64(p, &xf, radius)?;
    let dec = decompose(p)?;
    let f = character_eval(p.rs, &dec.combo, x);
    Ok((f * pole_factor(p.rs, p.k, &xf) - poles).norm())
}

/// Multiplicity next to the Fourier coefficient `c_lambda = det(A) density(lambda)`
/// at the same dominant weight. They agree at the leading weight and in
/// general differ below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseEntry {
    pub lambda: Weight,
    pub multiplicity: Q,
    pub coefficient: Q,
}

impl PointwiseEntry {
    pub fn agrees(&self) -> bool {
        self.multiplicity == self.coefficient
    }
}

pub fn pointwise_comparison(p: &MLProblem) -> Result<Vec<PointwiseEntry>> {
    let dec = decompose(p)?;
    let table = coefficient_table(p)?;
    Ok(dec
        .combo
        .canonical_order(p.rs)
        .into_iter()
        .map(|(lambda, multiplicity)| {
            let coefficient = table.get(&lambda);
            PointwiseEntry { lambda, multiplicity, coefficient }
        })
        .collect())
}

/// `sum m_lambda dim V_lambda` recomputed from scratch.
pub fn sum_rule(rs: &RootSystem, combo: &CharacterCombo) -> Q {
    combo.iter().map(|(l, m)| m * qi(weyl_dim(rs, l).unwrap() as i64)).sum()
}

/// Conjugate decomposition `lambda -> -w0 lambda`, which must equal the
/// decomposition for the inverse class.
pub fn dual_combo(rs: &RootSystem, combo: &CharacterCombo) -> Result<CharacterCombo> {
    CharacterCombo::from_pairs(combo.iter().map(|(l, m)| (rs.dual_weight(l), m.clone())))
}
