//! Verification suites behind `weylmittag verify --suite NAME`.

use num::Zero;

use super::{CliError, JobConfig};
use crate::boxspline::{
    boxspline_eval_mc, default_bandwidth, dh_density_from_multiplicities, dh_spec, slice_volume_density, BoxSplineEvaluator,
};
use crate::charalg::{weyl_dim, CharacterCombo};
use crate::contraction::{verify_prop1, weyl_denominator_ratio_check};
use crate::mittag::{
    decompose, default_radius, dual_combo, leading_weight, pole_expansion_check, pole_sum_f64, pointwise_comparison,
    support_set, verify_fourier, MLProblem, BATTERY,
};
use crate::rational::{q, qi, to_f64};
use crate::rootsys::{CenterClass, CoweightVector, RootSystem, Weight};
use crate::sampling;

type CliResult<T> = std::result::Result<T, CliError>;

pub const SUITES: &[&str] = &["theorem1", "prop1", "prop3", "dominance", "boxspline", "fourier", "mittag"];

pub const BOXSPLINE_BATTERY: &[(&str, u32)] =
    &[("A1", 1), ("A1", 2), ("A1", 3), ("A1", 4), ("A2", 1), ("A2", 2), ("B2", 1), ("B2", 2), ("A3", 1)];

const DOMINANCE_TYPES: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"];
const CONTRACTION_TYPES: &[&str] = &["A1", "A2", "B2"];
pub const MC_SAMPLES: u64 = 1_000_000;
pub const BOXSPLINE_POINTS: usize = 30;
pub const FOURIER_POINTS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A known exception that fails as predicted; not counted as a failure.
    ExpectedFail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "XFAIL",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseLine {
    pub status: Status,
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseLine>,
}

impl SuiteReport {
    /// `(passed, failed, expected failures)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        let count = |s| self.cases.iter().filter(|c| c.status == s).count();
        (count(Status::Pass), count(Status::Fail), count(Status::ExpectedFail))
    }

    pub fn passed(&self) -> bool {
        self.counts().1 == 0
    }

    fn push(&mut self, status: Status, case: impl Into<String>, detail: impl Into<String>) {
        self.cases.push(CaseLine { status, case: case.into(), detail: detail.into() });
    }
}

pub fn run_suite(name: &str, cfg: &JobConfig) -> CliResult<SuiteReport> {
    let mut report = SuiteReport { suite: name.to_string(), cases: Vec::new() };
    match name {
        "theorem1" => theorem1(cfg, &mut report)?,
        "prop1" => prop1(cfg, &mut report)?,
        "prop3" => prop3(cfg, &mut report)?,
        "dominance" => dominance(cfg, &mut report)?,
        "boxspline" => boxspline(cfg, &mut report)?,
        "fourier" => fourier(cfg, &mut report)?,
        "mittag" => mittag(cfg, &mut report)?,
        other => return Err(CliError::Usage(format!("unknown suite {other}"))),
    }
    Ok(report)
}

fn system(t: &str, cfg: &JobConfig) -> CliResult<RootSystem> {
    Ok(RootSystem::new(t)?.with_rank_cap(cfg.rank_cap))
}

/// `(type, k)` pairs: the configured type with the configured or battery
/// values of `k`, or the battery filtered by `k`.
fn cases(cfg: &JobConfig, battery: &[(&str, u32)]) -> CliResult<Vec<(RootSystem, u32)>> {
    match &cfg.rs {
        Some(rs) => {
            let name = rs.spec.to_string();
            let ks: Vec<u32> = match cfg.k {
                Some(k) => vec![k],
                None => {
                    let ks: Vec<u32> = battery.iter().filter(|(t, _)| *t == name).map(|(_, k)| *k).collect();
                    if ks.is_empty() {
                        vec![1]
                    } else {
                        ks
                    }
                }
            };
            Ok(ks.into_iter().map(|k| (rs.clone(), k)).collect())
        }
        None => battery
            .iter()
            .filter(|(_, k)| cfg.k.is_none_or(|want| want == *k))
            .map(|(t, k)| Ok((system(t, cfg)?, *k)))
            .collect(),
    }
}

fn classes(cfg: &JobConfig, rs: &RootSystem) -> Vec<CenterClass> {
    match (&cfg.class, &cfg.rs) {
        (Some(c), Some(_)) => vec![c.clone()],
        _ => rs.center_classes(),
    }
}

fn label(rs: &RootSystem, k: u32, c: &CenterClass) -> String {
    format!("{} k={} class {}", rs.spec, k, c)
}

fn theorem1(cfg: &JobConfig, report: &mut SuiteReport) -> CliResult<()> {
    for (rs, k) in cases(cfg, BATTERY)? {
        for c in classes(cfg, &rs) {
            let p = MLProblem::new(&rs, k, c.clone())?;
            match decompose(&p) {
                Ok(dec) => {
                    let min = dec.combo.iter().map(|(_, v)| v.clone()).min().unwrap_or_else(Zero::zero);
                    report.push(
                        Status::from_bool(dec.verified(&rs)),
                        label(&rs, k, &c),
                        format!(
                            "{} characters, smallest coefficient {}, sum rule {}, routes agree {}, single coset {}",
                            dec.combo.len(),
                            min,
                            dec.sum_rule,
                            dec.route_agreement,
                            dec.single_coset(&rs)
                        ),
                    );
                }
                Err(e) => report.push(Status::Fail, label(&rs, k, &c), e.to_string()),
            }
        }
    }
    Ok(())
}

fn weights_string(ws: &[Weight]) -> String {
    format!("{{{}}}", ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "))
}

fn prop3(cfg: &JobConfig, report: &mut SuiteReport) -> CliResult<()> {
    for (rs, k) in cases(cfg, BATTERY)? {
        for c in classes(cfg, &rs) {
            let p = MLProblem::new(&rs, k, c.clone())?;
            let dec = decompose(&p)?;
            let support: Vec<Weight> = dec.combo.canonical_order(&rs).into_iter().map(|(w, _)| w).collect();
            let strict = support_set(&p);
            let leading = leading_weight(&p);
            if rs.rank() == 1 && k == 1 {
                report.push(
                    Status::ExpectedFail,
                    label(&rs, k, &c),
                    format!(
                        "rank 1, k = 1 boundary: support {} vs strict interior {}, leading weight {}",
                        weights_string(&support),
                        weights_string(&strict),
                        leading.map(|w| w.to_string()).unwrap_or_else(|e| format!("rejected ({e})"))
                    ),
                );
                continue;
            }
            let leading = leading?;
            let ok = support == strict && leading == dec.leading && dec.combo.get(&leading) > qi(0);
            report.push(
                Status::from_bool(ok),
                label(&rs, k, &c),
                format!(
                    "support {} strict interior {} leading {} predicted {}",
                    weights_string(&support),
                    weights_string(&strict),
                    dec.leading,
                    leading
                ),
            );
        }
    }
    Ok(())
}

fn dominance(cfg: &JobConfig, report: &mut SuiteReport) -> CliResult<()> {
    let systems: Vec<RootSystem> = match &cfg.rs {
        Some(rs) => vec![rs.clone()],
        None => DOMINANCE_TYPES.iter().map(|t| system(t, cfg)).collect::<CliResult<_>>()?,
    };
    for rs in systems {
        for c in classes(cfg, &rs) {
            let diff = &rs.rho - &rs.beta_of_class(&c);
            let dominant = diff.is_dominant();
            let status = if rs.rank() == 1 && c.is_trivial() && !dominant {
                Status::ExpectedFail
            } else {
                Status::from_bool(dominant)
            };
            report.push(status, format!("{} class {}", rs.spec, c), format!("rho - beta = {diff}"));
        }
    }
    Ok(())
}

fn representations_up_to(rs: &RootSystem, max_dim: u64) -> Vec<Weight> {
    let r = rs.rank();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![vec![0i64; r]];
    while let Some(l) = stack.pop() {
        if !seen.insert(l.clone()) {
            continue;
        }
        for i in 0..r {
            let mut next = l.clone();
            next[i] += 1;
            if weyl_dim(rs, &Weight::from_ints(&next)).unwrap() <= max_dim {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().map(|l| Weight::from_ints(&l)).collect();
    out.sort_by_key(|w| (rs.height(w), w.clone()));
    out
}

fn prop1(cfg: &JobConfig, report: &mut SuiteReport) -> CliResult<()> {
    let systems: Vec<RootSystem> = match &cfg.rs {
        Some(rs) => vec![rs.clone()],
        None => CONTRACTION_TYPES.iter().map(|t| system(t, cfg)).collect::<CliResult<_>>()?,
    };
    for rs in systems {
        let reps = representations_up_to(&rs, 100);
        for n in [2u32, 3] {
            let mut failures = Vec::new();
            let mut checked = 0usize;
            for lambda in &reps {
                let v = CharacterCombo::single(lambda.clone(), qi(1))?;
                let r = verify_prop1(&rs, &v, n)?;
                checked += r.entries.len();
                if !r.all_pass() {
                    failures.push(lambda.to_string());
                }
            }
            report.push(
                Status::from_bool(failures.is_empty()),
                format!("{} N={n} contraction", rs.spec),
                format!(
                    "{} irreducibles of dimension <= 100, {checked} weights compared, mismatches {}",
                    reps.len(),
                    if failures.is_empty() { "none".to_string() } else { failures.join(" ") }
                ),
            );
            let mut rng = sampling::rng(cfg.seed.wrapping_add(n as u64));
            let points = sampling::torus_points(&rs, 10, 0.01, &mut rng);
            let mut worst: f64 = 0.0;
            for x in &points {
                worst = worst.max(weyl_denominator_ratio_check(&rs, n, x)?);
            }
            report.push(
                Status::from_bool(worst < 1e-9),
                format!("{} N={n} denominator ratio", rs.spec),
                format!("max residual {worst:.2e} over {} points", points.len()),
            );
        }
    }
    Ok(())
}

/// Interior points `mu` with `N mu` in the right coset for `N` in {8, 16, 32}.
pub fn convergence_points(rs: &RootSystem) -> Vec<Weight> {
    match rs.rank() {
        1 => [q(0, 1), q(1, 4), q(1, 2), q(3, 4), q(-1, 2)].into_iter().map(|c| Weight::new(vec![c])).collect(),
        _ => [(0, 0), (4, 4), (3, 0), (1, 4), (2, 5)]
            .into_iter()
            .map(|(a, b)| Weight::new(vec![q(a, 8), q(b, 8)]))
            .collect(),
    }
}

pub const CONVERGENCE_N: [u32; 3] = [8, 16, 32];

/// Errors at `N = 8, 16, 32` and whether `err(N) <= C / N` with `C = 2 * 8 * err(8)`.
pub fn convergence_check(rs: &RootSystem, mu: &Weight) -> crate::Result<([f64; 3], bool)> {
    let spec = dh_spec(rs, 1)?;
    let exact = BoxSplineEvaluator::new(&spec)?.eval(mu)?.value;
    let mut errs = [0.0; 3];
    for (e, &n) in errs.iter_mut().zip(&CONVERGENCE_N) {
        *e = to_f64(&(dh_density_from_multiplicities(rs, mu, n)? - &exact)).abs();
    }
    let c = 2.0 * 8.0 * errs[0];
    let ok = errs.iter().zip(&CONVERGENCE_N).all(|(e, &n)| *e <= c / n as f64 + 1e-15);
    Ok((errs, ok))
}

fn boxspline(cfg: &JobConfig, report: &mut SuiteReport) -> CliResult<()> {
    for (idx, (rs, k)) in cases(cfg, BOXSPLINE_BATTERY)?.into_iter().enumerate() {
        let spec = dh_spec(&rs, k)?;
        let ev = BoxSplineEvaluator::new(&spec)?;
        let mut rng = sampling::rng(cfg.seed.wrapping_add(idx as u64));
        let points = sampling::boxspline_points(&spec, BOXSPLINE_POINTS, &mut rng);
        let mut agree = 0usize;
        let mut mismatches = Vec::new();
        let mut worst_z: f64 = 0.0;
        let mut mc_ok = true;
        let bandwidth = default_bandwidth(rs.rank());
        for (j, t) in points.iter().enumerate() {
            let primary = ev.eval(t)?.value;
            let oracle = slice_volume_density(&spec, t)?;
            if primary == oracle {
                agree += 1;
            } else {
                mismatches.push(format!("{t}: {primary} vs {oracle}"));
            }
            let mc = boxspline_eval_mc(&spec, t, MC_SAMPLES, cfg.seed.wrapping_add(1000 * idx as u64 + j as u64), bandwidth)?;
            let z = mc.z_score(to_f64(&primary));
            worst_z = worst_z.max(z);
            mc_ok &= z <= 4.0;
        }
        report.push(
            Status::from_bool(mismatches.is_empty()),
            format!("{} k={k} exact evaluators", rs.spec),
            format!("{agree}/{} points identical{}", points.len(), if mismatches.is_empty() { String::new() } else { format!("; {}", mismatches.join("; ")) }),
        );
        report.push(
            Status::from_bool(mc_ok),
            format!("{} k={k} monte carlo", rs.spec),
            format!("{} points, n = {MC_SAMPLES}, bandwidth {bandwidth}, worst deviation {worst_z:.2} standard errors", points.len()),
        );
    }
    let systems: Vec<RootSystem> = match &cfg.rs {
        Some(rs) if rs.rank() <= 2 && rs.spec.to_string().starts_with('A') => vec![rs.clone()],
        Some(_) => vec![],
        None => vec![system("A1", cfg)?, system("A2", cfg)?],
    };
    for rs in systems {
        for mu in convergence_points(&rs) {
            let (errs, ok) = convergence_check(&rs, &mu)?;
            report.push(
                Status::from_bool(ok),
                format!("{} multiplicity estimator at {mu}", rs.spec),
                format!("errors {:.3e} {:.3e} {:.3e} at N = 8, 16, 32", errs[0], errs[1], errs[2]),
            );
        }
    }
    Ok(())
}

/// Tolerance used when none is configured.
pub fn default_tolerance(rs: &RootSystem, k: u32) -> f64 {
    if rs.rank() == 1 && k == 1 {
        1e-3
    } else {
        1e-6
    }
}

fn fourier(cfg: &JobConfig, report: &mut SuiteReport) -> CliResult<()> {
    for (idx, (rs, k)) in cases(cfg, BATTERY)?.into_iter().enumerate() {
        let radius = cfg.radius.unwrap_or_else(|| default_radius(&rs, k));
        let tol = cfg.tol.unwrap_or_else(|| default_tolerance(&rs, k));
        for (cidx, c) in classes(cfg, &rs).into_iter().enumerate() {
            let p = MLProblem::new(&rs, k, c.clone())?;
            let mut rng = sampling::rng(cfg.seed.wrapping_add(100 * idx as u64 + cidx as u64));
            let points = sampling::torus_points(&rs, FOURIER_POINTS, 0.0, &mut rng);
            let r = verify_fourier(&p, &points, radius, tol)?;
            report.push(
                Status::from_bool(r.all_pass()),
                label(&rs, k, &c),
                format!(
                    "R = {radius}, tol {tol:e}: max error {:.2e}, periodicity {:.2e}, reflection {:.2e}",
                    r.max_error(),
                    r.periodicity_error,
                    r.invariance_error
                ),
            );
        }
    }
    Ok(())
}

fn mittag(cfg: &JobConfig, report: &mut SuiteReport) -> CliResult<()> {
    let a1_selected = cfg.rs.as_ref().is_none_or(|rs| rs.spec.to_string() == "A1");
    if a1_selected && cfg.k.is_none_or(|k| k == 1) {
        let rs = system("A1", cfg)?;
        let radius = cfg.radius.unwrap_or(10_000);
        let tol = cfg.tol.unwrap_or(1e-3);
        // alpha(x) = 2 x_1 = 0.3
        let x = CoweightVector::new(vec![q(3, 20)]);
        let u = 0.3 * std::f64::consts::PI;
        for c in rs.center_classes() {
            let p = MLProblem::new(&rs, 1, c.clone())?;
            let residual = pole_expansion_check(&p, &x, radius)?;
            let poles = pole_sum_f64(&p, &x.to_f64(), radius)?;
            let (name, closed) = if c.is_trivial() {
                ("pi / sin(pi u)", std::f64::consts::PI / u.sin())
            } else {
                ("pi cot(pi u)", std::f64::consts::PI / u.tan())
            };
            let classical = (poles.re - closed).abs().max(poles.im.abs());
            report.push(
                Status::from_bool(residual < tol && classical < tol),
                format!("{} pole expansion at u = 0.3", label(&rs, 1, &c)),
                format!("R = {radius}: residual {residual:.2e}, distance to {name} {classical:.2e}"),
            );
        }
    }
    let rank2 = match &cfg.rs {
        Some(rs) if rs.rank() >= 2 => Some(rs.clone()),
        Some(_) => None,
        None => Some(system("A2", cfg)?),
    };
    if let Some(rs) = rank2 {
        let k = cfg.k.unwrap_or(1);
        let c = cfg.class.clone().filter(|_| cfg.rs.is_some()).unwrap_or_else(|| CenterClass::trivial(rs.rank()));
        let p = MLProblem::new(&rs, k, c.clone())?;
        let mut rng = sampling::rng(cfg.seed);
        let x = sampling::torus_points(&rs, 1, 0.05, &mut rng).remove(0);
        let r40 = pole_expansion_check(&p, &x, 40)?;
        let r80 = pole_expansion_check(&p, &x, 80)?;
        report.push(
            Status::from_bool(r80 < r40),
            format!("{} pole expansion at {x}", label(&rs, k, &c)),
            format!("residual {r40:.2e} at R = 40, {r80:.2e} at R = 80"),
        );
    }
    for (rs, k) in cases(cfg, BATTERY)? {
        for c in classes(cfg, &rs) {
            let p = MLProblem::new(&rs, k, c.clone())?;
            let dec = decompose(&p)?;
            let inverse = decompose(&MLProblem::new(&rs, k, c.inverse())?)?;
            let dual = dual_combo(&rs, &inverse.combo)?;
            report.push(
                Status::from_bool(dual == dec.combo),
                format!("{} conjugation symmetry", label(&rs, k, &c)),
                format!("m_lambda(xi) = m_(-w0 lambda)(xi^-1) over {} characters", dec.combo.len()),
            );
            let entries = pointwise_comparison(&p)?;
            let differing: Vec<String> = entries.iter().filter(|e| !e.agrees()).map(|e| e.lambda.to_string()).collect();
            let at_leading = entries.iter().find(|e| e.lambda == dec.leading).is_some_and(|e| e.agrees());
            report.push(
                Status::from_bool(at_leading),
                format!("{} pointwise density reading", label(&rs, k, &c)),
                format!(
                    "m_lambda = det(A) density(lambda) at the leading weight {}; differs at {} of {} weights {}",
                    dec.leading,
                    differing.len(),
                    entries.len(),
                    weights_string_str(&differing)
                ),
            );
        }
    }
    Ok(())
}

fn weights_string_str(ws: &[String]) -> String {
    format!("{{{}}}", ws.join(" "))
}
