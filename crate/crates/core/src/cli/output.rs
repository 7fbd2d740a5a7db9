use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::suites::SuiteReport;
use super::{EvalValue, Format};
use crate::mittag::{Decomposition, MLProblem};
use crate::rational::{fmt_rational, Q};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CoefficientJson {
    pub lambda: Vec<i64>,
    pub value: String,
}

/// Serialized form of a decomposition; field order is the output order.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DecompositionJson {
    #[serde(rename = "type")]
    pub type_: String,
    pub k: u32,
    pub class: Vec<String>,
    pub support_class: Vec<String>,
    pub leading: Vec<i64>,
    pub coefficients: Vec<CoefficientJson>,
    pub sum_rule: String,
    pub route_agreement: bool,
}

impl DecompositionJson {
    pub fn new(p: &MLProblem, dec: &Decomposition) -> Self {
        Self {
            type_: p.rs.spec.to_string(),
            k: p.k,
            class: p.xi.strings(),
            support_class: dec.support_class.strings(),
            leading: dec.leading.to_ints().expect("integral"),
            coefficients: dec
                .combo
                .canonical_order(p.rs)
                .into_iter()
                .map(|(l, v)| CoefficientJson { lambda: l.to_ints().expect("integral"), value: fmt_rational(&v) })
                .collect(),
            sum_rule: fmt_rational(&dec.sum_rule),
            route_agreement: dec.route_agreement,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }
}

fn coords(v: &[i64]) -> String {
    format!("[{}]", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

pub(super) fn render_decomposition(p: &MLProblem, dec: &Decomposition, format: Format) -> String {
    let json = DecompositionJson::new(p, dec);
    match format {
        Format::Json => json.to_json(),
        Format::Csv => {
            let r = p.rs.rank();
            let mut s = String::new();
            let header: Vec<String> = (1..=r).map(|i| format!("lambda_{i}")).collect();
            writeln!(s, "{},value_num,value_den", header.join(",")).unwrap();
            for (lambda, value) in dec.combo.canonical_order(p.rs) {
                let c: Vec<String> = lambda.to_ints().unwrap().iter().map(|x| x.to_string()).collect();
                writeln!(s, "{},{},{}", c.join(","), value.numer(), value.denom()).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "type {}  k {}  class ({})", json.type_, json.k, json.class.join(",")).unwrap();
            writeln!(s, "support class ({})", json.support_class.join(",")).unwrap();
            writeln!(s, "leading {}", coords(&json.leading)).unwrap();
            for c in &json.coefficients {
                writeln!(s, "  {:<16} {}", coords(&c.lambda), c.value).unwrap();
            }
            writeln!(s, "sum rule {}", json.sum_rule).unwrap();
            writeln!(s, "route agreement {}", json.route_agreement).unwrap();
            s
        }
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    cases: Vec<CaseJson<'a>>,
    passed: usize,
    failed: usize,
    expected_failures: usize,
    ok: bool,
}

#[derive(Serialize)]
struct CaseJson<'a> {
    status: &'static str,
    case: &'a str,
    detail: &'a str,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(super) fn render_report(report: &SuiteReport, format: Format) -> String {
    let (passed, failed, xfail) = report.counts();
    match format {
        Format::Json => {
            let j = ReportJson {
                suite: &report.suite,
                cases: report
                    .cases
                    .iter()
                    .map(|c| CaseJson { status: c.status.label(), case: &c.case, detail: &c.detail })
                    .collect(),
                passed,
                failed,
                expected_failures: xfail,
                ok: report.passed(),
            };
            serde_json::to_string_pretty(&j).unwrap() + "\n"
        }
        Format::Csv => {
            let mut s = String::from("status,case,detail\n");
            for c in &report.cases {
                writeln!(s, "{},{},{}", c.status.label(), csv_field(&c.case), csv_field(&c.detail)).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.cases {
                writeln!(s, "{:<5} {}: {}", c.status.label(), c.case, c.detail).unwrap();
            }
            writeln!(
                s,
                "{}: {passed} passed, {failed} failed, {xfail} expected failures -> {}",
                report.suite,
                if report.passed() { "PASS" } else { "FAIL" }
            )
            .unwrap();
            s
        }
    }
}

#[derive(Serialize)]
struct EvalJson<'a> {
    mode: &'a str,
    x: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    averaged: Option<bool>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    radius: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_error: Option<f64>,
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12} {} {:.12}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
    }
}

pub(super) fn render_eval(mode: &str, x: &[Q], value: &EvalValue, format: Format) -> String {
    let xs: Vec<String> = x.iter().map(fmt_rational).collect();
    match format {
        Format::Json => {
            let mut j = EvalJson {
                mode,
                x: xs,
                re: None,
                im: None,
                value: None,
                averaged: None,
                radius: None,
                truncation_error: None,
            };
            match value {
                EvalValue::Complex { value, radius, truncation_error } => {
                    j.re = Some(value.re);
                    j.im = Some(value.im);
                    j.radius = *radius;
                    j.truncation_error = *truncation_error;
                }
                EvalValue::Exact { value, averaged } => {
                    j.value = Some(fmt_rational(value));
                    j.averaged = Some(*averaged);
                }
            }
            serde_json::to_string_pretty(&j).unwrap() + "\n"
        }
        Format::Csv => match value {
            EvalValue::Complex { value, radius, truncation_error } => format!(
                "mode,re,im,R,truncation_error\n{mode},{:e},{:e},{},{}\n",
                value.re,
                value.im,
                radius.map(|r| r.to_string()).unwrap_or_default(),
                truncation_error.map(|e| format!("{e:e}")).unwrap_or_default()
            ),
            EvalValue::Exact { value, averaged } => {
                format!("mode,value_num,value_den,averaged\n{mode},{},{},{averaged}\n", value.numer(), value.denom())
            }
        },
        Format::Text => {
            let mut s = String::new();
            match value {
                EvalValue::Complex { value, radius, truncation_error } => {
                    writeln!(s, "{}", fmt_complex(*value)).unwrap();
                    if let Some(r) = radius {
                        writeln!(s, "R = {r}").unwrap();
                    }
                    if let Some(e) = truncation_error {
                        writeln!(s, "estimated truncation error {e:.2e}").unwrap();
                    }
                }
                EvalValue::Exact { value, averaged } => {
                    writeln!(s, "{}", fmt_rational(value)).unwrap();
                    if *averaged {
                        writeln!(s, "mean of the two one-sided limits").unwrap();
                    }
                }
            }
            s
        }
    }
}
