pub mod evolve;
pub mod nonlinear;
pub mod planewave;
pub mod torus;
pub mod verify;

use serde::Serialize;

use semiphoton::spinor::Bispinor;
use semiphoton::thresholds::Thresholds;

use crate::output::{num, Table};
use crate::settings::Settings;

pub const DEFAULT_SEED: u64 = 1;

/// Resolved global state shared by every command.
#[derive(Debug, Clone)]
pub struct Context {
    pub settings: Settings,
    pub seed: u64,
    pub thresholds: Thresholds,
}

/// One thresholded quantity.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `value < threshold`; a zero threshold demands exactly zero.
    pub fn below(name: &'static str, value: f64, threshold: f64) -> Self {
        let passed = value < threshold || (threshold == 0.0 && value == 0.0);
        Self { name, value, threshold, passed }
    }

    pub fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        Self { name, value, threshold, passed: value <= threshold }
    }

    pub fn flag(name: &'static str, ok: bool) -> Self {
        Self {
            name,
            value: if ok { 0.0 } else { 1.0 },
            threshold: 0.0,
            passed: ok,
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn push_checks(t: &mut Table, checks: &[Check]) {
    for c in checks {
        t.push(vec![
            format!("check.{}", c.name),
            format!("{} (threshold {}) {}", num(c.value), num(c.threshold), status(c.passed)),
        ]);
    }
}

pub fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// A complex number as `{re, im}` for readable reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<num_complex::Complex64> for ComplexValue {
    fn from(z: num_complex::Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl ComplexValue {
    pub fn display(&self) -> String {
        let (re, im) = (self.re, self.im);
        if im == 0.0 {
            num(re)
        } else if re == 0.0 {
            format!("{}i", num(im))
        } else if im < 0.0 {
            format!("{}-{}i", num(re), num(-im))
        } else {
            format!("{}+{}i", num(re), num(im))
        }
    }
}

pub fn components(b: &Bispinor) -> [ComplexValue; 4] {
    b.components().map(ComplexValue::from)
}

pub fn display_spinor(c: &[ComplexValue; 4]) -> String {
    format!("({})", c.iter().map(ComplexValue::display).collect::<Vec<_>>().join(", "))
}

pub fn failures(checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {} exceeds threshold {}", c.name, num(c.value), num(c.threshold)))
        .collect()
}
