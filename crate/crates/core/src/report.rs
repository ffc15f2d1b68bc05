// SPDX-License-Identifier: MIT

//! Verification records shared by every check.

use serde::Serialize;

use crate::grid::{AxisSpec, Grid};

/// Named contribution to a check's error budget.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetLine {
    pub label: String,
    pub value: f64,
}

/// Outcome of one identity or inequality check.
///
/// `ratio` is check specific: for identities it is usually a relative
/// deviation compared against `tolerance` from above, for inequalities a
/// `lhs / rhs` quotient.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub grid: Vec<AxisSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub budget: Vec<BudgetLine>,
}

impl VerificationReport {
    /// Identity check: passes when `deviation <= tolerance`.
    pub fn deviation(name: &str, lhs: f64, rhs: f64, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            case: String::new(),
            lhs,
            rhs,
            ratio: deviation,
            tolerance,
            pass: deviation.is_finite() && deviation <= tolerance,
            grid: Vec::new(),
            warnings: Vec::new(),
            budget: Vec::new(),
        }
    }

    /// Inequality `lhs <= rhs` with relative slack: passes when
    /// `lhs <= rhs * (1 + tolerance)`. A zero right side requires a zero left
    /// side.
    pub fn upper_bound(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let ratio = if rhs > 0.0 { lhs / rhs } else if lhs == 0.0 { 0.0 } else { f64::INFINITY };
        Self {
            pass: ratio <= 1.0 + tolerance,
            ..Self::deviation(name, lhs, rhs, ratio, tolerance)
        }
    }

    /// Inequality `lhs >= rhs` with relative slack: passes when
    /// `lhs / rhs >= 1 - tolerance`.
    pub fn lower_bound(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let ratio = if rhs > 0.0 { lhs / rhs } else { f64::INFINITY };
        Self {
            pass: ratio >= 1.0 - tolerance,
            ..Self::deviation(name, lhs, rhs, ratio, tolerance)
        }
    }

    /// Ratio expected to lie in `[1 - tolerance, 1 + tolerance]`.
    pub fn ratio_near_one(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let ratio = lhs / rhs;
        Self {
            pass: (ratio - 1.0).abs() <= tolerance,
            ..Self::deviation(name, lhs, rhs, ratio, tolerance)
        }
    }

    pub fn with_grid(mut self, grid: &Grid) -> Self {
        self.grid = grid.axes().to_vec();
        self
    }

    /// Labels the fixture and parameters a record belongs to.
    pub fn with_case(mut self, case: impl Into<String>) -> Self {
        self.case = case.into();
        self
    }

    pub fn warn(mut self, msg: impl Into<String>) -> Self {
        self.warnings.push(msg.into());
        self
    }

    pub fn budget_line(mut self, label: &str, value: f64) -> Self {
        self.budget.push(BudgetLine { label: label.to_string(), value });
        self
    }
}
