//! Two-sided evaluations of an identity.

use serde::Serialize;

use crate::cisums::CaseId;
use crate::numkernel::EvalResult;

/// Both sides of an identity, their residual, and the verdict against `tol`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    /// Short identifier of the identity being checked.
    pub identity: String,
    /// Summation case, for the cosine-integral sums.
    pub case: Option<CaseId>,
    pub beta: Option<f64>,
    /// Remaining parameters rendered as `name=value` pairs.
    pub params: String,
    pub lhs: EvalResult,
    pub rhs: EvalResult,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, lhs: EvalResult, rhs: EvalResult, tol: f64) -> Self {
        let residual = (lhs.value - rhs.value).abs();
        IdentityReport {
            identity: identity.into(),
            case: None,
            beta: None,
            params: String::new(),
            lhs,
            rhs,
            residual,
            tol,
            pass: residual.is_finite() && residual <= tol,
        }
    }

    /// Passes when `lower < upper`; the residual is the violation, if any.
    pub fn ordering(identity: impl Into<String>, lower: f64, upper: f64) -> Self {
        let mut r = IdentityReport::new(identity, EvalResult::exact(lower), EvalResult::exact(upper), 0.0);
        r.residual = (lower - upper).max(0.0);
        r.pass = lower < upper;
        r
    }

    /// Passes when `value ≤ limit`.
    pub fn bound(identity: impl Into<String>, value: EvalResult, limit: f64) -> Self {
        let mut r = IdentityReport::new(identity, value, EvalResult::exact(limit), 0.0);
        r.residual = (value.value - limit).max(0.0);
        r.pass = value.value <= limit;
        r
    }

    /// Replaces the tolerance and re-judges the residual.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.pass = self.residual.is_finite() && self.residual <= tol;
        self
    }

    pub fn with_case(mut self, case: CaseId, beta: f64) -> Self {
        self.case = Some(case);
        self.beta = Some(beta);
        self
    }

    pub fn with_params(mut self, params: impl Into<String>) -> Self {
        self.params = params.into();
        self
    }
}
