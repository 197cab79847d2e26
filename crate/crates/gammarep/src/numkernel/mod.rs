//! Shared numerical machinery: double-exponential quadrature, compensated
//! summation, Bernoulli numbers and polynomials, Hurwitz zeta with its
//! s-derivative, the trigonometric integrals Ci and Si, and asymptotic
//! tail corrections for slowly convergent series.

mod bernoulli;
mod quad;
mod sum;
mod tail;
mod trig;
mod zeta;

pub use bernoulli::{
    bernoulli_number, bernoulli_poly, periodized_bernoulli, BernoulliCache, BERNOULLI_CAPACITY,
};
pub use quad::{quad_de, quad_de_nodes, quad_de_square, Node};
pub use sum::{comp_sum, CompSum};
pub use tail::{alt_power_tail, oscillatory_tail, power_tail, InversePowers};
pub use trig::{aux_fg, ci, ci_si, ci_si_half_pi, si, CiSi};
pub use zeta::{hurwitz, hurwitz_zeta, hurwitz_zeta_with_derivative, zeta, zeta_prime};

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler's constant, used only where a formula contains it explicitly.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Truncation and accuracy knobs shared by every series and quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ctrl {
    /// Number of series terms (K, J or N depending on the representation).
    pub max_terms: usize,
    /// Absolute accuracy goal used for convergence decisions.
    pub target_tol: f64,
    /// Maximum number of step halvings in the double-exponential rule.
    pub quad_levels: u32,
    /// Number of asymptotic tail-correction orders applied to truncated series.
    pub tail_order: u32,
}

impl Default for Ctrl {
    fn default() -> Self {
        Ctrl {
            max_terms: 2000,
            target_tol: 1e-12,
            quad_levels: 12,
            tail_order: 2,
        }
    }
}

impl Ctrl {
    pub fn new(max_terms: usize, target_tol: f64, quad_levels: u32, tail_order: u32) -> Result<Self> {
        let c = Ctrl {
            max_terms,
            target_tol,
            quad_levels,
            tail_order,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 {
            return Err(Error::InvalidCtrl("max_terms must be at least 1".into()));
        }
        if !(self.target_tol > 0.0 && self.target_tol < 1.0) {
            return Err(Error::InvalidCtrl(format!(
                "target_tol must lie in (0, 1), got {}",
                self.target_tol
            )));
        }
        if self.quad_levels < 1 {
            return Err(Error::InvalidCtrl("quad_levels must be at least 1".into()));
        }
        if self.tail_order > 4 {
            return Err(Error::InvalidCtrl(format!(
                "tail_order must be at most 4, got {}",
                self.tail_order
            )));
        }
        Ok(())
    }

    pub fn with_max_terms(mut self, n: usize) -> Self {
        self.max_terms = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_tol = tol;
        self
    }

    pub fn with_quad_levels(mut self, levels: u32) -> Self {
        self.quad_levels = levels;
        self
    }

    pub fn with_tail_order(mut self, order: u32) -> Self {
        self.tail_order = order;
        self
    }
}

/// A computed value with its a-posteriori error estimate and work counters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_est: f64,
    pub terms_used: u64,
    pub nodes_used: u64,
    pub converged: bool,
}

impl EvalResult {
    /// A result known to full working precision.
    pub fn exact(value: f64) -> Self {
        EvalResult {
            value,
            err_est: 0.0,
            terms_used: 0,
            nodes_used: 0,
            converged: true,
        }
    }

    /// Builds a result, deciding convergence against `tol`.
    pub fn with_estimate(value: f64, err_est: f64, tol: f64) -> Self {
        let err_est = if err_est.is_finite() { err_est.abs() } else { f64::MAX };
        EvalResult {
            value,
            err_est,
            terms_used: 0,
            nodes_used: 0,
            converged: err_est <= tol,
        }
    }

    pub fn terms(mut self, n: u64) -> Self {
        self.terms_used = n;
        self
    }

    pub fn nodes(mut self, n: u64) -> Self {
        self.nodes_used = n;
        self
    }

    /// Applies an affine map `scale * value + offset`, scaling the error too.
    pub fn affine(mut self, scale: f64, offset: f64) -> Self {
        self.value = scale * self.value + offset;
        self.err_est *= scale.abs();
        self
    }

    /// Combines two results additively; convergence requires both and the joint bound.
    pub fn plus(self, other: EvalResult, tol: f64) -> Self {
        let err = self.err_est + other.err_est;
        EvalResult {
            value: self.value + other.value,
            err_est: err,
            terms_used: self.terms_used + other.terms_used,
            nodes_used: self.nodes_used + other.nodes_used,
            converged: self.converged && other.converged && err <= tol,
        }
    }

    /// Re-evaluates the convergence flag against `tol`.
    pub fn recheck(mut self, tol: f64) -> Self {
        self.converged = self.converged && self.err_est <= tol;
        self
    }
}
