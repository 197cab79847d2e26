//! Tail corrections for truncated series.
//!
//! Two mechanisms are provided. Terms with a known expansion in inverse powers
//! of the index are summed exactly term-by-term with Hurwitz zeta values.
//! Smooth weights multiplied by a unimodular phase `e^{iθn}` are handled by
//! the Euler transform of the geometric factor, or by midpoint integral
//! comparison when the phase is trivial.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::quad::quad_de;
use super::zeta::hurwitz;
use super::Ctrl;
use crate::digamma::psi_ref;
use crate::error::{domain, Result};

/// `Σ_{j≥0} (first + j)^{-p}` for `p > 1`, `first > 0`.
pub fn power_tail(p: f64, first: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(domain(format!("non-alternating power tail needs p > 1, got {p}")));
    }
    hurwitz(p, first)
}

/// `Σ_{j≥0} (-1)^j (first + j)^{-p}` for `p > 0`, `first > 0`.
pub fn alt_power_tail(p: f64, first: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(domain(format!("alternating power tail needs p > 0, got {p}")));
    }
    if p == 1.0 {
        return Ok(0.5 * (psi_ref(0.5 * (first + 1.0))? - psi_ref(0.5 * first)?));
    }
    Ok((-p).exp2() * (hurwitz(p, 0.5 * first)? - hurwitz(p, 0.5 * (first + 1.0))?))
}

/// An asymptotic expansion `Σ_i c_i (j + shift)^{-p_i}` of a series term in
/// its index `j`, ordered by increasing power.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InversePowers {
    pub terms: Vec<(f64, f64)>,
}

impl InversePowers {
    pub fn new(terms: Vec<(f64, f64)>) -> Self {
        InversePowers { terms }
    }

    /// Sum over `j ≥ first_index` of the first `order` expansion terms, with
    /// the indexing variable `j + shift`; `alternating` multiplies term `j`
    /// by `(-1)^j`.
    pub fn tail(&self, first_index: u64, shift: f64, alternating: bool, order: u32) -> Result<f64> {
        let first = first_index as f64 + shift;
        let sign = if alternating && first_index % 2 == 1 { -1.0 } else { 1.0 };
        let mut acc = 0.0;
        for &(p, c) in self.terms.iter().take(order as usize) {
            let t = if alternating {
                sign * alt_power_tail(p, first)?
            } else {
                power_tail(p, first)?
            };
            acc += c * t;
        }
        Ok(acc)
    }

    /// Magnitude of the first neglected term at the truncation index, a
    /// conservative size for the remaining tail error.
    pub fn next_term(&self, first_index: u64, shift: f64, order: u32) -> f64 {
        let x = first_index as f64 + shift;
        self.terms
            .get(order as usize)
            .map(|&(p, c)| (c * x.powf(-p)).abs() * x)
            .unwrap_or(0.0)
    }
}

/// Approximates `Σ_{n≥first} e^{iθn} H(n)` for a smooth, slowly varying `H`.
///
/// For a non-trivial phase the Euler transform
/// `E^M/(1-E) Σ_m (E/(1-E))^m Δ^m H(M)` is truncated after `order` terms.
/// When `θ ≡ 0 (mod 2π)` the sum is compared with `∫_{M-1/2}^∞ H`, plus the
/// midpoint correction `H'(M-1/2)/24` when `order ≥ 2`.
pub fn oscillatory_tail<H>(h: H, first: u64, theta: f64, order: u32, ctrl: &Ctrl) -> Result<Complex64>
where
    H: Fn(f64) -> f64,
{
    if order == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let m = first as f64;
    let reduced = theta.rem_euclid(TAU);
    let e = Complex64::from_polar(1.0, theta);
    let one_minus = Complex64::new(1.0, 0.0) - e;
    if reduced.min(TAU - reduced) < 1e-9 {
        let lo = m - 0.5;
        let integral = quad_de(&h, lo, f64::INFINITY, ctrl)?.value;
        let mut total = integral;
        if order >= 2 {
            let d = 1e-3 * lo.max(1.0);
            let deriv = (h(lo + d) - h(lo - d)) / (2.0 * d);
            total += deriv / 24.0;
        }
        return Ok(Complex64::new(total, 0.0));
    }
    let ratio = e / one_minus;
    let mut values: Vec<f64> = (0..order as u64).map(|i| h(m + i as f64)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut factor = Complex64::new(1.0, 0.0);
    for _ in 0..order {
        acc += factor * values[0];
        factor *= ratio;
        for i in 0..values.len().saturating_sub(1) {
            values[i] = values[i + 1] - values[i];
        }
        values.pop();
        if values.is_empty() {
            break;
        }
    }
    let lead = Complex64::from_polar(1.0, (theta * m).rem_euclid(TAU)) / one_minus;
    Ok(lead * acc)
}
