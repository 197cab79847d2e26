//! Hurwitz and Riemann zeta functions by Euler–Maclaurin summation,
//! together with the s-derivative obtained by differentiating every term.

use super::bernoulli::b2k;
use super::sum::CompSum;
use super::{Ctrl, EvalResult};
use crate::error::{domain, Error, Result};

const TAIL_TERMS: usize = 10;

struct ZetaParts {
    value: f64,
    deriv: f64,
    err: f64,
    terms: u64,
}

/// Shift `N` for the Euler–Maclaurin split.
///
/// For `s > 0` the rule `N + q ≥ max(10, s)` keeps the first omitted Bernoulli
/// term negligible. For `s ≤ 0` the head sum grows like `X^{1−s}` and cancels
/// against the integral term, so `N` minimises rounding plus truncation.
fn shift(s: f64, q: f64) -> usize {
    if s > 0.0 {
        let n = (10.0f64.max(s) - q).ceil();
        return if n > 0.0 { n as usize } else { 0 };
    }
    // The omitted term carries s(s+1)…(s+2K); its s-derivative matters for ζ'.
    let mut poly = 1.0f64;
    let mut dpoly = 0.0f64;
    for i in 0..=2 * TAIL_TERMS {
        let f = s + i as f64;
        dpoly = dpoly * f + poly;
        poly *= f;
    }
    let c = (b2k(TAIL_TERMS + 1) / factorial(2 * TAIL_TERMS + 2)).abs() * (poly.abs() + dpoly.abs());
    let mut best = (f64::INFINITY, 0usize);
    for n in 0..=24usize {
        let x = n as f64 + q;
        if x < 1.0 {
            continue;
        }
        let rounding = f64::EPSILON * x.powf(1.0 - s) / (1.0 - s);
        let truncation = c * x.powf(-s - 2.0 * TAIL_TERMS as f64 - 1.0);
        let est = rounding + truncation;
        if est < best.0 {
            best = (est, n);
        }
    }
    best.1
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn euler_maclaurin(s: f64, q: f64, want_deriv: bool) -> ZetaParts {
    let n = shift(s, q);
    let mut sum = CompSum::new();
    let mut dsum = CompSum::new();
    for i in 0..n {
        let x = i as f64 + q;
        let lx = x.ln();
        let t = (-s * lx).exp();
        sum.add(t);
        if want_deriv {
            dsum.add(-lx * t);
        }
    }
    let x = n as f64 + q;
    let lx = x.ln();
    let xs = (-s * lx).exp(); // X^{-s}
    let sm1 = s - 1.0;
    sum.add(x * xs / sm1);
    sum.add(0.5 * xs);
    if want_deriv {
        dsum.add(-x * xs * (lx / sm1 + 1.0 / (sm1 * sm1)));
        dsum.add(-0.5 * lx * xs);
    }
    // Tail: Σ_k B_{2k}/(2k)! · P_k(s) · X^{-s-2k+1}, P_k(s) = s(s+1)…(s+2k-2).
    let mut poly = s; // P_1
    let mut dpoly = 1.0; // P_1'
    let mut power = xs / x; // X^{-s-1}
    let inv_x2 = 1.0 / (x * x);
    let mut fact = 2.0; // (2k)!
    let mut last = 0.0;
    for k in 1..=TAIL_TERMS + 1 {
        let c = b2k(k) / fact;
        let term = c * poly * power;
        if k == TAIL_TERMS + 1 {
            last = term.abs();
            break;
        }
        sum.add(term);
        if want_deriv {
            dsum.add(c * (dpoly - lx * poly) * power);
        }
        // Advance to P_{k+1} = P_k (s+2k-1)(s+2k).
        for m in [2 * k - 1, 2 * k] {
            let f = s + m as f64;
            dpoly = dpoly * f + poly;
            poly *= f;
        }
        power *= inv_x2;
        let kk = 2.0 * k as f64;
        fact *= (kk + 1.0) * (kk + 2.0);
    }
    let value = sum.value();
    let rounding = 4.0 * f64::EPSILON * sum.abs_total();
    ZetaParts {
        value,
        deriv: dsum.value(),
        err: last + rounding,
        terms: (n + TAIL_TERMS) as u64,
    }
}

fn check(s: f64, q: f64) -> Result<()> {
    if !s.is_finite() || !q.is_finite() {
        return Err(domain(format!("zeta arguments must be finite, got s={s}, q={q}")));
    }
    if s == 1.0 {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if q <= 0.0 {
        return Err(domain(format!("Hurwitz zeta needs q > 0, got {q}")));
    }
    Ok(())
}

/// Hurwitz zeta `ζ(s, q) = Σ_{n≥0} (n+q)^{-s}`, analytically continued in `s`.
pub fn hurwitz_zeta(s: f64, q: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    check(s, q)?;
    let p = euler_maclaurin(s, q, false);
    Ok(EvalResult::with_estimate(p.value, p.err, ctrl.target_tol).terms(p.terms))
}

/// Value-only Hurwitz zeta for internal use.
pub fn hurwitz(s: f64, q: f64) -> Result<f64> {
    check(s, q)?;
    Ok(euler_maclaurin(s, q, false).value)
}

/// `(ζ(s, q), ∂ζ/∂s (s, q))`.
pub fn hurwitz_zeta_with_derivative(s: f64, q: f64) -> Result<(f64, f64)> {
    check(s, q)?;
    let p = euler_maclaurin(s, q, true);
    Ok((p.value, p.deriv))
}

/// Riemann zeta `ζ(s) = ζ(s, 1)`.
pub fn zeta(s: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    hurwitz_zeta(s, 1.0, ctrl)
}

/// Riemann `ζ'(s)` by term-differentiated Euler–Maclaurin summation.
pub fn zeta_prime(s: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    check(s, 1.0)?;
    let p = euler_maclaurin(s, 1.0, true);
    // Differentiation multiplies the tail by at most ln X relative to ζ itself.
    let err = p.err * (1.0 + (shift(s, 1.0) as f64 + 1.0).ln());
    Ok(EvalResult::with_estimate(p.deriv, err, ctrl.target_tol).terms(p.terms))
}
