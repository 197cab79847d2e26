//! Cosine and sine integrals.
//!
//! Three regimes: power series for `x ≤ 4`, the Lentz continued fraction
//! for `E₁(ix)` on `4 < x ≤ 40`, and the asymptotic auxiliary functions
//! beyond. Both non-series routes produce the auxiliary pair
//!
//! ```text
//! f(x) = Ci(x) sin x − (Si(x) − π/2) cos x
//! g(x) = −Ci(x) cos x − (Si(x) − π/2) sin x
//! ```
//!
//! from which `Ci = f sin x − g cos x` and `Si = π/2 − f cos x − g sin x`.
//! Working through `f` and `g` lets callers at multiples of `π/2` use exact
//! trigonometric values instead of rounded ones.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::EULER_GAMMA;
use crate::error::{domain, Result};

const SERIES_MAX: f64 = 4.0;
const CF_MAX: f64 = 40.0;

/// Cosine and sine integral at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiSi {
    pub ci: f64,
    pub si: f64,
}

fn series(x: f64) -> CiSi {
    let x2 = x * x;
    // Si(x) = Σ (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    let mut term = x; // x^{2k+1}/(2k+1)!
    let mut si = 0.0;
    let mut k = 0u32;
    loop {
        let n = f64::from(2 * k + 1);
        let contrib = term / n;
        si += contrib;
        if contrib.abs() < 1e-18 * si.abs() {
            break;
        }
        term *= -x2 / ((n + 1.0) * (n + 2.0));
        k += 1;
    }
    // Ci(x) = γ + ln x + Σ_{k≥1} (-1)^k x^{2k} / (2k (2k)!)
    let mut term = 1.0; // x^{2k}/(2k)!
    let mut acc = 0.0;
    let mut k = 1u32;
    loop {
        let n = f64::from(2 * k);
        term *= -x2 / ((n - 1.0) * n);
        let contrib = term / n;
        acc += contrib;
        if contrib.abs() < 1e-18 * (acc.abs() + 1.0) {
            break;
        }
        k += 1;
    }
    CiSi {
        ci: EULER_GAMMA + x.ln() + acc,
        si,
    }
}

/// `(f, g)` from the continued fraction `e^{ix} E₁(ix) = g − i f`.
fn aux_cf(x: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..1000u32 {
        let a = -f64::from((i - 1) * (i - 1));
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-17 {
            break;
        }
    }
    (-h.im, h.re)
}

/// `(f, g)` from their asymptotic expansions, truncated at the smallest term.
fn aux_asym(x: f64) -> (f64, f64) {
    let inv2 = 1.0 / (x * x);
    let mut f = 0.0f64;
    let mut g = 0.0f64;
    // f ~ (1/x) Σ (-1)^m (2m)!/x^{2m}, g ~ (1/x²) Σ (-1)^m (2m+1)!/x^{2m}
    let mut tf = 1.0f64;
    let mut tg = 1.0f64;
    let mut last_f = f64::INFINITY;
    let mut last_g = f64::INFINITY;
    let mut f_done = false;
    let mut g_done = false;
    let mut m = 0u32;
    while !(f_done && g_done) && m < 200 {
        if !f_done {
            if tf.abs() >= last_f {
                f_done = true;
            } else {
                f += tf;
                last_f = tf.abs();
                if tf.abs() < 1e-18 * f.abs() {
                    f_done = true;
                }
            }
        }
        if !g_done {
            if tg.abs() >= last_g {
                g_done = true;
            } else {
                g += tg;
                last_g = tg.abs();
                if tg.abs() < 1e-18 * g.abs() {
                    g_done = true;
                }
            }
        }
        let n = f64::from(2 * m);
        tf *= -(n + 1.0) * (n + 2.0) * inv2;
        tg *= -(n + 2.0) * (n + 3.0) * inv2;
        m += 1;
    }
    (f / x, g * inv2)
}

/// Auxiliary functions `(f(x), g(x))` for `x > 0`.
///
/// For `x ≤ 4` they are assembled from the power series (the expressions are
/// well conditioned there since `f, g = O(1)`).
pub fn aux_fg(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("auxiliary functions need x > 0, got {x}")));
    }
    Ok(aux_fg_unchecked(x))
}

fn aux_fg_unchecked(x: f64) -> (f64, f64) {
    if x <= SERIES_MAX {
        let CiSi { ci, si } = series(x);
        let (s, c) = x.sin_cos();
        let shifted = si - FRAC_PI_2;
        (ci * s - shifted * c, -ci * c - shifted * s)
    } else if x <= CF_MAX {
        aux_cf(x)
    } else {
        aux_asym(x)
    }
}

fn from_aux(f: f64, g: f64, s: f64, c: f64) -> CiSi {
    CiSi {
        ci: f * s - g * c,
        si: FRAC_PI_2 - f * c - g * s,
    }
}

/// `Ci(x)` and `Si(x)` for `x > 0`.
pub fn ci_si(x: f64) -> Result<CiSi> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Ci needs x > 0, got {x}")));
    }
    if x <= SERIES_MAX {
        return Ok(series(x));
    }
    let (f, g) = aux_fg_unchecked(x);
    let (s, c) = x.sin_cos();
    Ok(from_aux(f, g, s, c))
}

/// `Ci(x)` for `x > 0`.
pub fn ci(x: f64) -> Result<f64> {
    Ok(ci_si(x)?.ci)
}

/// `Si(x)` for `x ≥ 0`.
pub fn si(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() && x > 0.0 {
        return Ok(FRAC_PI_2);
    }
    if !(x > 0.0) {
        return Err(domain(format!("Si is provided for x ≥ 0, got {x}")));
    }
    Ok(ci_si(x)?.si)
}

/// `Ci` and `Si` at `x = kπ/2`, using exact values of `sin x` and `cos x`.
pub fn ci_si_half_pi(k: u64) -> Result<CiSi> {
    if k == 0 {
        return Err(domain("Ci needs x > 0"));
    }
    let x = k as f64 * FRAC_PI_2;
    if x <= SERIES_MAX {
        return Ok(series(x));
    }
    let (s, c) = match k % 4 {
        0 => (0.0, 1.0),
        1 => (1.0, 0.0),
        2 => (0.0, -1.0),
        _ => (-1.0, 0.0),
    };
    let (f, g) = aux_fg_unchecked(x);
    Ok(from_aux(f, g, s, c))
}
