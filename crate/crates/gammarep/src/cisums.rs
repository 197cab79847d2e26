//! Closed forms for weighted sums of the cosine integral over an arithmetic
//! progression, `Σ_n w(n) Ci(βn)` with `0 < β ≤ 2π`.
//!
//! Every closed form has the same skeleton. Writing
//! `Ci(βn) = γ + ln(βn) + ∫_0^1 (cos(βnv) − 1) dv/v` and summing against the
//! weight gives
//!
//! ```text
//! (γ + ln β)·W + L + ∫_0^1 [K(βv) − K(0)] dv/v
//! ```
//!
//! with `W = Σ w(n)`, `L = Σ w(n) ln n` and the Fourier cosine sum
//! `K(x) = Σ w(n) cos(nx)`, which is known in closed form for each family.
//! The oracle side sums the left-hand side directly and corrects the tail
//! with the auxiliary functions of Ci.

use std::f64::consts::{LN_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::loggamma::lngamma_ref;
use crate::numkernel::{
    aux_fg, bernoulli_number, bernoulli_poly, ci, hurwitz, oscillatory_tail, quad_de_nodes, zeta,
    zeta_prime, CompSum, Ctrl, EvalResult, Node, EULER_GAMMA,
};
use crate::report::IdentityReport;

/// Agreement required between the direct sum and the closed form.
pub const CI_SUM_TOL: f64 = 1e-6;

/// Largest `k` accepted for the `1/n^{2k}` families.
pub const MAX_EVEN_K: u32 = 60;

/// Below this argument the Fourier kernels are evaluated from their
/// expansions about `x = 0`, where the closed forms lose digits.
const SMALL_X: f64 = 0.5;

/// Weight family of a cosine-integral sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseId {
    /// `1/n²`
    P2,
    /// `(−1)^n/n²`
    P2Alt,
    /// `1/n⁴`
    P4,
    /// `(−1)^n/n⁴`
    P4Alt,
    /// `1/n^{2k}`
    Even2k(u32),
    /// `(−1)^n/n^{2k}`
    Even2kAlt(u32),
    /// `1/n^a`, `a > 1`
    RealA(f64),
    /// `(−1)^n/n^a`, `a > 1`
    RealAAlt(f64),
    /// `1/(2n+1)^a`, `a > 1`
    Odd(f64),
    /// `(−1)^n/(2n+1)^a`, `a > 1`
    OddAlt(f64),
    /// `z^n/(n(n+1))`, `|z| ≤ 1`
    PowerZ(f64),
}

impl CaseId {
    /// Family names accepted by [`CaseId::from_parts`].
    pub const NAMES: [&'static str; 11] = [
        "p2", "p2-alt", "p4", "p4-alt", "even2k", "even2k-alt", "real-a", "real-a-alt", "odd",
        "odd-alt", "power-z",
    ];

    pub fn family(&self) -> &'static str {
        match self {
            CaseId::P2 => "p2",
            CaseId::P2Alt => "p2-alt",
            CaseId::P4 => "p4",
            CaseId::P4Alt => "p4-alt",
            CaseId::Even2k(_) => "even2k",
            CaseId::Even2kAlt(_) => "even2k-alt",
            CaseId::RealA(_) => "real-a",
            CaseId::RealAAlt(_) => "real-a-alt",
            CaseId::Odd(_) => "odd",
            CaseId::OddAlt(_) => "odd-alt",
            CaseId::PowerZ(_) => "power-z",
        }
    }

    /// Builds a case from its family name and whichever parameter it needs.
    pub fn from_parts(name: &str, k: Option<u32>, a: Option<f64>, z: Option<f64>) -> Result<Self> {
        let need_k = || k.ok_or_else(|| domain(format!("case {name} needs --k")));
        let need_a = || a.ok_or_else(|| domain(format!("case {name} needs --a")));
        let case = match name {
            "p2" => CaseId::P2,
            "p2-alt" => CaseId::P2Alt,
            "p4" => CaseId::P4,
            "p4-alt" => CaseId::P4Alt,
            "even2k" => CaseId::Even2k(need_k()?),
            "even2k-alt" => CaseId::Even2kAlt(need_k()?),
            "real-a" => CaseId::RealA(need_a()?),
            "real-a-alt" => CaseId::RealAAlt(need_a()?),
            "odd" => CaseId::Odd(need_a()?),
            "odd-alt" => CaseId::OddAlt(need_a()?),
            "power-z" => CaseId::PowerZ(z.ok_or_else(|| domain("case power-z needs --z"))?),
            other => {
                return Err(domain(format!(
                    "unknown case {other:?}; expected one of {}",
                    CaseId::NAMES.join(", ")
                )))
            }
        };
        case.validate()?;
        Ok(case)
    }

    /// Checks the parameter constraints of the family.
    pub fn validate(&self) -> Result<()> {
        match *self {
            CaseId::Even2k(k) | CaseId::Even2kAlt(k) => {
                if k == 0 || k > MAX_EVEN_K {
                    return Err(domain(format!("k must lie in 1..={MAX_EVEN_K}, got {k}")));
                }
            }
            CaseId::RealA(a) | CaseId::RealAAlt(a) | CaseId::Odd(a) | CaseId::OddAlt(a) => {
                if !(a.is_finite() && a > 1.0) {
                    return Err(domain(format!("a must be a finite number > 1, got {a}")));
                }
            }
            CaseId::PowerZ(z) => {
                if !(z.is_finite() && z.abs() <= 1.0) {
                    return Err(domain(format!("|z| must not exceed 1, got {z}")));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn alternating(&self) -> bool {
        match *self {
            CaseId::P2Alt | CaseId::P4Alt | CaseId::Even2kAlt(_) | CaseId::RealAAlt(_) | CaseId::OddAlt(_) => {
                true
            }
            CaseId::PowerZ(z) => z < 0.0,
            _ => false,
        }
    }

    /// Magnitude of the weight, extended smoothly to real `x ≥ 1`.
    fn weight(&self, x: f64) -> f64 {
        match *self {
            CaseId::P2 | CaseId::P2Alt => x.powi(-2),
            CaseId::P4 | CaseId::P4Alt => x.powi(-4),
            CaseId::Even2k(k) | CaseId::Even2kAlt(k) => x.powi(-2 * k as i32),
            CaseId::RealA(a) | CaseId::RealAAlt(a) => x.powf(-a),
            CaseId::Odd(a) | CaseId::OddAlt(a) => (2.0 * x + 1.0).powf(-a),
            CaseId::PowerZ(z) => z.abs().powf(x) / (x * (x + 1.0)),
        }
    }

    /// The cases and weights of the standard verification grid.
    pub fn grid() -> Vec<CaseId> {
        let mut v = vec![CaseId::P2, CaseId::P2Alt, CaseId::P4, CaseId::P4Alt];
        for k in 1..=3 {
            v.push(CaseId::Even2k(k));
            v.push(CaseId::Even2kAlt(k));
        }
        for a in [1.5, 2.5, 3.7] {
            v.extend([CaseId::RealA(a), CaseId::RealAAlt(a), CaseId::Odd(a), CaseId::OddAlt(a)]);
        }
        for z in [-0.9, -0.5, 0.5, 0.9] {
            v.push(CaseId::PowerZ(z));
        }
        v
    }

    /// Progression steps of the standard verification grid.
    pub fn grid_betas() -> [f64; 5] {
        [PI / 4.0, PI / 2.0, PI, 1.5 * PI, TAU]
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CaseId::Even2k(k) | CaseId::Even2kAlt(k) => write!(f, "{}(k={k})", self.family()),
            CaseId::RealA(a) | CaseId::RealAAlt(a) | CaseId::Odd(a) | CaseId::OddAlt(a) => {
                write!(f, "{}(a={a})", self.family())
            }
            CaseId::PowerZ(z) => write!(f, "{}(z={z})", self.family()),
            _ => f.write_str(self.family()),
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form, e.g. `odd(a=2.5)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => (s, None),
        };
        let mut k = None;
        let mut a = None;
        let mut z = None;
        if let Some(arg) = arg {
            let (key, val) = arg
                .split_once('=')
                .ok_or_else(|| domain(format!("malformed case parameter {arg:?}")))?;
            let bad = |_| domain(format!("malformed case parameter {arg:?}"));
            match key.trim() {
                "k" => k = Some(val.trim().parse::<u32>().map_err(|_| domain(format!("malformed k in {s:?}")))?),
                "a" => a = Some(val.trim().parse::<f64>().map_err(bad)?),
                "z" => z = Some(val.trim().parse::<f64>().map_err(bad)?),
                other => return Err(domain(format!("unknown case parameter {other:?}"))),
            }
        }
        CaseId::from_parts(name, k, a, z)
    }
}

impl Serialize for CaseId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 && beta <= TAU {
        Ok(())
    } else {
        Err(domain(format!("beta must lie in (0, 2π], got {beta}")))
    }
}

fn gamma_fn(a: f64) -> Result<f64> {
    Ok(lngamma_ref(a)?.exp())
}

/// `ζ(s, q)` for `s < 0`, extended continuously to `q = 0`.
fn hz_neg(s: f64, q: f64) -> Result<f64> {
    if q <= 0.0 {
        hurwitz(s, 1.0)
    } else {
        hurwitz(s, q)
    }
}

fn is_integer(a: f64) -> bool {
    a == a.round()
}

// ---------------------------------------------------------------------------
// Fourier cosine sums as printed
// ---------------------------------------------------------------------------

/// Closed-form Fourier cosine sums used as the kernels of the identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FourierKind {
    /// `Σ cos(nx)/n⁴`
    Pow4,
    /// `Σ (−1)^n cos(nx)/n⁴`
    Pow4Alt,
    /// `Σ cos(nx)/n^{2k}`
    Even2k(u32),
    /// `Σ (−1)^n cos(nx)/n^{2k}`
    Even2kAlt(u32),
    /// `Σ cos(nx + y)/n^a`
    RealA { a: f64, y: f64 },
    /// `Σ (−1)^n cos(nx + y)/n^a`
    RealAAlt { a: f64, y: f64 },
    /// `Σ_{k≥0} cos(kx)/(2k+1)^a`
    Odd(f64),
    /// `Σ_{k≥0} (−1)^k cos(kx)/(2k+1)^a`
    OddAlt(f64),
    /// `Σ z^n cos(nx)/(n(n+1))`
    PowerZ(f64),
}

fn even_prefactor(k: u32) -> f64 {
    let n = 2 * k;
    let mut c = 0.5;
    for i in 1..=n {
        c *= TAU / f64::from(i);
    }
    if k % 2 == 1 {
        c
    } else {
        -c
    }
}

/// Cosine sum at `x` from its closed form.
///
/// The power and Bernoulli forms hold on `[0, 2π]`; the alternating forms
/// are used on `[−π, π]` and extended by periodicity. The Hurwitz forms
/// need `0 < x < 2π`, their alternating versions `|x| < π`; points outside
/// are reduced by periodicity first.
pub fn fourier_cos_closed(x: f64, kind: FourierKind) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0 && x <= TAU) {
        return Err(domain(format!("x must lie in [0, 2π], got {x}")));
    }
    let reflect = x.min(TAU - x);
    match kind {
        FourierKind::Pow4 => {
            let z4 = PI.powi(4) / 90.0;
            Ok(-x.powi(4) / 48.0 + PI * x.powi(3) / 12.0 - PI * PI * x * x / 12.0 + z4)
        }
        FourierKind::Pow4Alt => {
            let r = reflect;
            let z4 = PI.powi(4) / 90.0;
            Ok(-r.powi(4) / 48.0 + PI * PI * r * r / 24.0 - 7.0 * z4 / 8.0)
        }
        FourierKind::Even2k(k) | FourierKind::Even2kAlt(k) => {
            if k == 0 || k > MAX_EVEN_K {
                return Err(domain(format!("k must lie in 1..={MAX_EVEN_K}, got {k}")));
            }
            let t = match kind {
                FourierKind::Even2k(_) => x / TAU,
                _ => (reflect + PI) / TAU,
            };
            Ok(even_prefactor(k) * bernoulli_poly(2 * k as usize, t)?)
        }
        FourierKind::RealA { a, y } | FourierKind::RealAAlt { a, y } => {
            if !(a.is_finite() && a > 1.0) {
                return Err(domain(format!("a must be a finite number > 1, got {a}")));
            }
            let alt = matches!(kind, FourierKind::RealAAlt { .. });
            let (q_plus, q_minus) = if alt {
                let xr = if x > PI { x - TAU } else { x };
                ((PI - xr) / TAU, (PI + xr) / TAU)
            } else {
                if x == 0.0 || x == TAU {
                    return Err(domain("the Hurwitz form needs 0 < x < 2π"));
                }
                (1.0 - x / TAU, x / TAU)
            };
            let scale = TAU.powf(a) / gamma_fn(a)?;
            let (zp, zm) = (hz_neg(1.0 - a, q_plus)?, hz_neg(1.0 - a, q_minus)?);
            if y == 0.0 {
                let c = (0.5 * PI * a).cos();
                if is_integer(a) && (a as i64) % 2 == 1 {
                    return Err(Error::Pole(format!("sec(πa/2) is singular at a = {a}")));
                }
                Ok(0.25 * scale / c * (zp + zm))
            } else {
                if is_integer(a) {
                    return Err(Error::Pole(format!("csc(πa) is singular at a = {a}")));
                }
                let h = 0.5 * PI * a;
                Ok(0.5 * scale / (PI * a).sin() * ((y + h).sin() * zp - (y - h).sin() * zm))
            }
        }
        FourierKind::Odd(a) | FourierKind::OddAlt(a) => {
            if !(a.is_finite() && a > 1.0) {
                return Err(domain(format!("a must be a finite number > 1, got {a}")));
            }
            if is_integer(a) {
                return Err(Error::Pole(format!("csc(πa) is singular at a = {a}")));
            }
            let r = reflect;
            let p = PI - r;
            let s = 1.0 - a;
            let pre = TAU.powf(a) / (4.0 * gamma_fn(a)?) / (PI * a).sin();
            let four_pi = 2.0 * TAU;
            if matches!(kind, FourierKind::Odd(_)) {
                let first = -((r + PI * a) / 2.0).sin()
                    * (hurwitz(s, (r + TAU) / four_pi)? - hz_neg(s, r / four_pi)?);
                let second = ((r - PI * a) / 2.0).sin()
                    * (hz_neg(s, (TAU - r) / four_pi)? - hurwitz(s, 1.0 - r / four_pi)?);
                Ok(pre * (first + second))
            } else {
                let first = ((r + PI * a) / 2.0).cos()
                    * (hurwitz(s, (r + PI) / four_pi)? - hurwitz(s, (r + 3.0 * PI) / four_pi)?);
                let second = ((r - PI * a) / 2.0).cos()
                    * (hz_neg(s, p / four_pi)? - hurwitz(s, (TAU + p) / four_pi)?);
                Ok(pre * (first + second))
            }
        }
        FourierKind::PowerZ(z) => {
            if !(z.is_finite() && z.abs() <= 1.0) {
                return Err(domain(format!("|z| must not exceed 1, got {z}")));
            }
            if z == 0.0 {
                return Ok(0.0);
            }
            let (s, c) = x.sin_cos();
            let arg = 1.0 - 2.0 * z * c + z * z;
            let log_part = if arg == 0.0 { 0.0 } else { (z - c) * arg.ln() };
            Ok(1.0 - log_part / (2.0 * z) - s / z * (z * s).atan2(1.0 - z * c))
        }
    }
}

// ---------------------------------------------------------------------------
// Kernels K(x) − K(0), evaluated without cancellation
// ---------------------------------------------------------------------------

enum Kernel {
    /// Polynomial `Σ_{m≥1} c_m r^m` in the reduced argument.
    Poly(Vec<f64>),
    RealA(HurwitzKernel),
    Odd(HurwitzKernel),
    PowerZ(f64),
}

struct HurwitzKernel {
    a: f64,
    alt: bool,
    /// Prefactor of the Hurwitz closed form.
    pre: f64,
    /// `K(0)`.
    at_zero: f64,
    /// Coefficient of the non-analytic term `r^{a−1}` about `r = 0`.
    singular: f64,
    /// Coefficients of the analytic expansion about `r = 0`, starting at `r¹`.
    series: Vec<f64>,
}

/// Taylor coefficients of `B_n(δ + s)` in `s`, scaled to `r = 2πs`, without
/// the constant term.
fn bernoulli_shift_coeffs(k: u32, delta: f64) -> Result<Vec<f64>> {
    let n = 2 * k as usize;
    let pre = even_prefactor(k);
    let mut out = Vec::with_capacity(n);
    let mut binom = 1.0f64;
    for m in 1..=n {
        binom *= (n + 1 - m) as f64 / m as f64;
        let b = if delta == 0.0 {
            bernoulli_number(n - m)?
        } else {
            bernoulli_poly(n - m, delta)?
        };
        out.push(pre * binom * b * TAU.powi(-(m as i32)));
    }
    Ok(out)
}

impl HurwitzKernel {
    fn real_a(a: f64, alt: bool) -> Result<Self> {
        let g = gamma_fn(a)?;
        let c = (0.5 * PI * a).cos();
        let pre = 0.25 * TAU.powf(a) / g / c;
        let z = hurwitz(a, 1.0)?;
        let at_zero = if alt { (1.0 - (1.0 - a).exp2()) * -z } else { z };
        // Σ cos(nr)/n^a = π/(2Γ(a)cos(πa/2)) r^{a−1} + Σ_j (−1)^j ζ(a−2j) r^{2j}/(2j)!
        let singular = if alt { 0.0 } else { PI / (2.0 * g * c) };
        let mut series = Vec::new();
        let mut fact = 1.0;
        for j in 1..=20usize {
            let m = 2 * j;
            fact *= ((m - 1) * m) as f64;
            let s = a - m as f64;
            let mut zeta_s = hurwitz(s, 1.0)?;
            if alt {
                zeta_s *= (1.0 - s).exp2() - 1.0;
            }
            let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
            series.push(0.0);
            series.push(sign * zeta_s / fact);
        }
        Ok(HurwitzKernel {
            a,
            alt,
            pre,
            at_zero,
            singular,
            series,
        })
    }

    fn odd(a: f64, alt: bool) -> Result<Self> {
        let g = gamma_fn(a)?;
        let sin_pa = (PI * a).sin();
        let pre = 0.25 * TAU.powf(a) / g / sin_pa;
        // Lerch expansions about r = 0 with the phase e^{-ir/2} factored out.
        let (at_zero, singular, series) = if alt {
            let delta = |s: f64| -> Result<f64> { Ok(hurwitz(s, 0.25)? - hurwitz(s, 0.75)?) };
            let scale = 4f64.powf(-a);
            let mut series = Vec::new();
            let mut fact = 1.0;
            for m in 1..=40usize {
                fact *= m as f64;
                series.push(scale * delta(a - m as f64)? * 2f64.powi(m as i32) / fact);
            }
            (scale * delta(a)?, 0.0, series)
        } else {
            let scale = (-a).exp2();
            let mut series = Vec::new();
            let mut fact = 1.0;
            for m in 1..=40usize {
                fact *= m as f64;
                series.push(scale * hurwitz(a - m as f64, 0.5)? / fact);
            }
            (scale * hurwitz(a, 0.5)?, scale * PI / (g * sin_pa), series)
        };
        Ok(HurwitzKernel {
            a,
            alt,
            pre,
            at_zero,
            singular,
            series,
        })
    }

    /// `K(r) − K(0)` for the power weight, `0 ≤ r ≤ π`.
    fn real_a_bracket(&self, r: f64) -> Result<f64> {
        let a = self.a;
        if r < SMALL_X {
            let mut acc = if self.singular != 0.0 { self.singular * r.powf(a - 1.0) } else { 0.0 };
            let r2 = r * r;
            let mut pow = r2;
            for pair in self.series.chunks(2) {
                let t = pair[1] * pow;
                acc += t;
                if t.abs() <= 1e-18 * acc.abs() {
                    break;
                }
                pow *= r2;
            }
            return Ok(acc);
        }
        let s = 1.0 - a;
        let k = if self.alt {
            let p = PI - r;
            self.pre * (hz_neg(s, p / TAU)? + hurwitz(s, (PI + r) / TAU)?)
        } else {
            self.pre * (hurwitz(s, 1.0 - r / TAU)? + hurwitz(s, r / TAU)?)
        };
        Ok(k - self.at_zero)
    }

    /// `K(r) − K(0)` for the odd-denominator weight, `0 ≤ r ≤ π`.
    fn odd_bracket(&self, r: f64) -> Result<f64> {
        let a = self.a;
        if r < SMALL_X {
            // Re{e^{-ir/2}[A(−ir)^{a−1} + Σ c_m (ir)^m]} + K(0)(cos(r/2) − 1)
            let mut acc = Complex64::new(0.0, 0.0);
            if self.singular != 0.0 {
                acc += Complex64::from_polar(self.singular * r.powf(a - 1.0), -0.5 * PI * (a - 1.0));
            }
            let mut pow = Complex64::new(1.0, 0.0);
            let ir = Complex64::new(0.0, r);
            for &c in &self.series {
                pow *= ir;
                let t = pow * c;
                acc += t;
                if t.norm() <= 1e-18 * acc.norm() {
                    break;
                }
            }
            let phase = Complex64::from_polar(1.0, -0.5 * r);
            let quarter = (0.25 * r).sin();
            return Ok((phase * acc).re - 2.0 * self.at_zero * quarter * quarter);
        }
        let value = fourier_cos_closed(r, if self.alt { FourierKind::OddAlt(a) } else { FourierKind::Odd(a) })?;
        Ok(value - self.at_zero)
    }
}

/// `Σ z^n (cos nr − 1)/(n(n+1))` from the logarithm and arctangent closed form.
fn power_z_bracket(z: f64, r: f64) -> f64 {
    let half = (0.5 * r).sin();
    let sigma = half * half;
    if z.abs() < 0.1 {
        let mut acc = 0.0;
        let mut zn = 1.0;
        for n in 1..200u32 {
            zn *= z;
            if zn.abs() < 1e-20 {
                break;
            }
            let nf = f64::from(n);
            let s = (0.5 * nf * r).sin();
            acc -= 2.0 * zn * s * s / (nf * (nf + 1.0));
        }
        return acc;
    }
    let (sr, cr) = r.sin_cos();
    if z == 1.0 {
        let log_part = if sigma == 0.0 { 0.0 } else { sigma * (4.0 * sigma).ln() };
        return -log_part - 0.5 * sr * (PI - r);
    }
    let ln_one_minus = (1.0 - z).abs().ln();
    let l1 = (4.0 * z * sigma / ((1.0 - z) * (1.0 - z))).ln_1p();
    let log_part = if l1.is_finite() {
        (z - 1.0) * l1 + 2.0 * sigma * (2.0 * ln_one_minus + l1)
    } else {
        // (z − 1 + 2σ)·ln(…) vanishes where the logarithm's argument does.
        4.0 * sigma * ln_one_minus
    };
    -log_part / (2.0 * z) - sr / z * (z * sr).atan2(1.0 - z * cr)
}

impl Kernel {
    fn for_case(case: CaseId) -> Result<Self> {
        Ok(match case {
            CaseId::P2 | CaseId::P4 | CaseId::Even2k(_) => {
                let k = match case {
                    CaseId::P2 => 1,
                    CaseId::P4 => 2,
                    CaseId::Even2k(k) => k,
                    _ => unreachable!(),
                };
                Kernel::Poly(bernoulli_shift_coeffs(k, 0.0)?)
            }
            CaseId::P2Alt | CaseId::P4Alt | CaseId::Even2kAlt(_) => {
                let k = match case {
                    CaseId::P2Alt => 1,
                    CaseId::P4Alt => 2,
                    CaseId::Even2kAlt(k) => k,
                    _ => unreachable!(),
                };
                Kernel::Poly(bernoulli_shift_coeffs(k, 0.5)?)
            }
            CaseId::RealA(a) | CaseId::RealAAlt(a) => {
                let alt = matches!(case, CaseId::RealAAlt(_));
                if is_integer(a) {
                    let n = a as u32;
                    if n % 2 == 1 {
                        return Err(Error::Pole(format!("sec(πa/2) is singular at a = {a}")));
                    }
                    return Kernel::for_case(if alt { CaseId::Even2kAlt(n / 2) } else { CaseId::Even2k(n / 2) });
                }
                Kernel::RealA(HurwitzKernel::real_a(a, alt)?)
            }
            CaseId::Odd(a) | CaseId::OddAlt(a) => {
                if is_integer(a) {
                    return Err(Error::Pole(format!("csc(πa) is singular at a = {a}")));
                }
                Kernel::Odd(HurwitzKernel::odd(a, matches!(case, CaseId::OddAlt(_)))?)
            }
            CaseId::PowerZ(z) => Kernel::PowerZ(z),
        })
    }

    /// `K(r) − K(0)` at the reduced argument `r ∈ [0, π]`.
    fn bracket(&self, r: f64) -> Result<f64> {
        match self {
            Kernel::Poly(c) => Ok(c.iter().rev().fold(0.0, |acc, &cm| (acc + cm) * r)),
            Kernel::RealA(h) => h.real_a_bracket(r),
            Kernel::Odd(h) => h.odd_bracket(r),
            Kernel::PowerZ(z) => Ok(power_z_bracket(*z, r)),
        }
    }
}

/// `∫_0^1 [K(βv) − K(0)] dv/v`, split where `βv` crosses `π`.
fn kernel_integral(kernel: &Kernel, beta: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let split = if beta > PI { PI / beta } else { 1.0 };
    let mut failure: Option<Error> = None;
    let piece = |lo: f64, hi: f64, failure: &mut Option<Error>| -> Result<EvalResult> {
        quad_de_nodes(
            |n: Node| {
                if failure.is_some() {
                    return 0.0;
                }
                let v = n.x;
                let x = beta * v;
                let r = if x <= PI {
                    x
                } else if hi == 1.0 {
                    (TAU - beta) + beta * n.to_hi
                } else {
                    TAU - x
                };
                match kernel.bracket(r.max(0.0)) {
                    Ok(b) => b / v,
                    Err(e) => {
                        *failure = Some(e);
                        0.0
                    }
                }
            },
            lo,
            hi,
            ctrl,
        )
    };
    let first = piece(0.0, split, &mut failure)?;
    let mut total = first;
    if split < 1.0 {
        let second = piece(split, 1.0, &mut failure)?;
        total.value += second.value;
        total.err_est += second.err_est;
        total.nodes_used += second.nodes_used;
        total.converged &= second.converged;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Auxiliary sums
// ---------------------------------------------------------------------------

fn log_weighted_sum<W: Fn(f64) -> f64>(
    w: W,
    first: u64,
    alternating: bool,
    ctrl: &Ctrl,
) -> Result<EvalResult> {
    let n_max = (ctrl.max_terms as u64).max(first);
    let mut acc = CompSum::new();
    for n in first..=n_max {
        let x = n as f64;
        let t = w(x) * x.ln();
        acc.add(if alternating && n % 2 == 1 { -t } else { t });
    }
    let h = |x: f64| w(x) * x.ln();
    let theta = if alternating { PI } else { 0.0 };
    let order = ctrl.tail_order;
    let tail = oscillatory_tail(h, n_max + 1, theta, order, ctrl)?.re;
    let coarse = oscillatory_tail(h, n_max + 1, theta, order.saturating_sub(1), ctrl)?.re;
    let err = (tail - coarse).abs() + 4.0 * f64::EPSILON * acc.abs_total();
    Ok(EvalResult::with_estimate(acc.value() + tail, err, ctrl.target_tol).terms(n_max - first + 1))
}

/// `S(a) = Σ_{n≥2} ln n/(2n+1)^a` and `T(a) = Σ_{n≥2} (−1)^n ln n/(2n+1)^a`.
///
/// Direct summation to `max_terms` with an integral-comparison tail for `S`
/// and an Euler-transformed tail for `T`.
pub fn st_series(a: f64, ctrl: &Ctrl) -> Result<(EvalResult, EvalResult)> {
    ctrl.validate()?;
    if !(a.is_finite() && a > 1.0) {
        return Err(domain(format!("a must be a finite number > 1, got {a}")));
    }
    let w = |x: f64| (2.0 * x + 1.0).powf(-a);
    Ok((log_weighted_sum(w, 2, false, ctrl)?, log_weighted_sum(w, 2, true, ctrl)?))
}

/// `Σ_{n≥1} z^n ln n/(n(n+1))` for `|z| ≤ 1`.
pub fn power_z_log_sum(z: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    ctrl.validate()?;
    CaseId::PowerZ(z).validate()?;
    if z == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let m = z.abs();
    log_weighted_sum(|x| m.powf(x) / (x * (x + 1.0)), 2, z < 0.0, ctrl)
}

// ---------------------------------------------------------------------------
// Both sides
// ---------------------------------------------------------------------------

/// Direct summation of `Σ w(n) Ci(βn)` to `max_terms`, with the tail written
/// through the auxiliary functions `Ci(x) = f(x) sin x − g(x) cos x` and
/// summed by an Euler transform (or integral comparison when `β n` is a
/// multiple of `2π`).
pub fn ci_sum_oracle(beta: f64, case: CaseId, ctrl: &Ctrl) -> Result<EvalResult> {
    ctrl.validate()?;
    check_beta(beta)?;
    case.validate()?;
    if case == CaseId::PowerZ(0.0) {
        return Ok(EvalResult::exact(0.0));
    }
    let n_max = ctrl.max_terms as u64;
    let alt = case.alternating();
    let mut acc = CompSum::new();
    for n in 1..=n_max {
        let x = n as f64;
        let t = case.weight(x) * ci(beta * x)?;
        acc.add(if alt && n % 2 == 1 { -t } else { t });
    }
    let theta = if alt { beta + PI } else { beta };
    let tail_at = |order: u32| -> Result<f64> {
        let f_part = oscillatory_tail(
            |x| case.weight(x) * aux_fg(beta * x).map(|p| p.0).unwrap_or(0.0),
            n_max + 1,
            theta,
            order,
            ctrl,
        )?;
        let g_part = oscillatory_tail(
            |x| case.weight(x) * aux_fg(beta * x).map(|p| p.1).unwrap_or(0.0),
            n_max + 1,
            theta,
            order,
            ctrl,
        )?;
        Ok(f_part.im - g_part.re)
    };
    let tail = tail_at(ctrl.tail_order)?;
    let coarse = tail_at(ctrl.tail_order.saturating_sub(1))?;
    let err = (tail - coarse).abs() + 4.0 * f64::EPSILON * acc.abs_total();
    Ok(EvalResult::with_estimate(acc.value() + tail, err, ctrl.target_tol).terms(n_max))
}

/// `(W, L)`: the weight sum and the log-weighted sum.
fn weight_sums(case: CaseId, ctrl: &Ctrl) -> Result<(f64, EvalResult)> {
    let riemann = |s: f64, alt: bool| -> Result<(f64, EvalResult)> {
        let z = zeta(s, ctrl)?;
        let dz = zeta_prime(s, ctrl)?;
        if alt {
            let f = (1.0 - s).exp2();
            let l = (1.0 - f) * dz.value + f * LN_2 * z.value;
            Ok(((f - 1.0) * z.value, EvalResult::with_estimate(l, dz.err_est + z.err_est, ctrl.target_tol)))
        } else {
            Ok((z.value, EvalResult::with_estimate(-dz.value, dz.err_est, ctrl.target_tol)))
        }
    };
    match case {
        CaseId::P2 => riemann(2.0, false),
        CaseId::P2Alt => riemann(2.0, true),
        CaseId::P4 => riemann(4.0, false),
        CaseId::P4Alt => riemann(4.0, true),
        CaseId::Even2k(k) => riemann(f64::from(2 * k), false),
        CaseId::Even2kAlt(k) => riemann(f64::from(2 * k), true),
        CaseId::RealA(a) => riemann(a, false),
        CaseId::RealAAlt(a) => riemann(a, true),
        CaseId::Odd(a) => {
            let w = (1.0 - (-a).exp2()) * hurwitz(a, 1.0)? - 1.0;
            Ok((w, st_series(a, ctrl)?.0))
        }
        CaseId::OddAlt(a) => {
            let w = 4f64.powf(-a) * (hurwitz(a, 0.25)? - hurwitz(a, 0.75)?) - 1.0;
            Ok((w, st_series(a, ctrl)?.1))
        }
        CaseId::PowerZ(z) => {
            let w = if z == 1.0 {
                1.0
            } else {
                let l = (-z).ln_1p();
                1.0 - l + l / z
            };
            Ok((w, power_z_log_sum(z, ctrl)?))
        }
    }
}

/// Closed-form right-hand side of `Σ w(n) Ci(βn)`.
///
/// The `1/n²` and `1/n⁴` families use their polynomial-in-β forms; the
/// alternating ones are polynomial only for `β ≤ π` and fall back to the
/// Bernoulli-kernel integral beyond. All other families integrate their
/// Fourier kernel over `v`.
pub fn ci_sum_closed(beta: f64, case: CaseId, ctrl: &Ctrl) -> Result<EvalResult> {
    ctrl.validate()?;
    check_beta(beta)?;
    case.validate()?;
    if case == CaseId::PowerZ(0.0) {
        return Ok(EvalResult::exact(0.0));
    }
    let (w, l) = weight_sums(case, ctrl)?;
    let log_part = (EULER_GAMMA + beta.ln()) * w + l.value;
    let b2 = beta * beta;
    let poly = match case {
        CaseId::P2 => Some(-0.5 * PI * beta + b2 / 8.0),
        CaseId::P4 => Some(b2 / 12.0 * (-b2 / 16.0 + PI * beta / 3.0 - PI * PI / 2.0)),
        CaseId::P2Alt if beta <= PI => Some(b2 / 8.0),
        CaseId::P4Alt if beta <= PI => Some(-b2 * b2 / 192.0 + PI * PI / 6.0 * b2 / 8.0),
        _ => None,
    };
    if let Some(p) = poly {
        return Ok(EvalResult::with_estimate(log_part + p, l.err_est, ctrl.target_tol));
    }
    let kernel = Kernel::for_case(case)?;
    let integral = kernel_integral(&kernel, beta, ctrl)?;
    let err = integral.err_est + l.err_est;
    Ok(EvalResult::with_estimate(log_part + integral.value, err, ctrl.target_tol)
        .nodes(integral.nodes_used)
        .terms(l.terms_used))
}

/// Direct sum against closed form for one case and progression step.
pub fn ci_sum_identity(beta: f64, case: CaseId, ctrl: &Ctrl) -> Result<IdentityReport> {
    let lhs = ci_sum_oracle(beta, case, ctrl)?;
    let rhs = ci_sum_closed(beta, case, ctrl)?;
    Ok(IdentityReport::new("ci-sum", lhs, rhs, CI_SUM_TOL).with_case(case, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::zeta_prime;

    fn ctrl() -> Ctrl {
        Ctrl::default()
    }

    fn brute_cos(x: f64, n: u64, term: impl Fn(f64) -> f64) -> f64 {
        let mut s = CompSum::new();
        for k in 1..=n {
            let kf = k as f64;
            s.add(term(kf) * (kf * x).cos());
        }
        s.value()
    }

    #[test]
    fn pow4_at_pi() {
        let z4 = PI.powi(4) / 90.0;
        let expected = -PI.powi(4) / 48.0 + PI.powi(4) / 12.0 - PI.powi(4) / 12.0 + z4;
        let v = fourier_cos_closed(PI, FourierKind::Pow4).unwrap();
        assert!((v - expected).abs() < 1e-14);
        assert!((v - -7.0 * z4 / 8.0).abs() < 1e-14);
    }

    #[test]
    fn even_kernels_match_brute_force() {
        for &x in &[0.3, 1.0, 2.5, 4.0, 6.0] {
            for k in 1..=3u32 {
                let p = 2 * k as i32;
                let direct = brute_cos(x, 1_000_000, |n| n.powi(-p));
                let closed = fourier_cos_closed(x, FourierKind::Even2k(k)).unwrap();
                assert!((direct - closed).abs() < 1e-9, "x={x} k={k}: {direct} vs {closed}");
                let direct = brute_cos(x, 1_000_000, |n| if n as u64 % 2 == 1 { -1.0 } else { 1.0 } * n.powi(-p));
                let closed = fourier_cos_closed(x, FourierKind::Even2kAlt(k)).unwrap();
                assert!((direct - closed).abs() < 1e-9, "alt x={x} k={k}: {direct} vs {closed}");
            }
        }
    }

    #[test]
    fn hurwitz_kernels_match_brute_force() {
        // Tails of Σ cos(nx)/n^a for a = 3.7 are below 1e-13 after 10^5 terms;
        // the Hurwitz values at negative order carry ~1e-14 absolute error.
        let a = 3.7;
        for &x in &[0.7, 2.0, 3.5, 5.5] {
            let direct = brute_cos(x, 100_000, |n| n.powf(-a));
            let closed = fourier_cos_closed(x, FourierKind::RealA { a, y: 0.0 }).unwrap();
            assert!((direct - closed).abs() < 1e-11, "x={x}: {direct} vs {closed}");
            let direct = brute_cos(x, 100_000, |n| if n as u64 % 2 == 1 { -1.0 } else { 1.0 } * n.powf(-a));
            let closed = fourier_cos_closed(x, FourierKind::RealAAlt { a, y: 0.0 }).unwrap();
            assert!((direct - closed).abs() < 1e-11, "alt x={x}: {direct} vs {closed}");
            let direct = 1.0 + brute_cos(x, 100_000, |k| (2.0 * k + 1.0).powf(-a));
            let closed = fourier_cos_closed(x, FourierKind::Odd(a)).unwrap();
            assert!((direct - closed).abs() < 1e-11, "odd x={x}: {direct} vs {closed}");
            let direct =
                1.0 + brute_cos(x, 100_000, |k| if k as u64 % 2 == 1 { -1.0 } else { 1.0 } * (2.0 * k + 1.0).powf(-a));
            let closed = fourier_cos_closed(x, FourierKind::OddAlt(a)).unwrap();
            assert!((direct - closed).abs() < 1e-11, "odd-alt x={x}: {direct} vs {closed}");
        }
    }

    #[test]
    fn phase_shifted_power_kernel() {
        let (a, y, x) = (2.5, 0.4, 1.3);
        let direct = (1..200_000u64).map(|n| (n as f64 * x + y).cos() * (n as f64).powf(-a)).sum::<f64>();
        let closed = fourier_cos_closed(x, FourierKind::RealA { a, y }).unwrap();
        assert!((direct - closed).abs() < 1e-9, "{direct} vs {closed}");
        assert!(matches!(
            fourier_cos_closed(x, FourierKind::RealA { a: 3.0, y: 0.0 }),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn power_z_kernel_at_zero() {
        let z: f64 = 0.5;
        let direct: f64 = (1..200u32).map(|n| z.powi(n as i32) / (f64::from(n) * f64::from(n + 1))).sum();
        let closed = 1.0 - (z - 1.0) / (2.0 * z) * ((1.0 - z) * (1.0 - z)).ln();
        assert!((direct - closed).abs() < 1e-15);
        let k = fourier_cos_closed(0.0, FourierKind::PowerZ(z)).unwrap();
        assert!((k - closed).abs() < 1e-15);
    }

    #[test]
    fn brackets_agree_with_closed_kernels() {
        for case in [
            CaseId::RealA(1.5),
            CaseId::RealAAlt(2.5),
            CaseId::Odd(1.5),
            CaseId::OddAlt(3.7),
            CaseId::PowerZ(-0.9),
            CaseId::PowerZ(0.05),
            CaseId::PowerZ(1.0),
            CaseId::PowerZ(-1.0),
        ] {
            let kernel = Kernel::for_case(case).unwrap();
            let kind = match case {
                CaseId::RealA(a) => FourierKind::RealA { a, y: 0.0 },
                CaseId::RealAAlt(a) => FourierKind::RealAAlt { a, y: 0.0 },
                CaseId::Odd(a) => FourierKind::Odd(a),
                CaseId::OddAlt(a) => FourierKind::OddAlt(a),
                CaseId::PowerZ(z) => FourierKind::PowerZ(z),
                _ => unreachable!(),
            };
            let k0 = match case {
                CaseId::RealA(a) => zeta(a, &ctrl()).unwrap().value,
                CaseId::RealAAlt(a) => ((1.0 - a).exp2() - 1.0) * zeta(a, &ctrl()).unwrap().value,
                CaseId::Odd(a) => (1.0 - (-a).exp2()) * zeta(a, &ctrl()).unwrap().value,
                CaseId::OddAlt(a) => 4f64.powf(-a) * (hurwitz(a, 0.25).unwrap() - hurwitz(a, 0.75).unwrap()),
                _ => fourier_cos_closed(0.0, kind).unwrap(),
            };
            for &r in &[0.2, 0.45, 0.55, 1.5, 3.0] {
                let b = kernel.bracket(r).unwrap();
                let direct = fourier_cos_closed(r, kind).unwrap() - k0;
                assert!((b - direct).abs() < 1e-9, "{case} r={r}: {b} vs {direct}");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let c = ctrl().with_max_terms(10).with_tail_order(0);
        let partial = ci_sum_oracle(PI, CaseId::P2, &c).unwrap();
        let direct: f64 = (1..=10).map(|n| ci(PI * n as f64).unwrap() / (n * n) as f64).sum();
        assert!((partial.value - direct).abs() < 1e-15);
        assert_eq!(ci_sum_oracle(PI, CaseId::PowerZ(0.0), &ctrl()).unwrap().value, 0.0);

        let z2 = PI * PI / 6.0;
        let dz2 = zeta_prime(2.0, &ctrl()).unwrap().value;
        let target = (EULER_GAMMA + TAU.ln()) * z2 - dz2 - PI * PI + PI * PI / 2.0;
        let oracle = ci_sum_oracle(TAU, CaseId::P2, &ctrl()).unwrap();
        assert!((oracle.value - target).abs() < 1e-9, "{} vs {target}", oracle.value);
    }

    #[test]
    fn closed_form_examples() {
        let z2 = PI * PI / 6.0;
        let dz2 = zeta_prime(2.0, &ctrl()).unwrap().value;
        let expected = 0.5 * (LN_2 - EULER_GAMMA - PI.ln()) * z2 + 0.5 * dz2 + PI * PI / 8.0;
        let v = ci_sum_closed(PI, CaseId::P2Alt, &ctrl()).unwrap();
        assert!((v.value - expected).abs() < 1e-14);

        let b = PI / 2.0;
        let z4 = PI.powi(4) / 90.0;
        let dz4 = zeta_prime(4.0, &ctrl()).unwrap().value;
        let expected =
            (EULER_GAMMA + b.ln()) * z4 - dz4 + PI * PI / 48.0 * (-PI * PI / 64.0 + PI * PI / 6.0 - PI * PI / 2.0);
        let v = ci_sum_closed(b, CaseId::P4, &ctrl()).unwrap();
        assert!((v.value - expected).abs() < 1e-14);

        let p2 = ci_sum_closed(TAU, CaseId::P2, &ctrl()).unwrap().value;
        let e1 = ci_sum_closed(TAU, CaseId::Even2k(1), &ctrl()).unwrap().value;
        assert!((p2 - e1).abs() < 1e-10);
    }

    #[test]
    fn grid_identities_hold() {
        for case in CaseId::grid() {
            for beta in CaseId::grid_betas() {
                let r = ci_sum_identity(beta, case, &ctrl()).unwrap();
                assert!(r.pass, "{case} beta={beta}: {} vs {} ({:e})", r.lhs.value, r.rhs.value, r.residual);
            }
        }
    }

    #[test]
    fn st_series_values() {
        let c = ctrl().with_max_terms(2);
        let (s, _) = st_series(3.0, &c.with_tail_order(0)).unwrap();
        assert!((s.value - LN_2 / 125.0).abs() < 1e-18);
        let mut direct = CompSum::new();
        for n in 2..=1_000_000u64 {
            let x = n as f64;
            direct.add(x.ln() / (2.0 * x + 1.0).powi(4));
        }
        let (s4, _) = st_series(4.0, &ctrl()).unwrap();
        assert!((s4.value - direct.value()).abs() < 1e-10);
        assert!(s4.converged);
    }

    #[test]
    fn domain_and_poles() {
        assert!(ci_sum_closed(7.0, CaseId::P2, &ctrl()).is_err());
        assert!(ci_sum_oracle(0.0, CaseId::P2, &ctrl()).is_err());
        assert!(matches!(ci_sum_closed(1.0, CaseId::RealA(3.0), &ctrl()), Err(Error::Pole(_))));
        assert!(matches!(ci_sum_closed(1.0, CaseId::Odd(2.0), &ctrl()), Err(Error::Pole(_))));
        assert!(matches!(ci_sum_closed(1.0, CaseId::RealA(0.5), &ctrl()), Err(Error::Domain(_))));
        assert!(CaseId::PowerZ(1.5).validate().is_err());
        assert_eq!("odd(a=2.5)".parse::<CaseId>().unwrap(), CaseId::Odd(2.5));
        assert_eq!("even2k-alt(k=3)".parse::<CaseId>().unwrap(), CaseId::Even2kAlt(3));
        assert_eq!(CaseId::PowerZ(-0.5).to_string(), "power-z(z=-0.5)");
    }
}
