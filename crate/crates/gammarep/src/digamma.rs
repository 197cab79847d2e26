//! The digamma function `ψ(a) = −γ₀(a)` through each of its series,
//! integral and Fourier representations, plus Gauss's rational-argument
//! formula, half-integer values, the product form of `e^{γ₀(a)}` and the
//! multiplication formula.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, require_positive, Result};
use crate::numkernel::{
    ci_si, quad_de_nodes, quad_de_square, CompSum, Ctrl, EvalResult, InversePowers, Node,
    EULER_GAMMA,
};
use crate::numkernel::BernoulliCache;

/// Index above which binomial finite differences are replaced by their
/// integral form.
pub const K_STABLE: usize = 20;

const ASYMPTOTIC_START: f64 = 16.0;

/// Selects the representation used by [`psi_rep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RepDigamma {
    /// `Σ_{k≤N} [1/(k+a) − ln(1 + 1/(k+a))] − ln a`, the defining limit.
    LimitSum,
    /// Series of binomial finite differences of `ln(ℓ + a)`.
    BinomialLog,
    /// `ln a + ∫₀¹ u^{a−1} (1/(u−1) − 1/ln u) du`.
    UIntegral,
    /// Double integral over the unit square.
    DoubleIntegral,
    /// Integral of a series of inverse binomial coefficients.
    InvBinomSeries,
    /// `ln a − ∫₀^∞ e^{−at} (1/(1−e^{−t}) − 1/t) dt`.
    ExpIntegral,
    /// Fourier series in `Ci(2πja)` and `Si(2πja)`.
    FourierCiSi,
}

impl RepDigamma {
    pub const ALL: [RepDigamma; 7] = [
        RepDigamma::LimitSum,
        RepDigamma::BinomialLog,
        RepDigamma::UIntegral,
        RepDigamma::DoubleIntegral,
        RepDigamma::InvBinomSeries,
        RepDigamma::ExpIntegral,
        RepDigamma::FourierCiSi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepDigamma::LimitSum => "limit-sum",
            RepDigamma::BinomialLog => "binomial-log",
            RepDigamma::UIntegral => "u-integral",
            RepDigamma::DoubleIntegral => "double-integral",
            RepDigamma::InvBinomSeries => "inv-binom-series",
            RepDigamma::ExpIntegral => "exp-integral",
            RepDigamma::FourierCiSi => "fourier-ci-si",
        }
    }

    /// Control block suited to the representation's convergence behaviour.
    pub fn default_ctrl(self) -> Ctrl {
        let base = Ctrl::default();
        match self {
            RepDigamma::LimitSum => base.with_max_terms(100_000).with_tail_order(0),
            RepDigamma::BinomialLog => base.with_max_terms(25).with_tail_order(0),
            RepDigamma::InvBinomSeries => base.with_max_terms(50),
            RepDigamma::DoubleIntegral => base.with_tol(1e-10),
            RepDigamma::FourierCiSi => base.with_max_terms(2000),
            RepDigamma::UIntegral | RepDigamma::ExpIntegral => base,
        }
    }

    /// Accuracy the representation is expected to reach with its default control.
    pub fn tolerance(self) -> f64 {
        match self {
            RepDigamma::LimitSum => 1e-2,
            RepDigamma::BinomialLog => 1e-3,
            RepDigamma::DoubleIntegral | RepDigamma::InvBinomSeries => 1e-7,
            RepDigamma::FourierCiSi => 1e-6,
            RepDigamma::UIntegral | RepDigamma::ExpIntegral => 1e-8,
        }
    }
}

impl fmt::Display for RepDigamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepDigamma {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        RepDigamma::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| domain(format!("unknown digamma representation '{s}'")))
    }
}

/// Reduced fraction `p/q` with `0 < p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RationalArg {
    p: u64,
    q: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalArg {
    /// Accepts only an already reduced fraction strictly between 0 and 1.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || p >= q {
            return Err(domain(format!("rational argument needs 0 < p < q, got {p}/{q}")));
        }
        if gcd(p, q) != 1 {
            return Err(domain(format!("rational argument {p}/{q} is not reduced")));
        }
        Ok(RationalArg { p, q })
    }

    /// Reduces `p/q` first; fails unless `0 < p < q`.
    pub fn reduced(p: u64, q: u64) -> Result<Self> {
        if p == 0 || p >= q {
            return Err(domain(format!("rational argument needs 0 < p < q, got {p}/{q}")));
        }
        let g = gcd(p, q);
        RationalArg::new(p / g, q / g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Reference digamma: upward recurrence to `a + m ≥ 16`, then the
/// Bernoulli asymptotic series with eight terms.
pub fn psi_ref(a: f64) -> Result<f64> {
    require_positive("a", a)?;
    let mut shift = CompSum::new();
    let mut z = a;
    while z < ASYMPTOTIC_START {
        shift.add(-1.0 / z);
        z += 1.0;
    }
    let b = BernoulliCache::global().as_slice();
    let inv2 = 1.0 / (z * z);
    let mut p = inv2;
    let mut tail = 0.0;
    for k in 1..=8 {
        tail += b[2 * k] / (2 * k) as f64 * p;
        p *= inv2;
    }
    shift.add(z.ln());
    shift.add(-0.5 / z);
    shift.add(-tail);
    Ok(shift.value())
}

/// `ψ(z) − ln z + 1/(2z) + Σ_{k<from} B_{2k}/(2k z^{2k})`, the Bernoulli
/// remainder after `from − 1` terms, evaluated without cancellation for
/// `z ≥ 16` and via [`psi_ref`] below.
pub fn psi_asymptotic_remainder(z: f64, from: usize) -> Result<f64> {
    require_positive("z", z)?;
    let b = BernoulliCache::global().as_slice();
    if z >= ASYMPTOTIC_START {
        let inv2 = 1.0 / (z * z);
        let mut p = inv2.powi(from as i32);
        let mut acc = 0.0;
        for k in from..from + 12 {
            acc -= b[2 * k] / (2 * k) as f64 * p;
            p *= inv2;
        }
        return Ok(acc);
    }
    let mut s = CompSum::new();
    s.add(psi_ref(z)?);
    s.add(-z.ln());
    s.add(0.5 / z);
    let inv2 = 1.0 / (z * z);
    let mut p = inv2;
    for k in 1..from {
        s.add(b[2 * k] / (2 * k) as f64 * p);
        p *= inv2;
    }
    Ok(s.value())
}

/// Evaluates `ψ(a)` strictly through the selected representation.
pub fn psi_rep(a: f64, rep: RepDigamma, ctrl: &Ctrl) -> Result<EvalResult> {
    require_positive("a", a)?;
    ctrl.validate()?;
    match rep {
        RepDigamma::LimitSum => limit_sum(a, ctrl),
        RepDigamma::BinomialLog => binomial_log(a, ctrl),
        RepDigamma::UIntegral => u_integral(a, ctrl),
        RepDigamma::DoubleIntegral => double_integral(a, ctrl),
        RepDigamma::InvBinomSeries => inv_binom_series(a, ctrl),
        RepDigamma::ExpIntegral => exp_integral(a, ctrl),
        RepDigamma::FourierCiSi => fourier_ci_si(a, ctrl),
    }
}

fn limit_sum(a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let n = ctrl.max_terms;
    let mut s = CompSum::new();
    for k in 0..=n {
        let x = k as f64 + a;
        s.add(1.0 / x);
        s.add(-(1.0 / x).ln_1p());
    }
    s.add(-a.ln());
    let err = 0.5 / (n as f64 + 1.0 + a) + 4.0 * f64::EPSILON * s.abs_total();
    Ok(EvalResult::with_estimate(-s.value(), err, ctrl.target_tol).terms(n as u64 + 1))
}

/// Natural log of `u ∈ (0, 1)` from a quadrature node on `(0, 1)`.
pub(crate) fn node_ln(n: &Node) -> f64 {
    if n.x < 0.5 {
        n.from_lo.ln()
    } else {
        (-n.to_hi).ln_1p()
    }
}

/// `1/(u−1) − 1/ln u` with the removable point at `u = 1` expanded.
pub(crate) fn kernel_g(n: &Node) -> f64 {
    let e = -n.to_hi;
    if n.to_hi < 2e-3 {
        -0.5 + e * (1.0 / 12.0 + e * (-1.0 / 24.0 + e * (19.0 / 720.0 + e * (-3.0 / 160.0 + e * 863.0 / 60480.0))))
    } else {
        1.0 / e - 1.0 / node_ln(n)
    }
}

/// `(g(u) + 1/2)/ln u` with the removable point at `u = 1` expanded.
pub(crate) fn kernel_g_half_over_ln(n: &Node) -> f64 {
    let e = -n.to_hi;
    if n.to_hi < 2e-3 {
        1.0 / 12.0 + e * e * (-1.0 / 720.0 + e * (1.0 / 720.0 + e * (-5.0 / 4032.0 + e * 11.0 / 10080.0)))
    } else {
        (kernel_g(n) + 0.5) / node_ln(n)
    }
}

fn u_integral(a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let r = quad_de_nodes(
        |n| {
            let l = node_ln(&n);
            ((a - 1.0) * l).exp() * kernel_g(&n)
        },
        0.0,
        1.0,
        ctrl,
    )?;
    Ok(r.affine(1.0, a.ln()))
}

/// Integrand of the unit-square representation, shared with the polygamma
/// module: `(xy)^{a−1} (1−x) ln^{p}(xy) / (1−xy)`, with `p = −1` here.
pub(crate) fn square_kernel(x: &Node, y: &Node, a: f64, log_power: i32) -> f64 {
    let l = node_ln(x) + node_ln(y);
    let expo = (a - 1.0) * l;
    if expo > 700.0 {
        // Only reachable when both abscissae are within ~1e-300 of 0, where the
        // quadrature weights make the contribution vanish.
        return 0.0;
    }
    let one_minus_xy = x.to_hi + x.x * y.to_hi;
    expo.exp() * x.to_hi / one_minus_xy * l.powi(log_power)
}

fn double_integral(a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let r = quad_de_square(|x, y| square_kernel(&x, &y, a, -1), ctrl)?;
    Ok(r.affine(1.0, a.ln()))
}

/// `1/(1−e^{−t}) − 1/t`.
fn exp_bracket(t: f64) -> f64 {
    if t < 0.05 {
        let t2 = t * t;
        0.5 + t * (1.0 / 12.0 + t2 * (-1.0 / 720.0 + t2 * (1.0 / 30240.0 - t2 / 1_209_600.0)))
    } else {
        -1.0 / (-t).exp_m1() - 1.0 / t
    }
}

fn exp_integral(a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let r = quad_de_nodes(
        |n| {
            let t = n.x;
            let e = (-a * t).exp();
            if e == 0.0 {
                0.0
            } else {
                e * exp_bracket(t)
            }
        },
        0.0,
        f64::INFINITY,
        ctrl,
    )?;
    Ok(r.affine(-1.0, a.ln()))
}

/// Binomial coefficients `C(k, ℓ)` for `ℓ = 0..=k`, exact in `f64` for `k ≤ 50`.
pub(crate) fn binomial_row(k: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(k + 1);
    let mut c = 1.0f64;
    for l in 0..=k {
        row.push(c);
        c = c * (k - l) as f64 / (l + 1) as f64;
    }
    row
}

/// `Σ_ℓ (−1)^ℓ C(k, ℓ) f(ℓ + a)` by compensated summation.
pub(crate) fn finite_difference<F: Fn(f64) -> f64>(k: usize, a: f64, f: F) -> f64 {
    let row = binomial_row(k);
    let mut s = CompSum::new();
    for (l, c) in row.iter().enumerate() {
        let v = c * f(l as f64 + a);
        s.add(if l % 2 == 0 { v } else { -v });
    }
    s.value()
}

/// `1 − e^{−s}` and `ln(1 − e^{−s})` without cancellation.
pub(crate) fn one_minus_exp(s: f64) -> (f64, f64) {
    let w = -(-s).exp_m1();
    let lw = if s > 1.0 { (-(-s).exp()).ln_1p() } else { w.ln() };
    (w, lw)
}

/// `R_K(w) = Σ_{m ≥ K+2} w^{m−1}/m`, given also `s = −ln(1−w)`.
pub(crate) fn resummed_remainder(w: f64, s: f64, k: usize) -> f64 {
    let start = k + 2;
    if w < 0.9 {
        let mut p = w.powi(start as i32 - 1);
        let mut acc = 0.0;
        let mut m = start;
        loop {
            let t = p / m as f64;
            acc += t;
            if t < 1e-18 * acc || p == 0.0 {
                break;
            }
            p *= w;
            m += 1;
        }
        acc
    } else {
        let mut partial = CompSum::new();
        let mut p = 1.0;
        for m in 1..start {
            p *= w;
            partial.add(p / m as f64);
        }
        partial.add(-s);
        -partial.value() / w
    }
}

/// Stable form of `Δ_k = Σ_ℓ (−1)^ℓ C(k,ℓ) ln(ℓ+a)`:
/// `−∫₀^∞ e^{−as} (1−e^{−s})^k / s ds`.
fn delta_log_integral(a: f64, k: usize, ctrl: &Ctrl) -> Result<EvalResult> {
    let r = quad_de_nodes(
        |n| {
            let s = n.x;
            let (_, lw) = one_minus_exp(s);
            let lg = -a * s + k as f64 * lw;
            if lg < -745.0 {
                0.0
            } else {
                lg.exp() / s
            }
        },
        0.0,
        f64::INFINITY,
        ctrl,
    )?;
    Ok(r.affine(-1.0, 0.0))
}

/// `Δ_k` for the binomial-log series, switching to the integral form above
/// [`K_STABLE`].
pub(crate) fn delta_log(a: f64, k: usize, ctrl: &Ctrl) -> Result<(f64, f64, u64)> {
    if k <= K_STABLE {
        let v = finite_difference(k, a, f64::ln);
        let mass: f64 = binomial_row(k).iter().sum::<f64>() * (k as f64 + a).ln().abs().max(1.0);
        Ok((v, 4.0 * f64::EPSILON * mass, 0))
    } else {
        let r = delta_log_integral(a, k, ctrl)?;
        Ok((r.value, r.err_est, r.nodes_used))
    }
}

/// Exact remainder `Σ_{k>K} Δ_k/(k+1) = −∫₀^∞ e^{−as} R_K(1−e^{−s})/s ds`.
fn binomial_log_remainder(a: f64, k: usize, ctrl: &Ctrl) -> Result<EvalResult> {
    let r = quad_de_nodes(
        |n| {
            let s = n.x;
            let e = (-a * s).exp();
            if e == 0.0 {
                return 0.0;
            }
            let (w, _) = one_minus_exp(s);
            e * resummed_remainder(w, s, k) / s
        },
        0.0,
        f64::INFINITY,
        ctrl,
    )?;
    Ok(r.affine(-1.0, 0.0))
}

/// Partial sum `Σ_{k≤K} Δ_k/(k+1)` with its accumulated error and node count.
pub(crate) fn binomial_log_partial(a: f64, k_max: usize, ctrl: &Ctrl) -> Result<(f64, f64, u64, f64)> {
    let mut s = CompSum::new();
    let mut err = 0.0;
    let mut nodes = 0;
    let mut last = 0.0;
    for k in 1..=k_max {
        let (d, e, n) = delta_log(a, k, ctrl)?;
        last = d / (k + 1) as f64;
        s.add(last);
        err += e / (k + 1) as f64;
        nodes += n;
    }
    Ok((s.value(), err, nodes, last))
}

fn binomial_log(a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let k = ctrl.max_terms;
    let (partial, err, nodes, _) = binomial_log_partial(a, k, ctrl)?;
    let rem = binomial_log_remainder(a, k, ctrl)?;
    let (value, err) = if ctrl.tail_order > 0 {
        (a.ln() + partial + rem.value, err + rem.err_est)
    } else {
        (a.ln() + partial, err + rem.value.abs())
    };
    Ok(EvalResult::with_estimate(value, err, ctrl.target_tol)
        .terms(k as u64)
        .nodes(nodes + rem.nodes_used))
}

/// Inner k-series of the inverse-binomial representation at `x = t + a`:
/// `Σ_{k=2}^K (k−1)!/(k (x)_k)` and its exact remainder
/// `Σ_{j≥0} B(K+1, x+j)/(x+j)` with `B(N, y) = (N−1)!/(y)_N`.
pub(crate) fn inv_binom_inner(x: f64, k_max: usize) -> (f64, f64) {
    let mut r = 1.0 / x; // (k−1)!/(x)_k at k = 1
    let mut s = 0.0;
    for k in 2..=k_max {
        r *= (k - 1) as f64 / (x + (k - 1) as f64);
        s += r / k as f64;
    }
    // B(K+1, x) = K!/(x)_{K+1}
    let n = (k_max + 1) as f64;
    let mut b = r * k_max as f64 / (x + k_max as f64);
    let mut y = x;
    let mut tail = 0.0;
    for _ in 0..200_000 {
        let t = b / y;
        tail += t;
        if t <= 1e-17 * tail || b == 0.0 {
            break;
        }
        b *= y / (y + n);
        y += 1.0;
    }
    (s, tail)
}

fn inv_binom_series(a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let k = ctrl.max_terms.max(2);
    let main = quad_de_nodes(|n| inv_binom_inner(n.x, k).0, a, f64::INFINITY, ctrl)?;
    let tail = quad_de_nodes(|n| inv_binom_inner(n.x, k).1, a, f64::INFINITY, ctrl)?;
    let (value, err) = if ctrl.tail_order > 0 {
        (a.ln() - main.value - tail.value, main.err_est + tail.err_est)
    } else {
        (a.ln() - main.value, main.err_est + tail.value.abs())
    };
    Ok(EvalResult::with_estimate(value, err, ctrl.target_tol)
        .terms(k as u64)
        .nodes(main.nodes_used + tail.nodes_used))
}

/// Expansion of `−2g(cj)` in powers of `1/j`, where `g` is the auxiliary
/// cosine-integral function: coefficients `−2(−1)^{m−1}(2m−1)!/c^{2m}`.
pub(crate) fn minus_two_g_expansion(c: f64) -> InversePowers {
    let mut terms = Vec::new();
    let mut fact = 1.0; // (2m−1)!
    for m in 1..=4u32 {
        let p = 2 * m;
        if m > 1 {
            fact *= f64::from((p - 2) * (p - 1));
        }
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        terms.push((f64::from(p), -2.0 * sign * fact / c.powi(p as i32)));
    }
    InversePowers::new(terms)
}

/// The `j`-th summand `2cos(x)Ci(x) − sin(x)(π − 2Si(x))` at `x = 2πja`.
pub fn fourier_term(a: f64, j: u64) -> Result<f64> {
    let x = 2.0 * PI * j as f64 * a;
    let cs = ci_si(x)?;
    let (s, c) = x.sin_cos();
    Ok(2.0 * c * cs.ci - s * (PI - 2.0 * cs.si))
}

fn fourier_ci_si(a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let j_max = ctrl.max_terms as u64;
    let mut s = CompSum::new();
    s.add(a.ln());
    s.add(-0.5 / a);
    for j in 1..=j_max {
        s.add(fourier_term(a, j)?);
    }
    let expansion = minus_two_g_expansion(2.0 * PI * a);
    let tail = expansion.tail(j_max + 1, 0.0, false, ctrl.tail_order)?;
    s.add(tail);
    let err = expansion.next_term(j_max + 1, 0.0, ctrl.tail_order) + 8.0 * f64::EPSILON * s.abs_total();
    Ok(EvalResult::with_estimate(s.value(), err, ctrl.target_tol).terms(j_max))
}

/// Gauss's formula for `ψ(p/q)`.
pub fn psi_rational(r: RationalArg) -> f64 {
    let (p, q) = (r.p as f64, r.q as f64);
    let mut s = CompSum::new();
    s.add(-EULER_GAMMA);
    s.add(-0.5 * PI / (PI * p / q).tan());
    s.add(-q.ln());
    let half = r.q / 2;
    for n in 1..=half {
        let nf = n as f64;
        // cos(2πnp/q) with the angle reduced modulo q for accuracy.
        let c = (2.0 * PI * ((n * r.p) % r.q) as f64 / q).cos();
        let l = (2.0 * (PI * nf / q).sin()).ln();
        let weight = if r.q % 2 == 0 && n == half { 1.0 } else { 2.0 };
        s.add(weight * c * l);
    }
    s.value()
}

/// `γ₀(n + 1/2) = γ + 2 ln 2 − 2 Σ_{k<n} 1/(2k+1)`.
pub fn gamma0_half_integer(n: u64) -> f64 {
    let mut s = CompSum::new();
    s.add(EULER_GAMMA);
    s.add(2.0 * LN_2);
    for k in 0..n {
        s.add(-2.0 / (2 * k + 1) as f64);
    }
    s.value()
}

/// Partial product `(1/a) Π_{k≤K} Π_ℓ (ℓ+a)^{(−1)^{ℓ+1} C(k,ℓ)/(k+1)}`,
/// evaluated in log space; it converges to `e^{γ₀(a)}`.
pub fn exp_gamma0_product(a: f64, k: usize) -> Result<EvalResult> {
    require_positive("a", a)?;
    if k == 0 {
        return Err(domain("product needs at least one factor"));
    }
    let ctrl = Ctrl::default();
    let (partial, err, nodes, last) = binomial_log_partial(a, k, &ctrl)?;
    let log = -a.ln() - partial;
    let value = log.exp();
    let err_est = value * (last.abs() + err);
    Ok(EvalResult::with_estimate(value, err_est, ctrl.target_tol)
        .terms(k as u64)
        .nodes(nodes))
}

/// `γ₀(ma) − [−ln m + (1/m) Σ_{k<m} γ₀(a + k/m)]` with every `γ₀ = −ψ`
/// taken from the chosen representation.
pub fn multiplication_residual(a: f64, m: u64, rep: RepDigamma, ctrl: &Ctrl) -> Result<f64> {
    require_positive("a", a)?;
    if m == 0 {
        return Err(domain("multiplier m must be at least 1"));
    }
    if m == 1 {
        return Ok(0.0);
    }
    let mf = m as f64;
    let lhs = -psi_rep(mf * a, rep, ctrl)?.value;
    let mut s = CompSum::new();
    for k in 0..m {
        s.add(-psi_rep(a + k as f64 / mf, rep, ctrl)?.value);
    }
    Ok(lhs - (-mf.ln() + s.value() / mf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_special_values() {
        assert!((psi_ref(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((psi_ref(0.5).unwrap() + EULER_GAMMA + 2.0 * LN_2).abs() < 1e-15);
        assert!((psi_ref(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-15);
        assert!(psi_ref(0.0).is_err());
        assert!(psi_ref(-1.0).is_err());
    }

    #[test]
    fn removable_kernels_are_continuous() {
        let at = |d: f64| Node { x: 1.0 - d, from_lo: 1.0 - d, to_hi: d };
        for &d in &[1.999e-3, 2.001e-3] {
            let n = at(d);
            let direct = 1.0 / (-d) - 1.0 / (-d).ln_1p();
            assert!((kernel_g(&n) - direct).abs() < 1e-12);
            let direct_h = (direct + 0.5) / (-d).ln_1p();
            assert!((kernel_g_half_over_ln(&n) - direct_h).abs() < 1e-10);
        }
    }

    #[test]
    fn inner_remainder_matches_long_sum() {
        for &x in &[0.25, 1.0, 3.7] {
            let (_, tail) = inv_binom_inner(x, 10);
            let (long, rest) = inv_binom_inner(x, 4000);
            let (short, _) = inv_binom_inner(x, 10);
            assert!((short + tail - (long + rest)).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn resummed_remainder_branches_agree() {
        for &k in &[5usize, 25] {
            let w = 0.9f64;
            let s = -(1.0 - w).ln();
            let series: f64 = (k + 2..4000).map(|m| w.powi(m as i32 - 1) / m as f64).sum();
            assert!((resummed_remainder(w, s, k) - series).abs() < 1e-13);
            let w = 0.899_999_999;
            assert!((resummed_remainder(w, -(1.0 - w).ln(), k) - series).abs() < 1e-8);
        }
    }

    #[test]
    fn rational_arg_validation() {
        assert!(RationalArg::new(2, 4).is_err());
        assert!(RationalArg::new(0, 4).is_err());
        assert!(RationalArg::new(4, 4).is_err());
        assert_eq!(RationalArg::reduced(2, 4).unwrap(), RationalArg::new(1, 2).unwrap());
    }

    #[test]
    fn fourier_terms_equal_minus_two_g() {
        for &(a, j) in &[(0.25, 3u64), (1.7, 10), (3.0, 1)] {
            let x = 2.0 * PI * j as f64 * a;
            let (_, g) = crate::numkernel::aux_fg(x).unwrap();
            assert!((fourier_term(a, j).unwrap() + 2.0 * g).abs() < 1e-14);
        }
    }

    #[test]
    fn rep_names_round_trip() {
        for r in RepDigamma::ALL {
            assert_eq!(r.name().parse::<RepDigamma>().unwrap(), r);
        }
        assert!("nope".parse::<RepDigamma>().is_err());
    }
}
