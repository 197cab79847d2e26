//! Polygamma functions `ψ^{(j)}(a)` through binomial-difference, single
//! and double integral representations, together with harmonic and
//! generalized harmonic numbers and their cosine-integral and sawtooth
//! (Euler–Maclaurin) forms.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::digamma::{
    binomial_row, finite_difference, kernel_g, minus_two_g_expansion, node_ln, one_minus_exp,
    psi_ref, resummed_remainder, square_kernel, K_STABLE,
};
use crate::error::{domain, require_positive, Result};
use crate::numkernel::{
    bernoulli_number, ci_si_half_pi, hurwitz, quad_de_nodes, quad_de_square, CompSum, Ctrl,
    EvalResult, EULER_GAMMA,
};

/// Number of unit intervals integrated explicitly in [`gen_harmonic_em`].
pub const EM_INTERVALS: u64 = 200;

/// Selects the representation used by [`polygamma_rep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RepPolygamma {
    /// Series of binomial differences of `(ℓ + a)^{−j}`.
    BinomialPow,
    /// `∫₀¹ u^{a−1} (1/(u−1) − 1/ln u) ln^j u du` plus the leading term.
    UIntegralLogJ,
    /// Unit-square integral with `ln^{j−1}(xy)` plus the leading term.
    DoubleIntegralLogJ,
}

impl RepPolygamma {
    pub const ALL: [RepPolygamma; 3] = [
        RepPolygamma::BinomialPow,
        RepPolygamma::UIntegralLogJ,
        RepPolygamma::DoubleIntegralLogJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepPolygamma::BinomialPow => "binomial-pow",
            RepPolygamma::UIntegralLogJ => "u-integral-logj",
            RepPolygamma::DoubleIntegralLogJ => "double-integral-logj",
        }
    }

    pub fn default_ctrl(self) -> Ctrl {
        let base = Ctrl::default();
        match self {
            RepPolygamma::BinomialPow => base.with_max_terms(25),
            RepPolygamma::UIntegralLogJ => base,
            RepPolygamma::DoubleIntegralLogJ => base.with_tol(1e-10),
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            RepPolygamma::BinomialPow => 1e-8,
            RepPolygamma::UIntegralLogJ => 1e-9,
            RepPolygamma::DoubleIntegralLogJ => 1e-7,
        }
    }
}

impl fmt::Display for RepPolygamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepPolygamma {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        RepPolygamma::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| domain(format!("unknown polygamma representation '{s}'")))
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn sign(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_order(j: u32) -> Result<()> {
    if j == 0 {
        return Err(domain("polygamma order j must be at least 1"));
    }
    if j > 60 {
        return Err(domain(format!("polygamma order {j} exceeds the supported range")));
    }
    Ok(())
}

/// Reference polygamma `ψ^{(j)}(a) = (−1)^{j+1} j! ζ(j+1, a)`.
pub fn polygamma_ref(j: u32, a: f64) -> Result<f64> {
    check_order(j)?;
    require_positive("a", a)?;
    Ok(sign(j + 1) * factorial(j) * hurwitz(f64::from(j + 1), a)?)
}

/// `(−1)^{j−1} (j−1)!/a^j`, the term shared by all representations.
fn leading(j: u32, a: f64) -> f64 {
    sign(j - 1) * factorial(j - 1) / a.powi(j as i32)
}

/// Evaluates `ψ^{(j)}(a)` strictly through the selected representation.
pub fn polygamma_rep(j: u32, a: f64, rep: RepPolygamma, ctrl: &Ctrl) -> Result<EvalResult> {
    check_order(j)?;
    require_positive("a", a)?;
    ctrl.validate()?;
    match rep {
        RepPolygamma::BinomialPow => binomial_pow(j, a, ctrl),
        RepPolygamma::UIntegralLogJ => u_integral_logj(j, a, ctrl),
        RepPolygamma::DoubleIntegralLogJ => double_integral_logj(j, a, ctrl),
    }
}

/// `E_k = Σ_ℓ (−1)^ℓ C(k,ℓ) (ℓ+a)^{−j}` as `(1/Γ(j)) ∫₀^∞ s^{j−1} e^{−as} (1−e^{−s})^k ds`.
fn delta_pow_integral(j: u32, a: f64, k: usize, ctrl: &Ctrl) -> Result<EvalResult> {
    let jm1 = f64::from(j - 1);
    let r = quad_de_nodes(
        |n| {
            let s = n.x;
            let (_, lw) = one_minus_exp(s);
            let lg = -a * s + k as f64 * lw + jm1 * s.ln();
            if lg < -745.0 {
                0.0
            } else {
                lg.exp()
            }
        },
        0.0,
        f64::INFINITY,
        ctrl,
    )?;
    Ok(r.affine(1.0 / factorial(j - 1), 0.0))
}

fn delta_pow(j: u32, a: f64, k: usize, ctrl: &Ctrl) -> Result<(f64, f64, u64)> {
    if k <= K_STABLE {
        let v = finite_difference(k, a, |x| x.powi(-(j as i32)));
        let mass: f64 = binomial_row(k).iter().sum::<f64>() * a.powi(-(j as i32));
        Ok((v, 4.0 * f64::EPSILON * mass, 0))
    } else {
        let r = delta_pow_integral(j, a, k, ctrl)?;
        Ok((r.value, r.err_est, r.nodes_used))
    }
}

/// `Σ_{k>K} E_k/(k+1) = (1/Γ(j)) ∫₀^∞ s^{j−1} e^{−as} R_K(1−e^{−s}) ds`.
fn binomial_pow_remainder(j: u32, a: f64, k: usize, ctrl: &Ctrl) -> Result<EvalResult> {
    let jm1 = f64::from(j - 1);
    let r = quad_de_nodes(
        |n| {
            let s = n.x;
            let lg = -a * s + jm1 * s.ln();
            if lg < -745.0 {
                return 0.0;
            }
            let (w, _) = one_minus_exp(s);
            lg.exp() * resummed_remainder(w, s, k)
        },
        0.0,
        f64::INFINITY,
        ctrl,
    )?;
    Ok(r.affine(1.0 / factorial(j - 1), 0.0))
}

fn binomial_pow(j: u32, a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let k_max = ctrl.max_terms;
    let mut s = CompSum::new();
    let mut err = 0.0;
    let mut nodes = 0;
    for k in 1..=k_max {
        let (d, e, n) = delta_pow(j, a, k, ctrl)?;
        s.add(d / (k + 1) as f64);
        err += e / (k + 1) as f64;
        nodes += n;
    }
    let rem = binomial_pow_remainder(j, a, k_max, ctrl)?;
    let scale = sign(j - 1) * factorial(j - 1);
    let mut series = s.value();
    if ctrl.tail_order > 0 {
        series += rem.value;
        err += rem.err_est;
    } else {
        err += rem.value.abs();
    }
    let value = leading(j, a) + scale * series;
    Ok(EvalResult::with_estimate(value, scale.abs() * err, ctrl.target_tol)
        .terms(k_max as u64)
        .nodes(nodes + rem.nodes_used))
}

fn u_integral_logj(j: u32, a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let r = quad_de_nodes(
        |n| {
            let l = node_ln(&n);
            ((a - 1.0) * l).exp() * kernel_g(&n) * l.powi(j as i32)
        },
        0.0,
        1.0,
        ctrl,
    )?;
    Ok(r.affine(1.0, leading(j, a)))
}

fn double_integral_logj(j: u32, a: f64, ctrl: &Ctrl) -> Result<EvalResult> {
    let r = quad_de_square(|x, y| square_kernel(&x, &y, a, j as i32 - 1), ctrl)?;
    Ok(r.affine(1.0, leading(j, a)))
}

/// Harmonic number `H_n = ψ(n+1) + γ`.
pub fn harmonic(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(domain("harmonic numbers need n ≥ 1"));
    }
    Ok(psi_ref(n as f64 + 1.0)? + EULER_GAMMA)
}

/// Generalized harmonic number `H_n^{(r)}` from the polygamma difference
/// `(−1)^{r−1}/(r−1)! [ψ^{(r−1)}(n+1) − ψ^{(r−1)}(1)]`.
pub fn gen_harmonic(n: u64, r: u32) -> Result<f64> {
    if n == 0 {
        return Err(domain("harmonic numbers need n ≥ 1"));
    }
    if r < 2 {
        return Err(domain(format!("generalized harmonic numbers need r ≥ 2, got {r}")));
    }
    let d = polygamma_ref(r - 1, n as f64 + 1.0)? - polygamma_ref(r - 1, 1.0)?;
    Ok(sign(r - 1) / factorial(r - 1) * d)
}

/// `H_n = ln n + γ + 1/(2n) + 2 Σ_{j≤J} Ci(2πnj)` with the asymptotic tail
/// of the cosine-integral series added when `J ≥ 1`.
pub fn harmonic_ci(n: u64, j_max: u64, ctrl: &Ctrl) -> Result<EvalResult> {
    if n == 0 {
        return Err(domain("harmonic numbers need n ≥ 1"));
    }
    ctrl.validate()?;
    let nf = n as f64;
    let mut s = CompSum::new();
    s.add(nf.ln());
    s.add(EULER_GAMMA);
    s.add(0.5 / nf);
    if j_max == 0 {
        return Ok(EvalResult::exact(s.value()));
    }
    for j in 1..=j_max {
        s.add(2.0 * ci_si_half_pi(4 * n * j)?.ci);
    }
    let expansion = minus_two_g_expansion(2.0 * PI * nf);
    s.add(expansion.tail(j_max + 1, 0.0, false, ctrl.tail_order)?);
    let err = expansion.next_term(j_max + 1, 0.0, ctrl.tail_order) + 8.0 * f64::EPSILON * s.abs_total();
    Ok(EvalResult::with_estimate(s.value(), err, ctrl.target_tol).terms(j_max))
}

/// `H_n^{(r)} = ζ(r) + 1/(2n^r) − n^{1−r}/(r−1) + r ∫_n^∞ P₁(x) x^{−r−1} dx`.
///
/// The sawtooth integral is taken one unit interval at a time over
/// [`EM_INTERVALS`] intervals; the remainder beyond `N = n + EM_INTERVALS`
/// uses `∫_N^∞ P₁ g = −Σ_k B_{2k}/(2k)! g^{(2k−2)}(N)` with `tail_order` terms.
pub fn gen_harmonic_em(n: u64, r: u32, ctrl: &Ctrl) -> Result<EvalResult> {
    if n == 0 {
        return Err(domain("harmonic numbers need n ≥ 1"));
    }
    if r < 2 {
        return Err(domain(format!("generalized harmonic numbers need r ≥ 2, got {r}")));
    }
    ctrl.validate()?;
    let rf = f64::from(r);
    let nf = n as f64;
    let mut integral = CompSum::new();
    let mut err = 0.0;
    let mut nodes = 0;
    for m in n..n + EM_INTERVALS {
        let mf = m as f64;
        let piece = quad_de_nodes(
            |node| (node.from_lo - 0.5) * (mf + node.from_lo).powf(-rf - 1.0),
            0.0,
            1.0,
            ctrl,
        )?;
        integral.add(piece.value);
        err += piece.err_est;
        nodes += piece.nodes_used;
    }
    // Derivatives g^{(2k−2)}(N) of g(x) = x^{−r−1}.
    let big_n = (n + EM_INTERVALS) as f64;
    let order = ctrl.tail_order as usize;
    let mut deriv = big_n.powf(-rf - 1.0);
    let mut fact = 2.0;
    let mut next = 0.0;
    for k in 1..=order + 1 {
        let term = -bernoulli_number(2 * k)? / fact * deriv;
        if k == order + 1 {
            next = term.abs();
        } else {
            integral.add(term);
        }
        let p = rf + 2.0 * k as f64 - 1.0;
        deriv *= p * (p + 1.0) / (big_n * big_n);
        let kk = 2.0 * k as f64;
        fact *= (kk + 1.0) * (kk + 2.0);
    }
    let mut s = CompSum::new();
    s.add(hurwitz(rf, 1.0)?);
    s.add(0.5 * nf.powf(-rf));
    s.add(-nf.powf(1.0 - rf) / (rf - 1.0));
    s.add(rf * integral.value());
    let err = rf * (err + next) + 8.0 * f64::EPSILON * s.abs_total();
    Ok(EvalResult::with_estimate(s.value(), err, ctrl.target_tol)
        .terms(EM_INTERVALS)
        .nodes(nodes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let z2 = PI * PI / 6.0;
        assert!((polygamma_ref(1, 1.0).unwrap() - z2).abs() < 1e-15);
        assert!((polygamma_ref(1, 0.5).unwrap() - PI * PI / 2.0).abs() < 1e-14);
        assert!((polygamma_ref(1, 2.0).unwrap() - (z2 - 1.0)).abs() < 1e-15);
        let z3 = 1.202_056_903_159_594_3;
        assert!((polygamma_ref(2, 1.0).unwrap() + 2.0 * z3).abs() < 1e-14);
        assert!(polygamma_ref(0, 1.0).is_err());
        assert!(polygamma_ref(1, 0.0).is_err());
    }

    #[test]
    fn representations_at_one() {
        let z3 = 1.202_056_903_159_594_3;
        for rep in RepPolygamma::ALL {
            let c = rep.default_ctrl();
            let v = polygamma_rep(2, 1.0, rep, &c).unwrap();
            assert!((v.value + 2.0 * z3).abs() < rep.tolerance(), "{rep}: {v:?}");
        }
    }

    #[test]
    fn raw_binomial_series_is_monotone_in_k() {
        let exact = polygamma_ref(1, 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for k in [5usize, 10, 20, 25] {
            let c = Ctrl::default().with_max_terms(k).with_tail_order(0);
            let v = polygamma_rep(1, 1.0, RepPolygamma::BinomialPow, &c).unwrap();
            let e = (v.value - exact).abs();
            assert!(e < prev, "k={k}");
            assert!(e <= v.err_est * 1.000_001);
            prev = e;
        }
    }

    #[test]
    fn harmonic_small_cases() {
        assert!((harmonic(4).unwrap() - 25.0 / 12.0).abs() < 1e-14);
        assert!((gen_harmonic(2, 2).unwrap() - 1.25).abs() < 1e-14);
        assert!((gen_harmonic(1, 3).unwrap() - 1.0).abs() < 1e-15);
        assert!(harmonic(0).is_err());
        assert!(gen_harmonic(3, 1).is_err());
    }

    #[test]
    fn cosine_integral_form() {
        let c = Ctrl::default();
        let h = harmonic_ci(10, 500, &c).unwrap();
        assert!((h.value - 7381.0 / 2520.0).abs() < 1e-6, "{h:?}");
        let lead = harmonic_ci(7, 0, &c).unwrap();
        assert!((lead.value - (7f64.ln() + EULER_GAMMA + 1.0 / 14.0)).abs() < 1e-15);
    }

    #[test]
    fn sawtooth_form() {
        let c = Ctrl::default();
        assert!((gen_harmonic_em(1, 2, &c).unwrap().value - 1.0).abs() < 1e-9);
        assert!((gen_harmonic_em(3, 2, &c).unwrap().value - 49.0 / 36.0).abs() < 1e-9);
        let direct: f64 = (1..=5).map(|k| 1.0 / f64::from(k).powi(3)).sum();
        assert!((gen_harmonic_em(5, 3, &c).unwrap().value - direct).abs() < 1e-9);
    }
}
