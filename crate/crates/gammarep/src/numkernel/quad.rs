//! Double-exponential quadrature.
//!
//! Finite intervals use the tanh-sinh map, semi-infinite ranges the exp-sinh
//! map. Each node carries its exact distance to the finite endpoints so that
//! integrands with endpoint singularities or removable points can be
//! evaluated without cancellation in `x - lo` or `hi - x`.

use std::f64::consts::FRAC_PI_2;

use super::sum::CompSum;
use super::{Ctrl, EvalResult};
use crate::error::{domain, Error, Result};

/// A quadrature abscissa together with its distances to the interval ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    /// `x - lo`, computed without rounding loss near `lo`.
    pub from_lo: f64,
    /// `hi - x`, computed without rounding loss near `hi` (infinite on `[lo, ∞)`).
    pub to_hi: f64,
}

#[derive(Clone, Copy)]
enum Map {
    TanhSinh { lo: f64, hi: f64, half: f64 },
    ExpSinh { lo: f64 },
}

impl Map {
    fn t_max(&self) -> f64 {
        match self {
            // Complement distances reach ~1e-275 at t = 6.
            Map::TanhSinh { .. } => 6.0,
            // Abscissae span roughly [lo + 1e-227, 1e227].
            Map::ExpSinh { .. } => 6.5,
        }
    }

    /// Node and weight at parameter `t`, or `None` when the node collapses.
    fn node(&self, t: f64) -> Option<(Node, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let ds = FRAC_PI_2 * t.cosh();
        match *self {
            Map::TanhSinh { lo, hi, half } => {
                let e = (-2.0 * s.abs()).exp();
                let comp = half * 2.0 * e / (1.0 + e);
                if comp <= 0.0 {
                    return None;
                }
                let w = half * ds * 4.0 * e / ((1.0 + e) * (1.0 + e));
                let far = 2.0 * half - comp;
                let node = if s >= 0.0 {
                    Node {
                        x: hi - comp,
                        from_lo: far,
                        to_hi: comp,
                    }
                } else {
                    Node {
                        x: lo + comp,
                        from_lo: comp,
                        to_hi: far,
                    }
                };
                Some((node, w))
            }
            Map::ExpSinh { lo } => {
                let d = s.exp();
                if d <= 0.0 || !d.is_finite() {
                    return None;
                }
                Some((
                    Node {
                        x: lo + d,
                        from_lo: d,
                        to_hi: f64::INFINITY,
                    },
                    ds * d,
                ))
            }
        }
    }
}

struct Sweep<'a, F> {
    f: &'a mut F,
    map: Map,
    sum: CompSum,
    nodes: u64,
}

impl<F: FnMut(Node) -> f64> Sweep<'_, F> {
    fn eval(&mut self, t: f64) -> Result<Option<f64>> {
        let Some((node, w)) = self.map.node(t) else {
            return Ok(None);
        };
        if w == 0.0 {
            return Ok(Some(0.0));
        }
        let v = (self.f)(node);
        self.nodes += 1;
        if !v.is_finite() {
            return Err(Error::BadIntegrand(node.x));
        }
        let wv = w * v;
        self.sum.add(wv);
        Ok(Some(wv.abs()))
    }
}

/// Integrates `f(node)` over `(lo, hi)`; `hi` may be `f64::INFINITY`.
///
/// The step halves per level; the error estimate is the difference of the
/// last two levels, floored at the rounding level of the node sum.
pub fn quad_de_nodes<F>(mut f: F, lo: f64, hi: f64, ctrl: &Ctrl) -> Result<EvalResult>
where
    F: FnMut(Node) -> f64,
{
    if !lo.is_finite() || hi.is_nan() || hi == f64::NEG_INFINITY {
        return Err(domain(format!("invalid integration range ({lo}, {hi})")));
    }
    if hi <= lo {
        if hi == lo {
            return Ok(EvalResult::exact(0.0));
        }
        return Err(domain(format!("empty integration range ({lo}, {hi})")));
    }
    let map = if hi.is_infinite() {
        Map::ExpSinh { lo }
    } else {
        Map::TanhSinh {
            lo,
            hi,
            half: 0.5 * (hi - lo),
        }
    };
    let t_max = map.t_max();
    let mut sweep = Sweep {
        f: &mut f,
        map,
        sum: CompSum::new(),
        nodes: 0,
    };

    // Level 0 fixes the effective t-range on each side: march outward until the
    // weighted integrand is negligible against the largest contribution seen.
    let mut h = 0.5;
    let mut largest = sweep.eval(0.0)?.unwrap_or(0.0);
    let mut reach = [0.0f64; 2];
    for (side, sign) in [1.0f64, -1.0].into_iter().enumerate() {
        let mut quiet = 0;
        let mut k = 1;
        loop {
            let t = sign * k as f64 * h;
            if t.abs() > t_max {
                break;
            }
            match sweep.eval(t)? {
                None => break,
                Some(m) => {
                    reach[side] = t.abs();
                    largest = largest.max(m);
                    if largest > 0.0 && m <= 1e-20 * largest && t.abs() >= 1.0 {
                        quiet += 1;
                        if quiet >= 2 {
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
            }
            k += 1;
        }
    }

    let mut prev = h * sweep.sum.value();
    let mut diff = f64::INFINITY;
    let mut current = prev;
    for level in 1..ctrl.quad_levels.max(1) {
        h *= 0.5;
        for (side, sign) in [1.0f64, -1.0].into_iter().enumerate() {
            let mut k = 1u64;
            loop {
                let t = k as f64 * h;
                if t > reach[side] {
                    break;
                }
                if sweep.eval(sign * t)?.is_none() {
                    break;
                }
                k += 2;
            }
        }
        current = h * sweep.sum.value();
        diff = (current - prev).abs();
        prev = current;
        let floor = 8.0 * f64::EPSILON * h * sweep.sum.abs_total();
        if level >= 2 && diff <= ctrl.target_tol.max(floor) {
            break;
        }
    }
    let floor = 8.0 * f64::EPSILON * h * sweep.sum.abs_total();
    let err = diff.max(floor);
    let converged = diff <= ctrl.target_tol.max(floor) && err <= ctrl.target_tol;
    Ok(EvalResult {
        value: current,
        err_est: if err.is_finite() { err } else { f64::MAX },
        terms_used: 0,
        nodes_used: sweep.nodes,
        converged,
    })
}

/// Integrates a plain function of `x` over `(lo, hi)`.
///
/// Nodes whose abscissa rounds onto an endpoint are dropped; use
/// [`quad_de_nodes`] when the integrand needs endpoint distances.
pub fn quad_de<F>(mut f: F, lo: f64, hi: f64, ctrl: &Ctrl) -> Result<EvalResult>
where
    F: FnMut(f64) -> f64,
{
    quad_de_nodes(
        |n| {
            if n.x > lo && n.x < hi {
                f(n.x)
            } else {
                0.0
            }
        },
        lo,
        hi,
        ctrl,
    )
}

/// Tensor-product rule over the unit square, `f(x_node, y_node)`.
///
/// The inner integral (over `x`) runs at a tenth of the outer tolerance; the
/// reported error adds the worst inner error to the outer level difference.
pub fn quad_de_square<F>(mut f: F, ctrl: &Ctrl) -> Result<EvalResult>
where
    F: FnMut(Node, Node) -> f64,
{
    let inner_ctrl = ctrl.with_tol((ctrl.target_tol * 0.1).max(1e-300));
    let mut inner_err_total: f64 = 0.0;
    let mut inner_abs_total: f64 = 0.0;
    let mut inner_nodes = 0u64;
    let mut failure: Option<Error> = None;
    let outer = quad_de_nodes(
        |ny| {
            if failure.is_some() {
                return 0.0;
            }
            match quad_de_nodes(|nx| f(nx, ny), 0.0, 1.0, &inner_ctrl) {
                Ok(r) => {
                    // Inner values grow without bound near integrable edge
                    // singularities, so their errors are tracked relative to size.
                    inner_err_total += r.err_est;
                    inner_abs_total += r.value.abs();
                    inner_nodes += r.nodes_used;
                    r.value
                }
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        0.0,
        1.0,
        ctrl,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let inner_rel = if inner_err_total == 0.0 { 0.0 } else { inner_err_total / inner_abs_total };
    let err = outer.err_est + inner_rel * outer.value.abs();
    Ok(EvalResult {
        value: outer.value,
        err_est: err,
        terms_used: 0,
        nodes_used: inner_nodes,
        converged: outer.converged && err <= ctrl.target_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctrl() -> Ctrl {
        Ctrl::default()
    }

    #[test]
    fn constant_integrand() {
        let r = quad_de(|_| 1.0, 0.0, 1.0, &ctrl()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14, "{r:?}");
        assert!(r.converged);
    }

    #[test]
    fn log_kernel_gives_log() {
        // ∫₀¹ (u^{a-1} - 1)/ln u du = ln a
        for &a in &[0.5f64, 3.0, 7.5] {
            let r = quad_de_nodes(
                |n| {
                    let l = if n.x < 0.5 { n.from_lo.ln() } else { (-n.to_hi).ln_1p() };
                    ((a - 1.0) * l).exp_m1() / l
                },
                0.0,
                1.0,
                &ctrl(),
            )
            .unwrap();
            assert!((r.value - a.ln()).abs() < 1e-13, "a={a} {r:?}");
        }
    }

    #[test]
    fn endpoint_power_singularity() {
        let r = quad_de(|x| x.powf(-0.75), 0.0, 1.0, &ctrl()).unwrap();
        assert!((r.value - 4.0).abs() < 1e-11, "{r:?}");
        let r = quad_de_nodes(|n| n.to_hi.powf(-0.5), 2.0, 3.0, &ctrl()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn semi_infinite_ranges() {
        let r = quad_de(|x| (-x).exp(), 0.0, f64::INFINITY, &ctrl()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13, "{r:?}");
        let r = quad_de(|x| 1.0 / (1.0 + x * x), 1.0, f64::INFINITY, &ctrl()).unwrap();
        assert!((r.value - std::f64::consts::FRAC_PI_4).abs() < 1e-13, "{r:?}");
        let r = quad_de(|x| x.powf(-0.5) * (-x).exp(), 0.0, f64::INFINITY, &ctrl()).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn nan_is_reported() {
        let r = quad_de(|x| if x > 0.3 { f64::NAN } else { 1.0 }, 0.0, 1.0, &ctrl());
        assert!(matches!(r, Err(Error::BadIntegrand(_))));
    }

    #[test]
    fn unconverged_when_levels_exhausted() {
        let c = ctrl().with_quad_levels(2).with_tol(1e-15);
        let r = quad_de(|x| (40.0 * x).sin(), 0.0, 3.0, &c).unwrap();
        assert!(!r.converged);
        assert!(r.err_est.is_finite());
    }

    #[test]
    fn square_rule() {
        let r = quad_de_square(|x, y| x.x * y.x, &ctrl()).unwrap();
        assert!((r.value - 0.25).abs() < 1e-13, "{r:?}");
        let r = quad_de_square(|x, y| 1.0 / (x.to_hi + x.x * y.to_hi), &ctrl()).unwrap();
        assert!((r.value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-10, "{r:?}");
    }
}
