//! Maps function and representation names onto library calls.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::args::{Axis, Params};
use crate::asymsums::{phi_asym_partials, phi_sum_direct, psi_sum_lhs, psi_sum_rhs, AsymExponent};
use crate::cisums::{ci_sum_closed, ci_sum_oracle, CaseId, CI_SUM_TOL};
use crate::digamma::{psi_rational, psi_ref, psi_rep, RationalArg, RepDigamma};
use crate::error::{domain, Error, Result};
use crate::euler::{
    frac_moment_closed, frac_moment_fourier, frac_moment_quad, gamma_ci_sum, gamma_integral, gamma_ln2_alt,
    gamma_prop2, gamma_ref, hermite_integral,
};
use crate::loggamma::{lngamma_ref, lngamma_rep, RepLogGamma};
use crate::numkernel::{CompSum, Ctrl, EvalResult};
use crate::polygamma::{gen_harmonic, gen_harmonic_em, harmonic, harmonic_ci, polygamma_ref, polygamma_rep, RepPolygamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FnName {
    Psi,
    Polygamma,
    Lngamma,
    Gamma,
    PsiRational,
    FracMoment,
    CiSum,
    PsiSum,
    PhiAsym,
    Harmonic,
    GenHarmonic,
}

impl FnName {
    pub const ALL: [FnName; 11] = [
        FnName::Psi,
        FnName::Polygamma,
        FnName::Lngamma,
        FnName::Gamma,
        FnName::PsiRational,
        FnName::FracMoment,
        FnName::CiSum,
        FnName::PsiSum,
        FnName::PhiAsym,
        FnName::Harmonic,
        FnName::GenHarmonic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FnName::Psi => "psi",
            FnName::Polygamma => "polygamma",
            FnName::Lngamma => "lngamma",
            FnName::Gamma => "gamma",
            FnName::PsiRational => "psi-rational",
            FnName::FracMoment => "frac-moment",
            FnName::CiSum => "ci-sum",
            FnName::PsiSum => "psi-sum",
            FnName::PhiAsym => "phi-asym",
            FnName::Harmonic => "harmonic",
            FnName::GenHarmonic => "gen-harmonic",
        }
    }

    /// Every accepted representation name.
    pub fn reps(self) -> Vec<&'static str> {
        let mut v = vec![];
        match self {
            FnName::Psi => {
                v.push("ref");
                v.extend(RepDigamma::ALL.iter().map(|r| r.name()));
            }
            FnName::Polygamma => {
                v.push("ref");
                v.extend(RepPolygamma::ALL.iter().map(|r| r.name()));
            }
            FnName::Lngamma => {
                v.push("ref");
                v.extend(RepLogGamma::ALL.iter().map(|r| r.name()));
            }
            FnName::Gamma => v.extend(["ref", "integral", "si-series", "ci-sum", "ln2-alt", "hermite"]),
            FnName::PsiRational => v.extend(["gauss", "ref"]),
            FnName::FracMoment => v.extend(["quad", "closed", "fourier"]),
            FnName::CiSum => v.extend(["closed", "oracle"]),
            FnName::PsiSum => v.extend(["lhs", "rhs"]),
            FnName::PhiAsym => v.extend(["integer", "half-offset"]),
            FnName::Harmonic => v.extend(["psi", "ci", "direct"]),
            FnName::GenHarmonic => v.extend(["polygamma", "em", "direct"]),
        }
        v
    }

    pub fn default_rep(self) -> &'static str {
        self.reps()[0]
    }

    /// Representations swept by `compare` and `bench` when `--rep` is absent.
    pub fn compare_reps(self) -> Vec<&'static str> {
        match self {
            FnName::Psi | FnName::Polygamma | FnName::Lngamma | FnName::Gamma => self.reps()[1..].to_vec(),
            FnName::FracMoment => vec!["quad", "closed"],
            FnName::Harmonic => vec!["psi", "ci"],
            FnName::GenHarmonic => vec!["polygamma", "em"],
            _ => self.reps(),
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            FnName::Psi | FnName::Polygamma | FnName::Lngamma => Axis::A,
            FnName::Gamma => Axis::None,
            FnName::PsiRational => Axis::P,
            FnName::FracMoment => Axis::K,
            FnName::CiSum => Axis::Beta,
            FnName::PsiSum | FnName::PhiAsym => Axis::Alpha,
            FnName::Harmonic | FnName::GenHarmonic => Axis::N,
        }
    }

    /// Grid used when neither the swept flag nor `--grid` is given.
    pub fn default_grid(self, params: &Params) -> Option<Vec<f64>> {
        match self {
            FnName::PsiRational if params.p.is_none() => {
                let q = params.q?;
                if q.fract() != 0.0 || q < 2.0 {
                    return None;
                }
                Some((1..q as u64).map(|p| p as f64).collect())
            }
            _ => None,
        }
    }
}

impl fmt::Display for FnName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FnName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FnName::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = FnName::ALL.iter().map(|x| x.name()).collect();
            domain(format!("unknown function '{s}'; expected one of {}", names.join(", ")))
        })
    }
}

/// How a representation's work is varied by `bench`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Knob {
    MaxTerms,
    QuadLevels,
    Fixed,
}

impl Knob {
    pub fn name(self) -> &'static str {
        match self {
            Knob::MaxTerms => "max_terms",
            Knob::QuadLevels => "quad_levels",
            Knob::Fixed => "none",
        }
    }
}

/// Bench knob and its sweep for a representation.
pub fn knob(f: FnName, rep: &str) -> (Knob, Vec<usize>) {
    let short: Vec<usize> = vec![5, 10, 15, 20, 25, 30];
    let long: Vec<usize> = vec![10, 30, 100, 300, 1000, 3000, 10_000];
    let levels: Vec<usize> = (1..=12).collect();
    match (f, rep) {
        (FnName::Psi, "binomial-log" | "inv-binom-series")
        | (FnName::Lngamma, "binomial-series")
        | (FnName::Polygamma, "binomial-pow") => (Knob::MaxTerms, short),
        (FnName::Psi, "limit-sum") => (Knob::MaxTerms, vec![10, 100, 1000, 10_000, 100_000]),
        (FnName::Psi | FnName::Lngamma, "fourier-ci-si")
        | (FnName::Gamma, "si-series" | "ci-sum" | "ln2-alt")
        | (FnName::FracMoment, "fourier")
        | (FnName::CiSum, "oracle")
        | (FnName::PsiSum, "lhs")
        | (FnName::Harmonic, "ci") => (Knob::MaxTerms, long),
        (_, "ref" | "direct" | "gauss" | "closed" | "psi" | "polygamma" | "integer" | "half-offset") => {
            (Knob::Fixed, vec![0])
        }
        _ => (Knob::QuadLevels, levels),
    }
}

/// One evaluation with its reference value and the tolerance it is held to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub result: EvalResult,
    pub reference: Option<f64>,
    pub tol: Option<f64>,
}

fn need(v: Option<f64>, flag: &str, f: FnName) -> Result<f64> {
    v.ok_or_else(|| domain(format!("{f} needs --{flag}")))
}

fn need_uint(v: Option<f64>, flag: &str, f: FnName) -> Result<u64> {
    let x = need(v, flag, f)?;
    if x < 0.0 || x.fract() != 0.0 || x > 1e15 {
        return Err(domain(format!("--{flag} must be a non-negative integer, got {x}")));
    }
    Ok(x as u64)
}

/// The control block a representation starts from before overrides.
pub fn base_ctrl(f: FnName, rep: &str) -> Ctrl {
    match f {
        FnName::Psi => rep.parse::<RepDigamma>().map(|r| r.default_ctrl()).unwrap_or_default(),
        FnName::Polygamma => rep.parse::<RepPolygamma>().map(|r| r.default_ctrl()).unwrap_or_default(),
        FnName::Lngamma => rep.parse::<RepLogGamma>().map(|r| r.default_ctrl()).unwrap_or_default(),
        FnName::FracMoment if rep == "fourier" => Ctrl::default().with_max_terms(10_000),
        _ => Ctrl::default(),
    }
}

/// Evaluates `f` by `rep` at `params` under `ctrl`.
pub fn evaluate(f: FnName, rep: &str, case: Option<&str>, params: &Params, ctrl: &Ctrl) -> Result<Evaluation> {
    let ev = |result: EvalResult, reference: Option<f64>, tol: Option<f64>| Evaluation { result, reference, tol };
    let exact = EvalResult::exact;
    Ok(match f {
        FnName::Psi => {
            let a = need(params.a, "a", f)?;
            let reference = psi_ref(a)?;
            if rep == "ref" {
                ev(exact(reference), Some(reference), Some(0.0))
            } else {
                let r: RepDigamma = rep.parse()?;
                ev(psi_rep(a, r, ctrl)?, Some(reference), Some(r.tolerance()))
            }
        }
        FnName::Polygamma => {
            let a = need(params.a, "a", f)?;
            let j = params.k.unwrap_or(1.0);
            if j < 1.0 || j.fract() != 0.0 || j > 60.0 {
                return Err(domain(format!("polygamma order --k must be an integer in 1..=60, got {j}")));
            }
            let j = j as u32;
            let reference = polygamma_ref(j, a)?;
            if rep == "ref" {
                ev(exact(reference), Some(reference), Some(0.0))
            } else {
                let r: RepPolygamma = rep.parse()?;
                ev(polygamma_rep(j, a, r, ctrl)?, Some(reference), Some(r.tolerance() * reference.abs().max(1.0)))
            }
        }
        FnName::Lngamma => {
            let a = need(params.a, "a", f)?;
            let reference = lngamma_ref(a)?;
            if rep == "ref" {
                ev(exact(reference), Some(reference), Some(0.0))
            } else {
                let r: RepLogGamma = rep.parse()?;
                ev(lngamma_rep(a, r, ctrl)?, Some(reference), Some(r.tolerance()))
            }
        }
        FnName::Gamma => {
            let reference = gamma_ref()?;
            let j = ctrl.max_terms as u64;
            let (v, tol) = match rep {
                "ref" => (exact(reference), 0.0),
                "integral" => (gamma_integral(ctrl)?, 1e-10),
                "si-series" => (gamma_prop2(j, ctrl)?, 1e-6),
                "ci-sum" => (gamma_ci_sum(j, ctrl)?, 1e-6),
                "ln2-alt" => (gamma_ln2_alt(j, ctrl)?, 1e-6),
                _ => (hermite_integral(ctrl)?.affine(2.0, 0.5), 2e-9),
            };
            ev(v, Some(reference), Some(tol))
        }
        FnName::PsiRational => {
            let p = need_uint(params.p, "p", f)?;
            let q = need_uint(params.q, "q", f)?;
            let r = RationalArg::reduced(p, q)?;
            let reference = psi_ref(r.value())?;
            let v = if rep == "ref" { reference } else { psi_rational(r) };
            ev(exact(v), Some(reference), Some(1e-12))
        }
        FnName::FracMoment => {
            let k = need_uint(params.k, "k", f)?;
            if k == 0 || k > 64 {
                return Err(domain(format!("moments need k in 1..=64, got {k}")));
            }
            let k = k as u32;
            let closed = frac_moment_closed(k)?;
            match rep {
                "closed" => ev(exact(closed), Some(closed), Some(0.0)),
                "quad" => ev(frac_moment_quad(k, ctrl)?, Some(closed), Some(1e-8)),
                _ => ev(frac_moment_fourier(k, ctrl.max_terms as u64, ctrl)?, Some(closed), Some(1e-5)),
            }
        }
        FnName::CiSum => {
            let beta = need(params.beta, "beta", f)?;
            let name = case.ok_or_else(|| domain("ci-sum needs --case"))?;
            let c = CaseId::from_parts(name, params.k.map(|k| k as u32), params.a, params.z)?;
            let closed = ci_sum_closed(beta, c, ctrl)?;
            let oracle = ci_sum_oracle(beta, c, ctrl)?;
            if rep == "oracle" {
                ev(oracle, Some(closed.value), Some(CI_SUM_TOL))
            } else {
                ev(closed, Some(oracle.value), Some(CI_SUM_TOL))
            }
        }
        FnName::PsiSum => {
            let alpha = need(params.alpha, "alpha", f)?;
            let beta = params.beta.unwrap_or(0.0);
            let lhs = psi_sum_lhs(alpha, beta, ctrl)?;
            let rhs = psi_sum_rhs(alpha, beta, ctrl)?;
            if rep == "rhs" {
                ev(rhs, Some(lhs.value), Some(1e-7))
            } else {
                ev(lhs, Some(rhs.value), Some(1e-7))
            }
        }
        FnName::PhiAsym => {
            let alpha = need(params.alpha, "alpha", f)?;
            let beta = params.beta.unwrap_or(0.0);
            let k = params.k.unwrap_or(1.0);
            if !(1.0..=5.0).contains(&k) || k.fract() != 0.0 {
                return Err(domain(format!("expansion order --k must lie in 1..=5, got {k}")));
            }
            if !(alpha >= 4.0) {
                return Err(domain(format!("the large-alpha expansion needs alpha ≥ 4, got {alpha}")));
            }
            let conv = if rep == "half-offset" { AsymExponent::HalfOffset } else { AsymExponent::Integer };
            let partial = phi_asym_partials(alpha, beta, k as usize, conv)?[k as usize];
            let direct = phi_sum_direct(alpha, beta, ctrl)?;
            ev(exact(partial), Some(direct.value), None)
        }
        FnName::Harmonic => {
            let n = need_uint(params.n, "n", f)?;
            if n == 0 {
                return Err(domain("harmonic numbers need n ≥ 1"));
            }
            let direct = direct_sum(n, 1);
            match rep {
                "direct" => ev(exact(direct), Some(direct), Some(0.0)),
                "psi" => ev(exact(harmonic(n)?), Some(direct), Some(1e-10)),
                _ => ev(harmonic_ci(n, ctrl.max_terms as u64, ctrl)?, Some(direct), Some(1e-6)),
            }
        }
        FnName::GenHarmonic => {
            let n = need_uint(params.n, "n", f)?;
            let r = params.r.unwrap_or(2.0);
            if r < 2.0 || r.fract() != 0.0 || r > 60.0 {
                return Err(domain(format!("--r must be an integer in 2..=60, got {r}")));
            }
            let r = r as u32;
            if n == 0 {
                return Err(domain("harmonic numbers need n ≥ 1"));
            }
            let direct = direct_sum(n, r);
            match rep {
                "direct" => ev(exact(direct), Some(direct), Some(0.0)),
                "polygamma" => ev(exact(gen_harmonic(n, r)?), Some(direct), Some(1e-10)),
                _ => ev(gen_harmonic_em(n, r, ctrl)?, Some(direct), Some(1e-9)),
            }
        }
    })
}

fn direct_sum(n: u64, r: u32) -> f64 {
    let mut s = CompSum::new();
    for k in (1..=n).rev() {
        s.add((k as f64).powi(-(r as i32)));
    }
    s.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rep_evaluates() {
        let params = Params {
            a: Some(2.0),
            alpha: Some(8.0),
            beta: Some(std::f64::consts::FRAC_PI_2),
            k: Some(2.0),
            q: Some(12.0),
            p: Some(5.0),
            z: Some(0.5),
            n: Some(10.0),
            r: Some(2.0),
        };
        for f in FnName::ALL {
            for rep in f.reps() {
                let ctrl = base_ctrl(f, rep);
                let e = evaluate(f, rep, Some("p2"), &params, &ctrl).unwrap();
                if let (Some(r), Some(t)) = (e.reference, e.tol) {
                    assert!((e.result.value - r).abs() <= t.max(1e-15), "{f} {rep}: {e:?}");
                }
            }
        }
    }

    #[test]
    fn names_parse() {
        for f in FnName::ALL {
            assert_eq!(f.name().parse::<FnName>().unwrap(), f);
        }
    }
}
