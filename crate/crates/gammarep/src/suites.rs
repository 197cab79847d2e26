//! Named batches of identity checks.
//!
//! A suite expands into independent tasks so that callers can fan them out
//! over a worker pool and still concatenate the rows in task order.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::asymsums::cor5_identities;
use crate::cisums::{ci_sum_closed, ci_sum_identity, CaseId, CI_SUM_TOL};
use crate::digamma::{exp_gamma0_product, gamma0_half_integer, psi_rational, psi_ref, psi_rep, RationalArg, RepDigamma};
use crate::error::{domain, Error, Result};
use crate::euler::{euler_identities, moment_identities};
use crate::loggamma::{
    binet_constant_integral, const_binet_sum, gamma_product, lngamma_quarter, lngamma_ref, lngamma_rep, RepLogGamma,
};
use crate::numkernel::{CompSum, Ctrl, EvalResult, EULER_GAMMA};
use crate::polygamma::{gen_harmonic, gen_harmonic_em, harmonic, harmonic_ci, polygamma_ref, polygamma_rep, RepPolygamma};
use crate::report::IdentityReport;

/// Digamma evaluation points of the cross-representation suite.
pub const DIGAMMA_POINTS: [f64; 7] = [0.25, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0];

/// Log-Gamma evaluation points.
pub const LNGAMMA_POINTS: [f64; 6] = [0.25, 0.5, 1.0, 2.0, 3.5, 8.0];

/// Identity suites selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Digamma,
    Gauss,
    Special,
    Polygamma,
    Loggamma,
    Products,
    Euler,
    Lemma2,
    Prop4,
    Cor5,
    Harmonic,
    All,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Digamma,
        Suite::Gauss,
        Suite::Special,
        Suite::Polygamma,
        Suite::Loggamma,
        Suite::Products,
        Suite::Euler,
        Suite::Lemma2,
        Suite::Prop4,
        Suite::Cor5,
        Suite::Harmonic,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Digamma => "digamma",
            Suite::Gauss => "gauss",
            Suite::Special => "special",
            Suite::Polygamma => "polygamma",
            Suite::Loggamma => "loggamma",
            Suite::Products => "products",
            Suite::Euler => "euler",
            Suite::Lemma2 => "lemma2",
            Suite::Prop4 => "prop4",
            Suite::Cor5 => "cor5",
            Suite::Harmonic => "harmonic",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            domain(format!("unknown suite '{s}'; expected one of {}", names.join(", ")))
        })
    }
}

/// Overrides shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteOpts {
    /// Control block for suites that do not fix their own per-representation
    /// settings.
    pub ctrl: Ctrl,
    /// Tolerance for the cosine-integral and digamma-sum identities.
    pub tol: Option<f64>,
    /// Restricts the cosine-integral suite to one progression step.
    pub beta: Option<f64>,
}

impl Default for SuiteOpts {
    fn default() -> Self {
        SuiteOpts { ctrl: Ctrl::default(), tol: None, beta: None }
    }
}

/// One independent unit of work producing report rows.
pub type Task = Box<dyn Fn() -> Result<Vec<IdentityReport>> + Send + Sync>;

fn task<F>(f: F) -> Task
where
    F: Fn() -> Result<Vec<IdentityReport>> + Send + Sync + 'static,
{
    Box::new(f)
}

/// Expands a suite into tasks, in output order.
pub fn suite_tasks(suite: Suite, opts: &SuiteOpts) -> Vec<Task> {
    let opts = *opts;
    match suite {
        Suite::Digamma => digamma_tasks(),
        Suite::Gauss => vec![task(gauss)],
        Suite::Special => special_tasks(),
        Suite::Polygamma => polygamma_tasks(),
        Suite::Loggamma => loggamma_tasks(),
        Suite::Products => vec![task(products)],
        Suite::Euler => vec![task(move || euler_identities(&opts.ctrl))],
        Suite::Lemma2 => vec![task(move || moment_identities(&opts.ctrl))],
        Suite::Prop4 => prop4_tasks(opts),
        Suite::Cor5 => vec![task(move || cor5_identities(opts.tol.unwrap_or(1e-7), &opts.ctrl))],
        Suite::Harmonic => vec![task(move || harmonic_suite(&opts.ctrl))],
        Suite::All => Suite::ALL
            .into_iter()
            .filter(|s| *s != Suite::All)
            .flat_map(|s| suite_tasks(s, &opts))
            .collect(),
    }
}

/// Runs a suite sequentially.
pub fn run_suite(suite: Suite, opts: &SuiteOpts) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for t in suite_tasks(suite, opts) {
        out.extend(t()?);
    }
    Ok(out)
}

fn exact(v: f64) -> EvalResult {
    EvalResult::exact(v)
}

fn digamma_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    for a in DIGAMMA_POINTS {
        for rep in RepDigamma::ALL {
            tasks.push(task(move || {
                let v = psi_rep(a, rep, &rep.default_ctrl())?;
                Ok(vec![IdentityReport::new("psi", v, exact(psi_ref(a)?), rep.tolerance())
                    .with_params(format!("rep={rep} a={a}"))])
            }));
        }
        tasks.push(task(move || {
            let rep = RepDigamma::BinomialLog;
            let reference = psi_ref(a)?;
            let err = |k: usize| -> Result<f64> {
                let c = rep.default_ctrl().with_max_terms(k);
                Ok((psi_rep(a, rep, &c)?.value - reference).abs())
            };
            let (e10, e25) = (err(10)?, err(25)?);
            Ok(vec![IdentityReport::ordering("psi-binomial-log-improves", e25, e10).with_params(format!("a={a} K=10->25"))])
        }));
    }
    tasks
}

fn gauss() -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for q in 2..=12u64 {
        for p in 1..q {
            if let Ok(r) = RationalArg::new(p, q) {
                let v = psi_rational(r);
                out.push(
                    IdentityReport::new("psi-rational", exact(v), exact(psi_ref(r.value())?), 1e-12)
                        .with_params(format!("p={p} q={q}")),
                );
            }
        }
    }
    let d = psi_rational(RationalArg::new(1, 4)?) - psi_rational(RationalArg::new(3, 4)?);
    out.push(IdentityReport::new("psi-quarter-difference", exact(d), exact(-PI), 1e-13));
    Ok(out)
}

/// `(argument, γ₀(argument))` pairs with closed forms.
fn special_values() -> Vec<(f64, f64, String)> {
    let mut v = vec![
        (0.5, EULER_GAMMA + 2.0 * LN_2, "gamma0(1/2)".to_string()),
        (0.25, EULER_GAMMA + PI / 2.0 + 3.0 * LN_2, "gamma0(1/4)".to_string()),
    ];
    for n in 1..=5u64 {
        v.push((n as f64 + 0.5, gamma0_half_integer(n), format!("gamma0({n}+1/2)")));
    }
    v
}

fn special_tasks() -> Vec<Task> {
    let mut tasks = vec![task(|| {
        special_values()
            .into_iter()
            .map(|(a, closed, label)| {
                Ok(IdentityReport::new("gamma0-special", exact(-psi_ref(a)?), exact(closed), 1e-12).with_params(label))
            })
            .collect()
    })];
    for rep in RepDigamma::ALL {
        tasks.push(task(move || {
            special_values()
                .into_iter()
                .map(|(a, closed, label)| {
                    let v = psi_rep(a, rep, &rep.default_ctrl())?.affine(-1.0, 0.0);
                    Ok(IdentityReport::new("gamma0-special", v, exact(closed), rep.tolerance())
                        .with_params(format!("{label} rep={rep}")))
                })
                .collect()
        }));
    }
    tasks
}

fn polygamma_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    for rep in RepPolygamma::ALL {
        for j in 1..=3u32 {
            tasks.push(task(move || {
                [0.5, 1.0, 2.3]
                    .into_iter()
                    .map(|a| {
                        let v = polygamma_rep(j, a, rep, &rep.default_ctrl())?;
                        let r = polygamma_ref(j, a)?;
                        // Relative tolerance: the values grow like j!.
                        Ok(IdentityReport::new("polygamma", v, exact(r), rep.tolerance() * r.abs().max(1.0))
                            .with_params(format!("rep={rep} j={j} a={a}")))
                    })
                    .collect()
            }));
        }
    }
    tasks
}

fn loggamma_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    for rep in RepLogGamma::ALL {
        tasks.push(task(move || {
            let mut out = Vec::new();
            for a in LNGAMMA_POINTS {
                let v = lngamma_rep(a, rep, &rep.default_ctrl())?;
                out.push(
                    IdentityReport::new("lngamma", v, exact(lngamma_ref(a)?), rep.tolerance())
                        .with_params(format!("rep={rep} a={a}")),
                );
            }
            let one = lngamma_rep(1.0, rep, &rep.default_ctrl())?;
            out.push(IdentityReport::new("lngamma-vanishes-at-one", one, exact(0.0), rep.tolerance()).with_params(format!("rep={rep}")));
            Ok(out)
        }));
    }
    tasks.push(task(|| {
        let c = 1.0 - 0.5 * (2.0 * PI).ln();
        let ctrl = Ctrl::default();
        Ok(vec![
            IdentityReport::new("binet-constant-integral", binet_constant_integral(&ctrl)?, exact(c), 1e-9),
            IdentityReport::new("binet-constant-sum", const_binet_sum(2000, &ctrl)?, exact(c), 1e-6)
                .with_params("J=2000"),
            lngamma_quarter(&ctrl)?,
        ])
    }));
    tasks
}

fn products() -> Result<Vec<IdentityReport>> {
    let ks = [5usize, 10, 20];
    let mut out = Vec::new();
    for a in [0.5, 2.0] {
        let reference = lngamma_ref(a)?;
        let mut errs = Vec::new();
        for &k in &ks {
            errs.push((gamma_product(a, k)?.value.ln() - reference).abs());
        }
        for w in 0..ks.len() - 1 {
            out.push(
                IdentityReport::ordering("gamma-product-improves", errs[w + 1], errs[w])
                    .with_params(format!("a={a} K={}->{}", ks[w], ks[w + 1])),
            );
        }
    }
    let target = EULER_GAMMA.exp();
    let mut errs = Vec::new();
    for &k in &ks {
        errs.push((exp_gamma0_product(1.0, k)?.value - target).abs());
    }
    for w in 0..ks.len() - 1 {
        out.push(
            IdentityReport::ordering("exp-gamma0-product-improves", errs[w + 1], errs[w])
                .with_params(format!("a=1 K={}->{}", ks[w], ks[w + 1])),
        );
    }
    Ok(out)
}

fn prop4_tasks(opts: SuiteOpts) -> Vec<Task> {
    let betas: Vec<f64> = match opts.beta {
        Some(b) => vec![b],
        None => CaseId::grid_betas().to_vec(),
    };
    let tol = opts.tol.unwrap_or(CI_SUM_TOL);
    let mut tasks = Vec::new();
    for case in CaseId::grid() {
        let betas = betas.clone();
        tasks.push(task(move || {
            betas
                .iter()
                .map(|&b| Ok(ci_sum_identity(b, case, &opts.ctrl)?.with_tol(tol)))
                .collect()
        }));
    }
    tasks.push(task(move || {
        let mut out = Vec::new();
        let pairs = [
            (CaseId::Even2k(1), CaseId::P2),
            (CaseId::Even2k(2), CaseId::P4),
            (CaseId::Even2kAlt(1), CaseId::P2Alt),
            (CaseId::Even2kAlt(2), CaseId::P4Alt),
        ];
        for &b in &betas {
            for (general, special) in pairs {
                let g = ci_sum_closed(b, general, &opts.ctrl)?;
                let s = ci_sum_closed(b, special, &opts.ctrl)?;
                out.push(
                    IdentityReport::new("ci-sum-subsumption", g, s, 1e-10)
                        .with_case(general, b)
                        .with_params(format!("special={special}")),
                );
            }
        }
        Ok(out)
    }));
    tasks
}

fn direct_harmonic(n: u64, r: u32) -> f64 {
    let mut s = CompSum::new();
    for k in (1..=n).rev() {
        s.add((k as f64).powi(-(r as i32)));
    }
    s.value()
}

fn harmonic_suite(ctrl: &Ctrl) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    let ns = [1u64, 2, 3, 10, 50, 100, 500, 1000];
    for n in ns {
        out.push(
            IdentityReport::new("harmonic", exact(harmonic(n)?), exact(direct_harmonic(n, 1)), 1e-10)
                .with_params(format!("n={n}")),
        );
        for r in [2u32, 3] {
            out.push(
                IdentityReport::new("gen-harmonic", exact(gen_harmonic(n, r)?), exact(direct_harmonic(n, r)), 1e-10)
                    .with_params(format!("n={n} r={r}")),
            );
        }
    }
    out.push(
        IdentityReport::new("harmonic-ci", harmonic_ci(10, 500, ctrl)?, exact(7381.0 / 2520.0), 1e-6)
            .with_params("n=10 J=500"),
    );
    for n in [1u64, 10, 100, 1000] {
        for r in [2u32, 3] {
            out.push(
                IdentityReport::new("gen-harmonic-em", gen_harmonic_em(n, r, ctrl)?, exact(direct_harmonic(n, r)), 1e-9)
                    .with_params(format!("n={n} r={r}")),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass() {
        for s in [Suite::Gauss, Suite::Products, Suite::Harmonic] {
            let rows = run_suite(s, &SuiteOpts::default()).unwrap();
            assert!(!rows.is_empty());
            for r in rows {
                assert!(r.pass, "{s}: {r:?}");
            }
        }
    }

    #[test]
    fn gauss_covers_all_reduced_fractions() {
        let rows = run_suite(Suite::Gauss, &SuiteOpts::default()).unwrap();
        // Σ_{q=2}^{12} φ(q) = 45 reduced fractions, plus the difference check.
        assert_eq!(rows.len(), 46);
    }
}
