//! Command-line flags and their validation into a [`RunConfig`].

use clap::{Parser, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::registry::FnName;
use crate::cisums::CaseId;
use crate::error::{domain, Result};
use crate::numkernel::Ctrl;
use crate::suites::Suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate one function by one representation.
    Eval,
    /// Every selected representation over an argument grid, with residuals.
    Compare,
    /// Run an identity suite.
    Identities,
    /// Tabulate a function over a grid.
    Table,
    /// Error against work as the truncation or quadrature depth grows.
    Bench,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Digamma, polygamma and log-Gamma representations and identities.
#[derive(Debug, Parser)]
#[command(name = "gammarep", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Function: psi, polygamma, lngamma, gamma, psi-rational, frac-moment,
    /// ci-sum, psi-sum, phi-asym, harmonic, gen-harmonic.
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// Representation name, or "all".
    #[arg(long)]
    pub rep: Option<String>,
    /// Cosine-integral sum family (p2, even2k, real-a, power-z, ...).
    #[arg(long)]
    pub case: Option<String>,
    /// Identity suite: digamma, gauss, special, polygamma, loggamma, products,
    /// euler, lemma2, prop4, cor5, harmonic or all
    #[arg(long)]
    pub suite: Option<String>,
    /// Argument a; real values accept pi literals such as pi/4 or 3*pi/2
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Index for the harmonic numbers.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Order of the generalized harmonic numbers.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Grid for the swept argument: "start:stop:count", "v1,v2,...", or
    /// "rand:lo:hi:count" (drawn with --seed).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Pass/fail tolerance overriding the per-representation default
    #[arg(long)]
    pub tol: Option<String>,
    /// Series truncation (K, J or N)
    #[arg(long)]
    pub max_terms: Option<usize>,
    /// Asymptotic tail-correction orders, 0 to 4
    #[arg(long)]
    pub tail_order: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output to this file instead of stdout
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Adds a wall_time column (the output is then no longer reproducible).
    #[arg(long)]
    pub timing: bool,
}

/// Arguments of a function evaluation; unset ones are `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Params {
    pub a: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub k: Option<f64>,
    pub q: Option<f64>,
    pub p: Option<f64>,
    pub z: Option<f64>,
    pub n: Option<f64>,
    pub r: Option<f64>,
}

/// Which parameter a grid sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    A,
    Alpha,
    Beta,
    K,
    P,
    N,
    None,
}

impl Axis {
    pub fn set(self, params: &mut Params, v: f64) {
        match self {
            Axis::A => params.a = Some(v),
            Axis::Alpha => params.alpha = Some(v),
            Axis::Beta => params.beta = Some(v),
            Axis::K => params.k = Some(v),
            Axis::P => params.p = Some(v),
            Axis::N => params.n = Some(v),
            Axis::None => {}
        }
    }

    pub fn get(self, params: &Params) -> Option<f64> {
        match self {
            Axis::A => params.a,
            Axis::Alpha => params.alpha,
            Axis::Beta => params.beta,
            Axis::K => params.k,
            Axis::P => params.p,
            Axis::N => params.n,
            Axis::None => None,
        }
    }

    pub fn integral(self) -> bool {
        matches!(self, Axis::K | Axis::P | Axis::N)
    }
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub function: Option<FnName>,
    /// Selected representations; empty for identity suites.
    pub reps: Vec<String>,
    pub case: Option<String>,
    pub suite: Option<Suite>,
    pub params: Params,
    pub axis: Axis,
    /// Swept values of `axis`, in order.
    pub grid: Vec<f64>,
    pub tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub tail_order: Option<u32>,
    pub format: Format,
    pub out: Option<String>,
    pub seed: u64,
    pub threads: usize,
    pub timing: bool,
}

impl RunConfig {
    /// Applies the control overrides to a representation's own settings.
    pub fn ctrl(&self, base: Ctrl) -> Ctrl {
        let mut c = base;
        if let Some(m) = self.max_terms {
            c.max_terms = m;
        }
        if let Some(t) = self.tail_order {
            c.tail_order = t;
        }
        c
    }
}

/// Parses a real number, accepting multiples and fractions of π such as
/// `pi`, `-pi/4`, `2pi`, `3*pi/2` and `0.5pi`.
pub fn parse_real(s: &str) -> Result<f64> {
    let t: String = s.trim().to_ascii_lowercase().chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || domain(format!("malformed number '{s}'"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t.as_str(), None),
    };
    let numerator = match num.strip_suffix("pi").or_else(|| num.strip_suffix('π')) {
        Some(coef) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            c * std::f64::consts::PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let value = match den {
        Some(d) => {
            let d: f64 = d.parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            numerator / d
        }
        None => numerator,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

fn opt_real(s: &Option<String>) -> Result<Option<f64>> {
    s.as_deref().map(parse_real).transpose()
}

/// Expands a grid description.
pub fn parse_grid(text: &str, integral: bool, seed: u64) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let count = |c: &str| -> Result<usize> {
        let n: usize = c.trim().parse().map_err(|_| domain(format!("malformed grid count '{c}'")))?;
        if n == 0 {
            return Err(domain("grid count must be at least 1"));
        }
        Ok(n)
    };
    let values = match parts.as_slice() {
        ["rand", lo, hi, n] => {
            let (lo, hi, n) = (parse_real(lo)?, parse_real(hi)?, count(n)?);
            if !(lo < hi) {
                return Err(domain(format!("random grid needs lo < hi, got {lo} and {hi}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.random_range(lo..hi)).collect()
        }
        [start, stop, n] => {
            let (start, stop, n) = (parse_real(start)?, parse_real(stop)?, count(n)?);
            if n == 1 {
                if start != stop {
                    return Err(domain("a one-point grid needs start = stop"));
                }
                vec![start]
            } else {
                let h = (stop - start) / (n - 1) as f64;
                (0..n).map(|i| if i == n - 1 { stop } else { start + h * i as f64 }).collect()
            }
        }
        [list] => list.split(',').map(parse_real).collect::<Result<Vec<_>>>()?,
        _ => return Err(domain(format!("malformed grid '{text}'"))),
    };
    if values.is_empty() {
        return Err(domain("empty grid"));
    }
    if integral {
        for v in &values {
            if v.fract() != 0.0 {
                return Err(domain(format!("this grid needs integer values, got {v}")));
            }
        }
    }
    Ok(values)
}

/// Validates parsed flags.
pub fn validate(cli: Cli) -> Result<RunConfig> {
    let params = Params {
        a: opt_real(&cli.a)?,
        alpha: opt_real(&cli.alpha)?,
        beta: opt_real(&cli.beta)?,
        k: opt_real(&cli.k)?,
        q: opt_real(&cli.q)?,
        p: opt_real(&cli.p)?,
        z: opt_real(&cli.z)?,
        n: opt_real(&cli.n)?,
        r: opt_real(&cli.r)?,
    };
    let tol = opt_real(&cli.tol)?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(domain(format!("--tol must be positive, got {t}")));
        }
    }
    if let Some(m) = cli.max_terms {
        if m == 0 {
            return Err(domain("--max-terms must be at least 1"));
        }
    }
    if let Some(t) = cli.tail_order {
        if t > 4 {
            return Err(domain(format!("--tail-order must be at most 4, got {t}")));
        }
    }
    let mut cfg = RunConfig {
        command: cli.command,
        function: None,
        reps: Vec::new(),
        case: cli.case.clone(),
        suite: None,
        params,
        axis: Axis::None,
        grid: Vec::new(),
        tol,
        max_terms: cli.max_terms,
        tail_order: cli.tail_order,
        format: cli.format,
        out: cli.out,
        seed: cli.seed,
        threads: cli.threads,
        timing: cli.timing,
    };
    if cli.command == Command::Identities {
        let name = cli.suite.ok_or_else(|| domain("identities needs --suite"))?;
        cfg.suite = Some(name.parse()?);
        return Ok(cfg);
    }
    if cli.suite.is_some() {
        return Err(domain("--suite only applies to the identities command"));
    }
    let fname: FnName = cli.function.ok_or_else(|| domain("this command needs --fn"))?.parse()?;
    cfg.function = Some(fname);
    let known = fname.reps();
    cfg.reps = match cli.rep.as_deref() {
        Some("all") => known.iter().map(|s| s.to_string()).collect(),
        Some(list) => {
            let mut v = Vec::new();
            for r in list.split(',') {
                if !known.contains(&r) {
                    return Err(domain(format!(
                        "unknown representation '{r}' for {fname}; expected one of {}",
                        known.join(", ")
                    )));
                }
                v.push(r.to_string());
            }
            v
        }
        None => match cli.command {
            Command::Compare | Command::Bench => fname.compare_reps().iter().map(|s| s.to_string()).collect(),
            _ => vec![fname.default_rep().to_string()],
        },
    };
    if fname == FnName::CiSum {
        let name = cfg.case.as_deref().ok_or_else(|| domain("ci-sum needs --case"))?;
        let k = cfg.params.k.map(|k| k as u32);
        CaseId::from_parts(name, k, cfg.params.a, cfg.params.z)?;
    } else if cfg.case.is_some() {
        return Err(domain("--case only applies to ci-sum"));
    }
    cfg.axis = fname.axis();
    cfg.grid = match (&cli.grid, cfg.axis) {
        (Some(_), Axis::None) => return Err(domain(format!("{fname} takes no grid"))),
        (Some(g), axis) => parse_grid(g, axis.integral(), cli.seed)?,
        (None, axis) => match fname.default_grid(&cfg.params) {
            Some(g) => g,
            None => match axis.get(&cfg.params) {
                Some(v) => vec![v],
                None if axis == Axis::None => vec![f64::NAN],
                None => return Err(domain(format!("{fname} needs --{} or --grid", axis_flag(axis)))),
            },
        },
    };
    if cfg.command == Command::Eval && cfg.grid.len() != 1 {
        return Err(domain("eval takes a single argument; use compare or table for grids"));
    }
    Ok(cfg)
}

pub fn axis_flag(axis: Axis) -> &'static str {
    match axis {
        Axis::A => "a",
        Axis::Alpha => "alpha",
        Axis::Beta => "beta",
        Axis::K => "k",
        Axis::P => "p",
        Axis::N => "n",
        Axis::None => "",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pi_literals() {
        assert_eq!(parse_real("pi").unwrap(), PI);
        assert_eq!(parse_real("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_real("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_real("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_real("3*pi/2").unwrap(), 3.0 * PI / 2.0);
        assert_eq!(parse_real("1.5").unwrap(), 1.5);
        assert_eq!(parse_real("1e-6").unwrap(), 1e-6);
        assert!(parse_real("pie").is_err());
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("inf").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0.5:5:10", false, 0).unwrap().len(), 10);
        assert_eq!(parse_grid("0.5:5:10", false, 0).unwrap()[9], 5.0);
        assert_eq!(parse_grid("1,2,pi", false, 0).unwrap(), vec![1.0, 2.0, PI]);
        assert!(parse_grid("1:2:0", false, 0).is_err());
        assert!(parse_grid("1:2:1", false, 0).is_err());
        assert!(parse_grid("1.5,2", true, 0).is_err());
        let a = parse_grid("rand:0.5:5:8", false, 7).unwrap();
        assert_eq!(a, parse_grid("rand:0.5:5:8", false, 7).unwrap());
        assert_ne!(a, parse_grid("rand:0.5:5:8", false, 8).unwrap());
        assert!(a.iter().all(|v| (0.5..5.0).contains(v)));
    }

    fn cfg(args: &[&str]) -> Result<RunConfig> {
        let mut v = vec!["gammarep"];
        v.extend_from_slice(args);
        validate(Cli::try_parse_from(v).map_err(|e| domain(e.to_string()))?)
    }

    #[test]
    fn configs() {
        let c = cfg(&["eval", "--fn", "psi", "--rep", "u-integral", "--a", "1.5"]).unwrap();
        assert_eq!(c.command, Command::Eval);
        assert_eq!(c.function, Some(FnName::Psi));
        assert_eq!(c.reps, vec!["u-integral"]);
        assert_eq!(c.grid, vec![1.5]);
        let c = cfg(&["identities", "--suite", "prop4", "--beta", "pi/2", "--tol", "1e-6"]).unwrap();
        assert_eq!(c.suite, Some(Suite::Prop4));
        assert_eq!(c.params.beta, Some(PI / 2.0));
        assert_eq!(c.tol, Some(1e-6));
        assert!(cfg(&["eval", "--fn", "psi", "--rep", "nope", "--a", "1"]).is_err());
        assert!(cfg(&["eval", "--fn", "nope", "--a", "1"]).is_err());
        assert!(cfg(&["identities", "--suite", "nope"]).is_err());
        assert!(cfg(&["eval", "--fn", "psi", "--a", "x"]).is_err());
        assert!(cfg(&["eval", "--fn", "ci-sum", "--case", "even2k", "--beta", "1"]).is_err());
        let c = cfg(&["table", "--fn", "psi-rational", "--q", "12"]).unwrap();
        assert_eq!(c.grid.len(), 11);
    }
}
