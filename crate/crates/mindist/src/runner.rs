//! Runs one estimator on one code and assembles the result record.

use std::sync::Mutex;
use std::time::Instant;

use mindist_core::bounds::BoundReport;
use mindist_core::evolve::{self, GaConfig, Variant};
use mindist_core::mim::{Mim, MimConfig, MimEvent};
use mindist_core::oracle::{self, DEFAULT_BUDGET};
use mindist_core::{LinearCode, Method};

use crate::config::{reject_unknown, Overrides};
use crate::error::{Error, Result};
use crate::parallel;
use crate::report::{CodeIdentity, ConfigSnapshot, DistanceEstimate, WitnessRecord, SCHEMA_VERSION};

/// Environment variable holding the default oracle budget (max k).
pub const BUDGET_ENV: &str = "MINDIST_ORACLE_BUDGET";

pub fn parse_method(s: &str) -> Result<Method> {
    match s.to_ascii_lowercase().replace('_', "-").as_str() {
        "exact" => Ok(Method::Exact),
        "ga-a" => Ok(Method::GaA),
        "ga-b" => Ok(Method::GaB),
        "mim" => Ok(Method::Mim),
        _ => Err(Error::Config(format!("unknown method {s:?}; expected exact, ga-a, ga-b or mim"))),
    }
}

/// Budget from the environment, or the built-in default.
pub fn default_budget() -> Result<usize> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Config(format!("{BUDGET_ENV}={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub method: Method,
    /// Overrides the `rng_seed` of the estimator config when set.
    pub seed: Option<u64>,
    pub overrides: Overrides,
    pub budget: Option<usize>,
    pub workers: usize,
    pub pless: bool,
}

impl RunOptions {
    pub fn new(method: Method) -> Self {
        RunOptions { method, seed: None, overrides: Overrides::default(), budget: None, workers: 1, pless: false }
    }

    pub fn ga_config(&self, variant: Variant) -> Result<GaConfig> {
        let mut cfg = self.overrides.apply(&GaConfig::for_variant(variant))?;
        cfg.variant = variant;
        if let Some(s) = self.seed {
            cfg.rng_seed = s;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn mim_config(&self, code: &LinearCode) -> Result<MimConfig> {
        let mut cfg = self.overrides.apply(&MimConfig::defaults_for(code))?;
        if let Some(s) = self.seed {
            cfg.rng_seed = s;
        }
        cfg.validate(code)?;
        Ok(cfg)
    }
}

/// Runs the estimator, then checks the bounds. A hard bound violation is
/// returned as an error; the record is still produced for inspection.
pub fn estimate(code: &LinearCode, source: &str, opts: &RunOptions) -> Result<DistanceEstimate> {
    reject_unknown(&opts.overrides, &GaConfig::variant_a(), &MimConfig::defaults_for(code))?;
    let started = Instant::now();
    let identity = CodeIdentity::of(code, source);
    let mut out = match opts.method {
        Method::Exact => {
            let budget = match opts.budget {
                Some(b) => b,
                None => default_budget()?,
            };
            let r = if opts.workers > 1 {
                parallel::exact(code, Some(budget), false, opts.workers)?
            } else {
                oracle::exact_min_distance(code, Some(budget))?
            };
            record(
                identity,
                Method::Exact,
                r.d_exact,
                Some(r.witness),
                ConfigSnapshot::Exact { budget, workers: opts.workers },
                0,
            )
            .with_enumerated(r.enumerated)
        }
        Method::GaA | Method::GaB => {
            let variant = if opts.method == Method::GaA { Variant::A } else { Variant::B };
            let cfg = opts.ga_config(variant)?;
            let run = evolve::run(code, &cfg)?;
            let mut rec = record(
                identity,
                opts.method,
                run.estimate.d,
                run.estimate.witness,
                ConfigSnapshot::Ga(cfg.clone()),
                cfg.rng_seed,
            );
            rec.generation_best = Some(run.best_per_generation);
            rec
        }
        Method::Mim => {
            let cfg = opts.mim_config(code)?;
            let search = Mim::new(code, cfg.clone())?;
            let found = Mutex::new(Vec::new());
            let observer = |e: &MimEvent| {
                found.lock().unwrap().push(WitnessRecord {
                    weight: e.weight,
                    codeword: e.codeword.clone(),
                    elapsed_seconds: started.elapsed().as_secs_f64(),
                    trial: e.trial,
                    amplitude: e.amplitude,
                    nb_error: e.nb_error,
                    decodes: e.decodes,
                });
            };
            let run = if opts.workers > 1 {
                parallel::mim(&search, opts.workers, &observer)?
            } else {
                search.run_with(&mut |e| observer(e))?
            };
            let snapshot = ConfigSnapshot::Mim { config: cfg.clone(), workers: opts.workers };
            let mut rec = record(identity, Method::Mim, run.estimate.d, run.estimate.witness, snapshot, cfg.rng_seed);
            rec.witnesses = found.into_inner().unwrap();
            rec
        }
    };
    out.wall_time_seconds = started.elapsed().as_secs_f64();
    out.bound_report = BoundReport::check(code, out.d, opts.pless);
    if out.witness.is_some() && !out.witness_valid(code) {
        return Err(Error::Internal(format!("witness for {} does not certify d = {}", code.label(), out.d)));
    }
    Ok(out)
}

/// Fails when the record carries a hard bound violation.
pub fn check_bounds(est: &DistanceEstimate) -> Result<()> {
    let hard: Vec<String> = est
        .bound_report
        .violations
        .iter()
        .filter(|v| v.severity == mindist_core::bounds::Severity::Error)
        .map(|v| v.bound.to_string())
        .collect();
    if est.witness.is_some() && !hard.is_empty() {
        return Err(Error::BoundViolation(hard.join(", ")));
    }
    Ok(())
}

fn record(
    code: CodeIdentity,
    method: Method,
    d: usize,
    witness: Option<mindist_core::BitWord>,
    config: ConfigSnapshot,
    rng_seed: u64,
) -> DistanceEstimate {
    DistanceEstimate {
        schema_version: SCHEMA_VERSION,
        code,
        method,
        d,
        witness,
        config,
        rng_seed,
        wall_time_seconds: 0.0,
        bound_report: BoundReport {
            singleton_upper: 0,
            sqrt_lower: None,
            krasikov_upper: None,
            parity_adjusted_d: None,
            violations: Vec::new(),
        },
        witnesses: Vec::new(),
        generation_best: None,
        enumerated: None,
    }
}

impl DistanceEstimate {
    fn with_enumerated(mut self, n: u64) -> Self {
        self.enumerated = Some(n);
        self
    }
}
