//! Genetic-algorithm distance estimators.
//!
//! Individuals are k-bit information words; an individual's fitness is the
//! weight of its codeword, with the zero codeword mapped to `n`. Lower is
//! better. Two loops are provided:
//!
//! * variant A keeps the best half, then fills the other half with one child
//!   per random pairing (mutation first, then crossover, lighter child kept);
//! * variant B keeps `N_e` elites and fills the rest by tournament pairing,
//!   crossover then mutation, and reports the best individual ever seen.

pub mod operators;

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codebook::LinearCode;
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};
use crate::gf2::BitWord;
use operators::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Variant {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CrossoverKind {
    OnePoint,
    TwoPoint,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SelectionKind {
    Tournament,
    Random,
    Roulette,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MutationKind {
    Classic,
    Greedy,
}

/// Hyperparameters of one GA run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GaConfig {
    pub variant: Variant,
    pub population_size: usize,
    pub max_generations: usize,
    /// Elites copied per generation; `None` is the variant default
    /// (A: half the population, B: 5%).
    pub elite_count: Option<usize>,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub crossover_kind: CrossoverKind,
    pub selection_kind: SelectionKind,
    pub tournament_size: usize,
    pub mutation_kind: MutationKind,
    pub elitism_enabled: bool,
    pub rng_seed: u64,
}

impl GaConfig {
    /// Variant A defaults: p_c 0.93, p_m 0.01, 1-point crossover, random
    /// selection, 75 generations of 1000 individuals.
    pub fn variant_a() -> Self {
        GaConfig {
            variant: Variant::A,
            population_size: 1000,
            max_generations: 75,
            elite_count: None,
            crossover_prob: 0.93,
            mutation_prob: 0.01,
            crossover_kind: CrossoverKind::OnePoint,
            selection_kind: SelectionKind::Random,
            tournament_size: 2,
            mutation_kind: MutationKind::Classic,
            elitism_enabled: true,
            rng_seed: 0,
        }
    }

    /// Variant B defaults: p_c 0.80, p_m 0.02, 2-point crossover, tournament
    /// of size 2, 75 generations of 1000 individuals.
    pub fn variant_b() -> Self {
        GaConfig {
            variant: Variant::B,
            crossover_prob: 0.80,
            mutation_prob: 0.02,
            crossover_kind: CrossoverKind::TwoPoint,
            selection_kind: SelectionKind::Tournament,
            ..Self::variant_a()
        }
    }

    pub fn for_variant(variant: Variant) -> Self {
        match variant {
            Variant::A => Self::variant_a(),
            Variant::B => Self::variant_b(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    /// Elites actually kept per generation.
    pub fn elites(&self) -> usize {
        if !self.elitism_enabled {
            return 0;
        }
        match (self.variant, self.elite_count) {
            (_, Some(e)) => e,
            (Variant::A, None) => self.population_size / 2,
            (Variant::B, None) => (self.population_size / 20).max(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: alloc::string::String| Err(Error::Config(msg));
        if self.population_size < 2 || self.population_size % 2 != 0 {
            return fail(format!("population size must be even and >= 2, got {}", self.population_size));
        }
        if self.max_generations == 0 {
            return fail("max_generations must be at least 1".into());
        }
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if self.tournament_size == 0 {
            return fail("tournament_size must be at least 1".into());
        }
        if let Some(e) = self.elite_count {
            if e > self.population_size {
                return fail(format!("elite_count {e} exceeds population size {}", self.population_size));
            }
            if self.variant == Variant::A && e != self.population_size / 2 {
                return fail(format!("variant A keeps exactly half the population as elites, got {e}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub genes: BitWord,
    pub fitness: usize,
}

/// Fitness evaluation against a fixed generator matrix.
pub struct Fitness<'a> {
    code: &'a LinearCode,
}

impl<'a> Fitness<'a> {
    pub fn new(code: &'a LinearCode) -> Self {
        Fitness { code }
    }

    pub fn codeword(&self, info: &BitWord) -> BitWord {
        self.code.encode(info).expect("individual length equals k")
    }

    pub(crate) fn row(&self, i: usize) -> &BitWord {
        self.code.generator().row(i)
    }

    /// Codeword weight, or `n` for the zero codeword.
    pub fn of_codeword(&self, cw: &BitWord) -> usize {
        match cw.weight() {
            0 => self.code.n(),
            w => w,
        }
    }

    pub fn of(&self, info: &BitWord) -> usize {
        self.of_codeword(&self.codeword(info))
    }

    fn individual(&self, genes: BitWord) -> Individual {
        let fitness = self.of(&genes);
        Individual { genes, fitness }
    }
}

/// `weight(encode(info))`, or `n` when that is zero.
pub fn fitness(code: &LinearCode, info: &BitWord) -> usize {
    Fitness::new(code).of(info)
}

/// Result of a GA run with its per-generation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaRun {
    pub estimate: Estimate,
    /// Best fitness of each evaluated population, initial one first.
    pub best_per_generation: Vec<usize>,
    pub evaluations: u64,
}

struct Engine<'a> {
    cfg: &'a GaConfig,
    fit: Fitness<'a>,
    rng: ChaCha8Rng,
    evaluations: u64,
}

impl<'a> Engine<'a> {
    fn new(code: &'a LinearCode, cfg: &'a GaConfig) -> Self {
        Engine { cfg, fit: Fitness::new(code), rng: ChaCha8Rng::seed_from_u64(cfg.rng_seed), evaluations: 0 }
    }

    fn eval(&mut self, genes: BitWord) -> Individual {
        self.evaluations += 1;
        self.fit.individual(genes)
    }

    fn initial_population(&mut self) -> Vec<Individual> {
        let k = self.fit.code.k();
        (0..self.cfg.population_size)
            .map(|_| {
                let g = random_weight_word(k, &mut self.rng);
                self.eval(g)
            })
            .collect()
    }

    fn select<'p>(&mut self, pop: &'p [Individual]) -> &'p Individual {
        let i = match self.cfg.selection_kind {
            SelectionKind::Tournament => select_tournament(pop, self.cfg.tournament_size, &mut self.rng),
            SelectionKind::Random => select_random(pop, &mut self.rng),
            SelectionKind::Roulette => select_roulette(pop, self.fit.code.n(), &mut self.rng),
        };
        &pop[i]
    }

    fn mutate(&mut self, w: &BitWord) -> BitWord {
        match self.cfg.mutation_kind {
            MutationKind::Classic => mutate_classic(w, self.cfg.mutation_prob, &mut self.rng),
            MutationKind::Greedy => mutate_greedy(&self.fit, w),
        }
    }

    fn cross(&mut self, a: &BitWord, b: &BitWord) -> (BitWord, BitWord) {
        match self.cfg.crossover_kind {
            CrossoverKind::OnePoint => crossover_one_point(a, b, &mut self.rng),
            CrossoverKind::TwoPoint => crossover_two_point(a, b, &mut self.rng),
            CrossoverKind::Uniform => crossover_uniform(a, b, &mut self.rng),
        }
    }

    fn sort(&self, pop: &mut [Individual]) {
        // zero codewords share fitness n with genuine weight-n words; keep the
        // genuine ones first so the reported individual always has a witness
        pop.sort_by_key(|ind| {
            (ind.fitness, ind.fitness == self.fit.code.n() && self.fit.codeword(&ind.genes).is_zero())
        });
    }

    fn estimate(&self, method: Method, best: &Individual) -> Estimate {
        let cw = self.fit.codeword(&best.genes);
        if cw.is_zero() {
            Estimate { method, d: self.fit.code.n(), witness: None }
        } else {
            Estimate { method, d: cw.weight(), witness: Some(cw) }
        }
    }
}

fn check_variant(cfg: &GaConfig, want: Variant) -> Result<()> {
    cfg.validate()?;
    if cfg.variant != want {
        return Err(Error::Config(format!("configuration is for variant {:?}, expected {want:?}", cfg.variant)));
    }
    Ok(())
}

/// Variant A: half-population elitism, one lighter child per pairing,
/// reports the first individual of the last population.
pub fn run_variant_a(code: &LinearCode, cfg: &GaConfig) -> Result<GaRun> {
    check_variant(cfg, Variant::A)?;
    let mut eng = Engine::new(code, cfg);
    let n_i = cfg.population_size;
    let elites = cfg.elites();
    let mut pop = eng.initial_population();
    eng.sort(&mut pop);
    let mut history = Vec::with_capacity(cfg.max_generations);
    history.push(pop[0].fitness);

    for _ in 1..cfg.max_generations {
        let mut next: Vec<Individual> = pop[..elites].to_vec();
        while next.len() < n_i {
            let p1 = eng.select(&pop).genes.clone();
            let p2 = eng.select(&pop).genes.clone();
            let (m1, m2) = (eng.mutate(&p1), eng.mutate(&p2));
            let (c1, c2) = if eng.rng.random_bool(cfg.crossover_prob) { eng.cross(&m1, &m2) } else { (m1, m2) };
            let (i1, i2) = (eng.eval(c1), eng.eval(c2));
            next.push(if i1.fitness < i2.fitness { i1 } else { i2 });
        }
        pop = next;
        eng.sort(&mut pop);
        history.push(pop[0].fitness);
    }

    let estimate = eng.estimate(Method::GaA, &pop[0]);
    Ok(GaRun { estimate, best_per_generation: history, evaluations: eng.evaluations })
}

/// Variant B: `N_e` elites, tournament pairing, crossover then mutation,
/// best-ever individual reported.
pub fn run_variant_b(code: &LinearCode, cfg: &GaConfig) -> Result<GaRun> {
    check_variant(cfg, Variant::B)?;
    let mut eng = Engine::new(code, cfg);
    let n_i = cfg.population_size;
    let elites = cfg.elites();
    let mut pop = eng.initial_population();
    eng.sort(&mut pop);
    let mut best = pop[0].clone();
    let mut history = Vec::with_capacity(cfg.max_generations);
    history.push(pop[0].fitness);

    for _ in 1..cfg.max_generations {
        let mut next: Vec<Individual> = pop[..elites].to_vec();
        while next.len() < n_i {
            let p1 = eng.select(&pop).clone();
            let p2 = eng.select(&pop).clone();
            if eng.rng.random_bool(cfg.crossover_prob) {
                let (c1, c2) = eng.cross(&p1.genes, &p2.genes);
                let (c1, c2) = (eng.mutate(&c1), eng.mutate(&c2));
                next.push(eng.eval(c1));
                if next.len() < n_i {
                    next.push(eng.eval(c2));
                }
            } else {
                next.push(if eng.rng.random_bool(0.5) { p1 } else { p2 });
            }
        }
        pop = next;
        eng.sort(&mut pop);
        history.push(pop[0].fitness);
        let current_is_genuine = !eng.fit.codeword(&pop[0].genes).is_zero();
        let best_is_genuine = !eng.fit.codeword(&best.genes).is_zero();
        if pop[0].fitness < best.fitness || (!best_is_genuine && current_is_genuine) {
            best = pop[0].clone();
        }
    }

    let estimate = eng.estimate(Method::GaB, &best);
    Ok(GaRun { estimate, best_per_generation: history, evaluations: eng.evaluations })
}

/// Dispatches on `cfg.variant`.
pub fn run(code: &LinearCode, cfg: &GaConfig) -> Result<GaRun> {
    match cfg.variant {
        Variant::A => run_variant_a(code, cfg),
        Variant::B => run_variant_b(code, cfg),
    }
}
