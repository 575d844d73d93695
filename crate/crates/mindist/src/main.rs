use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mindist::codespec::{write_code, CodeSpec};
use mindist::config::Overrides;
use mindist::runner::{check_bounds, estimate, parse_method, RunOptions};
use mindist::table::run_table;
use mindist::{exit, DistanceEstimate, Error, Result};
use mindist_core::osd::{OsdDecoder, SoftWord, DEFAULT_ORDER};
use mindist_core::{BitWord, Method};

#[derive(Parser)]
#[command(name = "mindist", version, about = "Minimum-distance estimation for binary linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its generator matrix.
    Construct(ConstructArgs),
    /// Estimate the minimum distance of one code.
    Estimate(Box<EstimateArgs>),
    /// Run a batch of estimates from an experiment file and print CSV.
    Table(TableArgs),
    /// Decode one received word with OSD (debugging aid).
    Decode(DecodeArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "family")]
struct FamilyArgs {
    /// Narrow-sense BCH code: M T
    #[arg(long, num_args = 2, value_names = ["M", "T"])]
    bch: Option<Vec<u64>>,
    /// Quadratic-residue code of prime length P
    #[arg(long, value_name = "P")]
    qr: Option<u64>,
    /// Double-circulant code with this circulant header
    #[arg(long, value_name = "BITS")]
    dcc: Option<String>,
    /// Bordered quadratic double-circulant code of length 2(P+1)
    #[arg(long, value_name = "P")]
    qdc: Option<u64>,
    /// Existing generator-matrix file
    #[arg(long, value_name = "PATH")]
    load: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Design distance recorded for --bch (default 2t+1)
    #[arg(long)]
    design: Option<usize>,
    /// Corner entry of the bordered QDC matrix
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    corner: u8,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Default)]
struct MethodFlags {
    #[arg(long, help_heading = "GA")]
    population_size: Option<usize>,
    #[arg(long, help_heading = "GA")]
    max_generations: Option<usize>,
    #[arg(long, help_heading = "GA")]
    elite_count: Option<usize>,
    #[arg(long, help_heading = "GA")]
    crossover_prob: Option<f64>,
    #[arg(long, help_heading = "GA")]
    mutation_prob: Option<f64>,
    /// one_point, two_point or uniform
    #[arg(long, help_heading = "GA")]
    crossover_kind: Option<String>,
    /// tournament, random or roulette
    #[arg(long, help_heading = "GA")]
    selection_kind: Option<String>,
    #[arg(long, help_heading = "GA")]
    tournament_size: Option<usize>,
    /// classic or greedy
    #[arg(long, help_heading = "GA")]
    mutation_kind: Option<String>,
    #[arg(long, help_heading = "GA")]
    no_elitism: bool,
    #[arg(long, help_heading = "MIM")]
    d0: Option<usize>,
    #[arg(long, help_heading = "MIM")]
    d1: Option<usize>,
    #[arg(long, help_heading = "MIM")]
    nb_test: Option<usize>,
    #[arg(long, help_heading = "MIM")]
    error_max: Option<usize>,
    #[arg(long, help_heading = "MIM")]
    osd_order: Option<usize>,
}

impl MethodFlags {
    fn overrides(&self) -> Overrides {
        let mut o = Overrides::default();
        macro_rules! put {
            ($($f:ident),*) => {$( if let Some(v) = &self.$f { o.insert(stringify!($f), v.clone()); } )*};
        }
        put!(population_size, max_generations, elite_count, crossover_prob, mutation_prob, crossover_kind);
        put!(selection_kind, tournament_size, mutation_kind, d0, d1, nb_test, error_max, osd_order);
        if self.no_elitism {
            o.insert("elitism_enabled", false);
        }
        o
    }
}

#[derive(Args)]
struct EstimateArgs {
    /// Matrix file, or bch:M:T[:D], qr:P, dcc:BITS, qdc:P[:CORNER]
    #[arg(long)]
    code: String,
    /// exact, ga-a, ga-b or mim
    #[arg(long)]
    method: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the full result record here
    #[arg(long)]
    json: Option<PathBuf>,
    /// Configuration file (key = value lines, or JSON with a .json extension)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra configuration as key=value (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Largest k the exhaustive oracle accepts [default: $MINDIST_ORACLE_BUDGET, else 32]
    #[arg(long)]
    budget: Option<usize>,
    /// Worker threads; 1 keeps runs reproducible
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Report the odd distance implied by an even find on QR codes
    #[arg(long)]
    pless: bool,
    #[command(flatten)]
    flags: MethodFlags,
}

#[derive(Args)]
struct TableArgs {
    /// Experiment file: one `<code> <method> [key=value ...]` per line
    #[arg(long)]
    spec: PathBuf,
    /// Write CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Configuration applied to every row before its own keys
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    code: String,
    /// Received samples, comma or space separated
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Estimate(a) => run_estimate(*a),
        Command::Table(a) => table(a),
        Command::Decode(a) => decode(a),
    };
    match result {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("mindist: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn construct(a: ConstructArgs) -> Result<()> {
    let f = &a.family;
    let spec = if let Some(mt) = &f.bch {
        CodeSpec::Bch { m: mt[0] as u32, t: mt[1] as usize, design: a.design }
    } else if let Some(p) = f.qr {
        CodeSpec::Qr { p }
    } else if let Some(bits) = &f.dcc {
        CodeSpec::Dcc { header: bits.parse().map_err(|e: mindist_core::Error| Error::Config(format!("--dcc: {e}")))? }
    } else if let Some(p) = f.qdc {
        CodeSpec::Qdc { p, corner: a.corner == 1 }
    } else {
        CodeSpec::File(f.load.clone().expect("clap enforces one family"))
    };
    let code = spec.build()?;
    write_code(&a.out, &code)?;
    println!("{} -> {} ({}x{})", code.label(), a.out.display(), code.k(), code.n());
    Ok(())
}

fn run_estimate(a: EstimateArgs) -> Result<()> {
    let method = parse_method(&a.method)?;
    let mut overrides = match &a.config {
        Some(p) => Overrides::from_file(p)?,
        None => Overrides::default(),
    };
    for pair in &a.set {
        overrides.set_pair(pair)?;
    }
    overrides.extend(&a.flags.overrides());
    let opts =
        RunOptions { method, seed: a.seed, overrides, budget: a.budget, workers: a.parallel.max(1), pless: a.pless };
    let code = a.code.parse::<CodeSpec>()?.build()?;
    let est = estimate(&code, &a.code, &opts)?;
    print_summary(&est);
    if let Some(path) = &a.json {
        fs::write(path, est.to_json()).map_err(|e| Error::io(path, e))?;
    }
    check_bounds(&est)
}

fn print_summary(e: &DistanceEstimate) {
    let b = &e.bound_report;
    println!("code       {}", e.code.label);
    println!("method     {}", e.method);
    println!("d          {}", e.d);
    match &e.witness {
        Some(w) => println!("witness    {w} (weight {})", w.weight()),
        None => println!("witness    none found (d is the Singleton bound)"),
    }
    println!("singleton  {}", b.singleton_upper);
    if let Some(s) = b.sqrt_lower {
        println!("sqrt lower {} (sqrt n = {})", s.lower, s.sqrt_n);
    }
    if let Some(k) = b.krasikov_upper {
        println!("krasikov   {k}");
    }
    if let Some(p) = b.parity_adjusted_d {
        let note = if p.parity_implied { " (parity-implied, no witness)" } else { "" };
        println!("parity d   {}{note}", p.d);
    }
    for v in &b.violations {
        println!("violation  {} ({:?})", v.bound, v.severity);
    }
    if e.method == Method::Mim {
        println!("witnesses  {}", e.witnesses.len());
    }
    println!("runtime    {:.3} s", e.wall_time_seconds);
}

fn table(a: TableArgs) -> Result<()> {
    let spec = fs::read_to_string(&a.spec).map_err(|e| Error::io(&a.spec, e))?;
    let extra = match &a.config {
        Some(p) => Overrides::from_file(p)?,
        None => Overrides::default(),
    };
    let report = |r: &mindist::table::Row| {
        if let Some(err) = &r.error {
            eprintln!("{} {}: {err}", r.code, r.method);
        }
    };
    match &a.out {
        Some(path) => {
            let f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
            run_table(&spec, &extra, f, report)?;
        }
        None => {
            run_table(&spec, &extra, io::stdout().lock(), report)?;
        }
    }
    Ok(())
}

fn decode(a: DecodeArgs) -> Result<()> {
    let code = a.code.parse::<CodeSpec>()?.build()?;
    let values =
        a.y.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>().map_err(|_| Error::Config(format!("bad sample {s:?}"))))
            .collect::<Result<Vec<f64>>>()?;
    let y = SoftWord::new(values);
    let out = OsdDecoder::new(&code, a.order)?.decode_full(&y)?;
    let hard: BitWord = y.hard_decision();
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "hard     {hard}").ok();
    writeln!(stdout, "codeword {}", out.codeword).ok();
    writeln!(stdout, "weight   {}", out.codeword.weight()).ok();
    writeln!(stdout, "metric   {}", out.metric).ok();
    Ok(())
}
