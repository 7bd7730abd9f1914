use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steiner_core::containment::{
    resurgence_region, ContainmentEngine, ContainmentError, ContainmentQuery, EngineOptions, HarbourneHunekeForm,
};
use steiner_core::hypergraph::{chromatic_number, is_colourable, is_coverable, Colourability, Coverability};
use steiner_core::io::{self, HypergraphFile, LoadError};
use steiner_core::monomial::format_monomials;
use steiner_core::rational::parse_rational;
use steiner_core::reproduce::run_claims;
use steiner_core::symbolic::{alpha, alpha_table, complement_ideal, cover_ideal, symbolic_power, SymbolicError};
use steiner_core::{Limits, PrimeDecomposition, SteinerSystem};

const EXIT_INVALID: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_LIMIT: u8 = 4;

/// Exact computations on Steiner systems and the symbolic powers of their
/// cover and complement ideals.
///
/// Designs and hypergraphs are JSON files; `builtin:fano`, `builtin:sts7`
/// and `builtin:sqs8` can be used in place of a path.
#[derive(Parser)]
#[command(name = "steiner", version)]
struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest intermediate generator set any step may hold.
    #[arg(long, global = true, env = "STEINER_GENERATOR_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    generator_cap: Option<u64>,
    /// Wall-clock budget per query, in seconds.
    #[arg(long, global = true, env = "STEINER_TIME_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    time_cap: Option<u64>,
    /// Seconds between progress lines on stderr.
    #[arg(long, global = true, default_value_t = 10)]
    progress_interval: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Steiner axioms (exit 0 valid, 2 invalid, 3 unreadable).
    Validate { design: String },
    /// Print the non-blocks of a design as a hypergraph file.
    Complement {
        design: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Coverability, weak colourability or the weak chromatic number.
    Coverability {
        hypergraph: String,
        #[command(flatten)]
        mode: CoverMode,
    },
    /// Minimal generators of a symbolic power.
    Symbolic {
        #[command(flatten)]
        ideal: IdealArgs,
        m: u32,
        /// Write the generators in the plain-text monomial format.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Initial degrees of symbolic powers and the Waldschmidt bound.
    Alpha {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
    },
    /// Decide I^(m) ⊆ M^slack I^r.
    Containment {
        #[command(flatten)]
        ideal: IdealArgs,
        m: u32,
        r: u32,
        #[arg(long, default_value_t = 0)]
        slack: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also compute I^r and report its largest generating degree.
        #[arg(long)]
        audit: bool,
    },
    /// Run a family of containments, one JSON line per instance.
    Scan {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, value_enum)]
        kind: ScanKind,
        #[arg(long, default_value_t = 1)]
        r_lo: u32,
        #[arg(long, default_value_t = 3)]
        r_hi: u32,
        /// Largest m for the resurgence search.
        #[arg(long, default_value_t = 8)]
        m_max: u32,
    },
    /// Finite region that must be searched to pin down the resurgence.
    ResurgenceRegion {
        /// Big height h.
        #[arg(long)]
        h: u32,
        /// Ambient dimension n.
        #[arg(long)]
        n: u32,
        /// r1 in the asymptotic resurgence h(1 - 1/r1), e.g. 2 or 5/2.
        #[arg(long)]
        r1: String,
        /// A known failing ratio s0/r0.
        #[arg(long)]
        ratio: String,
    },
    /// Chudnovsky or Demailly inequalities on computed initial degrees.
    Conjectures {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, value_enum)]
        kind: InequalityKind,
        /// Ambient dimension; defaults to the block size for complements.
        #[arg(long)]
        ambient_n: Option<u32>,
        /// The m in the Demailly bound.
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 6)]
        h_max: u32,
    },
    /// Re-run the built-in list of claims and print PASS/FAIL per claim.
    Reproduce {
        /// Comma-separated claim ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Print the claim ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CoverMode {
    /// Split into exactly C classes each meeting every edge.
    #[arg(long, value_name = "C")]
    cover: Option<usize>,
    /// Weak colouring with at most M colours.
    #[arg(long, value_name = "M")]
    colour: Option<usize>,
    #[arg(long)]
    chromatic: bool,
}

#[derive(Args)]
struct IdealArgs {
    /// Design or hypergraph file, or builtin:<name>.
    input: String,
    #[arg(long, value_enum, default_value_t = Source::Complement)]
    source: Source,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Cover ideal of the blocks as hypergraph edges.
    Cover,
    /// Intersection of the primes of the non-blocks.
    Complement,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    Els,
    Hh1,
    Hh2,
    Stable,
    Resurgence,
}

#[derive(Clone, Copy, ValueEnum)]
enum InequalityKind {
    Chudnovsky,
    Demailly,
}

enum Failure {
    Input(String),
    Limit(Value),
    Other(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SymbolicError> for Failure {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::ResourceLimit(reason) => {
                Failure::Limit(json!({ "error": "resource_limit", "reason": reason }))
            }
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<ContainmentError> for Failure {
    fn from(e: ContainmentError) -> Self {
        match e {
            ContainmentError::ResourceLimit(partial) => {
                Failure::Limit(json!({ "error": "resource_limit", "partial": *partial }))
            }
            ContainmentError::Symbolic(s) => s.into(),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).format_timestamp(None).init();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let mut limits = Limits::default();
    if let Some(cap) = cli.generator_cap {
        limits = limits.with_generator_cap(cap as usize);
    }
    if let Some(secs) = cli.time_cap {
        limits = limits.with_time_budget(Duration::from_secs(secs));
    }
    limits.progress_interval = Duration::from_secs(cli.progress_interval);

    match run(cli.command, &limits) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Limit(partial)) => {
            println!("{partial}");
            eprintln!("error: resource limit reached");
            ExitCode::from(EXIT_LIMIT)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<(), Failure> {
    let text = value.to_string();
    match output {
        Some(path) => {
            fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn decomposition(ideal: &IdealArgs) -> Result<PrimeDecomposition, Failure> {
    match ideal.source {
        Source::Cover => Ok(cover_ideal(&io::load_hypergraph(&ideal.input)?)),
        Source::Complement => {
            let s: SteinerSystem = io::load_design(&ideal.input)?;
            complement_ideal(&s).map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn engine(ideal: &IdealArgs, limits: &Limits, options: EngineOptions) -> Result<ContainmentEngine, Failure> {
    Ok(ContainmentEngine::with_options(decomposition(ideal)?, *limits, options)?)
}

fn run(command: Command, limits: &Limits) -> Result<ExitCode, Failure> {
    match command {
        Command::Validate { design } => {
            let file = io::load_design_file(&design)?;
            match SteinerSystem::validate(file.v, file.n, file.t, file.blocks) {
                Ok(s) => {
                    println!(
                        "valid S({},{},{}) |B|={} complement={}",
                        s.t(),
                        s.n(),
                        s.v(),
                        s.blocks().len(),
                        s.complement_blocks().len()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(ExitCode::from(EXIT_INVALID))
                }
            }
        }
        Command::Complement { design, output } => {
            let s = io::load_design(&design)?;
            let file =
                HypergraphFile { vertices: s.v(), edges: s.complement_blocks().iter().map(|b| b.to_vec()).collect() };
            emit(&serde_json::to_value(file).expect("serializable"), output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Coverability { hypergraph, mode } => {
            let h = io::load_hypergraph(&hypergraph)?;
            let value = if let Some(c) = mode.cover {
                if c == 0 {
                    return Err(Failure::Input("--cover needs at least one class".into()));
                }
                match is_coverable(&h, c) {
                    Coverability::Coverable(p) => {
                        json!({ "query": "cover", "k": c, "result": "Coverable", "partition": p.classes() })
                    }
                    Coverability::NotCoverable => {
                        json!({ "query": "cover", "k": c, "result": "NotCoverable", "partition": null })
                    }
                }
            } else if let Some(m) = mode.colour {
                if m == 0 {
                    return Err(Failure::Input("--colour needs at least one colour".into()));
                }
                match is_colourable(&h, m) {
                    Colourability::Colourable(p) => {
                        json!({ "query": "colour", "k": m, "result": "Colourable", "partition": p.classes() })
                    }
                    Colourability::NotColourable => {
                        json!({ "query": "colour", "k": m, "result": "NotColourable", "partition": null })
                    }
                }
            } else {
                let chi = chromatic_number(&h).map_err(|e| Failure::Other(e.to_string()))?;
                let witness = is_colourable(&h, chi);
                json!({ "query": "chromatic", "chromatic_number": chi, "partition": witness.witness().map(|p| p.classes()) })
            };
            emit(&value, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Symbolic { ideal, m, generators } => {
            if m == 0 {
                return Err(Failure::Input("m must be at least 1".into()));
            }
            let p = decomposition(&ideal)?;
            let power = symbolic_power(&p, m, limits)?;
            let a = alpha(&p, m)?;
            if let Some(path) = &generators {
                fs::write(path, format_monomials(power.variable_count(), power.generators()))
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            emit(
                &json!({
                    "m": m,
                    "alpha": a.degree,
                    "count": power.len(),
                    "generators": generators.map(|p| p.display().to_string()),
                }),
                None,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Alpha { ideal, max_m } => {
            if max_m == 0 {
                return Err(Failure::Input("--max-m must be at least 1".into()));
            }
            let table = alpha_table(&decomposition(&ideal)?, max_m)?;
            emit(&serde_json::to_value(table).expect("serializable"), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Containment { ideal, m, r, slack, output, audit } => {
            let options = EngineOptions { audit_degrees: audit, ..Default::default() };
            let e = engine(&ideal, limits, options)?;
            let report = e.check(ContainmentQuery::new(m, r, slack)).map_err(|err| match err {
                ContainmentError::InvalidQuery(msg) => Failure::Input(msg),
                other => other.into(),
            })?;
            emit(&serde_json::to_value(report).expect("serializable"), output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { ideal, kind, r_lo, r_hi, m_max } => {
            let e = engine(&ideal, limits, EngineOptions::default())?;
            let lines: Vec<Value> = match kind {
                ScanKind::Els => (r_lo..=r_hi)
                    .map(|r| e.check_els(r).map(|rep| serde_json::to_value(rep).expect("serializable")))
                    .collect::<Result<_, _>>()?,
                ScanKind::Hh1 | ScanKind::Hh2 | ScanKind::Stable => {
                    let verdict = match kind {
                        ScanKind::Hh1 => e.harbourne_huneke_scan(r_lo, r_hi, HarbourneHunekeForm::First)?,
                        ScanKind::Hh2 => e.harbourne_huneke_scan(r_lo, r_hi, HarbourneHunekeForm::Second)?,
                        _ => e.stable_harbourne_scan(r_lo, r_hi)?,
                    };
                    let mut lines: Vec<Value> =
                        verdict.instances.iter().map(|i| serde_json::to_value(i).expect("serializable")).collect();
                    lines.push(json!({
                        "summary": verdict.name,
                        "all_hold": verdict.all_hold,
                        "analytic_threshold": verdict.analytic_threshold,
                    }));
                    lines
                }
                ScanKind::Resurgence => {
                    let search = e.resurgence_search(m_max, r_hi)?;
                    let mut lines: Vec<Value> =
                        search.failures.iter().map(|f| serde_json::to_value(f).expect("serializable")).collect();
                    lines.push(json!({
                        "summary": "resurgence_search",
                        "checked": search.checked,
                        "max_ratio": search.max_ratio.map(|r| r.to_string()),
                    }));
                    lines
                }
            };
            for line in &lines {
                emit(line, None)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ResurgenceRegion { h, n, r1, ratio } => {
            let parse = |s: &str| parse_rational(s).ok_or_else(|| Failure::Input(format!("not a rational: {s}")));
            let region =
                resurgence_region(h, n, parse(&r1)?, parse(&ratio)?).map_err(|e| Failure::Input(e.to_string()))?;
            let s_max: Vec<Value> =
                (1..=region.r_max.max(0)).map(|r| json!({ "r": r, "s_max": region.s_max(r).to_string() })).collect();
            let mut value = serde_json::to_value(region).expect("serializable");
            value["s_max"] = Value::Array(s_max);
            emit(&value, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Conjectures { ideal, kind, ambient_n, m, h_max } => {
            let e = engine(&ideal, limits, EngineOptions::default())?;
            let verdict = match kind {
                InequalityKind::Chudnovsky => e.chudnovsky_check(ambient_n, h_max),
                InequalityKind::Demailly => e.demailly_check(ambient_n, m, h_max),
            }
            .map_err(|err| match err {
                ContainmentError::MissingAmbientDimension | ContainmentError::InvalidParameter(_) => {
                    Failure::Input(err.to_string())
                }
                other => other.into(),
            })?;
            emit(&serde_json::to_value(verdict).expect("serializable"), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { only, list } => {
            if list {
                for c in steiner_core::reproduce::claims() {
                    println!("{:<28}{}", c.id, c.summary);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let results = run_claims(&only, limits);
            let width = results.iter().map(|r| r.id.len()).max().unwrap_or(0);
            for r in &results {
                println!("{}  {:<width$}  {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.detail);
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} passed, {failed} failed", results.len() - failed);
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
