//! `smp`: enumerate isospectral word clusters, run argmax frequency
//! experiments, machine-check the domination inequality, print trace
//! polynomials, and decide double-rotation realizability.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use smp_core::doublerot::{
    self, encode_path, realizable, scan_all, DoubleRotation, Verdict,
};
use smp_core::fricke::{trace_polynomial, verify_trace_identity};
use smp_core::montecarlo::{length_distribution, run_experiment, ExperimentConfig};
use smp_core::rng::Dist;
use smp_core::verify::{domination_sweep, lemma2_report};
use smp_core::words::{cluster_of, enumerate_representatives, Word};

use manifest::emit;

#[derive(Parser)]
#[command(name = "smp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the representative words and their isospectral clusters.
    Words(WordsArgs),
    /// Run the argmax frequency experiment over random pairs.
    Freq(FreqArgs),
    /// Verification subcommands.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Trace-polynomial subcommands.
    #[command(subcommand)]
    Fricke(FrickeCommand),
    /// Double-rotation subcommands.
    #[command(subcommand)]
    Doublerot(DoublerotCommand),
}

#[derive(Args, Serialize)]
struct WordsArgs {
    /// Cluster enumeration bound (1..=8).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    max_len: u8,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write output here (plus a .manifest.json next to it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct FreqArgs {
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    dist: Dist,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=8))]
    max_len: u8,
    /// Relative gap under which the runner-up counts as a tie.
    #[arg(long, default_value_t = smp_core::mat2::SPECTRAL_TOL)]
    tie_epsilon: f64,
    /// Append the per-length percentage distribution.
    #[arg(long)]
    lengths: bool,
    /// Worker threads for the sweep (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Exact certificate chain plus the redundant float grid.
    Lemma2(Lemma2Args),
    /// Random sweep of the domination inequality.
    Dominate(DominateArgs),
    /// Check the domination inequality for one explicit real pair.
    Pair(PairArgs),
}

#[derive(Args, Serialize)]
struct PairArgs {
    /// First matrix as "a11,a12,a21,a22".
    #[arg(long)]
    matrix_a: String,
    /// Second matrix as "a11,a12,a21,a22".
    #[arg(long)]
    matrix_b: String,
    #[arg(long, default_value_t = smp_core::mat2::SPECTRAL_TOL)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct Lemma2Args {
    #[arg(long, default_value_t = 50.0)]
    grid_bound: f64,
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DominateArgs {
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    dist: Dist,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = smp_core::mat2::SPECTRAL_TOL)]
    tol: f64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FrickeCommand {
    /// Print the trace polynomial of a word in x, y, z.
    Poly(FrickePolyArgs),
    /// Check the trace identity on random det-1 complex pairs.
    Verify(FrickeVerifyArgs),
}

#[derive(Args, Serialize)]
struct FrickePolyArgs {
    #[arg(long)]
    word: String,
}

#[derive(Args, Serialize)]
struct FrickeVerifyArgs {
    #[arg(long)]
    word: String,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand)]
enum DoublerotCommand {
    /// Decide exactly whether a word is producible by a double rotation.
    Realize(RealizeArgs),
    /// List every non-producible word up to a length bound.
    Scan(ScanArgs),
    /// Simulate an orbit and print the encoded word.
    Simulate(SimulateArgs),
}

#[derive(Args, Serialize)]
struct RealizeArgs {
    #[arg(long)]
    word: String,
    /// Require the orbit to close back to its start.
    #[arg(long)]
    periodic: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Args, Serialize)]
struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    max_len: u8,
    #[arg(long)]
    periodic: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: TextOrJson,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SimulateArgs {
    #[arg(long)]
    r: f64,
    #[arg(long)]
    h1: f64,
    #[arg(long)]
    h2: f64,
    #[arg(long)]
    x0: f64,
    #[arg(long)]
    steps: usize,
}

fn main() -> ExitCode {
    manifest::mark_start();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, String> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            if n == 0 {
                return Err("--threads must be at least 1".into());
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| e.to_string())?;
            Ok(pool.install(f))
        }
    }
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e| format!("--word {s:?}: {e}"))
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Words(args) => run_words(args),
        Command::Freq(args) => run_freq(args),
        Command::Verify(VerifyCommand::Lemma2(args)) => run_lemma2(args),
        Command::Verify(VerifyCommand::Dominate(args)) => run_dominate(args),
        Command::Verify(VerifyCommand::Pair(args)) => run_pair(args),
        Command::Fricke(FrickeCommand::Poly(args)) => {
            let word = parse_word(&args.word)?;
            println!("{}", trace_polynomial(&word));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fricke(FrickeCommand::Verify(args)) => {
            let word = parse_word(&args.word)?;
            if args.trials == 0 {
                return Err("--trials must be at least 1".into());
            }
            let report = verify_trace_identity(&word, args.trials, args.seed);
            println!(
                "word={} trials={} max_residual={:e} tolerance={:e} pass={}",
                report.word, report.trials, report.max_residual, report.tolerance, report.pass
            );
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Doublerot(DoublerotCommand::Realize(args)) => run_realize(args),
        Command::Doublerot(DoublerotCommand::Scan(args)) => run_scan(args),
        Command::Doublerot(DoublerotCommand::Simulate(args)) => run_simulate(args),
    }
}

fn run_words(args: WordsArgs) -> Result<ExitCode, String> {
    let reps = enumerate_representatives(args.max_len as usize).map_err(|e| e.to_string())?;
    let clusters: Vec<_> = reps
        .iter()
        .map(|r| cluster_of(r).expect("representatives are primitive and short"))
        .collect();
    let content = match args.format {
        Format::Csv => {
            let mut out = String::from("index,representative,cluster_size,members\n");
            for (i, c) in clusters.iter().enumerate() {
                let members: Vec<String> = c.members().iter().map(|w| w.to_string()).collect();
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    i + 1,
                    c.representative(),
                    c.size(),
                    members.join(" ")
                ));
            }
            out
        }
        Format::Json => {
            let clusters: Vec<_> = clusters
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    json!({
                        "index": i + 1,
                        "representative": c.representative().to_string(),
                        "size": c.size(),
                        "members": c.members().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({ "max_len": args.max_len, "clusters": clusters });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    emit("words", &args, None, args.out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_freq(args: FreqArgs) -> Result<ExitCode, String> {
    if args.samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    if args.tie_epsilon < 0.0 || args.tie_epsilon.is_nan() {
        return Err("--tie-epsilon must be nonnegative".into());
    }
    let cfg = ExperimentConfig {
        samples: args.samples,
        dist: args.dist,
        seed: args.seed,
        max_len: args.max_len as usize,
        tie_epsilon: args.tie_epsilon,
    };
    let table =
        with_threads(args.threads, || run_experiment(&cfg))?.map_err(|e| e.to_string())?;
    let reps = enumerate_representatives(cfg.max_len).map_err(|e| e.to_string())?;
    let lengths = args.lengths.then(|| length_distribution(&table));

    let content = match args.format {
        Format::Csv => {
            let mut out = String::from("index,word,count,frequency\n");
            for (i, (word, &count)) in reps.iter().zip(&table.counts).enumerate() {
                out.push_str(&format!(
                    "{},{},{},{:.6}\n",
                    i + 1,
                    word,
                    count,
                    count as f64 / table.samples as f64
                ));
            }
            if let Some(shares) = lengths {
                let joined: Vec<String> = shares.iter().map(|s| format!("{s:.4}")).collect();
                out.push_str(&format!("# lengths: {}\n", joined.join(" ")));
            }
            out
        }
        Format::Json => {
            let entries: Vec<_> = reps
                .iter()
                .zip(&table.counts)
                .enumerate()
                .map(|(i, (word, &count))| {
                    json!({
                        "index": i + 1,
                        "word": word.to_string(),
                        "count": count,
                        "frequency": count as f64 / table.samples as f64,
                    })
                })
                .collect();
            let mut doc = json!({
                "samples": table.samples,
                "dist": args.dist,
                "seed": args.seed,
                "max_len": table.max_len,
                "tie_epsilon": args.tie_epsilon,
                "ties": table.ties,
                "entries": entries,
            });
            if let Some(shares) = lengths {
                doc["length_distribution"] = json!(shares.to_vec());
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    emit("freq", &args, Some(args.seed), args.out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_lemma2(args: Lemma2Args) -> Result<ExitCode, String> {
    if !(args.grid_step > 0.0 && args.grid_bound > 0.0) {
        return Err("--grid-bound and --grid-step must be positive".into());
    }
    let report = lemma2_report(args.grid_bound, args.grid_step);
    let content = format!("{}\n", serde_json::to_string_pretty(&report).unwrap());
    emit("verify lemma2", &args, None, args.out.as_deref(), &content)?;
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run_dominate(args: DominateArgs) -> Result<ExitCode, String> {
    if args.samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    if args.tol <= 0.0 || args.tol.is_nan() {
        return Err("--tol must be positive".into());
    }
    let report = with_threads(args.threads, || {
        domination_sweep(args.samples, args.dist, args.seed, args.tol)
    })?;
    let content = format!("{}\n", serde_json::to_string_pretty(&report).unwrap());
    emit(
        "verify dominate",
        &args,
        Some(args.seed),
        args.out.as_deref(),
        &content,
    )?;
    Ok(if report.violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn parse_matrix(flag: &str, s: &str) -> Result<smp_core::Mat2, String> {
    let entries: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("{flag} {s:?}: {e}"))?;
    let entries: [f64; 4] = entries
        .try_into()
        .map_err(|v: Vec<f64>| format!("{flag} needs 4 comma-separated entries, got {}", v.len()))?;
    Ok(smp_core::Mat2::from_real(entries))
}

fn run_pair(args: PairArgs) -> Result<ExitCode, String> {
    let a = parse_matrix("--matrix-a", &args.matrix_a)?;
    let b = parse_matrix("--matrix-b", &args.matrix_b)?;
    let pair = smp_core::MatrixPair::new(a, b);
    let words = smp_core::verify::comparison_products();
    let radii: Vec<f64> = words
        .iter()
        .map(|w| smp_core::mat2::normalized_spectral_radius(w, &pair))
        .collect();
    let dominated = smp_core::verify::check_domination(&pair, args.tol);
    let doc = json!({
        "first": a,
        "second": b,
        "products": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "normalized_radii": radii,
        "tol": args.tol,
        "dominated": dominated,
    });
    let content = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
    emit("verify pair", &args, None, args.out.as_deref(), &content)?;
    Ok(if dominated {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run_realize(args: RealizeArgs) -> Result<ExitCode, String> {
    let word = parse_word(&args.word)?;
    let feasibility = realizable(&word, args.periodic);
    let content = match args.format {
        TextOrJson::Json => format!("{}\n", serde_json::to_string_pretty(&feasibility).unwrap()),
        TextOrJson::Text => {
            let mode = if args.periodic { "periodic" } else { "path" };
            match (&feasibility.verdict, &feasibility.witness) {
                (Verdict::Infeasible, _) => format!("word {word}: infeasible ({mode} mode)\n"),
                (Verdict::Realizable, Some(w)) => format!(
                    "word {word}: realizable ({mode} mode)\n\
                     x1 = {}\nh1 = {}\nh2 = {}\nR = {}\nwraps = {}\n",
                    w.x1,
                    w.h1,
                    w.h2,
                    w.r,
                    w.wraps.iter().map(u8::to_string).collect::<Vec<_>>().join("")
                ),
                (Verdict::Realizable, None) => unreachable!("realizable verdicts carry witnesses"),
            }
        }
    };
    emit(
        "doublerot realize",
        &args,
        None,
        args.out.as_deref(),
        &content,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn run_scan(args: ScanArgs) -> Result<ExitCode, String> {
    let infeasible = with_threads(args.threads, || {
        scan_all(args.max_len as usize, args.periodic)
    })?
    .map_err(|e| e.to_string())?;
    let tested: u64 = (1..=args.max_len as u32).map(|n| 1u64 << n).sum();
    let content = match args.format {
        TextOrJson::Text => {
            let mut out = String::new();
            for w in &infeasible {
                out.push_str(&format!("{w}\n"));
            }
            out
        }
        TextOrJson::Json => {
            let doc = json!({
                "max_len": args.max_len,
                "periodic": args.periodic,
                "tested": tested,
                "infeasible": infeasible.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    eprintln!(
        "tested {tested} words up to length {}, {} infeasible ({} mode)",
        args.max_len,
        infeasible.len(),
        if args.periodic { "periodic" } else { "path" }
    );
    emit(
        "doublerot scan",
        &args,
        None,
        args.out.as_deref(),
        &content,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn run_simulate(args: SimulateArgs) -> Result<ExitCode, String> {
    let d = DoubleRotation::new(args.r, args.h1, args.h2).map_err(|e| e.to_string())?;
    if args.steps == 0 {
        return Err("--steps must be at least 1".into());
    }
    let word = encode_path(args.x0, &d, args.steps).map_err(|e| e.to_string())?;
    let mut x = args.x0;
    for (i, &letter) in word.symbols().iter().enumerate() {
        println!("{:>4}  {:>20.17}  {}", i + 1, x, letter);
        if i + 1 < args.steps {
            x = doublerot::step(x, &d).map_err(|e| e.to_string())?;
        }
    }
    println!("word: {word}");
    Ok(ExitCode::SUCCESS)
}
