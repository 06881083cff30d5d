use std::fmt::Write as _;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wod_core::bounds::{
    decide_kappa_at_least, decide_kappa_prime_at_most, decide_kappa_q_at_least, greedy_wod, Branch,
};
use wod_core::kernel::{kappa_prime_with, kappa_q_with, kappa_with, verify_certificate, Certificate, ExactLimits};
use wod_core::miner::{mine, parse_ratio, write_jsonl, MiningConfig};
use wod_core::reductions::{
    enumerate_suite, reduce_kq_to_oddset, reduce_nonwod_to_bipartite, reduce_nonwod_to_kq, reduce_oddset_to_wod,
    reduce_wod_to_nonwod, verify_reduction, HarnessConfig, OddsetInstance, ReductionKind, ReductionOutput, SuiteConfig,
};
use wod_core::{Graph, VertexSet};

/// Exact solvers, deciders and reduction checks for weak odd domination.
#[derive(Parser)]
#[command(name = "wod", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest WOD set size κ.
    Kappa(SolveArgs),
    /// Smallest non-WOD set size κ'.
    KappaPrime(SolveArgs),
    /// Quantum threshold κ_Q = max(κ, n − κ').
    KappaQ(SolveArgs),
    /// Polynomial-time WOD set from the greedy loop.
    Greedy {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide a threshold question; exit 0 for yes, 1 for no.
    Decide {
        question: Question,
        graph: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Build a reduction's target instance.
    Reduce {
        reduction: String,
        input: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        o: PathBuf,
    },
    /// Check a reduction against exact solvers on an enumerated suite.
    Verify {
        reduction: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        #[arg(long, default_value_t = 200)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: PathBuf,
    },
    /// Sample random graphs and record those with small κ_Q.
    Mine {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "811/1000")]
        ratio: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/2")]
        edge_prob: String,
        #[arg(short)]
        o: PathBuf,
    },
    /// Re-verify a certificate against a graph.
    CheckCert { graph: PathBuf, cert: PathBuf },
}

#[derive(clap::Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long)]
    json: bool,
    /// Lift the default order guard.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Question {
    WodAtleast,
    NonwodAtmost,
    KqAtleast,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn limits(force: bool) -> ExactLimits {
    if force {
        ExactLimits::forced()
    } else {
        ExactLimits::default()
    }
}

fn braces(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn describe(cert: &Certificate) -> String {
    match cert {
        Certificate::Wod(c) => format!("witness {}\ndominated {}", braces(&c.witness), braces(&c.dominated)),
        Certificate::NonWod(c) => format!("witness {}\nclosure {}", braces(&c.witness), braces(&c.closure)),
    }
}

fn solve(which: Command) -> Result<ExitCode> {
    let (args, cert, value) = match which {
        Command::Kappa(a) => {
            let c = kappa_with(&read_graph(&a.graph)?, limits(a.force))?;
            let v = c.value;
            (a, Certificate::from(c), v)
        }
        Command::KappaPrime(a) => {
            let c = kappa_prime_with(&read_graph(&a.graph)?, limits(a.force))?;
            let v = c.value;
            (a, Certificate::from(c), v)
        }
        Command::KappaQ(a) => {
            let q = kappa_q_with(&read_graph(&a.graph)?, limits(a.force))?;
            if a.json {
                println!("{}", json!({ "value": q.value, "evidence": q.evidence }));
            } else {
                println!("{}\n{}", q.value, describe(&q.evidence));
            }
            return Ok(ExitCode::SUCCESS);
        }
        _ => unreachable!(),
    };
    if args.json {
        println!("{}", cert.to_json());
    } else {
        println!("{value}\n{}", describe(&cert));
    }
    Ok(ExitCode::SUCCESS)
}

fn decide(question: Question, path: &Path, k: usize) -> Result<ExitCode> {
    let g = read_graph(path)?;
    let (answer, cert, branch): (bool, Option<Certificate>, Branch) = match question {
        Question::WodAtleast => {
            let d = decide_kappa_at_least(&g, k)?;
            (d.answer, d.certificate.map(Into::into), d.branch)
        }
        Question::NonwodAtmost => {
            let d = decide_kappa_prime_at_most(&g, k)?;
            (d.answer, d.certificate.map(Into::into), d.branch)
        }
        Question::KqAtleast => {
            let d = decide_kappa_q_at_least(&g, k)?;
            (d.answer, d.certificate, d.branch)
        }
    };
    println!("{} ({:?})", if answer { "yes" } else { "no" }, branch);
    if let Some(c) = cert {
        println!("{}", c.to_json());
    }
    Ok(if answer { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn render_output(kind: ReductionKind, out: &ReductionOutput) -> String {
    let mut s = out.graph.to_text();
    let _ = writeln!(s, "# reduction: {kind}");
    let _ = writeln!(s, "# parameter: {}", out.parameter);
    let _ = writeln!(s, "# threshold: {}", out.threshold);
    if let Some((a, b)) = &out.bipartition {
        let side = |x: &VertexSet| x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        if kind == ReductionKind::KqToOddset {
            let _ = writeln!(s, "# R: {}", side(a));
        }
        let _ = writeln!(s, "# side A: {}", side(a));
        let _ = writeln!(s, "# side B: {}", side(b));
    }
    for (v, label) in out.labels.iter().enumerate() {
        let _ = writeln!(s, "# label {v}: {label}");
    }
    s
}

fn reduce(name: &str, input: &Path, k: usize, out_path: &Path) -> Result<ExitCode> {
    let kind: ReductionKind = name.parse()?;
    let text = read(input)?;
    let out = if kind == ReductionKind::OddsetToWod {
        reduce_oddset_to_wod(&OddsetInstance::from_text(&text, k)?)?
    } else {
        let g = Graph::from_text(&text)?;
        match kind {
            ReductionKind::WodToNonwod => reduce_wod_to_nonwod(&g, k)?,
            ReductionKind::NonwodToBipartite => reduce_nonwod_to_bipartite(&g, k)?,
            ReductionKind::NonwodToKq => reduce_nonwod_to_kq(&g, k)?,
            ReductionKind::KqToOddset => reduce_kq_to_oddset(&g, k)?,
            ReductionKind::OddsetToWod => unreachable!(),
        }
    };
    fs::write(out_path, render_output(kind, &out)).with_context(|| format!("writing {}", out_path.display()))?;
    println!(
        "{kind}: {} vertices, {} edges, parameter {}, threshold {}",
        out.graph.order(),
        out.graph.edge_count(),
        out.parameter,
        out.threshold
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(name: &str, suite: SuiteConfig, out_path: &Path) -> Result<ExitCode> {
    let kind: ReductionKind = name.parse()?;
    let instances = enumerate_suite(kind, &suite);
    let report = verify_reduction(kind, &instances, &HarnessConfig::default());
    fs::write(out_path, report.to_json()).with_context(|| format!("writing {}", out_path.display()))?;
    println!(
        "{kind}: {}/{} agreed, {} skipped, {} counterexamples",
        report.agreed,
        report.total,
        report.skipped.len(),
        report.counterexamples.len()
    );
    if report.all_agree() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("reduction {kind} did not agree on every instance; see {}", out_path.display());
        Ok(ExitCode::from(2))
    }
}

fn check_cert(graph: &Path, cert: &Path) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let text = read(cert)?;
    let value: serde_json::Value = serde_json::from_str(&text).context("certificate is not JSON")?;
    // accepts a bare certificate or the `kappa-q --json` wrapper
    let body = value.get("evidence").cloned().unwrap_or(value);
    let cert: Certificate = serde_json::from_value(body).context("certificate does not match the schema")?;
    if verify_certificate(&g, &cert) {
        println!("valid");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("invalid");
        Ok(ExitCode::from(2))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        c @ (Command::Kappa(_) | Command::KappaPrime(_) | Command::KappaQ(_)) => solve(c),
        Command::Greedy { graph, json } => {
            let c = Certificate::from(greedy_wod(&read_graph(&graph)?));
            if json {
                println!("{}", c.to_json());
            } else {
                println!("{}\n{}", c.value(), describe(&c));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decide { question, graph, k } => decide(question, &graph, k),
        Command::Reduce { reduction, input, k, o } => reduce(&reduction, &input, k, &o),
        Command::Verify { reduction, max_n, max_k, random, seed, o } => {
            verify(&reduction, SuiteConfig { max_n, max_k, random, seed }, &o)
        }
        Command::Mine { n, ratio, trials, seed, edge_prob, o } => {
            let mut cfg = MiningConfig::new(n, trials, seed);
            cfg.ratio = parse_ratio(&ratio)?;
            cfg.edge_prob = parse_ratio(&edge_prob)?;
            let run = mine(&cfg)?;
            let file = fs::File::create(&o).with_context(|| format!("writing {}", o.display()))?;
            write_jsonl(&cfg, &run, BufWriter::new(file))?;
            let s = &run.summary;
            println!(
                "n={} trials={} best={} hits(κ_Q<={})={} histogram={}",
                s.n,
                s.trials,
                s.best.as_ref().map_or(0, |b| b.kappa_q),
                s.target,
                s.hits,
                serde_json::to_string(&s.histogram)?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCert { graph, cert } => check_cert(&graph, &cert),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
