use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use radokit::classify::classify;
use radokit::constructions::{build, required_args, run_claims, BuildArgs, Params, NAMES};
use radokit::reports::{inclusion_diagram, to_json, verify, SUITES};
use radokit::table::PermTable;
use radokit::{Error, Vertex};

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "radokit", version, about = "Evidence for overgroups of the automorphism group of the Rado graph")]
struct Cli {
    /// Vertices [0, window) are examined.
    #[arg(long, global = true, default_value_t = 64)]
    window: Vertex,
    /// Largest |U|+|V| in extension scans.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Largest number of neighbourhoods intersected in filter tests.
    #[arg(long, global = true, default_value_t = 3)]
    kmax: usize,
    /// Exceptional sets are searched inside [0, smax).
    #[arg(long, global = true, default_value_t = 8)]
    smax: Vertex,
    /// Back-and-forth steps per table.
    #[arg(long, global = true, default_value_t = 64)]
    steps: u64,
    /// Largest witness a search may return.
    #[arg(long, global = true)]
    bound: Option<Vertex>,
    /// Directory to write results into; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite: core, views, iso, classifiers, constructions or all.
    Verify { suite: String },
    /// Build a construction, run its claims, and write the bundle.
    Construct {
        name: String,
        #[arg(long)]
        v: Option<Vertex>,
        #[arg(long)]
        p: Option<Vertex>,
        #[arg(long)]
        q: Option<Vertex>,
        #[arg(long)]
        w: Option<Vertex>,
        #[arg(long)]
        stages: Option<usize>,
        /// Disjoint cycles such as (0,1)(2,3,4).
        #[arg(long)]
        cycles: Option<String>,
    },
    /// Membership report for a permutation table file.
    Classify { table: PathBuf },
    /// The inclusion diagram with evidence for each edge.
    Diagram,
}

fn code(e: &Error) -> u8 {
    match e {
        Error::ResourceExhausted(_) | Error::NoWitnessWithinBound(_) | Error::NotMaterialized { .. } => EXHAUSTED,
        _ => USAGE,
    }
}

/// Like `print!`, but a closed pipe is not an error.
fn print_out(text: &str) -> Result<(), Error> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(out: &Option<PathBuf>, file: &str, text: &str) -> Result<(), Error> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(file), text)?;
        }
        None => print_out(text)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Ok(b) = std::env::var("RADOKIT_BUDGET") {
        if b.trim().parse::<u64>().is_err() {
            return Err(Error::PreconditionViolated(format!("RADOKIT_BUDGET={b:?} is not a step count")));
        }
    }
    if cli.window == 0 || cli.depth == 0 || cli.kmax == 0 {
        return Err(Error::PreconditionViolated("--window, --depth and --kmax must be positive".into()));
    }
    let p = Params {
        window: cli.window,
        depth: cli.depth,
        k_max: cli.kmax,
        s_max: cli.smax,
        steps: cli.steps,
        bound: cli.bound.unwrap_or(Vertex::MAX),
    };
    match cli.cmd {
        Cmd::Verify { suite } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Error::PreconditionViolated(format!("unknown suite {suite}; expected one of {}", SUITES.join(", "))));
            }
            let r = verify(&suite, &p)?;
            emit(&cli.out, &format!("verify-{suite}.json"), &r.to_json())?;
            for c in r.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}/{}: {}", c.suite, c.id, c.detail);
            }
            Ok(if r.passed() { OK } else { FAILED })
        }
        Cmd::Construct { name, v, p: pp, q, w, stages, cycles } => {
            if !NAMES.contains(&name.as_str()) {
                return Err(Error::PreconditionViolated(format!("unknown construction {name}; expected one of {}", NAMES.join(", "))));
            }
            let args = BuildArgs { v, p: pp, q, w, stages, cycles };
            let given = |k: &str| match k {
                "v" => args.v.is_some(),
                "p" => args.p.is_some(),
                "q" => args.q.is_some(),
                "w" => args.w.is_some(),
                "stages" => args.stages.is_some(),
                _ => args.cycles.is_some(),
            };
            let extra: Vec<_> = ["v", "p", "q", "w", "stages", "cycles"]
                .into_iter()
                .filter(|k| given(k) && !required_args(&name).contains(k))
                .collect();
            if !extra.is_empty() {
                return Err(Error::PreconditionViolated(format!("{name} does not take --{}", extra.join(", --"))));
            }
            let b = build(&name, &args, &p)?;
            let results = run_claims(&b)?;
            let text = to_json(&results);
            match &cli.out {
                Some(dir) => {
                    b.write_dir(dir)?;
                    std::fs::write(dir.join("results.json"), &text)?;
                }
                None => print_out(&text)?,
            }
            for r in results.iter().filter(|r| !r.pass) {
                eprintln!("FAIL {}/{}: expected {:?}, got {:?}", r.bundle, r.id, r.expect, r.verdict.kind);
            }
            Ok(if results.iter().all(|r| r.pass) { OK } else { FAILED })
        }
        Cmd::Classify { table } => {
            let t = PermTable::from_text(&std::fs::read_to_string(&table)?)?;
            let r = classify(&t, p.window, p.depth, p.k_max, p.s_max)?;
            let stem = Path::new(&table).file_stem().and_then(|s| s.to_str()).unwrap_or("table");
            emit(&cli.out, &format!("{stem}.report.json"), &r.to_json())?;
            Ok(OK)
        }
        Cmd::Diagram => {
            let d = inclusion_diagram(&p)?;
            emit(&cli.out, "diagram.json", &d.to_json())?;
            for e in d.edges.iter().filter(|e| !e.valid) {
                eprintln!("FAIL {} {} {}", e.lower, e.relation, e.upper);
            }
            Ok(if d.valid() { OK } else { FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("radokit: {e}");
            ExitCode::from(code(&e))
        }
    }
}
