use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use unit_recolor::adversary::{run_adversary, NaiveColorer};
use unit_recolor::circular::{color_arcs, max_load, ArcInstance};
use unit_recolor::frogs::{play, Strategy};
use unit_recolor::session::{events_for, read_events, run_session, verify_session, write_events, Summary, VerifyOptions};
use unit_recolor::workload::{Generator, WorkloadConfig};
use unit_recolor::Error;

#[derive(Parser)]
#[command(name = "unit-recolor", version, about = "Dynamic k-coloring of unit intervals with bounded recourse")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Number of colors.
    #[arg(long, global = true, default_value_t = 2)]
    k: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a seeded insertion stream as JSON lines.
    Gen {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value = "tracks", value_parser = parse_generator)]
        generator: Generator,
    },
    /// Replay a stream through the engine; one JSON record per update, then a summary.
    Run {
        /// Event stream; standard input when absent or "-".
        input: Option<PathBuf>,
        /// Also write the summary as a one-row CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Replay a stream, checking properness after every update.
    Verify {
        input: Option<PathBuf>,
        /// Cross-check each update's neighbourhood with the exhaustive oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, hide = true)]
        corrupt_after: Option<usize>,
    },
    /// Play the Frogs game and compare its cost with the bound.
    Frogs {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        kappa: usize,
        #[arg(long, default_value_t = 1)]
        delta: u64,
        #[arg(long, default_value = "random", value_parser = parse_strategy)]
        strategy: Strategy,
    },
    /// Color unit circular arcs given as {"lambda": .., "arcs": [..]}.
    Arcs { input: Option<PathBuf> },
    /// Run the lower-bound adversary against a fully dynamic colorer.
    Adversary {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        probes: usize,
        #[arg(long, value_enum, default_value_t = Target::Naive)]
        target: Target,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Naive,
}

fn parse_generator(s: &str) -> Result<Generator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status 1: an invariant failed. Exit status 2: bad input.
enum Failure {
    Violation(String),
    Input(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn input_err(e: Error) -> Failure {
    Failure::Input(e.to_string())
}

fn open_input(path: Option<&Path>) -> io::Result<Box<dyn BufRead>> {
    match path {
        None => Ok(Box::new(BufReader::new(io::stdin()))),
        Some(p) if p.as_os_str() == "-" => Ok(Box::new(BufReader::new(io::stdin()))),
        Some(p) => Ok(Box::new(BufReader::new(File::open(p)?))),
    }
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p)?))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let Global { k, seed, out } = cli.global;
    if k == 0 {
        return Err(Failure::Input("--k must be at least 1".into()));
    }
    let mut w = open_output(out.as_deref())?;
    match cli.cmd {
        Cmd::Gen { n, generator } => {
            let events = events_for(&WorkloadConfig { k, n, seed, generator });
            write_events(&mut w, &events)?;
        }
        Cmd::Run { input, csv } => {
            let events = read_events(open_input(input.as_deref())?).map_err(input_err)?;
            let mut io_err = None;
            let result = run_session(&events, k, |rec| {
                if io_err.is_none() {
                    if let Err(e) = serde_json::to_writer(&mut w, rec).map(|_| writeln!(w)) {
                        io_err = Some(e);
                    }
                }
            });
            if let Some(e) = io_err {
                return Err(e.into());
            }
            let summary = result.map_err(|f| Failure::Input(f.to_string()))?;
            writeln!(w, "{{\"summary\":{}}}", serde_json::to_string(&summary)?)?;
            if let Some(path) = csv {
                write_csv(&path, &summary)?;
            }
            if !summary.bound_check {
                w.flush()?;
                return Err(Failure::Violation(format!(
                    "{} recolorings exceed the bound {:.0}",
                    summary.total_recolored, summary.bound
                )));
            }
        }
        Cmd::Verify {
            input,
            oracle,
            corrupt_after,
        } => {
            let events = read_events(open_input(input.as_deref())?).map_err(input_err)?;
            let report = verify_session(&events, k, &VerifyOptions { oracle, corrupt_after });
            match &report.failure {
                None => writeln!(
                    w,
                    "PASS {} updates verified, {} oracle checks",
                    report.updates, report.oracle_checks
                )?,
                Some(f) => {
                    writeln!(w, "FAIL {f}")?;
                    w.flush()?;
                    return Err(match f.error {
                        Error::CliqueViolation { .. } => Failure::Input(f.to_string()),
                        _ => Failure::Violation(f.to_string()),
                    });
                }
            }
        }
        Cmd::Frogs {
            n,
            kappa,
            delta,
            strategy,
        } => {
            let report = play(n, kappa, delta, strategy, seed).map_err(input_err)?;
            writeln!(w, "tau,pos,cost,phi_delta")?;
            for s in &report.steps {
                writeln!(w, "{},{},{},{}", s.tau, s.pos, s.cost, s.phi_delta)?;
            }
            writeln!(
                w,
                "# total={} bound={:.3} within_bound={} potential_violation={}",
                report.total_cost,
                report.bound,
                report.within_bound(),
                report.potential_violation.map_or("none".into(), |t| t.to_string())
            )?;
            if !report.passed() {
                w.flush()?;
                return Err(Failure::Violation("frogs cost check failed".into()));
            }
        }
        Cmd::Arcs { input } => {
            let mut text = String::new();
            open_input(input.as_deref())?.read_to_string(&mut text)?;
            let raw: ArcInstance = serde_json::from_str(&text)?;
            let inst = ArcInstance::new(raw.lambda, raw.arcs).map_err(input_err)?;
            let load = max_load(&inst).max_load;
            match color_arcs(&inst) {
                Ok(colors) => {
                    serde_json::to_writer(
                        &mut w,
                        &serde_json::json!({ "max_load": load, "colors": colors }),
                    )?;
                    writeln!(w)?;
                }
                Err(Error::InsufficientSlack { needed, found }) => {
                    serde_json::to_writer(
                        &mut w,
                        &serde_json::json!({
                            "error": "insufficient slack",
                            "max_load": load,
                            "needed": needed,
                            "found": found,
                        }),
                    )?;
                    writeln!(w)?;
                    w.flush()?;
                    return Err(Failure::Input(format!(
                        "insufficient slack: {needed} disjoint arcs needed, {found} fit"
                    )));
                }
                Err(e) => return Err(Failure::Violation(e.to_string())),
            }
        }
        Cmd::Adversary { n, probes, target } => {
            let Target::Naive = target;
            let report = run_adversary(&mut NaiveColorer::new(2), n, probes).map_err(|e| match e {
                Error::ImproperColoring(_) => Failure::Violation(e.to_string()),
                _ => Failure::Input(e.to_string()),
            })?;
            writeln!(w, "probe,forced_recolorings")?;
            for (i, p) in report.probes.iter().enumerate() {
                writeln!(w, "{},{}", i + 1, p.forced)?;
            }
            if let Some(i) = report.probes.iter().position(|p| p.forced < 2 * n) {
                w.flush()?;
                return Err(Failure::Violation(format!(
                    "probe {} forced fewer than {} recolorings",
                    i + 1,
                    2 * n
                )));
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn write_csv(path: &Path, s: &Summary) -> io::Result<()> {
    let mut f = File::create(path)?;
    writeln!(f, "{}", Summary::CSV_HEADER)?;
    writeln!(f, "{}", s.csv_row())
}
